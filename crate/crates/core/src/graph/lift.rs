use crate::error::{Error, Result};

use super::Graph;

/// Default limit on the number of signings an exhaustive scan may visit.
pub const DEFAULT_SIGNING_CAP: u64 = 1 << 24;

/// A ±1 label per edge of a base graph, encoding one 2-lift.
///
/// `+1` keeps the two copies of the edge parallel, `-1` crosses them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signing<'g> {
    base: &'g Graph,
    signs: Vec<i8>,
}

impl<'g> Signing<'g> {
    pub fn new(base: &'g Graph, signs: Vec<i8>) -> Result<Self> {
        if signs.len() != base.m() {
            return Err(Error::InvalidArgument(format!(
                "signing has {} entries, graph has {} edges",
                signs.len(),
                base.m()
            )));
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidArgument("signs must be +1 or -1".into()));
        }
        Ok(Signing { base, signs })
    }

    pub fn all_plus(base: &'g Graph) -> Self {
        Signing { base, signs: vec![1; base.m()] }
    }

    pub fn all_minus(base: &'g Graph) -> Self {
        Signing { base, signs: vec![-1; base.m()] }
    }

    /// The signing with lexicographic rank `index` (`+1` sorts before `-1`,
    /// the first edge is the most significant position).
    pub fn from_index(base: &'g Graph, index: u64) -> Self {
        let m = base.m();
        let signs = (0..m)
            .map(|j| if index >> (m - 1 - j) & 1 == 1 { -1 } else { 1 })
            .collect();
        Signing { base, signs }
    }

    pub fn index(&self) -> u64 {
        self.signs
            .iter()
            .fold(0u64, |acc, &s| (acc << 1) | u64::from(s == -1))
    }

    pub fn base(&self) -> &'g Graph {
        self.base
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn lift(&self) -> Graph {
        apply_lift(self)
    }
}

/// Builds the 2-lift on `2n` vertices; vertex `(u, i)` is `u + i·n`.
pub fn apply_lift(s: &Signing<'_>) -> Graph {
    let g = s.base;
    let n = g.n();
    let mut edges = Vec::with_capacity(2 * g.m());
    for (&(u, v), &sign) in g.edges().iter().zip(&s.signs) {
        if sign == 1 {
            edges.push((u, v));
            edges.push((u + n, v + n));
        } else {
            edges.push((u, v + n));
            edges.push((u + n, v));
        }
    }
    Graph::from_parts(2 * n, edges)
}

/// Builds the k-lift where edge `e = (u, v)` becomes the matching
/// `(u, i) ~ (v, perms[e][i])`; vertex `(u, i)` is `u + i·n`.
pub fn k_lift(g: &Graph, perms: &[Vec<usize>], k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if perms.len() != g.m() {
        return Err(Error::InvalidArgument(format!(
            "need one permutation per edge ({}), got {}",
            g.m(),
            perms.len()
        )));
    }
    for p in perms {
        let mut seen = vec![false; k];
        if p.len() != k || !p.iter().all(|&x| x < k && !std::mem::replace(&mut seen[x], true)) {
            return Err(Error::InvalidArgument(format!("{p:?} is not a permutation of 0..{k}")));
        }
    }
    let n = g.n();
    let mut edges = Vec::with_capacity(k * g.m());
    for (&(u, v), p) in g.edges().iter().zip(perms) {
        for (i, &j) in p.iter().enumerate() {
            edges.push((u + i * n, v + j * n));
        }
    }
    Ok(Graph::from_parts(k * n, edges))
}

/// Number of signings of `g`, refusing graphs whose count exceeds `cap`.
pub fn signing_count(g: &Graph, cap: u64) -> Result<u64> {
    let m = g.m();
    if m >= 64 || (1u64 << m) > cap {
        return Err(Error::CapExceeded {
            what: "signing enumeration",
            required: 1u128 << m.min(127),
            cap: cap as u128,
        });
    }
    Ok(1u64 << m)
}

/// Iterator over signings in lexicographic order.
pub struct SigningIter<'g> {
    base: &'g Graph,
    next: u64,
    end: u64,
}

impl<'g> SigningIter<'g> {
    /// Restricts to lexicographic ranks `start..end`, for partitioned scans.
    pub fn range(base: &'g Graph, start: u64, end: u64) -> Self {
        SigningIter { base, next: start, end }
    }
}

impl<'g> Iterator for SigningIter<'g> {
    type Item = Signing<'g>;

    fn next(&mut self) -> Option<Signing<'g>> {
        if self.next >= self.end {
            return None;
        }
        let s = Signing::from_index(self.base, self.next);
        self.next += 1;
        Some(s)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = (self.end - self.next) as usize;
        (r, Some(r))
    }
}

/// All `2^m` signings of `g`, `+1` before `-1`.
pub fn enumerate_signings(g: &Graph, cap: u64) -> Result<SigningIter<'_>> {
    let total = signing_count(g, cap)?;
    Ok(SigningIter::range(g, 0, total))
}

#[cfg(test)]
mod tests {
    use super::super::named::*;
    use super::super::times_k2;
    use super::*;

    fn sorted_degrees(g: &Graph) -> Vec<usize> {
        let mut d = g.degrees();
        d.sort_unstable();
        d
    }

    fn canonical(g: &Graph) -> (usize, Vec<(usize, usize)>) {
        let mut e: Vec<_> = g.edges().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        e.sort_unstable();
        (g.n(), e)
    }

    #[test]
    fn extreme_lifts() {
        let g = complete(4);
        let plus = apply_lift(&Signing::all_plus(&g));
        assert_eq!(canonical(&plus), canonical(&super::super::disjoint_union(&g, &g)));
        let minus = apply_lift(&Signing::all_minus(&g));
        assert_eq!(canonical(&minus), canonical(&times_k2(&g)));
    }

    #[test]
    fn crossed_k2_is_two_disjoint_edges() {
        let k2 = complete(2);
        let h = apply_lift(&Signing::new(&k2, vec![-1]).unwrap());
        assert_eq!(h.edges(), &[(0, 3), (2, 1)]);
        assert_eq!(h.component_count(), 2);
    }

    #[test]
    fn k_lift_examples() {
        let k2 = complete(2);
        let one = k_lift(&k2, &[vec![0]], 1).unwrap();
        assert_eq!(one, k2);
        let three = k_lift(&k2, &[vec![1, 2, 0]], 3).unwrap();
        assert_eq!(three.m(), 3);
        assert_eq!(sorted_degrees(&three), vec![1; 6]);
        assert_eq!(three.component_count(), 3);
        assert!(k_lift(&k2, &[vec![0, 0]], 2).is_err());
        assert!(k_lift(&k2, &[], 2).is_err());
    }

    #[test]
    fn k2_lift_matches_signing_lift() {
        let g = petersen();
        for idx in [0u64, 1, 77, 1 << 14] {
            let s = Signing::from_index(&g, idx);
            let perms: Vec<Vec<usize>> = s
                .signs()
                .iter()
                .map(|&x| if x == 1 { vec![0, 1] } else { vec![1, 0] })
                .collect();
            assert_eq!(k_lift(&g, &perms, 2).unwrap(), apply_lift(&s));
        }
    }

    #[test]
    fn enumeration_order_and_cap() {
        let g = cycle(3);
        let all: Vec<Vec<i8>> = enumerate_signings(&g, 1 << 10)
            .unwrap()
            .map(|s| s.signs().to_vec())
            .collect();
        assert_eq!(all.len(), 8);
        assert_eq!(all[0], vec![1, 1, 1]);
        assert_eq!(all[1], vec![1, 1, -1]);
        assert_eq!(all[7], vec![-1, -1, -1]);
        let mut sorted = all.clone();
        sorted.sort_by(|a, b| b.cmp(a));
        assert_eq!(sorted, all);
        let err = enumerate_signings(&complete(6), 1 << 10).err().unwrap();
        assert!(matches!(err, Error::CapExceeded { required, .. } if required == 1 << 15));
    }

    #[test]
    fn index_round_trip() {
        let g = complete(4);
        for i in 0..64 {
            assert_eq!(Signing::from_index(&g, i).index(), i);
        }
    }
}
