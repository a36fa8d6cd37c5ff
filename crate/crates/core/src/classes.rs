//! Sufficient conditions for which 2-lift maximizes `Z(·, A)`.
//!
//! With `A⁼ = A ⊗ A` and `A^×` its skew version, `D = ½(A⁼ − A^×)`. If some
//! ±1 diagonal `S` makes `SDS` entrywise nonnegative, `G ∪ G` maximizes `Z`
//! over the 2-lifts of every `G`; if `SDS` can be made nonpositive, `G × K₂`
//! does. Only the block `D₁` on the pairs `i < j` matters, and deciding
//! whether such an `S` exists is a balance test on the signed graph of `D₁`.

use serde::Serialize;

use crate::models::{skew_tensor_square, tensor_square, SpinModel};
use crate::scalar::Scalar;

/// Dense square matrix of scalars, row-major.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Matrix {
    pub size: usize,
    pub data: Vec<Scalar>,
}

impl Matrix {
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.size + j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.size).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    fn from_fn(size: usize, f: impl Fn(usize, usize) -> Scalar) -> Matrix {
        let data = (0..size * size).map(|k| f(k / size, k % size)).collect();
        Matrix { size, data }
    }
}

/// `A⁼`, `A^×`, `E`, `D` and `D₁`, in the pair order of
/// [`crate::models::pair_order`].
#[derive(Clone, Debug, Serialize)]
pub struct PairMatrices {
    pub a_eq: Matrix,
    pub a_cross: Matrix,
    pub e: Matrix,
    pub d: Matrix,
    pub d1: Matrix,
}

pub fn build_pair_matrices(m: &SpinModel) -> PairMatrices {
    let q = m.q();
    let eq = tensor_square(m);
    let cross = skew_tensor_square(m);
    let size = q * q;
    let half = match m.is_exact() {
        true => Scalar::ratio(1, 2),
        false => Scalar::float(0.5),
    };
    let a_eq = Matrix::from_fn(size, |i, j| eq.a(i, j).clone());
    let a_cross = Matrix::from_fn(size, |i, j| cross.a(i, j).clone());
    let e = Matrix::from_fn(size, |i, j| &half * &(a_eq.get(i, j) + a_cross.get(i, j)));
    let d = Matrix::from_fn(size, |i, j| &half * &(a_eq.get(i, j) - a_cross.get(i, j)));
    let k = q * (q - 1) / 2;
    let d1 = Matrix::from_fn(k, |i, j| d.get(q + i, q + j).clone());
    PairMatrices { a_eq, a_cross, e, d, d1 }
}

fn minors_all(m: &SpinModel, want: i8) -> bool {
    let q = m.q();
    for i in 0..q {
        for j in i + 1..q {
            for r in 0..q {
                for s in r + 1..q {
                    let det = &(m.a(i, r) * m.a(j, s)) - &(m.a(i, s) * m.a(j, r));
                    if det.signum() == -want {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Every 2×2 minor `a_ir a_js − a_is a_jr` (`i<j`, `r<s`) is `>= 0`.
pub fn tp2_check(m: &SpinModel) -> bool {
    minors_all(m, 1)
}

/// Every 2×2 minor is `<= 0`.
pub fn tn2_check(m: &SpinModel) -> bool {
    minors_all(m, -1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Nonneg,
    Nonpos,
}

impl Direction {
    fn want(self) -> i8 {
        match self {
            Direction::Nonneg => 1,
            Direction::Nonpos => -1,
        }
    }
}

/// Union-find carrying the parity of each node relative to its root.
struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<i8>,
    rank: Vec<u8>,
}

impl ParityUnionFind {
    fn new(n: usize) -> Self {
        ParityUnionFind { parent: (0..n).collect(), parity: vec![1; n], rank: vec![0; n] }
    }

    /// Root of `x` and `σ(x)·σ(root)`.
    fn find(&mut self, x: usize) -> (usize, i8) {
        if self.parent[x] == x {
            return (x, 1);
        }
        let (root, p) = self.find(self.parent[x]);
        self.parent[x] = root;
        self.parity[x] *= p;
        (root, self.parity[x])
    }

    /// Records `σ(x)·σ(y) = sign`; false on contradiction.
    fn relate(&mut self, x: usize, y: usize, sign: i8) -> bool {
        let (rx, px) = self.find(x);
        let (ry, py) = self.find(y);
        if rx == ry {
            return px * py == sign;
        }
        let (big, small) = if self.rank[rx] >= self.rank[ry] { (rx, ry) } else { (ry, rx) };
        self.parent[small] = big;
        self.parity[small] = px * py * sign;
        if self.rank[big] == self.rank[small] {
            self.rank[big] += 1;
        }
        true
    }
}

/// Looks for a ±1 vector `s` with `s_i s_j D_ij` of the requested sign for
/// every entry. Each nonzero off-diagonal entry constrains `s_i s_j`, and a
/// consistent assignment exists iff every cycle of constraints has even
/// parity. Diagonal entries are unaffected by `S` and must already have the
/// requested sign. The witness is checked entrywise before it is returned.
pub fn sign_switchable(d: &Matrix, direction: Direction) -> Option<Vec<i8>> {
    debug_assert!(d.is_symmetric());
    let want = direction.want();
    let n = d.size;
    if (0..n).any(|i| d.get(i, i).signum() == -want) {
        return None;
    }
    let mut uf = ParityUnionFind::new(n);
    for i in 0..n {
        for j in i + 1..n {
            let s = d.get(i, j).signum();
            if s != 0 && !uf.relate(i, j, s * want) {
                return None;
            }
        }
    }
    let witness: Vec<i8> = (0..n).map(|i| uf.find(i).1).collect();
    assert!(
        (0..n).all(|i| (0..n).all(|j| witness[i] * witness[j] * d.get(i, j).signum() != -want)),
        "switching witness failed verification"
    );
    Some(witness)
}

/// Lifts a witness for `D₁` to one for the full `D`: `+1` on diagonal pairs,
/// `s_ij` on `(i,j)` with `i<j` and `−s_ij` on the mirror `(j,i)`.
pub fn full_certificate(q: usize, s1: &[i8]) -> Vec<i8> {
    let k = q * (q - 1) / 2;
    assert_eq!(s1.len(), k);
    let mut s = vec![1i8; q];
    s.extend_from_slice(s1);
    s.extend(s1.iter().map(|x| -x));
    s
}

/// True when `SDS` has every entry of the requested sign (or zero).
pub fn certificate_holds(d: &Matrix, s: &[i8], direction: Direction) -> bool {
    let want = direction.want();
    s.len() == d.size
        && (0..d.size).all(|i| (0..d.size).all(|j| s[i] * s[j] * d.get(i, j).signum() != -want))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// `G ∪ G` maximizes `Z` over 2-lifts.
    #[serde(rename = "ClassA_certified")]
    ClassA,
    /// `G × K₂` maximizes `Z` over 2-lifts.
    #[serde(rename = "ClassB_certified")]
    ClassB,
    /// `D₁ = 0`: every 2-lift gives the same value.
    Both,
    /// Neither switching condition holds; membership is not decided.
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    /// Witness on the `i<j` pairs, when certified.
    pub certificate: Option<Vec<i8>>,
    pub tp2: bool,
    pub tn2: bool,
    pub d1: Matrix,
}

/// Runs the switching test on `D₁` in both directions. The weights of the
/// model play no role.
pub fn classify(m: &SpinModel) -> Classification {
    let pm = build_pair_matrices(m);
    let nonneg = sign_switchable(&pm.d1, Direction::Nonneg);
    let nonpos = sign_switchable(&pm.d1, Direction::Nonpos);
    let (verdict, certificate) = match (nonneg, nonpos) {
        (Some(s), Some(_)) => (Verdict::Both, Some(s)),
        (Some(s), None) => (Verdict::ClassA, Some(s)),
        (None, Some(s)) => (Verdict::ClassB, Some(s)),
        (None, None) => (Verdict::Unknown, None),
    };
    if let Some(s) = &certificate {
        let full = full_certificate(m.q(), s);
        let dir = if verdict == Verdict::ClassB { Direction::Nonpos } else { Direction::Nonneg };
        assert!(certificate_holds(&pm.d, &full, dir), "lifted certificate failed on D");
    }
    Classification { verdict, certificate, tp2: tp2_check(m), tn2: tn2_check(m), d1: pm.d1 }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StaircaseKind {
    /// `i ~ j` iff `w_i + w_j <= α`.
    LoopThreshold,
    /// `i ~ j` iff `|w_i − w_j| <= α`.
    ThickPath,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Staircase {
    /// `ordering[k]` is the original index placed at position `k`.
    pub ordering: Vec<usize>,
    /// Integer weight per original index.
    pub weights: Vec<i64>,
    pub alpha: i64,
}

/// Largest `q` accepted by [`staircase_recognize`].
pub const STAIRCASE_MAX_Q: usize = 8;

fn all_permutations(q: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for c in 0..used.len() {
            if !used[c] {
                used[c] = true;
                cur.push(c);
                rec(cur, used, out);
                cur.pop();
                used[c] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; q], &mut out);
    out
}

/// Weights for a 0/1 matrix `b` already in staircase position order.
fn realize(b: &[Vec<bool>], kind: StaircaseKind) -> Option<(Vec<i64>, i64)> {
    match kind {
        StaircaseKind::LoopThreshold => threshold_weights(b),
        StaircaseKind::ThickPath => band_weights(b),
    }
}

/// Rows must be prefixes `0..t_i` with `t_i` nonincreasing. The row-rank
/// weights `w_i = q − t_i` are tried first; `w_i = i − t_i` with `α = −1`
/// always works for a symmetric staircase and is the fallback.
fn threshold_weights(b: &[Vec<bool>]) -> Option<(Vec<i64>, i64)> {
    let q = b.len() as i64;
    let mut lens = Vec::with_capacity(b.len());
    for row in b {
        let len = row.iter().take_while(|&&x| x).count();
        if row[len..].iter().any(|&x| x) {
            return None;
        }
        lens.push(len as i64);
    }
    if lens.windows(2).any(|w| w[0] < w[1]) {
        return None;
    }
    let ranks: Vec<i64> = lens.iter().map(|t| q - t).collect();
    if let Some(alpha) = (0..=2 * q).find(|&a| verify(b, &ranks, a, StaircaseKind::LoopThreshold)) {
        return Some((ranks, alpha));
    }
    let raw: Vec<i64> = lens.iter().enumerate().map(|(i, t)| i as i64 - t).collect();
    let shift = -raw.iter().copied().min().unwrap_or(0);
    let w: Vec<i64> = raw.iter().map(|x| x + shift).collect();
    let alpha = 2 * shift - 1;
    verify(b, &w, alpha, StaircaseKind::LoopThreshold).then_some((w, alpha))
}

fn band_weights(b: &[Vec<bool>]) -> Option<(Vec<i64>, i64)> {
    let q = b.len();
    // rows are contiguous runs containing the diagonal, with nondecreasing
    // start and end
    let mut starts = Vec::with_capacity(q);
    let mut ends = Vec::with_capacity(q);
    for (i, row) in b.iter().enumerate() {
        if !row[i] {
            return None;
        }
        let start = row.iter().position(|&x| x)?;
        let end = q - 1 - row.iter().rev().position(|&x| x)?;
        if row[start..=end].iter().any(|&x| !x) {
            return None;
        }
        starts.push(start);
        ends.push(end);
    }
    if starts.windows(2).any(|w| w[0] > w[1]) || ends.windows(2).any(|w| w[0] > w[1]) {
        return None;
    }
    // greedy integer positions: each index sits as low as possible while
    // staying out of reach of every earlier row whose band has ended
    for alpha in 0..=(4 * q as i64 + 4) {
        let mut w = vec![0i64; q];
        let mut ok = true;
        for i in 1..q {
            let mut lo = if b[i] == b[i - 1] { w[i - 1] } else { w[i - 1] + 1 };
            for j in 0..i {
                if ends[j] < i {
                    lo = lo.max(w[j] + alpha + 1);
                }
            }
            let hi = w[starts[i]] + alpha;
            if lo > hi {
                ok = false;
                break;
            }
            w[i] = lo;
        }
        if ok && verify(b, &w, alpha, StaircaseKind::ThickPath) {
            return Some((w, alpha));
        }
    }
    None
}

fn verify(b: &[Vec<bool>], w: &[i64], alpha: i64, kind: StaircaseKind) -> bool {
    let q = b.len();
    (0..q).all(|i| {
        (0..q).all(|j| {
            let adj = match kind {
                StaircaseKind::LoopThreshold => w[i] + w[j] <= alpha,
                StaircaseKind::ThickPath => (w[i] - w[j]).abs() <= alpha,
            };
            adj == b[i][j]
        })
    })
}

/// Searches orderings of a 0/1 model for the loop-threshold (corner
/// staircase) or thick-path (band) pattern and returns integer weights
/// realizing the definition, verified on every entry.
pub fn staircase_recognize(m: &SpinModel, kind: StaircaseKind) -> Option<Staircase> {
    let q = m.q();
    if q > STAIRCASE_MAX_Q {
        return None;
    }
    let (zero, one) = (m.a(0, 0).zero_like(), m.a(0, 0).one_like());
    if m.matrix().iter().any(|x| *x != zero && *x != one) {
        return None;
    }
    for ordering in all_permutations(q) {
        let b: Vec<Vec<bool>> = ordering
            .iter()
            .map(|&i| ordering.iter().map(|&j| *m.a(i, j) == one).collect())
            .collect();
        if let Some((pos_weights, alpha)) = realize(&b, kind) {
            let mut weights = vec![0i64; q];
            for (p, &i) in ordering.iter().enumerate() {
                weights[i] = pos_weights[p];
            }
            let check = (0..q).all(|i| {
                (0..q).all(|j| {
                    let adj = match kind {
                        StaircaseKind::LoopThreshold => weights[i] + weights[j] <= alpha,
                        StaircaseKind::ThickPath => (weights[i] - weights[j]).abs() <= alpha,
                    };
                    adj == (*m.a(i, j) == one)
                })
            });
            assert!(check, "staircase weights failed verification");
            return Some(Staircase { ordering, weights, alpha });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::NamedModel;

    fn a_thr() -> SpinModel {
        SpinModel::from_int_rows(&[
            &[1, 1, 1, 1, 1, 1],
            &[1, 1, 1, 1, 1, 0],
            &[1, 1, 1, 1, 0, 0],
            &[1, 1, 1, 1, 0, 0],
            &[1, 1, 0, 0, 0, 0],
            &[1, 0, 0, 0, 0, 0],
        ])
        .unwrap()
    }

    fn a_paths() -> SpinModel {
        SpinModel::from_int_rows(&[
            &[1, 1, 1, 0, 0, 0],
            &[1, 1, 1, 1, 0, 0],
            &[1, 1, 1, 1, 1, 0],
            &[0, 1, 1, 1, 1, 0],
            &[0, 0, 1, 1, 1, 1],
            &[0, 0, 0, 0, 1, 1],
        ])
        .unwrap()
    }

    #[test]
    fn total_positivity() {
        let ising = NamedModel::ising(0.5, 0.0).build().unwrap();
        assert!(tp2_check(&ising) && !tn2_check(&ising));
        let ind = NamedModel::ind().build().unwrap();
        assert!(tn2_check(&ind) && !tp2_check(&ind));
        assert!(tp2_check(&NamedModel::Wr.build().unwrap()));
        let potts = NamedModel::potts(3, Scalar::int(1)).build().unwrap();
        assert!(!tp2_check(&potts) && !tn2_check(&potts));
    }

    #[test]
    fn pair_matrices() {
        let ind = NamedModel::ind().build().unwrap();
        let pm = build_pair_matrices(&ind);
        assert_eq!(pm.d1.size, 1);
        assert_eq!(*pm.d1.get(0, 0), Scalar::ratio(-1, 2));
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(pm.a_eq.get(i, j), &(pm.e.get(i, j) + pm.d.get(i, j)));
                assert_eq!(pm.a_eq.get(i, j) - pm.a_cross.get(i, j), &Scalar::int(2) * pm.d.get(i, j));
            }
            for k in 0..2 {
                assert!(pm.d.get(k, i).is_zero() && pm.d.get(i, k).is_zero());
            }
        }
        assert!(pm.e.is_symmetric() && pm.d.is_symmetric());
        let ones = SpinModel::from_int_rows(&[&[1, 1], &[1, 1]]).unwrap();
        assert!(build_pair_matrices(&ones).d.data.iter().all(Scalar::is_zero));
        let beta: f64 = 0.7;
        let d1 = build_pair_matrices(&NamedModel::ising(beta, 0.0).build().unwrap()).d1;
        let want = 0.5 * ((2.0 * beta).exp() - (-2.0 * beta).exp());
        assert!((d1.get(0, 0).to_f64() - want).abs() < 1e-12);
    }

    #[test]
    fn switching() {
        let d = Matrix {
            size: 2,
            data: vec![Scalar::int(0), Scalar::int(-1), Scalar::int(-1), Scalar::int(0)],
        };
        assert_eq!(sign_switchable(&d, Direction::Nonneg), Some(vec![1, -1]));
        assert_eq!(sign_switchable(&d, Direction::Nonpos), Some(vec![1, 1]));
        let ind = build_pair_matrices(&NamedModel::ind().build().unwrap()).d1;
        assert_eq!(sign_switchable(&ind, Direction::Nonpos), Some(vec![1]));
        assert_eq!(sign_switchable(&ind, Direction::Nonneg), None);
        // odd cycle of negative entries cannot be switched to nonnegative
        let neg = Scalar::int(-1);
        let z = Scalar::int(0);
        let tri = Matrix {
            size: 3,
            data: vec![z.clone(), neg.clone(), neg.clone(), neg.clone(), z.clone(), neg.clone(), neg.clone(), neg, z],
        };
        assert_eq!(sign_switchable(&tri, Direction::Nonneg), None);
        assert!(sign_switchable(&tri, Direction::Nonpos).is_some());
    }

    #[test]
    fn float_noise_is_not_an_edge() {
        let tiny = Scalar::float(1e-15);
        let d = Matrix { size: 2, data: vec![Scalar::float(1.0), tiny.clone(), tiny, Scalar::float(1.0)] };
        let s = sign_switchable(&d, Direction::Nonneg).unwrap();
        assert_eq!(s, vec![1, 1]);
    }

    #[test]
    fn verdicts() {
        let wr = classify(&NamedModel::Wr.build().unwrap());
        assert_eq!(wr.verdict, Verdict::ClassA);
        assert!(wr.tp2);
        let ind = classify(&NamedModel::ind().build().unwrap());
        assert_eq!(ind.verdict, Verdict::ClassB);
        let potts = classify(&NamedModel::potts(3, Scalar::int(1)).build().unwrap());
        assert_eq!(potts.verdict, Verdict::Unknown);
        assert!(potts.certificate.is_none());
        let ones = classify(&SpinModel::from_int_rows(&[&[1, 1], &[1, 1]]).unwrap());
        assert_eq!(ones.verdict, Verdict::Both);
        let json = serde_json::to_value(&wr).unwrap();
        assert_eq!(json["verdict"], "ClassA_certified");
    }

    #[test]
    fn identity_witness_for_totally_positive_models() {
        for m in [NamedModel::Wr.build().unwrap(), NamedModel::ising(0.3, 0.1).build().unwrap()] {
            let pm = build_pair_matrices(&m);
            let q = m.q();
            let s = full_certificate(q, &vec![1; q * (q - 1) / 2]);
            assert!(certificate_holds(&pm.d, &s, Direction::Nonneg));
        }
        let pm = build_pair_matrices(&NamedModel::ind().build().unwrap());
        assert!(certificate_holds(&pm.d, &full_certificate(2, &[1]), Direction::Nonpos));
    }

    #[test]
    fn staircases() {
        let thr = staircase_recognize(&a_thr(), StaircaseKind::LoopThreshold).unwrap();
        assert_eq!(thr.ordering, (0..6).collect::<Vec<_>>());
        assert!(tn2_check(&a_thr()));
        let paths = staircase_recognize(&a_paths(), StaircaseKind::ThickPath).unwrap();
        assert_eq!(paths.ordering, (0..6).collect::<Vec<_>>());
        assert!(tp2_check(&a_paths()));
        let ind = staircase_recognize(&NamedModel::ind().build().unwrap(), StaircaseKind::LoopThreshold).unwrap();
        assert_eq!((ind.weights, ind.alpha), (vec![0, 1], 1));
        assert!(staircase_recognize(&a_thr(), StaircaseKind::ThickPath).is_none());
        assert!(staircase_recognize(&a_paths(), StaircaseKind::LoopThreshold).is_none());
    }

    #[test]
    fn staircase_under_relabelling() {
        // A_thr with states reversed needs a non-identity ordering
        let m = a_thr();
        let rev: Vec<Scalar> = (0..36).map(|k| m.a(5 - k / 6, 5 - k % 6).clone()).collect();
        let rev = SpinModel::from_matrix(6, rev).unwrap();
        let found = staircase_recognize(&rev, StaircaseKind::LoopThreshold).unwrap();
        assert_ne!(found.ordering, (0..6).collect::<Vec<_>>());
    }
}
