//! `Z(G, q, w) = Σ_{F ⊆ E} q^{k(F)} w^{|F|}` by deletion–contraction.

use std::collections::HashMap;

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::{Scalar, Weight};

use super::Caps;

/// Random-cluster parameters; both values share one scalar kind.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RCParams {
    pub q: Scalar,
    pub w: Scalar,
}

impl RCParams {
    pub fn new(q: Scalar, w: Scalar) -> Result<RCParams> {
        if q.is_exact() != w.is_exact() {
            return Err(Error::InvalidArgument("q and w must both be exact or both float".into()));
        }
        if q < q.zero_like() || w < w.zero_like() {
            return Err(Error::InvalidArgument(format!("need q >= 0 and w >= 0, got q = {q}, w = {w}")));
        }
        Ok(RCParams { q, w })
    }

    /// Whether the FKG-based inequalities are guaranteed (`q >= 1`, `w >= 0`).
    pub fn in_fkg_range(&self) -> bool {
        self.q >= self.q.one_like()
    }
}

type EdgeKey = (usize, Vec<(usize, usize)>);

fn memo_key(g: &Graph) -> EdgeKey {
    let mut e: Vec<(usize, usize)> = g.edges().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    e.sort_unstable();
    (g.n(), e)
}

struct Engine<'a, W> {
    q: &'a W,
    w: &'a W,
    loop_factor: W,
    left: u64,
    cap: u64,
    memo: Option<HashMap<EdgeKey, W>>,
}

impl<W: Weight> Engine<'_, W> {
    fn eval(&mut self, g: Graph) -> Result<W> {
        if self.left == 0 {
            return Err(Error::CapExceeded {
                what: "deletion-contraction",
                required: self.cap as u128 + 1,
                cap: self.cap as u128,
            });
        }
        self.left -= 1;
        // loops: G/e = G-e, so each contributes a factor (1 + w)
        let loops = g.loop_count();
        let g = if loops > 0 {
            let edges = g.edges().iter().copied().filter(|(u, v)| u != v).collect();
            Graph::from_parts(g.n(), edges)
        } else {
            g
        };
        let factor = self.loop_factor.checked_pow(loops as u32).expect("exact arithmetic");
        let key = self.memo.as_ref().map(|_| memo_key(&g));
        if let Some(hit) = key.as_ref().and_then(|k| self.memo.as_ref().unwrap().get(k)) {
            return Ok(factor.checked_mul(hit).unwrap());
        }
        let value = if g.m() == 0 {
            self.q.checked_pow(g.n() as u32).unwrap()
        } else {
            let e = g.m() - 1;
            let deleted = self.eval(g.delete_edge(e))?;
            let contracted = self.eval(g.contract_edge(e))?;
            deleted.checked_add(&self.w.checked_mul(&contracted).unwrap()).unwrap()
        };
        if let Some(k) = key {
            self.memo.as_mut().unwrap().insert(k, value.clone());
        }
        Ok(factor.checked_mul(&value).unwrap())
    }
}

fn run<W: Weight>(g: &Graph, q: &W, w: &W, caps: &Caps, memo: bool) -> Result<W> {
    let mut engine = Engine {
        q,
        w,
        loop_factor: W::one().checked_add(w).unwrap(),
        left: caps.expansions,
        cap: caps.expansions,
        memo: memo.then(HashMap::new),
    };
    engine.eval(g.clone())
}

/// `Z(G, q, w)` with the default expansion budget.
pub fn random_cluster(g: &Graph, p: &RCParams) -> Result<Scalar> {
    random_cluster_with(g, p, &Caps::default(), false)
}

/// `Z(G, q, w)`, recursing on the highest-index non-loop edge. With `memo`
/// set, subgraphs are cached by their sorted edge multiset.
pub fn random_cluster_with(g: &Graph, p: &RCParams, caps: &Caps, memo: bool) -> Result<Scalar> {
    match (&p.q, &p.w) {
        (Scalar::Exact(q), Scalar::Exact(w)) => run::<BigRational>(g, q, w, caps, memo).map(Scalar::Exact),
        (Scalar::Float(q), Scalar::Float(w)) => run::<f64>(g, q, w, caps, memo).map(Scalar::Float),
        _ => Err(Error::InvalidArgument("q and w must share a scalar kind".into())),
    }
}

/// `(P(e ∉ F), P(e ∈ F))` under the random-cluster measure.
pub fn edge_probabilities(g: &Graph, p: &RCParams, e: usize) -> Result<(Scalar, Scalar)> {
    check_edge(g, e)?;
    let z = random_cluster(g, p)?;
    if z.signum() <= 0 {
        return Err(Error::Degenerate("Z(G, q, w) = 0".into()));
    }
    let out = random_cluster(&g.delete_edge(e), p)?;
    let inside = &p.w * &random_cluster(&g.contract_edge(e), p)?;
    Ok((&out / &z, &inside / &z))
}

fn check_edge(g: &Graph, e: usize) -> Result<()> {
    if e >= g.m() {
        return Err(Error::InvalidArgument(format!("edge {e} out of range (m = {})", g.m())));
    }
    Ok(())
}

/// Both sides of the two-edge correlation inequalities.
#[derive(Clone, Debug, Serialize)]
pub struct FkgReport {
    /// `Z(H−{e,f})·Z(H/{e,f})`
    pub lhs: Scalar,
    /// `Z((H−e)/f)·Z((H/e)−f)`
    pub rhs: Scalar,
    pub p_e: Scalar,
    pub p_f: Scalar,
    pub p_ef: Scalar,
    /// `lhs >= rhs`
    pub minors_hold: bool,
    /// `P(e∈F)·P(f∈F) <= P(e,f∈F)`
    pub correlation_holds: bool,
}

/// Evaluates the four minors of `g` at edges `e != f` and the probabilities
/// of `e`, `f` and both lying in the random subset.
pub fn fkg_check(g: &Graph, p: &RCParams, e: usize, f: usize) -> Result<FkgReport> {
    check_edge(g, e)?;
    check_edge(g, f)?;
    if e == f {
        return Err(Error::InvalidArgument("edges must differ".into()));
    }
    // index of f once e is gone
    let f2 = if f > e { f - 1 } else { f };
    let minus_e = g.delete_edge(e);
    let over_e = g.contract_edge(e);
    let z = |h: &Graph| random_cluster(h, p);
    let both_deleted = z(&minus_e.delete_edge(f2))?;
    let both_contracted = z(&over_e.contract_edge(f2))?;
    let del_e_con_f = z(&minus_e.contract_edge(f2))?;
    let con_e_del_f = z(&over_e.delete_edge(f2))?;
    let total = z(g)?;
    if total.signum() <= 0 {
        return Err(Error::Degenerate("Z(G, q, w) = 0".into()));
    }
    let lhs = &both_deleted * &both_contracted;
    let rhs = &del_e_con_f * &con_e_del_f;
    let w = &p.w;
    let p_e = &(w * &z(&over_e)?) / &total;
    let p_f = &(w * &z(&g.contract_edge(f))?) / &total;
    let p_ef = &(&(w * w) * &both_contracted) / &total;
    let ge = |a: &Scalar, b: &Scalar| crate::scalar::ge_with_slack(a, b, 1e-9).0;
    Ok(FkgReport {
        minors_hold: ge(&lhs, &rhs),
        correlation_holds: ge(&p_ef, &(&p_e * &p_f)),
        lhs,
        rhs,
        p_e,
        p_f,
        p_ef,
    })
}

/// `T(G; x, y) = (x−1)^{−k(E)} (y−1)^{−v} Z(G, (x−1)(y−1), y−1)` for
/// `x != 1`, `y != 1`. The random-cluster value is evaluated directly at the
/// possibly negative parameters, so no sign restriction applies here.
pub fn tutte_value(g: &Graph, x: &Scalar, y: &Scalar) -> Result<Scalar> {
    let one = x.one_like();
    let (xm, ym) = (x - &one, y - &one);
    if xm.is_zero() || ym.is_zero() {
        return Err(Error::InvalidArgument("the conversion needs x != 1 and y != 1".into()));
    }
    let p = RCParams { q: &xm * &ym, w: ym.clone() };
    let z = random_cluster(g, &p)?;
    let denom = &xm.pow(g.component_count() as u32) * &ym.pow(g.n() as u32);
    Ok(&z / &denom)
}

/// The two elementary lower bounds `q^v (1 + w/q)^e` and `(1 + w)^e`.
pub fn potts_lower_bounds(g: &Graph, p: &RCParams) -> (Scalar, Scalar) {
    let one = p.q.one_like();
    let first = &p.q.pow(g.n() as u32) * &(&one + &(&p.w / &p.q)).pow(g.m() as u32);
    let second = (&one + &p.w).pow(g.m() as u32);
    (first, second)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn exact(q: i64, w: i64) -> RCParams {
        RCParams::new(Scalar::int(q), Scalar::int(w)).unwrap()
    }

    #[test]
    fn small_values() {
        // q² + qw
        assert_eq!(random_cluster(&complete(2), &exact(2, 1)).unwrap(), Scalar::int(6));
        assert_eq!(random_cluster(&complete(2), &exact(5, 3)).unwrap(), Scalar::int(40));
        assert_eq!(random_cluster(&cycle(3), &exact(2, 1)).unwrap(), Scalar::int(28));
        assert_eq!(random_cluster(&Graph::empty(3), &exact(2, 7)).unwrap(), Scalar::int(8));
    }

    #[test]
    fn loops_contribute_one_plus_w() {
        let g = Graph::new(2, vec![(0, 0), (0, 1), (1, 1)]).unwrap();
        let p = exact(3, 2);
        // (1+w)² (q² + qw)
        assert_eq!(random_cluster(&g, &p).unwrap(), Scalar::int(9 * 15));
    }

    #[test]
    fn memo_agrees() {
        let p = RCParams::new(Scalar::ratio(3, 2), Scalar::ratio(1, 2)).unwrap();
        let g = petersen();
        let plain = random_cluster_with(&g, &p, &Caps::default(), false).unwrap();
        let memo = random_cluster_with(&g, &p, &Caps::default(), true).unwrap();
        assert_eq!(plain, memo);
    }

    #[test]
    fn budget_is_enforced() {
        let caps = Caps { expansions: 10, ..Caps::default() };
        assert!(matches!(
            random_cluster_with(&complete(5), &exact(2, 1), &caps, false),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn probabilities() {
        let (out, inside) = edge_probabilities(&complete(2), &exact(2, 1), 0).unwrap();
        assert_eq!(inside, Scalar::ratio(1, 3));
        assert_eq!(out, Scalar::ratio(2, 3));
        let (out, inside) = edge_probabilities(&cycle(5), &exact(3, 0), 2).unwrap();
        assert_eq!((out, inside), (Scalar::int(1), Scalar::int(0)));
        assert!(edge_probabilities(&cycle(5), &exact(3, 0), 9).is_err());
    }

    #[test]
    fn fkg_on_square() {
        let r = fkg_check(&cycle(4), &exact(2, 1), 0, 1).unwrap();
        assert!(r.minors_hold && r.correlation_holds);
        assert!(r.lhs >= r.rhs);
        assert!(fkg_check(&cycle(4), &exact(2, 1), 1, 1).is_err());
    }

    #[test]
    fn fkg_on_disjoint_copies_is_tight() {
        let g = crate::graph::disjoint_union(&cycle(3), &cycle(3));
        let r = fkg_check(&g, &exact(2, 1), 0, 3).unwrap();
        assert_eq!(r.lhs, r.rhs);
    }

    #[test]
    fn tutte_conversion() {
        let (x, y) = (Scalar::int(3), Scalar::int(5));
        assert_eq!(tutte_value(&complete(2), &x, &y).unwrap(), x);
        // T(C3) = x² + x + y
        assert_eq!(tutte_value(&cycle(3), &x, &y).unwrap(), Scalar::int(17));
        // T(K4; 2, 2) counts spanning subgraphs: 2^6
        assert_eq!(tutte_value(&complete(4), &Scalar::int(2), &Scalar::int(2)).unwrap(), Scalar::int(64));
        assert!(tutte_value(&complete(2), &Scalar::int(1), &y).is_err());
    }

    #[test]
    fn lower_bounds() {
        let p = exact(2, 1);
        let (a, b) = potts_lower_bounds(&cycle(3), &p);
        assert_eq!(a, Scalar::ratio(27, 1));
        assert_eq!(b, Scalar::int(8));
        assert!(random_cluster(&cycle(3), &p).unwrap() >= a);
    }

    #[test]
    fn parameter_validation() {
        assert!(RCParams::new(Scalar::int(-1), Scalar::int(1)).is_err());
        assert!(RCParams::new(Scalar::int(1), Scalar::float(1.0)).is_err());
        assert!(!RCParams::new(Scalar::ratio(1, 2), Scalar::int(1)).unwrap().in_fkg_range());
    }
}
