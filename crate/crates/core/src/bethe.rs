//! Bethe free energy of a spin model on the infinite `d`-regular tree.
//!
//! `Φ_d(A, ν)` is available two ways: as a functional of a symmetric pair
//! distribution `h` ([`phi_h`]) and as a functional of a belief-propagation
//! fixed point `h̃` ([`phi_tilde`]). The two agree at fixed points, with
//! `h(i,j) ∝ a_ij h̃(i) h̃(j)`. Everything here is floating point.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::models::SpinModel;
use crate::rng::SeededRng;

const SUM_TOL: f64 = 1e-12;

/// Probability vector on the `q` spins.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Marginal(Vec<f64>);

impl Marginal {
    pub fn new(p: Vec<f64>) -> Result<Marginal> {
        check_distribution(&p, "marginal")?;
        Ok(Marginal(p))
    }

    pub fn uniform(q: usize) -> Marginal {
        Marginal(vec![1.0 / q as f64; q])
    }

    pub fn probs(&self) -> &[f64] {
        &self.0
    }

    fn normalized(v: Vec<f64>) -> Result<Marginal> {
        let z: f64 = v.iter().sum();
        if !z.is_finite() || z <= 0.0 {
            return Err(Error::Degenerate(format!("cannot normalize {v:?}")));
        }
        Ok(Marginal(v.into_iter().map(|x| x / z).collect()))
    }
}

fn check_distribution(p: &[f64], what: &str) -> Result<()> {
    if p.is_empty() || p.iter().any(|&x| !x.is_finite() || x < 0.0) {
        return Err(Error::InvalidArgument(format!("{what} must have finite nonnegative entries")));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > SUM_TOL {
        return Err(Error::InvalidArgument(format!("{what} sums to {total}, not 1")));
    }
    Ok(())
}

/// Symmetric distribution on `[q]²`, row-major.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairDistribution {
    q: usize,
    h: Vec<f64>,
}

impl PairDistribution {
    pub fn new(q: usize, h: Vec<f64>) -> Result<PairDistribution> {
        if h.len() != q * q {
            return Err(Error::InvalidArgument(format!("need {} entries, got {}", q * q, h.len())));
        }
        check_distribution(&h, "pair distribution")?;
        for i in 0..q {
            for j in 0..i {
                if (h[i * q + j] - h[j * q + i]).abs() > SUM_TOL {
                    return Err(Error::InvalidArgument(format!("h({i},{j}) != h({j},{i})")));
                }
            }
        }
        Ok(PairDistribution { q, h })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.h[i * self.q + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.h
    }

    /// One-point marginal `h̄(i) = Σ_j h(i,j)`.
    pub fn marginal(&self) -> Vec<f64> {
        (0..self.q).map(|i| (0..self.q).map(|j| self.get(i, j)).sum()).collect()
    }
}

/// A point of the local marginal polytope: one distribution per vertex and
/// one joint distribution per edge, indexed like `g.edges()`. Rows of an
/// edge table belong to the edge's first endpoint.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalMarginals {
    pub vertex: Vec<Vec<f64>>,
    pub edge: Vec<Vec<f64>>,
}

impl LocalMarginals {
    /// `τ_u = h̄` and `τ_{u,v} = h` everywhere.
    pub fn translation_invariant(g: &Graph, h: &PairDistribution) -> LocalMarginals {
        LocalMarginals { vertex: vec![h.marginal(); g.n()], edge: vec![h.entries().to_vec(); g.m()] }
    }

    /// `τ_{u,v} = τ_u ⊗ τ_v`.
    pub fn product(g: &Graph, vertex: Vec<Vec<f64>>) -> LocalMarginals {
        let edge = g
            .edges()
            .iter()
            .map(|&(u, v)| vertex[u].iter().flat_map(|a| vertex[v].iter().map(move |b| a * b)).collect())
            .collect();
        LocalMarginals { vertex, edge }
    }
}

/// A converged belief-propagation run.
#[derive(Clone, Debug, Serialize)]
pub struct BetheSolution {
    pub marginal: Marginal,
    pub pair: PairDistribution,
    /// `Φ̃_d` at the fixed point.
    pub value: f64,
    pub iterations: usize,
    pub residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BpConfig {
    pub restarts: usize,
    pub seed: u64,
    pub tol: f64,
    pub max_iter: usize,
    pub damping: f64,
}

impl Default for BpConfig {
    fn default() -> Self {
        BpConfig { restarts: 50, seed: 0, tol: 1e-12, max_iter: 100_000, damping: 0.5 }
    }
}

fn field(a: &[f64], q: usize, h: &[f64], i: usize) -> f64 {
    (0..q).map(|j| a[i * q + j] * h[j]).sum()
}

/// One belief-propagation update: `h̃(i) ∝ ν(i) (Σ_j a_ij h̃(j))^{d−1}`.
pub fn bp_step(m: &SpinModel, d: usize, h: &Marginal) -> Result<Marginal> {
    if d < 2 {
        return Err(Error::InvalidArgument("degree must be at least 2".into()));
    }
    let q = m.q();
    let (a, nu) = (m.matrix_f64(), m.weights_f64());
    let raw = (0..q).map(|i| nu[i] * field(&a, q, h.probs(), i).powi(d as i32 - 1)).collect();
    Marginal::normalized(raw)
}

fn run_bp(m: &SpinModel, d: usize, start: Vec<f64>, cfg: &BpConfig) -> Result<(Marginal, usize, f64)> {
    let mut h = Marginal(start);
    let mut residual = f64::INFINITY;
    for it in 1..=cfg.max_iter {
        let next = bp_step(m, d, &h)?;
        residual = next.0.iter().zip(&h.0).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        if residual <= cfg.tol {
            return Ok((next, it, residual));
        }
        let mixed = h.0.iter().zip(&next.0).map(|(x, y)| (1.0 - cfg.damping) * x + cfg.damping * y).collect();
        h = Marginal::normalized(mixed)?;
    }
    Err(Error::NoConvergence(format!("residual {residual:e} after {} iterations", cfg.max_iter)))
}

/// Damped belief propagation from the uniform start and `restarts − 1`
/// seeded simplex samples. Converged fixed points closer than `1e-8` are
/// merged; the result is sorted by `Φ̃_d` (largest first), then by `h̃`.
pub fn solve_bp(m: &SpinModel, d: usize, cfg: &BpConfig) -> Result<Vec<BetheSolution>> {
    if cfg.restarts == 0 {
        return Err(Error::InvalidArgument("restarts must be at least 1".into()));
    }
    if !m.is_permissive() {
        eprintln!("warning: model is not permissive; Bethe values may be degenerate");
    }
    let q = m.q();
    let mut rng = SeededRng::new(cfg.seed);
    let starts: Vec<Vec<f64>> = std::iter::once(Marginal::uniform(q).0)
        .chain((1..cfg.restarts).map(|_| rng.simplex(q)))
        .collect();
    let runs: Vec<Result<(Marginal, usize, f64)>> =
        starts.into_par_iter().map(|s| run_bp(m, d, s, cfg)).collect();
    let mut found: Vec<BetheSolution> = Vec::new();
    let mut last_err = None;
    for run in runs {
        let (marginal, iterations, residual) = match run {
            Ok(r) => r,
            Err(e) => {
                last_err = Some(e);
                continue;
            }
        };
        let duplicate = found.iter().any(|s| {
            s.marginal.0.iter().zip(&marginal.0).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max) < 1e-8
        });
        if duplicate {
            continue;
        }
        let value = phi_tilde(m, d, &marginal);
        let (pair, _) = pair_from_marginal(m, &marginal)?;
        found.push(BetheSolution { marginal, pair, value, iterations, residual });
    }
    if found.is_empty() {
        let why = last_err.map(|e| e.to_string()).unwrap_or_default();
        return Err(Error::NoConvergence(format!("no restart converged ({why})")));
    }
    found.sort_by(|x, y| {
        y.value
            .total_cmp(&x.value)
            .then_with(|| x.marginal.0.partial_cmp(&y.marginal.0).unwrap_or(std::cmp::Ordering::Equal))
    });
    Ok(found)
}

/// `Φ̃_d = ln Σ_i ν_i (Σ_j a_ij h̃_j)^d − (d/2) ln Σ_ij a_ij h̃_i h̃_j`;
/// `−∞` when the second sum vanishes.
pub fn phi_tilde(m: &SpinModel, d: usize, h: &Marginal) -> f64 {
    let q = m.q();
    let (a, nu) = (m.matrix_f64(), m.weights_f64());
    let h = h.probs();
    let first: f64 = (0..q).map(|i| nu[i] * field(&a, q, h, i).powi(d as i32)).sum();
    let second: f64 = (0..q).map(|i| h[i] * field(&a, q, h, i)).sum();
    if second <= 0.0 || first <= 0.0 {
        return f64::NEG_INFINITY;
    }
    first.ln() - d as f64 / 2.0 * second.ln()
}

/// `h(i,j) = a_ij h̃(i) h̃(j) / S̃`, returned with `S̃`.
pub fn pair_from_marginal(m: &SpinModel, h: &Marginal) -> Result<(PairDistribution, f64)> {
    let q = m.q();
    let a = m.matrix_f64();
    let p = h.probs();
    let raw: Vec<f64> = (0..q * q).map(|k| a[k] * p[k / q] * p[k % q]).collect();
    let s: f64 = raw.iter().sum();
    if s.is_nan() || s <= 0.0 {
        return Err(Error::Degenerate("Σ a_ij h(i) h(j) = 0".into()));
    }
    let mut h: Vec<f64> = raw.iter().map(|x| x / s).collect();
    symmetrize(q, &mut h);
    Ok((PairDistribution { q, h }, s))
}

fn symmetrize(q: usize, h: &mut [f64]) {
    for i in 0..q {
        for j in 0..i {
            let avg = 0.5 * (h[i * q + j] + h[j * q + i]);
            h[i * q + j] = avg;
            h[j * q + i] = avg;
        }
    }
}

/// Shannon entropy with `0 ln 0 = 0`.
pub fn entropy(p: &[f64]) -> f64 {
    -p.iter().filter(|&&x| x > 0.0).map(|x| x * x.ln()).sum::<f64>()
}

/// `Σ h(i,j) ln a_ij`, or `−∞` if `h` charges a zero entry.
fn energy(a: &[f64], h: &[f64]) -> f64 {
    let mut total = 0.0;
    for (x, y) in h.iter().zip(a) {
        if *x > 0.0 {
            if *y <= 0.0 {
                return f64::NEG_INFINITY;
            }
            total += x * y.ln();
        }
    }
    total
}

/// `Φ_d(A,ν;h) = Σ h̄ ln ν − (d−1) H(h̄) + (d/2)(H(h) + Σ h ln a)`.
pub fn phi_h(m: &SpinModel, d: usize, h: &PairDistribution) -> f64 {
    assert_eq!(h.q(), m.q(), "pair distribution and model disagree on q");
    let (a, nu) = (m.matrix_f64(), m.weights_f64());
    let bar = h.marginal();
    let e = energy(&a, h.entries());
    if e == f64::NEG_INFINITY {
        return e;
    }
    let field: f64 = bar.iter().zip(&nu).map(|(p, w)| p * w.ln()).sum();
    field - (d as f64 - 1.0) * entropy(&bar) + d as f64 / 2.0 * (entropy(h.entries()) + e)
}

/// `S_d = ln Σν + (d/2) ln(Σ ν_i ν_j a_ij / (Σν)²)`.
pub fn sidorenko_bound(m: &SpinModel, d: usize) -> f64 {
    let q = m.q();
    let (a, nu) = (m.matrix_f64(), m.weights_f64());
    let total: f64 = nu.iter().sum();
    let s: f64 = (0..q * q).map(|k| nu[k / q] * nu[k % q] * a[k]).sum();
    total.ln() + d as f64 / 2.0 * (s / (total * total)).ln()
}

/// The pair distribution `h(i,j) = ν_i ν_j a_ij / S` realizing the bound.
pub fn sidorenko_pair(m: &SpinModel) -> Result<PairDistribution> {
    let q = m.q();
    let (a, nu) = (m.matrix_f64(), m.weights_f64());
    let raw: Vec<f64> = (0..q * q).map(|k| nu[k / q] * nu[k % q] * a[k]).collect();
    let s: f64 = raw.iter().sum();
    if s.is_nan() || s <= 0.0 {
        return Err(Error::Degenerate("Σ ν_i ν_j a_ij = 0".into()));
    }
    let mut h: Vec<f64> = raw.iter().map(|x| x / s).collect();
    symmetrize(q, &mut h);
    Ok(PairDistribution { q, h })
}

/// `D(p ‖ r) = Σ p_i ln(p_i / r_i)`; `+∞` if `p` charges a zero of `r`.
pub fn kl_divergence(p: &[f64], r: &[f64]) -> f64 {
    assert_eq!(p.len(), r.len());
    let mut total = 0.0;
    for (&x, &y) in p.iter().zip(r) {
        if x > 0.0 {
            if y <= 0.0 {
                return f64::INFINITY;
            }
            total += x * (x / y).ln();
        }
    }
    total
}

/// `ν / Σν`.
pub fn normalized_weights(m: &SpinModel) -> Vec<f64> {
    let nu = m.weights_f64();
    let total: f64 = nu.iter().sum();
    nu.iter().map(|x| x / total).collect()
}

/// Edge density `α` of the hard-core optimum: the root in `[0, ½)` of
/// `α / (λ(1−α)) = ((1−2α)/(1−α))^d`.
pub fn hardcore_alpha(lambda: f64, d: usize) -> Result<f64> {
    if !lambda.is_finite() || lambda < 0.0 {
        return Err(Error::InvalidArgument(format!("λ must be finite and nonnegative, got {lambda}")));
    }
    if d < 2 {
        return Err(Error::InvalidArgument("degree must be at least 2".into()));
    }
    if lambda == 0.0 {
        return Ok(0.0);
    }
    // α − λ(1−α)((1−2α)/(1−α))^d is increasing on [0, ½]
    let f = |x: f64| x - lambda * (1.0 - x) * ((1.0 - 2.0 * x) / (1.0 - x)).powi(d as i32);
    let (mut lo, mut hi) = (0.0f64, 0.5f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let v = f(mid);
        if v.abs() <= 1e-12 && hi - lo < 1e-15 {
            return Ok(mid);
        }
        if v < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `Φ_λ = ½ ln(λ(1−α)^{d−1}/α)`, the per-vertex log partition function of
/// the hard-core model on large-girth bipartite `d`-regular graphs.
pub fn hardcore_phi(lambda: f64, d: usize) -> Result<f64> {
    let alpha = hardcore_alpha(lambda, d)?;
    if alpha == 0.0 {
        return Ok(0.0);
    }
    Ok(0.5 * (lambda * (1.0 - alpha).powi(d as i32 - 1) / alpha).ln())
}

/// The second closed form `½ ln((1−α)^{2(d−1)}/(1−2α)^d)`.
pub fn hardcore_phi_alt(lambda: f64, d: usize) -> Result<f64> {
    let alpha = hardcore_alpha(lambda, d)?;
    Ok(0.5 * (2.0 * (d as f64 - 1.0) * (1.0 - alpha).ln() - d as f64 * (1.0 - 2.0 * alpha).ln()))
}

const ISING_BRACKETS: usize = 10_000;

/// Largest solution of `h = B + (d−1) atanh(θ tanh h)`, `θ = tanh β`.
pub fn ising_hstar(beta: f64, field: f64, d: usize) -> Result<f64> {
    if !beta.is_finite() || !field.is_finite() {
        return Err(Error::InvalidArgument("β and B must be finite".into()));
    }
    if d < 2 {
        return Err(Error::InvalidArgument("degree must be at least 2".into()));
    }
    let theta = beta.tanh();
    if theta.abs() >= 1.0 {
        return Err(Error::Degenerate(format!("|tanh β| = 1 at β = {beta}")));
    }
    let g = |h: f64| field + (d as f64 - 1.0) * (theta * h.tanh()).atanh() - h;
    let reach = (d as f64 - 1.0) * theta.abs().atanh();
    if reach == 0.0 {
        return Ok(field);
    }
    // every fixed point lies within `reach` of B; g ≤ 0 at the top
    let (lo, hi) = (field - reach, field + reach);
    let step = (hi - lo) / ISING_BRACKETS as f64;
    let mut upper = hi;
    if g(upper) >= 0.0 {
        return Ok(upper);
    }
    for k in 1..=ISING_BRACKETS {
        let x = hi - k as f64 * step;
        if g(x) >= 0.0 {
            let (mut a, mut b) = (x, upper);
            while b - a > 1e-12 * b.abs().max(1.0) {
                let mid = 0.5 * (a + b);
                if g(mid) >= 0.0 {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            return Ok(0.5 * (a + b));
        }
        upper = x;
    }
    Err(Error::NoConvergence("no sign change found for the Ising fixed point".into()))
}

/// `φ_d(β,B) = (d/2)(−½ ln(1−θ²) − ln(1+θ tanh²h*))
///            + ln(e^B (1+θ tanh h*)^d + e^{−B} (1−θ tanh h*)^d)`.
///
/// The formula is invariant under `(B, h) ↦ (−B, −h)`, and for `B < 0` the
/// largest root can be the metastable branch, so negative fields are
/// evaluated at `−B`.
pub fn ising_phi(beta: f64, field: f64, d: usize) -> Result<f64> {
    if field < 0.0 {
        return ising_phi(beta, -field, d);
    }
    let h = ising_hstar(beta, field, d)?;
    let theta = beta.tanh();
    let t = h.tanh();
    let d_f = d as f64;
    let edge = d_f / 2.0 * (-0.5 * (1.0 - theta * theta).ln() - (1.0 + theta * t * t).ln());
    let di = d as i32;
    let site = (field.exp() * (1.0 + theta * t).powi(di) + (-field).exp() * (1.0 - theta * t).powi(di)).ln();
    Ok(edge + site)
}

/// `Φ_B(G,τ) = (U − H)/v(G)` for a point `τ` of the local marginal polytope.
/// Marginal consistency is checked on both sides of every edge to `1e-10`.
pub fn vontobel_eval(g: &Graph, tau: &LocalMarginals, m: &SpinModel) -> Result<f64> {
    const CONSISTENCY: f64 = 1e-10;
    let q = m.q();
    if g.n() == 0 {
        return Err(Error::InvalidArgument("graph has no vertices".into()));
    }
    if tau.vertex.len() != g.n() || tau.edge.len() != g.m() {
        return Err(Error::Inconsistent("τ does not match the graph's vertex or edge count".into()));
    }
    for (u, t) in tau.vertex.iter().enumerate() {
        if t.len() != q || t.iter().any(|&x| x < 0.0) || (t.iter().sum::<f64>() - 1.0).abs() > CONSISTENCY {
            return Err(Error::Inconsistent(format!("τ_{u} is not a distribution on {q} spins")));
        }
    }
    for (e, (&(u, v), t)) in g.edges().iter().zip(&tau.edge).enumerate() {
        if t.len() != q * q || t.iter().any(|&x| x < 0.0) {
            return Err(Error::Inconsistent(format!("edge {e} ({u},{v}): table is not a distribution")));
        }
        for i in 0..q {
            let row: f64 = (0..q).map(|j| t[i * q + j]).sum();
            let col: f64 = (0..q).map(|j| t[j * q + i]).sum();
            if (row - tau.vertex[u][i]).abs() > CONSISTENCY || (col - tau.vertex[v][i]).abs() > CONSISTENCY {
                return Err(Error::Inconsistent(format!("edge {e} ({u},{v}): marginal of spin {i} disagrees")));
            }
        }
    }
    let (a, nu) = (m.matrix_f64(), m.weights_f64());
    let mut u_term = 0.0;
    let mut h_term = 0.0;
    for t in &tau.vertex {
        for i in 0..q {
            if t[i] > 0.0 {
                u_term += t[i] * nu[i].ln();
                h_term += t[i] * t[i].ln();
            }
        }
    }
    for (&(u, v), t) in g.edges().iter().zip(&tau.edge) {
        let e = energy(&a, t);
        if e == f64::NEG_INFINITY {
            return Ok(e);
        }
        u_term += e;
        for i in 0..q {
            for j in 0..q {
                let x = t[i * q + j];
                if x > 0.0 {
                    h_term += x * (x / (tau.vertex[u][i] * tau.vertex[v][j])).ln();
                }
            }
        }
    }
    Ok((u_term - h_term) / g.n() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::models::NamedModel;
    use crate::scalar::Scalar;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
    }

    fn ind(lambda: f64) -> SpinModel {
        NamedModel::Ind { lambda: Scalar::float(lambda) }.build().unwrap()
    }

    #[test]
    fn uniform_is_fixed_for_all_ones() {
        let m = SpinModel::from_int_rows(&[&[1, 1], &[1, 1]]).unwrap();
        let h = Marginal::uniform(2);
        assert_eq!(bp_step(&m, 3, &h).unwrap(), h);
        assert!(close(phi_tilde(&m, 3, &h), 2f64.ln(), 1e-15));
    }

    #[test]
    fn hard_core_bp_step() {
        let lambda = 2.5;
        let h = Marginal::new(vec![0.7, 0.3]).unwrap();
        let next = bp_step(&ind(lambda), 3, &h).unwrap();
        let want = lambda * 0.7f64.powi(2);
        assert!(close(next.probs()[1], want / (1.0 + want), 1e-15));
    }

    #[test]
    fn hard_core_fixed_point_matches_closed_form() {
        for (lambda, d) in [(1.0, 3), (0.5, 3), (2.0, 4), (3.0, 3)] {
            let sols = solve_bp(&ind(lambda), d, &BpConfig { restarts: 8, ..BpConfig::default() }).unwrap();
            let best = &sols[0];
            let closed = hardcore_phi(lambda, d).unwrap();
            assert!(close(best.value, closed, 1e-8), "λ={lambda} d={d}: {} vs {closed}", best.value);
            assert!(close(phi_h(&ind(lambda), d, &best.pair), best.value, 1e-8));
            let again = bp_step(&ind(lambda), d, &best.marginal).unwrap();
            let moved = again.probs().iter().zip(best.marginal.probs()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            assert!(moved <= 1e-12);
        }
    }

    #[test]
    fn hard_core_closed_forms_agree() {
        for d in 2..6 {
            for lambda in [0.01, 0.5, 1.0, 4.0, 30.0] {
                let a = hardcore_phi(lambda, d).unwrap();
                let b = hardcore_phi_alt(lambda, d).unwrap();
                assert!(close(a, b, 1e-10), "λ={lambda} d={d}");
            }
        }
        assert_eq!(hardcore_phi(0.0, 3).unwrap(), 0.0);
        assert!(hardcore_alpha(1e-9, 3).unwrap() < 1e-8);
        let alpha = hardcore_alpha(1.0, 3).unwrap();
        let lhs = alpha / (1.0 - alpha);
        let rhs = ((1.0 - 2.0 * alpha) / (1.0 - alpha)).powi(3);
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn ising_cases() {
        let (beta, d) = (0.3f64, 3);
        let theta = beta.tanh();
        assert!(ising_hstar(beta, 0.0, d).unwrap().abs() <= 1e-12);
        let want = d as f64 / 2.0 * (-0.5 * (1.0 - theta * theta).ln()) + 2f64.ln();
        assert!(close(ising_phi(beta, 0.0, d).unwrap(), want, 1e-14));
        let uniform = phi_tilde(&NamedModel::ising(beta, 0.0).build().unwrap(), d, &Marginal::uniform(2));
        assert!(close(uniform, want, 1e-12));
        let b = 0.4f64;
        assert!(close(ising_phi(0.0, b, 5).unwrap(), (b.exp() + (-b).exp()).ln(), 1e-14));
        assert!(ising_hstar(1.0, 0.0, 3).unwrap() > 0.1);
    }

    #[test]
    fn ising_bp_agrees_with_closed_form() {
        for (beta, field) in [(0.2, 0.1), (0.8, 0.0), (0.5, -0.3), (1.2, 0.05), (1.0, -0.1)] {
            let m = NamedModel::ising(beta, field).build().unwrap();
            let best = solve_bp(&m, 3, &BpConfig { restarts: 16, ..BpConfig::default() }).unwrap();
            let closed = ising_phi(beta, field, 3).unwrap();
            assert!(close(best[0].value, closed, 1e-8), "β={beta} B={field}: {} vs {closed}", best[0].value);
        }
    }

    #[test]
    fn sidorenko_identity() {
        let models = [
            NamedModel::Wr.build().unwrap().to_float(),
            ind(1.7),
            NamedModel::ising(0.4, 0.2).build().unwrap(),
            SpinModel::from_int_rows(&[&[2, 1, 0], &[1, 0, 3], &[0, 3, 1]]).unwrap().to_float(),
        ];
        for m in &models {
            for d in 2..5 {
                let h = sidorenko_pair(m).unwrap();
                let lhs = phi_h(m, d, &h);
                let rhs = sidorenko_bound(m, d) + (d as f64 - 1.0) * kl_divergence(&h.marginal(), &normalized_weights(m));
                assert!((lhs - rhs).abs() <= 1e-10, "{m}: {lhs} vs {rhs}");
                let best = solve_bp(m, d, &BpConfig { restarts: 8, ..BpConfig::default() }).unwrap();
                assert!(best[0].value >= sidorenko_bound(m, d) - 1e-9);
            }
        }
    }

    #[test]
    fn coloring_bound() {
        for q in 2..6i64 {
            let k = SpinModel::adjacency(&complete(q as usize));
            let want = (q as f64).ln() + 1.5 * ((q - 1) as f64 / q as f64).ln();
            assert!(close(sidorenko_bound(&k, 3), want, 1e-14));
        }
    }

    #[test]
    fn kl_basics() {
        assert_eq!(kl_divergence(&[0.5, 0.5], &[0.5, 0.5]), 0.0);
        assert!(close(kl_divergence(&[1.0, 0.0], &[0.5, 0.5]), 2f64.ln(), 1e-15));
    }

    #[test]
    fn pair_distribution_support() {
        let (h, _) = pair_from_marginal(&ind(1.0), &Marginal::uniform(2)).unwrap();
        assert_eq!(h.get(1, 1), 0.0);
        let wr = NamedModel::Wr.build().unwrap();
        let (h, s) = pair_from_marginal(&wr, &Marginal::uniform(3)).unwrap();
        assert!(close(s, 7.0 / 9.0, 1e-15));
        assert!(close(h.get(0, 1), 1.0 / 7.0, 1e-15));
        let concentrated = PairDistribution::new(2, vec![0.0, 0.0, 0.0, 1.0]).unwrap();
        assert_eq!(phi_h(&ind(1.0), 3, &concentrated), f64::NEG_INFINITY);
        let m = SpinModel::from_int_rows(&[&[3, 1], &[1, 1]]).unwrap();
        let diag = PairDistribution::new(2, vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(close(phi_h(&m, 4, &diag), 2.0 * 3f64.ln(), 1e-15));
        assert!(PairDistribution::new(2, vec![0.5, 0.5, 0.0, 0.0]).is_err());
    }

    #[test]
    fn vontobel_matches_phi_h_on_regular_graphs() {
        let m = NamedModel::ising(0.6, 0.3).build().unwrap();
        let h = PairDistribution::new(2, vec![0.4, 0.15, 0.15, 0.3]).unwrap();
        for (g, d) in [(petersen(), 3), (complete(5), 4), (cycle(7), 2)] {
            let tau = LocalMarginals::translation_invariant(&g, &h);
            let v = vontobel_eval(&g, &tau, &m).unwrap();
            assert!((v - phi_h(&m, d, &h)).abs() <= 1e-10);
        }
    }

    #[test]
    fn vontobel_edgeless_and_product() {
        let m = NamedModel::Ind { lambda: Scalar::float(2.0) }.build().unwrap();
        let g = Graph::empty(2);
        let tau = LocalMarginals { vertex: vec![vec![0.5, 0.5], vec![0.2, 0.8]], edge: vec![] };
        let want = (0.5 * 2f64.ln() + entropy(&[0.5, 0.5]) + 0.8 * 2f64.ln() + entropy(&[0.2, 0.8])) / 2.0;
        assert!(close(vontobel_eval(&g, &tau, &m).unwrap(), want, 1e-15));
        let ones = SpinModel::from_int_rows(&[&[1, 1], &[1, 1]]).unwrap();
        let g = cycle(4);
        let tau = LocalMarginals::product(&g, vec![vec![0.3, 0.7]; 4]);
        assert!(close(vontobel_eval(&g, &tau, &ones).unwrap(), entropy(&[0.3, 0.7]), 1e-14));
    }

    #[test]
    fn vontobel_rejects_inconsistent_tables() {
        let g = complete(2);
        let tau = LocalMarginals { vertex: vec![vec![0.5, 0.5], vec![0.5, 0.5]], edge: vec![vec![0.5, 0.0, 0.5, 0.0]] };
        let m = SpinModel::from_int_rows(&[&[1, 1], &[1, 1]]).unwrap();
        match vontobel_eval(&g, &tau, &m) {
            Err(Error::Inconsistent(msg)) => assert!(msg.contains("edge 0")),
            other => panic!("expected inconsistency, got {other:?}"),
        }
    }

    #[test]
    fn solver_output_is_deterministic() {
        let m = ind(2.0);
        let cfg = BpConfig { restarts: 12, seed: 9, ..BpConfig::default() };
        let a = solve_bp(&m, 3, &cfg).unwrap();
        let b = solve_bp(&m, 3, &cfg).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.marginal, y.marginal);
        }
    }
}
