//! Deliberately naive reference implementations. Nothing here shares code
//! with the engines under test beyond the graph and model containers.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use twolift_core::{Graph, Scalar, SpinModel};

/// A value from an oracle: exact when the model is exact.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(BigRational),
    Float(f64),
}

impl Value {
    pub fn matches(&self, s: &Scalar, rel: f64) -> bool {
        match (self, s) {
            (Value::Exact(a), Scalar::Exact(b)) => a == b,
            (Value::Float(a), Scalar::Float(b)) => (a - b).abs() <= rel * a.abs().max(b.abs()).max(f64::MIN_POSITIVE),
            _ => false,
        }
    }
}

fn exact(s: &Scalar) -> BigRational {
    s.as_exact().expect("exact scalar").clone()
}

/// `Σ_σ Π_v ν_σ(v) Π_{uv} a_σ(u)σ(v)` over all `q^v` maps, no pruning.
pub fn brute_partition(g: &Graph, m: &SpinModel) -> Value {
    let (n, q) = (g.n(), m.q());
    let total = q.pow(n as u32);
    let mut sigma = vec![0usize; n];
    if m.is_exact() {
        let a: Vec<BigRational> = m.matrix().iter().map(exact).collect();
        let nu: Vec<BigRational> = m.weights().iter().map(exact).collect();
        let mut sum = BigRational::zero();
        for code in 0..total {
            decode(code, q, &mut sigma);
            let mut term = BigRational::one();
            for &s in &sigma {
                term *= &nu[s];
            }
            for &(u, v) in g.edges() {
                term *= &a[sigma[u] * q + sigma[v]];
            }
            sum += term;
        }
        Value::Exact(sum)
    } else {
        let (a, nu) = (m.matrix_f64(), m.weights_f64());
        let mut sum = 0.0;
        for code in 0..total {
            decode(code, q, &mut sigma);
            let mut term: f64 = sigma.iter().map(|&s| nu[s]).product();
            for &(u, v) in g.edges() {
                term *= a[sigma[u] * q + sigma[v]];
            }
            sum += term;
        }
        Value::Float(sum)
    }
}

fn decode(mut code: usize, q: usize, out: &mut [usize]) {
    for s in out.iter_mut() {
        *s = code % q;
        code /= q;
    }
}

fn find(p: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while p[r] != r {
        r = p[r];
    }
    let mut y = x;
    while p[y] != r {
        let next = p[y];
        p[y] = r;
        y = next;
    }
    r
}

/// Connected components of `(V, F)` for the edge subset encoded by `mask`.
pub fn components(g: &Graph, mask: u64) -> usize {
    let mut p: Vec<usize> = (0..g.n()).collect();
    let mut k = g.n();
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        if mask >> i & 1 == 1 {
            let (a, b) = (find(&mut p, u), find(&mut p, v));
            if a != b {
                p[a] = b;
                k -= 1;
            }
        }
    }
    k
}

/// `Σ_{F⊆E} q^{k(F)} w^{|F|}` by listing all `2^m` subsets.
pub fn brute_random_cluster(g: &Graph, q: &BigRational, w: &BigRational) -> BigRational {
    assert!(g.m() <= 20);
    let mut sum = BigRational::zero();
    for mask in 0..1u64 << g.m() {
        let k = components(g, mask);
        sum += num_traits::pow(q.clone(), k) * num_traits::pow(w.clone(), mask.count_ones() as usize);
    }
    sum
}

fn independent(g: &Graph, mask: u64) -> bool {
    g.edges().iter().all(|&(u, v)| mask >> u & 1 == 0 || mask >> v & 1 == 0)
}

/// `i_k` for every `k`, by listing vertex subsets.
pub fn brute_independent_counts(g: &Graph) -> Vec<u64> {
    let mut out = vec![0u64; g.n() + 1];
    for mask in 0..1u64 << g.n() {
        if independent(g, mask) {
            out[mask.count_ones() as usize] += 1;
        }
    }
    out
}

/// `m_k` for every `k`, by listing edge subsets.
pub fn brute_matching_counts(g: &Graph) -> Vec<u64> {
    let mut out = vec![0u64; g.n() / 2 + 1];
    for mask in 0..1u64 << g.m() {
        let mut used = vec![false; g.n()];
        let mut ok = true;
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            if mask >> i & 1 == 1 {
                if u == v || used[u] || used[v] {
                    ok = false;
                    break;
                }
                used[u] = true;
                used[v] = true;
            }
        }
        if ok {
            out[mask.count_ones() as usize] += 1;
        }
    }
    out
}

/// `Σ_{I independent} λ^{|I|}` by listing vertex subsets.
pub fn brute_independence_polynomial(g: &Graph, lambda: &BigRational) -> BigRational {
    brute_independent_counts(g)
        .iter()
        .enumerate()
        .map(|(k, &c)| BigRational::from_integer(BigInt::from(c)) * num_traits::pow(lambda.clone(), k))
        .fold(BigRational::zero(), |a, b| a + b)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Lifts a signing by hand: `(u,0)(v,0)` and `(u,1)(v,1)` for `+1`,
/// `(u,0)(v,1)` and `(u,1)(v,0)` for `−1`.
pub fn manual_lift(g: &Graph, signs: &[i8]) -> Graph {
    let n = g.n();
    let mut edges = Vec::new();
    for (&(u, v), &s) in g.edges().iter().zip(signs) {
        if s > 0 {
            edges.push((u, v));
            edges.push((u + n, v + n));
        } else {
            edges.push((u, v + n));
            edges.push((u + n, v));
        }
    }
    Graph::new(2 * n, edges).expect("valid lift")
}
