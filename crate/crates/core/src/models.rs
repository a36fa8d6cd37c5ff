//! Spin models `(A, ν)`: a symmetric nonnegative `q × q` interaction matrix
//! and a positive weight per spin value.

use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::{scalar_from_json, Scalar};

/// Default limit on the number of states `exponentiation` may create.
pub const DEFAULT_EXPONENT_CAP: usize = 1 << 12;

#[derive(Clone, Debug, PartialEq)]
pub struct SpinModel {
    q: usize,
    a: Vec<Scalar>,
    nu: Vec<Scalar>,
}

impl SpinModel {
    /// Validates symmetry, nonnegativity, positive weights and that every
    /// entry has the same kind (all exact or all float).
    pub fn new(q: usize, a: Vec<Scalar>, nu: Vec<Scalar>) -> Result<SpinModel> {
        if q == 0 {
            return Err(Error::InvalidModel("q must be positive".into()));
        }
        if a.len() != q * q || nu.len() != q {
            return Err(Error::InvalidModel(format!(
                "expected {q}x{q} matrix and {q} weights, got {} entries and {} weights",
                a.len(),
                nu.len()
            )));
        }
        let exact = a[0].is_exact();
        if a.iter().chain(&nu).any(|x| x.is_exact() != exact) {
            return Err(Error::InvalidModel(
                "mixed exact and floating entries; convert with to_float()".into(),
            ));
        }
        for i in 0..q {
            for j in 0..q {
                let x = &a[i * q + j];
                if x.to_f64().is_nan() || *x < x.zero_like() {
                    return Err(Error::InvalidModel(format!("A({i},{j}) is negative")));
                }
                if *x != a[j * q + i] {
                    return Err(Error::InvalidModel(format!("A({i},{j}) != A({j},{i})")));
                }
            }
        }
        if let Some(i) = nu.iter().position(|x| x.to_f64().is_nan() || *x <= x.zero_like()) {
            return Err(Error::InvalidModel(format!("weight nu({i}) is not positive")));
        }
        Ok(SpinModel { q, a, nu })
    }

    /// Model with unit weights from a row-major matrix.
    pub fn from_matrix(q: usize, a: Vec<Scalar>) -> Result<SpinModel> {
        let one = a.first().map(Scalar::one_like).unwrap_or(Scalar::int(1));
        SpinModel::new(q, a, vec![one; q])
    }

    /// Exact 0/1 (or integer) model from integer rows.
    pub fn from_int_rows(rows: &[&[i64]]) -> Result<SpinModel> {
        let q = rows.len();
        if rows.iter().any(|r| r.len() != q) {
            return Err(Error::InvalidModel("matrix is not square".into()));
        }
        SpinModel::from_matrix(q, rows.iter().flat_map(|r| r.iter().map(|&x| Scalar::int(x))).collect())
    }

    /// Adjacency matrix of `h` (loops on the diagonal, parallel edges add up).
    pub fn adjacency(h: &Graph) -> SpinModel {
        let q = h.n();
        let mut counts = vec![0i64; q * q];
        for &(u, v) in h.edges() {
            counts[u * q + v] += 1;
            if u != v {
                counts[v * q + u] += 1;
            }
        }
        SpinModel::from_matrix(q, counts.into_iter().map(Scalar::int).collect()).expect("valid adjacency")
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn a(&self, i: usize, j: usize) -> &Scalar {
        &self.a[i * self.q + j]
    }

    pub fn nu(&self, i: usize) -> &Scalar {
        &self.nu[i]
    }

    pub fn matrix(&self) -> &[Scalar] {
        &self.a
    }

    pub fn weights(&self) -> &[Scalar] {
        &self.nu
    }

    pub fn is_exact(&self) -> bool {
        self.a[0].is_exact()
    }

    pub fn has_unit_weights(&self) -> bool {
        let one = self.nu[0].one_like();
        self.nu.iter().all(|x| *x == one)
    }

    /// Same model with every entry converted to `f64`.
    pub fn to_float(&self) -> SpinModel {
        SpinModel {
            q: self.q,
            a: self.a.iter().map(Scalar::to_float).collect(),
            nu: self.nu.iter().map(Scalar::to_float).collect(),
        }
    }

    pub fn with_weights(&self, nu: Vec<Scalar>) -> Result<SpinModel> {
        SpinModel::new(self.q, self.a.clone(), nu)
    }

    pub fn with_unit_weights(&self) -> SpinModel {
        let one = self.nu[0].one_like();
        SpinModel { q: self.q, a: self.a.clone(), nu: vec![one; self.q] }
    }

    pub fn matrix_f64(&self) -> Vec<f64> {
        self.a.iter().map(Scalar::to_f64).collect()
    }

    pub fn weights_f64(&self) -> Vec<f64> {
        self.nu.iter().map(Scalar::to_f64).collect()
    }

    /// Has a row of strictly positive entries.
    pub fn is_permissive(&self) -> bool {
        (0..self.q).any(|i| (0..self.q).all(|j| self.a(i, j).signum() > 0))
    }

    fn is_zero_one(&self) -> bool {
        let (zero, one) = (self.a[0].zero_like(), self.a[0].one_like());
        self.a.iter().all(|x| *x == zero || *x == one)
    }

    pub fn from_json(text: &str) -> Result<SpinModel> {
        let raw: ModelFile = serde_json::from_str(text)?;
        raw.into_model()
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Vec<String>> = (0..self.q)
            .map(|i| (0..self.q).map(|j| self.a(i, j).to_string()).collect())
            .collect();
        let out = serde_json::json!({
            "q": self.q,
            "A": rows,
            "nu": self.nu.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "float": !self.is_exact(),
        });
        out.to_string()
    }
}

impl fmt::Display for SpinModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.q {
            let row: Vec<String> = (0..self.q).map(|j| self.a(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        let nu: Vec<String> = self.nu.iter().map(|x| x.to_string()).collect();
        write!(f, "nu = ({})", nu.join(", "))
    }
}

/// On-disk model: `{"q":int,"A":[[...]],"nu":[...]}`. Entries may be numbers
/// or decimal/fraction strings and are read exactly; `"float": true` asks for
/// floating entries instead.
#[derive(Deserialize, Serialize)]
struct ModelFile {
    q: usize,
    #[serde(rename = "A")]
    a: Vec<Vec<serde_json::Value>>,
    #[serde(default)]
    nu: Option<Vec<serde_json::Value>>,
    #[serde(default)]
    float: bool,
}

impl ModelFile {
    fn into_model(self) -> Result<SpinModel> {
        if self.a.len() != self.q || self.a.iter().any(|r| r.len() != self.q) {
            return Err(Error::InvalidModel(format!("A must be {0}x{0}", self.q)));
        }
        let mut a = Vec::with_capacity(self.q * self.q);
        for row in &self.a {
            for v in row {
                a.push(scalar_from_json(v)?);
            }
        }
        let nu = match &self.nu {
            Some(v) => v.iter().map(scalar_from_json).collect::<Result<Vec<_>>>()?,
            None => vec![Scalar::int(1); self.q],
        };
        let all_exact = a.iter().chain(&nu).all(Scalar::is_exact);
        if self.float || !all_exact {
            let f = |v: Vec<Scalar>| v.iter().map(Scalar::to_float).collect();
            return SpinModel::new(self.q, f(a), f(nu));
        }
        SpinModel::new(self.q, a, nu)
    }
}

/// Named models.
#[derive(Clone, Debug, PartialEq)]
pub enum NamedModel {
    /// Hard-core model `[[1,1],[1,0]]` with weights `(1, λ)`.
    Ind { lambda: Scalar },
    /// Widom–Rowlinson: the path on 3 vertices with a loop at each vertex.
    Wr,
    /// Ising `[[e^β, e^-β],[e^-β, e^β]]` with weights `(e^B, e^-B)`.
    Ising { beta: f64, field: f64 },
    /// Potts `J + w·I` on `q` spins.
    Potts { q: Scalar, w: Scalar },
}

impl NamedModel {
    pub fn build(&self) -> Result<SpinModel> {
        match self {
            NamedModel::Ind { lambda } => {
                let one = lambda.one_like();
                SpinModel::new(
                    2,
                    vec![one.clone(), one.clone(), one.clone(), lambda.zero_like()],
                    vec![one, lambda.clone()],
                )
            }
            NamedModel::Wr => SpinModel::from_int_rows(&[&[1, 1, 0], &[1, 1, 1], &[0, 1, 1]]),
            NamedModel::Ising { beta, field } => {
                if !beta.is_finite() || !field.is_finite() {
                    return Err(Error::InvalidModel("Ising parameters must be finite".into()));
                }
                let (p, m) = (Scalar::float(beta.exp()), Scalar::float((-beta).exp()));
                SpinModel::new(
                    2,
                    vec![p.clone(), m.clone(), m, p],
                    vec![Scalar::float(field.exp()), Scalar::float((-field).exp())],
                )
            }
            NamedModel::Potts { q, w } => {
                if !q.is_integer() || q.to_f64() < 1.0 {
                    return Err(Error::InvalidModel(format!(
                        "Potts matrix needs an integer q >= 1, got {q}; use the random-cluster form for real q"
                    )));
                }
                if *w < w.zero_like() {
                    return Err(Error::InvalidModel("Potts w must be nonnegative".into()));
                }
                let q = q.to_f64() as usize;
                let one = w.one_like();
                let diag = &one + w;
                let a = (0..q * q)
                    .map(|k| if k / q == k % q { diag.clone() } else { one.clone() })
                    .collect();
                SpinModel::from_matrix(q, a)
            }
        }
    }

    pub fn ind() -> Self {
        NamedModel::Ind { lambda: Scalar::int(1) }
    }

    pub fn ising(beta: f64, field: f64) -> Self {
        NamedModel::Ising { beta, field }
    }

    pub fn potts(q: i64, w: Scalar) -> Self {
        NamedModel::Potts { q: Scalar::int(q), w }
    }
}

impl FromStr for NamedModel {
    type Err = Error;

    /// `ind`, `ind:λ`, `wr`, `ising:β` or `ising:β:B`, `potts:q:w`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let float = |x: &str| {
            x.parse::<f64>()
                .map_err(|_| Error::InvalidModel(format!("bad number {x:?} in {s:?}")))
        };
        match parts.as_slice() {
            ["ind"] => Ok(NamedModel::ind()),
            ["ind", l] => Ok(NamedModel::Ind { lambda: l.parse()? }),
            ["wr"] => Ok(NamedModel::Wr),
            ["ising", b] => Ok(NamedModel::ising(float(b)?, 0.0)),
            ["ising", b, h] => Ok(NamedModel::ising(float(b)?, float(h)?)),
            ["potts", q, w] => Ok(NamedModel::Potts { q: q.parse()?, w: w.parse()? }),
            _ => Err(Error::InvalidModel(format!(
                "unknown model {s:?}; expected ind[:λ], wr, ising:β[:B] or potts:q:w"
            ))),
        }
    }
}

fn same_kind(a: &SpinModel, b: &SpinModel) -> Result<()> {
    if a.is_exact() != b.is_exact() {
        return Err(Error::InvalidModel("cannot combine exact and floating models".into()));
    }
    Ok(())
}

/// `A^ν`: each entry `a_ij` becomes a constant `ν(i) × ν(j)` block; the
/// weights of the model must be positive integers and the result has unit
/// weights.
pub fn blow_up(m: &SpinModel) -> Result<SpinModel> {
    let mut owner = Vec::new();
    for (i, w) in m.weights().iter().enumerate() {
        if !w.is_exact() || !w.is_integer() {
            return Err(Error::InvalidModel(format!("blow-up needs integer weights, nu({i}) = {w}")));
        }
        let k = w.as_exact().and_then(|r| r.to_integer().to_usize()).unwrap_or(0);
        owner.extend(std::iter::repeat_n(i, k));
    }
    let big = owner.len();
    let a = (0..big * big)
        .map(|k| m.a(owner[k / big], owner[k % big]).clone())
        .collect();
    SpinModel::from_matrix(big, a)
}

/// Kronecker product, state `(i, j)` numbered `i·q₂ + j`, weights multiplied.
pub fn tensor(m1: &SpinModel, m2: &SpinModel) -> Result<SpinModel> {
    same_kind(m1, m2)?;
    let (q1, q2) = (m1.q(), m2.q());
    let q = q1 * q2;
    let mut a = Vec::with_capacity(q * q);
    for r in 0..q {
        for c in 0..q {
            a.push(m1.a(r / q2, c / q2) * m2.a(r % q2, c % q2));
        }
    }
    let nu = (0..q).map(|r| m1.nu(r / q2) * m2.nu(r % q2)).collect();
    SpinModel::new(q, a, nu)
}

/// Ordered pairs `(i, j)` in block order: the `q` diagonal pairs, then the
/// pairs with `i < j` lexicographically, then their mirrors `(j, i)` in the
/// same order.
pub fn pair_order(q: usize) -> Vec<(usize, usize)> {
    let upper: Vec<(usize, usize)> = (0..q)
        .flat_map(|i| (i + 1..q).map(move |j| (i, j)))
        .collect();
    (0..q)
        .map(|i| (i, i))
        .chain(upper.iter().copied())
        .chain(upper.iter().map(|&(i, j)| (j, i)))
        .collect()
}

fn pair_product(m: &SpinModel, crossed: bool) -> SpinModel {
    let pairs = pair_order(m.q());
    let q2 = pairs.len();
    let mut a = Vec::with_capacity(q2 * q2);
    for &(i, j) in &pairs {
        for &(k, l) in &pairs {
            a.push(if crossed {
                m.a(i, l) * m.a(j, k)
            } else {
                m.a(i, k) * m.a(j, l)
            });
        }
    }
    let nu = pairs.iter().map(|&(i, j)| m.nu(i) * m.nu(j)).collect();
    SpinModel::new(q2, a, nu).expect("pair products are symmetric and nonnegative")
}

/// `A⁼((i,j),(k,l)) = A(i,k)·A(j,l)` in [`pair_order`].
pub fn tensor_square(m: &SpinModel) -> SpinModel {
    pair_product(m, false)
}

/// `A^×((i,j),(k,l)) = A(i,l)·A(j,k)` in [`pair_order`].
pub fn skew_tensor_square(m: &SpinModel) -> SpinModel {
    pair_product(m, true)
}

/// `A·diag(ν)·A` with the weights kept; `A²` for unit weights. This is the
/// model seen by the original vertices of a subdivided graph.
pub fn square(m: &SpinModel) -> SpinModel {
    let q = m.q();
    let mut a = Vec::with_capacity(q * q);
    for i in 0..q {
        for j in 0..q {
            let mut s = m.a(0, 0).zero_like();
            for k in 0..q {
                s = &s + &(&(m.a(i, k) * m.nu(k)) * m.a(k, j));
            }
            a.push(s);
        }
    }
    SpinModel::new(q, a, m.weights().to_vec()).expect("square of a symmetric matrix")
}

/// `H^G` for a 0/1 matrix `h`: states are all maps `f: V(G) → [q]`, with
/// `f(x)` the base-`q` digit `x` of the state index, and `f ~ f'` iff
/// `h(f(x), f'(y)) = 1` for every ordered adjacent pair `(x, y)` of `G`.
pub fn exponentiation(h: &SpinModel, g: &Graph, cap: usize) -> Result<SpinModel> {
    if !h.is_exact() || !h.is_zero_one() {
        return Err(Error::InvalidModel("exponentiation needs a 0/1 matrix".into()));
    }
    let q = h.q();
    let states = (q as u128).checked_pow(g.n() as u32).unwrap_or(u128::MAX);
    if states > cap as u128 {
        return Err(Error::CapExceeded { what: "exponentiation", required: states, cap: cap as u128 });
    }
    let states = states as usize;
    let digits = |mut s: usize| {
        let mut f = vec![0; g.n()];
        for d in f.iter_mut() {
            *d = s % q;
            s /= q;
        }
        f
    };
    let maps: Vec<Vec<usize>> = (0..states).map(digits).collect();
    let adj = |i: usize, j: usize| h.a(i, j).signum() > 0;
    let mut a = Vec::with_capacity(states * states);
    for f in &maps {
        for f2 in &maps {
            let ok = g
                .edges()
                .iter()
                .all(|&(x, y)| adj(f[x], f2[y]) && adj(f[y], f2[x]));
            a.push(Scalar::int(ok as i64));
        }
    }
    SpinModel::from_matrix(states, a)
}

/// `ℓ(H)`: the principal submatrix on the states with a nonzero diagonal.
pub fn loop_restrict(h: &SpinModel) -> Result<SpinModel> {
    let keep: Vec<usize> = (0..h.q()).filter(|&i| h.a(i, i).signum() > 0).collect();
    if keep.is_empty() {
        return Err(Error::InvalidModel("no state carries a loop".into()));
    }
    let a = keep
        .iter()
        .flat_map(|&i| keep.iter().map(move |&j| h.a(i, j).clone()))
        .collect();
    let nu = keep.iter().map(|&i| h.nu(i).clone()).collect();
    SpinModel::new(keep.len(), a, nu)
}

/// Finds `π` with `b(π(i), π(j)) = a(i, j)` and `b.nu(π(i)) = a.nu(i)`,
/// searching permutations with backtracking (meant for `q <= 8`).
pub fn permutation_equivalent(a: &SpinModel, b: &SpinModel) -> Option<Vec<usize>> {
    if a.q() != b.q() || a.is_exact() != b.is_exact() {
        return None;
    }
    fn extend(a: &SpinModel, b: &SpinModel, perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = perm.len();
        if i == a.q() {
            return true;
        }
        for c in 0..b.q() {
            if used[c] || a.nu(i) != b.nu(c) || a.a(i, i) != b.a(c, c) {
                continue;
            }
            if (0..i).any(|k| a.a(i, k) != b.a(c, perm[k])) {
                continue;
            }
            used[c] = true;
            perm.push(c);
            if extend(a, b, perm, used) {
                return true;
            }
            perm.pop();
            used[c] = false;
        }
        false
    }
    let mut perm = Vec::with_capacity(a.q());
    let mut used = vec![false; b.q()];
    extend(a, b, &mut perm, &mut used).then_some(perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::complete;

    fn ints(m: &SpinModel) -> Vec<i64> {
        m.matrix().iter().map(|x| x.to_f64() as i64).collect()
    }

    #[test]
    fn named_matrices() {
        let ind = NamedModel::ind().build().unwrap();
        assert_eq!(ints(&ind), vec![1, 1, 1, 0]);
        assert!(ind.has_unit_weights());
        let potts = NamedModel::potts(3, Scalar::int(1)).build().unwrap();
        assert_eq!(ints(&potts), vec![2, 1, 1, 1, 2, 1, 1, 1, 2]);
        let ising = NamedModel::ising(0.0, 0.0).build().unwrap();
        assert!(ising.matrix().iter().all(|x| *x == Scalar::float(1.0)));
        assert!(ising.weights().iter().all(|x| *x == Scalar::float(1.0)));
        let wr = NamedModel::Wr.build().unwrap();
        assert_eq!(ints(&wr), vec![1, 1, 0, 1, 1, 1, 0, 1, 1]);
        let field = NamedModel::ising(0.5, 0.2).build().unwrap();
        assert!((field.nu(0).to_f64() - 0.2f64.exp()).abs() < 1e-15);
        assert!((field.a(0, 1).to_f64() - (-0.5f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn named_model_parsing_and_errors() {
        assert_eq!("wr".parse::<NamedModel>().unwrap(), NamedModel::Wr);
        assert_eq!(
            "ising:0.5:0.2".parse::<NamedModel>().unwrap(),
            NamedModel::ising(0.5, 0.2)
        );
        assert!("potts:1.5:1".parse::<NamedModel>().unwrap().build().is_err());
        assert!("potts:3:-1".parse::<NamedModel>().unwrap().build().is_err());
        assert!("glauber".parse::<NamedModel>().is_err());
        let hc: NamedModel = "ind:1/2".parse().unwrap();
        assert_eq!(hc.build().unwrap().nu(1), &Scalar::ratio(1, 2));
    }

    #[test]
    fn validation() {
        let asym = SpinModel::from_int_rows(&[&[1, 2], &[1, 1]]);
        assert!(asym.is_err());
        let neg = SpinModel::from_int_rows(&[&[1, -1], &[-1, 1]]);
        assert!(neg.is_err());
        let mixed = SpinModel::new(1, vec![Scalar::int(1)], vec![Scalar::float(1.0)]);
        assert!(mixed.is_err());
        let zero_w = SpinModel::new(1, vec![Scalar::int(1)], vec![Scalar::int(0)]);
        assert!(zero_w.is_err());
    }

    #[test]
    fn json_models() {
        let m = SpinModel::from_json(r#"{"q":2,"A":[["1","0.5"],[0.5,0]],"nu":["1","1/3"]}"#).unwrap();
        assert!(m.is_exact());
        assert_eq!(m.a(0, 1), &Scalar::ratio(1, 2));
        assert_eq!(m.nu(1), &Scalar::ratio(1, 3));
        assert_eq!(SpinModel::from_json(&m.to_json()).unwrap(), m);
        let f = SpinModel::from_json(r#"{"q":1,"A":[[2]],"float":true}"#).unwrap();
        assert!(!f.is_exact());
        assert!(SpinModel::from_json(r#"{"q":2,"A":[[1]]}"#).is_err());
    }

    #[test]
    fn blow_up_blocks() {
        let ind = NamedModel::ind().build().unwrap();
        assert_eq!(blow_up(&ind).unwrap(), ind);
        let weighted = ind.with_weights(vec![Scalar::int(1), Scalar::int(2)]).unwrap();
        let b = blow_up(&weighted).unwrap();
        assert_eq!(ints(&b), vec![1, 1, 1, 1, 0, 0, 1, 0, 0]);
        let frac = ind.with_weights(vec![Scalar::int(1), Scalar::ratio(1, 2)]).unwrap();
        assert!(blow_up(&frac).is_err());
    }

    #[test]
    fn pair_matrices_entries() {
        let ind = NamedModel::ind().build().unwrap();
        // pair order for q = 2: (0,0), (1,1), (0,1), (1,0)
        assert_eq!(pair_order(2), vec![(0, 0), (1, 1), (0, 1), (1, 0)]);
        let eq = tensor_square(&ind);
        let cross = skew_tensor_square(&ind);
        assert_eq!(eq.a(2, 2), &Scalar::int(0));
        assert_eq!(cross.a(2, 2), &Scalar::int(1));
        assert_eq!(ints(&square(&ind)), vec![2, 1, 1, 1]);
        assert_eq!(pair_order(3).len(), 9);
        assert_eq!(pair_order(3)[3..6], [(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn exponentiation_and_loops() {
        let ind = NamedModel::ind().build().unwrap();
        let wr = NamedModel::Wr.build().unwrap();
        let e = exponentiation(&ind, &complete(2), DEFAULT_EXPONENT_CAP).unwrap();
        assert_eq!(e.q(), 4);
        let l = loop_restrict(&e).unwrap();
        assert!(permutation_equivalent(&l, &wr).is_some());
        let single = exponentiation(&wr, &Graph::empty(1), DEFAULT_EXPONENT_CAP).unwrap();
        assert!(single.matrix().iter().all(|x| *x == Scalar::int(1)));
        assert_eq!(loop_restrict(&ind).unwrap().matrix(), &[Scalar::int(1)]);
        assert!(exponentiation(&wr, &complete(9), DEFAULT_EXPONENT_CAP).is_err());
    }

    #[test]
    fn permutation_equivalence_respects_structure() {
        let wr = NamedModel::Wr.build().unwrap();
        let ind = NamedModel::ind().build().unwrap();
        let k3 = SpinModel::from_int_rows(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]).unwrap();
        assert!(permutation_equivalent(&wr, &k3).is_none());
        assert!(permutation_equivalent(&wr, &ind).is_none());
        let shuffled = SpinModel::from_int_rows(&[&[1, 1, 1], &[1, 1, 0], &[1, 0, 1]]).unwrap();
        let p = permutation_equivalent(&wr, &shuffled).unwrap();
        assert_eq!(p[1], 0);
    }
}
