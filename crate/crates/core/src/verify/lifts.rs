use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::random::{random_permutations, random_signing};
use crate::graph::{k_lift, times_k2, Graph, Signing};
use crate::models::SpinModel;
use crate::partition::{
    evaluation_cost, independent_set_counts, matching_counts, partition_value, random_cluster_with, Caps,
    CountVector, RCParams,
};
use crate::rng::SeededRng;
use crate::scalar::Scalar;

use super::report::{compare_ge, difference, Comparison, ScanReport, Status, Violation};

/// Violations kept per report; the count is still exact.
const MAX_RECORDED: usize = 1000;
const CHUNK: usize = 256;

/// How lift scans choose their lifts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ScanSettings {
    /// Scan every signing when `2^m` is at most this.
    pub exhaustive_cap: u64,
    /// Number of seeded uniform signings otherwise.
    pub samples: u64,
    pub seed: u64,
    pub caps: Caps,
}

impl Default for ScanSettings {
    fn default() -> Self {
        ScanSettings { exhaustive_cap: 1 << 20, samples: 4096, seed: 0, caps: Caps::default() }
    }
}

/// Which lift is claimed to maximize.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Claim {
    /// `G ∪ G`, the all-`+1` signing.
    UnionMax,
    /// `G × K₂`, the all-`−1` signing.
    CrossMax,
}

impl Claim {
    pub fn signs(self, g: &Graph) -> Vec<i8> {
        match self {
            Claim::UnionMax => vec![1; g.m()],
            Claim::CrossMax => vec![-1; g.m()],
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Claim::UnionMax => "UnionMax",
            Claim::CrossMax => "CrossMax",
        }
    }
}

fn signs_label(signs: &[i8]) -> String {
    signs.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect()
}

fn index_of(signs: &[i8]) -> u64 {
    if signs.len() >= 64 {
        return u64::MAX;
    }
    signs.iter().fold(0u64, |acc, &s| (acc << 1) | u64::from(s == -1))
}

/// The signings a scan visits: all of them, or a seeded sample.
enum LiftSet {
    Exhaustive(u64),
    Sampled(Vec<Vec<i8>>),
}

impl LiftSet {
    fn new(g: &Graph, s: &ScanSettings) -> LiftSet {
        let m = g.m();
        if m < 64 && (1u64 << m) <= s.exhaustive_cap {
            return LiftSet::Exhaustive(1u64 << m);
        }
        let mut rng = SeededRng::new(s.seed);
        let sample = (0..s.samples).map(|_| random_signing(g, &mut rng).signs().to_vec()).collect();
        LiftSet::Sampled(sample)
    }

    fn len(&self) -> u64 {
        match self {
            LiftSet::Exhaustive(n) => *n,
            LiftSet::Sampled(v) => v.len() as u64,
        }
    }

    fn is_exhaustive(&self) -> bool {
        matches!(self, LiftSet::Exhaustive(_))
    }

    fn signs(&self, g: &Graph, k: u64) -> Vec<i8> {
        match self {
            LiftSet::Exhaustive(_) => Signing::from_index(g, k).signs().to_vec(),
            LiftSet::Sampled(v) => v[k as usize].clone(),
        }
    }
}

/// Visits every lift in the set, in parallel chunks, and merges the
/// per-chunk accumulators in signing order.
fn drive<T, I, V, M>(g: &Graph, set: &LiftSet, init: I, visit: V, merge: M) -> Result<T>
where
    T: Send,
    I: Fn() -> T + Sync,
    V: Fn(&mut T, &[i8], &Graph) -> Result<()> + Sync,
    M: Fn(&mut T, T),
{
    let total = set.len();
    let chunks = total.div_ceil(CHUNK as u64);
    let parts: Vec<Result<T>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = init();
            let end = ((c + 1) * CHUNK as u64).min(total);
            for k in c * CHUNK as u64..end {
                let signs = set.signs(g, k);
                let lift = Signing::new(g, signs.clone()).expect("valid signing").lift();
                visit(&mut acc, &signs, &lift).map_err(|e| Error::LiftFailed {
                    index: index_of(&signs),
                    signs: signs.clone(),
                    source: Box::new(e),
                })?;
            }
            Ok(acc)
        })
        .collect();
    let mut out = init();
    for p in parts {
        merge(&mut out, p?);
    }
    Ok(out)
}

fn greater(a: &Scalar, b: &Scalar) -> bool {
    if a.is_exact() && b.is_exact() {
        a > b
    } else {
        a.to_f64() > b.to_f64()
    }
}

/// Running maximum and violations against a fixed claimed value.
#[derive(Default)]
struct Tally {
    max_other: Option<Scalar>,
    violations: Vec<Violation>,
    violation_count: usize,
    marginal: bool,
}

impl Tally {
    fn observe(&mut self, claimed: &Scalar, z: Scalar, locate: impl FnOnce() -> (u64, String)) {
        match compare_ge(claimed, &z) {
            Comparison::Holds => {}
            Comparison::WithinSlack => self.marginal = true,
            Comparison::Violated => {
                self.violation_count += 1;
                if self.violations.len() < MAX_RECORDED {
                    let (index, detail) = locate();
                    self.violations.push(Violation { index, detail, value: z.to_string() });
                }
            }
        }
        if self.max_other.as_ref().is_none_or(|m| greater(&z, m)) {
            self.max_other = Some(z);
        }
    }

    fn merge(&mut self, other: Tally) {
        if let Some(z) = other.max_other {
            if self.max_other.as_ref().is_none_or(|m| greater(&z, m)) {
                self.max_other = Some(z);
            }
        }
        self.violation_count += other.violation_count;
        let room = MAX_RECORDED - self.violations.len();
        self.violations.extend(other.violations.into_iter().take(room));
        self.marginal |= other.marginal;
    }

    fn into_report(self, head: ReportHead<'_>, claimed: &Scalar, scanned: u64, exhaustive: bool) -> ScanReport {
        let status = if self.violation_count > 0 {
            Status::Fail
        } else if self.marginal {
            Status::Marginal
        } else {
            Status::Pass
        };
        let margin = match &self.max_other {
            Some(m) => difference(claimed, m).to_string(),
            None => "0".into(),
        };
        let note = match (exhaustive, self.violation_count > self.violations.len()) {
            (_, true) => Some(format!("{} violations, first {} recorded", self.violation_count, MAX_RECORDED)),
            (false, false) => Some(format!("sampled {scanned} lifts")),
            (true, false) => None,
        };
        ScanReport {
            suite: head.suite.into(),
            graph: head.graph.into(),
            model: head.model.into(),
            claim: head.claim.into(),
            scanned,
            exhaustive,
            claimed_value: claimed.to_string(),
            max_other: self.max_other.map(|m| m.to_string()).unwrap_or_default(),
            margin,
            violations: self.violations,
            status,
            note,
        }
    }
}

struct ReportHead<'a> {
    suite: &'a str,
    graph: &'a str,
    model: &'a str,
    claim: &'a str,
}

fn scan_scalar<F>(g: &Graph, claim: Claim, settings: &ScanSettings, head: ReportHead<'_>, eval: F) -> Result<ScanReport>
where
    F: Fn(&Graph) -> Result<Scalar> + Sync,
{
    let claimed_signs = claim.signs(g);
    let claimed = eval(&Signing::new(g, claimed_signs.clone())?.lift())?;
    let set = LiftSet::new(g, settings);
    let tally = drive(
        g,
        &set,
        Tally::default,
        |t, signs, lift| {
            if signs != claimed_signs.as_slice() {
                let z = eval(lift)?;
                t.observe(&claimed, z, || (index_of(signs), signs_label(signs)));
            }
            Ok(())
        },
        Tally::merge,
    )?;
    Ok(tally.into_report(head, &claimed, set.len(), set.is_exhaustive()))
}

/// Checks that the claimed lift maximizes `Z(·, A, ν)` over the 2-lifts of
/// `g`: every lift when `2^m` fits the exhaustive cap, a seeded sample
/// otherwise.
pub fn verify_two_lift_extremal(
    g: &Graph,
    graph_id: &str,
    m: &SpinModel,
    model_id: &str,
    claim: Claim,
    settings: &ScanSettings,
) -> Result<ScanReport> {
    let per_lift = evaluation_cost(&times_k2(g), m.q());
    if per_lift > settings.caps.assignments {
        return Err(Error::CapExceeded { what: "partition function", required: per_lift, cap: settings.caps.assignments });
    }
    let head = ReportHead { suite: "lifts", graph: graph_id, model: model_id, claim: claim.as_str() };
    scan_scalar(g, claim, settings, head, |h| partition_value(h, m, &settings.caps))
}

/// `Z(G ∪ G, q, w) >= Z(H, q, w)` for the 2-lifts `H` of `g`, one report per
/// grid point.
pub fn verify_tutte_lifts(
    g: &Graph,
    graph_id: &str,
    grid: &[RCParams],
    settings: &ScanSettings,
) -> Result<Vec<ScanReport>> {
    grid.iter()
        .map(|p| {
            let model = format!("rc(q={},w={})", p.q, p.w);
            let head = ReportHead { suite: "tutte", graph: graph_id, model: &model, claim: "UnionMax" };
            scan_scalar(g, Claim::UnionMax, settings, head, |h| random_cluster_with(h, p, &settings.caps, true))
        })
        .collect()
}

struct CountTally {
    max: Vec<u64>,
    violations: Vec<Vec<Violation>>,
}

impl CountTally {
    fn new(k: usize) -> Self {
        CountTally { max: vec![0; k], violations: vec![vec![]; k] }
    }

    fn observe(&mut self, claimed: &CountVector, signs: &[i8], counts: &CountVector) {
        let width = self.max.len().max(counts.len());
        self.max.resize(width, 0);
        self.violations.resize(width, vec![]);
        for k in 0..width {
            let c = counts.get(k);
            self.max[k] = self.max[k].max(c);
            if c > claimed.get(k) && self.violations[k].len() < MAX_RECORDED {
                self.violations[k].push(Violation { index: index_of(signs), detail: signs_label(signs), value: c.to_string() });
            }
        }
    }

    fn merge(&mut self, other: CountTally) {
        let width = self.max.len().max(other.max.len());
        self.max.resize(width, 0);
        self.violations.resize(width, vec![]);
        for (k, (m, v)) in other.max.into_iter().zip(other.violations).enumerate() {
            self.max[k] = self.max[k].max(m);
            self.violations[k].extend(v);
        }
    }
}

/// Per-size counts: `i_k(H) <= i_k(G × K₂)` and `m_k(H) <= m_k(G × K₂)` for
/// every 2-lift `H` and every `k`. Returns one report per quantity and `k`,
/// independent sets first.
pub fn verify_counts(g: &Graph, graph_id: &str, settings: &ScanSettings) -> Result<Vec<ScanReport>> {
    let cross = Signing::all_minus(g).lift();
    let claimed_sets = independent_set_counts(&cross)?;
    let claimed_matchings = matching_counts(&cross)?;
    let set = LiftSet::new(g, settings);
    let init = || (CountTally::new(claimed_sets.len()), CountTally::new(claimed_matchings.len()));
    let (sets, matchings) = drive(
        g,
        &set,
        init,
        |(a, b), signs, lift| {
            a.observe(&claimed_sets, signs, &independent_set_counts(lift)?);
            b.observe(&claimed_matchings, signs, &matching_counts(lift)?);
            Ok(())
        },
        |(a, b), (x, y)| {
            a.merge(x);
            b.merge(y);
        },
    )?;
    let mut out = Vec::new();
    for (name, claimed, tally) in [("i", &claimed_sets, sets), ("m", &claimed_matchings, matchings)] {
        for (k, (max, violations)) in tally.max.into_iter().zip(tally.violations).enumerate() {
            let c = claimed.get(k);
            out.push(ScanReport {
                suite: "counts".into(),
                graph: graph_id.into(),
                model: format!("{name}_{k}"),
                claim: Claim::CrossMax.as_str().into(),
                scanned: set.len(),
                exhaustive: set.is_exhaustive(),
                claimed_value: c.to_string(),
                max_other: max.to_string(),
                margin: (c as i128 - max as i128).to_string(),
                status: if violations.is_empty() { Status::Pass } else { Status::Fail },
                violations,
                note: None,
            });
        }
    }
    Ok(out)
}

/// `Z(H, q, w) <= Z(G, q, w)^k` on `samples` seeded random `k`-lifts.
pub fn verify_klift_potts(
    g: &Graph,
    graph_id: &str,
    k: usize,
    p: &RCParams,
    samples: u64,
    seed: u64,
    caps: &Caps,
) -> Result<ScanReport> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let base = random_cluster_with(g, p, caps, true)?;
    let bound = base.pow(k as u32);
    let mut rng = SeededRng::new(seed);
    let perms: Vec<Vec<Vec<usize>>> = (0..samples).map(|_| random_permutations(g, k, &mut rng)).collect();
    let values: Vec<Result<Scalar>> = perms
        .par_iter()
        .map(|pm| random_cluster_with(&k_lift(g, pm, k)?, p, caps, true))
        .collect();
    let mut tally = Tally::default();
    for (i, v) in values.into_iter().enumerate() {
        tally.observe(&bound, v?, || (i as u64, format!("sample {i}")));
    }
    let model = format!("rc(q={},w={})", p.q, p.w);
    let claim = format!("BasePower(k={k})");
    let head = ReportHead { suite: "klift", graph: graph_id, model: &model, claim: &claim };
    let mut report = tally.into_report(head, &bound, samples, false);
    report.note = Some(format!("sampled {samples} random {k}-lifts"));
    Ok(report)
}
