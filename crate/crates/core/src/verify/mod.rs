//! Certification harness: catalogs of small graphs, exhaustive or sampled
//! 2-lift scans for each extremal inequality, exact identity checks, and
//! machine-readable reports.
//!
//! Every suite returns [`ScanReport`]s. A report with status
//! [`Status::Fail`] is a counterexample to a proven inequality, so
//! [`run_all`] reports failure if any appears. Checks that would exceed a
//! size cap are reported as [`Status::Skipped`] rather than silently dropped.

use rayon::prelude::*;
use serde::Serialize;

use crate::classes::{classify, Verdict};
use crate::error::{Error, Result};
use crate::graph::random::{random_multigraph, random_signing};
use crate::graph::{add_loops, subdivision, tensor_product, times_k2, Graph};
use crate::models::{
    blow_up, exponentiation, loop_restrict, permutation_equivalent, square, tensor, NamedModel, SpinModel,
};
use crate::partition::{
    coloring_lower_bound, evaluation_cost, fkg_check, hom, partition_value, random_cluster_with, Caps, RCParams,
};
use crate::rng::SeededRng;
use crate::scalar::Scalar;

mod catalog;
mod lifts;
mod report;

pub use catalog::{named_graph, Catalog, CatalogEntry};
pub use lifts::{verify_counts, verify_klift_potts, verify_tutte_lifts, verify_two_lift_extremal, Claim, ScanSettings};
pub use report::{compare_ge, Comparison, MasterReport, ScanReport, Status, SuiteReport, Violation, FLOAT_SLACK};

/// The suites `run_all` knows about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Lifts,
    Counts,
    Tutte,
    Klift,
    Identities,
    Coloring,
    Fkg,
    Girth,
    Explore,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Lifts,
        Suite::Counts,
        Suite::Tutte,
        Suite::Klift,
        Suite::Identities,
        Suite::Coloring,
        Suite::Fkg,
        Suite::Girth,
        Suite::Explore,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lifts => "lifts",
            Suite::Counts => "counts",
            Suite::Tutte => "tutte",
            Suite::Klift => "klift",
            Suite::Identities => "identities",
            Suite::Coloring => "coloring",
            Suite::Fkg => "fkg",
            Suite::Girth => "girth",
            Suite::Explore => "explore",
        }
    }

    /// A suite name, or `all`.
    pub fn parse_list(name: &str) -> Result<Vec<Suite>> {
        if name == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        Suite::ALL
            .iter()
            .find(|s| s.name() == name)
            .map(|s| vec![*s])
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {name:?}")))
    }
}

/// Knobs for [`run_all`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyConfig {
    pub catalog: Catalog,
    pub scan: ScanSettings,
    /// Largest `lifts × q^{2v}` (or `lifts × 2^{2m}` for random-cluster
    /// scans) a lift scan may cost before it is skipped.
    pub work_cap: u128,
    /// Largest `q^v` on either side of an identity.
    pub identity_cap: u128,
    pub coloring_max_vertices: usize,
    pub fkg_graphs: usize,
    pub girth_graphs: usize,
    pub girth_lifts_per_graph: usize,
    pub klift_k: usize,
    pub klift_samples: u64,
    pub explore_models: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            catalog: Catalog::standard(),
            scan: ScanSettings::default(),
            work_cap: 1 << 36,
            identity_cap: 1 << 20,
            coloring_max_vertices: 8,
            fkg_graphs: 50,
            girth_graphs: 10,
            girth_lifts_per_graph: 100,
            klift_k: 3,
            klift_samples: 50,
            explore_models: 12,
        }
    }
}

impl VerifyConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.scan.seed = seed;
        self
    }
}

fn lift_count(g: &Graph, s: &ScanSettings) -> u128 {
    if g.m() < 64 && (1u64 << g.m()) <= s.exhaustive_cap {
        1u128 << g.m()
    } else {
        s.samples as u128
    }
}

fn skip_on_cap(suite: &str, graph: &str, model: &str, claim: &str, r: Result<ScanReport>) -> ScanReport {
    match r {
        Ok(r) => r,
        Err(e) => error_report(suite, graph, model, claim, e),
    }
}

fn is_cap(e: &Error) -> bool {
    match e {
        Error::CapExceeded { .. } => true,
        Error::LiftFailed { source, .. } => is_cap(source),
        _ => false,
    }
}

fn error_report(suite: &str, graph: &str, model: &str, claim: &str, e: Error) -> ScanReport {
    let mut r = ScanReport::skipped(suite, graph, model, claim, e.to_string());
    if !is_cap(&e) {
        r.status = Status::Fail;
    }
    r
}

/// A model scanned by the lifts suite.
#[derive(Clone, Debug)]
pub struct LiftModel {
    pub id: String,
    pub model: SpinModel,
    /// Potts models have `G ∪ G` maximal by the random-cluster argument,
    /// whatever the classifier says.
    pub potts: bool,
}

pub fn lift_models() -> Vec<LiftModel> {
    let ising = |b: f64, f: f64| NamedModel::ising(b, f).build().expect("finite");
    let plain = |id: &str, model: SpinModel| LiftModel { id: id.into(), model, potts: false };
    vec![
        plain("wr", NamedModel::Wr.build().expect("wr")),
        plain("ind", NamedModel::ind().build().expect("ind")),
        plain("ising(0.5,0.2)", ising(0.5, 0.2)),
        plain("ising(-0.5,0)", ising(-0.5, 0.0)),
        LiftModel { id: "potts(3,1)".into(), model: NamedModel::potts(3, Scalar::int(1)).build().expect("potts"), potts: true },
    ]
}

/// Classifies each model and scans every claim its certificate makes.
/// Potts models are scanned for `UnionMax` even when unclassified; any other
/// `Unknown` verdict makes no claim and is reported as informational.
pub fn lifts_suite(cfg: &VerifyConfig) -> Vec<ScanReport> {
    let mut out = Vec::new();
    for LiftModel { id, model: m, potts } in lift_models() {
        let verdict = classify(&m).verdict;
        let claims: &[Claim] = match verdict {
            Verdict::ClassA => &[Claim::UnionMax],
            Verdict::ClassB => &[Claim::CrossMax],
            Verdict::Both => &[Claim::UnionMax, Claim::CrossMax],
            Verdict::Unknown if potts => &[Claim::UnionMax],
            Verdict::Unknown => &[],
        };
        if claims.is_empty() {
            let mut r = ScanReport::skipped("lifts", "-", &id, "-", "no certificate; nothing claimed".into());
            r.status = Status::Info;
            out.push(r);
            continue;
        }
        for e in cfg.catalog.iter() {
            for &claim in claims {
                let work = lift_count(&e.graph, &cfg.scan).saturating_mul(evaluation_cost(&times_k2(&e.graph), m.q()));
                if work > cfg.work_cap {
                    out.push(ScanReport::skipped("lifts", &e.id, &id, claim.as_str(), format!("estimated work {work} over cap")));
                    continue;
                }
                let r = verify_two_lift_extremal(&e.graph, &e.id, &m, &id, claim, &cfg.scan);
                out.push(skip_on_cap("lifts", &e.id, &id, claim.as_str(), r));
            }
        }
    }
    out
}

pub fn counts_suite(cfg: &VerifyConfig) -> Vec<ScanReport> {
    let mut out = Vec::new();
    for e in cfg.catalog.iter() {
        let work = lift_count(&e.graph, &cfg.scan).saturating_mul(1u128 << (2 * e.graph.n()).min(100));
        if work > cfg.work_cap {
            out.push(ScanReport::skipped("counts", &e.id, "i_k,m_k", "CrossMax", format!("estimated work {work} over cap")));
            continue;
        }
        match verify_counts(&e.graph, &e.id, &cfg.scan) {
            Ok(rs) => out.extend(rs),
            Err(err) => out.push(error_report("counts", &e.id, "i_k,m_k", "CrossMax", err)),
        }
    }
    out
}

/// `{1, 3/2, 2, 3} × {0, 1/2, 1, 2}`.
pub fn default_tutte_grid() -> Vec<RCParams> {
    let qs = [Scalar::int(1), Scalar::ratio(3, 2), Scalar::int(2), Scalar::int(3)];
    let ws = [Scalar::int(0), Scalar::ratio(1, 2), Scalar::int(1), Scalar::int(2)];
    qs.iter()
        .flat_map(|q| ws.iter().map(move |w| RCParams::new(q.clone(), w.clone()).expect("valid grid")))
        .collect()
}

pub fn tutte_suite(cfg: &VerifyConfig) -> Vec<ScanReport> {
    let grid = default_tutte_grid();
    let mut out = Vec::new();
    for e in cfg.catalog.iter() {
        let work = lift_count(&e.graph, &cfg.scan).saturating_mul(1u128 << (2 * e.graph.m()).min(100));
        if work > cfg.work_cap {
            out.push(ScanReport::skipped("tutte", &e.id, "rc", "UnionMax", format!("estimated work {work} over cap")));
            continue;
        }
        match verify_tutte_lifts(&e.graph, &e.id, &grid, &cfg.scan) {
            Ok(rs) => out.extend(rs),
            Err(err) => out.push(error_report("tutte", &e.id, "rc", "UnionMax", err)),
        }
        out.extend(potts_agreement(&e.id, &e.graph, &cfg.scan.caps, cfg.identity_cap));
    }
    out
}

/// `Z(G, q, w) = Z(G, A_q(w))` for integer `q`.
fn potts_agreement(id: &str, g: &Graph, caps: &Caps, identity_cap: u128) -> Vec<ScanReport> {
    let mut out = Vec::new();
    for q in [1i64, 2, 3] {
        for w in [Scalar::int(0), Scalar::ratio(1, 2), Scalar::int(1), Scalar::int(2)] {
            let model = format!("potts({q},{w})");
            if evaluation_cost(g, q as usize) > identity_cap {
                out.push(ScanReport::skipped("tutte", id, &model, "RCEqualsPotts", "over identity cap".into()));
                continue;
            }
            let p = RCParams::new(Scalar::int(q), w.clone()).expect("valid");
            let lhs = random_cluster_with(g, &p, caps, true);
            let rhs = NamedModel::potts(q, w).build().and_then(|m| partition_value(g, &m, caps));
            out.push(identity_report("tutte", id, &model, "RCEqualsPotts", lhs, rhs));
        }
    }
    out
}

pub fn klift_suite(cfg: &VerifyConfig) -> Vec<ScanReport> {
    let p = RCParams::new(Scalar::int(2), Scalar::int(1)).expect("valid");
    cfg.catalog
        .iter()
        .filter(|e| e.graph.m() * cfg.klift_k <= 24)
        .map(|e| {
            let r = verify_klift_potts(&e.graph, &e.id, cfg.klift_k, &p, cfg.klift_samples, cfg.scan.seed, &cfg.scan.caps);
            skip_on_cap("klift", &e.id, "rc(q=2,w=1)", "BasePower", r)
        })
        .collect()
}

fn identity_report(suite: &str, graph: &str, model: &str, name: &str, lhs: Result<Scalar>, rhs: Result<Scalar>) -> ScanReport {
    let (lhs, rhs) = match (lhs, rhs) {
        (Ok(l), Ok(r)) => (l, r),
        (Err(e), _) | (_, Err(e)) => return error_report(suite, graph, model, name, e),
    };
    let holds = lhs == rhs;
    let margin = if lhs.is_exact() == rhs.is_exact() { (&lhs - &rhs).to_string() } else { String::new() };
    ScanReport {
        suite: suite.into(),
        graph: graph.into(),
        model: model.into(),
        claim: name.into(),
        scanned: 1,
        exhaustive: true,
        claimed_value: lhs.to_string(),
        max_other: rhs.to_string(),
        margin,
        violations: if holds {
            vec![]
        } else {
            vec![Violation { index: 0, detail: format!("{lhs} != {rhs}"), value: lhs.to_string() }]
        },
        status: if holds { Status::Pass } else { Status::Fail },
        note: None,
    }
}

fn exact_hom(g: &Graph, h: &SpinModel, caps: &Caps) -> Result<Scalar> {
    partition_value(g, h, caps)
}

/// The algebraic identities: tensor multiplicativity, exponentiation,
/// loop restriction, subdivision and blow-up, plus `ℓ(A_ind^{K₂}) ≅ A_WR`.
pub fn identity_suite(cfg: &VerifyConfig) -> Vec<ScanReport> {
    let caps = Caps { assignments: cfg.identity_cap, ..cfg.scan.caps };
    let ind = NamedModel::ind().build().expect("ind");
    let wr = NamedModel::Wr.build().expect("wr");
    let ind2 = ind.with_weights(vec![Scalar::int(1), Scalar::int(2)]).expect("weights");
    let wr_w = wr.with_weights(vec![Scalar::int(2), Scalar::int(1), Scalar::int(3)]).expect("weights");
    let potts2 = NamedModel::potts(2, Scalar::int(1)).build().expect("potts");
    let k3 = SpinModel::adjacency(&crate::graph::named::complete(3));
    let fits = |g: &Graph, q: usize| evaluation_cost(g, q) <= cfg.identity_cap;
    let mut out = Vec::new();
    let mut push = |graph: &str, model: &str, name: &str, ok: bool, l: &dyn Fn() -> Result<Scalar>, r: &dyn Fn() -> Result<Scalar>| {
        if ok {
            out.push(identity_report("identities", graph, model, name, l(), r()));
        } else {
            out.push(ScanReport::skipped("identities", graph, model, name, "over identity cap".into()));
        }
    };
    for e in cfg.catalog.iter() {
        let g = &e.graph;
        for (mid, a, b) in [("ind⊗wr", &ind, &wr), ("ind(1,2)⊗potts(2,1)", &ind2, &potts2)] {
            let t = tensor(a, b).expect("tensor");
            push(&e.id, mid, "TensorMultiplicative", fits(g, t.q()), &|| partition_value(g, &t, &caps), &|| {
                Ok(&partition_value(g, a, &caps)? * &partition_value(g, b, &caps)?)
            });
        }
        for (hid, h) in [("ind", &ind), ("K3", &k3)] {
            for (pid, gp) in [("K2", crate::graph::named::complete(2)), ("P3", crate::graph::named::path(3))] {
                let prod = tensor_product(g, &gp);
                let ok = fits(&prod, h.q()) && fits(g, h.q().pow(gp.n() as u32));
                let model = format!("{hid}^{pid}");
                push(&e.id, &model, "ExponentialHom", ok, &|| exact_hom(&prod, h, &caps), &|| {
                    let hg = exponentiation(h, &gp, 1 << 12)?;
                    exact_hom(g, &hg, &caps)
                });
            }
        }
        for (hid, h) in [("ind", &ind), ("wr", &wr), ("K3", &k3)] {
            let looped = add_loops(g);
            push(&e.id, hid, "LoopRestriction", fits(g, h.q()), &|| exact_hom(&looped, h, &caps), &|| {
                match loop_restrict(h) {
                    Ok(l) => exact_hom(g, &l, &caps),
                    // no looped state: only the empty graph maps anywhere
                    Err(_) => Ok(Scalar::int(if g.n() == 0 { 1 } else { 0 })),
                }
            });
        }
        let sub = subdivision(g);
        for (mid, a) in [("ind", &ind), ("wr", &wr), ("ind(1,2)", &ind2)] {
            push(&e.id, mid, "Subdivision", fits(&sub, a.q()), &|| partition_value(&sub, a, &caps), &|| {
                partition_value(g, &square(a), &caps)
            });
        }
        for (mid, a) in [("ind(1,2)", &ind2), ("wr(2,1,3)", &wr_w)] {
            let q_big = a.weights().iter().map(|w| w.to_f64() as usize).sum();
            push(&e.id, mid, "BlowUp", fits(g, q_big), &|| partition_value(g, a, &caps), &|| {
                partition_value(g, &blow_up(a)?, &caps)
            });
        }
    }
    let restricted = exponentiation(&ind, &crate::graph::named::complete(2), 1 << 12).and_then(|x| loop_restrict(&x));
    let iso = restricted.as_ref().ok().and_then(|r| permutation_equivalent(r, &wr));
    out.push(ScanReport {
        suite: "identities".into(),
        graph: "K2".into(),
        model: "ind".into(),
        claim: "LoopedSquareIsWr".into(),
        scanned: 1,
        exhaustive: true,
        claimed_value: restricted.map(|r| r.to_json()).unwrap_or_else(|e| e.to_string()),
        max_other: wr.to_json(),
        margin: iso.as_ref().map(|p| format!("{p:?}")).unwrap_or_default(),
        violations: vec![],
        status: if iso.is_some() { Status::Pass } else { Status::Fail },
        note: None,
    });
    out
}

/// `hom(G, K_q) >= q^v ((q−1)/q)^e` on the bipartite catalog graphs.
pub fn coloring_suite(cfg: &VerifyConfig) -> Vec<ScanReport> {
    let mut out = Vec::new();
    for e in cfg.catalog.bipartite().iter().filter(|e| e.graph.n() <= cfg.coloring_max_vertices) {
        for q in [2u64, 3, 4] {
            let bound = coloring_lower_bound(&e.graph, q);
            let value = hom(&e.graph, &crate::graph::named::complete(q as usize), &cfg.scan.caps)
                .map(|h| Scalar::Exact(num_rational::BigRational::from_integer(h.into())));
            let model = format!("K{q}");
            let r = match value {
                Err(err) => error_report("coloring", &e.id, &model, "ColoringBound", err),
                Ok(v) => {
                    let holds = v >= bound;
                    ScanReport {
                        suite: "coloring".into(),
                        graph: e.id.clone(),
                        model,
                        claim: "ColoringBound".into(),
                        scanned: 1,
                        exhaustive: true,
                        claimed_value: v.to_string(),
                        max_other: bound.to_string(),
                        margin: (&v - &bound).to_string(),
                        violations: if holds {
                            vec![]
                        } else {
                            vec![Violation { index: q, detail: "hom below bound".into(), value: v.to_string() }]
                        },
                        status: if holds { Status::Pass } else { Status::Fail },
                        note: None,
                    }
                }
            };
            out.push(r);
        }
    }
    out
}

/// Seeded multigraphs for the correlation suite: `2..=6` vertices and
/// `2..=8` edges, loops and parallel edges allowed.
pub fn fkg_graphs(count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = SeededRng::new(seed);
    (0..count)
        .map(|_| {
            let n = 2 + rng.below(5) as usize;
            let m = 2 + rng.below(7) as usize;
            random_multigraph(n, m, rng.next_u64())
        })
        .collect()
}

/// The positive-correlation inequality on every edge pair of seeded random
/// multigraphs, for `(q, w) ∈ {1,2,3} × {1/2, 1, 2}`, exactly.
pub fn fkg_suite(cfg: &VerifyConfig) -> Vec<ScanReport> {
    let graphs = fkg_graphs(cfg.fkg_graphs, cfg.scan.seed);
    let params: Vec<RCParams> = [1, 2, 3]
        .iter()
        .flat_map(|&q| {
            [Scalar::ratio(1, 2), Scalar::int(1), Scalar::int(2)]
                .into_iter()
                .map(move |w| RCParams::new(Scalar::int(q), w).expect("valid"))
        })
        .collect();
    let jobs: Vec<(usize, &Graph, &RCParams)> =
        graphs.iter().enumerate().flat_map(|(i, g)| params.iter().map(move |p| (i, g, p))).collect();
    jobs.par_iter()
        .map(|&(i, g, p)| {
            let id = format!("fkg{i}:n{}m{}", g.n(), g.m());
            let model = format!("rc(q={},w={})", p.q, p.w);
            let mut violations = Vec::new();
            let mut min_margin: Option<Scalar> = None;
            let mut pairs = 0u64;
            for e in 0..g.m() {
                for f in e + 1..g.m() {
                    let r = match fkg_check(g, p, e, f) {
                        Ok(r) => r,
                        Err(err) => return error_report("fkg", &id, &model, "PosCor", err),
                    };
                    pairs += 1;
                    let margin = &r.lhs - &r.rhs;
                    if !r.minors_hold {
                        violations.push(Violation { index: pairs - 1, detail: format!("edges {e},{f}"), value: margin.to_string() });
                    }
                    if min_margin.as_ref().is_none_or(|m| margin < *m) {
                        min_margin = Some(margin);
                    }
                }
            }
            ScanReport {
                suite: "fkg".into(),
                graph: id,
                model,
                claim: "PosCor".into(),
                scanned: pairs,
                exhaustive: true,
                claimed_value: String::new(),
                max_other: String::new(),
                margin: min_margin.map(|m| m.to_string()).unwrap_or_else(|| "0".into()),
                status: if violations.is_empty() { Status::Pass } else { Status::Fail },
                violations,
                note: Some(g.to_json()),
            }
        })
        .collect()
}

/// `girth(H) >= girth(G)` on seeded random 2-lifts of the first catalog
/// graphs.
pub fn girth_suite(cfg: &VerifyConfig) -> Vec<ScanReport> {
    cfg.catalog
        .iter()
        .take(cfg.girth_graphs)
        .enumerate()
        .map(|(gi, e)| {
            let mut rng = SeededRng::new(cfg.scan.seed.wrapping_add(gi as u64));
            let base = e.graph.girth();
            let mut violations = Vec::new();
            let mut min_lift: Option<usize> = None;
            for i in 0..cfg.girth_lifts_per_graph {
                let s = random_signing(&e.graph, &mut rng);
                let g = s.lift().girth();
                // None is infinite girth
                let ok = match (base, g) {
                    (_, None) => true,
                    (None, Some(_)) => false,
                    (Some(b), Some(h)) => h >= b,
                };
                if !ok {
                    violations.push(Violation {
                        index: i as u64,
                        detail: s.signs().iter().map(|&x| if x > 0 { '+' } else { '-' }).collect(),
                        value: format!("{g:?}"),
                    });
                }
                if let Some(h) = g {
                    min_lift = Some(min_lift.map_or(h, |m| m.min(h)));
                }
            }
            let show = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_else(|| "inf".into());
            ScanReport {
                suite: "girth".into(),
                graph: e.id.clone(),
                model: "-".into(),
                claim: "GirthMonotone".into(),
                scanned: cfg.girth_lifts_per_graph as u64,
                exhaustive: false,
                claimed_value: show(min_lift),
                max_other: show(base),
                margin: match (min_lift, base) {
                    (Some(h), Some(b)) => (h as i64 - b as i64).to_string(),
                    _ => "inf".into(),
                },
                status: if violations.is_empty() { Status::Pass } else { Status::Fail },
                violations,
                note: None,
            }
        })
        .collect()
}

/// Random symmetric model with entries in `0..=3` and at least one positive
/// entry per row, plus positive integer weights.
pub fn random_model(rng: &mut SeededRng, q: usize) -> SpinModel {
    loop {
        let mut a = vec![0i64; q * q];
        for i in 0..q {
            for j in i..q {
                let v = rng.below(4) as i64;
                a[i * q + j] = v;
                a[j * q + i] = v;
            }
        }
        if (0..q).any(|i| (0..q).all(|j| a[i * q + j] == 0)) {
            continue;
        }
        let nu = (0..q).map(|_| Scalar::int(1 + rng.below(3) as i64)).collect();
        let a = a.into_iter().map(Scalar::int).collect();
        return SpinModel::new(q, a, nu).expect("symmetric nonnegative");
    }
}

/// Exploratory search on the open question whether `G ∪ G` maximizes over
/// the 2-lifts of every bipartite `G` for every model. Findings are
/// informational and never fail the run.
pub fn explore_suite(cfg: &VerifyConfig) -> Vec<ScanReport> {
    let bases: Vec<(String, Graph)> = ["C4", "C6", "K2,3", "P4", "K3,3"]
        .iter()
        .map(|id| (id.to_string(), named_graph(id).expect("known id")))
        .collect();
    let mut rng = SeededRng::new(cfg.scan.seed ^ 0x5eed);
    let mut out = Vec::new();
    for k in 0..cfg.explore_models {
        let q = 2 + (k % 2);
        let m = random_model(&mut rng, q);
        let id = format!("random{k}:{}", m.to_json());
        for (gid, g) in &bases {
            let r = verify_two_lift_extremal(g, gid, &m, &id, Claim::UnionMax, &cfg.scan);
            let mut r = skip_on_cap("explore", gid, &id, "UnionMax", r);
            r.suite = "explore".into();
            if r.status != Status::Skipped {
                r.note = Some(if r.violations.is_empty() {
                    "no counterexample among the scanned lifts".into()
                } else {
                    "counterexample to UnionMax on a bipartite base".into()
                });
                r.status = Status::Info;
            }
            out.push(r);
        }
    }
    out
}

/// Runs the requested suites and collects a master report.
pub fn run_all(cfg: &VerifyConfig, suites: &[Suite]) -> MasterReport {
    let reports = suites
        .iter()
        .map(|&s| {
            let rs = match s {
                Suite::Lifts => lifts_suite(cfg),
                Suite::Counts => counts_suite(cfg),
                Suite::Tutte => tutte_suite(cfg),
                Suite::Klift => klift_suite(cfg),
                Suite::Identities => identity_suite(cfg),
                Suite::Coloring => coloring_suite(cfg),
                Suite::Fkg => fkg_suite(cfg),
                Suite::Girth => girth_suite(cfg),
                Suite::Explore => explore_suite(cfg),
            };
            SuiteReport::new(s.name(), rs)
        })
        .collect();
    MasterReport::new(cfg.scan.seed, reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> VerifyConfig {
        VerifyConfig {
            catalog: Catalog::from_ids(["K3", "C4", "C5", "P4"]).unwrap(),
            fkg_graphs: 5,
            girth_lifts_per_graph: 20,
            klift_samples: 5,
            explore_models: 2,
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn every_suite_passes_on_a_tiny_catalog() {
        let report = run_all(&tiny(), &Suite::ALL);
        assert!(report.passed, "{}", report.summary());
        assert_eq!(report.suites.len(), Suite::ALL.len());
        for s in &report.suites {
            assert!(s.checks > 0, "suite {} ran nothing", s.name);
        }
        let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(json["passed"], true);
        assert!(report.to_csv().starts_with(ScanReport::CSV_HEADER));
    }

    #[test]
    fn unclassified_potts_is_still_scanned() {
        let reports = lifts_suite(&tiny());
        let potts: Vec<_> = reports.iter().filter(|r| r.model == "potts(3,1)").collect();
        assert_eq!(potts.len(), 4);
        assert!(potts.iter().all(|r| r.claim == "UnionMax" && r.status == Status::Pass));
    }

    #[test]
    fn suite_names() {
        assert_eq!(Suite::parse_list("all").unwrap().len(), 9);
        assert_eq!(Suite::parse_list("tutte").unwrap(), vec![Suite::Tutte]);
        assert!(Suite::parse_list("nope").is_err());
    }

    #[test]
    fn identity_suite_is_exact() {
        let cfg = VerifyConfig { catalog: Catalog::from_ids(["K3", "C4", "P3", "K2,3"]).unwrap(), ..VerifyConfig::default() };
        let reports = identity_suite(&cfg);
        assert!(reports.iter().all(|r| matches!(r.status, Status::Pass | Status::Skipped)), "{reports:#?}");
        assert!(reports.iter().filter(|r| r.status == Status::Pass).count() > 40);
        for name in ["TensorMultiplicative", "ExponentialHom", "LoopRestriction", "Subdivision", "BlowUp", "LoopedSquareIsWr"] {
            assert!(reports.iter().any(|r| r.claim == name), "{name} missing");
        }
    }
}
