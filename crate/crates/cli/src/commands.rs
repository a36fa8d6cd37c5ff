use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Args};
use rayon::prelude::*;
use serde_json::{json, Value};
use twolift_core::bethe::{hardcore_phi, ising_phi, sidorenko_bound, solve_bp, BpConfig};
use twolift_core::classes::{classify, staircase_recognize, StaircaseKind};
use twolift_core::graph::random::random_permutations;
use twolift_core::graph::{girth_boost, k_lift, signing_count, GirthBoostConfig, Signing};
use twolift_core::partition::{
    eval_independence, hom, independent_set_counts, matching_counts, partition_value, random_cluster_with, RCParams,
};
use twolift_core::rng::SeededRng;
use twolift_core::verify::{run_all, Catalog, Suite, VerifyConfig};
use twolift_core::{Graph, NamedModel, Scalar, SpinModel};

use crate::config::Config;
use crate::input::{load_model, read, GraphArg};
use crate::output::{Output, Table};

fn graph_json(g: &Graph) -> Value {
    json!({ "n": g.n(), "edges": g.edges().iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>() })
}

fn signs_text(s: &[i8]) -> String {
    s.iter().map(|&x| if x > 0 { '+' } else { '-' }).collect()
}

fn girth_json(g: Option<usize>) -> Value {
    g.map_or(Value::Null, |x| json!(x))
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("quantity").required(true).args(["model", "rc", "hom"])))]
pub struct ZArgs {
    #[command(flatten)]
    pub graph: GraphArg,
    /// Spin model: JSON file or `ind[:λ]`, `wr`, `ising:β[:B]`, `potts:q:w`.
    #[arg(long)]
    pub model: Option<String>,
    /// Random-cluster value `Z(G, q, w)`; needs `--q` and `--w`.
    #[arg(long, requires_all = ["q", "w"])]
    pub rc: bool,
    #[arg(long)]
    pub q: Option<String>,
    #[arg(long)]
    pub w: Option<String>,
    /// Count homomorphisms into this target graph file.
    #[arg(long)]
    pub hom: Option<String>,
    /// Disable the deletion–contraction memo.
    #[arg(long)]
    pub no_memo: bool,
}

pub fn z(args: &ZArgs, cfg: &Config) -> Result<Output> {
    let (id, g) = args.graph.load()?;
    let (quantity, detail, value) = if let Some(spec) = &args.model {
        let m = load_model(spec)?;
        ("partition_function", json!(spec), partition_value(&g, &m, &cfg.caps)?)
    } else if args.rc {
        let q: Scalar = args.q.as_deref().unwrap_or_default().parse()?;
        let w: Scalar = args.w.as_deref().unwrap_or_default().parse()?;
        let p = RCParams::new(q.clone(), w.clone())?;
        let v = random_cluster_with(&g, &p, &cfg.caps, !args.no_memo)?;
        ("random_cluster", json!({ "q": q, "w": w }), v)
    } else {
        let path = args.hom.as_deref().expect("clap enforces the group");
        let h = Graph::parse_any(&read(path)?).with_context(|| format!("parsing graph {path}"))?;
        let v = hom(&g, &h, &cfg.caps)?;
        ("hom", json!(path), v.to_string().parse::<Scalar>()?)
    };
    Ok(Output {
        json: json!({ "graph": id, "n": g.n(), "m": g.m(), "quantity": quantity, "input": detail, "value": value }),
        text: value.to_string(),
        table: None,
    })
}

#[derive(Args, Debug)]
pub struct CountsArgs {
    #[command(flatten)]
    pub graph: GraphArg,
    /// Also evaluate the independence polynomial `I(G, λ)`.
    #[arg(long)]
    pub lambda: Option<String>,
}

pub fn counts(args: &CountsArgs, _cfg: &Config) -> Result<Output> {
    let (id, g) = args.graph.load()?;
    let ind = independent_set_counts(&g)?;
    let mat = matching_counts(&g)?;
    let poly = match &args.lambda {
        Some(l) => {
            let lambda: Scalar = l.parse()?;
            Some(json!({ "lambda": lambda, "value": eval_independence(&g, &lambda)? }))
        }
        None => None,
    };
    let mut table = Table::new(["k", "i_k", "m_k"]);
    let mut text = String::from("k\ti_k\tm_k\n");
    for k in 0..ind.len().max(mat.len()) {
        table.push(vec![k.to_string(), ind.get(k).to_string(), mat.get(k).to_string()]);
        text.push_str(&format!("{k}\t{}\t{}\n", ind.get(k), mat.get(k)));
    }
    if let Some(p) = &poly {
        text.push_str(&format!("I(G, {}) = {}\n", p["lambda"].as_str().unwrap_or(""), p["value"].as_str().unwrap_or("")));
    }
    Ok(Output {
        json: json!({
            "graph": id,
            "independent_sets": ind.0,
            "matchings": mat.0,
            "independence_polynomial": poly,
        }),
        text,
        table: Some(table),
    })
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("mode").required(true).args(["signs", "index", "cross", "enumerate", "search", "k"])))]
pub struct LiftArgs {
    #[command(flatten)]
    pub graph: GraphArg,
    /// One sign per edge, as `+-+` or `1,-1,1`.
    #[arg(long, allow_hyphen_values = true)]
    pub signs: Option<String>,
    /// Lexicographic rank of the signing (`+` before `-`, first edge most
    /// significant).
    #[arg(long)]
    pub index: Option<u64>,
    /// The all-minus lift `G × K₂`.
    #[arg(long)]
    pub cross: bool,
    /// List every 2-lift.
    #[arg(long)]
    pub enumerate: bool,
    /// Scan every 2-lift and report the extremes of `Z` under this model.
    #[arg(long)]
    pub search: Option<String>,
    /// A random k-lift drawn with the configured seed.
    #[arg(long)]
    pub k: Option<usize>,
    /// Write the lifted graph to this file (JSON if it ends in `.json`).
    #[arg(long)]
    pub out: Option<String>,
}

fn parse_signs(text: &str, m: usize) -> Result<Vec<i8>> {
    let signs: Vec<i8> = if text.contains(',') {
        text.split(',')
            .map(|t| match t.trim() {
                "1" | "+1" | "+" => Ok(1),
                "-1" | "-" => Ok(-1),
                other => bail!("bad sign {other:?}"),
            })
            .collect::<Result<_>>()?
    } else {
        text.chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                other => bail!("bad sign {other:?}"),
            })
            .collect::<Result<_>>()?
    };
    if signs.len() != m {
        return Err(twolift_core::Error::InvalidArgument(format!("{} signs for {m} edges", signs.len())).into());
    }
    Ok(signs)
}

fn single_lift(base: &str, h: Graph, extra: Value, out: Option<&str>) -> Result<Output> {
    if let Some(path) = out {
        let body = if path.ends_with(".json") { h.to_json() } else { h.to_edge_list() };
        std::fs::write(path, body).with_context(|| format!("writing {path}"))?;
    }
    let mut table = Table::new(["u", "v"]);
    for &(u, v) in h.edges() {
        table.push(vec![u.to_string(), v.to_string()]);
    }
    let mut obj = json!({ "base": base, "girth": girth_json(h.girth()), "graph": graph_json(&h) });
    if let (Value::Object(o), Value::Object(e)) = (&mut obj, extra) {
        o.extend(e);
    }
    Ok(Output { json: obj, text: h.to_edge_list(), table: Some(table) })
}

pub fn lift(args: &LiftArgs, cfg: &Config) -> Result<Output> {
    let (id, g) = args.graph.load()?;
    if let Some(k) = args.k {
        let mut rng = SeededRng::new(cfg.seed);
        let perms = random_permutations(&g, k, &mut rng);
        let h = k_lift(&g, &perms, k)?;
        return single_lift(&id, h, json!({ "k": k, "seed": cfg.seed, "permutations": perms }), args.out.as_deref());
    }
    if args.enumerate {
        let total = signing_count(&g, cfg.caps.signings)?;
        let mut list = Vec::new();
        let mut text = String::new();
        let mut table = Table::new(["index", "signs", "n", "m", "girth"]);
        for i in 0..total {
            let s = Signing::from_index(&g, i);
            let h = s.lift();
            text.push_str(&format!("# index {i} signs {}\n{}", signs_text(s.signs()), h.to_edge_list()));
            table.push(vec![
                i.to_string(),
                signs_text(s.signs()),
                h.n().to_string(),
                h.m().to_string(),
                h.girth().map_or_else(|| "inf".into(), |x| x.to_string()),
            ]);
            list.push(json!({ "index": i, "signs": s.signs(), "girth": girth_json(h.girth()), "graph": graph_json(&h) }));
        }
        return Ok(Output { json: json!({ "base": id, "count": total, "lifts": list }), text, table: Some(table) });
    }
    if let Some(spec) = &args.search {
        return search(&id, &g, spec, cfg);
    }
    let s = if let Some(text) = &args.signs {
        Signing::new(&g, parse_signs(text, g.m())?)?
    } else if let Some(i) = args.index {
        let total = signing_count(&g, u64::MAX)?;
        if i >= total {
            return Err(twolift_core::Error::InvalidArgument(format!("index {i} out of range 0..{total}")).into());
        }
        Signing::from_index(&g, i)
    } else {
        Signing::all_minus(&g)
    };
    let extra = json!({ "index": s.index(), "signs": s.signs() });
    single_lift(&id, s.lift(), extra, args.out.as_deref())
}

fn search(id: &str, g: &Graph, spec: &str, cfg: &Config) -> Result<Output> {
    let m = load_model(spec)?;
    let total = signing_count(g, cfg.caps.signings)?;
    let values: Vec<Scalar> = (0..total)
        .into_par_iter()
        .map(|i| partition_value(&Signing::from_index(g, i).lift(), &m, &cfg.caps))
        .collect::<twolift_core::Result<_>>()?;
    // first index wins ties, in both directions
    let mut best = 0usize;
    let mut worst = 0usize;
    for (i, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = i;
        }
        if *v < values[worst] {
            worst = i;
        }
    }
    let entry = |i: usize| {
        let s = Signing::from_index(g, i as u64);
        json!({ "index": i, "signs": s.signs(), "value": values[i] })
    };
    let union = values[0].clone();
    let cross = values[values.len() - 1].clone();
    let mut table = Table::new(["index", "signs", "value"]);
    for (i, v) in values.iter().enumerate() {
        table.push(vec![i.to_string(), signs_text(Signing::from_index(g, i as u64).signs()), v.to_string()]);
    }
    let text = format!(
        "scanned {total} lifts\nmax {} at {}\nmin {} at {}\nG∪G {}\nG×K2 {}\n",
        values[best],
        signs_text(Signing::from_index(g, best as u64).signs()),
        values[worst],
        signs_text(Signing::from_index(g, worst as u64).signs()),
        union,
        cross
    );
    Ok(Output {
        json: json!({
            "base": id,
            "model": spec,
            "scanned": total,
            "max": entry(best),
            "min": entry(worst),
            "union_value": union,
            "cross_value": cross,
        }),
        text,
        table: Some(table),
    })
}

#[derive(Args, Debug)]
pub struct GirthBoostArgs {
    #[command(flatten)]
    pub graph: GraphArg,
    #[arg(long, default_value_t = GirthBoostConfig::default().target)]
    pub target: usize,
    /// Rounds without girth improvement before giving up.
    #[arg(long, default_value_t = GirthBoostConfig::default().budget)]
    pub budget: usize,
    #[arg(long, default_value_t = GirthBoostConfig::default().samples)]
    pub samples: usize,
    #[arg(long, default_value_t = GirthBoostConfig::default().exhaustive_cap)]
    pub exhaustive_cap: u64,
    #[arg(long, default_value_t = GirthBoostConfig::default().max_vertices)]
    pub max_vertices: usize,
    /// Write the final graph here (JSON if it ends in `.json`).
    #[arg(long)]
    pub out: Option<String>,
}

pub fn boost(args: &GirthBoostArgs, cfg: &Config) -> Result<Output> {
    let (id, g) = args.graph.load()?;
    let bc = GirthBoostConfig {
        target: args.target,
        budget: args.budget,
        samples: args.samples,
        exhaustive_cap: args.exhaustive_cap,
        max_vertices: args.max_vertices,
        seed: cfg.seed,
    };
    let b = girth_boost(&g, &bc)?;
    if let Some(path) = &args.out {
        let last = b.last();
        let body = if path.ends_with(".json") { last.to_json() } else { last.to_edge_list() };
        std::fs::write(path, body).with_context(|| format!("writing {path}"))?;
    }
    let mut table = Table::new(["round", "n", "m", "girth", "exhaustive", "signs"]);
    let mut text = String::new();
    let mut rounds = Vec::new();
    for (i, h) in b.graphs.iter().enumerate() {
        let signs = if i == 0 { String::new() } else { signs_text(&b.signings[i - 1]) };
        let exhaustive = if i == 0 { String::new() } else { b.exhaustive[i - 1].to_string() };
        let girth = b.girths[i].map_or_else(|| "inf".to_string(), |x| x.to_string());
        text.push_str(&format!("round {i}: n={} m={} girth={girth}\n", h.n(), h.m()));
        table.push(vec![i.to_string(), h.n().to_string(), h.m().to_string(), girth, exhaustive, signs]);
        rounds.push(json!({
            "n": h.n(),
            "m": h.m(),
            "girth": girth_json(b.girths[i]),
            "signs": if i == 0 { Value::Null } else { json!(b.signings[i - 1]) },
            "exhaustive": if i == 0 { Value::Null } else { json!(b.exhaustive[i - 1]) },
        }));
    }
    text.push_str(&format!("{:?}\n", b.status));
    Ok(Output {
        json: json!({
            "base": id,
            "target": args.target,
            "status": b.status,
            "final_girth": girth_json(b.final_girth()),
            "rounds": rounds,
        }),
        text,
        table: Some(table),
    })
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    /// Model file or named model.
    #[arg(long)]
    pub model: String,
    /// Also look for loop-threshold and thick-path structure.
    #[arg(long)]
    pub staircase: bool,
}

pub fn classify_cmd(args: &ClassifyArgs, _cfg: &Config) -> Result<Output> {
    let m = load_model(&args.model)?;
    let c = classify(&m);
    let rows: Vec<Vec<&Scalar>> = (0..c.d1.size).map(|i| (0..c.d1.size).map(|j| c.d1.get(i, j)).collect()).collect();
    let verdict = serde_json::to_value(c.verdict)?;
    let mut obj = json!({
        "verdict": verdict,
        "certificate": c.certificate,
        "tp2": c.tp2,
        "tn2": c.tn2,
        "d1": rows,
    });
    let mut text = format!("verdict {}\n", verdict.as_str().unwrap_or(""));
    if let Some(s) = &c.certificate {
        text.push_str(&format!("certificate {}\n", signs_text(s)));
    }
    text.push_str(&format!("tp2 {}\ntn2 {}\n", c.tp2, c.tn2));
    if args.staircase {
        let lt = staircase_recognize(&m, StaircaseKind::LoopThreshold);
        let tp = staircase_recognize(&m, StaircaseKind::ThickPath);
        for (name, s) in [("loop_threshold", &lt), ("thick_path", &tp)] {
            match s {
                Some(s) => text.push_str(&format!("{name} ordering {:?} weights {:?} alpha {}\n", s.ordering, s.weights, s.alpha)),
                None => text.push_str(&format!("{name} no\n")),
            }
        }
        obj["staircase"] = json!({ "loop_threshold": lt, "thick_path": tp });
    }
    let mut table = Table::new(["verdict", "certificate", "tp2", "tn2"]);
    table.push(vec![
        verdict.as_str().unwrap_or("").to_string(),
        c.certificate.as_deref().map(signs_text).unwrap_or_default(),
        c.tp2.to_string(),
        c.tn2.to_string(),
    ]);
    Ok(Output { json: obj, text, table: Some(table) })
}

#[derive(Args, Debug)]
pub struct BetheArgs {
    /// Model file or named model; repeatable.
    #[arg(long)]
    pub model: Vec<String>,
    /// Hard-core activities to add to the grid.
    #[arg(long, value_delimiter = ',')]
    pub lambda: Vec<f64>,
    /// Ising inverse temperatures; combined with every `--field`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub beta: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0")]
    pub field: Vec<f64>,
    /// Degrees.
    #[arg(long, value_delimiter = ',', default_value = "3")]
    pub d: Vec<usize>,
    #[arg(long, default_value_t = BpConfig::default().restarts)]
    pub restarts: usize,
}

enum Closed {
    None,
    HardCore(f64),
    Ising(f64, f64),
}

pub fn bethe(args: &BetheArgs, cfg: &Config) -> Result<Output> {
    let mut grid: Vec<(String, SpinModel, Closed)> = Vec::new();
    for spec in &args.model {
        grid.push((spec.clone(), load_model(spec)?.to_float(), Closed::None));
    }
    for &l in &args.lambda {
        let m = NamedModel::Ind { lambda: Scalar::float(l) }.build()?;
        grid.push((format!("ind:{l}"), m, Closed::HardCore(l)));
    }
    for &b in &args.beta {
        for &h in &args.field {
            grid.push((format!("ising:{b}:{h}"), NamedModel::ising(b, h).build()?, Closed::Ising(b, h)));
        }
    }
    if grid.is_empty() {
        bail!(twolift_core::Error::InvalidArgument("give at least one --model, --lambda or --beta".into()));
    }
    let bp = BpConfig { restarts: args.restarts, seed: cfg.seed, tol: cfg.tol, ..BpConfig::default() };
    let mut entries = Vec::new();
    let mut table = Table::new(["model", "d", "fixed_points", "best", "sidorenko_bound", "closed_form"]);
    let mut text = String::new();
    for (id, m, closed) in &grid {
        for &d in &args.d {
            let sols = solve_bp(m, d, &bp)?;
            let bound = sidorenko_bound(m, d);
            let closed_form = match closed {
                Closed::None => None,
                Closed::HardCore(l) => Some(hardcore_phi(*l, d)?),
                Closed::Ising(b, h) => Some(ising_phi(*b, *h, d)?),
            };
            let best = sols[0].value;
            text.push_str(&format!(
                "{id} d={d}: {} fixed point(s), best {best:.12}, Sidorenko {bound:.12}{}\n",
                sols.len(),
                closed_form.map(|c| format!(", closed form {c:.12}")).unwrap_or_default()
            ));
            table.push(vec![
                id.clone(),
                d.to_string(),
                sols.len().to_string(),
                format!("{best:e}"),
                format!("{bound:e}"),
                closed_form.map(|c| format!("{c:e}")).unwrap_or_default(),
            ]);
            let points: Vec<Value> = sols
                .iter()
                .map(|s| {
                    json!({
                        "marginal": s.marginal.probs(),
                        "value": s.value,
                        "iterations": s.iterations,
                        "residual": s.residual,
                    })
                })
                .collect();
            entries.push(json!({
                "model": id,
                "d": d,
                "fixed_points": points,
                "best": best,
                "sidorenko_bound": bound,
                "closed_form": closed_form,
            }));
        }
    }
    Ok(Output { json: json!({ "seed": cfg.seed, "restarts": args.restarts, "results": entries }), text, table: Some(table) })
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Comma-separated suites, or `all`.
    #[arg(long, default_value = "all", value_delimiter = ',')]
    pub suite: Vec<String>,
    /// Catalog file: one graph id per line.
    #[arg(long)]
    pub catalog: Option<String>,
    /// Work cap per lift scan.
    #[arg(long)]
    pub cap: Option<u128>,
    /// Also write the JSON report here.
    #[arg(long)]
    pub out: Option<String>,
}

pub fn verify(args: &VerifyArgs, cfg: &Config) -> Result<(Output, bool)> {
    let mut suites = Vec::new();
    for name in &args.suite {
        for s in Suite::parse_list(name.trim())? {
            if !suites.contains(&s) {
                suites.push(s);
            }
        }
    }
    let mut vc = VerifyConfig::default().with_seed(cfg.seed);
    vc.scan.caps = cfg.caps;
    if let Some(path) = &args.catalog {
        vc.catalog = Catalog::parse(&read(path)?).with_context(|| format!("parsing catalog {path}"))?;
    }
    if let Some(cap) = args.cap {
        vc.work_cap = cap;
    }
    let report = run_all(&vc, &suites);
    let json_text = report.to_json();
    if let Some(path) = &args.out {
        std::fs::write(path, &json_text).with_context(|| format!("writing {path}"))?;
    }
    let mut table = Table::new(twolift_core::verify::ScanReport::CSV_HEADER.split(','));
    for r in report.suites.iter().flat_map(|s| &s.reports) {
        table.push(vec![
            r.suite.clone(),
            r.graph.clone(),
            r.model.clone(),
            r.claim.clone(),
            r.scanned.to_string(),
            r.exhaustive.to_string(),
            r.margin.clone(),
            r.status.as_str().to_string(),
        ]);
    }
    let out = Output { json: serde_json::from_str(&json_text)?, text: report.summary(), table: Some(table) };
    Ok((out, report.passed))
}
