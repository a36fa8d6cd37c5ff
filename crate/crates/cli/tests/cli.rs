use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn twolift(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twolift")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = twolift(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const C4: &str = "4 4\n0 1\n1 2\n2 3\n3 0\n";
const K2: &str = "2 1\n0 1\n";
const WR: &str = r#"{"q":3,"A":[[1,1,0],[1,1,1],[0,1,1]],"nu":[1,1,1]}"#;

#[test]
fn independent_sets_of_c4() {
    let d = TempDir::new().unwrap();
    let g = write(&d, "c4.edges", C4);
    assert_eq!(ok(&["z", "--graph", s(&g), "--model", "ind"]).trim(), "7");
}

#[test]
fn random_cluster_of_an_edge() {
    let d = TempDir::new().unwrap();
    let g = write(&d, "k2.edges", K2);
    assert_eq!(ok(&["z", "--graph", s(&g), "--rc", "--q", "2", "--w", "1"]).trim(), "6");
    assert_eq!(ok(&["z", "--graph", s(&g), "--rc", "--q", "2", "--w", "1", "--no-memo"]).trim(), "6");
}

#[test]
fn hom_counts_match_named_models() {
    let d = TempDir::new().unwrap();
    let k2 = write(&d, "k2.edges", K2);
    assert_eq!(ok(&["z", "--named", "C5", "--hom", s(&k2)]).trim(), "0");
    // proper 3-colourings of C5
    let k3 = write(&d, "k3.edges", "3 3\n0 1\n1 2\n0 2\n");
    assert_eq!(ok(&["z", "--named", "C5", "--hom", s(&k3)]).trim(), "30");
}

#[test]
fn widom_rowlinson_file_is_class_a() {
    let d = TempDir::new().unwrap();
    let m = write(&d, "wr.json", WR);
    let v: Value = serde_json::from_str(&ok(&["classify", "--model", s(&m), "--format", "json"])).unwrap();
    assert_eq!(v["verdict"], "ClassA_certified");
    assert_eq!(v["tp2"], true);
    let text = ok(&["classify", "--model", "ind"]);
    assert!(text.starts_with("verdict ClassB_certified"), "{text}");
}

#[test]
fn lifts_round_trip_through_files() {
    let d = TempDir::new().unwrap();
    let g = write(&d, "c4.edges", C4);
    let out = d.path().join("lift.edges");
    let printed = ok(&["lift", "--graph", s(&g), "--signs", "+-+-", "--out", s(&out)]);
    assert_eq!(printed, fs::read_to_string(&out).unwrap());
    assert!(printed.starts_with("8 8\n"));
    // the same lift by index, and reparsed as a base graph
    let index = 0b0101.to_string();
    assert_eq!(ok(&["lift", "--graph", s(&g), "--index", &index]), printed);
    assert_eq!(ok(&["lift", "--graph", s(&out), "--index", "0"]).lines().next(), Some("16 16"));
    let json_out = d.path().join("lift.json");
    ok(&["lift", "--graph", s(&g), "--signs", "1,-1,1,-1", "--out", s(&json_out)]);
    let v: Value = serde_json::from_str(&fs::read_to_string(&json_out).unwrap()).unwrap();
    assert_eq!(v["n"], 8);
    assert_eq!(ok(&["z", "--graph", s(&json_out), "--model", "ind"]), ok(&["z", "--graph", s(&out), "--model", "ind"]));
}

#[test]
fn cross_lift_of_odd_cycle_is_even_cycle() {
    let text = ok(&["lift", "--named", "C5", "--cross", "--format", "json"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["girth"], 10);
}

#[test]
fn search_reports_union_as_maximum_for_widom_rowlinson() {
    let v: Value = serde_json::from_str(&ok(&["lift", "--named", "K4", "--search", "wr", "--format", "json"])).unwrap();
    assert_eq!(v["scanned"], 64);
    assert_eq!(v["max"]["value"], v["union_value"]);
}

#[test]
fn counts_table_as_csv() {
    let text = ok(&["counts", "--named", "C4", "--format", "csv"]);
    assert_eq!(text, "k,i_k,m_k\n0,1,1\n1,4,4\n2,2,2\n");
}

#[test]
fn missing_file_exits_3() {
    let o = twolift(&["z", "--graph", "/nonexistent/g.edges", "--model", "ind"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn parse_error_exits_4() {
    let d = TempDir::new().unwrap();
    let g = write(&d, "bad.edges", "2 2\n0 1\n");
    let o = twolift(&["z", "--graph", s(&g), "--model", "ind"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("declared 2 edges"));
    let m = write(&d, "bad.json", "{\"q\": 2");
    assert_eq!(twolift(&["classify", "--model", s(&m)]).status.code(), Some(4));
}

#[test]
fn cap_refusal_exits_5() {
    let o = twolift(&["z", "--named", "petersen", "--model", "potts:3:1", "--cap-assignments", "10"]);
    assert_eq!(o.status.code(), Some(5));
    let o = twolift(&["lift", "--named", "K5", "--enumerate", "--cap-signings", "16"]);
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(twolift(&["z"]).status.code(), Some(2));
    assert_eq!(twolift(&["lift", "--named", "K3", "--signs", "++"]).status.code(), Some(6));
    assert_eq!(twolift(&["bethe", "--lambda", "1", "--tol", "0.5"]).status.code(), Some(6));
    assert_eq!(twolift(&["verify", "--suite", "nope"]).status.code(), Some(6));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let d = TempDir::new().unwrap();
    let cfg = write(&d, "run.conf", "# defaults\nformat = json\ncaps.assignments = 10\nseed = 5\n");
    let o = twolift(&["z", "--named", "petersen", "--model", "wr", "--config", s(&cfg)]);
    assert_eq!(o.status.code(), Some(5), "file cap applies");
    let text = ok(&["z", "--named", "C4", "--model", "ind", "--config", s(&cfg), "--cap-assignments", "1000"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["value"], "7");
    let text = ok(&["z", "--named", "C4", "--model", "ind", "--config", s(&cfg), "--cap-assignments", "1000", "--format", "text"]);
    assert_eq!(text, "7\n");
    // the seed from the file drives random lifts
    let a = ok(&["lift", "--named", "K4", "--k", "3", "--config", s(&cfg), "--cap-assignments", "1000"]);
    let b = ok(&["lift", "--named", "K4", "--k", "3", "--seed", "5", "--format", "json"]);
    assert_eq!(a, b);
    let bad = write(&d, "bad.conf", "colour = blue\n");
    assert_eq!(twolift(&["classify", "--model", "wr", "--config", s(&bad)]).status.code(), Some(4));
}

#[test]
fn verify_exit_status_and_report() {
    let d = TempDir::new().unwrap();
    let catalog = write(&d, "catalog.txt", "# tiny\nC4\nK4\n");
    let out = d.path().join("report.json");
    let o = twolift(&["verify", "--suite", "lifts,counts", "--catalog", s(&catalog), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("PASS"));
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["suites"].as_array().unwrap().len(), 2);
}

#[test]
fn bethe_matches_closed_forms() {
    let v: Value = serde_json::from_str(&ok(&[
        "bethe", "--lambda", "1", "--beta", "0.5", "--field", "-0.1,0.2", "--d", "3,4", "--restarts", "8", "--format", "json",
    ]))
    .unwrap();
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 6);
    for r in results {
        let best = r["best"].as_f64().unwrap();
        let closed = r["closed_form"].as_f64().unwrap();
        assert!((best - closed).abs() < 1e-8, "{r}");
        assert!(best >= r["sidorenko_bound"].as_f64().unwrap());
    }
}

#[test]
fn girth_boost_reaches_small_targets() {
    let v: Value = serde_json::from_str(&ok(&["girth-boost", "--named", "K4", "--target", "5", "--format", "json"])).unwrap();
    assert_eq!(v["status"], "Reached");
    assert!(v["final_girth"].as_u64().unwrap() >= 5);
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.schema.json"));
    let s: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&s).unwrap()
}

#[test]
fn json_output_follows_the_schemas() {
    let d = TempDir::new().unwrap();
    let k2 = write(&d, "k2.edges", K2);
    let catalog = write(&d, "catalog.txt", "C4\nK3\n");
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("z", vec!["z", "--named", "C5", "--model", "ising:0.5:0.1"]),
        ("z", vec!["z", "--named", "C5", "--rc", "--q", "3/2", "--w", "1/2"]),
        ("z", vec!["z", "--named", "C4", "--hom", s(&k2)]),
        ("counts", vec!["counts", "--named", "petersen", "--lambda", "1/2"]),
        ("counts", vec!["counts", "--named", "C4"]),
        ("lift", vec!["lift", "--named", "K4", "--index", "3"]),
        ("lift", vec!["lift", "--named", "K3", "--k", "4"]),
        ("lift", vec!["lift", "--named", "K3", "--enumerate"]),
        ("lift", vec!["lift", "--named", "C4", "--search", "potts:3:1"]),
        ("girth-boost", vec!["girth-boost", "--named", "K4", "--target", "6"]),
        ("classify", vec!["classify", "--model", "ind", "--staircase"]),
        ("classify", vec!["classify", "--model", "ising:0.5:0"]),
        ("bethe", vec!["bethe", "--model", "potts:3:1", "--lambda", "2", "--d", "3", "--restarts", "4"]),
        ("verify", vec!["verify", "--suite", "counts,tutte", "--catalog", s(&catalog)]),
    ];
    for (name, mut args) in cases {
        args.extend(["--format", "json"]);
        let o = twolift(&args);
        assert!(o.status.success() || name == "verify", "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        let validator = schema(name);
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
}
