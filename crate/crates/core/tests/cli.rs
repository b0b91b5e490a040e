use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_heckeforge");

/// (golden name, schema, arguments)
const CASES: &[(&str, &str, &[&str])] = &[
    ("symbol", "symbol", &["--p", "5", "symbol", "--f", "x", "--g", "x+t", "--flags"]),
    ("symbol-monomial", "symbol", &["--p", "7", "symbol", "--f", "x^2*t", "--g", "x^-1*t^3"]),
    ("reciprocity", "reciprocity", &["--p", "5", "--trials", "25", "--seed", "7", "reciprocity"]),
    ("curve-good", "curve-good", &["--p", "3", "curve", "good", "--f", "x^2 + t"]),
    ("curve-canon", "curve-canon", &["--p", "5", "--prec", "8", "curve", "canon", "--f", "x + t + x*t"]),
    ("curve-eq", "curve-eq", &["--p", "5", "curve", "eq", "--f", "x + t", "--g", "(x + t)*(1 + x + t^2)"]),
    ("grass-count", "grass-poly", &["--group", "GL2", "--coweight", "2,0", "grass", "count"]),
    ("grass-dim", "grass-dim", &["--group", "GL3", "--coweight", "2,1,0", "grass", "dim"]),
    ("grass-closure", "grass-poly", &["--group", "GL3", "--coweight", "2,0,0", "grass", "closure"]),
    ("grass-support", "grass-support", &["--group", "GL3", "--coweight", "1,0,0", "grass", "support", "--mu", "1,1,0"]),
    ("hecke-mul", "hecke-element", &["--group", "GL2", "hecke", "mul", "--left", "1,0", "--right", "1,0"]),
    ("hecke-mul-a", "hecke-element", &["--group", "PGL3", "hecke", "mul", "--basis", "A", "--left", "1,0", "--right", "0,1"]),
    ("hecke-transition", "hecke-transition", &["--group", "GL2", "--coweight", "2,0", "hecke", "transition"]),
    ("hecke-transition-b2", "hecke-transition", &["--group", "B2", "--coweight", "1,1", "hecke", "transition", "--direction", "T->A"]),
    ("hecke-leading", "hecke-leading", &["--group", "GL3", "--coweight", "2,1,0", "hecke", "leading"]),
    ("hecke-satake", "hecke-satake", &["--group", "GL2", "--coweight", "2,0", "hecke", "satake"]),
    ("lattice-smith", "lattice-smith", &["--p", "3", "lattice", "smith", "--matrix", "[[[0,1],[1]],[[0],[0,0,1]]]"]),
    ("lattice-hall", "lattice-hall", &["lattice", "hall", "--lambda", "1,0", "--mu", "1,0", "--nu", "1,1", "--q", "3"]),
    ("lattice-count", "lattice-count", &["lattice", "count", "--n", "3", "--q", "2", "--k", "2"]),
    ("lattice-iwasawa", "lattice-iwasawa", &["--coweight", "2,0", "lattice", "iwasawa", "--mu", "1,1", "--q", "3"]),
    ("ralg-mul", "ralg-element", &["--p", "5", "--prec", "4", "--group", "GL2", "ralg", "mul", "--left", "x+t : 1,0", "--right", "x+t : 1,1 ; x-t^2 : 1,0"]),
    ("ralg-iota", "ralg-iota", &["--p", "5", "--group", "GL2", "ralg", "iota", "--gen", "x+t : 2,1 ; x+t^2 : 1,0"]),
    ("ralg-iota-leading", "ralg-iota", &["--p", "5", "--group", "G2", "ralg", "iota", "--mode", "leading", "--gen", "x+t : 1,2 ; x+t^2 : 2,3"]),
    ("ralg-order", "ralg-order", &["--p", "5", "--group", "GL2", "ralg", "order", "--left", "x+t : 1,1", "--right", "x+t : 2,0"]),
    ("selftest", "selftest", &["selftest", "--suite", "quick"]),
];

fn manifest() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).arg("--json").args(args).env_remove("HECKEFORGE_THREADS").output().expect("binary runs")
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = manifest().join("schemas").join(format!("{name}.schema.json"));
    let s: Value = serde_json::from_str(&std::fs::read_to_string(&path).expect("schema file")).expect("schema json");
    jsonschema::validator_for(&s).expect("valid schema")
}

fn golden(name: &str) -> PathBuf {
    manifest().join("tests").join("golden").join(format!("{name}.json"))
}

#[test]
fn goldens_and_schemas() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (name, schema_name, args) in CASES {
        let out = run(args);
        let stdout = String::from_utf8(out.stdout).expect("utf8");
        assert_eq!(out.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        let value: Value = serde_json::from_str(&stdout).expect("json output");
        let v = schema(schema_name);
        let errors: Vec<String> = v.iter_errors(&value).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{name} violates {schema_name}: {errors:?}");
        let path = golden(name);
        if update {
            std::fs::create_dir_all(path.parent().unwrap()).unwrap();
            std::fs::write(&path, &stdout).unwrap();
        } else {
            let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
            assert_eq!(stdout, want, "{name} differs from its golden file");
        }
    }
}

#[test]
fn every_schema_is_used() {
    let dir = manifest().join("schemas");
    for entry in std::fs::read_dir(&dir).unwrap() {
        let file = entry.unwrap().file_name().into_string().unwrap();
        let name = file.trim_end_matches(".schema.json");
        assert!(CASES.iter().any(|c| c.1 == name), "{name} has no golden case");
    }
}

#[test]
fn spot_values() {
    let json = |args: &[&str]| -> Value { serde_json::from_slice(&run(args).stdout).unwrap() };
    let s = json(&["--p", "5", "symbol", "--f", "x", "--g", "x+t", "--flags"]);
    assert_eq!((s["XT"].as_i64(), s["TX"].as_i64(), s["parshin_total"].as_i64()), (Some(0), Some(-1), Some(0)));
    assert_eq!(json(&["--group", "GL2", "--coweight", "2,0", "grass", "count"]), serde_json::json!({ "poly": [0, 1, 1] }));
    let r = json(&["--p", "5", "--trials", "200", "reciprocity"]);
    assert_eq!(r["seed"], 42);
    assert_eq!(r["generator"], "ChaCha8");
    assert_eq!(r["parshin"]["failures"], 0);
    assert_eq!(r["lemma_exten"]["failures"], 0);
    assert_eq!(r["fixed_pair"]["verdict"], "axis identity violated, Parshin holds");
}

#[test]
fn byte_identical_across_runs_and_threads() {
    let args = ["--p", "5", "--trials", "30", "reciprocity"];
    let a = run(&args).stdout;
    for threads in ["1", "3"] {
        let b = Command::new(BIN).arg("--json").args(args).env("HECKEFORGE_THREADS", threads).output().unwrap().stdout;
        assert_eq!(a, b);
    }
    let mul = ["--group", "GL3", "hecke", "mul", "--basis", "A", "--left", "2,1,0", "--right", "1,1,0"];
    let one = Command::new(BIN).args(mul).env("HECKEFORGE_THREADS", "1").output().unwrap().stdout;
    let four = Command::new(BIN).args(mul).env("HECKEFORGE_THREADS", "4").output().unwrap().stdout;
    assert_eq!(one, four);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code();
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(code(&["--p", "5", "symbol", "--f", "x"]), Some(2));
    assert_eq!(code(&["--p", "five", "symbol", "--f", "x", "--g", "t"]), Some(2));
    assert_eq!(code(&["lattice", "hall", "--lambda", "1,0", "--mu", "1,0", "--nu", "1,1", "--q", "-3"]), Some(2));
    assert_eq!(code(&["symbol", "--f", "x", "--g", "t"]), Some(2));
    assert_eq!(code(&["--p", "4", "symbol", "--f", "x", "--g", "t"]), Some(1));
    assert_eq!(code(&["--p", "5", "curve", "canon", "--f", "1 + x"]), Some(1));
    assert_eq!(code(&["--group", "GL2", "--coweight", "0,1", "grass", "count"]), Some(1));
    assert_eq!(code(&["--group", "E8", "--coweight", "0", "grass", "count"]), Some(1));
    let bad_threads = Command::new(BIN).args(["--group", "GL2", "--coweight", "1,0", "grass", "dim"]).env("HECKEFORGE_THREADS", "zero").output().unwrap();
    assert_eq!(bad_threads.status.code(), Some(2));
    let err = run(&["--p", "4", "symbol", "--f", "x", "--g", "t"]);
    assert!(err.stdout.is_empty());
    assert!(String::from_utf8_lossy(&err.stderr).starts_with("error:"));
}

fn write_config(dir: &Path, body: &str) -> PathBuf {
    std::fs::create_dir_all(dir).unwrap();
    let path = dir.join("heckeforge.conf");
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = std::env::temp_dir().join(format!("heckeforge-cli-{}", std::process::id()));
    let cfg = write_config(&dir, "# defaults\ngroup = GL2\ncoweight = 2,0\np = 5\n");
    let cfg = cfg.to_str().unwrap();
    let from_file: Value = serde_json::from_slice(&run(&["--config", cfg, "grass", "count"]).stdout).unwrap();
    assert_eq!(from_file["poly"], serde_json::json!([0, 1, 1]));
    let overridden: Value = serde_json::from_slice(&run(&["--config", cfg, "--coweight", "1,0", "grass", "count"]).stdout).unwrap();
    assert_eq!(overridden["poly"], serde_json::json!([1, 1]));
    let bad = write_config(&dir.join("bad"), "colour = blue\n");
    assert_eq!(run(&["--config", bad.to_str().unwrap(), "grass", "count"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}
