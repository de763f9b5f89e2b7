use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_zeta-forge"));
    c.env_remove("ZETA_FORGE_DIGITS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert!(
        o.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&ok(args)).unwrap()
}

fn num(v: &serde_json::Value) -> f64 {
    v.as_str().expect("decimal string").parse().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("zeta-forge-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

const ZETA3: f64 = 1.2020569031595942;

#[test]
fn list_rows_and_filters() {
    let all = ok(&["list"]);
    assert!(all.lines().count() > 25);
    let z3 = json(&["list", "--target", "zeta3", "--format", "json"]);
    let arr = z3.as_array().unwrap();
    assert!(!arr.is_empty() && arr.len() < all.lines().count() - 1);
    assert!(arr.iter().all(|d| d["target"] == "zeta3"));
    assert!(arr
        .iter()
        .all(|d| !d["citation"].as_str().unwrap().is_empty()));
    let csv = ok(&["list", "--format", "csv"]);
    assert!(csv.starts_with("id,target,convergence,citation,summary"));
}

#[test]
fn eval_examples() {
    let r = json(&[
        "eval",
        "--formula",
        "Z3_ETA_FAST",
        "--terms",
        "10",
        "--digits",
        "30",
        "--format",
        "json",
    ]);
    assert!((num(&r["value"]) - ZETA3).abs() < 1e-7);
    let r = json(&[
        "eval",
        "--formula",
        "ZN_ALL_STEP",
        "--param",
        "k=4",
        "--terms",
        "100",
        "--format",
        "json",
    ]);
    let z4 = std::f64::consts::PI.powi(4) / 90.0;
    assert!((num(&r["value"]) - z4).abs() < 1e-14);
    assert_eq!(r["params"]["k"], "4");
}

#[test]
fn exit_codes() {
    let code = |a: &[&str]| run(a).status.code().unwrap();
    assert_eq!(code(&["eval", "--formula", "NOPE", "--terms", "3"]), 2);
    assert_eq!(code(&["integrate", "--id", "NOPE"]), 2);
    assert_eq!(
        code(&["bench", "--only", "NOPE", "--terms-schedule", "3"]),
        2
    );
    assert_eq!(
        code(&[
            "eval",
            "--formula",
            "ZN_ALL_STEP",
            "--param",
            "k=1",
            "--terms",
            "3"
        ]),
        3
    );
    assert_eq!(
        code(&[
            "eval",
            "--formula",
            "Z3_ETA_FAST",
            "--param",
            "q=2",
            "--terms",
            "3"
        ]),
        3
    );
    assert_eq!(
        code(&["eval", "--formula", "Z3_BIGENERGY", "--terms", "2"]),
        3
    );
    assert_eq!(code(&["bench", "--terms-schedule", ""]), 3);
    assert_eq!(code(&["bench", "--terms-schedule", " , "]), 3);
    assert_eq!(code(&["matrix", "--n", "2"]), 3);
    assert_eq!(code(&["root", "--pattern", "+x"]), 3);
    assert_eq!(code(&["system", "--n", "1"]), 3);
    assert_eq!(code(&["revert", "--order", "1"]), 3);
    assert_eq!(code(&["--digits", "5", "list"]), 3);
    assert_eq!(code(&["eval"]), 3);
    assert_eq!(code(&["--help"]), 0);
    let o = run(&[
        "bench",
        "--terms-schedule",
        "10",
        "--only",
        "CONST_PI4",
        "--out",
        "/nonexistent/dir/b.csv",
    ]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn digits_from_environment() {
    let o = bin()
        .env("ZETA_FORGE_DIGITS", "50")
        .args([
            "eval",
            "--formula",
            "CONST_PI4",
            "--terms",
            "5",
            "--format",
            "json",
        ])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["digits_requested"], 50);
    let v = json(&[
        "eval",
        "--formula",
        "CONST_PI4",
        "--terms",
        "5",
        "--format",
        "json",
    ]);
    assert_eq!(v["digits_requested"], 30);
}

/// Drop the elapsed column so runs can be compared byte for byte.
fn strip_elapsed(csv: &str) -> String {
    csv.lines()
        .map(|l| l.rsplit_once(',').unwrap().0.to_string())
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn bench_is_deterministic_and_sorted() {
    let args = |jobs: &'static str| {
        vec![
            "bench",
            "--terms-schedule",
            "40,10,20",
            "--only",
            "Z3_LOG_ALT,CONST_PI4,Z3_ETA_FAST,ZK_MINUS1",
            "--jobs",
            jobs,
        ]
    };
    let a = ok(&args("1"));
    let b = ok(&args("4"));
    assert_eq!(strip_elapsed(&a), strip_elapsed(&b));
    let mut rd = csv::Reader::from_reader(a.as_bytes());
    assert_eq!(
        rd.headers().unwrap().iter().collect::<Vec<_>>(),
        [
            "formula_id",
            "terms",
            "digits_requested",
            "value",
            "abs_error",
            "elapsed_seconds"
        ]
    );
    let keys: Vec<(String, u64)> = rd
        .records()
        .map(|r| {
            let r = r.unwrap();
            (r[0].to_string(), r[1].parse().unwrap())
        })
        .collect();
    assert_eq!(keys.len(), 12);
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn bench_geometric_errors_shrink() {
    let ids: Vec<String> = json(&["list", "--format", "json"])
        .as_array()
        .unwrap()
        .iter()
        .filter(|d| d["convergence"] == "geometric")
        .map(|d| d["id"].as_str().unwrap().to_string())
        .collect();
    assert!(!ids.is_empty());
    let only = ids.join(",");
    let rows = json(&[
        "bench",
        "--terms-schedule",
        "10,100,1000",
        "--only",
        &only,
        "--format",
        "json",
        "--jobs",
        "4",
    ]);
    // floor: output precision at 30 digits
    let floor = 1e-30;
    for id in &ids {
        let errs: Vec<f64> = rows
            .as_array()
            .unwrap()
            .iter()
            .filter(|r| r["formula_id"] == id.as_str())
            .map(|r| num(&r["abs_error"]).abs())
            .collect();
        assert_eq!(errs.len(), 3, "{id}");
        for w in errs.windows(2) {
            assert!(w[1] < w[0] || w[0] < floor, "{id}: {errs:?}");
        }
    }
}

#[test]
fn bench_writes_file_atomically() {
    let dir = scratch("atomic");
    let out = dir.join("table.json");
    std::fs::write(&out, "stale").unwrap();
    ok(&[
        "bench",
        "--terms-schedule",
        "20,40,60",
        "--only",
        "Z3_BIGENERGY",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let errs: Vec<f64> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| num(&r["abs_error"]))
        .collect();
    assert_eq!(errs.len(), 3);
    assert!(errs[0].abs() > errs[1].abs() && errs[1].abs() > errs[2].abs());
    let names: Vec<_> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    assert_eq!(names, ["table.json"]);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn matrix_root_integrate() {
    let m = json(&["matrix", "--n", "4", "--format", "json"]);
    let want = serde_json::json!([[2, 5, 7, 8], [7, 2, -8, 5], [5, 8, 2, -7], [-8, 7, -5, 2]]);
    assert_eq!(m["entries"], want);
    let r = json(&["root", "--pattern", "+|-", "--format", "json"]);
    assert!((num(&r["value"]) - 3f64.sqrt()).abs() < 1e-15);
    assert_eq!(r["angle"], "1/6");
    let q = json(&[
        "integrate",
        "--id",
        "CSC_HALF",
        "--digits",
        "30",
        "--format",
        "json",
    ]);
    assert!((num(&q["value"]) - ZETA3).abs() < 1e-15);
    assert!(num(&q["abs_error_vs_ref"]).abs() < 1e-28);
}

#[test]
fn revert_and_system() {
    let r = json(&["revert", "--order", "20", "--format", "json"]);
    assert!((num(&r["error"]) - 4.3896495e-8).abs() < 1e-14);
    assert_eq!(r["series"]["coefficients"].as_array().unwrap().len(), 21);
    let s = json(&["system", "--n", "6", "--tail", "oracle", "--format", "json"]);
    assert!(num(&s["error"]).abs() < 1e-28);
    assert_eq!(s["system"]["tail"], "oracle");
    let text = ok(&["system", "--n", "4"]);
    assert!(text.contains("-1/2"));
}

#[test]
fn identical_invocations_identical_output() {
    for args in [
        vec!["list", "--format", "json"],
        vec!["matrix", "--n", "5"],
        vec!["root", "--pattern", "-+|+-", "--format", "json"],
        vec!["system", "--n", "5", "--format", "json"],
    ] {
        assert_eq!(ok(&args), ok(&args));
    }
}
