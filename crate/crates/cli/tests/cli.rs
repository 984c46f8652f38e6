use std::collections::BTreeMap;
use std::process::{Command, Output};

fn gl2c(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gl2c")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

/// Parses a matrix dump into `(l', m', l, m) -> (re, im)`.
fn parse_dump(text: &str) -> BTreeMap<(i32, i32, i32, i32), (f64, f64)> {
    text.lines()
        .map(|line| {
            let f: Vec<&str> = line.split_whitespace().collect();
            assert_eq!(f.len(), 6, "{line}");
            let i = |k: usize| f[k].parse::<i32>().unwrap();
            let x = |k: usize| f[k].parse::<f64>().unwrap();
            ((i(0), i(1), i(2), i(3)), (x(4), x(5)))
        })
        .collect()
}

#[test]
fn repr_lz_lists_the_diagonal() {
    let o = gl2c(&["repr", "--expr", "L_z", "--lmax", "1"]);
    assert_eq!(code(&o), 0);
    let entries: Vec<_> = parse_dump(&stdout(&o)).into_iter().collect();
    let diag: Vec<f64> = entries.iter().map(|(_, v)| v.0).collect();
    assert_eq!(diag, [0.0, -1.0, 0.0, 1.0]);
    assert!(entries.iter().all(|((lr, mr, lc, mc), _)| lr == lc && mr == mc));
}

#[test]
fn repr_nz_coupling() {
    let o = gl2c(&["repr", "--expr", "N_z", "--lmax", "1"]);
    let d = parse_dump(&stdout(&o));
    // <1,0|cos θ|0,0> = 1/√3
    let v = d[&(1, 0, 0, 0)];
    assert!((v.0 - 3f64.sqrt().recip()).abs() < 1e-12);
    assert!((v.0 - 0.5773502692).abs() < 1e-10);
    assert_eq!(d[&(0, 0, 1, 0)], v);
}

#[test]
fn repr_case_one_commutator_is_minus_two_lz() {
    let params = "a=1,b=0,c=-1,d=0";
    let comm = gl2c(&["repr", "--expr", "comm(Kplus,Kminus)", "--params", params, "--lmax", "8", "--interior", "2"]);
    let lz = gl2c(&["repr", "--expr", "-2*L_z", "--lmax", "8", "--interior", "2"]);
    assert_eq!(code(&comm), 0);
    let (x, y) = (parse_dump(&stdout(&comm)), parse_dump(&stdout(&lz)));
    let keys: std::collections::BTreeSet<_> = x.keys().chain(y.keys()).collect();
    for k in keys {
        let p = x.get(k).copied().unwrap_or_default();
        let q = y.get(k).copied().unwrap_or_default();
        assert!((p.0 - q.0).abs() + (p.1 - q.1).abs() <= 1e-10, "{k:?}: {p:?} vs {q:?}");
    }
}

#[test]
fn repr_needs_parameters_and_enough_lmax() {
    let o = gl2c(&["repr", "--expr", "Kplus", "--lmax", "4"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("no numeric value"));
    assert_eq!(code(&gl2c(&["repr", "--expr", "N_z*N_z", "--lmax", "1"])), 2);
}

#[test]
fn eval_prints_normal_form() {
    let o = gl2c(&["eval", "--expr", "comm(L_z, N_x)"]);
    assert_eq!(stdout(&o).trim(), "(i) NY");
    let o = gl2c(&["eval", "--expr", "dot(N,N)"]);
    assert_eq!(stdout(&o).trim(), "(1) 1");
}

#[test]
fn eval_substitutes_parameters() {
    let o = gl2c(&["eval", "--expr", "a*N_x + b", "--params", "a=1/2,b=0.25", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["normal_form"], "(1/2) NX + (1/4) 1");
}

#[test]
fn parse_errors_exit_two_with_a_code() {
    let o = gl2c(&["eval", "--expr", "N_x +"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("error[E001]"));
    let o = gl2c(&["eval", "--expr", "bogus"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("error[E002]"));
}

#[test]
fn script_files() {
    let dir = std::env::temp_dir().join(format!("gl2c-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k.gl2c");
    std::fs::write(&path, "let k = comm(Kz, Kplus);\nk - Kplus\n").unwrap();
    let o = gl2c(&["eval", "--script", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "0");
    assert_eq!(code(&gl2c(&["eval", "--script", dir.join("missing").to_str().unwrap()])), 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn classify_renderings() {
    let o = stdout(&gl2c(&["classify", "--a", "1", "--b", "0", "--lmax", "8"]));
    assert!(o.contains("G(-1,0)") && o.contains("su(1,1)-type"), "{o}");
    let o = stdout(&gl2c(&["classify", "--a", "1", "--b", "1", "--lmax", "8"]));
    assert!(o.contains("raw (a0, b0): (-4, 2)"), "{o}");
    assert!(o.contains("note:"));
    let o = gl2c(&["classify", "--a", "1", "--b", "0.5", "--lmax", "8"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("NOT CLOSED"));
    let o = gl2c(&["classify", "--a", "-3/2", "--b", "1", "--lmax", "6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["closed"], true);
    assert_eq!(v["case"], "CASE2");
}

#[test]
fn verify_exit_codes() {
    assert_eq!(code(&gl2c(&["verify", "--lmax", "6"])), 0);
    assert_eq!(code(&gl2c(&["verify", "--lmax", "4"])), 0);
    let o = gl2c(&["verify", "--lmax", "6", "--tol", "1e-30"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL"));
    assert_eq!(code(&gl2c(&["verify", "--lmax", "1"])), 2);
    assert_eq!(code(&gl2c(&["verify", "--tol", "-1"])), 2);
    assert_eq!(code(&gl2c(&["verify", "--format", "xml"])), 2);
    assert_eq!(code(&gl2c(&["frobnicate"])), 2);
    assert_eq!(code(&gl2c(&["--help"])), 0);
}

#[test]
fn verify_json_is_reproducible() {
    let args = ["verify", "--lmax", "6", "--format", "json", "--reproducible"];
    let (x, y) = (gl2c(&args), gl2c(&args));
    assert_eq!(x.stdout, y.stdout);
    let v: serde_json::Value = serde_json::from_slice(&x.stdout).unwrap();
    assert_eq!(v["schema_version"], "1.0");
    assert_eq!(v["overall"], "pass");
    assert_eq!(v["config"]["lmax"], 6);
    assert!(v["timestamp"].is_null());
    let stamped: serde_json::Value =
        serde_json::from_slice(&gl2c(&["verify", "--lmax", "6", "--format", "json"]).stdout).unwrap();
    assert!(stamped["timestamp"].as_str().unwrap().starts_with("unix:"));
}

#[test]
fn scan_csv_and_output_file() {
    let dir = std::env::temp_dir().join(format!("gl2c-scan-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("scan.csv");
    let o = gl2c(&[
        "scan", "--a-range", "0:2:1", "--b-range", "0:1:0.5", "--lmax", "6", "--output", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header[..4], ["a", "b", "c", "d"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 9);
    let row = |a: f64, b: f64| {
        rows.iter()
            .find(|r| r[0].parse::<f64>().unwrap() == a && r[1].parse::<f64>().unwrap() == b)
            .unwrap()
            .clone()
    };
    assert_eq!(&row(1.0, 0.0)[7], "true");
    assert_eq!(&row(1.0, 0.0)[10], "CASE1");
    assert_eq!(&row(2.0, 1.0)[7], "true");
    let half = row(1.0, 0.5);
    assert_eq!(&half[7], "false");
    assert_eq!(&half[10], "none");
    assert_eq!(half[5].parse::<f64>().unwrap(), 0.25);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn scan_rejects_bad_ranges() {
    for bad in ["1:0:1", "0:1:0", "0:1", "x"] {
        assert_eq!(code(&gl2c(&["scan", "--a-range", bad, "--b-range", "0"])), 2, "{bad}");
    }
}

#[test]
fn scan_workers_agree() {
    let run = |jobs: &str| {
        gl2c(&[
            "scan", "--a-range", "-1:1:0.5", "--b-range", "0:1:0.25", "--lmax", "6", "--jobs", jobs, "--format", "csv",
        ])
        .stdout
    };
    assert_eq!(run("1"), run("3"));
}

#[test]
fn derive_constraints_text_and_json() {
    let o = stdout(&gl2c(&["derive-constraints"]));
    assert!(o.contains("-a + b + c + 2 = 0"), "{o}");
    assert!(o.contains("-b + d = 0"));
    assert!(o.contains("c = a - b - 2"));
    assert!(o.contains("d = b"));
    let v: serde_json::Value =
        serde_json::from_slice(&gl2c(&["derive-constraints", "--format", "json"]).stdout).unwrap();
    assert_eq!(v["constraints"].as_array().unwrap().len(), 2);
    assert_eq!(v["reverse_agrees"], true);
    assert_eq!(code(&gl2c(&["derive-constraints", "--format", "csv"])), 2);
}

#[test]
fn casimir_verdicts() {
    let o = gl2c(&["casimir", "--lmax", "8"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("verdict: PASS"));
    let o = gl2c(&["casimir", "--a", "1", "--b", "1", "--lmax", "8"]);
    assert!(stdout(&o).contains("printed central: false"));
    let o = gl2c(&["casimir", "--lmax", "8", "--floor", "1e9"]);
    assert_eq!(code(&o), 1);
}
