use super::*;
use crate::analyzer::{constrained_point, fit_closed_form, CaseId, KMatrices};
use crate::param::NumericParams;
use crate::scalar::rat;
use crate::sphere::Evaluator;

fn small(command: &str) -> RunConfig {
    RunConfig {
        command: command.into(),
        lmax: 6,
        reproducible: true,
        ..RunConfig::default()
    }
}

#[test]
fn ranges() {
    let r: Range = "-5:5:0.1".parse().unwrap();
    assert_eq!(r.len(), 101);
    let pts = r.points();
    assert_eq!(pts[0], rat(-5, 1));
    assert_eq!(pts[60], rat(1, 1));
    assert_eq!(pts[100], rat(5, 1));
    assert_eq!("2".parse::<Range>().unwrap().points(), vec![rat(2, 1)]);
    assert_eq!("0:1:1/3".parse::<Range>().unwrap().len(), 4);
    assert!(matches!("1:0:1".parse::<Range>(), Err(ConfigError::RangeEmpty(_))));
    assert!(matches!("0:1:0".parse::<Range>(), Err(ConfigError::RangeEmpty(_))));
    assert!(matches!("0:1:-1".parse::<Range>(), Err(ConfigError::RangeEmpty(_))));
    assert!(matches!("0:x:1".parse::<Range>(), Err(ConfigError::RangeSyntax(_))));
    assert!(matches!("0:1".parse::<Range>(), Err(ConfigError::RangeSyntax(_))));
}

#[test]
fn config_validation() {
    assert!(RunConfig::default().validate().is_ok());
    let bad = |f: fn(&mut RunConfig)| {
        let mut c = RunConfig::default();
        f(&mut c);
        c.validate().unwrap_err()
    };
    assert_eq!(bad(|c| c.lmax = 1), ConfigError::Lmax(1));
    assert!(matches!(bad(|c| c.tolerance = 0.0), ConfigError::Tolerance(_)));
    assert!(matches!(bad(|c| c.tolerance = f64::NAN), ConfigError::Tolerance(_)));
    assert!(matches!(bad(|c| c.casimir_floor = -1.0), ConfigError::Floor(_)));
    assert_eq!(bad(|c| c.jobs = 0), ConfigError::Jobs);
    assert_eq!("csv".parse::<Format>().unwrap(), Format::Csv);
    assert!("xml".parse::<Format>().is_err());
}

#[test]
fn verify_passes_and_round_trips() {
    let r = run_verify(&small("verify")).unwrap();
    assert!(r.passed(), "{}", render_verify(&r));
    assert!(r.timestamp.is_none());
    assert_eq!(r.schema_version, SCHEMA_VERSION);
    let json = r.to_json();
    assert_eq!(VerificationReport::from_json(&json).unwrap(), r);
    assert_eq!(run_verify(&small("verify")).unwrap().to_json(), json);
    let text = render_verify(&r);
    assert!(text.contains("PASS commutator.match"));
    assert!(text.contains("overall: PASS"));
}

#[test]
fn verify_fails_at_unattainable_tolerance() {
    let mut c = small("verify");
    c.tolerance = 1e-30;
    let r = run_verify(&c).unwrap();
    assert!(!r.passed());
    assert!(r.failures().all(|f| f.residual.is_some_and(|x| x > 1e-30)));
}

#[test]
fn verify_at_small_lmax() {
    let mut c = small("verify");
    c.lmax = 4;
    assert!(run_verify(&c).unwrap().passed());
}

#[test]
fn timestamp_unless_reproducible() {
    let mut c = small("verify");
    assert!(timestamp(&c).is_none());
    c.reproducible = false;
    assert!(timestamp(&c).unwrap().starts_with("unix:"));
}

fn scan_config(a: &str, b: &str, jobs: usize) -> RunConfig {
    RunConfig {
        command: "scan".into(),
        lmax: 8,
        jobs,
        reproducible: true,
        a_range: Some(a.parse().unwrap()),
        b_range: Some(b.parse().unwrap()),
        ..RunConfig::default()
    }
}

#[test]
fn scan_rows() {
    let r = run_scan(&scan_config("0:2:0.5", "0:1:0.5", 1)).unwrap();
    assert_eq!(r.rows.len(), 15);
    let find = |a: f64, b: f64| r.rows.iter().find(|x| x.a == a && x.b == b).unwrap();
    let one_zero = find(1.0, 0.0);
    assert!(one_zero.closed && one_zero.closed_exact && one_zero.matrix_closed);
    assert_eq!(one_zero.case, Some(CaseId::Case1));
    let two_one = find(2.0, 1.0);
    assert!(two_one.closed && two_one.matrix_closed);
    assert_eq!(two_one.case, Some(CaseId::Case2));
    let half = find(1.0, 0.5);
    assert!(!half.closed && !half.closed_exact && !half.matrix_closed);
    assert!(half.closure.iter().any(|v| (v - 0.25).abs() < 1e-15));
    for row in &r.rows {
        assert_eq!(row.closed, row.closed_exact);
        assert_eq!(row.closed, row.matrix_closed, "{row:?}");
    }
}

#[test]
fn scan_is_independent_of_workers() {
    let one = run_scan(&scan_config("-1:1:0.25", "0:1:0.25", 1)).unwrap();
    let three = run_scan(&scan_config("-1:1:0.25", "0:1:0.25", 3)).unwrap();
    assert_eq!(one.to_json().replace("\"jobs\": 1", "\"jobs\": 3"), three.to_json());
}

#[test]
fn scan_residual_matches_direct_evaluation() {
    let plan = ScanPlan::new(8).unwrap();
    let ev = Evaluator::new(8);
    for (a, b) in [(rat(1, 1), rat(0, 1)), (rat(-7, 3), rat(1, 2)), (rat(5, 2), rat(1, 1)), (rat(3, 1), rat(-2, 1))] {
        let k = KMatrices::new(&ev, &NumericParams::from_exact(&constrained_point(&a, &b))).unwrap();
        let direct = fit_closed_form(&k.plus.commutator(&k.minus), 2).unwrap().residual;
        let fast = plan.residual(crate::scalar::rational_to_f64(&a), crate::scalar::rational_to_f64(&b));
        assert!((direct - fast).abs() <= 1e-10 * direct.max(1.0), "{direct} vs {fast}");
    }
}

#[test]
fn scan_csv_layout() {
    let r = run_scan(&scan_config("1", "0:1:1", 1)).unwrap();
    let csv = render_scan_csv(&r);
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), CSV_COLUMNS.join(","));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "1.0000000000000000e0");
    assert_eq!(first[2], "-1.0000000000000000e0");
    assert_eq!(first[10], "CASE1");
    assert_eq!(lines.count(), 1);
}

#[test]
fn scan_rejects_bad_config() {
    let mut c = scan_config("0:1:1", "0:1:1", 1);
    c.lmax = 1;
    assert!(run_scan(&c).is_err());
}

#[test]
fn constraint_report() {
    let r = ConstraintReport::build().unwrap();
    assert_eq!(r.constraints.len(), 2);
    let text = render_constraints(&r);
    assert!(text.contains("a=3/2"));
    assert!(text.contains("!"));
    let json = serde_json::to_string(&r).unwrap();
    assert_eq!(serde_json::from_str::<ConstraintReport>(&json).unwrap(), r);
}

#[test]
fn classify_rendering() {
    let r = crate::analyzer::classify(&rat(1, 1), &rat(0, 1), 6).unwrap();
    let text = render_classify(&r);
    assert!(text.contains("G(-1,0)"));
    assert!(text.contains("su(1,1)-type"));
    let r = crate::analyzer::classify(&rat(1, 1), &rat(1, 2), 6).unwrap();
    assert!(render_classify(&r).contains("NOT CLOSED"));
}
