use std::fs;
use std::process::{Command, Output};

use clap::Parser;
use sbfe::assignment::PartialAssignment;
use sbfe::distribution::{CostVector, ProductDistribution};
use sbfe::utility::Utility;
use sbfe_cli::verify::Fixture;
use sbfe_cli::{run_with, Cli};

fn sbfe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sbfe"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.records()
        .map(|rec| rec.unwrap().iter().map(str::to_string).collect())
        .collect()
}

#[test]
fn gen_threshold_echoes_schema() {
    let o = sbfe(&["gen", "threshold:n=6", "--seed", "3"]);
    assert!(o.status.success());
    let inst = sbfe::format::parse_instance(&stdout(&o)).unwrap();
    let sbfe::format::Problem::Threshold(f) = &inst.problem else {
        panic!("threshold expected")
    };
    assert_eq!(f.coeffs().len(), 6);
    assert_eq!(inst.d.len(), 6);
    assert_eq!(inst.c.len(), 6);
}

#[test]
fn gen_cdnf_has_requested_shape() {
    let o = sbfe(&["gen", "cdnf:n=5,k=3,d=2", "--seed", "3"]);
    let inst = sbfe::format::parse_instance(&stdout(&o)).unwrap();
    let sbfe::format::Problem::Cdnf(f) = &inst.problem else {
        panic!("cdnf expected")
    };
    assert_eq!((f.num_clauses(), f.num_terms()), (3, 2));
}

#[test]
fn gen_is_byte_identical_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.toml");
    let b = dir.path().join("b.toml");
    for p in [&a, &b] {
        assert!(sbfe(&[
            "gen",
            "ranking:n=4,m=3,dups=1",
            "--seed",
            "11",
            "--out",
            p.to_str().unwrap()
        ])
        .status
        .success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let c = stdout(&sbfe(&["gen", "ranking:n=4,m=3,dups=1", "--seed", "12"]));
    assert_ne!(fs::read_to_string(&a).unwrap(), c);
}

#[test]
fn gen_count_writes_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("battery");
    let o = sbfe(&[
        "gen",
        "knapsack:n=5",
        "--seed",
        "1",
        "--count",
        "4",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(fs::read_dir(&out).unwrap().count(), 4);
}

#[test]
fn invalid_spec_lists_fields() {
    let o = sbfe(&["gen", "cdnf:n=0,k=x,q=1", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains('k') && err.contains('q'), "{err}");
}

#[test]
fn threshold_adg_row_within_three() {
    let o = sbfe(&[
        "eval",
        "--gen",
        "threshold:n=7",
        "--count",
        "5",
        "--seed",
        "9",
        "--engine",
        "adg",
    ]);
    assert!(o.status.success());
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 5);
    for r in rows {
        assert_eq!(r[3], "adg");
        let ratio: f64 = r[6].parse().unwrap();
        assert!(ratio <= 3.0 + 1e-6);
        assert_eq!(r[7], "3.0");
        assert_eq!(r[9], "true");
    }
}

#[test]
fn baseline_within_n() {
    for spec in [
        "cdnf:n=6,k=2,d=3",
        "thresholds:n=5,m=2",
        "ranking:n=4,m=3,dups=0",
        "knapsack:n=8",
    ] {
        let o = sbfe(&[
            "eval", "--gen", spec, "--count", "3", "--seed", "4", "--engine", "baseline",
        ]);
        assert!(o.status.success(), "{spec}");
        for r in csv_rows(&stdout(&o)) {
            let n: f64 = r[2].parse().unwrap();
            let ratio: f64 = r[6].parse().unwrap();
            assert!(ratio <= n + 1e-6, "{spec}: {r:?}");
            assert_eq!(r[9], "true");
        }
    }
}

#[test]
fn report_columns_and_determinism() {
    let args = [
        "eval",
        "--gen",
        "truth-table:n=5",
        "--count",
        "4",
        "--seed",
        "2",
        "--format",
        "csv",
    ];
    let a = stdout(&sbfe(&args));
    let b = stdout(&sbfe(&args));
    assert_eq!(a, b);
    assert_eq!(
        a.lines().next().unwrap(),
        "instance-id,kind,n,engine,expected_cost,opt,ratio,bound,alpha,pass"
    );
    let json = stdout(&sbfe(&[
        "eval",
        "--gen",
        "truth-table:n=5",
        "--count",
        "4",
        "--seed",
        "2",
        "--format",
        "json",
    ]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 12);
}

#[test]
fn parse_errors_report_lines() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.toml");
    fs::write(&p, "format = \"sbfe-1\"\nkind = \"threshold\"\nn = 2\ncoefficients = [1, 2, 3]\ntheta = 1\np = [0.5, 0.5]\nc = [1.0, 1.0]\n").unwrap();
    let o = sbfe(&["eval", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn oracle_limit_leaves_opt_blank() {
    let o = sbfe(&[
        "eval",
        "--gen",
        "threshold:n=8",
        "--seed",
        "1",
        "--max-n",
        "6",
        "--engine",
        "greedy",
    ]);
    assert!(o.status.success());
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows[0][5], "");
    assert_eq!(rows[0][9], "");
}

#[test]
fn gap_demo_matches_harmonic_numbers() {
    let o = sbfe(&["gap-demo"]);
    assert!(o.status.success());
    let rows = csv_rows(&stdout(&o));
    let expected = [(4, 25.0 / 12.0), (8, 2.717857142857143), (16, 3.380728993228993)];
    for (r, (n, h)) in rows.iter().zip(expected) {
        assert_eq!(r[0], n.to_string());
        assert!((r[1].parse::<f64>().unwrap() - h).abs() < 1e-6);
        assert!(r[3].parse::<f64>().unwrap() < 2.0);
    }
}

#[test]
fn default_battery_passes() {
    let o = sbfe(&["verify", "--seed", "5", "--count", "6", "--max-n", "8"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = csv_rows(&stdout(&o));
    assert!(rows.iter().all(|r| r[6] == "true"));
    for check in ["axioms", "goal-certificate", "dual", "ratio:adg"] {
        assert!(rows.iter().any(|r| r[0] == check), "{check}");
    }
}

#[test]
fn verify_needs_seed() {
    assert_eq!(sbfe(&["verify"]).status.code(), Some(2));
}

#[test]
fn dual_check_at_n10_is_quick() {
    let start = std::time::Instant::now();
    let o = sbfe(&[
        "verify", "--seed", "8", "--count", "10", "--max-n", "10", "--suite", "dual",
    ]);
    assert!(o.status.success());
    assert!(start.elapsed().as_secs() < 60);
}

/// Jumps to its goal only once the last item is tested after all others.
struct LastTestJump(usize);

impl Utility for LastTestJump {
    fn arity(&self) -> usize {
        self.0
    }
    fn goal(&self) -> u64 {
        2
    }
    fn value(&self, b: &PartialAssignment) -> u64 {
        match (b.num_tested(), b.is_full()) {
            (_, true) => 2,
            (0, _) => 0,
            _ if b.is_tested(self.0 - 1) => 0,
            _ => 1,
        }
    }
}

#[test]
fn broken_fixture_fails_with_counterexample() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.csv");
    let cli = Cli::parse_from([
        "sbfe",
        "verify",
        "--seed",
        "1",
        "--count",
        "2",
        "--suite",
        "axioms",
        "--out",
        out.to_str().unwrap(),
    ]);
    let fixture = Fixture {
        id: "broken".into(),
        kind: "fixture".into(),
        utility: Box::new(LastTestJump(3)),
        function: None,
        d: ProductDistribution::uniform(3).unwrap(),
        c: CostVector::unit(3).unwrap(),
    };
    assert!(!run_with(cli, &[fixture]).unwrap());
    let rows = csv_rows(&fs::read_to_string(&out).unwrap());
    let bad: Vec<_> = rows.iter().filter(|r| r[6] == "false").collect();
    assert_eq!(bad.len(), 1);
    assert_eq!(bad[0][1], "broken");
    assert!(
        bad[0][5].contains("Monotone") || bad[0][5].contains("Submodular"),
        "{}",
        bad[0][5]
    );
}
