use std::path::Path;
use std::process::{Command, Output};

fn rzl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rzl"))
        .args(args)
        .env_remove("RZL_DIGITS")
        .env_remove("RZL_THREADS")
        .output()
        .expect("rzl runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn rows(path: &Path) -> Vec<Vec<String>> {
    let mut r = csv::ReaderBuilder::new().has_headers(false).from_path(path).unwrap();
    r.records().map(|r| r.unwrap().iter().map(String::from).collect()).collect()
}

/// `"name = value ± err (...)"` → value.
fn printed_value(line: &str) -> f64 {
    line.split(" = ").nth(1).unwrap().split(' ').next().unwrap().parse().unwrap()
}

#[test]
fn riesz_zero() {
    let o = rzl(&["riesz", "zero"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let z: f64 = stdout(&o).trim().parse().unwrap();
    assert!((z - 1.1567116438).abs() < 1e-9, "{z}");
}

#[test]
fn riesz_methods_agree() {
    let series = rzl(&["riesz", "eval", "--x", "1", "--method", "series"]);
    let kummer = rzl(&["riesz", "eval", "--x", "1", "--method", "kummer2"]);
    let (a, b) = (stdout(&series), stdout(&kummer));
    let digits = |s: &str| s.split(" = ").nth(1).unwrap().split(' ').next().unwrap().to_string();
    assert_eq!(digits(&a), digits(&b));
    assert!(a.contains("(series,") && b.contains("(kummer2,"));
}

#[test]
fn riesz_sweep_shows_one_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let o = rzl(&["riesz", "sweep", "--xmax", "20", "--points", "200", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let t = rows(&out);
    assert_eq!(t[0], ["x", "R", "err", "method", "terms"]);
    assert_eq!(t.len(), 201);
    let r: Vec<f64> = t[1..].iter().map(|row| row[1].parse().unwrap()).collect();
    assert_eq!(r.windows(2).filter(|w| (w[0] < 0.0) != (w[1] < 0.0)).count(), 1);
}

#[test]
fn ck_compute() {
    let o = rzl(&["ck", "compute", "--k", "0"]);
    assert!(stdout(&o).starts_with("c_0 = 0.6079271018540266"), "{}", stdout(&o));
    let b = stdout(&rzl(&["ck", "compute", "--k", "64", "--method", "binomial"]));
    let m = stdout(&rzl(&["ck", "compute", "--k", "64", "--method", "moebius"]));
    let value = |s: &str| s.split(" = ").nth(1).unwrap().split(' ').next().unwrap()[..25].to_string();
    assert_eq!(value(&b), value(&m));
    assert!((printed_value(&b) + 0.003421831805).abs() < 1e-12);
}

#[test]
fn ck_sweep_is_thread_count_independent() {
    let dir = tempfile::tempdir().unwrap();
    let (one, two) = (dir.path().join("1.csv"), dir.path().join("2.csv"));
    for (threads, path) in [("1", &one), ("2", &two)] {
        let o = rzl(&[
            "--threads",
            threads,
            "ck",
            "sweep",
            "--kmax",
            "20000",
            "--stride",
            "100",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
    }
    assert_eq!(std::fs::read(&one).unwrap(), std::fs::read(&two).unwrap());
    let t = rows(&one);
    assert_eq!(t[0], ["k", "c_k", "err", "method"]);
    assert_eq!(t.len(), 202);
    assert_eq!(t[1][0], "0");
    assert_eq!(t[201][0], "20000");
}

#[test]
fn verify_identities() {
    let o = rzl(&["verify", "identity", "--which", "altsum"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("PASS") && stdout(&o).contains("0.782527985325384234576688"));
    let o = rzl(&["verify", "identity", "--which", "gf", "--x", "5"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    for which in ["abel", "powerseries", "approx33", "approx34"] {
        let o = rzl(&["--digits", "20", "verify", "identity", "--which", which]);
        assert_eq!(code(&o), 0, "{which}: {}", stdout(&o));
    }
}

#[test]
fn verify_bound_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let summary = dir.path().join("s.csv");
    let o = rzl(&[
        "--digits",
        "20",
        "verify",
        "bound",
        "--kmin",
        "17",
        "--kmax",
        "10000",
        "--summary",
        summary.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).starts_with("PASS bound"));
    let t = rows(&summary);
    assert_eq!(t[0], ["check", "status", "detail"]);
    assert_eq!(t[1][1], "PASS");
}

#[test]
fn failed_verification_exits_one() {
    let o = rzl(&["verify", "all", "--criteria", "7"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("FAIL  7 envelope constant"));
}

#[test]
fn partial_sums_cross_near_91000() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p.csv");
    let o = rzl(&[
        "--digits",
        "15",
        "sums",
        "partial",
        "--kmax",
        "120000",
        "--stride",
        "1000",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let line = stdout(&o).lines().next().unwrap().to_string();
    let k: u64 = line.rsplit(' ').next().unwrap().parse().unwrap();
    assert!((80_000..=100_000).contains(&k), "{line}");
    let t = rows(&out);
    assert_eq!(t[0], ["K", "S_plain", "S_alt", "dist_plain", "dist_alt"]);
    assert_eq!(t.len(), 122);
}

#[test]
fn zero_coefficients() {
    let o = rzl(&["zeros", "coeffs", "--count", "3"]);
    assert_eq!(code(&o), 0);
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(r.headers().unwrap(), vec!["i", "gamma", "a", "b", "modulus"]);
    let recs: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(recs.len(), 3);
    let modulus: f64 = recs[0][4].parse().unwrap();
    assert!((modulus - 7.775063e-5).abs() < 1e-10, "{modulus}");
}

#[test]
fn fit_envelope_on_synthetic_csv() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.csv");
    let mut w = csv::Writer::from_path(&input).unwrap();
    w.write_record(["x", "R", "err", "method", "terms"]).unwrap();
    for i in 0..4000 {
        let x = 10f64.powf(1.0 + 4.0 * i as f64 / 3999.0);
        let y = 2e-3 * x.powf(0.25) * (10.0 * x.ln()).cos();
        w.write_record([x.to_string(), y.to_string(), "0".into(), "series".into(), "0".into()]).unwrap();
    }
    w.flush().unwrap();
    let o = rzl(&["fit", "envelope", "--in", input.to_str().unwrap(), "--window", "100", "100000"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(r.headers().unwrap(), vec!["amplitude", "exponent", "residual"]);
    let rec = r.records().next().unwrap().unwrap();
    let (a, p): (f64, f64) = (rec[0].parse().unwrap(), rec[1].parse().unwrap());
    assert!((a / 2e-3 - 1.0).abs() < 1e-3 && (p - 0.25).abs() < 1e-4, "{a} {p}");
}

#[test]
fn fit_ckdiff_reports_the_measured_exponent() {
    let o = rzl(&["--digits", "20", "fit", "ckdiff", "--kmin", "10000", "--kmax", "100000"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let rec = r.records().next().unwrap().unwrap();
    let p: f64 = rec[1].parse().unwrap();
    assert!((p + 1.75).abs() < 0.1, "{p}");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&rzl(&["riesz"])), 2);
    assert_eq!(code(&rzl(&["riesz", "eval", "--x", "one"])), 2);
    assert_eq!(code(&rzl(&["--digits", "10", "riesz", "zero"])), 2);
    assert_eq!(code(&rzl(&["ck", "compute", "--k", "50", "--method", "spectral"])), 2);
    assert_eq!(code(&rzl(&["ck", "compute", "--k", "5000", "--method", "binomial"])), 3);
    assert_eq!(code(&rzl(&["--mobius-limit", "10", "ck", "compute", "--k", "1000"])), 3);
    assert_eq!(code(&rzl(&["fit", "envelope", "--in", "/nonexistent.csv", "--window", "1", "10"])), 3);
    assert_eq!(code(&rzl(&["--help"])), 0);
    let o = Command::new(env!("CARGO_BIN_EXE_rzl")).args(["riesz", "zero"]).env("RZL_DIGITS", "12").output().unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn float_digits_flag() {
    let o = rzl(&["--float-digits", "6", "zeros", "coeffs"]);
    let text = stdout(&o);
    let row = text.lines().nth(1).unwrap();
    assert_eq!(row, "1,14.1347,0.0000405835,-0.0000663185,0.0000777506");
}
