//! Black-box tests of the `ocl-forge` binary: verb behavior, file formats,
//! pipelines across verbs, and exit codes.

use std::io::Write;
use std::path::PathBuf;
use std::process::Command;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ocl-forge"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn temp_file(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f
}

#[test]
fn unwrap_writes_exponent_grid() {
    let (code, stdout, _) = run(&["unwrap", "--qc", &data("tanner155.qc")]);
    assert_eq!(code, 0);
    assert_eq!(
        stdout,
        "exp m=31 rows=3 cols=5\n1 2 4 8 16\n5 10 20 9 18\n25 19 7 14 28\n"
    );
}

#[test]
fn shift_then_out_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("shifted.exp");
    let (code, stdout, _) = run(&[
        "shift",
        "--qc",
        &data("tanner155.qc"),
        "--shifts",
        "1,5,25",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "");
    let written = std::fs::read_to_string(&out).unwrap();
    assert_eq!(
        written,
        "exp m=31 rows=3 cols=5\n0 1 3 7 15\n0 5 15 4 13\n0 25 13 20 3\n"
    );
    // the written file feeds straight into reduce --exp
    let (code, report, _) = run(&["reduce", "--exp", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(report.starts_with("exp m=31 rows=3 cols=5\n"));
    assert!(report.contains("\nocl: 48\n"));
}

#[test]
fn reduce_poly_report() {
    // h1 is already delay free, so reduce reports it unchanged
    let (code, report, _) = run(&["reduce", "--poly", &data("h1.poly")]);
    assert_eq!(code, 0);
    assert_eq!(
        report,
        "poly rows=2 cols=3\nD^2, D^2, 1\n1, 1+D+D^2, 0\nrow_delays: 0 0\ncol_delays: 0 0 0\nreversed: false\nocl: 4\n"
    );
}

#[test]
fn reduce_double_reports_both_ocls() {
    let exp = temp_file("exp m=31 rows=3 cols=5\n16 17 19 23 0\n18 23 2 22 0\n28 22 10 17 0\n");
    let (code, report, _) = run(&[
        "reduce",
        "--exp",
        exp.path().to_str().unwrap(),
        "--double",
    ]);
    assert_eq!(code, 0);
    assert!(report.contains("mu: 35\nmu_prime: 34\n"));
    assert!(report.contains("reversed: true\n"));
    assert!(report.contains("ocl: 34\n"));
}

#[test]
fn reduce_reciprocal_eta_pipeline() {
    let (code, report, _) = run(&["reduce", "--poly", &data("h2.poly"), "--reciprocal"]);
    assert_eq!(code, 0);
    assert_eq!(
        report,
        "poly rows=2 cols=3\n1, 0, 1\nD, 1+D, 0\nrow_delays: 0 0\ncol_delays: 0 0 1\nreversed: true\nocl: 1\n"
    );
}

#[test]
fn sweep_summary_csv_and_histogram() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("per_pattern.csv");
    let hist_path = dir.path().join("mu.csv");
    let (code, stdout, _) = run(&[
        "sweep",
        "--qc",
        &data("tanner155.qc"),
        "--per-pattern",
        csv_path.to_str().unwrap(),
        "--hist",
        &format!("mu={}", hist_path.to_str().unwrap()),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("patterns: 125\n"));
    assert!(stdout.contains("mu: min 35 max 83\n"));
    assert!(stdout.contains("eta: min 31 max 85\n"));

    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 126);
    assert_eq!(lines[0], "i,j,k,mu,eta,mu_prime,delta_mu,spreads");
    let min_mu = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(3).unwrap().parse::<usize>().unwrap())
        .min()
        .unwrap();
    assert_eq!(min_mu, 35);

    let hist = std::fs::read_to_string(&hist_path).unwrap();
    assert!(hist.starts_with("value,count\n35,"));
    let total: usize = hist
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse::<usize>().unwrap())
        .sum();
    assert_eq!(total, 125);
}

#[test]
fn sweep_delta_filters_csv_only() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("admitted.csv");
    let (code, stdout, _) = run(&[
        "sweep",
        "--qc",
        &data("tanner155.qc"),
        "--delta",
        "20",
        "--per-pattern",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("delta: 20 admits "));
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let rows = csv.lines().count() - 1;
    assert!(rows < 125 && rows > 0);
    for line in csv.lines().skip(1) {
        let spreads = line.rsplit(',').next().unwrap();
        assert!(spreads.split(';').all(|s| s.parse::<usize>().unwrap() <= 20));
    }
}

#[test]
fn syndrome_of_published_error_sequence() {
    let (code, stdout, _) = run(&[
        "syndrome",
        "--poly",
        &data("h2.poly"),
        "--input",
        "010 011 000 001 000",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "01 10 01 10 00\n");
}

#[test]
fn trellis_paths_published_example() {
    let (code, stdout, _) = run(&[
        "trellis",
        "paths",
        "--poly",
        &data("h2.poly"),
        "--syndrome",
        "01 10 01 10 00",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        stdout,
        "w=4 010 011 000 001 000\n\
         w=5 010 101 101 000 000\n\
         w=2 100 000 100 000 000\n\
         w=5 100 110 001 001 000\n"
    );
}

#[test]
fn trellis_decode_received_sequence() {
    let (code, stdout, _) = run(&[
        "trellis",
        "decode",
        "--poly",
        &data("h2.poly"),
        "--received",
        "010 011 000 001 000",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        stdout,
        "w=2 100 000 100 000 000\ndecoded: 110 011 100 001 000\n"
    );
}

#[test]
fn trellis_flush_zero_admits_unterminated_paths() {
    let (code, stdout, _) = run(&[
        "trellis",
        "paths",
        "--poly",
        &data("h2.poly"),
        "--syndrome",
        "01 10 01 10 00",
        "--flush",
        "0",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout.lines().count(), 8);
    // the four terminated paths are still among them
    for line in [
        "w=4 010 011 000 001 000",
        "w=2 100 000 100 000 000",
    ] {
        assert!(stdout.lines().any(|l| l == line), "missing {}", line);
    }
}

#[test]
fn exit_code_1_on_usage_errors() {
    let (code, _, _) = run(&["reduce"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["no-such-verb"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["--help"]);
    assert_eq!(code, 0);
}

#[test]
fn exit_code_2_on_bad_input() {
    let bad = temp_file("poly rows=1 cols=2\n1\n");
    let (code, _, stderr) = run(&["reduce", "--poly", bad.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stderr.starts_with("error: "));

    let (code, _, _) = run(&["unwrap", "--qc", "/nonexistent/file.qc"]);
    assert_eq!(code, 2);

    let (code, _, _) = run(&[
        "syndrome",
        "--poly",
        &data("h2.poly"),
        "--input",
        "01x 000",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn exit_code_3_on_infeasible_trellis() {
    // state cap below 2^2 makes even the small example infeasible
    let (code, _, stderr) = run(&[
        "trellis",
        "paths",
        "--poly",
        &data("h2.poly"),
        "--syndrome",
        "00 00",
        "--state-cap",
        "2",
    ]);
    assert_eq!(code, 3);
    assert!(stderr.contains("error: "));

    // a syndrome nobody can emit from and back to the zero state
    let (code, _, _) = run(&[
        "trellis",
        "paths",
        "--poly",
        &data("h2.poly"),
        "--syndrome",
        "10",
        "--flush",
        "1",
    ]);
    assert_eq!(code, 3);
}
