//! Drives the compiled binary end to end: exit codes, file round trips,
//! determinism of written reports, and config resolution.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zakweyl::{io, zak, FactoredOperator, GridSpec, Signal};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zakweyl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("zakweyl-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    dir
}

fn write(path: &Path, content: &str) {
    std::fs::write(path, content).expect("write input");
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).expect("read output")
}

fn grid() -> GridSpec {
    GridSpec::new(8, 4, 2).unwrap()
}

#[test]
fn help_lists_every_command() {
    let out = run(&["--help"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for needle in ["zak", "weyl", "alpha", "periodize", "coeffs", "verify", "benedicks", "--grid"] {
        assert!(text.contains(needle), "usage is missing {needle}");
    }
}

#[test]
fn missing_command_exits_two() {
    let out = run(&[]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("missing command"));
}

#[test]
fn unknown_flags_exit_two() {
    let out = run(&["zak", "--frobnicate", "1"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("unknown flag"));
}

#[test]
fn verify_passes_and_writes_a_parsable_report() {
    let dir = scratch("verify-pass");
    let report_path = dir.join("report.json");
    let out = run(&[
        "verify",
        "orthonormality",
        "--out",
        report_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("PASS"));
    let report = io::suite_report_from_json(&read(&report_path)).unwrap();
    assert!(report.pass);
    assert_eq!(report.suite, "orthonormality");
}

#[test]
fn randomized_suites_require_a_seed() {
    let out = run(&["verify", "zak"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("seed"));
}

#[test]
fn impossible_tolerance_exits_one() {
    let out = run(&["verify", "zak", "--seed", "5", "--tol", "1e-300"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn reports_are_byte_identical_across_invocations() {
    let dir = scratch("determinism");
    let mut bytes = Vec::new();
    for name in ["r1.json", "r2.json"] {
        let path = dir.join(name);
        let out = run(&[
            "verify",
            "covariance",
            "--grid",
            "8,4,2",
            "--seed",
            "9",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
        bytes.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(bytes[0], bytes[1]);
}

#[test]
fn zak_subcommand_matches_the_library_bit_for_bit() {
    let dir = scratch("zak-round-trip");
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let s = Signal::random(grid(), &mut rng);
    let in_path = dir.join("signal.csv");
    let out_path = dir.join("zak.csv");
    write(&in_path, &io::signal_to_csv(&s));
    let out = run(&[
        "zak",
        "--in",
        in_path.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let line = stdout(&out);
    assert!(line.starts_with("round-trip residual:"), "got {line}");
    let residual: f64 = line
        .trim()
        .rsplit(' ')
        .next()
        .unwrap()
        .parse()
        .expect("parsable residual");
    assert!(residual < 1e-12);
    let z = io::zak_from_csv(grid(), &read(&out_path)).unwrap();
    assert_eq!(z.max_abs_diff(&zak::forward(&s)), 0.0);
}

#[test]
fn malformed_csv_mentions_the_line() {
    let dir = scratch("malformed");
    let in_path = dir.join("signal.csv");
    write(&in_path, "0.5,0.25\nnot-a-number,1\n");
    let out = run(&["zak", "--in", in_path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 2"), "stderr: {}", stderr(&out));
}

#[test]
fn self_describing_inputs_must_match_the_grid_flag() {
    let dir = scratch("grid-mismatch");
    let in_path = dir.join("signal.json");
    let mut rng = ChaCha8Rng::seed_from_u64(78);
    write(&in_path, &io::signal_to_json(&Signal::random(grid(), &mut rng)));
    let out = run(&["zak", "--in", in_path.to_str().unwrap(), "--grid", "16,4,4"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("grid"), "stderr: {}", stderr(&out));
}

#[test]
fn config_files_supply_defaults_and_flags_override() {
    let dir = scratch("config");
    let cfg_path = dir.join("cfg.json");
    write(
        &cfg_path,
        "{\"grid\":{\"M\":8,\"L\":4,\"a\":2},\"seed\":9}\n",
    );
    let report_path = dir.join("report.json");
    let out = run(&[
        "verify",
        "zak",
        "--config",
        cfg_path.to_str().unwrap(),
        "--out",
        report_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let report = io::suite_report_from_json(&read(&report_path)).unwrap();
    assert_eq!(report.seed, Some(9));

    let out = run(&[
        "verify",
        "zak",
        "--config",
        cfg_path.to_str().unwrap(),
        "--seed",
        "10",
        "--out",
        report_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let report = io::suite_report_from_json(&read(&report_path)).unwrap();
    assert_eq!(report.seed, Some(10));
}

#[test]
fn benedicks_subcommand_runs_the_pipeline_end_to_end() {
    let dir = scratch("pipeline");
    let mut rng = ChaCha8Rng::seed_from_u64(79);
    let x = FactoredOperator::random(grid(), 1, &mut rng);
    let in_path = dir.join("x.json");
    write(&in_path, &io::factored_to_json(&x));
    let json_path = dir.join("report.json");
    let out = run(&[
        "benedicks",
        "--in",
        in_path.to_str().unwrap(),
        "--out",
        json_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("verdict: nonzero"));
    let report = io::pipeline_report_from_json(&read(&json_path)).unwrap();
    assert_eq!(report.verdict.label(), "nonzero");
    assert_eq!(report.records.len(), 64);
    let csv = read(&dir.join("report.csv"));
    assert!(csv.starts_with("v_x,v_y,section_size"));
    assert_eq!(csv.lines().count(), 65);
}
