//! Command-line front end.
//!
//! Subcommands: `zak`, `weyl`, `alpha`, `periodize`, `coeffs`,
//! `verify <suite>`, `benedicks`. Flags: `--grid M,L,a`, `--seed N`,
//! `--tol X`, `--threshold X`, `--in PATH`, `--out PATH`,
//! `--format csv|json`, `--config PATH`, and `--heatmap PATH` on `alpha`.
//!
//! A config file is a JSON object with the same fields; explicit flags win
//! over config values. The grid is resolved as flag, then config, then a
//! self-describing input file, then the default (M, L, a) = (8, 4, 2);
//! when both a flag and a file grid are present they must agree.
//!
//! Exit codes: 0 success (all checks pass), 1 at least one check failed,
//! 2 configuration or input error.

use serde::Deserialize;

use crate::benedicks::{default_v_sample, run_pipeline};
use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::io::{self, Format};
use crate::operator::OperatorMatrix;
use crate::periodization::{is_n_periodic, lattice_coeffs, periodize};
use crate::verify::{run_suite, SUITES};
use crate::weyl::{symbol, weyl};
use crate::zak;

const USAGE: &str = "\
usage: zakweyl <command> [flags]

commands:
  zak         transform a signal file, print the round-trip residual
  weyl        quantize a phase-space function into an operator matrix
  alpha       tabulate the symbol of an operator
  periodize   periodize a factored operator over the lattice
  coeffs      lattice coefficients of an operator over the dual window
  verify <s>  run a check suite; s one of:
              orthonormality, zak, covariance, distribution, lattice-sum,
              kernel, closed-form, window-coeffs, inversion
  benedicks   run the support-argument pipeline on a factored operator

flags:
  --grid M,L,a     grid (default 8,4,2; must match self-describing inputs)
  --seed N         seed for randomized suites (mandatory there)
  --tol X          override every tolerance in a verify suite
  --threshold X    support threshold for benedicks (default 0)
  --in PATH        input file (csv or json by extension)
  --out PATH       output file (default: stdout)
  --format F       output format: csv or json (default csv)
  --config PATH    JSON config; explicit flags win
  --heatmap PATH   with alpha: also write x,y,abs rows for plotting
";

#[derive(Default, Deserialize)]
struct FileConfig {
    grid: Option<GridSpec>,
    seed: Option<u64>,
    tol: Option<f64>,
    threshold: Option<f64>,
    #[serde(rename = "in")]
    input: Option<String>,
    out: Option<String>,
    format: Option<String>,
}

struct Opts {
    grid: Option<GridSpec>,
    seed: Option<u64>,
    tol: Option<f64>,
    threshold: Option<f64>,
    input: Option<String>,
    out: Option<String>,
    format: Option<Format>,
    heatmap: Option<String>,
}

impl Opts {
    fn grid_or_default(&self) -> GridSpec {
        self.grid
            .unwrap_or_else(|| GridSpec::new(8, 4, 2).expect("default grid is valid"))
    }

    /// Reconcile a self-describing file's grid with the requested one.
    fn accept_grid(&self, file_grid: GridSpec) -> Result<GridSpec> {
        match self.grid {
            Some(requested) => {
                requested.expect_same(&file_grid)?;
                Ok(requested)
            }
            None => Ok(file_grid),
        }
    }

    fn input(&self, command: &str) -> Result<&str> {
        self.input
            .as_deref()
            .ok_or_else(|| Error::Config(format!("{command} needs --in PATH")))
    }

    fn format(&self) -> Format {
        self.format.unwrap_or(Format::Csv)
    }

    fn emit(&self, content: &str) -> Result<()> {
        match &self.out {
            Some(path) => io::write_text(path, content),
            None => {
                say(content);
                Ok(())
            }
        }
    }
}

/// Stdout writes discard a broken pipe, so `zakweyl ... | head` exits
/// quietly instead of aborting mid-report.
fn say(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().write_all(text.as_bytes());
}

pub fn run(args: &[String]) -> i32 {
    match dispatch(args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(args: &[String]) -> Result<i32> {
    let mut positional = Vec::new();
    let mut flags: Vec<(String, String)> = Vec::new();
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        if arg == "--help" || arg == "-h" || arg == "help" {
            say(USAGE);
            return Ok(0);
        }
        if let Some(name) = arg.strip_prefix("--") {
            let value = it
                .next()
                .ok_or_else(|| Error::Config(format!("flag --{name} needs a value")))?;
            flags.push((name.to_string(), value.clone()));
        } else {
            positional.push(arg.clone());
        }
    }
    let command = match positional.first() {
        Some(c) => c.clone(),
        None => {
            eprint!("{USAGE}");
            return Err(Error::Config("missing command".into()));
        }
    };
    let opts = resolve_opts(&flags)?;
    match command.as_str() {
        "zak" => cmd_zak(&opts),
        "weyl" => cmd_weyl(&opts),
        "alpha" => cmd_alpha(&opts),
        "periodize" => cmd_periodize(&opts),
        "coeffs" => cmd_coeffs(&opts),
        "verify" => {
            let suite = positional.get(1).cloned().ok_or_else(|| {
                Error::Config(format!("verify needs a suite name: {}", SUITES.join(", ")))
            })?;
            cmd_verify(&opts, &suite)
        }
        "benedicks" => cmd_benedicks(&opts),
        other => Err(Error::Config(format!(
            "unknown command '{other}'; run with --help for usage"
        ))),
    }
}

fn parse_grid_flag(value: &str) -> Result<GridSpec> {
    let parts: Vec<&str> = value.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Config(format!(
            "--grid expects M,L,a; got '{value}'"
        )));
    }
    let nums: Vec<usize> = parts
        .iter()
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| Error::Config(format!("--grid component '{p}' is not an integer")))
        })
        .collect::<Result<_>>()?;
    GridSpec::new(nums[0], nums[1], nums[2])
}

fn resolve_opts(flags: &[(String, String)]) -> Result<Opts> {
    let mut config = FileConfig::default();
    for (name, value) in flags {
        if name == "config" {
            let text = io::read_text(value)?;
            config = serde_json::from_str(&text)?;
            if let Some(g) = &config.grid {
                g.validate()?;
            }
        }
    }
    let mut opts = Opts {
        grid: config.grid,
        seed: config.seed,
        tol: config.tol,
        threshold: config.threshold,
        input: config.input,
        out: config.out,
        format: config.format.as_deref().map(Format::parse).transpose()?,
        heatmap: None,
    };
    for (name, value) in flags {
        match name.as_str() {
            "grid" => opts.grid = Some(parse_grid_flag(value)?),
            "seed" => {
                opts.seed = Some(value.parse::<u64>().map_err(|_| {
                    Error::Config(format!("--seed '{value}' is not an unsigned integer"))
                })?)
            }
            "tol" => {
                opts.tol = Some(value.parse::<f64>().map_err(|_| {
                    Error::Config(format!("--tol '{value}' is not a number"))
                })?)
            }
            "threshold" => {
                opts.threshold = Some(value.parse::<f64>().map_err(|_| {
                    Error::Config(format!("--threshold '{value}' is not a number"))
                })?)
            }
            "in" => opts.input = Some(value.clone()),
            "out" => opts.out = Some(value.clone()),
            "format" => opts.format = Some(Format::parse(value)?),
            "heatmap" => opts.heatmap = Some(value.clone()),
            "config" => {}
            other => {
                return Err(Error::Config(format!(
                    "unknown flag --{other}; run with --help for usage"
                )))
            }
        }
    }
    Ok(opts)
}

fn read_signal(opts: &Opts, path: &str) -> Result<crate::grid::Signal> {
    let text = io::read_text(path)?;
    match Format::detect(path) {
        Format::Json => {
            let s = io::signal_from_json(&text)?;
            opts.accept_grid(s.grid())?;
            Ok(s)
        }
        Format::Csv => io::signal_from_csv(opts.grid_or_default(), &text),
    }
}

/// Accepts a matrix file (csv or json) or a factored-operator JSON file.
fn read_operator(opts: &Opts, path: &str) -> Result<OperatorMatrix> {
    let text = io::read_text(path)?;
    match Format::detect(path) {
        Format::Json if text.contains("\"factors\"") => {
            let x = io::factored_from_json(&text)?;
            opts.accept_grid(x.grid())?;
            Ok(x.to_matrix())
        }
        Format::Json => {
            let t = io::matrix_from_json(&text)?;
            opts.accept_grid(t.grid())?;
            Ok(t)
        }
        Format::Csv => io::matrix_from_csv(opts.grid_or_default(), &text),
    }
}

fn read_factored(opts: &Opts, path: &str) -> Result<crate::operator::FactoredOperator> {
    let text = io::read_text(path)?;
    let x = io::factored_from_json(&text)?;
    opts.accept_grid(x.grid())?;
    Ok(x)
}

fn cmd_zak(opts: &Opts) -> Result<i32> {
    let s = read_signal(opts, opts.input("zak")?)?;
    let z = zak::forward(&s);
    let residual = zak::inverse(&z).sub(&s)?.norm();
    let content = match opts.format() {
        Format::Csv => io::zak_to_csv(&z),
        Format::Json => io::zak_to_json(&z),
    };
    opts.emit(&content)?;
    say(&format!("round-trip residual: {}\n", io::fmt_f64(residual)));
    Ok(0)
}

fn read_phase(opts: &Opts, path: &str) -> Result<crate::weyl::PhaseFunction> {
    let text = io::read_text(path)?;
    let f = match Format::detect(path) {
        Format::Json => io::phase_from_json(&text)?,
        Format::Csv => io::phase_from_csv(&text)?,
    };
    opts.accept_grid(f.grid())?;
    Ok(f)
}

fn cmd_weyl(opts: &Opts) -> Result<i32> {
    let f = read_phase(opts, opts.input("weyl")?)?;
    let t = weyl(&f);
    let content = match opts.format() {
        Format::Csv => io::matrix_to_csv(&t),
        Format::Json => io::matrix_to_json(&t),
    };
    opts.emit(&content)?;
    Ok(0)
}

fn cmd_alpha(opts: &Opts) -> Result<i32> {
    let t = read_operator(opts, opts.input("alpha")?)?;
    let f = symbol(&t);
    let content = match opts.format() {
        Format::Csv => io::phase_to_csv(&f),
        Format::Json => io::phase_to_json(&f),
    };
    opts.emit(&content)?;
    if let Some(path) = &opts.heatmap {
        io::write_text(path, &io::phase_heatmap_csv(&f))?;
    }
    Ok(0)
}

fn cmd_periodize(opts: &Opts) -> Result<i32> {
    let x = read_factored(opts, opts.input("periodize")?)?;
    let tilde = periodize(&x);
    let content = match opts.format() {
        Format::Csv => io::matrix_to_csv(&tilde),
        Format::Json => io::matrix_to_json(&tilde),
    };
    opts.emit(&content)?;
    let (ok, dev) = is_n_periodic(&tilde);
    say(&format!(
        "lattice-periodic: {} (deviation {})\n",
        ok,
        io::fmt_f64(dev)
    ));
    Ok(0)
}

fn cmd_coeffs(opts: &Opts) -> Result<i32> {
    let t = read_operator(opts, opts.input("coeffs")?)?;
    let c = lattice_coeffs(&t);
    let content = match opts.format() {
        Format::Csv => io::coeffs_to_csv(&c),
        Format::Json => io::coeffs_to_json(&c),
    };
    opts.emit(&content)?;
    Ok(0)
}

fn cmd_verify(opts: &Opts, suite: &str) -> Result<i32> {
    let report = run_suite(suite, opts.grid_or_default(), opts.seed, opts.tol)?;
    for c in &report.checks {
        say(&format!(
            "{}: {} (max error {}, tolerance {})\n",
            c.name,
            if c.pass { "PASS" } else { "FAIL" },
            io::fmt_f64(c.max_error),
            io::fmt_f64(c.tolerance)
        ));
    }
    opts.emit(&io::suite_report_to_json(&report))?;
    Ok(if report.pass { 0 } else { 1 })
}

fn cmd_benedicks(opts: &Opts) -> Result<i32> {
    let x = read_factored(opts, opts.input("benedicks")?)?;
    let threshold = opts.threshold.unwrap_or(0.0);
    let sample = default_v_sample(x.grid());
    let report = run_pipeline(&x, threshold, &sample)?;
    let json = io::pipeline_report_to_json(&report);
    let csv = io::pipeline_report_to_csv(&report);
    match &opts.out {
        Some(path) => {
            let (json_path, csv_path) = sibling_paths(path);
            io::write_text(&json_path, &json)?;
            io::write_text(&csv_path, &csv)?;
        }
        None => {
            say(&json);
            say(&csv);
        }
    }
    say(&format!("verdict: {}\n", report.verdict));
    Ok(0)
}

/// `report.json` and `report.csv` from whichever of the two was asked for.
fn sibling_paths(path: &str) -> (String, String) {
    if let Some(stem) = path.strip_suffix(".json") {
        (path.to_string(), format!("{stem}.csv"))
    } else if let Some(stem) = path.strip_suffix(".csv") {
        (format!("{stem}.json"), path.to_string())
    } else {
        (format!("{path}.json"), format!("{path}.csv"))
    }
}
