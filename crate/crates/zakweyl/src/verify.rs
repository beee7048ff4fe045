//! Named check suites over every identity the crate implements.
//!
//! Each suite draws its inputs from a caller-supplied seed (mandatory
//! whenever randomness is involved), measures a worst-case error per check,
//! and reports name, max error, tolerance and pass flag. The same suites
//! back the `verify` subcommand of the binary and the acceptance tests, so
//! a green suite here is the same statement as a green acceptance run.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{GridSpec, Signal};
use crate::heisenberg::{GroupElement, LatticeSpec, PhasePoint};
use crate::nullfield::kernel_vector;
use crate::operator::{FactoredOperator, OperatorMatrix};
use crate::periodization::{
    distribution_fractions, full_lattice_sum, lattice_coeffs, mult_op, mult_op_coeff, periodize,
    trace_tau_map, OmegaFunction,
};
use crate::weyl::{self, symbol, symbol_at, PhaseFunction};
use crate::zak;

/// The available suite names, in the order `verify` lists them.
pub const SUITES: &[&str] = &[
    "orthonormality",
    "zak",
    "covariance",
    "distribution",
    "lattice-sum",
    "kernel",
    "closed-form",
    "window-coeffs",
    "inversion",
];

/// Whether a suite draws random inputs and therefore requires a seed.
pub fn suite_needs_seed(name: &str) -> bool {
    name != "orthonormality"
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub max_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckResult {
    fn new(name: &str, max_error: f64, tolerance: f64) -> Self {
        CheckResult {
            name: name.to_string(),
            max_error,
            tolerance,
            pass: max_error <= tolerance,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub grid: GridSpec,
    pub seed: Option<u64>,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

impl SuiteReport {
    fn assemble(suite: &str, grid: GridSpec, seed: Option<u64>, checks: Vec<CheckResult>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        SuiteReport {
            suite: suite.to_string(),
            grid,
            seed,
            checks,
            pass,
        }
    }
}

/// Runs one suite. `tol` overrides the default tolerance of every check in
/// the suite; randomized suites refuse to run without a seed.
pub fn run_suite(
    name: &str,
    grid: GridSpec,
    seed: Option<u64>,
    tol: Option<f64>,
) -> Result<SuiteReport> {
    if suite_needs_seed(name) && seed.is_none() {
        return Err(Error::SeedRequired(name.to_string()));
    }
    let checks = match name {
        "orthonormality" => orthonormality_checks(grid, tol),
        "zak" => zak_checks(grid, seed.unwrap(), tol),
        "covariance" => covariance_checks(grid, seed.unwrap(), tol),
        "distribution" => distribution_checks(grid, seed.unwrap(), tol),
        "lattice-sum" => lattice_sum_checks(grid, seed.unwrap(), tol),
        "kernel" => kernel_checks(grid, seed.unwrap(), tol),
        "closed-form" => closed_form_checks(grid, seed.unwrap(), tol),
        "window-coeffs" => window_coeffs_checks(grid, seed.unwrap(), tol),
        "inversion" => inversion_checks(grid, seed.unwrap(), tol),
        other => {
            return Err(Error::UnknownSuite(format!(
                "'{other}'; available: {}",
                SUITES.join(", ")
            )))
        }
    };
    Ok(SuiteReport::assemble(name, grid, seed, checks))
}

fn tol_or(tol: Option<f64>, default: f64) -> f64 {
    tol.unwrap_or(default)
}

fn random_group_element<R: Rng>(grid: GridSpec, rng: &mut R) -> GroupElement {
    let d = grid.dim() as i64;
    let point = PhasePoint::new(
        grid,
        rng.gen_range(-2 * d..2 * d),
        rng.gen_range(-2 * d..2 * d),
    );
    let angle = rng.gen_range(0.0..std::f64::consts::TAU);
    GroupElement::new(point, Complex64::from_polar(1.0, angle)).expect("unit scalar")
}

/// tau(rho(n',1) rho(m',1)^*) = delta over Nyquist-interior window pairs.
fn orthonormality_checks(grid: GridSpec, tol: Option<f64>) -> Vec<CheckResult> {
    let lat = LatticeSpec::new(grid);
    let interior: Vec<PhasePoint> = (0..grid.dual_k_count())
        .flat_map(|k| (0..grid.samples_per_unit()).map(move |l| (k, l)))
        .filter(|&(k, l)| lat.nyquist_interior(k, l))
        .map(|(k, l)| lat.dual_point(k, l).expect("window index"))
        .collect();
    let mut max_err = 0.0f64;
    for n in &interior {
        let rho_n = n.lift();
        for m in &interior {
            let elem = rho_n.compose(&m.lift().inverse()).expect("same grid");
            let tau = trace_tau_map(grid, |s| elem.apply(s)).expect("same grid");
            let delta = if n == m { 1.0 } else { 0.0 };
            max_err = max_err.max((tau - delta).norm());
        }
    }
    vec![CheckResult::new(
        "pairwise delta",
        max_err,
        tol_or(tol, 1e-10),
    )]
}

/// Norm preservation and round trips of the Zak transform.
fn zak_checks(grid: GridSpec, seed: u64, tol: Option<f64>) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut norm_err = 0.0f64;
    let mut trip_err = 0.0f64;
    for _ in 0..100 {
        let phi = Signal::random(grid, &mut rng);
        let z = zak::forward(&phi);
        norm_err = norm_err.max((z.weighted_norm() / phi.norm() - 1.0).abs());
        trip_err = trip_err.max(zak::inverse(&z).sub(&phi).expect("same grid").norm());
    }
    vec![
        CheckResult::new("unitarity", norm_err, tol_or(tol, 1e-12)),
        CheckResult::new("round trip", trip_err, tol_or(tol, 1e-12)),
    ]
}

/// Z(rho(g) phi) against the phase-and-shift formula.
fn covariance_checks(grid: GridSpec, seed: u64, tol: Option<f64>) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_err = 0.0f64;
    for _ in 0..100 {
        let g = random_group_element(grid, &mut rng);
        let phi = Signal::random(grid, &mut rng);
        max_err = max_err.max(zak::covariance_error(&g, &phi).expect("same grid"));
    }
    vec![CheckResult::new(
        "phase and shift",
        max_err,
        tol_or(tol, 1e-10),
    )]
}

/// Distribution function of a multiplication operator two ways.
fn distribution_checks(grid: GridSpec, seed: u64, tol: Option<f64>) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let levels = [0.0, 0.3, 0.7, 1.1, 1.6];
    let mut frac_err = 0.0f64;
    let mut count_err = 0.0f64;
    let d = grid.dim() as f64;
    for _ in 0..10 {
        let g = OmegaFunction::random_step(grid, &levels, &mut rng);
        for i in 0..32 {
            let lambda = 1.8 * i as f64 / 31.0;
            let (by_count, by_trace) = distribution_fractions(&g, lambda);
            frac_err = frac_err.max((by_count - by_trace).abs());
            let cells = (by_count * d).round() as i64;
            let cells_trace = (by_trace * d).round() as i64;
            count_err = count_err.max((cells - cells_trace).abs() as f64);
        }
    }
    vec![
        CheckResult::new("fraction agreement", frac_err, tol_or(tol, 1e-12)),
        CheckResult::new("integer counts", count_err, tol_or(tol, 0.0)),
    ]
}

/// The full lattice sum is a single constant kappa times the partial
/// periodization, and kappa is 1/a.
fn lattice_sum_checks(grid: GridSpec, seed: u64, tol: Option<f64>) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut kappa = 0.0f64;
    let mut entry_err = 0.0f64;
    for i in 0..10 {
        let x = FactoredOperator::random(grid, 1, &mut rng);
        let partial = periodize(&x);
        let full = full_lattice_sum(&x);
        if i == 0 {
            let mut num = Complex64::new(0.0, 0.0);
            let mut den = 0.0f64;
            for (f, p) in full.entries().iter().zip(partial.entries()) {
                num += f * p.conj();
                den += p.norm_sqr();
            }
            kappa = (num / den).re;
        }
        let scaled = partial.scaled(Complex64::new(kappa, 0.0));
        entry_err = entry_err.max(full.max_abs_diff(&scaled));
    }
    let a_inv = 1.0 / grid.lattice_param() as f64;
    vec![
        CheckResult::new("single kappa entrywise", entry_err, tol_or(tol, 1e-10)),
        CheckResult::new("kappa is 1/a", (kappa - a_inv).abs(), tol_or(tol, 1e-10)),
    ]
}

/// The constructed kernel vector annihilates the periodization.
fn kernel_checks(grid: GridSpec, seed: u64, tol: Option<f64>) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_rank = grid.lattice_param() - 1;
    let mut max_ratio = 0.0f64;
    for i in 0..20 {
        let rank = 1 + i % max_rank;
        let x = FactoredOperator::random(grid, rank, &mut rng);
        let f = kernel_vector(&x).expect("rank below a");
        let tilde = periodize(&x);
        let ratio = tilde.apply(&f).expect("same grid").norm() / tilde.frobenius_norm();
        max_ratio = max_ratio.max(ratio);
    }
    vec![CheckResult::new(
        "annihilation ratio",
        max_ratio,
        tol_or(tol, 1e-8),
    )]
}

/// Window coefficients of a multiplication operator: trace definition
/// against the closed form, including the zero pattern off a*Z.
fn closed_form_checks(grid: GridSpec, seed: u64, tol: Option<f64>) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut window_err = 0.0f64;
    let mut zero_err = 0.0f64;
    let a = grid.lattice_param();
    for _ in 0..20 {
        let g = OmegaFunction::random(grid, &mut rng);
        let by_trace = lattice_coeffs(&mult_op(&g));
        for k in 0..grid.dual_k_count() {
            for l in 0..grid.samples_per_unit() {
                let closed = mult_op_coeff(&g, k, l).expect("window index");
                let diff = (by_trace.value(k, l) - closed).norm();
                window_err = window_err.max(diff);
                if k % a != 0 {
                    zero_err = zero_err.max(closed.norm());
                    zero_err = zero_err.max(by_trace.value(k, l).norm());
                }
            }
        }
    }
    vec![
        CheckResult::new("trace vs closed form", window_err, tol_or(tol, 1e-10)),
        CheckResult::new("zeros off the sublattice", zero_err, tol_or(tol, 1e-10)),
    ]
}

/// Lattice coefficients of the periodization equal the symbol of the
/// original operator on the dual window.
fn window_coeffs_checks(grid: GridSpec, seed: u64, tol: Option<f64>) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lat = LatticeSpec::new(grid);
    let max_rank = 3.min(grid.lattice_param() - 1);
    let mut max_err = 0.0f64;
    for i in 0..20 {
        let rank = 1 + i % max_rank;
        let x = FactoredOperator::random(grid, rank, &mut rng);
        let xm = x.to_matrix();
        let coeffs = lattice_coeffs(&periodize(&x));
        for k in 0..grid.dual_k_count() {
            for l in 0..grid.samples_per_unit() {
                let n = lat.dual_point(k, l).expect("window index");
                let direct = symbol_at(&xm, &n).expect("same grid");
                max_err = max_err.max((coeffs.value(k, l) - direct).norm());
            }
        }
    }
    vec![CheckResult::new(
        "coefficients equal the symbol",
        max_err,
        tol_or(tol, 1e-8),
    )]
}

/// The quantization and the symbol invert each other with constant one.
fn inversion_checks(grid: GridSpec, seed: u64, tol: Option<f64>) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut scalar_err = 0.0f64;
    let mut operator_err = 0.0f64;
    for _ in 0..20 {
        let f = PhaseFunction::random(grid, &mut rng);
        scalar_err = scalar_err.max(symbol(&weyl::weyl(&f)).max_abs_diff(&f));
        let x = OperatorMatrix::random(grid, &mut rng);
        operator_err = operator_err.max(weyl::weyl(&symbol(&x)).max_abs_diff(&x));
    }
    vec![
        CheckResult::new("symbol of quantization", scalar_err, tol_or(tol, 1e-10)),
        CheckResult::new("quantization of symbol", operator_err, tol_or(tol, 1e-10)),
    ]
}
