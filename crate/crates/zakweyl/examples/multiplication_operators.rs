//! Multiplication operators M_g = Z^{-1} diag(g) Z for a function g on the
//! Zak domain, the commutative algebra on which the trace tau acts as the
//! phase-space average. These are exactly the operators fixed by every
//! lattice conjugation.
//!
//! Run with: cargo run --example multiplication_operators

use num_complex::Complex64;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zakweyl::periodization::{
    distribution_fractions, is_n_periodic, lattice_coeffs, mult_op, mult_op_coeff, trace_tau,
    OmegaFunction,
};
use zakweyl::{GridSpec, OperatorMatrix};

fn main() {
    let grid = GridSpec::new(8, 4, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let g = OmegaFunction::random(grid, &mut rng);

    let m_g = mult_op(&g);
    let (periodic, dev) = is_n_periodic(&m_g);
    println!("M_g commutes with the lattice: {periodic} (deviation {dev:.2e})");

    let dense = OperatorMatrix::random(grid, &mut rng);
    let (periodic, dev) = is_n_periodic(&dense);
    println!("a generic dense operator does not: {periodic} (deviation {dev:.2e})");

    // tau takes M_g to the average of g over the phase cells
    let avg: Complex64 = g.values().iter().sum::<Complex64>() / grid.dim() as f64;
    let tau = trace_tau(&m_g);
    println!(
        "tau(M_g) = {:.12}{:+.12}i, cell average of g = {:.12}{:+.12}i",
        tau.re, tau.im, avg.re, avg.im
    );

    // the dual-window coefficients have a closed form through the Fourier
    // coefficients of g, vanishing off multiples of a
    let coeffs = lattice_coeffs(&m_g);
    let mut worst = 0.0f64;
    for k in 0..grid.dual_k_count() {
        for l in 0..grid.samples_per_unit() {
            let closed = mult_op_coeff(&g, k, l).unwrap();
            worst = worst.max((coeffs.value(k, l) - closed).norm());
        }
    }
    println!("closed-form coefficients match the trace definition: max diff {worst:.2e}");

    // |g| > lambda as a spectral projector: tau measures exactly the
    // fraction of cells above the level
    println!("distribution function of |g| read off tau:");
    for lambda in [0.0, 0.3, 0.6, 0.9, 1.2] {
        let (by_count, by_trace) = distribution_fractions(&g, lambda);
        println!(
            "  lambda = {lambda:.1}: cell fraction {by_count:.6}, tau of projector {by_trace:.6}"
        );
    }
}
