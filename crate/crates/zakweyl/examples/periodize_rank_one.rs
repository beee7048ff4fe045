//! Lattice periodization of a finite-rank operator and the identity that
//! drives everything else here: the dual-window coefficients of the
//! periodization are the symbol of the original operator,
//!
//!     tau(periodize(X) rho(s(n'))^*) = alpha(X)(n')    for n' in the window.
//!
//! A trace pairing against d/a lattice conjugates thus reads off alpha(X)
//! pointwise, which is what makes support constraints on the symbol visible
//! to finite linear algebra.
//!
//! Run with: cargo run --example periodize_rank_one

use num_complex::Complex64;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zakweyl::heisenberg::LatticeSpec;
use zakweyl::periodization::{
    full_lattice_sum, is_n_periodic, lattice_coeffs, periodize, reconstruct,
};
use zakweyl::weyl::symbol;
use zakweyl::{FactoredOperator, GridSpec};

fn main() {
    let grid = GridSpec::new(8, 4, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    let x = FactoredOperator::random(grid, 1, &mut rng);

    let tilde = periodize(&x);
    let (ok, dev) = is_n_periodic(&tilde);
    println!("periodize(X) commutes with the lattice: {ok} (deviation {dev:.2e})");

    // the coefficients of the periodization against the dual window equal
    // the symbol of X at the window points
    let coeffs = lattice_coeffs(&tilde);
    let alpha = symbol(&x.to_matrix());
    let lat = LatticeSpec::new(grid);
    let mut worst = 0.0f64;
    for k in 0..grid.dual_k_count() {
        for l in 0..grid.samples_per_unit() {
            let p = lat.dual_point(k, l).unwrap().canonical();
            let expect = alpha.value(p.x_steps() as usize, p.y_steps() as usize);
            worst = worst.max((coeffs.value(k, l) - expect).norm());
        }
    }
    println!("window coefficients = symbol of X: max diff {worst:.2e}");

    // the coefficients determine the periodization completely
    println!(
        "reconstruct(coeffs) = periodize(X): max diff {:.2e}",
        reconstruct(&coeffs).max_abs_diff(&tilde)
    );

    // summing rho_n X rho_n^* over all d/a distinct lattice conjugates
    // produces the same operator up to the constant 1/a
    let full = full_lattice_sum(&x);
    let scaled = tilde.scaled(Complex64::new(1.0 / grid.lattice_param() as f64, 0.0));
    println!(
        "sum of lattice conjugates = periodize(X)/a: max diff {:.2e}",
        full.max_abs_diff(&scaled)
    );

    // the periodization depends only on the operator, not the factorization
    let (phi, psi) = x.factors()[0].clone();
    let half = Complex64::new(0.5, 0.0);
    let split = FactoredOperator::new(
        grid,
        vec![
            (phi.scaled(half), psi.clone()),
            (phi.scaled(half), psi.clone()),
        ],
    )
    .unwrap();
    println!(
        "same operator, different factors: periodizations differ by {:.2e}",
        periodize(&split).max_abs_diff(&tilde)
    );
}
