//! The normalized trace tau(T) = sum_h <T chi_h, chi_h> over the a
//! indicators of the length-M/a sample blocks. On the algebra generated by
//! the lattice representatives it behaves like an expectation: it is one at
//! the identity, kills every other dual representative, and makes the dual
//! window an orthonormal family.
//!
//! Run with: cargo run --example trace_functional

use num_complex::Complex64;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zakweyl::heisenberg::LatticeSpec;
use zakweyl::periodization::{reconstruct, trace_tau, trace_tau_map, LatticeCoeffs};
use zakweyl::{GridSpec, OperatorMatrix};

fn main() {
    let grid = GridSpec::new(8, 4, 2).unwrap();
    let lat = LatticeSpec::new(grid);

    let tau_id = trace_tau(&OperatorMatrix::identity(grid));
    println!("tau(I) = {:.12}{:+.12}i", tau_id.re, tau_id.im);

    // tau of a dual representative is the delta at the origin
    let mut off_origin_max = 0.0f64;
    for k in 0..grid.dual_k_count() {
        for l in 0..grid.samples_per_unit() {
            let t = trace_tau(&lat.dual_point(k, l).unwrap().lift().matrix());
            if (k, l) != (0, 0) {
                off_origin_max = off_origin_max.max(t.norm());
            }
        }
    }
    println!("max |tau(rho_n)| over the window away from the origin: {off_origin_max:.2e}");

    // pairwise: tau(rho_n rho_m^{-1}) = delta_{nm}, the orthonormality that
    // turns lattice coefficients into an expansion
    let window = lat.dual_window();
    let mut worst = 0.0f64;
    for (i, n) in window.iter().enumerate() {
        let rn = n.lift().matrix();
        for (j, m) in window.iter().enumerate() {
            let minv = m.lift().inverse();
            let tau = trace_tau_map(grid, |chi| rn.apply(&minv.apply(chi)?)).unwrap();
            let expect = if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            worst = worst.max((tau - expect).norm());
        }
    }
    println!(
        "orthonormality of all {} window pairs: max deviation {worst:.2e}",
        window.len() * window.len()
    );

    // Parseval on the lattice span: tau(T^* T) is the coefficient energy,
    // and tau agrees there with the matrix trace over d
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    let c = LatticeCoeffs::random(grid, &mut rng);
    let t = reconstruct(&c);
    let tau_tt = trace_tau(&t.adjoint().matmul(&t).unwrap());
    println!(
        "tau(T* T) = {:.12}, sum of |coefficients|^2 = {:.12}",
        tau_tt.re,
        c.abs_sqr_sum()
    );
    let tau_t = trace_tau(&t);
    let scaled = t.plain_trace() / grid.dim() as f64;
    println!(
        "tau(T) = {:.12}{:+.12}i, tr(T)/d = {:.12}{:+.12}i",
        tau_t.re, tau_t.im, scaled.re, scaled.im
    );
}
