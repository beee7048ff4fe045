//! The Zak transform
//!
//!     F(theta, sigma) = sum_l phi(sigma - l) e^{2 pi i l theta},
//!
//! tabulated on the L x M grid theta_j = j/L, sigma_m = m/M. It is unitary
//! for the 1/(LM)-weighted norm, quasi-periodic off the window, and
//! intertwines the Heisenberg action with phase-space translation.
//!
//! Run with: cargo run --example zak_transform

use num_complex::Complex64;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zakweyl::heisenberg::{GroupElement, PhasePoint};
use zakweyl::{zak, GridSpec, Signal};

fn main() {
    let grid = GridSpec::new(8, 4, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let phi = Signal::random(grid, &mut rng);

    let z = zak::forward(&phi);
    println!(
        "unitarity: ||phi|| = {:.12}, weighted ||Z phi|| = {:.12}",
        phi.norm(),
        z.weighted_norm()
    );

    let back = zak::inverse(&z);
    println!("round trip residual: {:.2e}", phi.max_abs_diff(&back));

    // quasi-periodicity: F(theta + 1, sigma) = F(theta, sigma) while
    // F(theta, sigma + 1) = e^{2 pi i theta} F(theta, sigma)
    println!(
        "theta + 1 changes nothing: max diff {:.2e}",
        z.max_abs_diff(&z.extend_units(1, 0))
    );
    let mut twisted = z.clone();
    let l = grid.period_units();
    for j in 0..l {
        let tw = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / l as f64);
        for m in 0..grid.samples_per_unit() {
            twisted.set_value(j, m, tw * z.value(j, m));
        }
    }
    println!(
        "sigma + 1 twists row j by e^(2 pi i j/L): max diff {:.2e}",
        twisted.max_abs_diff(&z.extend_units(0, 1))
    );

    // covariance with the group action
    let g = GroupElement::new(
        PhasePoint::new(grid, 5, 3),
        Complex64::from_polar(1.0, 0.7),
    )
    .unwrap();
    println!(
        "covariance residual for g = ((5, 3) steps, e^(0.7i)): {:.2e}",
        zak::covariance_error(&g, &phi).unwrap()
    );

    // a delta at slot 3 transforms to the single column sigma = 3/M,
    // constant along theta
    let zd = zak::forward(&Signal::delta(grid, 3));
    for m in 0..grid.samples_per_unit() {
        let col: f64 = (0..l).map(|j| zd.value(j, m).norm()).sum();
        print!("{col:.0} ");
    }
    println!("  (column masses of Z delta_3)");
}
