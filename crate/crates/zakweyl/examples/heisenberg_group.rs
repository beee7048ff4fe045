//! The finite Heisenberg group and its representation on sampled signals.
//!
//! Elements are (x, y, z) with x on the 1/M grid, y on the 1/L grid and z a
//! unit scalar, multiplying through the symplectic cocycle
//!
//!     (x, y, z)(x', y', z') = (x + x', y + y', z z' e^{i pi (x y' - y x')}).
//!
//! Run with: cargo run --example heisenberg_group

use num_complex::Complex64;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zakweyl::heisenberg::{cocycle, pairing, GroupElement, PhasePoint};
use zakweyl::{GridSpec, Signal};

fn main() {
    let grid = GridSpec::new(8, 4, 2).unwrap();
    let one = Complex64::new(1.0, 0.0);

    let g = GroupElement::new(PhasePoint::new(grid, 3, 5), one).unwrap();
    let h = GroupElement::new(PhasePoint::new(grid, 7, 2), one).unwrap();
    let gh = g.compose(&h).unwrap();
    println!(
        "composing ({}, {}) with ({}, {}) picks up the cocycle {:.6}{:+.6}i",
        g.point().x_value(),
        g.point().y_value(),
        h.point().x_value(),
        h.point().y_value(),
        gh.scalar().re,
        gh.scalar().im
    );

    // the commutator of two lifted points is a pure scalar, the bicharacter
    let comm = gh
        .compose(&g.inverse())
        .unwrap()
        .compose(&h.inverse())
        .unwrap();
    let e = pairing(&g.point(), &h.point()).unwrap();
    println!(
        "commutator scalar {:.6}{:+.6}i matches the pairing {:.6}{:+.6}i",
        comm.scalar().re,
        comm.scalar().im,
        e.re,
        e.im
    );
    println!(
        "cocycle squared recovers the pairing: deviation {:.2e}",
        (cocycle(&g.point(), &h.point()).unwrap().powi(2) - e).norm()
    );

    // shifting a coordinate by a full period d only costs a sign, which
    // canonical() moves into the scalar: here the exponent is y0 = 5, odd
    let d = grid.dim() as i64;
    let wrapped = GroupElement::new(PhasePoint::new(grid, 3 + d, 5), -one).unwrap();
    let reduced = wrapped.canonical();
    println!(
        "((3 + d, 5), -1) reduces to (({}, {}), {:.1}{:+.1}i)",
        reduced.point().x_steps(),
        reduced.point().y_steps(),
        reduced.scalar().re,
        reduced.scalar().im
    );
    println!(
        "its matrix agrees with rho(g) for g = ((3, 5), 1): max diff {:.2e}",
        g.matrix().max_abs_diff(&wrapped.matrix())
    );

    // the representation is unitary
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let phi = Signal::random(grid, &mut rng);
    let moved = g.apply(&phi).unwrap();
    println!(
        "rho(g) preserves the norm: {:.12} vs {:.12}",
        phi.norm(),
        moved.norm()
    );
}
