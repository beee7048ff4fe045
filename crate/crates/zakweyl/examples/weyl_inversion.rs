//! The Weyl transform W(f) = (1/d) sum_w f(w) rho(s(w)) and its inverse,
//! the symbol alpha(X)(w) = tr(X rho(s(w))^*). On the sampled phase plane
//! the pair inverts exactly, with constant one in both directions.
//!
//! Run with: cargo run --example weyl_inversion

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zakweyl::heisenberg::{cocycle, PhasePoint};
use zakweyl::weyl::{symbol, symbol_at, weyl, PhaseFunction};
use zakweyl::{GridSpec, OperatorMatrix, Signal};

fn main() {
    let grid = GridSpec::new(8, 4, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(23);

    // symbol then Weyl recovers the operator
    let x = OperatorMatrix::random(grid, &mut rng);
    let back = weyl(&symbol(&x));
    println!(
        "W(alpha(X)) = X: max entry diff {:.2e}",
        x.max_abs_diff(&back)
    );

    // Weyl then symbol recovers the function
    let f = PhaseFunction::random(grid, &mut rng);
    let forth = symbol(&weyl(&f));
    println!(
        "alpha(W(f)) = f: max value diff {:.2e}",
        f.max_abs_diff(&forth)
    );

    // the symbol of a rank-one operator is a matrix coefficient
    let phi = Signal::random(grid, &mut rng);
    let psi = Signal::random(grid, &mut rng);
    let rank_one = OperatorMatrix::rank_one(&phi, &psi).unwrap();
    let alpha = symbol(&rank_one);
    let mut worst = 0.0f64;
    for ix in 0..grid.dim() {
        for iy in 0..grid.dim() {
            let w = alpha.point(ix, iy);
            let coeff = phi.inner(&w.lift().apply(&psi).unwrap()).unwrap();
            worst = worst.max((alpha.value(ix, iy) - coeff).norm());
        }
    }
    println!("alpha(phi (x) conj(psi))(w) = <phi, rho(s(w)) psi>: max diff {worst:.2e}");

    // translating the operator by rho(s(v))^* twists the symbol by the
    // cocycle: alpha(X rho(s(v))^*)(w) = conj(psi(w, v)) alpha(X)(w + v)
    let v = PhasePoint::new(grid, 5, 9);
    let shifted = x.matmul(&v.lift().matrix().adjoint()).unwrap();
    let alpha_x = symbol(&x);
    let alpha_shifted = symbol(&shifted);
    let mut worst = 0.0f64;
    for ix in 0..grid.dim() {
        for iy in 0..grid.dim() {
            let w = alpha_x.point(ix, iy);
            let expect = cocycle(&w, &v).unwrap().conj()
                * symbol_at(&x, &w.add(&v).unwrap()).unwrap();
            worst = worst.max((alpha_shifted.value(ix, iy) - expect).norm());
        }
    }
    println!("shifted-symbol identity over the whole window: max diff {worst:.2e}");

    // energy bookkeeping: the cell weight dx dy = 1/d makes the symbol an
    // isometry onto Hilbert-Schmidt space
    println!(
        "||alpha(X)|| (weighted) = {:.12}, ||X||_F = {:.12}",
        alpha_x.weighted_norm(),
        x.frobenius_norm()
    );
}
