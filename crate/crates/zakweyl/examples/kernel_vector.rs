//! An explicit kernel vector for the periodization of a low-rank operator.
//!
//! In the Zak domain the fibers of the model split into cells of length a.
//! Stacking the Zak transforms of the factors psi_j gives at most rank(X)
//! vectors per cell, so for rank(X) < a every cell has room for a unit
//! vector orthogonal to all of them. Unstacking and inverting produces a
//! signal f with periodize(X) f = 0, which is why the periodization of a
//! low-rank operator can never be injective.
//!
//! Run with: cargo run --example kernel_vector

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zakweyl::nullfield::{kernel_vector, VectorField};
use zakweyl::periodization::periodize;
use zakweyl::{FactoredOperator, GridSpec};

fn main() {
    let grid = GridSpec::new(16, 2, 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(53);

    for rank in 1..grid.lattice_param() {
        let x = FactoredOperator::random(grid, rank, &mut rng);
        let tilde = periodize(&x);
        let f = kernel_vector(&x).unwrap();
        let hit = tilde.apply(&f).unwrap();
        println!(
            "rank {rank}: ||f|| = {:.12}, ||periodize(X) f|| / ||periodize(X)||_F = {:.2e}",
            f.norm(),
            hit.norm() / tilde.frobenius_norm()
        );
    }

    // the mechanism: the stacked Zak transform of f is orthogonal to the
    // stacked transform of every factor, cell by cell
    let x = FactoredOperator::random(grid, 2, &mut rng);
    let f = kernel_vector(&x).unwrap();
    let stacked_f = VectorField::stack(&f);
    let sub = grid.sub_len();
    let mut worst = 0.0f64;
    for (_, psi) in x.factors() {
        let stacked_psi = VectorField::stack(psi);
        for j in 0..grid.period_units() {
            for m in 0..sub {
                let mut dot = num_complex::Complex64::new(0.0, 0.0);
                for i in 0..grid.lattice_param() {
                    dot += stacked_f.value(j, m, i) * stacked_psi.value(j, m, i).conj();
                }
                worst = worst.max(dot.norm());
            }
        }
    }
    println!("per-cell orthogonality to every stacked factor: max |dot| = {worst:.2e}");

    // at rank a the cells can fill up and the construction refuses to run
    let full = FactoredOperator::random(grid, grid.lattice_param(), &mut rng);
    match kernel_vector(&full) {
        Err(e) => println!("rank a is rejected: {e}"),
        Ok(_) => unreachable!(),
    }
}
