//! Functions on the sampled phase plane and the Weyl correspondence.
//!
//! A phase function f is tabulated on the d x d window of points
//! w = (x, y) = (ix/M, iy/L), 0 <= ix, iy < d. Its Weyl transform is
//!
//! ```text
//!     W(f) = (1/d) sum_w f(w) rho(s(w)),
//! ```
//!
//! and the reverse direction tabulates the symbol
//!
//! ```text
//!     alpha(X)(w) = tr(X rho(s(w))^*).
//! ```
//!
//! The operators rho(s(w))/sqrt(d) over the window form an orthonormal
//! basis for Hilbert-Schmidt space, so the two maps invert each other with
//! constant exactly one: the grid spacings contribute dx dy = 1/d per
//! sample, matching the 1/d in W. The symbol of a rank-one operator is the
//! matrix coefficient alpha(phi (x) conj(psi))(w) = <phi, rho(s(w)) psi>,
//! which the tests use as an independent route.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::grid::{phase, GridSpec};
use crate::heisenberg::PhasePoint;
use crate::operator::OperatorMatrix;

/// Complex values on the d x d phase window, x-major: index ix*d + iy for
/// the point (ix/M, iy/L).
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseFunction {
    grid: GridSpec,
    values: Vec<Complex64>,
}

impl PhaseFunction {
    pub fn zeros(grid: GridSpec) -> Self {
        let d = grid.dim();
        PhaseFunction {
            grid,
            values: vec![Complex64::new(0.0, 0.0); d * d],
        }
    }

    pub fn from_values(grid: GridSpec, values: Vec<Complex64>) -> Result<Self> {
        let d = grid.dim();
        if values.len() != d * d {
            return Err(Error::LengthMismatch {
                expected: d * d,
                got: values.len(),
            });
        }
        Ok(PhaseFunction { grid, values })
    }

    pub fn random<R: Rng>(grid: GridSpec, rng: &mut R) -> Self {
        let d = grid.dim();
        let values = (0..d * d)
            .map(|_| Complex64::new(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0))
            .collect();
        PhaseFunction { grid, values }
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, ix: usize, iy: usize) -> Complex64 {
        self.values[ix * self.grid.dim() + iy]
    }

    pub fn set_value(&mut self, ix: usize, iy: usize, v: Complex64) {
        self.values[ix * self.grid.dim() + iy] = v;
    }

    /// Value at the canonical representative of an arbitrary point.
    pub fn value_at(&self, w: &PhasePoint) -> Result<Complex64> {
        self.grid.expect_same(&w.grid())?;
        let c = w.canonical();
        Ok(self.value(c.x_steps() as usize, c.y_steps() as usize))
    }

    /// The window point at index (ix, iy).
    pub fn point(&self, ix: usize, iy: usize) -> PhasePoint {
        PhasePoint::new(self.grid, ix as i64, iy as i64)
    }

    /// Norm with the cell weight dx dy = 1/d, matching the Frobenius norm
    /// of the corresponding operator.
    pub fn weighted_norm(&self) -> f64 {
        let sum: f64 = self.values.iter().map(|v| v.norm_sqr()).sum();
        (sum / self.grid.dim() as f64).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &PhaseFunction) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }
}

/// W(f) = (1/d) sum over the window of f(w) rho(s(w)).
pub fn weyl(f: &PhaseFunction) -> OperatorMatrix {
    let grid = f.grid();
    let d = grid.dim() as i64;
    let weight = 1.0 / d as f64;
    let mut out = OperatorMatrix::zeros(grid);
    for ix in 0..d {
        for iy in 0..d {
            let coef = f.value(ix as usize, iy as usize) * weight;
            if coef == Complex64::new(0.0, 0.0) {
                continue;
            }
            for n in 0..d {
                let col = (n + ix).rem_euclid(d);
                let cur = out.entry(n as usize, col as usize);
                out.set_entry(
                    n as usize,
                    col as usize,
                    cur + coef * phase(ix * iy + 2 * iy * n, d),
                );
            }
        }
    }
    out
}

/// alpha(X)(w) = tr(X rho(s(w))^*), for any (possibly unreduced) point.
pub fn symbol_at(x: &OperatorMatrix, w: &PhasePoint) -> Result<Complex64> {
    x.grid().expect_same(&w.grid())?;
    let d = x.grid().dim() as i64;
    let c = w.lift().canonical();
    let j = c.point().x_steps();
    let k = c.point().y_steps();
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 0..d {
        let col = (n + j).rem_euclid(d);
        let r = c.scalar() * phase(j * k + 2 * k * n, d);
        acc += x.entry(n as usize, col as usize) * r.conj();
    }
    Ok(acc)
}

/// The symbol tabulated over the whole window.
pub fn symbol(x: &OperatorMatrix) -> PhaseFunction {
    let grid = x.grid();
    let d = grid.dim();
    let mut out = PhaseFunction::zeros(grid);
    for ix in 0..d {
        for iy in 0..d {
            let w = PhasePoint::new(grid, ix as i64, iy as i64);
            let v = symbol_at(x, &w).expect("same grid");
            out.set_value(ix, iy, v);
        }
    }
    out
}
