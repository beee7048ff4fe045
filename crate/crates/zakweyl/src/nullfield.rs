//! Construction of a unit vector annihilated by a periodized operator.
//!
//! Restrict the Zak domain to the strip [0, 1) x [0, 1/a) and stack the a
//! sigma-translates of a transform into a fiber of length a over each strip
//! point:
//!
//! ```text
//!     stack(psi)(theta, sigma)_i = (Z psi)(theta, sigma + i/a).
//! ```
//!
//! When the operator X has rank b < a, the b stacked fields of its psi
//! factors leave room for a pointwise unit fiber e(theta, sigma) orthogonal
//! to all of them. Redistributing the components of e over the full window
//! gives an array F, and f = Z^{-1} F satisfies X~ f = 0: in the Zak domain
//! X~ f contracts conj(stack(psi_j)) against the fiber of F, and the
//! quasi-period phases of the two factors cancel, so the contraction is
//! exactly the inner product that was built to vanish. Before normalization
//! f has norm 1/sqrt(a), each fiber being a unit vector.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{GridSpec, Signal};
use crate::linalg;
use crate::operator::FactoredOperator;
use crate::zak::{self, ZakArray};

/// A field of length-a fibers over the strip, stored as L x (M/a) x a.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField {
    grid: GridSpec,
    values: Vec<Complex64>,
}

impl VectorField {
    pub fn zeros(grid: GridSpec) -> Self {
        VectorField {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.dim()],
        }
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    /// Component i of the fiber at strip point (theta_j, sigma_m),
    /// j < L, m < M/a, i < a.
    pub fn value(&self, j: usize, m: usize, i: usize) -> Complex64 {
        let sub = self.grid.sub_len();
        let a = self.grid.lattice_param();
        self.values[(j * sub + m) * a + i]
    }

    pub fn set_value(&mut self, j: usize, m: usize, i: usize, v: Complex64) {
        let sub = self.grid.sub_len();
        let a = self.grid.lattice_param();
        self.values[(j * sub + m) * a + i] = v;
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Stack the sigma-translates of the transform of psi.
    pub fn stack(psi: &Signal) -> VectorField {
        VectorField::stack_transform(&zak::forward(psi))
    }

    /// Stack an already-computed transform.
    pub fn stack_transform(z: &ZakArray) -> VectorField {
        let grid = z.grid();
        let sub = grid.sub_len();
        let a = grid.lattice_param();
        let mut out = VectorField::zeros(grid);
        for j in 0..grid.period_units() {
            for m in 0..sub {
                for i in 0..a {
                    out.set_value(j, m, i, z.value(j, m + i * sub));
                }
            }
        }
        out
    }

    /// Spread the fiber components back over the full sigma window.
    pub fn unstack(&self) -> ZakArray {
        let grid = self.grid;
        let sub = grid.sub_len();
        let a = grid.lattice_param();
        let mut out = ZakArray::zeros(grid);
        for j in 0..grid.period_units() {
            for m in 0..sub {
                for i in 0..a {
                    out.set_value(j, m + i * sub, self.value(j, m, i));
                }
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &VectorField) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }
}

/// At every strip point, a unit fiber orthogonal to all the given fields,
/// phase-fixed as in [`linalg::orthocomplement_column`]. Needs fewer fields
/// than the fiber dimension a.
pub fn orthocomplement(fields: &[VectorField]) -> Result<VectorField> {
    if fields.is_empty() {
        return Err(Error::Config(
            "orthocomplement needs at least a grid to work on; pass the fields of an operator"
                .into(),
        ));
    }
    let grid = fields[0].grid;
    orthocomplement_on(grid, fields)
}

/// Like [`orthocomplement`], with the grid given so an empty field list is
/// allowed (the result is then the constant last basis fiber).
pub fn orthocomplement_on(grid: GridSpec, fields: &[VectorField]) -> Result<VectorField> {
    let a = grid.lattice_param();
    if fields.len() >= a {
        return Err(Error::TooManyFields {
            fields: fields.len(),
            fiber: a,
        });
    }
    for f in fields {
        grid.expect_same(&f.grid)?;
    }
    let sub = grid.sub_len();
    let mut out = VectorField::zeros(grid);
    for j in 0..grid.period_units() {
        for m in 0..sub {
            let cols: Vec<Vec<Complex64>> = fields
                .iter()
                .map(|f| (0..a).map(|i| f.value(j, m, i)).collect())
                .collect();
            let q = linalg::orthocomplement_column(a, &cols);
            for (i, v) in q.into_iter().enumerate() {
                out.set_value(j, m, i, v);
            }
        }
    }
    Ok(out)
}

/// A unit vector f with periodize(X) f = 0, for X of rank below a.
///
/// The factors are first rewritten over an orthonormal psi basis, so
/// linearly dependent factor lists are fine; only the actual rank counts.
pub fn kernel_vector(x: &FactoredOperator) -> Result<Signal> {
    let grid = x.grid();
    let reduced = x.reduce();
    let b = reduced.factors().len();
    if b >= grid.lattice_param() {
        return Err(Error::RankTooLarge {
            rank: b,
            a: grid.lattice_param(),
        });
    }
    let fields: Vec<VectorField> = reduced
        .factors()
        .iter()
        .map(|(_, psi)| VectorField::stack(psi))
        .collect();
    let e = orthocomplement_on(grid, &fields)?;
    let f = zak::inverse(&e.unstack());
    let norm = f.norm();
    Ok(f.scaled(Complex64::new(1.0 / norm, 0.0)))
}
