//! Dense operators on the sampled signal space, in two shapes: an explicit
//! d x d matrix, and a finite-rank sum of outer products
//!
//! ```text
//!     X = sum_j phi_j (x) conj(psi_j),      X mu = sum_j <mu, psi_j> phi_j.
//! ```
//!
//! Matrix entries follow the weighted inner product: the outer product
//! phi (x) conj(psi) has entries `phi[i] * conj(psi[j]) / M`, so its plain
//! matrix trace equals <phi, psi> and matrix-vector products need no extra
//! weights.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::grid::{GridSpec, Signal};
use crate::linalg;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A dense d x d matrix acting on signals by plain matrix-vector product.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    grid: GridSpec,
    entries: Vec<Complex64>,
}

impl OperatorMatrix {
    pub fn zeros(grid: GridSpec) -> Self {
        OperatorMatrix {
            grid,
            entries: vec![ZERO; grid.dim() * grid.dim()],
        }
    }

    pub fn identity(grid: GridSpec) -> Self {
        let mut t = OperatorMatrix::zeros(grid);
        for i in 0..grid.dim() {
            t.entries[i * grid.dim() + i] = Complex64::new(1.0, 0.0);
        }
        t
    }

    pub fn from_entries(grid: GridSpec, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != grid.dim() * grid.dim() {
            return Err(Error::LengthMismatch {
                expected: grid.dim() * grid.dim(),
                got: entries.len(),
            });
        }
        Ok(OperatorMatrix { grid, entries })
    }

    /// Dense matrix with entries uniform on [-1, 1) x [-1, 1)i.
    pub fn random<R: Rng>(grid: GridSpec, rng: &mut R) -> Self {
        let entries = (0..grid.dim() * grid.dim())
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        OperatorMatrix { grid, entries }
    }

    /// The outer product phi (x) conj(psi), entries `phi[i] conj(psi[j]) / M`.
    pub fn rank_one(phi: &Signal, psi: &Signal) -> Result<Self> {
        phi.grid().expect_same(&psi.grid())?;
        let grid = phi.grid();
        let d = grid.dim();
        let w = 1.0 / grid.samples_per_unit() as f64;
        let mut entries = vec![ZERO; d * d];
        for i in 0..d {
            for j in 0..d {
                entries[i * d + j] = phi.values()[i] * psi.values()[j].conj() * w;
            }
        }
        Ok(OperatorMatrix { grid, entries })
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.grid.dim() + col]
    }

    pub fn set_entry(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.grid.dim() + col] = value;
    }

    pub fn apply(&self, s: &Signal) -> Result<Signal> {
        self.grid.expect_same(&s.grid())?;
        let d = self.grid.dim();
        let mut out = Signal::zeros(self.grid);
        for i in 0..d {
            let mut acc = ZERO;
            for j in 0..d {
                acc += self.entries[i * d + j] * s.values()[j];
            }
            out.values_mut()[i] = acc;
        }
        Ok(out)
    }

    pub fn matmul(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.grid.expect_same(&other.grid)?;
        let d = self.grid.dim();
        let mut out = OperatorMatrix::zeros(self.grid);
        for i in 0..d {
            for k in 0..d {
                let aik = self.entries[i * d + k];
                if aik == ZERO {
                    continue;
                }
                for j in 0..d {
                    out.entries[i * d + j] += aik * other.entries[k * d + j];
                }
            }
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> OperatorMatrix {
        let d = self.grid.dim();
        let mut out = OperatorMatrix::zeros(self.grid);
        for i in 0..d {
            for j in 0..d {
                out.entries[j * d + i] = self.entries[i * d + j].conj();
            }
        }
        out
    }

    pub fn add(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.grid.expect_same(&other.grid)?;
        let mut out = self.clone();
        for (x, y) in out.entries.iter_mut().zip(&other.entries) {
            *x += y;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.grid.expect_same(&other.grid)?;
        let mut out = self.clone();
        for (x, y) in out.entries.iter_mut().zip(&other.entries) {
            *x -= y;
        }
        Ok(out)
    }

    pub fn scaled(&self, c: Complex64) -> OperatorMatrix {
        OperatorMatrix {
            grid: self.grid,
            entries: self.entries.iter().map(|z| z * c).collect(),
        }
    }

    pub fn add_scaled_in_place(&mut self, other: &OperatorMatrix, c: Complex64) -> Result<()> {
        self.grid.expect_same(&other.grid)?;
        for (x, y) in self.entries.iter_mut().zip(&other.entries) {
            *x += y * c;
        }
        Ok(())
    }

    /// Plain (unweighted) matrix trace.
    pub fn plain_trace(&self) -> Complex64 {
        let d = self.grid.dim();
        (0..d).map(|i| self.entries[i * d + i]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &OperatorMatrix) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    /// Singular values, descending.
    pub fn singular_values(&self) -> Vec<f64> {
        let d = self.grid.dim();
        linalg::singular_values(d, d, &self.entries)
    }
}

/// A finite-rank operator kept as its list of factors (phi_j, psi_j).
#[derive(Clone, Debug)]
pub struct FactoredOperator {
    grid: GridSpec,
    factors: Vec<(Signal, Signal)>,
}

impl FactoredOperator {
    pub fn new(grid: GridSpec, factors: Vec<(Signal, Signal)>) -> Result<Self> {
        for (phi, psi) in &factors {
            grid.expect_same(&phi.grid())?;
            grid.expect_same(&psi.grid())?;
        }
        Ok(FactoredOperator { grid, factors })
    }

    pub fn zero(grid: GridSpec) -> Self {
        FactoredOperator {
            grid,
            factors: Vec::new(),
        }
    }

    /// `rank` independent random factors, deterministic in the rng state.
    pub fn random<R: Rng>(grid: GridSpec, rank: usize, rng: &mut R) -> Self {
        let factors = (0..rank)
            .map(|_| (Signal::random(grid, rng), Signal::random(grid, rng)))
            .collect();
        FactoredOperator { grid, factors }
    }

    pub fn push(&mut self, phi: Signal, psi: Signal) -> Result<()> {
        self.grid.expect_same(&phi.grid())?;
        self.grid.expect_same(&psi.grid())?;
        self.factors.push((phi, psi));
        Ok(())
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn factors(&self) -> &[(Signal, Signal)] {
        &self.factors
    }

    pub fn to_matrix(&self) -> OperatorMatrix {
        let mut out = OperatorMatrix::zeros(self.grid);
        for (phi, psi) in &self.factors {
            let term = OperatorMatrix::rank_one(phi, psi).expect("grids checked at construction");
            out.add_scaled_in_place(&term, Complex64::new(1.0, 0.0))
                .expect("same grid");
        }
        out
    }

    /// X mu = sum_j <mu, psi_j> phi_j, without forming the matrix.
    pub fn apply(&self, s: &Signal) -> Result<Signal> {
        self.grid.expect_same(&s.grid())?;
        let mut out = Signal::zeros(self.grid);
        for (phi, psi) in &self.factors {
            let c = s.inner(psi)?;
            for (o, p) in out.values_mut().iter_mut().zip(phi.values()) {
                *o += c * p;
            }
        }
        Ok(out)
    }

    /// Gram matrix of the psi factors, `G[i][j] = <psi_i, psi_j>`.
    pub fn gram_psi(&self) -> Vec<Complex64> {
        let b = self.factors.len();
        let mut g = vec![ZERO; b * b];
        for i in 0..b {
            for j in 0..b {
                g[i * b + j] = self.factors[i]
                    .1
                    .inner(&self.factors[j].1)
                    .expect("same grid");
            }
        }
        g
    }

    /// Numerical rank: eigenvalues of the psi Gram matrix above
    /// 1e-10 times the largest one.
    pub fn rank(&self) -> usize {
        let b = self.factors.len();
        if b == 0 {
            return 0;
        }
        let (vals, _) = linalg::hermitian_eig(b, &self.gram_psi());
        let top = vals[0];
        if top <= 0.0 {
            return 0;
        }
        vals.iter().filter(|&&v| v > 1e-10 * top).count()
    }

    /// The same operator rewritten over an orthonormal psi basis, one factor
    /// per retained Gram eigendirection.
    pub fn reduce(&self) -> FactoredOperator {
        let b = self.factors.len();
        if b == 0 {
            return self.clone();
        }
        let (vals, vecs) = linalg::hermitian_eig(b, &self.gram_psi());
        let top = vals[0].max(0.0);
        let mut out = FactoredOperator::zero(self.grid);
        for k in 0..b {
            if vals[k] <= 1e-10 * top || vals[k] <= 0.0 {
                continue;
            }
            let root = vals[k].sqrt();
            let mut beta = Signal::zeros(self.grid);
            let mut phi_new = Signal::zeros(self.grid);
            for j in 0..b {
                let vjk = vecs[j * b + k];
                let (phi_j, psi_j) = &self.factors[j];
                for (bv, pv) in beta.values_mut().iter_mut().zip(psi_j.values()) {
                    *bv += vjk.conj() * pv / root;
                }
                // psi_j = sum_k c_jk beta_k with c_jk = sqrt(lambda_k) V[j][k],
                // so the new phi picks up conj(c_jk)
                for (fv, pv) in phi_new.values_mut().iter_mut().zip(phi_j.values()) {
                    *fv += (root * vjk).conj() * pv;
                }
            }
            out.factors.push((phi_new, beta));
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.to_matrix().frobenius_norm()
    }
}
