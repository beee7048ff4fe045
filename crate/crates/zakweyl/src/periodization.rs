//! Lattice periodization of finite-rank operators and the finite trace
//! that measures it.
//!
//! The separating lattice is N = Z x aZ. Conjugation by rho(s(n)) fixes
//! exactly the operators whose phase-space support lies on the annihilator
//! N-perp = (1/a)Z x Z, and on that span the normalized trace
//!
//! ```text
//!     tau(T) = sum_{h=0}^{a-1} <T chi_h, chi_h>,
//!         chi_h the indicator of [h/a, (h+1)/a),
//! ```
//!
//! satisfies tau(I) = 1 and tau(rho(s(n')) rho(s(m'))^*) = delta_{n',m'}
//! over the whole dual window, making {rho(s(n'))} an orthonormal family
//! whose coefficients tau(T rho(s(n'))^*) reconstruct T.
//!
//! A multiplication operator M_g = Z^{-1} diag(g) Z for g on the L x M
//! grid is N-periodic, and the periodization of a finite-rank operator
//! X = sum phi (x) conj(psi) is assembled from multiplication operators as
//!
//! ```text
//!     X~ = sum_{j=0}^{a-1} M_{g_j} rho(s(-j/a, 0)),
//!     g_j(theta, sigma) = (Z phi)(theta, sigma) conj((Z psi)(theta, sigma - j/a)),
//! ```
//!
//! summed over factors. Averaging the conjugates rho_n X rho_n^{-1} over
//! all d/a distinct lattice translates produces exactly X~ / a, which
//! `full_lattice_sum` exposes and the verification suites measure.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::grid::{phase, GridSpec, Signal};
use crate::heisenberg::{LatticeSpec, PhasePoint};
use crate::operator::{FactoredOperator, OperatorMatrix};
use crate::zak;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A function on the L x M phase grid (theta_j = j/L, sigma_m = m/M), the
/// domain where multiplication operators act after the Zak transform.
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaFunction {
    grid: GridSpec,
    values: Vec<Complex64>,
}

impl OmegaFunction {
    pub fn zeros(grid: GridSpec) -> Self {
        OmegaFunction {
            grid,
            values: vec![ZERO; grid.dim()],
        }
    }

    pub fn ones(grid: GridSpec) -> Self {
        OmegaFunction {
            grid,
            values: vec![ONE; grid.dim()],
        }
    }

    pub fn from_values(grid: GridSpec, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.dim() {
            return Err(Error::LengthMismatch {
                expected: grid.dim(),
                got: values.len(),
            });
        }
        Ok(OmegaFunction { grid, values })
    }

    pub fn from_fn(grid: GridSpec, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut out = OmegaFunction::zeros(grid);
        for j in 0..grid.period_units() {
            for m in 0..grid.samples_per_unit() {
                out.values[j * grid.samples_per_unit() + m] = f(j, m);
            }
        }
        out
    }

    pub fn random<R: Rng>(grid: GridSpec, rng: &mut R) -> Self {
        let values = (0..grid.dim())
            .map(|_| Complex64::new(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0))
            .collect();
        OmegaFunction { grid, values }
    }

    /// A random step function: each cell takes one of the given moduli,
    /// with a random phase. Useful for distribution-function checks where
    /// level sets matter.
    pub fn random_step<R: Rng>(grid: GridSpec, levels: &[f64], rng: &mut R) -> Self {
        let values = (0..grid.dim())
            .map(|_| {
                let level = levels[rng.gen_range(0..levels.len())];
                let turn = rng.gen::<f64>();
                level * Complex64::new((2.0 * std::f64::consts::PI * turn).cos(),
                                       (2.0 * std::f64::consts::PI * turn).sin())
            })
            .collect();
        OmegaFunction { grid, values }
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, j: usize, m: usize) -> Complex64 {
        self.values[j * self.grid.samples_per_unit() + m]
    }

    pub fn set_value(&mut self, j: usize, m: usize, v: Complex64) {
        self.values[j * self.grid.samples_per_unit() + m] = v;
    }

    pub fn conj(&self) -> OmegaFunction {
        OmegaFunction {
            grid: self.grid,
            values: self.values.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn modulus(&self) -> OmegaFunction {
        OmegaFunction {
            grid: self.grid,
            values: self
                .values
                .iter()
                .map(|z| Complex64::new(z.norm(), 0.0))
                .collect(),
        }
    }

    pub fn pointwise_mul(&self, other: &OmegaFunction) -> Result<OmegaFunction> {
        self.grid.expect_same(&other.grid)?;
        Ok(OmegaFunction {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(x, y)| x * y)
                .collect(),
        })
    }

    /// The indicator of {|g| > lambda}, the spectral projector symbol.
    pub fn indicator_above(&self, lambda: f64) -> OmegaFunction {
        OmegaFunction {
            grid: self.grid,
            values: self
                .values
                .iter()
                .map(|z| if z.norm() > lambda { ONE } else { ZERO })
                .collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &OmegaFunction) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }
}

/// Coefficients over the dual window, index (k, l) for the point (k/a, l),
/// 0 <= k < aL, 0 <= l < M.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeCoeffs {
    grid: GridSpec,
    values: Vec<Complex64>,
}

impl LatticeCoeffs {
    pub fn zeros(grid: GridSpec) -> Self {
        LatticeCoeffs {
            grid,
            values: vec![ZERO; grid.dual_k_count() * grid.samples_per_unit()],
        }
    }

    pub fn from_values(grid: GridSpec, values: Vec<Complex64>) -> Result<Self> {
        let expected = grid.dual_k_count() * grid.samples_per_unit();
        if values.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                got: values.len(),
            });
        }
        Ok(LatticeCoeffs { grid, values })
    }

    pub fn random<R: Rng>(grid: GridSpec, rng: &mut R) -> Self {
        let n = grid.dual_k_count() * grid.samples_per_unit();
        let values = (0..n)
            .map(|_| Complex64::new(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0))
            .collect();
        LatticeCoeffs { grid, values }
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, k: usize, l: usize) -> Complex64 {
        self.values[k * self.grid.samples_per_unit() + l]
    }

    pub fn set_value(&mut self, k: usize, l: usize, v: Complex64) {
        self.values[k * self.grid.samples_per_unit() + l] = v;
    }

    /// Sum of squared moduli; equals tau(T T^*) for the operator the
    /// coefficients reconstruct.
    pub fn abs_sqr_sum(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Copy with everything outside the kept index set zeroed.
    pub fn restricted_to(&self, keep: &[(usize, usize)]) -> LatticeCoeffs {
        let mut out = LatticeCoeffs::zeros(self.grid);
        for &(k, l) in keep {
            out.set_value(k, l, self.value(k, l));
        }
        out
    }

    pub fn max_abs_diff(&self, other: &LatticeCoeffs) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }
}

/// The multiplication operator M_g = Z^{-1} diag(g) Z, built column by
/// column on impulses.
pub fn mult_op(g: &OmegaFunction) -> OperatorMatrix {
    let grid = g.grid();
    let d = grid.dim();
    let mut out = OperatorMatrix::zeros(grid);
    for n in 0..d {
        let mut f = zak::forward(&Signal::delta(grid, n as i64));
        for (fv, gv) in f.values_mut().iter_mut().zip(g.values()) {
            *fv *= gv;
        }
        let col = zak::inverse(&f);
        for i in 0..d {
            out.set_entry(i, n, col.values()[i]);
        }
    }
    out
}

/// tau of any operator given only its action on signals.
pub fn trace_tau_map(
    grid: GridSpec,
    mut op: impl FnMut(&Signal) -> Result<Signal>,
) -> Result<Complex64> {
    let sub = grid.sub_len();
    let mut acc = ZERO;
    for h in 0..grid.lattice_param() {
        let chi = Signal::indicator_span(grid, (h * sub) as i64, sub);
        acc += op(&chi)?.inner(&chi)?;
    }
    Ok(acc)
}

/// tau(T) = sum_h <T chi_h, chi_h>.
pub fn trace_tau(t: &OperatorMatrix) -> Complex64 {
    trace_tau_map(t.grid(), |s| t.apply(s)).expect("indicators share the grid")
}

/// Deviation from N-periodicity: the largest entry of
/// rho_n T rho_n^{-1} - T over the two lattice generators, and whether it
/// is below 1e-10 relative to the largest entry of T.
pub fn is_n_periodic(t: &OperatorMatrix) -> (bool, f64) {
    let lat = LatticeSpec::new(t.grid());
    let mut dev = 0.0f64;
    for gen in lat.generators() {
        let r = gen.lift().matrix();
        let conj = r
            .matmul(t)
            .and_then(|p| p.matmul(&r.adjoint()))
            .expect("same grid");
        dev = dev.max(conj.max_abs_diff(t));
    }
    let scale = t.max_abs();
    (dev <= 1e-10 * scale.max(1.0), dev)
}

/// The coefficients tau(T rho(s(n'))^*) over the dual window.
pub fn lattice_coeffs(t: &OperatorMatrix) -> LatticeCoeffs {
    let grid = t.grid();
    let lat = LatticeSpec::new(grid);
    let mut out = LatticeCoeffs::zeros(grid);
    for k in 0..grid.dual_k_count() {
        for l in 0..grid.samples_per_unit() {
            let inv = lat
                .dual_point(k, l)
                .expect("window indices in range")
                .lift()
                .inverse();
            let coeff = trace_tau_map(grid, |chi| t.apply(&inv.apply(chi)?))
                .expect("same grid");
            out.set_value(k, l, coeff);
        }
    }
    out
}

/// The operator sum_{(k,l)} c(k,l) rho(s(k/a, l)) the coefficients name.
pub fn reconstruct(c: &LatticeCoeffs) -> OperatorMatrix {
    let grid = c.grid();
    let lat = LatticeSpec::new(grid);
    let mut out = OperatorMatrix::zeros(grid);
    for k in 0..grid.dual_k_count() {
        for l in 0..grid.samples_per_unit() {
            let coeff = c.value(k, l);
            if coeff == ZERO {
                continue;
            }
            let r = lat
                .dual_point(k, l)
                .expect("window indices in range")
                .lift()
                .matrix();
            out.add_scaled_in_place(&r, coeff).expect("same grid");
        }
    }
    out
}

/// Closed form for the dual-window coefficients of a multiplication
/// operator:
///
/// ```text
///     tau(M_g rho(s(k/a, l))^*)
///         = e^{i pi l k / a} ghat(l, k/a)     if a | k,    0 otherwise,
/// ```
///
/// where ghat(l, k/a) = (1/LM) sum_{j,m} g(theta_j, sigma_m)
/// e^{-2 pi i (l sigma_m + (k/a) theta_j)} is the Fourier coefficient of g.
pub fn mult_op_coeff(g: &OmegaFunction, k: usize, l: usize) -> Result<Complex64> {
    let grid = g.grid();
    let k_max = grid.dual_k_count();
    let l_max = grid.samples_per_unit();
    if k >= k_max || l >= l_max {
        return Err(Error::WindowIndex { k, l, k_max, l_max });
    }
    let a = grid.lattice_param();
    if k % a != 0 {
        return Ok(ZERO);
    }
    let d = grid.dim() as i64;
    let sub = grid.sub_len() as i64;
    let mut acc = ZERO;
    for j in 0..grid.period_units() {
        for m in 0..grid.samples_per_unit() {
            let arg = -2
                * (l as i64 * m as i64 * grid.period_units() as i64
                    + j as i64 * k as i64 * sub);
            acc += g.value(j, m) * phase(arg, d);
        }
    }
    let pre = phase((l * k) as i64, a as i64);
    Ok(pre * acc / grid.dim() as f64)
}

/// The N-periodization of a finite-rank operator, assembled from
/// multiplication operators as in the module docs.
pub fn periodize(x: &FactoredOperator) -> OperatorMatrix {
    let grid = x.grid();
    let sub = grid.sub_len() as i64;
    let mut out = OperatorMatrix::zeros(grid);
    for (phi, psi) in x.factors() {
        let zphi = zak::forward(phi);
        let zpsi = zak::forward(psi);
        for shift in 0..grid.lattice_param() as i64 {
            let shifted = zpsi.extend_steps(0, -shift * sub);
            let g = OmegaFunction {
                grid,
                values: zphi
                    .values()
                    .iter()
                    .zip(shifted.values())
                    .map(|(p, q)| p * q.conj())
                    .collect(),
            };
            let translate = PhasePoint::new(grid, -shift * sub, 0).lift().matrix();
            let term = mult_op(&g).matmul(&translate).expect("same grid");
            out.add_scaled_in_place(&term, ONE).expect("same grid");
        }
    }
    out
}

/// The average-free sum of conjugates rho_n X rho_n^{-1} over all d/a
/// distinct lattice translates; equals periodize(X) / a.
pub fn full_lattice_sum(x: &FactoredOperator) -> OperatorMatrix {
    let grid = x.grid();
    let xm = x.to_matrix();
    let m = grid.samples_per_unit() as i64;
    let l = grid.period_units() as i64;
    let a = grid.lattice_param() as i64;
    let mut out = OperatorMatrix::zeros(grid);
    for k in 0..l {
        for j in 0..(m / a) {
            let n = PhasePoint::new(grid, k * m, j * a * l);
            let r = n.lift().matrix();
            let term = r
                .matmul(&xm)
                .and_then(|p| p.matmul(&r.adjoint()))
                .expect("same grid");
            out.add_scaled_in_place(&term, ONE).expect("same grid");
        }
    }
    out
}

/// Both sides of the distribution-function identity at level lambda: the
/// fraction of grid cells with |g| > lambda, and tau of the spectral
/// projector M_{1_{|g| > lambda}}.
pub fn distribution_fractions(g: &OmegaFunction, lambda: f64) -> (f64, f64) {
    let count = g
        .values()
        .iter()
        .filter(|z| z.norm() > lambda)
        .count();
    let frac_count = count as f64 / g.grid().dim() as f64;
    let proj = mult_op(&g.indicator_above(lambda));
    let frac_trace = trace_tau(&proj).re;
    (frac_count, frac_trace)
}
