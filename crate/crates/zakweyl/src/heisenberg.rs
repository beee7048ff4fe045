//! The reduced Heisenberg group over the sampled phase plane and its
//! Schrodinger-type representation.
//!
//! Group elements are (x, y, z) with x a multiple of 1/M, y a multiple of
//! 1/L and z on the unit circle, multiplying by
//!
//! ```text
//!     (x, y, z)(x', y', z') = (x + x', y + y', z z' e^{i pi (x y' - y x')}),
//! ```
//!
//! and acting on signals by
//!
//! ```text
//!     (rho(x, y, z) phi)(t) = z e^{i pi (x y + 2 y t)} phi(t + x).
//! ```
//!
//! Coordinates are stored as unreduced integer numerators (x = j/M, y = k/L
//! with j, k ranging over all of Z), because reducing them mod (L, M) entry
//! by entry breaks associativity: wrapping a coordinate changes the central
//! cocycle by a sign that depends on the other factor. Instead the group is
//! treated as a quotient. For integers p, q,
//!
//! ```text
//!     rho(x + pL, y + qM, z) = (-1)^{p q d + q j0 + p k0} rho(x0, y0, z)
//! ```
//!
//! with (x0, y0) = (j0/M, k0/L) the representative in [0, L) x [0, M), so
//! [`GroupElement::canonical`] folds exactly that sign into z. Composition
//! stays exact in unreduced coordinates and equality is decided on
//! canonical forms; the representation is constant on equivalence classes,
//! which `rho_descends_to_the_quotient` pins down.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{phase, GridSpec, Signal};
use crate::operator::OperatorMatrix;

/// A point of the sampled phase plane: x = x_steps/M, y = y_steps/L.
///
/// Equality is modulo the fundamental window [0, L) x [0, M).
#[derive(Clone, Copy, Debug)]
pub struct PhasePoint {
    grid: GridSpec,
    x_steps: i64,
    y_steps: i64,
}

impl PhasePoint {
    pub fn new(grid: GridSpec, x_steps: i64, y_steps: i64) -> Self {
        PhasePoint {
            grid,
            x_steps,
            y_steps,
        }
    }

    pub fn zero(grid: GridSpec) -> Self {
        PhasePoint::new(grid, 0, 0)
    }

    /// Accepts only coordinates within 1e-9 of the grid spacings 1/M, 1/L.
    pub fn from_coords(grid: GridSpec, x: f64, y: f64) -> Result<Self> {
        let xs = x * grid.samples_per_unit() as f64;
        let ys = y * grid.period_units() as f64;
        if (xs - xs.round()).abs() > 1e-9 || (ys - ys.round()).abs() > 1e-9 {
            return Err(Error::OffGrid { x, y });
        }
        Ok(PhasePoint::new(grid, xs.round() as i64, ys.round() as i64))
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn x_steps(&self) -> i64 {
        self.x_steps
    }

    pub fn y_steps(&self) -> i64 {
        self.y_steps
    }

    pub fn x_value(&self) -> f64 {
        self.x_steps as f64 / self.grid.samples_per_unit() as f64
    }

    pub fn y_value(&self) -> f64 {
        self.y_steps as f64 / self.grid.period_units() as f64
    }

    /// The representative with x in [0, L) and y in [0, M).
    pub fn canonical(&self) -> PhasePoint {
        let d = self.grid.dim() as i64;
        PhasePoint::new(
            self.grid,
            self.x_steps.rem_euclid(d),
            self.y_steps.rem_euclid(d),
        )
    }

    pub fn add(&self, other: &PhasePoint) -> Result<PhasePoint> {
        self.grid.expect_same(&other.grid)?;
        Ok(PhasePoint::new(
            self.grid,
            self.x_steps + other.x_steps,
            self.y_steps + other.y_steps,
        ))
    }

    pub fn neg(&self) -> PhasePoint {
        PhasePoint::new(self.grid, -self.x_steps, -self.y_steps)
    }

    pub fn sub(&self, other: &PhasePoint) -> Result<PhasePoint> {
        self.add(&other.neg())
    }

    /// The section w -> (w, 1) into the group.
    pub fn lift(&self) -> GroupElement {
        GroupElement {
            point: *self,
            scalar: Complex64::new(1.0, 0.0),
        }
    }
}

impl PartialEq for PhasePoint {
    fn eq(&self, other: &Self) -> bool {
        if self.grid != other.grid {
            return false;
        }
        let a = self.canonical();
        let b = other.canonical();
        a.x_steps == b.x_steps && a.y_steps == b.y_steps
    }
}

impl Eq for PhasePoint {}

/// Numerator of the symplectic form x y' - y x' over the denominator d.
fn symplectic_num(w: &PhasePoint, v: &PhasePoint) -> i64 {
    w.x_steps * v.y_steps - w.y_steps * v.x_steps
}

/// The bicharacter e(w, v) = e^{2 pi i (x y' - y x')}.
pub fn pairing(w: &PhasePoint, v: &PhasePoint) -> Result<Complex64> {
    w.grid.expect_same(&v.grid)?;
    Ok(phase(2 * symplectic_num(w, v), w.grid.dim() as i64))
}

/// The multiplier psi(w, v) = e^{i pi (x y' - y x')}; its square is the
/// pairing.
pub fn cocycle(w: &PhasePoint, v: &PhasePoint) -> Result<Complex64> {
    w.grid.expect_same(&v.grid)?;
    Ok(phase(symplectic_num(w, v), w.grid.dim() as i64))
}

/// A group element (x, y, z) with |z| = 1.
#[derive(Clone, Copy, Debug)]
pub struct GroupElement {
    point: PhasePoint,
    scalar: Complex64,
}

impl GroupElement {
    pub fn new(point: PhasePoint, scalar: Complex64) -> Result<Self> {
        if (scalar.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::ScalarOffCircle(scalar.norm()));
        }
        Ok(GroupElement { point, scalar })
    }

    pub fn identity(grid: GridSpec) -> Self {
        GroupElement {
            point: PhasePoint::zero(grid),
            scalar: Complex64::new(1.0, 0.0),
        }
    }

    pub fn grid(&self) -> GridSpec {
        self.point.grid
    }

    /// Projection to the phase plane, forgetting the scalar.
    pub fn point(&self) -> PhasePoint {
        self.point
    }

    pub fn scalar(&self) -> Complex64 {
        self.scalar
    }

    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement> {
        let point = self.point.add(&other.point)?;
        let scalar = self.scalar * other.scalar * cocycle(&self.point, &other.point)?;
        Ok(GroupElement { point, scalar })
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            point: self.point.neg(),
            scalar: self.scalar.conj(),
        }
    }

    /// The equivalent element with coordinates in [0, L) x [0, M); the
    /// wrapped periods leave the compensating sign described in the module
    /// docs behind in the scalar.
    pub fn canonical(&self) -> GroupElement {
        let d = self.point.grid.dim() as i64;
        let x0 = self.point.x_steps.rem_euclid(d);
        let y0 = self.point.y_steps.rem_euclid(d);
        let p = (self.point.x_steps - x0) / d;
        let q = (self.point.y_steps - y0) / d;
        let exponent = p * q * d + q * x0 + p * y0;
        let sign = if exponent.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        GroupElement {
            point: PhasePoint::new(self.point.grid, x0, y0),
            scalar: self.scalar * sign,
        }
    }

    /// Equality in the quotient group, up to `tol` on the scalar.
    pub fn approx_eq(&self, other: &GroupElement, tol: f64) -> bool {
        let a = self.canonical();
        let b = other.canonical();
        a.point == b.point && (a.scalar - b.scalar).norm() <= tol
    }

    /// The representation: `(rho(g) phi)[n] = z e^{i pi (j k + 2 k n)/d} phi[n + j]`
    /// for g with numerators (j, k).
    ///
    /// Evaluated on the canonical form, so equivalent elements produce
    /// bitwise identical output.
    pub fn apply(&self, s: &Signal) -> Result<Signal> {
        self.point.grid.expect_same(&s.grid())?;
        let c = self.canonical();
        let d = c.point.grid.dim() as i64;
        let j = c.point.x_steps;
        let k = c.point.y_steps;
        let mut out = Signal::zeros(c.point.grid);
        for n in 0..d {
            out.values_mut()[n as usize] = c.scalar * phase(j * k + 2 * k * n, d) * s.value(n + j);
        }
        Ok(out)
    }

    /// The representation as a matrix; one nonzero entry per row.
    pub fn matrix(&self) -> OperatorMatrix {
        let c = self.canonical();
        let grid = c.point.grid;
        let d = grid.dim() as i64;
        let j = c.point.x_steps;
        let k = c.point.y_steps;
        let mut out = OperatorMatrix::zeros(grid);
        for n in 0..d {
            let col = (n + j).rem_euclid(d);
            out.set_entry(
                n as usize,
                col as usize,
                c.scalar * phase(j * k + 2 * k * n, d),
            );
        }
        out
    }
}

/// The separating lattice N = Z x aZ, its annihilator N-perp = (1/a)Z x Z,
/// and the fundamental window of dual points used for coefficients.
#[derive(Clone, Copy, Debug)]
pub struct LatticeSpec {
    grid: GridSpec,
}

impl LatticeSpec {
    pub fn new(grid: GridSpec) -> Self {
        LatticeSpec { grid }
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    /// Generators (1, 0) and (0, a) of N.
    pub fn generators(&self) -> [PhasePoint; 2] {
        let m = self.grid.samples_per_unit() as i64;
        let l = self.grid.period_units() as i64;
        let a = self.grid.lattice_param() as i64;
        [
            PhasePoint::new(self.grid, m, 0),
            PhasePoint::new(self.grid, 0, a * l),
        ]
    }

    /// Generators (1/a, 0) and (0, 1) of N-perp.
    pub fn dual_generators(&self) -> [PhasePoint; 2] {
        let l = self.grid.period_units() as i64;
        [
            PhasePoint::new(self.grid, self.grid.sub_len() as i64, 0),
            PhasePoint::new(self.grid, 0, l),
        ]
    }

    /// Whether the canonical form of w lies on N.
    pub fn contains(&self, w: &PhasePoint) -> bool {
        let c = w.canonical();
        let m = self.grid.samples_per_unit() as i64;
        let al = (self.grid.lattice_param() * self.grid.period_units()) as i64;
        c.x_steps % m == 0 && c.y_steps % al == 0
    }

    /// Whether the canonical form of w lies on N-perp.
    pub fn dual_contains(&self, w: &PhasePoint) -> bool {
        let c = w.canonical();
        let sub = self.grid.sub_len() as i64;
        let l = self.grid.period_units() as i64;
        c.x_steps % sub == 0 && c.y_steps % l == 0
    }

    /// The dual point (k/a, l) for window indices 0 <= k < aL, 0 <= l < M.
    pub fn dual_point(&self, k: usize, l: usize) -> Result<PhasePoint> {
        let k_max = self.grid.dual_k_count();
        let l_max = self.grid.samples_per_unit();
        if k >= k_max || l >= l_max {
            return Err(Error::WindowIndex { k, l, k_max, l_max });
        }
        Ok(PhasePoint::new(
            self.grid,
            (k * self.grid.sub_len()) as i64,
            (l * self.grid.period_units()) as i64,
        ))
    }

    /// All aLM dual window points, k-major.
    pub fn dual_window(&self) -> Vec<PhasePoint> {
        let mut out = Vec::with_capacity(self.grid.dual_k_count() * self.grid.samples_per_unit());
        for k in 0..self.grid.dual_k_count() {
            for l in 0..self.grid.samples_per_unit() {
                out.push(self.dual_point(k, l).expect("indices in range"));
            }
        }
        out
    }

    /// Window indices of a point on N-perp, if it is one.
    pub fn window_index(&self, w: &PhasePoint) -> Option<(usize, usize)> {
        if self.grid != w.grid {
            return None;
        }
        let c = w.canonical();
        let sub = self.grid.sub_len() as i64;
        let l = self.grid.period_units() as i64;
        if c.x_steps % sub != 0 || c.y_steps % l != 0 {
            return None;
        }
        Some(((c.x_steps / sub) as usize, (c.y_steps / l) as usize))
    }

    /// Whether window index (k, l) is strictly inside the Nyquist box, i.e.
    /// its signed representative avoids the self-conjugate boundary.
    pub fn nyquist_interior(&self, k: usize, l: usize) -> bool {
        let kc = self.grid.dual_k_count() as i64;
        let lc = self.grid.samples_per_unit() as i64;
        let ks = if 2 * (k as i64) > kc {
            k as i64 - kc
        } else {
            k as i64
        };
        let ls = if 2 * (l as i64) > lc {
            l as i64 - lc
        } else {
            l as i64
        };
        2 * ks.abs() < kc && 2 * ls.abs() < lc
    }
}
