//! Finite sampled model of the line and the signals living on it.
//!
//! Time is sampled at t_n = n/M and wraps with period L, so a signal is a
//! vector of d = L*M complex samples indexed mod d. The inner product
//! carries the quadrature weight 1/M,
//!
//! ```text
//!     <phi, psi> = (1/M) * sum_n phi(t_n) * conj(psi(t_n)),
//! ```
//!
//! which makes the indicator of a unit interval a unit vector and keeps
//! discrete norms aligned with the integrals they sample. The lattice
//! parameter `a` divides M and fixes the sub-interval length M/a used by
//! the periodization machinery.
//!
//! Every phase in this crate is a root of unity e^{i*pi*q} with q rational.
//! [`phase`] keeps the rational exact (integer numerator and denominator,
//! reduced mod 2) before ever touching floating point, so identities that
//! hold exactly in the model hold to machine precision in the code.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// e^{i*pi*num/den} with the rational reduced exactly before evaluation.
///
/// Quarter turns (num/den a multiple of 1/2) are returned as exact
/// `1, i, -1, -i` so that the many phases that collapse to signs do so
/// without roundoff.
pub fn phase(num: i64, den: i64) -> Complex64 {
    debug_assert!(den > 0, "phase denominator must be positive");
    let r = num.rem_euclid(2 * den);
    if (2 * r) % den == 0 {
        return match (2 * r) / den {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            3 => Complex64::new(0.0, -1.0),
            _ => unreachable!(),
        };
    }
    let angle = PI * (r as f64) / (den as f64);
    Complex64::new(angle.cos(), angle.sin())
}

/// Sampling parameters shared by every object in the model.
///
/// `M` samples per unit interval, `L` unit intervals per period, lattice
/// parameter `a`. The total dimension is d = L*M.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    #[serde(rename = "M")]
    m: usize,
    #[serde(rename = "L")]
    l: usize,
    a: usize,
}

impl GridSpec {
    /// Validates M >= 2a, L >= 2, a >= 2 and a | M.
    pub fn new(m: usize, l: usize, a: usize) -> Result<Self> {
        let spec = GridSpec { m, l, a };
        spec.validate()?;
        Ok(spec)
    }

    /// Re-checks the invariants, for values that arrived through serde.
    pub fn validate(&self) -> Result<()> {
        if self.a < 2 {
            return Err(Error::InvalidGrid(format!(
                "lattice parameter a = {} must be at least 2",
                self.a
            )));
        }
        if self.l < 2 {
            return Err(Error::InvalidGrid(format!(
                "period L = {} must be at least 2",
                self.l
            )));
        }
        if self.m < 2 * self.a {
            return Err(Error::InvalidGrid(format!(
                "M = {} must be at least 2a = {}",
                self.m,
                2 * self.a
            )));
        }
        if self.m % self.a != 0 {
            return Err(Error::InvalidGrid(format!(
                "a = {} must divide M = {}",
                self.a, self.m
            )));
        }
        Ok(())
    }

    /// Samples per unit interval.
    pub fn samples_per_unit(&self) -> usize {
        self.m
    }

    /// Unit intervals per period.
    pub fn period_units(&self) -> usize {
        self.l
    }

    /// Lattice parameter.
    pub fn lattice_param(&self) -> usize {
        self.a
    }

    /// Total dimension d = L*M.
    pub fn dim(&self) -> usize {
        self.l * self.m
    }

    /// Samples per lattice sub-interval, M/a.
    pub fn sub_len(&self) -> usize {
        self.m / self.a
    }

    /// Number of dual-window columns, a*L.
    pub fn dual_k_count(&self) -> usize {
        self.a * self.l
    }

    pub(crate) fn expect_same(&self, other: &GridSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GridMismatch(
                self.m, self.l, self.a, other.m, other.l, other.a,
            ))
        }
    }
}

impl std::fmt::Display for GridSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(M={}, L={}, a={})", self.m, self.l, self.a)
    }
}

/// A sampled signal: d = L*M complex values, index n holding the sample at
/// t_n = n/M, everything cyclic mod d.
#[derive(Clone, Debug, PartialEq)]
pub struct Signal {
    grid: GridSpec,
    values: Vec<Complex64>,
}

impl Signal {
    pub fn zeros(grid: GridSpec) -> Self {
        Signal {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.dim()],
        }
    }

    pub fn from_values(grid: GridSpec, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.dim() {
            return Err(Error::LengthMismatch {
                expected: grid.dim(),
                got: values.len(),
            });
        }
        Ok(Signal { grid, values })
    }

    /// The unit impulse at sample index n (taken mod d).
    pub fn delta(grid: GridSpec, n: i64) -> Self {
        let mut s = Signal::zeros(grid);
        let d = grid.dim() as i64;
        s.values[n.rem_euclid(d) as usize] = Complex64::new(1.0, 0.0);
        s
    }

    /// Indicator of `len` consecutive samples starting at `start` (mod d).
    pub fn indicator_span(grid: GridSpec, start: i64, len: usize) -> Self {
        let mut s = Signal::zeros(grid);
        let d = grid.dim() as i64;
        for k in 0..len as i64 {
            s.values[(start + k).rem_euclid(d) as usize] = Complex64::new(1.0, 0.0);
        }
        s
    }

    /// The modulated box e^{2 pi i freq t} on the unit interval [slot, slot+1).
    ///
    /// Over freq = 0..M-1 and slot = 0..L-1 these form an orthonormal basis,
    /// and they are the signals the Zak transform maps to pure exponentials.
    pub fn modulated_box(grid: GridSpec, freq: i64, slot: i64) -> Self {
        let mut s = Signal::zeros(grid);
        let m = grid.samples_per_unit() as i64;
        let d = grid.dim() as i64;
        for k in 0..m {
            let n = (slot * m + k).rem_euclid(d);
            s.values[n as usize] = phase(2 * freq * n, m);
        }
        s
    }

    /// A smooth periodic bump: the L-periodization of exp(-pi ((t-center)/width)^2).
    pub fn periodized_gaussian(grid: GridSpec, center: f64, width: f64) -> Self {
        let mut s = Signal::zeros(grid);
        let l = grid.period_units() as f64;
        for (n, v) in s.values.iter_mut().enumerate() {
            let t = n as f64 / grid.samples_per_unit() as f64;
            let mut acc = 0.0;
            for k in -4i32..=4 {
                let u = (t - center + k as f64 * l) / width;
                acc += (-PI * u * u).exp();
            }
            *v = Complex64::new(acc, 0.0);
        }
        s
    }

    /// Independent uniform samples on the unit square, re and im in [-1, 1).
    pub fn random<R: Rng>(grid: GridSpec, rng: &mut R) -> Self {
        let values = (0..grid.dim())
            .map(|_| Complex64::new(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0))
            .collect();
        Signal { grid, values }
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    /// Sample at cyclic index n.
    pub fn value(&self, n: i64) -> Complex64 {
        let d = self.grid.dim() as i64;
        self.values[n.rem_euclid(d) as usize]
    }

    /// Weighted inner product (1/M) sum phi conj(psi), linear in `self`.
    pub fn inner(&self, other: &Signal) -> Result<Complex64> {
        self.grid.expect_same(&other.grid)?;
        let sum: Complex64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| x * y.conj())
            .sum();
        Ok(sum / self.grid.samples_per_unit() as f64)
    }

    pub fn norm(&self) -> f64 {
        let sum: f64 = self.values.iter().map(|v| v.norm_sqr()).sum();
        (sum / self.grid.samples_per_unit() as f64).sqrt()
    }

    pub fn scaled(&self, c: Complex64) -> Signal {
        Signal {
            grid: self.grid,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &Signal) -> Result<Signal> {
        self.grid.expect_same(&other.grid)?;
        Ok(Signal {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(x, y)| x + y)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Signal) -> Result<Signal> {
        self.grid.expect_same(&other.grid)?;
        Ok(Signal {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(x, y)| x - y)
                .collect(),
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Signal) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }
}
