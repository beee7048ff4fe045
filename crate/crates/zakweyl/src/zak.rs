//! The Zak transform on the sampled model and its quasi-periodic extension.
//!
//! For a signal phi the transform tabulates
//!
//! ```text
//!     F(theta_j, sigma_m) = sum_{l=0}^{L-1} phi(sigma_m - l) e^{2 pi i l theta_j}
//! ```
//!
//! on the L x M grid theta_j = j/L, sigma_m = m/M. It is unitary onto the
//! array space with the weight 1/(LM), sends the modulated box with
//! frequency m' and slot n' to the pure exponential
//! e^{-2 pi i n' theta} e^{2 pi i m' sigma}, and continues off the
//! fundamental window by
//!
//! ```text
//!     F(theta + 1, sigma) = F(theta, sigma),
//!     F(theta, sigma + 1) = e^{2 pi i theta} F(theta, sigma).
//! ```
//!
//! The inversion formula reads phi(sigma_m + l) =
//! (1/L) sum_j F(theta_j, sigma_m) e^{2 pi i l theta_j}; the positive sign
//! in the exponent is forced by the forward convention above, as the
//! round-trip and modulated-box tests check.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::grid::{phase, GridSpec, Signal};
use crate::heisenberg::GroupElement;

/// Zak transform values on the L x M grid, row j holding theta_j = j/L.
#[derive(Clone, Debug, PartialEq)]
pub struct ZakArray {
    grid: GridSpec,
    values: Vec<Complex64>,
}

impl ZakArray {
    pub fn zeros(grid: GridSpec) -> Self {
        ZakArray {
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
        Ok(ZakArray { grid, values })
    }

    pub fn random<R: Rng>(grid: GridSpec, rng: &mut R) -> Self {
        let values = (0..grid.dim())
            .map(|_| Complex64::new(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0))
            .collect();
        ZakArray { grid, values }
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

    /// Value at row j (theta), column m (sigma), indices within the window.
    pub fn value(&self, j: usize, m: usize) -> Complex64 {
        self.values[j * self.grid.samples_per_unit() + m]
    }

    pub fn set_value(&mut self, j: usize, m: usize, v: Complex64) {
        self.values[j * self.grid.samples_per_unit() + m] = v;
    }

    /// Norm with the phase-space weight, (1/(LM) sum |F|^2)^{1/2}.
    pub fn weighted_norm(&self) -> f64 {
        let sum: f64 = self.values.iter().map(|v| v.norm_sqr()).sum();
        (sum / self.grid.dim() as f64).sqrt()
    }

    pub fn max_abs_diff(&self, other: &ZakArray) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    /// The quasi-periodic continuation sampled back onto the window:
    /// entry (j, m) holds F(theta_j + t/L, sigma_m + s/M) for theta steps t
    /// and sigma steps s. Whole theta periods drop out; each whole sigma
    /// period contributes e^{2 pi i theta}.
    pub fn extend_steps(&self, theta_steps: i64, sigma_steps: i64) -> ZakArray {
        let l = self.grid.period_units() as i64;
        let m_count = self.grid.samples_per_unit() as i64;
        let mut out = ZakArray::zeros(self.grid);
        for j in 0..l {
            let jp = (j + theta_steps).rem_euclid(l);
            for m in 0..m_count {
                let total = m + sigma_steps;
                let m0 = total.rem_euclid(m_count);
                let u = (total - m0) / m_count;
                let v = phase(2 * u * jp, l) * self.value(jp as usize, m0 as usize);
                out.set_value(j as usize, m as usize, v);
            }
        }
        out
    }

    /// [`extend_steps`](Self::extend_steps) in whole units: theta + p, sigma + q.
    pub fn extend_units(&self, p: i64, q: i64) -> ZakArray {
        self.extend_steps(
            p * self.grid.period_units() as i64,
            q * self.grid.samples_per_unit() as i64,
        )
    }
}

/// The transform itself, a direct O(L^2 M) sum.
pub fn forward(s: &Signal) -> ZakArray {
    let grid = s.grid();
    let l = grid.period_units() as i64;
    let m_count = grid.samples_per_unit() as i64;
    let mut out = ZakArray::zeros(grid);
    for j in 0..l {
        for m in 0..m_count {
            let mut acc = Complex64::new(0.0, 0.0);
            for ll in 0..l {
                acc += s.value(m - ll * m_count) * phase(2 * ll * j, l);
            }
            out.set_value(j as usize, m as usize, acc);
        }
    }
    out
}

/// The inverse transform; `forward` followed by `inverse` is the identity.
pub fn inverse(f: &ZakArray) -> Signal {
    let grid = f.grid();
    let l = grid.period_units() as i64;
    let m_count = grid.samples_per_unit() as i64;
    let mut out = Signal::zeros(grid);
    for m in 0..m_count {
        for ll in 0..l {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..l {
                acc += f.value(j as usize, m as usize) * phase(2 * ll * j, l);
            }
            out.values_mut()[(m + ll * m_count) as usize] = acc / l as f64;
        }
    }
    out
}

/// Largest entrywise deviation in the covariance identity
///
/// ```text
///     Z(rho(g) phi)(theta, sigma)
///         = z e^{i pi (x y + 2 y sigma)} (Z phi)(theta - y, sigma + x),
/// ```
///
/// evaluated through [`ZakArray::extend_steps`] on the right.
pub fn covariance_error(g: &GroupElement, s: &Signal) -> Result<f64> {
    g.grid().expect_same(&s.grid())?;
    let grid = s.grid();
    let d = grid.dim() as i64;
    let c = g.canonical();
    let x = c.point().x_steps();
    let y = c.point().y_steps();

    let lhs = forward(&c.apply(s)?);
    let shifted = forward(s).extend_steps(-y, x);
    let mut err = 0.0f64;
    for j in 0..grid.period_units() {
        for m in 0..grid.samples_per_unit() {
            let rhs = c.scalar() * phase(x * y + 2 * y * m as i64, d) * shifted.value(j, m);
            err = err.max((lhs.value(j, m) - rhs).norm());
        }
    }
    Ok(err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heisenberg::PhasePoint;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn grid() -> GridSpec {
        GridSpec::new(8, 4, 2).unwrap()
    }

    #[test]
    fn round_trip_from_signal_side() {
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        for _ in 0..20 {
            let s = Signal::random(grid(), &mut rng);
            let back = inverse(&forward(&s));
            assert!(back.max_abs_diff(&s) < 1e-14);
        }
    }

    #[test]
    fn round_trip_from_array_side() {
        let mut rng = ChaCha8Rng::seed_from_u64(103);
        for _ in 0..20 {
            let f = ZakArray::random(grid(), &mut rng);
            let back = forward(&inverse(&f));
            assert!(back.max_abs_diff(&f) < 1e-14);
        }
    }

    #[test]
    fn every_delta_round_trips() {
        // pins the sign convention of the inversion formula: a wrong sign
        // would return the delta reflected to m - lM instead of m + lM
        for n in 0..grid().dim() as i64 {
            let s = Signal::delta(grid(), n);
            let back = inverse(&forward(&s));
            assert!(back.max_abs_diff(&s) < 1e-15, "delta at {n}");
        }
    }

    #[test]
    fn transform_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(107);
        for _ in 0..20 {
            let s = Signal::random(grid(), &mut rng);
            let f = forward(&s);
            assert!((f.weighted_norm() - s.norm()).abs() < 1e-13);
        }
    }

    #[test]
    fn modulated_boxes_become_pure_exponentials() {
        let g = grid();
        let l = g.period_units() as i64;
        let m_count = g.samples_per_unit() as i64;
        for freq in 0..m_count {
            for slot in 0..l {
                let f = forward(&Signal::modulated_box(g, freq, slot));
                for j in 0..l {
                    for m in 0..m_count {
                        let expect = phase(-2 * slot * j, l) * phase(2 * freq * m, m_count);
                        assert!(
                            (f.value(j as usize, m as usize) - expect).norm() < 1e-15,
                            "freq={freq} slot={slot} at ({j}, {m})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn whole_theta_periods_change_nothing() {
        let mut rng = ChaCha8Rng::seed_from_u64(109);
        let f = forward(&Signal::random(grid(), &mut rng));
        for p in [-2i64, -1, 1, 3] {
            assert_eq!(f.extend_units(p, 0), f);
        }
    }

    #[test]
    fn whole_sigma_periods_contribute_the_quasi_phase() {
        let mut rng = ChaCha8Rng::seed_from_u64(113);
        let g = grid();
        let f = forward(&Signal::random(g, &mut rng));
        let l = g.period_units() as i64;
        for q in [-2i64, -1, 1, 2] {
            let e = f.extend_units(0, q);
            for j in 0..g.period_units() {
                for m in 0..g.samples_per_unit() {
                    let expect = phase(2 * q * j as i64, l) * f.value(j, m);
                    assert!((e.value(j, m) - expect).norm() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn extension_composes_sigma_first() {
        // extending in sigma and then in theta agrees with one combined
        // extension; the other order would re-reference the quasi-period
        // phase to the shifted row and differs by e^{2 pi i u t / L}
        let mut rng = ChaCha8Rng::seed_from_u64(127);
        let f = forward(&Signal::random(grid(), &mut rng));
        for (t, s) in [(1i64, 3i64), (-3, 7), (4, -2), (5, 11)] {
            let once = f.extend_steps(t, s);
            let twice = f.extend_steps(0, s).extend_steps(t, 0);
            assert!(once.max_abs_diff(&twice) < 1e-13, "({t},{s})");
        }
    }

    #[test]
    fn extension_is_additive_in_each_direction() {
        let mut rng = ChaCha8Rng::seed_from_u64(128);
        let f = forward(&Signal::random(grid(), &mut rng));
        for (s1, s2) in [(3i64, -5i64), (7, 11), (-2, 9)] {
            let once = f.extend_steps(0, s1 + s2);
            let twice = f.extend_steps(0, s2).extend_steps(0, s1);
            assert!(once.max_abs_diff(&twice) < 1e-13, "({s1},{s2})");
        }
        for (t1, t2) in [(1i64, 2i64), (-3, 5), (4, -6)] {
            let once = f.extend_steps(t1 + t2, 0);
            let twice = f.extend_steps(t2, 0).extend_steps(t1, 0);
            assert!(once.max_abs_diff(&twice) < 1e-13, "({t1},{t2})");
        }
    }

    #[test]
    fn sigma_quasi_periodicity_matches_the_definition() {
        // F(theta, sigma_m + 1) computed by re-windowing the defining sum
        // equals the value the extension rule produces
        let mut rng = ChaCha8Rng::seed_from_u64(131);
        let g = grid();
        let s = Signal::random(g, &mut rng);
        let f = forward(&s);
        let l = g.period_units() as i64;
        let m_count = g.samples_per_unit() as i64;
        let e = f.extend_steps(0, m_count);
        for j in 0..l {
            for m in 0..m_count {
                // direct: sum_l phi(sigma + 1 - l) e^{2 pi i l theta_j}
                let mut acc = Complex64::new(0.0, 0.0);
                for ll in 0..l {
                    acc += s.value(m + m_count - ll * m_count) * phase(2 * ll * j, l);
                }
                assert!((acc - e.value(j as usize, m as usize)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn covariance_holds_for_random_elements() {
        let mut rng = ChaCha8Rng::seed_from_u64(137);
        use rand::Rng;
        let g = grid();
        let d = g.dim() as i64;
        for _ in 0..50 {
            let point = PhasePoint::new(
                g,
                rng.gen_range(-2 * d..2 * d),
                rng.gen_range(-2 * d..2 * d),
            );
            let elem = GroupElement::new(point, phase(rng.gen_range(0..2 * d), d)).unwrap();
            let s = Signal::random(g, &mut rng);
            assert!(covariance_error(&elem, &s).unwrap() < 1e-12);
        }
    }

    #[test]
    fn covariance_for_pure_translation_and_modulation() {
        let mut rng = ChaCha8Rng::seed_from_u64(139);
        let g = grid();
        let s = Signal::random(g, &mut rng);
        let translation = PhasePoint::new(g, 3, 0).lift();
        let modulation = PhasePoint::new(g, 0, 5).lift();
        assert!(covariance_error(&translation, &s).unwrap() < 1e-13);
        assert!(covariance_error(&modulation, &s).unwrap() < 1e-13);
    }
}
