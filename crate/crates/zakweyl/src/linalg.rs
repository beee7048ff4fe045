//! Small dense complex linear algebra: singular values by one-sided Jacobi,
//! Hermitian eigensystems by two-sided Jacobi, and orthonormal complements
//! by Householder reflections.
//!
//! The matrices in this crate are tiny (dimension L*M, typically 32 or 64),
//! so the quadratic-convergence Jacobi iterations are plenty fast, and being
//! free of blocking or threading they are bit-for-bit deterministic, which
//! the report formats rely on.

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn col_norm_sqr(col: &[Complex64]) -> f64 {
    col.iter().map(|v| v.norm_sqr()).sum()
}

/// Singular values of a row-major `rows x cols` matrix, sorted descending.
///
/// One-sided Jacobi: rotate pairs of columns until they are mutually
/// orthogonal, then read the singular values off as column norms. Each
/// rotation solves t^2 + 2*zeta*t - 1 = 0 with the stable root, after a
/// unimodular twist makes the column inner product real.
pub fn singular_values(rows: usize, cols: usize, a: &[Complex64]) -> Vec<f64> {
    assert_eq!(a.len(), rows * cols, "matrix shape mismatch");
    let mut c: Vec<Vec<Complex64>> = (0..cols)
        .map(|j| (0..rows).map(|i| a[i * cols + j]).collect())
        .collect();

    for _sweep in 0..60 {
        let mut worst = 0.0f64;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let alpha = col_norm_sqr(&c[p]);
                let beta = col_norm_sqr(&c[q]);
                if alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                let gamma: Complex64 = c[p]
                    .iter()
                    .zip(&c[q])
                    .map(|(u, v)| u.conj() * v)
                    .sum();
                let rel = gamma.norm() / (alpha * beta).sqrt();
                worst = worst.max(rel);
                if rel <= 1e-15 {
                    continue;
                }
                let twist = gamma / gamma.norm();
                let zeta = (beta - alpha) / (2.0 * gamma.norm());
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for i in 0..rows {
                    let u = c[p][i];
                    let v = c[q][i] * twist.conj();
                    c[p][i] = cs * u - sn * v;
                    c[q][i] = (sn * u + cs * v) * twist;
                }
            }
        }
        if worst <= 1e-15 {
            break;
        }
    }

    let mut sigma: Vec<f64> = c.iter().map(|col| col_norm_sqr(col).sqrt()).collect();
    sigma.sort_by(|x, y| y.partial_cmp(x).unwrap());
    sigma
}

/// Eigenvalues (descending) and eigenvectors of a Hermitian `n x n` matrix.
///
/// Returns `(values, vectors)` where `vectors` is row-major with the k-th
/// eigenvector in column k, phase-fixed so its largest component is real
/// positive. Only the Hermitian part of the input is consulted.
pub fn hermitian_eig(n: usize, a: &[Complex64]) -> (Vec<f64>, Vec<Complex64>) {
    assert_eq!(a.len(), n * n, "matrix shape mismatch");
    let mut h: Vec<Complex64> = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            0.5 * (a[i * n + j] + a[j * n + i].conj())
        })
        .collect();
    let mut v: Vec<Complex64> = vec![ZERO; n * n];
    for i in 0..n {
        v[i * n + i] = Complex64::new(1.0, 0.0);
    }

    let scale = (0..n)
        .map(|i| h[i * n + i].re.abs())
        .fold(1e-300, f64::max)
        .max(h.iter().map(|z| z.norm()).fold(0.0, f64::max));

    for _sweep in 0..60 {
        let mut worst = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                let hpq = h[p * n + q];
                worst = worst.max(hpq.norm());
                if hpq.norm() <= 1e-15 * scale {
                    continue;
                }
                let app = h[p * n + p].re;
                let aqq = h[q * n + q].re;
                let twist = hpq / hpq.norm();
                let zeta = (aqq - app) / (2.0 * hpq.norm());
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                // G[pp] = c, G[pq] = s*twist, G[qp] = -s*conj(twist), G[qq] = c
                for i in 0..n {
                    let hp = h[i * n + p];
                    let hq = h[i * n + q];
                    h[i * n + p] = cs * hp - sn * twist.conj() * hq;
                    h[i * n + q] = sn * twist * hp + cs * hq;
                    let vp = v[i * n + p];
                    let vq = v[i * n + q];
                    v[i * n + p] = cs * vp - sn * twist.conj() * vq;
                    v[i * n + q] = sn * twist * vp + cs * vq;
                }
                for j in 0..n {
                    let hp = h[p * n + j];
                    let hq = h[q * n + j];
                    h[p * n + j] = cs * hp - sn * twist * hq;
                    h[q * n + j] = sn * twist.conj() * hp + cs * hq;
                }
            }
        }
        if worst <= 1e-15 * scale {
            break;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| h[i * n + i].re).collect();
    order.sort_by(|&x, &y| diag[y].partial_cmp(&diag[x]).unwrap());

    let values: Vec<f64> = order.iter().map(|&k| diag[k]).collect();
    let mut vectors = vec![ZERO; n * n];
    for (new_col, &old_col) in order.iter().enumerate() {
        let mut best = 0usize;
        let mut best_abs = -1.0;
        for i in 0..n {
            let ab = v[i * n + old_col].norm();
            if ab > best_abs + 1e-15 {
                best_abs = ab;
                best = i;
            }
        }
        let pivot = v[best * n + old_col];
        let fix = if pivot.norm() > 0.0 {
            pivot.conj() / pivot.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..n {
            vectors[i * n + new_col] = v[i * n + old_col] * fix;
        }
    }
    (values, vectors)
}

/// A unit vector orthogonal to every given column, from the last column of
/// the full Q factor of a Householder QR.
///
/// `cols` holds b < rows column vectors of length `rows`. Reflections whose
/// working subcolumn is negligible are skipped, so linearly dependent or
/// zero columns are harmless; with no columns at all the result is the last
/// standard basis vector. The returned vector has its largest component
/// real positive (ties broken by lowest index).
pub fn orthocomplement_column(rows: usize, cols: &[Vec<Complex64>]) -> Vec<Complex64> {
    let b = cols.len();
    assert!(b < rows, "need fewer columns than rows");
    let scale = cols
        .iter()
        .map(|c| col_norm_sqr(c).sqrt())
        .fold(0.0, f64::max)
        .max(1e-300);

    let mut work: Vec<Vec<Complex64>> = cols.to_vec();
    for c in &work {
        assert_eq!(c.len(), rows, "column length mismatch");
    }
    // reflectors: (start row, vector v, tau) with H = I - tau v v^H
    let mut reflectors: Vec<Option<(Vec<Complex64>, f64)>> = Vec::with_capacity(b);
    for j in 0..b {
        let sub: Vec<Complex64> = work[j][j..].to_vec();
        let normx = col_norm_sqr(&sub).sqrt();
        if normx <= 1e-14 * scale {
            reflectors.push(None);
            continue;
        }
        let mut v = sub;
        let head = v[0];
        let sign = if head.norm() > 0.0 {
            head / head.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        v[0] += sign * normx;
        let tau = 2.0 / col_norm_sqr(&v);
        for col in work.iter_mut().skip(j + 1) {
            let dot: Complex64 = v
                .iter()
                .zip(col[j..].iter())
                .map(|(u, w)| u.conj() * w)
                .sum();
            for (u, w) in v.iter().zip(col[j..].iter_mut()) {
                *w -= tau * dot * u;
            }
        }
        reflectors.push(Some((v, tau)));
    }

    let mut q = vec![ZERO; rows];
    q[rows - 1] = Complex64::new(1.0, 0.0);
    for j in (0..b).rev() {
        if let Some((v, tau)) = &reflectors[j] {
            let dot: Complex64 = v
                .iter()
                .zip(q[j..].iter())
                .map(|(u, w)| u.conj() * w)
                .sum();
            for (u, w) in v.iter().zip(q[j..].iter_mut()) {
                *w -= *tau * dot * u;
            }
        }
    }

    let mut best = 0usize;
    let mut best_abs = -1.0;
    for (i, z) in q.iter().enumerate() {
        if z.norm() > best_abs + 1e-15 {
            best_abs = z.norm();
            best = i;
        }
    }
    let pivot = q[best];
    let fix = if pivot.norm() > 0.0 {
        pivot.conj() / pivot.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let nrm = col_norm_sqr(&q).sqrt();
    for z in q.iter_mut() {
        *z = *z * fix / nrm;
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Vec<Complex64> {
        (0..rows * cols)
            .map(|_| Complex64::new(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0))
            .collect()
    }

    #[test]
    fn singular_values_of_diagonal() {
        let a = vec![
            Complex64::new(0.0, 3.0),
            ZERO,
            ZERO,
            Complex64::new(-1.0, 0.0),
        ];
        let s = singular_values(2, 2, &a);
        assert!((s[0] - 3.0).abs() < 1e-14);
        assert!((s[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn singular_values_of_nilpotent() {
        let a = vec![ZERO, Complex64::new(2.0, 1.0), ZERO, ZERO];
        let s = singular_values(2, 2, &a);
        assert!((s[0] - 5.0f64.sqrt()).abs() < 1e-14);
        assert!(s[1].abs() < 1e-14);
    }

    #[test]
    fn singular_squares_sum_to_frobenius() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = random_matrix(&mut rng, 7, 7);
        let s = singular_values(7, 7, &a);
        let fro: f64 = a.iter().map(|z| z.norm_sqr()).sum();
        let ssum: f64 = s.iter().map(|x| x * x).sum();
        assert!((fro - ssum).abs() < 1e-12 * fro);
    }

    #[test]
    fn rank_deficient_matrix_has_tiny_smallest_value() {
        // outer product u v^H has rank one
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = random_matrix(&mut rng, 6, 1);
        let v = random_matrix(&mut rng, 6, 1);
        let mut a = vec![ZERO; 36];
        for i in 0..6 {
            for j in 0..6 {
                a[i * 6 + j] = u[i] * v[j].conj();
            }
        }
        let s = singular_values(6, 6, &a);
        assert!(s[0] > 0.1);
        for &x in &s[1..] {
            assert!(x < 1e-13 * s[0]);
        }
    }

    #[test]
    fn hermitian_eig_two_by_two() {
        // [[2, i], [-i, 2]] has eigenvalues 3 and 1
        let a = vec![
            Complex64::new(2.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(2.0, 0.0),
        ];
        let (vals, vecs) = hermitian_eig(2, &a);
        assert!((vals[0] - 3.0).abs() < 1e-14);
        assert!((vals[1] - 1.0).abs() < 1e-14);
        for k in 0..2 {
            for i in 0..2 {
                let mut av = ZERO;
                for j in 0..2 {
                    av += a[i * 2 + j] * vecs[j * 2 + k];
                }
                assert!((av - vals[k] * vecs[i * 2 + k]).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn hermitian_eig_reconstructs_random_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 6;
        let b = random_matrix(&mut rng, n, n);
        // b^H b is Hermitian positive semidefinite
        let mut a = vec![ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = ZERO;
                for k in 0..n {
                    acc += b[k * n + i].conj() * b[k * n + j];
                }
                a[i * n + j] = acc;
            }
        }
        let (vals, vecs) = hermitian_eig(n, &a);
        for k in 0..n {
            assert!(vals[k] >= -1e-12);
            for i in 0..n {
                let mut av = ZERO;
                for j in 0..n {
                    av += a[i * n + j] * vecs[j * n + k];
                }
                assert!((av - vals[k] * vecs[i * n + k]).norm() < 1e-11);
            }
        }
        // eigenvalues of b^H b are squared singular values of b
        let s = singular_values(n, n, &b);
        for k in 0..n {
            assert!((vals[k] - s[k] * s[k]).abs() < 1e-11);
        }
    }

    #[test]
    fn orthocomplement_is_orthogonal_and_unit() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let rows = 5;
        let cols: Vec<Vec<Complex64>> = (0..3).map(|_| random_matrix(&mut rng, rows, 1)).collect();
        let q = orthocomplement_column(rows, &cols);
        assert!((col_norm_sqr(&q).sqrt() - 1.0).abs() < 1e-13);
        for c in &cols {
            let dot: Complex64 = c.iter().zip(&q).map(|(u, w)| u.conj() * w).sum();
            assert!(dot.norm() < 1e-13);
        }
    }

    #[test]
    fn orthocomplement_handles_dependent_and_zero_columns() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let rows = 4;
        let c0 = random_matrix(&mut rng, rows, 1);
        let c1: Vec<Complex64> = c0.iter().map(|z| z * Complex64::new(0.0, 2.0)).collect();
        let zero = vec![ZERO; rows];
        let q = orthocomplement_column(rows, &[c0.clone(), zero, c1.clone()]);
        assert!((col_norm_sqr(&q).sqrt() - 1.0).abs() < 1e-13);
        let dot: Complex64 = c0.iter().zip(&q).map(|(u, w)| u.conj() * w).sum();
        assert!(dot.norm() < 1e-13);
    }

    #[test]
    fn orthocomplement_of_nothing_is_last_basis_vector() {
        let q = orthocomplement_column(3, &[]);
        assert_eq!(q[0], ZERO);
        assert_eq!(q[1], ZERO);
        assert_eq!(q[2], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn orthocomplement_phase_is_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let rows = 5;
        let cols: Vec<Vec<Complex64>> = (0..2).map(|_| random_matrix(&mut rng, rows, 1)).collect();
        let q = orthocomplement_column(rows, &cols);
        let mut best = 0;
        let mut best_abs = -1.0;
        for (i, z) in q.iter().enumerate() {
            if z.norm() > best_abs + 1e-15 {
                best_abs = z.norm();
                best = i;
            }
        }
        assert!(q[best].im.abs() < 1e-14);
        assert!(q[best].re > 0.0);
    }
}
