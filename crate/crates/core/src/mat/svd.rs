//! Singular values via one-sided Jacobi on the columns.
//!
//! Each rotation orthogonalizes one column pair exactly; after convergence
//! the singular values are the column norms. The method is slow but has
//! excellent relative accuracy, which is what the level-set machinery in
//! [`crate::pseudo`] leans on.

use super::{CMatrix, Complex64};

/// Relative off-diagonal threshold at which a column pair counts as
/// orthogonal.
const JACOBI_TOL: f64 = 1e-13;

/// Sweep cap; Jacobi converges in a handful of sweeps at desk scale, the
/// cap only guards against pathological input.
fn max_sweeps(n: usize) -> usize {
    100 * n.max(1)
}

/// Singular values of A, sorted descending. Length equals the dimension.
pub fn singular_values(a: &CMatrix) -> Vec<f64> {
    let n = a.dim();
    let mut w = a.data().to_vec();
    if n > 1 {
        for _ in 0..max_sweeps(n) {
            let mut off = 0.0_f64;
            for p in 0..n - 1 {
                for q in p + 1..n {
                    let mut app = 0.0_f64;
                    let mut aqq = 0.0_f64;
                    let mut apq = Complex64::new(0.0, 0.0);
                    for i in 0..n {
                        let up = w[i * n + p];
                        let vq = w[i * n + q];
                        app += up.norm_sqr();
                        aqq += vq.norm_sqr();
                        apq += up.conj() * vq;
                    }
                    if app == 0.0 || aqq == 0.0 {
                        continue;
                    }
                    let g = apq.norm();
                    let ratio = g / (app * aqq).sqrt();
                    off = off.max(ratio);
                    if ratio <= JACOBI_TOL {
                        continue;
                    }
                    // Real Jacobi rotation after peeling the phase off apq.
                    let tau = (aqq - app) / (2.0 * g);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        1.0 / (tau - (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = c * t;
                    let phase_conj = (apq / g).conj();
                    for i in 0..n {
                        let up = w[i * n + p];
                        let vq = phase_conj * w[i * n + q];
                        w[i * n + p] = up * c - vq * s;
                        w[i * n + q] = up * s + vq * c;
                    }
                }
            }
            if off <= JACOBI_TOL {
                break;
            }
        }
    }
    let mut sv: Vec<f64> = (0..n)
        .map(|j| (0..n).map(|i| w[i * n + j].norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Smallest singular value of A - z I.
pub fn smin_shift(a: &CMatrix, z: Complex64) -> f64 {
    let shifted = a.sub_shift(z);
    *singular_values(&shifted).last().expect("n >= 1")
}

/// Largest singular value of A.
pub fn spectral_norm(a: &CMatrix) -> f64 {
    singular_values(a)[0]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::{random_matrix, random_rank_one_nilpotent, random_unitary, MatrixFamily};
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_and_diagonal() {
        let sv = singular_values(&CMatrix::identity(3));
        for s in sv {
            assert!((s - 1.0).abs() <= 1e-14);
        }
        let d = CMatrix::diag(&[c(3.0, 0.0), c(1.0, 0.0)]);
        let sv = singular_values(&d);
        assert!((sv[0] - 3.0).abs() <= 1e-14);
        assert!((sv[1] - 1.0).abs() <= 1e-14);
    }

    #[test]
    fn rank_one_weight() {
        // x y* has singular values (|x||y|, 0, ..., 0). Oracle: the Gram
        // matrix (xy*)*(xy*) = |x|^2 y y* has the single nonzero eigenvalue
        // |x|^2 |y|^2.
        let p = random_rank_one_nilpotent(5, 11);
        let sv = singular_values(&p.realize());
        let w = p.weight();
        assert!((sv[0] - w).abs() <= 1e-10 * w.max(1.0));
        for &s in &sv[1..] {
            assert!(s <= 1e-10 * w.max(1.0));
        }
    }

    #[test]
    fn shift_cases() {
        let z = CMatrix::zeros(2);
        assert!((smin_shift(&z, c(0.3, 0.0)) - 0.3).abs() <= 1e-14);
        let d = CMatrix::diag(&[c(1.0, 0.0), c(5.0, 0.0)]);
        assert!((smin_shift(&d, c(1.2, 0.0)) - 0.2).abs() <= 1e-13);
    }

    #[test]
    fn smin_matches_full_list() {
        let a = random_matrix(6, 42, MatrixFamily::Dense);
        let z = c(0.7, -0.3);
        let all = singular_values(&a.sub_shift(z));
        assert!((smin_shift(&a, z) - all.last().unwrap()).abs() <= 1e-13);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn frobenius_identity(seed in 0u64..1000, n in 1usize..8) {
            let a = random_matrix(n, seed, MatrixFamily::Dense);
            let sv = singular_values(&a);
            prop_assert_eq!(sv.len(), n);
            for w in sv.windows(2) {
                prop_assert!(w[0] >= w[1]);
            }
            let sum_sq: f64 = sv.iter().map(|s| s * s).sum();
            let fro_sq = a.fro_norm().powi(2);
            prop_assert!((sum_sq - fro_sq).abs() <= 1e-10 * fro_sq.max(1.0));
        }

        #[test]
        fn unitary_invariance(seed in 0u64..1000, n in 2usize..7) {
            let a = random_matrix(n, seed, MatrixFamily::Dense);
            let u = random_unitary(n, seed.wrapping_add(101));
            let v = random_unitary(n, seed.wrapping_add(707));
            let sv_a = singular_values(&a);
            let sv_uav = singular_values(&u.matmul(&a).matmul(&v));
            for (x, y) in sv_a.iter().zip(&sv_uav) {
                prop_assert!((x - y).abs() <= 1e-9 * sv_a[0].max(1.0));
            }
        }

        #[test]
        fn smin_is_lipschitz_in_z(seed in 0u64..1000, re1 in -2.0..2.0f64, im1 in -2.0..2.0f64, re2 in -2.0..2.0f64, im2 in -2.0..2.0f64) {
            let a = random_matrix(4, seed, MatrixFamily::Dense);
            let z1 = c(re1, im1);
            let z2 = c(re2, im2);
            let d = (smin_shift(&a, z1) - smin_shift(&a, z2)).abs();
            prop_assert!(d <= (z1 - z2).norm() + 1e-9);
        }

        #[test]
        fn normal_distance_formula(seed in 0u64..1000, re in -3.0..3.0f64, im in -3.0..3.0f64) {
            // For normal A, smin(A - zI) equals the distance from z to the spectrum.
            let a = random_matrix(4, seed, MatrixFamily::Normal);
            let z = c(re, im);
            let eig = crate::mat::eigenvalues(&a).unwrap();
            let dist = eig
                .eigenvalues
                .iter()
                .map(|&l| (z - l).norm())
                .fold(f64::INFINITY, f64::min);
            prop_assert!((smin_shift(&a, z) - dist).abs() <= 1e-8 * (1.0 + dist));
        }
    }
}
