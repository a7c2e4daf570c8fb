//! Cubic characteristic polynomial of the shifted Gram matrix
//! `(C1 - tI)*(C1 - tI)` of a 3x3 block, as real polynomials in the shift
//! t, plus the parity test and the real-axis asymmetry certificate built
//! on it.
//!
//! For trace-zero blocks of rank at most 2, padding with zeros does not
//! change the pseudospectrum, so a certificate for the 3x3 block certifies
//! the padded matrix as well.

use crate::mat::{singular_values, smin_shift, CMatrix, Complex64};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GramCubicError {
    #[error("expected a 3x3 block, got {0}x{0}")]
    NotThreeByThree(usize),
    #[error("eps must be positive, got {0}")]
    NonPositiveEps(f64),
    #[error(
        "cross-validation failed for {poly} at t = {node}: interpolated {interpolated:.6e} vs direct {direct:.6e}"
    )]
    CrossValidation {
        poly: &'static str,
        node: f64,
        interpolated: f64,
        direct: f64,
    },
}

/// Coefficients of det(lambda I - (C1 - tI)*(C1 - tI)) =
/// lambda^3 + p2(t) lambda^2 + p1(t) lambda + p0(t),
/// constant-first order: p2 has degree <= 2, p1 degree <= 4, p0 degree <= 6.
#[derive(Clone, Debug)]
pub struct CubicCoeffs {
    pub p2: Vec<f64>,
    pub p1: Vec<f64>,
    pub p0: Vec<f64>,
    /// Coefficient of t in p1; the asymmetry driver.
    pub odd_linear_a: f64,
    /// Violations of the trace-zero / rank <= 2 hypotheses, reported
    /// rather than enforced.
    pub hypothesis_warnings: Vec<String>,
}

/// Real-axis asymmetry certificate: the outermost boundary crossing t0 on
/// the oriented axis whose mirror image sits strictly inside.
#[derive(Clone, Copy, Debug)]
pub struct AsymmetryCertificate {
    /// Positive root of smin(C1 - t I) = eps in the oriented variable.
    pub t0: f64,
    /// eps minus smin at the mirrored point; strictly positive.
    pub margin: f64,
    /// Whether the orientation t -> -t was applied (linear coefficient
    /// of p1 was positive).
    pub flipped: bool,
    /// Whether the parity structure held at certification time.
    pub criterion_held: bool,
}

impl AsymmetryCertificate {
    /// The certified interior point in the original (unoriented) variable;
    /// a valid symmetry witness for the full matrix.
    pub fn witness_point(&self) -> Complex64 {
        let dir = if self.flipped { 1.0 } else { -1.0 };
        Complex64::new(dir * self.t0, 0.0)
    }
}

/// Evaluate (p2, p1, p0) at one real shift t: with M = (C1-tI)*(C1-tI),
/// p2 = -tr(M), p1 = sum of principal 2x2 minors of M, p0 = -det(M).
pub fn charpoly_at(c1: &CMatrix, t: f64) -> Result<(f64, f64, f64), GramCubicError> {
    if c1.dim() != 3 {
        return Err(GramCubicError::NotThreeByThree(c1.dim()));
    }
    let shifted = c1.sub_shift(Complex64::new(t, 0.0));
    let m = shifted.adjoint().matmul(&shifted);
    let p2 = -(m[(0, 0)] + m[(1, 1)] + m[(2, 2)]).re;
    let minor = |i: usize, j: usize| (m[(i, i)] * m[(j, j)] - m[(i, j)] * m[(j, i)]).re;
    let p1 = minor(0, 1) + minor(0, 2) + minor(1, 2);
    let p0 = -m.determinant().re;
    Ok((p2, p1, p0))
}

/// Dense Gaussian elimination with partial pivoting for the tiny
/// interpolation systems below.
fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for k in 0..n {
        let piv = (k..n)
            .max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))
            .unwrap();
        a.swap(k, piv);
        b.swap(k, piv);
        let d = a[k][k];
        for i in k + 1..n {
            let f = a[i][k] / d;
            for j in k..n {
                a[i][j] -= f * a[k][j];
            }
            b[i] -= f * b[k];
        }
    }
    let mut x = vec![0.0; n];
    for k in (0..n).rev() {
        let mut s = b[k];
        for j in k + 1..n {
            s -= a[k][j] * x[j];
        }
        x[k] = s / a[k][k];
    }
    x
}

fn interpolate(nodes: &[f64], values: &[f64]) -> Vec<f64> {
    let n = nodes.len();
    let a: Vec<Vec<f64>> = nodes
        .iter()
        .map(|&t| (0..n).map(|k| t.powi(k as i32)).collect())
        .collect();
    solve_dense(a, values.to_vec())
}

pub fn eval_poly(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
}

const INTERP_NODES: [f64; 7] = [0.0, 1.0, -1.0, 2.0, -2.0, 3.0, -3.0];
const CHECK_NODES: [f64; 3] = [0.5, -1.5, 2.5];

/// Extract p2, p1, p0 by exact interpolation on the symmetric integer
/// nodes 0, +-1, +-2, +-3 (degrees 2, 4 and 6 are exactly determined),
/// then cross-validate at three off-grid nodes.
pub fn extract_coeffs(c1: &CMatrix) -> Result<CubicCoeffs, GramCubicError> {
    if c1.dim() != 3 {
        return Err(GramCubicError::NotThreeByThree(c1.dim()));
    }
    let mut hypothesis_warnings = Vec::new();
    let tr = c1.trace().norm();
    if tr > 1e-9 {
        hypothesis_warnings.push(format!("trace magnitude {tr:.3e} exceeds 1e-9"));
    }
    let s3 = singular_values(c1)[2];
    if s3 > 1e-9 {
        hypothesis_warnings.push(format!(
            "smallest singular value {s3:.3e} exceeds 1e-9; block has full rank"
        ));
    }

    let evals: Vec<(f64, f64, f64)> = INTERP_NODES
        .iter()
        .map(|&t| charpoly_at(c1, t))
        .collect::<Result<_, _>>()?;
    let p2 = interpolate(
        &INTERP_NODES[..3],
        &evals[..3].iter().map(|e| e.0).collect::<Vec<_>>(),
    );
    let p1 = interpolate(
        &INTERP_NODES[..5],
        &evals[..5].iter().map(|e| e.1).collect::<Vec<_>>(),
    );
    let p0 = interpolate(
        &INTERP_NODES,
        &evals.iter().map(|e| e.2).collect::<Vec<_>>(),
    );

    for &t in &CHECK_NODES {
        let (d2, d1, d0) = charpoly_at(c1, t)?;
        for (poly, coeffs, direct) in [("p2", &p2, d2), ("p1", &p1, d1), ("p0", &p0, d0)] {
            let interpolated = eval_poly(coeffs, t);
            let tol = 1e-7 * direct.abs().max(1.0);
            if (interpolated - direct).abs() > tol {
                return Err(GramCubicError::CrossValidation {
                    poly,
                    node: t,
                    interpolated,
                    direct,
                });
            }
        }
    }

    let odd_linear_a = p1[1];
    Ok(CubicCoeffs {
        p2,
        p1,
        p0,
        odd_linear_a,
        hypothesis_warnings,
    })
}

/// Parity structure required by the asymmetry argument: p0 and p2 contain
/// only even powers of t, the odd part of p1 is exactly one linear term,
/// and that linear coefficient is nonzero. Magnitudes are compared against
/// `tol` scaled by the largest coefficient in play.
pub fn asymmetry_criterion(coeffs: &CubicCoeffs, tol: f64) -> bool {
    let scale = coeffs
        .p0
        .iter()
        .chain(&coeffs.p1)
        .chain(&coeffs.p2)
        .map(|c| c.abs())
        .fold(1.0, f64::max);
    let thr = tol * scale;
    let odd_ok = coeffs.p0[1].abs() <= thr
        && coeffs.p0[3].abs() <= thr
        && coeffs.p0[5].abs() <= thr
        && coeffs.p2[1].abs() <= thr
        && coeffs.p1[3].abs() <= thr;
    odd_ok && coeffs.odd_linear_a.abs() > thr
}

#[derive(Clone, Copy, Debug)]
pub struct CertificateOpts {
    pub scan_steps: usize,
    pub criterion_tol: f64,
    /// Mirrored-point margins below `margin_floor * eps` are treated as
    /// grazing contacts, not certificates; they sit at the noise floor of
    /// the boundary solve.
    pub margin_floor: f64,
}

impl Default for CertificateOpts {
    fn default() -> Self {
        CertificateOpts {
            scan_steps: 512,
            criterion_tol: 1e-8,
            margin_floor: 1e-9,
        }
    }
}

/// Produce a real-axis asymmetry certificate for sigma_eps(C1), or `None`
/// when no boundary crossing brackets within the scan (grazing contacts
/// bisect nowhere) or the mirrored point fails to land inside.
///
/// The orientation is normalized so the relevant linear coefficient is
/// negative: when `odd_linear_a > 0` the axis is traversed as t -> -t and
/// the flip is recorded on the certificate.
pub fn asymmetry_certificate(
    c1: &CMatrix,
    eps: f64,
) -> Result<Option<AsymmetryCertificate>, GramCubicError> {
    asymmetry_certificate_with(c1, eps, &CertificateOpts::default())
}

pub fn asymmetry_certificate_with(
    c1: &CMatrix,
    eps: f64,
    opts: &CertificateOpts,
) -> Result<Option<AsymmetryCertificate>, GramCubicError> {
    if c1.dim() != 3 {
        return Err(GramCubicError::NotThreeByThree(c1.dim()));
    }
    if eps <= 0.0 {
        return Err(GramCubicError::NonPositiveEps(eps));
    }
    let coeffs = extract_coeffs(c1)?;
    let criterion_held = asymmetry_criterion(&coeffs, opts.criterion_tol);
    let flipped = coeffs.odd_linear_a > 0.0;
    let dir = if flipped { -1.0 } else { 1.0 };

    let s1 = singular_values(c1)[0];
    let tmax = s1 + eps + 1.0;
    let steps = opts.scan_steps.max(16);
    let dt = tmax / steps as f64;
    let g = |t: f64| smin_shift(c1, Complex64::new(dir * t, 0.0)) - eps;

    // outermost bracket of the level crossing, scanned from the far end
    let values: Vec<f64> = (0..=steps).map(|i| g(i as f64 * dt)).collect();
    let mut bracket = None;
    for i in (0..steps).rev() {
        if values[i] <= 0.0 && values[i + 1] > 0.0 {
            bracket = Some(i);
            break;
        }
    }
    let Some(i) = bracket else {
        return Ok(None);
    };
    let mut lo = i as f64 * dt;
    let mut hi = lo + dt;
    let tol = (1e-12 * tmax).max(1e-14);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if g(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t0 = 0.5 * (lo + hi);

    // membership must flip at the mirrored point
    let smin_mirror = smin_shift(c1, Complex64::new(-dir * t0, 0.0));
    let margin = eps - smin_mirror;
    if margin <= opts.margin_floor * eps {
        return Ok(None);
    }
    Ok(Some(AsymmetryCertificate {
        t0,
        margin,
        flipped,
        criterion_held,
    }))
}

// ── paper-construction fixtures used across the test suites ────────

/// C = [diag(a,1,-1), X] for the rank-one nilpotent X with rows
/// (0,-sqrt2,sqrt2), (0,-1,1), (0,-1,1); the three-distinct-eigenvalue
/// witness commutator.
pub fn fixture_three_eig_commutator(a: f64) -> CMatrix {
    let s2 = std::f64::consts::SQRT_2;
    CMatrix::from_real_rows(&[
        &[0.0, s2 * (1.0 - a), s2 * (1.0 + a)],
        &[0.0, 0.0, 2.0],
        &[0.0, 2.0, 0.0],
    ])
}

/// Commutator for the nilpotent leading block (both shifted diagonal
/// entries zero).
pub fn fixture_nilpotent_block_commutator() -> CMatrix {
    CMatrix::from_real_rows(&[&[1.0, -1.0, 1.0], &[0.0, -1.0, 0.0], &[0.0, 1.0, 0.0]])
}

/// Commutator for the nonzero-diagonal leading block, parametrized by the
/// real diagonal entry.
pub fn fixture_diagonal_block_commutator(a11: f64) -> CMatrix {
    CMatrix::from_real_rows(&[
        &[0.0, -1.0, a11],
        &[0.0, 0.0, 0.0],
        &[a11, 1.0, 0.0],
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::{random_matrix, MatrixFamily};
    use crate::pseudo::{symmetric, SymmetryOpts};
    use proptest::prelude::*;

    fn assert_poly_close(got: &[f64], want: &[f64], tol: f64, what: &str) {
        assert_eq!(got.len(), want.len(), "{what}: length");
        for (k, (g, w)) in got.iter().zip(want).enumerate() {
            assert!(
                (g - w).abs() <= tol,
                "{what}[{k}]: {g} vs {w} (diff {:.3e})",
                (g - w).abs()
            );
        }
    }

    /// Roots of lambda^3 + a lambda^2 + b lambda + c, all real
    /// (trigonometric method); the independent oracle for root checks.
    fn cubic_roots(a: f64, b: f64, c: f64) -> [f64; 3] {
        let p = b - a * a / 3.0;
        let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
        if p.abs() < 1e-13 {
            let r = -a / 3.0 + (-q).cbrt();
            return [r; 3];
        }
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        let mut roots = [0.0; 3];
        for (k, r) in roots.iter_mut().enumerate() {
            *r = m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos() - a / 3.0;
        }
        roots.sort_by(|x, y| y.total_cmp(x));
        roots
    }

    #[test]
    fn zero_block_closed_form() {
        // C1 = 0: M = t^2 I gives (-3t^2, 3t^4, -t^6)
        let z = CMatrix::zeros(3);
        for t in [0.0, 0.7, -1.9] {
            let (p2, p1, p0) = charpoly_at(&z, t).unwrap();
            assert!((p2 + 3.0 * t * t).abs() <= 1e-12);
            assert!((p1 - 3.0 * t.powi(4)).abs() <= 1e-12);
            assert!((p0 + t.powi(6)).abs() <= 1e-12);
        }
        let coeffs = extract_coeffs(&z).unwrap();
        assert_eq!(coeffs.odd_linear_a, 0.0);
        assert!(!asymmetry_criterion(&coeffs, 1e-8));
    }

    #[test]
    fn three_eig_fixture_coefficients() {
        let c = fixture_three_eig_commutator(2.0);
        let (p2, _, _) = charpoly_at(&c, 0.0).unwrap();
        assert!((p2 + 28.0).abs() <= 1e-10, "p2(0) = {p2}");
        let coeffs = extract_coeffs(&c).unwrap();
        assert_poly_close(&coeffs.p2, &[-28.0, 0.0, -3.0], 1e-9, "p2");
        assert_poly_close(&coeffs.p1, &[96.0, -48.0, 20.0, 0.0, 3.0], 1e-9, "p1");
        assert_poly_close(&coeffs.p0, &[0.0, 0.0, -16.0, 0.0, 8.0, 0.0, -1.0], 1e-9, "p0");
        assert!((coeffs.odd_linear_a + 48.0).abs() <= 1e-9);
        assert!(coeffs.hypothesis_warnings.is_empty());
        assert!(asymmetry_criterion(&coeffs, 1e-8));
    }

    #[test]
    fn criterion_needs_modulus_above_one() {
        // at |a| = 1 the linear term 16(1 - |a|^2) vanishes
        let coeffs = extract_coeffs(&fixture_three_eig_commutator(1.0)).unwrap();
        assert!(coeffs.odd_linear_a.abs() <= 1e-9);
        assert!(!asymmetry_criterion(&coeffs, 1e-8));
        let coeffs = extract_coeffs(&fixture_three_eig_commutator(2.0)).unwrap();
        assert!(asymmetry_criterion(&coeffs, 1e-8));
    }

    #[test]
    fn nilpotent_block_fixture() {
        let coeffs = extract_coeffs(&fixture_nilpotent_block_commutator()).unwrap();
        assert_poly_close(&coeffs.p1, &[4.0, -2.0, 3.0, 0.0, 3.0], 1e-9, "p1");
        assert_poly_close(&coeffs.p2, &[-5.0, 0.0, -3.0], 1e-9, "p2");
        assert_poly_close(&coeffs.p0, &[0.0, 0.0, -1.0, 0.0, 2.0, 0.0, -1.0], 1e-9, "p0");
        assert!((coeffs.odd_linear_a + 2.0).abs() <= 1e-9);
    }

    #[test]
    fn diagonal_block_fixture() {
        // p1 = 3t^4 + 2t^2 - 4 a11 t + 2 a11^2 + a11^4 at a11 = 1
        let coeffs = extract_coeffs(&fixture_diagonal_block_commutator(1.0)).unwrap();
        assert_poly_close(&coeffs.p1, &[3.0, -4.0, 2.0, 0.0, 3.0], 1e-9, "p1");
        assert!((coeffs.odd_linear_a + 4.0).abs() <= 1e-9);
        assert!(asymmetry_criterion(&coeffs, 1e-8));
    }

    #[test]
    fn symmetric_spectrum_yields_no_certificate() {
        // diag(i, -i, 0): normal, symmetric pseudospectrum, even p1
        let d = CMatrix::diag(&[
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 0.0),
        ]);
        let coeffs = extract_coeffs(&d).unwrap();
        assert!(coeffs.odd_linear_a.abs() <= 1e-9);
        assert!(!asymmetry_criterion(&coeffs, 1e-8));
        let cert = asymmetry_certificate(&d, 0.5).unwrap();
        assert!(cert.is_none(), "{cert:?}");
    }

    #[test]
    fn degenerate_fixture_gives_no_certificate() {
        // top entry 1: the odd linear coefficient vanishes and the set is
        // symmetric; the mirrored margin sits at the noise floor
        let c = fixture_three_eig_commutator(1.0);
        assert!(asymmetry_certificate(&c, 1.0).unwrap().is_none());
    }

    #[test]
    fn certificate_on_three_eig_fixture() {
        let c = fixture_three_eig_commutator(2.0);
        for eps in [0.5, 1.0, 2.0] {
            let cert = asymmetry_certificate(&c, eps).unwrap().expect("certificate");
            assert!(cert.margin > 1e-4, "eps={eps}: margin {}", cert.margin);
            assert!(cert.criterion_held);
            assert!(!cert.flipped, "linear coefficient is negative here");
            // self-consistency of the margin
            let dir = if cert.flipped { 1.0 } else { -1.0 };
            let smin_in = smin_shift(&c, Complex64::new(dir * cert.t0, 0.0));
            assert!((cert.margin - (eps - smin_in)).abs() <= 1e-8);
            // the boundary point really is on the level set
            let smin_out = smin_shift(&c, Complex64::new(-dir * cert.t0, 0.0));
            assert!((smin_out - eps).abs() <= 1e-9);
        }
    }

    #[test]
    fn certificate_matches_symmetry_probe_on_padding() {
        // sigma_eps(C1 + 0 padding) equals sigma_eps(C1) for rank <= 2
        // trace-zero blocks, so the probe must find asymmetry on the
        // padded matrix whenever the certificate exists.
        let c = fixture_nilpotent_block_commutator();
        let eps = 1.0;
        let cert = asymmetry_certificate(&c, eps).unwrap().expect("certificate");
        let padded = c.pad_to(4);
        let verdict = symmetric(
            &padded,
            eps,
            &SymmetryOpts {
                n_probes: 256,
                seed: 2,
                ..SymmetryOpts::default()
            },
        );
        assert!(!verdict.is_symmetric(), "{verdict:?}");
        // the certified witness point is a member of the padded set too
        assert!(smin_shift(&padded, cert.witness_point()) < eps);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        #[test]
        fn roots_are_squared_singular_values(seed in 0u64..500, t in -3.0..3.0f64) {
            let c1 = random_matrix(3, seed, MatrixFamily::Dense);
            let (p2, p1, p0) = charpoly_at(&c1, t).unwrap();
            let roots = cubic_roots(p2, p1, p0);
            let sv = singular_values(&c1.sub_shift(Complex64::new(t, 0.0)));
            for (r, s) in roots.iter().zip(&sv) {
                let want = s * s;
                prop_assert!(r >= &-1e-9, "negative root {r}");
                prop_assert!((r - want).abs() <= 1e-7 * want.max(1.0), "{r} vs {want}");
            }
        }

        #[test]
        fn p0_is_negative_squared_determinant(seed in 0u64..500, t in -4.0..4.0f64) {
            let c1 = random_matrix(3, seed, MatrixFamily::Dense);
            let (_, _, p0) = charpoly_at(&c1, t).unwrap();
            let det = c1.sub_shift(Complex64::new(t, 0.0)).determinant();
            let want = -det.norm_sqr();
            prop_assert!((p0 - want).abs() <= 1e-9 * want.abs().max(1.0));
        }

        #[test]
        fn extraction_reproduces_pointwise(seed in 0u64..200, t in -2.5..2.5f64) {
            let c1 = random_matrix(3, seed, MatrixFamily::Dense);
            let coeffs = extract_coeffs(&c1).unwrap();
            let (d2, d1, d0) = charpoly_at(&c1, t).unwrap();
            prop_assert!((eval_poly(&coeffs.p2, t) - d2).abs() <= 1e-7 * d2.abs().max(1.0));
            prop_assert!((eval_poly(&coeffs.p1, t) - d1).abs() <= 1e-7 * d1.abs().max(1.0));
            prop_assert!((eval_poly(&coeffs.p0, t) - d0).abs() <= 1e-7 * d0.abs().max(1.0));
        }
    }
}
