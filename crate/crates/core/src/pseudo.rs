//! eps-pseudospectrum membership, sampled grids, pseudospectral radius via
//! a radial level-set sweep, and set-symmetry probing of sigma_eps(C)
//! against -sigma_eps(C).
//!
//! Membership is the strict singular-value test `smin(A - zI) < eps`.
//! Boundary points classify as non-members; set comparisons therefore keep
//! a dead band `delta` around the level to avoid boundary flicker.

use crate::mat::{eigenvalues, singular_values, smin_shift, CMatrix, Complex64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PseudoError {
    #[error("eps must be positive, got {0}")]
    NonPositiveEps(f64),
    #[error("tolerance must be positive, got {0}")]
    NonPositiveTol(f64),
    #[error("tolerance {tol:.3e} is below the resolvable floor {floor:.3e} for this ray scan")]
    TolTooSmall { tol: f64, floor: f64 },
    #[error("need at least 8 rays, got {0}")]
    TooFewRays(usize),
    #[error("grid resolution must be at least 2, got {0}")]
    BadResolution(usize),
    #[error("grid half-width must be positive and finite, got {0}")]
    BadHalfWidth(f64),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("no ray hit the pseudospectrum; increase the ray count")]
    AllRaysEmpty,
    #[error(transparent)]
    Mat(#[from] crate::mat::MatError),
}

// ── grids ───────────────────────────────────────────────────────────

/// Square sampling window in the complex plane.
#[derive(Clone, Copy, Debug)]
pub struct GridSpec {
    pub center: Complex64,
    pub half_width: f64,
    pub resolution: usize,
}

impl GridSpec {
    pub fn new(center: Complex64, half_width: f64, resolution: usize) -> Result<Self, PseudoError> {
        if resolution < 2 {
            return Err(PseudoError::BadResolution(resolution));
        }
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(PseudoError::BadHalfWidth(half_width));
        }
        Ok(GridSpec {
            center,
            half_width,
            resolution,
        })
    }

    /// Grid points, row-major: imaginary axis outer (ascending), real inner.
    pub fn points(&self) -> Vec<Complex64> {
        let r = self.resolution;
        let step = 2.0 * self.half_width / (r - 1) as f64;
        let mut pts = Vec::with_capacity(r * r);
        for iy in 0..r {
            let im = self.center.im - self.half_width + iy as f64 * step;
            for ix in 0..r {
                let re = self.center.re - self.half_width + ix as f64 * step;
                pts.push(Complex64::new(re, im));
            }
        }
        pts
    }

    /// Diagonal of one grid cell; the spatial resolution of the sample.
    pub fn cell_diagonal(&self) -> f64 {
        let step = 2.0 * self.half_width / (self.resolution - 1) as f64;
        step * std::f64::consts::SQRT_2
    }
}

/// Sampled realization of sigma_eps(A) on a point set.
#[derive(Clone, Debug)]
pub struct PseudospecSample {
    pub epsilon: f64,
    pub points: Vec<Complex64>,
    pub smin_values: Vec<f64>,
    pub membership: Vec<bool>,
}

/// Certified pseudospectral radius value.
#[derive(Clone, Debug)]
pub struct RadiusResult {
    pub value: f64,
    pub argmax: Complex64,
    /// |smin(A - argmax I) - eps|; at most the requested tolerance.
    pub certificate_residual: f64,
    pub rays_used: usize,
}

/// Outcome of symmetry probing. `Asymmetric` is sound (it carries a
/// witness with positive margin); the symmetric verdict is only
/// "no witness found within the probe budget".
#[derive(Clone, Debug)]
pub enum SymmetryVerdict {
    SymmetricUpToBudget {
        probes_used: usize,
    },
    Asymmetric {
        witness: Complex64,
        margin: f64,
        probes_used: usize,
    },
}

impl SymmetryVerdict {
    pub fn is_symmetric(&self) -> bool {
        matches!(self, SymmetryVerdict::SymmetricUpToBudget { .. })
    }

    pub fn witness(&self) -> Option<(Complex64, f64)> {
        match self {
            SymmetryVerdict::Asymmetric {
                witness, margin, ..
            } => Some((*witness, *margin)),
            SymmetryVerdict::SymmetricUpToBudget { .. } => None,
        }
    }
}

// ── membership and grids ────────────────────────────────────────────

/// Strict membership test: smin(A - zI) < eps.
pub fn member(a: &CMatrix, z: Complex64, eps: f64) -> bool {
    assert!(eps > 0.0, "eps must be positive");
    smin_shift(a, z) < eps
}

/// Evaluate smin over the full grid. Cells are independent and run in
/// parallel; the output order is the row-major point order.
pub fn grid(a: &CMatrix, eps: f64, spec: &GridSpec) -> Result<PseudospecSample, PseudoError> {
    if eps <= 0.0 {
        return Err(PseudoError::NonPositiveEps(eps));
    }
    let points = spec.points();
    let smin_values: Vec<f64> = points.par_iter().map(|&z| smin_shift(a, z)).collect();
    let membership = smin_values.iter().map(|&s| s < eps).collect();
    Ok(PseudospecSample {
        epsilon: eps,
        points,
        smin_values,
        membership,
    })
}

// ── radial boundary solves ──────────────────────────────────────────

/// Options for the radial sweep. The scan density is configurable because
/// radial sections of a pseudospectrum can be disconnected; the coarse
/// scan has to see the outermost component before bisection can lock on.
#[derive(Clone, Copy, Debug)]
pub struct RayOpts {
    pub scan_steps: usize,
}

impl Default for RayOpts {
    fn default() -> Self {
        RayOpts { scan_steps: 256 }
    }
}

/// Furthest point of sigma_eps(A) on the ray `t exp(i theta)`, within tol.
///
/// Returns `None` when no scanned point of the ray is inside (possible
/// only when the origin is outside the pseudospectrum). The search scans
/// `[0, s1(A) + eps]` coarsely, then bisects the outermost sign change of
/// `smin - eps`.
pub fn boundary_ray(
    a: &CMatrix,
    eps: f64,
    theta: f64,
    tol: f64,
) -> Result<Option<f64>, PseudoError> {
    boundary_ray_with(a, eps, theta, tol, &RayOpts::default())
}

pub fn boundary_ray_with(
    a: &CMatrix,
    eps: f64,
    theta: f64,
    tol: f64,
    opts: &RayOpts,
) -> Result<Option<f64>, PseudoError> {
    if eps <= 0.0 {
        return Err(PseudoError::NonPositiveEps(eps));
    }
    if tol <= 0.0 {
        return Err(PseudoError::NonPositiveTol(tol));
    }
    let tmax = singular_values(a)[0] + eps;
    let floor = 8.0 * f64::EPSILON * tmax.max(1.0);
    if tol < floor {
        return Err(PseudoError::TolTooSmall { tol, floor });
    }
    let dir = Complex64::from_polar(1.0, theta);
    let g = |t: f64| smin_shift(a, dir * t) - eps;
    Ok(outermost_crossing(g, tmax, tol, opts.scan_steps))
}

/// Largest t in [0, tmax] with g(t) <= 0, assuming g > 0 beyond tmax.
fn outermost_crossing(
    g: impl Fn(f64) -> f64,
    tmax: f64,
    tol: f64,
    scan_steps: usize,
) -> Option<f64> {
    let steps = scan_steps.max(8);
    let dt = tmax / steps as f64;
    let values: Vec<f64> = (0..=steps).map(|i| g(i as f64 * dt)).collect();
    let inner = (0..=steps).rev().find(|&i| values[i] <= 0.0)?;
    if inner == steps {
        return Some(tmax);
    }
    let mut lo = inner as f64 * dt;
    let mut hi = lo + dt;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if g(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(lo)
}

// ── radius ──────────────────────────────────────────────────────────

#[derive(Clone, Copy, Debug)]
pub struct RadiusOpts {
    pub n_rays: usize,
    pub tol: f64,
    pub scan_steps: usize,
    /// Seed rays through the arguments of the eigenvalues; this is what
    /// guarantees the spectral-radius lower bound even for spiky sets.
    pub eigen_rays: bool,
    /// How many distinct sweep maxima get golden-section refinement.
    pub refine_top: usize,
}

impl Default for RadiusOpts {
    fn default() -> Self {
        RadiusOpts {
            n_rays: 720,
            tol: 1e-9,
            scan_steps: 256,
            eigen_rays: true,
            refine_top: 3,
        }
    }
}

/// Pseudospectral radius sup { |z| : z in sigma_eps(A) }.
///
/// Sweeps `n_rays` uniform angles, solves the outermost boundary crossing
/// per ray, then refines the best angular neighborhoods by golden-section
/// search. The result is at least the max over all sampled rays and sits
/// in the sandwich rho(A) <= r <= s1(A) + eps (up to tol).
pub fn radius(a: &CMatrix, eps: f64, n_rays: usize, tol: f64) -> Result<RadiusResult, PseudoError> {
    radius_with(
        a,
        eps,
        &RadiusOpts {
            n_rays,
            tol,
            ..RadiusOpts::default()
        },
    )
}

pub fn radius_with(a: &CMatrix, eps: f64, opts: &RadiusOpts) -> Result<RadiusResult, PseudoError> {
    if eps <= 0.0 {
        return Err(PseudoError::NonPositiveEps(eps));
    }
    if opts.n_rays < 8 {
        return Err(PseudoError::TooFewRays(opts.n_rays));
    }
    if opts.tol <= 0.0 {
        return Err(PseudoError::NonPositiveTol(opts.tol));
    }
    let ray_tol = (opts.tol * 0.25).max(16.0 * f64::EPSILON * (singular_values(a)[0] + eps));
    let ray_opts = RayOpts {
        scan_steps: opts.scan_steps,
    };
    let solve = |theta: f64| -> Result<Option<f64>, PseudoError> {
        boundary_ray_with(a, eps, theta, ray_tol, &ray_opts)
    };

    let two_pi = 2.0 * std::f64::consts::PI;
    let spacing = two_pi / opts.n_rays as f64;
    let sweep_angles: Vec<f64> = (0..opts.n_rays).map(|j| j as f64 * spacing).collect();
    let sweep: Vec<Option<f64>> = sweep_angles
        .par_iter()
        .map(|&th| solve(th))
        .collect::<Result<_, _>>()?;

    let mut rays_used = opts.n_rays;
    let mut best: Option<(f64, f64)> = None; // (t, theta)
    let consider = |t: Option<f64>, theta: f64, best: &mut Option<(f64, f64)>| {
        if let Some(t) = t {
            if best.map_or(true, |(bt, _)| t > bt) {
                *best = Some((t, theta));
            }
        }
    };
    for (j, &t) in sweep.iter().enumerate() {
        consider(t, sweep_angles[j], &mut best);
    }

    // candidate windows: top local maxima of the circular sweep
    let mut windows: Vec<(f64, f64, f64)> = Vec::new(); // (value, lo, hi)
    let n = opts.n_rays;
    let mut maxima: Vec<(f64, usize)> = Vec::new();
    for j in 0..n {
        if let Some(t) = sweep[j] {
            let prev = sweep[(j + n - 1) % n].unwrap_or(f64::NEG_INFINITY);
            let next = sweep[(j + 1) % n].unwrap_or(f64::NEG_INFINITY);
            if t >= prev && t >= next {
                maxima.push((t, j));
            }
        }
    }
    maxima.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    for &(t, j) in maxima.iter().take(opts.refine_top.max(1)) {
        let th = sweep_angles[j];
        windows.push((t, th - spacing, th + spacing));
    }

    // eigenvalue-direction seeds
    if opts.eigen_rays {
        let spec = eigenvalues(a)?;
        for lam in spec.eigenvalues {
            if lam.norm() <= 1e-14 {
                continue;
            }
            let th = lam.im.atan2(lam.re);
            let t = solve(th)?;
            rays_used += 1;
            consider(t, th, &mut best);
            if let Some(t) = t {
                windows.push((t, th - spacing, th + spacing));
            }
        }
    }

    // golden-section refinement of each candidate window; angular accuracy
    // sqrt(tol) suffices because the value is quadratic at the optimum
    let angle_tol = opts.tol.sqrt().min(spacing).max(1e-8);
    let phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    for &(_, w_lo, w_hi) in &windows {
        let mut lo = w_lo;
        let mut hi = w_hi;
        let eval = |theta: f64,
                    rays_used: &mut usize,
                    best: &mut Option<(f64, f64)>|
         -> Result<f64, PseudoError> {
            let t = solve(theta)?;
            *rays_used += 1;
            consider(t, theta, best);
            Ok(t.unwrap_or(f64::NEG_INFINITY))
        };
        let mut x1 = hi - phi * (hi - lo);
        let mut x2 = lo + phi * (hi - lo);
        let mut f1 = eval(x1, &mut rays_used, &mut best)?;
        let mut f2 = eval(x2, &mut rays_used, &mut best)?;
        while hi - lo > angle_tol {
            if f1 >= f2 {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - phi * (hi - lo);
                f1 = eval(x1, &mut rays_used, &mut best)?;
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + phi * (hi - lo);
                f2 = eval(x2, &mut rays_used, &mut best)?;
            }
        }
    }

    let (value, theta) = best.ok_or(PseudoError::AllRaysEmpty)?;
    let argmax = Complex64::from_polar(value, theta);
    let certificate_residual = (smin_shift(a, argmax) - eps).abs();
    Ok(RadiusResult {
        value,
        argmax,
        certificate_residual,
        rays_used,
    })
}

// ── symmetry probing ────────────────────────────────────────────────

#[derive(Clone, Copy, Debug)]
pub struct SymmetryOpts {
    /// Total budget of probe points z (each costs two shifted solves).
    pub n_probes: usize,
    pub seed: u64,
    /// Dead-band margin: a witness must be inside on one side and outside
    /// by more than eps + delta on the other.
    pub delta: f64,
    /// Angles in [0, pi) whose boundary hits get targeted probes.
    pub boundary_angles: usize,
    pub scan_steps: usize,
}

impl Default for SymmetryOpts {
    fn default() -> Self {
        SymmetryOpts {
            n_probes: 256,
            seed: 0,
            delta: 1e-6,
            boundary_angles: 16,
            scan_steps: 128,
        }
    }
}

/// Probe whether sigma_eps(C) = -sigma_eps(C).
///
/// Probes mix boundary-targeted points (asymmetry witnesses live near the
/// boundary) with uniform draws from the enclosing disk. A returned
/// witness z satisfies `member(z)` while -z is outside with margin; the
/// symmetric verdict is explicitly budget-limited.
pub fn symmetric(c: &CMatrix, eps: f64, opts: &SymmetryOpts) -> SymmetryVerdict {
    assert!(eps > 0.0, "eps must be positive");
    assert!(opts.delta > 0.0, "delta must be positive");
    let radius_bound = singular_values(c)[0] + eps;
    let ray_tol = (1e-6 * radius_bound).max(1e-12);
    let ray_opts = RayOpts {
        scan_steps: opts.scan_steps,
    };

    let mut probes_used = 0usize;
    let check =
        |z: Complex64, probes_used: &mut usize| -> Option<(Complex64, f64)> {
            *probes_used += 1;
            let s_pos = smin_shift(c, z);
            let s_neg = smin_shift(c, -z);
            if s_pos < eps && s_neg > eps + opts.delta {
                return Some((z, (eps - s_pos).min(s_neg - eps)));
            }
            if s_neg < eps && s_pos > eps + opts.delta {
                return Some((-z, (eps - s_neg).min(s_pos - eps)));
            }
            None
        };

    // boundary-targeted probes
    let jitters = [1e-3, 1e-2];
    'outer: for k in 0..opts.boundary_angles {
        let theta = std::f64::consts::PI * k as f64 / opts.boundary_angles.max(1) as f64;
        for th in [theta, theta + std::f64::consts::PI] {
            let hit = boundary_ray_with(c, eps, th, ray_tol, &ray_opts).ok().flatten();
            let Some(t) = hit else { continue };
            let dir = Complex64::from_polar(1.0, th);
            for &j in &jitters {
                let eta = j * radius_bound;
                for t_probe in [t - eta, t + eta] {
                    if t_probe <= 0.0 {
                        continue;
                    }
                    if probes_used >= opts.n_probes {
                        break 'outer;
                    }
                    if let Some((witness, margin)) = check(dir * t_probe, &mut probes_used) {
                        return SymmetryVerdict::Asymmetric {
                            witness,
                            margin,
                            probes_used,
                        };
                    }
                }
            }
        }
    }

    // uniform probes in the enclosing disk
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    while probes_used < opts.n_probes {
        let r = radius_bound * rng.gen::<f64>().sqrt();
        let phi = 2.0 * std::f64::consts::PI * rng.gen::<f64>();
        if let Some((witness, margin)) = check(Complex64::from_polar(r, phi), &mut probes_used) {
            return SymmetryVerdict::Asymmetric {
                witness,
                margin,
                probes_used,
            };
        }
    }
    SymmetryVerdict::SymmetricUpToBudget { probes_used }
}

// ── sampled set comparison ──────────────────────────────────────────

#[derive(Clone, Copy, Debug)]
pub struct SetCompareOpts {
    pub n_samples: usize,
    pub seed: u64,
    pub delta: f64,
    pub boundary_angles: usize,
    pub scan_steps: usize,
}

impl Default for SetCompareOpts {
    fn default() -> Self {
        SetCompareOpts {
            n_samples: 512,
            seed: 0,
            delta: 1e-6,
            boundary_angles: 16,
            scan_steps: 128,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SetComparison {
    pub equal: bool,
    pub samples_used: usize,
    /// Points skipped because either smin landed in the delta band.
    pub skipped: usize,
    pub first_disagreement: Option<Complex64>,
}

/// Compare sampled membership of sigma_eps(C1) and sigma_eps(C2).
///
/// Samples boundary-targeted points for both matrices plus uniform draws,
/// skipping (and counting) points inside the delta dead band of either
/// level set.
pub fn sampled_set_compare(
    c1: &CMatrix,
    c2: &CMatrix,
    eps: f64,
    opts: &SetCompareOpts,
) -> Result<SetComparison, PseudoError> {
    if c1.dim() != c2.dim() {
        return Err(PseudoError::DimensionMismatch {
            left: c1.dim(),
            right: c2.dim(),
        });
    }
    if eps <= 0.0 {
        return Err(PseudoError::NonPositiveEps(eps));
    }
    let radius_bound = singular_values(c1)[0].max(singular_values(c2)[0]) + eps;
    let ray_tol = (1e-6 * radius_bound).max(1e-12);
    let ray_opts = RayOpts {
        scan_steps: opts.scan_steps,
    };

    let mut points: Vec<Complex64> = Vec::with_capacity(opts.n_samples);
    let jitters = [1e-3, 1e-2];
    'angles: for k in 0..opts.boundary_angles {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / opts.boundary_angles.max(1) as f64;
        let dir = Complex64::from_polar(1.0, theta);
        for m in [c1, c2] {
            if let Ok(Some(t)) = boundary_ray_with(m, eps, theta, ray_tol, &ray_opts) {
                for &j in &jitters {
                    let eta = j * radius_bound;
                    for tp in [t - eta, t + eta] {
                        if tp > 0.0 {
                            points.push(dir * tp);
                        }
                        if points.len() >= opts.n_samples {
                            break 'angles;
                        }
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    while points.len() < opts.n_samples {
        let r = radius_bound * rng.gen::<f64>().sqrt();
        let phi = 2.0 * std::f64::consts::PI * rng.gen::<f64>();
        points.push(Complex64::from_polar(r, phi));
    }

    let evals: Vec<(f64, f64)> = points
        .par_iter()
        .map(|&z| (smin_shift(c1, z), smin_shift(c2, z)))
        .collect();

    let mut skipped = 0usize;
    let mut first_disagreement = None;
    for (k, &(s1, s2)) in evals.iter().enumerate() {
        if (s1 - eps).abs() <= opts.delta || (s2 - eps).abs() <= opts.delta {
            skipped += 1;
            continue;
        }
        if (s1 < eps) != (s2 < eps) {
            first_disagreement = Some(points[k]);
            break;
        }
    }
    Ok(SetComparison {
        equal: first_disagreement.is_none(),
        samples_used: points.len(),
        skipped,
        first_disagreement,
    })
}

/// Boolean view of [`sampled_set_compare`].
pub fn sampled_set_equal(
    c1: &CMatrix,
    c2: &CMatrix,
    eps: f64,
    n_samples: usize,
    seed: u64,
    delta: f64,
) -> Result<bool, PseudoError> {
    let cmp = sampled_set_compare(
        c1,
        c2,
        eps,
        &SetCompareOpts {
            n_samples,
            seed,
            delta,
            ..SetCompareOpts::default()
        },
    )?;
    Ok(cmp.equal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::{
        commutator, random_matrix, random_rank_one_nilpotent, random_unitary, MatrixFamily,
    };
    use proptest::prelude::*;
    use rand::Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn membership_on_zero_matrix() {
        let a = CMatrix::zeros(3);
        let eps = 0.4;
        assert!(member(&a, c(0.2, 0.0), eps));
        assert!(!member(&a, c(0.8, 0.0), eps));
    }

    #[test]
    fn membership_matches_normal_formula() {
        let a = random_matrix(4, 6, MatrixFamily::Normal);
        let spec = eigenvalues(&a).unwrap();
        let eps = 0.3;
        for seed in 0..20u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let z = c(3.0 * (rng.gen::<f64>() - 0.5), 3.0 * (rng.gen::<f64>() - 0.5));
            let dist = spec
                .eigenvalues
                .iter()
                .map(|&l| (z - l).norm())
                .fold(f64::INFINITY, f64::min);
            if (dist - eps).abs() > 1e-9 {
                assert_eq!(member(&a, z, eps), dist < eps, "z={z}");
            }
        }
    }

    #[test]
    fn perturbed_eigenvalues_are_members() {
        // definitional oracle: eigenvalues of A + E with |E| < eps lie inside
        let eps = 0.5;
        for seed in 0..5u64 {
            let a = random_matrix(4, seed, MatrixFamily::Dense);
            let e = random_matrix(4, seed + 100, MatrixFamily::Dense);
            let scale = 0.9 * eps / singular_values(&e)[0];
            let perturbed = a.add(&e.scale(c(scale, 0.0)));
            for lam in eigenvalues(&perturbed).unwrap().eigenvalues {
                assert!(member(&a, lam, eps), "seed {seed}, eigenvalue {lam}");
            }
        }
    }

    #[test]
    fn grid_on_zero_matrix_is_exact_disk() {
        let a = CMatrix::zeros(2);
        let eps = 0.5;
        let spec = GridSpec::new(c(0.0, 0.0), 2.0 * eps, 21).unwrap();
        let sample = grid(&a, eps, &spec).unwrap();
        for (z, &m) in sample.points.iter().zip(&sample.membership) {
            assert_eq!(m, z.norm() < eps, "z={z}");
        }
    }

    #[test]
    fn grid_is_unitarily_invariant() {
        let a = random_matrix(3, 11, MatrixFamily::Dense);
        let u = random_unitary(3, 12);
        let b = u.matmul(&a).matmul(&u.adjoint());
        let spec = GridSpec::new(c(0.0, 0.0), 3.0, 9).unwrap();
        let ga = grid(&a, 0.7, &spec).unwrap();
        let gb = grid(&b, 0.7, &spec).unwrap();
        assert_eq!(ga.membership, gb.membership);
        for (x, y) in ga.smin_values.iter().zip(&gb.smin_values) {
            assert!((x - y).abs() <= 1e-10);
        }
    }

    #[test]
    fn grid_of_adjoint_mirrors_conjugate() {
        let a = random_matrix(3, 13, MatrixFamily::Dense);
        let spec = GridSpec::new(c(0.0, 0.0), 2.5, 9).unwrap();
        let ga = grid(&a, 0.6, &spec).unwrap();
        for (k, &z) in ga.points.iter().enumerate() {
            let s_adj = smin_shift(&a.adjoint(), z.conj());
            assert!((s_adj - ga.smin_values[k]).abs() <= 1e-10);
        }
    }

    #[test]
    fn boundary_ray_on_zero_matrix() {
        let a = CMatrix::zeros(3);
        let eps = 0.7;
        for theta in [0.0, 1.0, 2.5] {
            let t = boundary_ray(&a, eps, theta, 1e-10).unwrap().unwrap();
            assert!((t - eps).abs() <= 1e-9, "theta={theta}: {t}");
        }
    }

    #[test]
    fn boundary_ray_on_normal_diag() {
        // min(|t-3|, |t|) = eps has outermost root 3 + eps
        let a = CMatrix::diag(&[c(3.0, 0.0), c(0.0, 0.0)]);
        let eps = 0.25;
        let t = boundary_ray(&a, eps, 0.0, 1e-10).unwrap().unwrap();
        assert!((t - 3.25).abs() <= 1e-8, "{t}");
        // root certificate
        assert!((smin_shift(&a, c(t, 0.0)) - eps).abs() <= 1e-8);
    }

    #[test]
    fn boundary_ray_rejects_tiny_tol() {
        let a = CMatrix::zeros(2);
        assert!(matches!(
            boundary_ray(&a, 1.0, 0.0, 1e-18),
            Err(PseudoError::TolTooSmall { .. })
        ));
    }

    #[test]
    fn boundary_ray_reports_empty_rays() {
        // spectrum far from the origin: rays pointing away never enter,
        // which can only happen when 0 is outside the pseudospectrum
        let a = CMatrix::diag(&[c(10.0, 0.0), c(10.0, 1.0)]);
        let eps = 0.1;
        assert!(!member(&a, c(0.0, 0.0), eps));
        let away = boundary_ray(&a, eps, std::f64::consts::PI, 1e-9).unwrap();
        assert!(away.is_none(), "{away:?}");
        let towards = boundary_ray(&a, eps, 0.0, 1e-9).unwrap();
        assert!(towards.is_some());
    }

    #[test]
    fn radius_validates_parameters() {
        let a = CMatrix::zeros(2);
        assert!(matches!(
            radius(&a, 0.5, 4, 1e-9),
            Err(PseudoError::TooFewRays(4))
        ));
        assert!(matches!(
            radius(&a, -1.0, 16, 1e-9),
            Err(PseudoError::NonPositiveEps(_))
        ));
        assert!(matches!(
            GridSpec::new(c(0.0, 0.0), 1.0, 1),
            Err(PseudoError::BadResolution(1))
        ));
        assert!(matches!(
            GridSpec::new(c(0.0, 0.0), f64::INFINITY, 8),
            Err(PseudoError::BadHalfWidth(_))
        ));
    }

    #[test]
    fn radius_of_zero_matrix() {
        let a = CMatrix::zeros(3);
        let r = radius(&a, 0.1, 16, 1e-9).unwrap();
        assert!((r.value - 0.1).abs() <= 1e-8);
        assert!(r.certificate_residual <= 1e-8);
    }

    #[test]
    fn radius_matches_rank_one_nilpotent_formula() {
        let p = random_rank_one_nilpotent(3, 4);
        let w = p.weight();
        let eps = 0.5;
        let r = radius_with(
            &p.realize(),
            eps,
            &RadiusOpts {
                n_rays: 16,
                tol: 1e-9,
                ..RadiusOpts::default()
            },
        )
        .unwrap();
        let want = (eps * eps + w * eps).sqrt();
        assert!((r.value - want).abs() <= 1e-7, "{} vs {want}", r.value);
    }

    #[test]
    fn radius_matches_normal_formula() {
        let a = random_matrix(4, 3, MatrixFamily::Normal);
        let spec = eigenvalues(&a).unwrap();
        let rho = spec
            .eigenvalues
            .iter()
            .map(|l| l.norm())
            .fold(0.0, f64::max);
        let eps = 0.3;
        let r = radius_with(
            &a,
            eps,
            &RadiusOpts {
                n_rays: 64,
                tol: 1e-10,
                ..RadiusOpts::default()
            },
        )
        .unwrap();
        assert!((r.value - (rho + eps)).abs() <= 1e-8, "{} vs {}", r.value, rho + eps);
        assert!((r.argmax.norm() - r.value).abs() <= 1e-12);
    }

    #[test]
    fn symmetry_of_centered_disks() {
        // diag(ai, -ai, 0) has a symmetric pseudospectrum for every eps
        let a = CMatrix::diag(&[c(0.0, 1.3), c(0.0, -1.3), c(0.0, 0.0)]);
        let verdict = symmetric(
            &a,
            0.4,
            &SymmetryOpts {
                n_probes: 128,
                seed: 5,
                ..SymmetryOpts::default()
            },
        );
        assert!(verdict.is_symmetric(), "{verdict:?}");
    }

    #[test]
    fn asymmetry_of_case_one_commutator() {
        // [diag(2,1,-1), X] with the explicit witness X from the three
        // distinct eigenvalue construction; asymmetric at every eps.
        let a = CMatrix::diag(&[c(2.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)]);
        let s2 = 2.0_f64.sqrt();
        let x = CMatrix::from_real_rows(&[
            &[0.0, -s2, s2],
            &[0.0, -1.0, 1.0],
            &[0.0, -1.0, 1.0],
        ]);
        let cm = commutator(&a, &x).unwrap();
        let verdict = symmetric(
            &cm,
            1.0,
            &SymmetryOpts {
                n_probes: 256,
                seed: 1,
                ..SymmetryOpts::default()
            },
        );
        let (witness, margin) = verdict.witness().expect("asymmetric");
        assert!(margin > 0.0);
        // verdict invariant: inside at witness, outside at the mirror
        assert!(smin_shift(&cm, witness) < 1.0 - margin + 1e-12);
        assert!(smin_shift(&cm, -witness) > 1.0 + margin - 1e-12);
    }

    #[test]
    fn mirror_conjugation_identity_is_symmetric() {
        // -C = JCJ* forces exact symmetry; J = diag(1,1,-1) works for
        // C = [diag(1,1,-1), B] up to sign bookkeeping.
        let a = CMatrix::diag(&[c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)]);
        let b = random_matrix(3, 9, MatrixFamily::Dense);
        let cm = commutator(&a, &b).unwrap();
        let j = CMatrix::diag(&[c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)]);
        let mirrored = j.matmul(&cm).matmul(&j.adjoint());
        assert!(mirrored.add(&cm).max_abs() <= 1e-12 * cm.fro_norm());
        let verdict = symmetric(
            &cm,
            0.8,
            &SymmetryOpts {
                n_probes: 128,
                seed: 3,
                ..SymmetryOpts::default()
            },
        );
        assert!(verdict.is_symmetric());
    }

    #[test]
    fn set_comparison_detects_scaling() {
        let a = random_matrix(3, 21, MatrixFamily::Normal);
        let u = random_unitary(3, 22);
        let conjugated = u.matmul(&a).matmul(&u.adjoint());
        let opts = SetCompareOpts {
            n_samples: 200,
            seed: 7,
            ..SetCompareOpts::default()
        };
        let eps = 0.5;
        assert!(sampled_set_compare(&a, &conjugated, eps, &opts).unwrap().equal);
        assert!(sampled_set_compare(&a, &a.transpose(), eps, &opts).unwrap().equal);
        // scaling moves the boundary (spectrum is away from 0 generically)
        let doubled = a.scale(c(2.0, 0.0));
        let cmp = sampled_set_compare(&a, &doubled, eps, &opts).unwrap();
        assert!(!cmp.equal, "{cmp:?}");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn membership_scaling_covariance(seed in 0u64..300, re in 0.3..2.0f64, im in -1.0..1.0f64, zre in -2.0..2.0f64, zim in -2.0..2.0f64) {
            let cm = random_matrix(3, seed, MatrixFamily::Dense);
            let alpha = c(re, im);
            let z = c(zre, zim);
            let eps = 0.4;
            let scaled = cm.scale(alpha);
            let lhs = smin_shift(&scaled, z);
            let rhs = alpha.norm() * smin_shift(&cm, z / alpha);
            prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + lhs));
            prop_assert_eq!(member(&scaled, z, eps), smin_shift(&cm, z / alpha) < eps / alpha.norm());
        }

        #[test]
        fn membership_rotation_covariance(seed in 0u64..300, phi in 0.0..6.28f64, zre in -2.0..2.0f64, zim in -2.0..2.0f64) {
            let cm = random_matrix(3, seed, MatrixFamily::Dense);
            let mu = Complex64::from_polar(1.0, phi);
            let z = c(zre, zim);
            let eps = 0.5;
            prop_assert_eq!(member(&cm.scale(mu), mu * z, eps), member(&cm, z, eps));
        }

        #[test]
        fn radius_monotone_and_sandwiched(seed in 0u64..100) {
            let a = random_matrix(3, seed, MatrixFamily::Dense);
            let opts = RadiusOpts { n_rays: 32, tol: 1e-8, ..RadiusOpts::default() };
            let r1 = radius_with(&a, 0.2, &opts).unwrap();
            let r2 = radius_with(&a, 0.6, &opts).unwrap();
            prop_assert!(r1.value < r2.value);
            let rho = eigenvalues(&a).unwrap().eigenvalues.iter().map(|l| l.norm()).fold(0.0, f64::max);
            let s1 = singular_values(&a)[0];
            prop_assert!(r1.value >= rho - 1e-7);
            prop_assert!(r1.value <= s1 + 0.2 + 1e-7);
        }

        #[test]
        fn grid_members_within_radius(seed in 0u64..60) {
            let a = random_matrix(3, seed, MatrixFamily::Dense);
            let eps = 0.4;
            let r = radius_with(&a, eps, &RadiusOpts { n_rays: 48, tol: 1e-8, ..RadiusOpts::default() }).unwrap();
            let gs = GridSpec::new(c(0.0, 0.0), singular_values(&a)[0] + eps, 17).unwrap();
            let sample = grid(&a, eps, &gs).unwrap();
            for (z, &m) in sample.points.iter().zip(&sample.membership) {
                if m {
                    prop_assert!(z.norm() <= r.value + gs.cell_diagonal() + 1e-6);
                }
            }
        }
    }
}
