//! Canonical commutator-preserving maps, pluggable radial
//! unitary-similarity-invariant functions with property checkers, Lie
//! product invariance verification, and affine spectrum matching.
//!
//! The maps have the shape `A -> mu_A U tau(A) U* + nu_A I` with unit
//! scalars `mu_A`, an entrywise transform `tau`, and an exceptional set of
//! matrices on which the map swaps to the adjoint (or flips the sign of
//! mu, for the pseudospectrum-preserving family). The verification
//! operations here exercise the sufficiency direction numerically.

use crate::classify::derive_seed;
use crate::mat::{
    apply_affine, commutator, eigenvalue_clusters, eigenvalues, is_normal, random_matrix,
    random_unitary, singular_values, CMatrix, Complex64, MatError, MatrixFamily,
    RankOneNilpotent,
};
use crate::pseudo::{
    radius_with, sampled_set_compare, PseudoError, RadiusOpts, SetCompareOpts, SetComparison,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PreserveError {
    #[error("scalar rule produced |mu| = {0}, expected unit modulus")]
    NonUnitModulus(f64),
    #[error("map frame is not unitary: |U*U - I| = {0:.3e}")]
    NonUnitaryFrame(f64),
    #[error("dimension mismatch: map is {map}x{map}, matrix is {matrix}x{matrix}")]
    DimensionMismatch { map: usize, matrix: usize },
    #[error("map outside the verified family: {0}")]
    UnsupportedMapFamily(String),
    #[error("eigenvalue lists have different lengths: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("empty eigenvalue lists")]
    EmptyInput,
    #[error("pairwise distances disagree; the point sets are not isometric")]
    NoIsometry,
    #[error("isometric point sets admit neither an affine nor a conjugate-affine match; tolerances are inconsistent")]
    NoSolution,
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Pseudo(#[from] PseudoError),
}

// ── radial functions ────────────────────────────────────────────────

/// Nonnegative matrix functionals used as preservation targets. The
/// pseudospectral radius, Frobenius norm and largest singular value all
/// satisfy the radial invariance properties; the spectral radius is
/// shipped as a negative control (it vanishes on nilpotents).
#[derive(Clone, Debug)]
pub enum RadialFunction {
    PseudoRadius { eps: f64, rays: usize, tol: f64 },
    FrobeniusNorm,
    LargestSingularValue,
    SpectralRadius,
}

impl RadialFunction {
    pub fn pseudo_radius(eps: f64) -> Self {
        RadialFunction::PseudoRadius {
            eps,
            rays: 180,
            tol: 1e-8,
        }
    }

    pub fn eval(&self, a: &CMatrix) -> f64 {
        match self {
            RadialFunction::PseudoRadius { eps, rays, tol } => radius_with(
                a,
                *eps,
                &RadiusOpts {
                    n_rays: *rays,
                    tol: *tol,
                    ..RadiusOpts::default()
                },
            )
            .expect("radius evaluation with validated options")
            .value,
            RadialFunction::FrobeniusNorm => a.fro_norm(),
            RadialFunction::LargestSingularValue => singular_values(a)[0],
            RadialFunction::SpectralRadius => eigenvalues(a)
                .expect("eigenvalue iteration")
                .eigenvalues
                .iter()
                .map(|l| l.norm())
                .fold(0.0, f64::max),
        }
    }

    pub fn name(&self) -> String {
        match self {
            RadialFunction::PseudoRadius { eps, .. } => format!("pseudospectral-radius(eps={eps})"),
            RadialFunction::FrobeniusNorm => "frobenius".into(),
            RadialFunction::LargestSingularValue => "largest-singular-value".into(),
            RadialFunction::SpectralRadius => "spectral-radius".into(),
        }
    }

    /// Parse CLI names: `reps:EPS`, `fro`, `smax`, `rho`.
    pub fn parse(s: &str) -> Result<Self, String> {
        if let Some(eps) = s.strip_prefix("reps:") {
            let eps: f64 = eps
                .parse()
                .map_err(|e| format!("bad eps in '{s}': {e}"))?;
            if eps <= 0.0 {
                return Err(format!("eps must be positive, got {eps}"));
            }
            return Ok(RadialFunction::pseudo_radius(eps));
        }
        match s {
            "fro" => Ok(RadialFunction::FrobeniusNorm),
            "smax" => Ok(RadialFunction::LargestSingularValue),
            "rho" => Ok(RadialFunction::SpectralRadius),
            other => Err(format!(
                "unknown function '{other}' (expected reps:EPS, fro, smax, rho)"
            )),
        }
    }
}

// ── canonical maps ──────────────────────────────────────────────────

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tau {
    Identity,
    Conjugate,
    Transpose,
    Adjoint,
    /// A -> i A^t; the transpose branch of the pseudospectrum preservers.
    ITranspose,
}

impl Tau {
    pub const ALL: [Tau; 5] = [
        Tau::Identity,
        Tau::Conjugate,
        Tau::Transpose,
        Tau::Adjoint,
        Tau::ITranspose,
    ];

    pub fn apply(&self, a: &CMatrix) -> CMatrix {
        match self {
            Tau::Identity => a.clone(),
            Tau::Conjugate => a.conj(),
            Tau::Transpose => a.transpose(),
            Tau::Adjoint => a.adjoint(),
            Tau::ITranspose => a.transpose().scale(Complex64::new(0.0, 1.0)),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Tau::Identity => "identity",
            Tau::Conjugate => "conjugate",
            Tau::Transpose => "transpose",
            Tau::Adjoint => "adjoint",
            Tau::ITranspose => "itranspose",
        }
    }

    pub fn parse(s: &str) -> Result<Self, String> {
        match s {
            "identity" => Ok(Tau::Identity),
            "conjugate" => Ok(Tau::Conjugate),
            "transpose" => Ok(Tau::Transpose),
            "adjoint" => Ok(Tau::Adjoint),
            "itranspose" => Ok(Tau::ITranspose),
            other => Err(format!("unknown tau '{other}'")),
        }
    }
}

/// Per-matrix scalar assignment (mu_A, nu_A) with |mu_A| = 1.
#[derive(Clone, Debug)]
pub enum ScalarRule {
    Constant { mu: Complex64, nu: Complex64 },
    /// Seeded draw keyed on the matrix content: different matrices get
    /// different unit scalars, deterministically.
    RandomPerMatrix { seed: u64 },
}

fn matrix_fingerprint(a: &CMatrix) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    let mut mix = |bits: u64| {
        h ^= bits;
        h = h.wrapping_mul(0x1000_0000_01b3);
    };
    mix(a.dim() as u64);
    for z in a.data() {
        mix(z.re.to_bits());
        mix(z.im.to_bits());
    }
    h
}

impl ScalarRule {
    pub fn eval(&self, a: &CMatrix) -> (Complex64, Complex64) {
        match self {
            ScalarRule::Constant { mu, nu } => (*mu, *nu),
            ScalarRule::RandomPerMatrix { seed } => {
                let mut rng =
                    ChaCha8Rng::seed_from_u64(derive_seed(*seed, matrix_fingerprint(a)));
                let mu = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * rng.gen::<f64>());
                let nu = Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
                    * Complex64::new(2.0, 0.0);
                (mu, nu)
            }
        }
    }
}

/// The exceptional set on which a map acts differently. Opaque predicate
/// by design; the constructive instance is the set of normal matrices with
/// at most two distinct eigenvalues.
#[derive(Clone, Debug)]
pub enum ExceptionalSet {
    Never,
    TwoEigNormal { tol: f64 },
    /// Matches matrices close to one fixed target; used for negative
    /// controls that flip the sign somewhere they should not.
    NearMatrix { target: CMatrix, tol: f64 },
}

impl ExceptionalSet {
    pub fn contains(&self, a: &CMatrix) -> bool {
        match self {
            ExceptionalSet::Never => false,
            ExceptionalSet::TwoEigNormal { tol } => {
                if !is_normal(a, *tol) {
                    return false;
                }
                match eigenvalues(a) {
                    Ok(spec) => eigenvalue_clusters(&spec, 1e-8).len() <= 2,
                    Err(_) => false,
                }
            }
            ExceptionalSet::NearMatrix { target, tol } => {
                a.dim() == target.dim()
                    && a.sub(target).fro_norm() <= tol * target.fro_norm().max(1.0)
            }
        }
    }
}

/// What the map does on its exceptional set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExceptionalAction {
    /// Replace tau(A) by tau(A)*.
    AdjointSwap,
    /// Flip the sign of mu_A.
    NegateMu,
}

/// Candidate preserver `A -> mu_A U tau(A) U* + nu_A I`, with the
/// exceptional-set action applied when the predicate fires.
#[derive(Clone, Debug)]
pub struct CanonicalMap {
    pub u: CMatrix,
    pub tau: Tau,
    pub scalar_rule: ScalarRule,
    pub exceptional: ExceptionalSet,
    pub action: ExceptionalAction,
}

impl CanonicalMap {
    pub fn identity(n: usize) -> Self {
        CanonicalMap {
            u: CMatrix::identity(n),
            tau: Tau::Identity,
            scalar_rule: ScalarRule::Constant {
                mu: Complex64::new(1.0, 0.0),
                nu: Complex64::new(0.0, 0.0),
            },
            exceptional: ExceptionalSet::Never,
            action: ExceptionalAction::NegateMu,
        }
    }
}

pub fn apply_map(m: &CanonicalMap, a: &CMatrix) -> Result<CMatrix, PreserveError> {
    if m.u.dim() != a.dim() {
        return Err(PreserveError::DimensionMismatch {
            map: m.u.dim(),
            matrix: a.dim(),
        });
    }
    let defect = m
        .u
        .adjoint()
        .matmul(&m.u)
        .sub(&CMatrix::identity(m.u.dim()))
        .fro_norm();
    if defect > 1e-10 * m.u.dim() as f64 {
        return Err(PreserveError::NonUnitaryFrame(defect));
    }
    let (mut mu, nu) = m.scalar_rule.eval(a);
    if (mu.norm() - 1.0).abs() > 1e-10 {
        return Err(PreserveError::NonUnitModulus(mu.norm()));
    }
    let mut t = m.tau.apply(a);
    if m.exceptional.contains(a) {
        match m.action {
            ExceptionalAction::AdjointSwap => t = t.adjoint(),
            ExceptionalAction::NegateMu => mu = -mu,
        }
    }
    Ok(apply_affine(
        &m.u.matmul(&t).matmul(&m.u.adjoint()),
        mu,
        nu,
    ))
}

// ── property checkers ───────────────────────────────────────────────

#[derive(Clone, Copy, Debug)]
pub struct CheckOpts {
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for CheckOpts {
    fn default() -> Self {
        CheckOpts {
            dim: 3,
            trials: 20,
            seed: 0,
            tol: 1e-6,
        }
    }
}

/// Verdict of a property check; `worst` is the property-specific
/// worst-case margin or deviation across trials.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub passed: bool,
    pub trials: usize,
    pub worst: f64,
    pub first_failure: Option<usize>,
}

/// Radial invariance: f(mu U A U*) = f(A) for unit mu and unitary U.
pub fn check_p1(f: &RadialFunction, opts: &CheckOpts) -> CheckReport {
    let mut worst = 0.0_f64;
    let mut first_failure = None;
    for i in 0..opts.trials {
        let family = MatrixFamily::ALL[i % MatrixFamily::ALL.len()];
        let a = random_matrix(opts.dim, derive_seed(opts.seed, i as u64), family);
        let u = random_unitary(opts.dim, derive_seed(opts.seed, 0x100 + i as u64));
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(opts.seed, 0x200 + i as u64));
        let mu = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * rng.gen::<f64>());
        let rotated = u.matmul(&a).matmul(&u.adjoint()).scale(mu);
        let fa = f.eval(&a);
        let dev = (f.eval(&rotated) - fa).abs() / (1.0 + fa);
        worst = worst.max(dev);
        if dev > opts.tol && first_failure.is_none() {
            first_failure = Some(i);
        }
    }
    CheckReport {
        passed: first_failure.is_none(),
        trials: opts.trials,
        worst,
        first_failure,
    }
}

/// Positivity away from zero: f(A) > f(0) for every nonzero A.
pub fn check_p2(f: &RadialFunction, opts: &CheckOpts) -> CheckReport {
    let f0 = f.eval(&CMatrix::zeros(opts.dim));
    let mut worst = f64::INFINITY;
    let mut first_failure = None;
    for i in 0..opts.trials {
        let family = MatrixFamily::ALL[i % MatrixFamily::ALL.len()];
        let a = random_matrix(opts.dim, derive_seed(opts.seed, 0x300 + i as u64), family);
        if a.fro_norm() <= 1e-12 {
            continue;
        }
        let margin = f.eval(&a) - f0;
        worst = worst.min(margin);
        if margin <= 0.0 && first_failure.is_none() {
            first_failure = Some(i);
        }
    }
    CheckReport {
        passed: first_failure.is_none(),
        trials: opts.trials,
        worst,
        first_failure,
    }
}

/// Strict growth along nilpotent rays: t -> f(tX) strictly increasing
/// over the sorted positive grid.
pub fn check_p3(f: &RadialFunction, probe: &RankOneNilpotent, t_grid: &[f64]) -> CheckReport {
    let mut grid: Vec<f64> = t_grid.iter().copied().filter(|t| *t >= 0.0).collect();
    grid.sort_by(f64::total_cmp);
    let x = probe.realize();
    let values: Vec<f64> = grid
        .iter()
        .map(|&t| f.eval(&x.scale(Complex64::new(t, 0.0))))
        .collect();
    let mut worst = f64::INFINITY;
    let mut first_failure = None;
    for (i, w) in values.windows(2).enumerate() {
        let inc = w[1] - w[0];
        worst = worst.min(inc);
        if inc <= 0.0 && first_failure.is_none() {
            first_failure = Some(i);
        }
    }
    CheckReport {
        passed: first_failure.is_none(),
        trials: grid.len(),
        worst,
        first_failure,
    }
}

// ── invariance verification ─────────────────────────────────────────

#[derive(Clone, Debug)]
pub struct InvarianceOpts {
    pub dim: usize,
    pub n_pairs: usize,
    pub seed: u64,
    pub tol: f64,
    /// Extra pairs checked before the generated ones.
    pub include_pairs: Vec<(CMatrix, CMatrix)>,
}

impl Default for InvarianceOpts {
    fn default() -> Self {
        InvarianceOpts {
            dim: 3,
            n_pairs: 20,
            seed: 0,
            tol: 2e-8,
            include_pairs: Vec::new(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LieInvarianceReport {
    pub passed: bool,
    pub pairs: usize,
    pub max_deviation: f64,
    pub counterexample: Option<usize>,
}

/// Check f([A,B]) = f([phi(A), phi(B)]) over random mixed-family pairs.
/// Deviations are measured relative to 1 + f([A,B]).
pub fn verify_lie_invariance(
    m: &CanonicalMap,
    f: &RadialFunction,
    opts: &InvarianceOpts,
) -> Result<LieInvarianceReport, PreserveError> {
    let mut max_deviation = 0.0_f64;
    let mut counterexample = None;
    let families = MatrixFamily::ALL;
    let generated = (0..opts.n_pairs).map(|i| {
        (
            random_matrix(
                opts.dim,
                derive_seed(opts.seed, 2 * i as u64),
                families[i % families.len()],
            ),
            random_matrix(
                opts.dim,
                derive_seed(opts.seed, 2 * i as u64 + 1),
                families[(i + 2) % families.len()],
            ),
        )
    });
    let mut pairs_checked = 0usize;
    for (i, (a, b)) in opts.include_pairs.iter().cloned().chain(generated).enumerate() {
        let c_orig = commutator(&a, &b)?;
        let c_mapped = commutator(&apply_map(m, &a)?, &apply_map(m, &b)?)?;
        let f_orig = f.eval(&c_orig);
        let dev = (f.eval(&c_mapped) - f_orig).abs() / (1.0 + f_orig);
        max_deviation = max_deviation.max(dev);
        if dev > opts.tol && counterexample.is_none() {
            counterexample = Some(i);
        }
        pairs_checked += 1;
    }
    Ok(LieInvarianceReport {
        passed: counterexample.is_none(),
        pairs: pairs_checked,
        max_deviation,
        counterexample,
    })
}

#[derive(Clone, Debug)]
pub struct SigmaOpts {
    pub dim: usize,
    pub n_pairs: usize,
    pub samples: usize,
    pub seed: u64,
    pub delta: f64,
    /// Extra pairs checked before the generated ones (used to pin down
    /// specific exceptional-set patterns).
    pub include_pairs: Vec<(CMatrix, CMatrix)>,
}

impl Default for SigmaOpts {
    fn default() -> Self {
        SigmaOpts {
            dim: 3,
            n_pairs: 12,
            samples: 256,
            seed: 0,
            delta: 1e-6,
            include_pairs: Vec::new(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PairOutcome {
    /// Exceptional-set membership of (A, B).
    pub pattern: (bool, bool),
    pub comparison: SetComparison,
}

#[derive(Clone, Debug)]
pub struct SigmaInvarianceReport {
    pub passed: bool,
    pub pairs: Vec<PairOutcome>,
    pub first_failure: Option<usize>,
}

/// Check sigma_eps([A,B]) = sigma_eps([phi(A), phi(B)]) by sampled set
/// comparison. The map must be in the pseudospectrum-preserving family:
/// tau identity or i-transpose, constant mu in {1, -1}, sign flipped on
/// the exceptional set.
///
/// Pairs cycle through exceptional-membership patterns none / one / both.
pub fn verify_sigma_invariance(
    m: &CanonicalMap,
    eps: f64,
    opts: &SigmaOpts,
) -> Result<SigmaInvarianceReport, PreserveError> {
    if !matches!(m.tau, Tau::Identity | Tau::ITranspose) {
        return Err(PreserveError::UnsupportedMapFamily(format!(
            "tau = {} (need identity or itranspose)",
            m.tau.name()
        )));
    }
    match &m.scalar_rule {
        ScalarRule::Constant { mu, .. } => {
            if (mu * mu - Complex64::new(1.0, 0.0)).norm() > 1e-10 {
                return Err(PreserveError::UnsupportedMapFamily(format!(
                    "mu = {mu} (need +1 or -1)"
                )));
            }
        }
        ScalarRule::RandomPerMatrix { .. } => {
            return Err(PreserveError::UnsupportedMapFamily(
                "per-matrix random scalars (need constant mu in {1, -1})".into(),
            ));
        }
    }
    if !matches!(m.exceptional, ExceptionalSet::Never)
        && m.action != ExceptionalAction::NegateMu
    {
        return Err(PreserveError::UnsupportedMapFamily(
            "exceptional action must flip the sign of mu".into(),
        ));
    }

    let patterns = [
        (MatrixFamily::Dense, MatrixFamily::Dense),
        (MatrixFamily::TwoEigNormal, MatrixFamily::Dense),
        (MatrixFamily::TwoEigNormal, MatrixFamily::TwoEigNormal),
    ];
    let mut pairs: Vec<(CMatrix, CMatrix)> = opts.include_pairs.clone();
    for i in 0..opts.n_pairs {
        let (fa, fb) = patterns[i % patterns.len()];
        pairs.push((
            random_matrix(opts.dim, derive_seed(opts.seed, 0x600 + 2 * i as u64), fa),
            random_matrix(opts.dim, derive_seed(opts.seed, 0x601 + 2 * i as u64), fb),
        ));
    }

    let probe = ExceptionalSet::TwoEigNormal { tol: 1e-10 };
    let mut outcomes = Vec::with_capacity(pairs.len());
    let mut first_failure = None;
    for (i, (a, b)) in pairs.iter().enumerate() {
        let c_orig = commutator(a, b)?;
        let c_mapped = commutator(&apply_map(m, a)?, &apply_map(m, b)?)?;
        let comparison = sampled_set_compare(
            &c_orig,
            &c_mapped,
            eps,
            &SetCompareOpts {
                n_samples: opts.samples,
                seed: derive_seed(opts.seed, 0x700 + i as u64),
                delta: opts.delta,
                ..SetCompareOpts::default()
            },
        )?;
        if !comparison.equal && first_failure.is_none() {
            first_failure = Some(i);
        }
        outcomes.push(PairOutcome {
            pattern: (probe.contains(a), probe.contains(b)),
            comparison,
        });
    }
    Ok(SigmaInvarianceReport {
        passed: first_failure.is_none(),
        pairs: outcomes,
        first_failure,
    })
}

// ── spectrum matching ───────────────────────────────────────────────

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatchMode {
    Linear,
    ConjugateLinear,
    Both,
}

impl MatchMode {
    pub fn name(&self) -> &'static str {
        match self {
            MatchMode::Linear => "linear",
            MatchMode::ConjugateLinear => "conjugate-linear",
            MatchMode::Both => "both",
        }
    }
}

/// Affine correspondence between index-matched eigenvalue lists:
/// gamma_i = mu lambda_i + nu (linear) or conj(gamma_i) = mu lambda_i + nu
/// (conjugate-linear), with |mu| = 1.
#[derive(Clone, Copy, Debug)]
pub struct SpectrumMatch {
    pub mode: MatchMode,
    pub mu: Complex64,
    pub nu: Complex64,
    pub max_residual: f64,
}

/// All pairwise distances agree within tol * (1 + spread).
pub fn check_pairwise_isometry(
    lambdas: &[Complex64],
    gammas: &[Complex64],
    tol: f64,
) -> Result<bool, PreserveError> {
    if lambdas.len() != gammas.len() {
        return Err(PreserveError::LengthMismatch {
            left: lambdas.len(),
            right: gammas.len(),
        });
    }
    let k = lambdas.len();
    let mut spread = 0.0_f64;
    for i in 0..k {
        for j in i + 1..k {
            spread = spread.max((lambdas[i] - lambdas[j]).norm());
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            let dl = (lambdas[i] - lambdas[j]).norm();
            let dg = (gammas[i] - gammas[j]).norm();
            if (dl - dg).abs() > tol * (1.0 + spread) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Recover the affine (and/or conjugate-affine) correspondence between two
/// index-matched eigenvalue lists known to be pairwise isometric.
///
/// The anchor is the farthest pair; each candidate is validated on every
/// point. Collinear sets admit both modes, non-collinear sets at most one.
pub fn match_spectra(
    lambdas: &[Complex64],
    gammas: &[Complex64],
    tol: f64,
) -> Result<SpectrumMatch, PreserveError> {
    if lambdas.is_empty() {
        return Err(PreserveError::EmptyInput);
    }
    if !check_pairwise_isometry(lambdas, gammas, tol)? {
        return Err(PreserveError::NoIsometry);
    }
    let k = lambdas.len();
    let mut spread = 0.0_f64;
    let (mut p, mut q) = (0, 0);
    for i in 0..k {
        for j in i + 1..k {
            let d = (lambdas[i] - lambdas[j]).norm();
            if d > spread {
                spread = d;
                p = i;
                q = j;
            }
        }
    }
    if spread == 0.0 {
        // all lambdas equal, and by isometry all gammas equal
        return Ok(SpectrumMatch {
            mode: MatchMode::Both,
            mu: Complex64::new(1.0, 0.0),
            nu: gammas[0] - lambdas[0],
            max_residual: 0.0,
        });
    }

    let point_tol = tol * (1.0 + spread);
    let validate = |mu: Complex64, nu: Complex64, conjugated: bool| -> Option<f64> {
        if (mu.norm() - 1.0).abs() > tol {
            return None;
        }
        let mut worst = 0.0_f64;
        for i in 0..k {
            let target = if conjugated {
                gammas[i].conj()
            } else {
                gammas[i]
            };
            let r = (target - (mu * lambdas[i] + nu)).norm();
            worst = worst.max(r);
            if r > point_tol {
                return None;
            }
        }
        Some(worst)
    };

    let base = lambdas[p] - lambdas[q];
    let mu1 = (gammas[p] - gammas[q]) / base;
    let nu1 = gammas[p] - mu1 * lambdas[p];
    let linear = validate(mu1, nu1, false);
    let mu2 = (gammas[p].conj() - gammas[q].conj()) / base;
    let nu2 = gammas[p].conj() - mu2 * lambdas[p];
    let conj_linear = validate(mu2, nu2, true);

    match (linear, conj_linear) {
        (Some(r1), Some(r2)) => Ok(SpectrumMatch {
            mode: MatchMode::Both,
            mu: mu1,
            nu: nu1,
            max_residual: r1.max(r2),
        }),
        (Some(r1), None) => Ok(SpectrumMatch {
            mode: MatchMode::Linear,
            mu: mu1,
            nu: nu1,
            max_residual: r1,
        }),
        (None, Some(r2)) => Ok(SpectrumMatch {
            mode: MatchMode::ConjugateLinear,
            mu: mu2,
            nu: nu2,
            max_residual: r2,
        }),
        (None, None) => Err(PreserveError::NoSolution),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::random_rank_one_nilpotent;
    use proptest::prelude::*;
    use rand::Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_map_is_bitwise_identity() {
        let m = CanonicalMap::identity(3);
        let a = random_matrix(3, 5, MatrixFamily::Dense);
        let mapped = apply_map(&m, &a).unwrap();
        assert!(mapped.sub(&a).max_abs() == 0.0);
        // invariance deviation is exactly zero for the identity map
        let f = RadialFunction::FrobeniusNorm;
        let report = verify_lie_invariance(&m, &f, &InvarianceOpts::default()).unwrap();
        assert!(report.passed);
        assert_eq!(report.max_deviation, 0.0);
    }

    #[test]
    fn adjoint_on_hermitian_is_affine() {
        // tau = adjoint fixes Hermitian matrices, so the map reduces to
        // mu A + nu I
        let h = {
            let a = random_matrix(3, 8, MatrixFamily::Dense);
            a.add(&a.adjoint()).scale(c(0.5, 0.0))
        };
        let mu = Complex64::from_polar(1.0, 0.6);
        let nu = c(0.3, -0.7);
        let m = CanonicalMap {
            u: CMatrix::identity(3),
            tau: Tau::Adjoint,
            scalar_rule: ScalarRule::Constant { mu, nu },
            exceptional: ExceptionalSet::Never,
            action: ExceptionalAction::NegateMu,
        };
        let got = apply_map(&m, &h).unwrap();
        let want = apply_affine(&h, mu, nu);
        assert!(got.sub(&want).max_abs() <= 1e-12 * h.fro_norm());
    }

    #[test]
    fn itranspose_preserves_commutator_sets() {
        // [iA^t, iB^t] = [A,B]^t, and transposition preserves shifted
        // singular values
        let m = CanonicalMap {
            u: random_unitary(3, 4),
            tau: Tau::ITranspose,
            scalar_rule: ScalarRule::Constant {
                mu: c(1.0, 0.0),
                nu: c(0.0, 0.0),
            },
            exceptional: ExceptionalSet::Never,
            action: ExceptionalAction::NegateMu,
        };
        let report = verify_sigma_invariance(
            &m,
            0.5,
            &SigmaOpts {
                n_pairs: 6,
                samples: 128,
                ..SigmaOpts::default()
            },
        )
        .unwrap();
        assert!(report.passed, "{:?}", report.first_failure);
    }

    #[test]
    fn non_unit_mu_is_rejected() {
        let m = CanonicalMap {
            u: CMatrix::identity(3),
            tau: Tau::Identity,
            scalar_rule: ScalarRule::Constant {
                mu: c(2.0, 0.0),
                nu: c(0.0, 0.0),
            },
            exceptional: ExceptionalSet::Never,
            action: ExceptionalAction::NegateMu,
        };
        assert!(matches!(
            apply_map(&m, &CMatrix::identity(3)),
            Err(PreserveError::NonUnitModulus(_))
        ));
    }

    #[test]
    fn property_checks_on_shipped_functions() {
        let opts = CheckOpts {
            trials: 10,
            ..CheckOpts::default()
        };
        for f in [
            RadialFunction::FrobeniusNorm,
            RadialFunction::LargestSingularValue,
        ] {
            assert!(check_p1(&f, &opts).passed, "{} P1", f.name());
            assert!(check_p2(&f, &opts).passed, "{} P2", f.name());
            let probe = random_rank_one_nilpotent(3, 1);
            let grid = [0.0, 0.5, 1.0, 2.0, 4.0];
            assert!(check_p3(&f, &probe, &grid).passed, "{} P3", f.name());
        }
        // negative control: the spectral radius vanishes on nilpotents
        // (P1 is not asserted for it: computed eigenvalues of defective
        // matrices scatter at the eps^(1/3) barrier, swamping tight tols)
        let rho = RadialFunction::SpectralRadius;
        assert!(!check_p2(&rho, &opts).passed, "rho must fail positivity");
    }

    #[test]
    fn pseudo_radius_p3_matches_closed_form() {
        let probe = random_rank_one_nilpotent(3, 7);
        let w = probe.weight();
        let eps = 0.5;
        let f = RadialFunction::pseudo_radius(eps);
        let grid = [0.5, 1.0, 2.0];
        let report = check_p3(&f, &probe, &grid);
        assert!(report.passed);
        for &t in &grid {
            let got = f.eval(&probe.realize().scale(c(t, 0.0)));
            let want = (eps * eps + t * w * eps).sqrt();
            assert!((got - want).abs() <= 1e-6, "t={t}: {got} vs {want}");
        }
    }

    #[test]
    fn lie_invariance_with_random_scalars() {
        let m = CanonicalMap {
            u: random_unitary(3, 11),
            tau: Tau::Transpose,
            scalar_rule: ScalarRule::RandomPerMatrix { seed: 42 },
            exceptional: ExceptionalSet::Never,
            action: ExceptionalAction::NegateMu,
        };
        let f = RadialFunction::FrobeniusNorm;
        let report = verify_lie_invariance(
            &m,
            &f,
            &InvarianceOpts {
                n_pairs: 10,
                tol: 1e-9,
                ..InvarianceOpts::default()
            },
        )
        .unwrap();
        assert!(report.passed, "max dev {}", report.max_deviation);
    }

    #[test]
    fn sigma_invariance_flip_on_two_eig_normals() {
        let m = CanonicalMap {
            u: random_unitary(3, 19),
            tau: Tau::Identity,
            scalar_rule: ScalarRule::Constant {
                mu: c(1.0, 0.0),
                nu: c(0.4, -0.2),
            },
            exceptional: ExceptionalSet::TwoEigNormal { tol: 1e-10 },
            action: ExceptionalAction::NegateMu,
        };
        let report = verify_sigma_invariance(
            &m,
            0.5,
            &SigmaOpts {
                n_pairs: 6,
                samples: 128,
                seed: 3,
                ..SigmaOpts::default()
            },
        )
        .unwrap();
        assert!(report.passed, "first failure: {:?}", report.first_failure);
        // the pair patterns none/one/both were all exercised
        let mut seen = [false; 3];
        for o in &report.pairs {
            seen[o.pattern.0 as usize + o.pattern.1 as usize] = true;
        }
        assert!(seen.iter().all(|&s| s), "patterns missing: {seen:?}");
    }

    #[test]
    fn sigma_invariance_detects_bad_flip() {
        // flipping the sign on a non-exceptional matrix breaks equality
        let target = CMatrix::diag(&[c(2.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)]);
        let bad = CanonicalMap {
            u: CMatrix::identity(3),
            tau: Tau::Identity,
            scalar_rule: ScalarRule::Constant {
                mu: c(1.0, 0.0),
                nu: c(0.0, 0.0),
            },
            exceptional: ExceptionalSet::NearMatrix {
                target: target.clone(),
                tol: 1e-10,
            },
            action: ExceptionalAction::NegateMu,
        };
        let s2 = 2.0_f64.sqrt();
        let witness = CMatrix::from_real_rows(&[
            &[0.0, -s2, s2],
            &[0.0, -1.0, 1.0],
            &[0.0, -1.0, 1.0],
        ]);
        let report = verify_sigma_invariance(
            &bad,
            1.0,
            &SigmaOpts {
                n_pairs: 0,
                samples: 256,
                include_pairs: vec![(target, witness)],
                ..SigmaOpts::default()
            },
        )
        .unwrap();
        assert!(!report.passed, "bad flip must be detected");
    }

    #[test]
    fn sigma_invariance_rejects_wrong_family() {
        let m = CanonicalMap {
            u: CMatrix::identity(3),
            tau: Tau::Conjugate,
            scalar_rule: ScalarRule::Constant {
                mu: c(1.0, 0.0),
                nu: c(0.0, 0.0),
            },
            exceptional: ExceptionalSet::Never,
            action: ExceptionalAction::NegateMu,
        };
        assert!(matches!(
            verify_sigma_invariance(&m, 0.5, &SigmaOpts::default()),
            Err(PreserveError::UnsupportedMapFamily(_))
        ));
    }

    #[test]
    fn isometry_checks() {
        let ls = [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)];
        assert!(check_pairwise_isometry(&ls, &ls, 1e-10).unwrap());
        let rotated: Vec<Complex64> = ls.iter().map(|&z| c(0.0, 1.0) * z + c(3.0, 0.0)).collect();
        assert!(check_pairwise_isometry(&ls, &rotated, 1e-10).unwrap());
        let doubled: Vec<Complex64> = ls.iter().map(|&z| z * 2.0).collect();
        assert!(!check_pairwise_isometry(&ls, &doubled, 1e-10).unwrap());
        assert!(matches!(
            match_spectra(&ls, &doubled, 1e-10),
            Err(PreserveError::NoIsometry)
        ));
    }

    #[test]
    fn match_modes() {
        // conjugation of a non-collinear set
        let ls = [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)];
        let gs = [c(0.0, 0.0), c(1.0, 0.0), c(0.0, -1.0)];
        let m = match_spectra(&ls, &gs, 1e-10).unwrap();
        assert_eq!(m.mode, MatchMode::ConjugateLinear);
        assert!((m.mu - c(1.0, 0.0)).norm() <= 1e-10);
        assert!(m.nu.norm() <= 1e-10);

        // two-point (collinear) set admits both modes; linear mu = i
        let ls = [c(0.0, 0.0), c(1.0, 0.0)];
        let gs = [c(2.0, 0.0), c(2.0, 1.0)];
        let m = match_spectra(&ls, &gs, 1e-10).unwrap();
        assert_eq!(m.mode, MatchMode::Both);
        assert!((m.mu - c(0.0, 1.0)).norm() <= 1e-10);
        assert!((m.nu - c(2.0, 0.0)).norm() <= 1e-10);

        // identity on the cube roots of unity is linear
        let th = 2.0 * std::f64::consts::PI / 3.0;
        let ls = [c(1.0, 0.0), c(th.cos(), th.sin()), c((2.0 * th).cos(), (2.0 * th).sin())];
        let m = match_spectra(&ls, &ls, 1e-10).unwrap();
        assert_eq!(m.mode, MatchMode::Linear);
        assert!((m.mu - c(1.0, 0.0)).norm() <= 1e-10);

        // equal lists of one repeated point
        let ls = [c(1.0, 1.0), c(1.0, 1.0)];
        let gs = [c(0.0, 2.0), c(0.0, 2.0)];
        let m = match_spectra(&ls, &gs, 1e-10).unwrap();
        assert_eq!(m.mode, MatchMode::Both);
        assert!((m.nu - c(-1.0, 1.0)).norm() <= 1e-10);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn match_round_trip(seed in 0u64..2000, conjugate: bool, phase in 0.0..6.28f64, nre in -2.0..2.0f64, nim in -2.0..2.0f64, k in 2usize..6) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let ls: Vec<Complex64> = (0..k)
                .map(|_| c(4.0 * (rng.gen::<f64>() - 0.5), 4.0 * (rng.gen::<f64>() - 0.5)))
                .collect();
            let mu = Complex64::from_polar(1.0, phase);
            let nu = c(nre, nim);
            let gs: Vec<Complex64> = ls
                .iter()
                .map(|&l| if conjugate { (mu * l + nu).conj() } else { mu * l + nu })
                .collect();
            let m = match_spectra(&ls, &gs, 1e-8).unwrap();
            // the recovered transform must fit pointwise (parameters may
            // differ when the set has symmetries)
            let fits_linear = ls.iter().zip(&gs).all(|(&l, &g)| (g - (m.mu * l + m.nu)).norm() <= 1e-7);
            let fits_conj = ls.iter().zip(&gs).all(|(&l, &g)| (g.conj() - (m.mu * l + m.nu)).norm() <= 1e-7);
            match m.mode {
                MatchMode::Linear => prop_assert!(fits_linear),
                MatchMode::ConjugateLinear => prop_assert!(fits_conj),
                MatchMode::Both => prop_assert!(fits_linear || fits_conj),
            }
        }

        #[test]
        fn non_collinear_sets_have_unique_mode(seed in 0u64..500) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            // force a genuinely non-collinear triple
            let ls = [
                c(0.0, 0.0),
                c(1.0 + rng.gen::<f64>(), 0.0),
                c(0.0, 1.0 + rng.gen::<f64>()),
            ];
            let m = match_spectra(&ls, &ls, 1e-8).unwrap();
            prop_assert_eq!(m.mode, MatchMode::Linear);
        }
    }
}
