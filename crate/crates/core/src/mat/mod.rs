//! Dense complex matrix foundation: arithmetic, commutators, singular
//! values, eigenvalues, structural predicates and seeded random generators.
//!
//! Everything here targets desk scale (n up to a few dozen). Robustness and
//! checkable certificates beat raw speed, so the kernels are plain
//! O(n^3) loops over row-major storage.

mod eig;
mod random;
mod svd;

pub use eig::{eigenvalues, schur, swap_schur_adjacent, SchurDecomposition, SpectralData};
pub use random::{random_matrix, random_rank_one_nilpotent, random_unitary, MatrixFamily};
pub use svd::{singular_values, smin_shift, spectral_norm};

use num_complex::Complex;
use std::fmt;
use std::ops::{Index, IndexMut};
use thiserror::Error;

/// Complex scalar used throughout the crate.
pub type Complex64 = Complex<f64>;

#[derive(Debug, Error)]
pub enum MatError {
    #[error("dimension mismatch: {left}x{left} vs {right}x{right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,
    #[error("entry ({row},{col}) is not finite")]
    NonFiniteEntry { row: usize, col: usize },
    #[error("expected {expected} entries for a {n}x{n} matrix, got {actual}")]
    BadEntryCount { n: usize, expected: usize, actual: usize },
    #[error("eigenvalue iteration did not converge within {iterations} iterations")]
    ConvergenceFailure { iterations: usize },
    #[error("cannot swap Schur positions {k} and {next}: coupled equal eigenvalues", next = k + 1)]
    SchurSwapFailed { k: usize },
    #[error("vectors must be nonzero")]
    ZeroVector,
    #[error("vectors are not orthogonal: |y*x| = {overlap:.3e} exceeds {bound:.3e}")]
    NotOrthogonal { overlap: f64, bound: f64 },
    #[error("vector lengths differ: {left} vs {right}")]
    VectorLengthMismatch { left: usize, right: usize },
}

/// Dense square complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for j in 0..self.n {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "matrix dimension must be at least 1");
        CMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn diag(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    /// Build from row-major data, validating shape and finiteness.
    pub fn from_data(n: usize, data: Vec<Complex64>) -> Result<Self, MatError> {
        if n == 0 {
            return Err(MatError::EmptyMatrix);
        }
        if data.len() != n * n {
            return Err(MatError::BadEntryCount {
                n,
                expected: n * n,
                actual: data.len(),
            });
        }
        for (k, z) in data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(MatError::NonFiniteEntry {
                    row: k / n,
                    col: k % n,
                });
            }
        }
        Ok(CMatrix { n, data })
    }

    /// Convenience constructor from real row slices (imaginary parts zero).
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let n = rows.len();
        Self::from_fn(n, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let n = rows.len();
        Self::from_fn(n, |i, j| rows[i][j])
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch in add");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        CMatrix { n: self.n, data }
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch in sub");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        CMatrix { n: self.n, data }
    }

    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch in matmul");
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> CMatrix {
        let data = self.data.iter().map(|z| c * z).collect();
        CMatrix { n: self.n, data }
    }

    pub fn neg(&self) -> CMatrix {
        self.scale(Complex64::new(-1.0, 0.0))
    }

    pub fn conj(&self) -> CMatrix {
        let data = self.data.iter().map(|z| z.conj()).collect();
        CMatrix { n: self.n, data }
    }

    pub fn transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn fro_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// A - z I.
    pub fn sub_shift(&self, z: Complex64) -> CMatrix {
        let mut out = self.clone();
        for i in 0..self.n {
            out[(i, i)] -= z;
        }
        out
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.n, v.len(), "dimension mismatch in matvec");
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// Rank-one matrix x y*.
    pub fn outer(x: &[Complex64], y: &[Complex64]) -> CMatrix {
        assert_eq!(x.len(), y.len(), "dimension mismatch in outer");
        CMatrix::from_fn(x.len(), |i, j| x[i] * y[j].conj())
    }

    /// Embed into the top-left corner of an m x m zero matrix (m >= n).
    pub fn pad_to(&self, m: usize) -> CMatrix {
        assert!(m >= self.n, "pad_to target smaller than matrix");
        let mut out = CMatrix::zeros(m);
        for i in 0..self.n {
            for j in 0..self.n {
                out[(i, j)] = self[(i, j)];
            }
        }
        out
    }

    /// Determinant via LU with partial pivoting.
    pub fn determinant(&self) -> Complex64 {
        let n = self.n;
        let mut lu = self.data.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for k in 0..n {
            let mut piv = k;
            let mut max = lu[k * n + k].norm();
            for i in k + 1..n {
                let v = lu[i * n + k].norm();
                if v > max {
                    max = v;
                    piv = i;
                }
            }
            if max == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if piv != k {
                for j in 0..n {
                    lu.swap(k * n + j, piv * n + j);
                }
                det = -det;
            }
            let pivot = lu[k * n + k];
            det *= pivot;
            for i in k + 1..n {
                let factor = lu[i * n + k] / pivot;
                for j in k + 1..n {
                    let sub = factor * lu[k * n + j];
                    lu[i * n + j] -= sub;
                }
            }
        }
        det
    }
}

// ── vector helpers ──────────────────────────────────────────────────

/// Conjugate-linear inner product y* x (conjugates the first argument).
pub fn vdot(y: &[Complex64], x: &[Complex64]) -> Complex64 {
    assert_eq!(y.len(), x.len());
    y.iter().zip(x).map(|(a, b)| a.conj() * b).sum()
}

pub fn vnorm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

// ── rank-one nilpotents ─────────────────────────────────────────────

/// Factored rank-one nilpotent X = x y* with y orthogonal to x.
///
/// X squares to zero and is unitarily similar to `|x||y| E21`; the scalar
/// `|x||y|` is the `weight`.
#[derive(Clone, Debug)]
pub struct RankOneNilpotent {
    x: Vec<Complex64>,
    y: Vec<Complex64>,
}

pub const NILPOTENT_ORTHO_TOL: f64 = 1e-12;

impl RankOneNilpotent {
    pub fn new(x: Vec<Complex64>, y: Vec<Complex64>) -> Result<Self, MatError> {
        if x.len() != y.len() {
            return Err(MatError::VectorLengthMismatch {
                left: x.len(),
                right: y.len(),
            });
        }
        let nx = vnorm(&x);
        let ny = vnorm(&y);
        if nx == 0.0 || ny == 0.0 {
            return Err(MatError::ZeroVector);
        }
        let overlap = vdot(&y, &x).norm();
        let bound = NILPOTENT_ORTHO_TOL * nx * ny;
        if overlap > bound {
            return Err(MatError::NotOrthogonal { overlap, bound });
        }
        Ok(RankOneNilpotent { x, y })
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &[Complex64] {
        &self.x
    }

    pub fn y(&self) -> &[Complex64] {
        &self.y
    }

    /// |x| |y|, the single nonzero singular value of the realized matrix.
    pub fn weight(&self) -> f64 {
        vnorm(&self.x) * vnorm(&self.y)
    }

    pub fn realize(&self) -> CMatrix {
        CMatrix::outer(&self.x, &self.y)
    }
}

// ── operations ──────────────────────────────────────────────────────

/// Lie product AB - BA.
pub fn commutator(a: &CMatrix, b: &CMatrix) -> Result<CMatrix, MatError> {
    if a.dim() != b.dim() {
        return Err(MatError::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(a.matmul(b).sub(&b.matmul(a)))
}

/// mu A + nu I.
pub fn apply_affine(a: &CMatrix, mu: Complex64, nu: Complex64) -> CMatrix {
    let mut out = a.scale(mu);
    for i in 0..a.dim() {
        out[(i, i)] += nu;
    }
    out
}

/// Normality test: |A A* - A* A|_F <= tol * max(1, |A|_F^2).
pub fn is_normal(a: &CMatrix, tol: f64) -> bool {
    assert!(tol > 0.0, "tolerance must be positive");
    let aa = a.matmul(&a.adjoint());
    let a_a = a.adjoint().matmul(a);
    let defect = aa.sub(&a_a).fro_norm();
    defect <= tol * a.fro_norm().powi(2).max(1.0)
}

/// Number of eigenvalue clusters under single-linkage clustering with
/// threshold `tol * (1 + spread)`, where spread is the largest pairwise
/// distance. Near-degenerate spectra can flip the count; `SpectralData`
/// carries the minimal gap so callers can detect that regime.
pub fn distinct_eigenvalue_count(s: &SpectralData, tol: f64) -> usize {
    assert!(tol > 0.0, "tolerance must be positive");
    let vals = &s.eigenvalues;
    let k = vals.len();
    if k <= 1 {
        return k;
    }
    let mut spread = 0.0_f64;
    for i in 0..k {
        for j in i + 1..k {
            spread = spread.max((vals[i] - vals[j]).norm());
        }
    }
    let threshold = tol * (1.0 + spread);
    // union-find over pairs within threshold
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = i;
        while parent[c] != r {
            let next = parent[c];
            parent[c] = r;
            c = next;
        }
        r
    }
    for i in 0..k {
        for j in i + 1..k {
            if (vals[i] - vals[j]).norm() <= threshold {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut roots: Vec<usize> = (0..k).map(|i| find(&mut parent, i)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

/// Members of each eigenvalue cluster, in input order, under the same
/// single-linkage rule as [`distinct_eigenvalue_count`].
pub fn eigenvalue_clusters(s: &SpectralData, tol: f64) -> Vec<Vec<usize>> {
    let vals = &s.eigenvalues;
    let k = vals.len();
    if k == 0 {
        return Vec::new();
    }
    let mut spread = 0.0_f64;
    for i in 0..k {
        for j in i + 1..k {
            spread = spread.max((vals[i] - vals[j]).norm());
        }
    }
    let threshold = tol * (1.0 + spread);
    let mut cluster_of = vec![usize::MAX; k];
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for i in 0..k {
        if cluster_of[i] != usize::MAX {
            continue;
        }
        let id = clusters.len();
        let mut stack = vec![i];
        cluster_of[i] = id;
        let mut members = Vec::new();
        while let Some(p) = stack.pop() {
            members.push(p);
            for q in 0..k {
                if cluster_of[q] == usize::MAX && (vals[p] - vals[q]).norm() <= threshold {
                    cluster_of[q] = id;
                    stack.push(q);
                }
            }
        }
        members.sort_unstable();
        clusters.push(members);
    }
    clusters
}

/// True iff all eigenvalues lie within `tol * spread` of one real-affine
/// line in the complex plane. The line is anchored at the two most
/// separated eigenvalues, a numerically stable choice. Vacuously true for
/// at most two distinct values.
pub fn eigenvalues_collinear(s: &SpectralData, tol: f64) -> bool {
    assert!(tol > 0.0, "tolerance must be positive");
    let vals = &s.eigenvalues;
    let k = vals.len();
    if k <= 2 {
        return true;
    }
    let mut spread = 0.0_f64;
    let (mut p, mut q) = (0, 0);
    for i in 0..k {
        for j in i + 1..k {
            let d = (vals[i] - vals[j]).norm();
            if d > spread {
                spread = d;
                p = i;
                q = j;
            }
        }
    }
    if spread == 0.0 {
        return true;
    }
    let dir = (vals[q] - vals[p]) / Complex64::new(spread, 0.0);
    let max_dev = vals
        .iter()
        .map(|&z| ((z - vals[p]) * dir.conj()).im.abs())
        .fold(0.0, f64::max);
    max_dev <= tol * spread
}
