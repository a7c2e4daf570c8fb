//! Seeded generators for probe matrices. Every generator takes an explicit
//! seed and is deterministic, so parallel and repeated runs reproduce.

use super::{vdot, vnorm, CMatrix, Complex64, RankOneNilpotent};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::str::FromStr;

/// Families for [`random_matrix`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixFamily {
    Dense,
    Normal,
    TwoEigNormal,
    Triangular,
    Nilpotent,
}

impl FromStr for MatrixFamily {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dense" => Ok(MatrixFamily::Dense),
            "normal" => Ok(MatrixFamily::Normal),
            "two-eig-normal" => Ok(MatrixFamily::TwoEigNormal),
            "triangular" => Ok(MatrixFamily::Triangular),
            "nilpotent" => Ok(MatrixFamily::Nilpotent),
            other => Err(format!(
                "unknown family '{other}' (expected dense, normal, two-eig-normal, triangular, nilpotent)"
            )),
        }
    }
}

impl MatrixFamily {
    pub const ALL: [MatrixFamily; 5] = [
        MatrixFamily::Dense,
        MatrixFamily::Normal,
        MatrixFamily::TwoEigNormal,
        MatrixFamily::Triangular,
        MatrixFamily::Nilpotent,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            MatrixFamily::Dense => "dense",
            MatrixFamily::Normal => "normal",
            MatrixFamily::TwoEigNormal => "two-eig-normal",
            MatrixFamily::Triangular => "triangular",
            MatrixFamily::Nilpotent => "nilpotent",
        }
    }
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller; the loop guards against log(0).
    let mut u1: f64 = rng.gen();
    while u1 <= f64::MIN_POSITIVE {
        u1 = rng.gen();
    }
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

pub(crate) fn complex_gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(
        gaussian(rng) / std::f64::consts::SQRT_2,
        gaussian(rng) / std::f64::consts::SQRT_2,
    )
}

fn gaussian_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| complex_gaussian(rng)).collect()
}

/// Haar-distributed unitary: complex Gaussian columns orthonormalized by
/// modified Gram-Schmidt with a second pass. The positive-diagonal QR
/// convention makes the distribution exactly Haar.
pub fn random_unitary(n: usize, seed: u64) -> CMatrix {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v = gaussian_vector(&mut rng, n);
        for _ in 0..2 {
            for qcol in &cols {
                let proj = vdot(qcol, &v);
                for i in 0..n {
                    v[i] -= proj * qcol[i];
                }
            }
        }
        let norm = vnorm(&v);
        if norm < 1e-8 {
            continue; // essentially impossible; redraw
        }
        for z in v.iter_mut() {
            *z /= norm;
        }
        cols.push(v);
    }
    CMatrix::from_fn(n, |i, j| cols[j][i])
}

/// Random rank-one nilpotent x y*: both vectors complex Gaussian, y
/// projected onto the orthogonal complement of x. Rotation invariant, so
/// probe directions carry no bias.
pub fn random_rank_one_nilpotent(n: usize, seed: u64) -> RankOneNilpotent {
    assert!(n >= 2, "rank-one nilpotents need dimension at least 2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let x = gaussian_vector(&mut rng, n);
        let nx = vnorm(&x);
        if nx < 1e-8 {
            continue;
        }
        let mut y = gaussian_vector(&mut rng, n);
        // two projection passes so the overlap lands at machine precision
        for _ in 0..2 {
            let overlap = vdot(&x, &y) / Complex64::new(nx * nx, 0.0);
            for i in 0..n {
                y[i] -= overlap * x[i];
            }
        }
        if vnorm(&y) < 1e-8 {
            continue;
        }
        match RankOneNilpotent::new(x, y) {
            Ok(p) => return p,
            Err(_) => continue,
        }
    }
}

/// Random matrix from the requested family.
pub fn random_matrix(n: usize, seed: u64, family: MatrixFamily) -> CMatrix {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match family {
        MatrixFamily::Dense => CMatrix::from_fn(n, |_, _| complex_gaussian(&mut rng)),
        MatrixFamily::Normal => {
            let eigs = gaussian_vector(&mut rng, n);
            let u = random_unitary(n, seed.wrapping_add(0x9e37_79b9));
            u.matmul(&CMatrix::diag(&eigs)).matmul(&u.adjoint())
        }
        MatrixFamily::TwoEigNormal => {
            let (l1, l2) = loop {
                let a = complex_gaussian(&mut rng);
                let b = complex_gaussian(&mut rng);
                if (a - b).norm() >= 0.5 {
                    break (a, b);
                }
            };
            let k = if n == 1 { 1 } else { rng.gen_range(1..n) };
            let eigs: Vec<Complex64> = (0..n).map(|i| if i < k { l1 } else { l2 }).collect();
            let u = random_unitary(n, seed.wrapping_add(0x517c_c1b7));
            u.matmul(&CMatrix::diag(&eigs)).matmul(&u.adjoint())
        }
        MatrixFamily::Triangular => CMatrix::from_fn(n, |i, j| {
            if i <= j {
                complex_gaussian(&mut rng)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }),
        MatrixFamily::Nilpotent => CMatrix::from_fn(n, |i, j| {
            if i < j {
                complex_gaussian(&mut rng)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::{distinct_eigenvalue_count, eigenvalues, is_normal};

    #[test]
    fn unitary_is_unitary() {
        for n in [1usize, 2, 5, 9] {
            let u = random_unitary(n, 3);
            let defect = u.adjoint().matmul(&u).sub(&CMatrix::identity(n)).fro_norm();
            assert!(defect <= 1e-10, "n={n}: defect {defect}");
        }
    }

    #[test]
    fn generators_are_deterministic() {
        let a = random_matrix(4, 99, MatrixFamily::Dense);
        let b = random_matrix(4, 99, MatrixFamily::Dense);
        assert_eq!(a, b);
        let p = random_rank_one_nilpotent(4, 99);
        let q = random_rank_one_nilpotent(4, 99);
        assert!(p.realize().sub(&q.realize()).max_abs() == 0.0);
    }

    #[test]
    fn nilpotent_probe_squares_to_zero() {
        let p = random_rank_one_nilpotent(4, 12);
        let x = p.realize();
        assert!(x.matmul(&x).max_abs() <= 1e-12 * p.weight().powi(2));
    }

    #[test]
    fn two_eig_family_contract() {
        for seed in 0..6u64 {
            let a = random_matrix(5, seed, MatrixFamily::TwoEigNormal);
            assert!(is_normal(&a, 1e-10));
            let sd = eigenvalues(&a).unwrap();
            assert_eq!(distinct_eigenvalue_count(&sd, 1e-8), 2, "seed {seed}");
        }
    }

    #[test]
    fn nilpotent_family_is_nilpotent() {
        let a = random_matrix(4, 7, MatrixFamily::Nilpotent);
        let a2 = a.matmul(&a);
        let a4 = a2.matmul(&a2);
        assert!(a4.max_abs() <= 1e-12 * a.fro_norm().powi(4).max(1.0));
    }
}
