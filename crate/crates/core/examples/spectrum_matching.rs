//! Recover the rigid affine correspondence between index-matched
//! eigenvalue lists: gamma = mu lambda + nu or its conjugate twin, with
//! |mu| = 1. Non-isometric inputs are rejected.
//!
//! Run with: cargo run --release --example spectrum_matching

use pseudospectra::preserve::{check_pairwise_isometry, match_spectra};
use pseudospectra::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn show(label: &str, ls: &[Complex64], gs: &[Complex64]) {
    match match_spectra(ls, gs, 1e-8) {
        Ok(m) => println!(
            "{label}: mode {}, mu = {:.4} + {:.4}i, nu = {:.4} + {:.4}i, residual {:.2e}",
            m.mode.name(),
            m.mu.re,
            m.mu.im,
            m.nu.re,
            m.nu.im,
            m.max_residual
        ),
        Err(e) => println!("{label}: {e}"),
    }
}

fn main() {
    let triangle = [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)];

    let rotated: Vec<Complex64> = triangle
        .iter()
        .map(|&z| Complex64::from_polar(1.0, 0.7) * z + c(2.0, -1.0))
        .collect();
    show("rotation + shift of a triangle", &triangle, &rotated);

    let conjugated: Vec<Complex64> = triangle.iter().map(|&z| z.conj()).collect();
    show("conjugated triangle          ", &triangle, &conjugated);

    let segment = [c(0.0, 0.0), c(1.0, 0.0)];
    let moved = [c(2.0, 0.0), c(2.0, 1.0)];
    show("two collinear points         ", &segment, &moved);

    let doubled: Vec<Complex64> = triangle.iter().map(|&z| z * 2.0).collect();
    show("doubled (not an isometry)    ", &triangle, &doubled);
    println!(
        "pairwise isometry check on the doubled set: {:?}",
        check_pairwise_isometry(&triangle, &doubled, 1e-8).unwrap()
    );
}
