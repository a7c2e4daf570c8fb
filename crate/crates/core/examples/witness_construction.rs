//! Deterministic asymmetry-witness construction for matrices outside the
//! two-eigenvalue normal family, showing the route taken per structure.
//!
//! Run with: cargo run --release --example witness_construction

use pseudospectra::classify::{construct_witness, ClassifyOpts};
use pseudospectra::mat::{commutator, smin_shift, CMatrix, Complex64};

fn show(label: &str, a: &CMatrix) {
    match construct_witness(a, &ClassifyOpts::default()) {
        Ok(w) => {
            let c = commutator(a, &w.probe.realize()).unwrap();
            let cert = &w.certificate;
            println!("{label}: route {}", w.route.name());
            println!(
                "  witness point z = {:.4} + {:.4}i at eps = {:.4}",
                cert.z.re, cert.z.im, cert.eps
            );
            println!(
                "  smin(C - zI) = {:.6} (inside), smin(C + zI) = {:.6} (outside), margin {:.3e}",
                smin_shift(&c, cert.z),
                smin_shift(&c, -cert.z),
                cert.margin
            );
        }
        Err(e) => println!("{label}: {e}"),
    }
}

fn main() {
    let c = |re: f64| Complex64::new(re, 0.0);

    show(
        "normal, three distinct eigenvalues",
        &CMatrix::diag(&[c(2.0), c(1.0), c(-1.0)]),
    );

    let mut e12 = CMatrix::zeros(3);
    e12[(0, 1)] = c(1.0);
    show("\nnilpotent E12 (+) 0", &e12);

    let mut shifted = CMatrix::zeros(3);
    shifted[(0, 0)] = c(1.0);
    shifted[(0, 1)] = c(1.0);
    show("\nE11 + E12", &shifted);

    let coupled = CMatrix::from_real_rows(&[
        &[1.0, 1.0, 0.5, 0.0],
        &[0.0, 2.0, 1.0, 0.3],
        &[0.0, 0.0, 0.5, 0.0],
        &[0.0, 0.0, 0.0, 0.2],
    ]);
    show("\ntriangular with active tail rows", &coupled);
}
