//! Symmetry probing of sigma_eps(C) against -sigma_eps(C) for commutators:
//! a two-eigenvalue normal matrix keeps every commutator symmetric, while
//! three distinct eigenvalues admit an asymmetry witness.
//!
//! Run with: cargo run --release --example commutator_symmetry

use pseudospectra::mat::{commutator, random_rank_one_nilpotent, CMatrix, Complex64};
use pseudospectra::pseudo::{symmetric, SymmetryOpts};

fn report(label: &str, a: &CMatrix, eps: f64) {
    let probe = random_rank_one_nilpotent(3, 5);
    let c = commutator(a, &probe.realize()).unwrap();
    let verdict = symmetric(
        &c,
        eps,
        &SymmetryOpts {
            n_probes: 256,
            seed: 1,
            ..SymmetryOpts::default()
        },
    );
    match verdict.witness() {
        Some((z, margin)) => println!(
            "{label}: asymmetric; witness z = {:.4} + {:.4}i inside, -z outside (margin {margin:.3e})",
            z.re, z.im
        ),
        None => println!("{label}: symmetric for every probe in the budget"),
    }
}

fn main() {
    let eps = 0.5;
    let d = |l: &[f64]| CMatrix::diag(&l.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>());

    report("diag(1, 1, -1)  (two distinct eigenvalues) ", &d(&[1.0, 1.0, -1.0]), eps);
    report("diag(2, 1, -1)  (three distinct eigenvalues)", &d(&[2.0, 1.0, -1.0]), eps);

    // purely imaginary conjugate pair: the pseudospectrum is a union of
    // disks centered at ai, -ai, 0, symmetric through the origin
    let c = CMatrix::diag(&[
        Complex64::new(0.0, 1.5),
        Complex64::new(0.0, -1.5),
        Complex64::new(0.0, 0.0),
    ]);
    let verdict = symmetric(&c, eps, &SymmetryOpts::default());
    println!(
        "diag(1.5i, -1.5i, 0) directly: {}",
        if verdict.is_symmetric() { "symmetric" } else { "asymmetric" }
    );
}
