//! Classify matrices as "normal with at most two distinct eigenvalues"
//! three ways at once: direct spectral test, randomized commutator
//! symmetry probing, and certificate-backed witness construction.
//!
//! Run with: cargo run --release --example classify_matrix

use pseudospectra::classify::{classify, ClassifyOpts};
use pseudospectra::mat::{random_matrix, CMatrix, Complex64, MatrixFamily};

fn show(label: &str, a: &CMatrix) {
    let opts = ClassifyOpts {
        n_probes: 10,
        samples_per_probe: 96,
        ..ClassifyOpts::default()
    };
    let report = classify(a, 1.0, &opts).unwrap();
    println!("{label}:");
    println!("  direct test        {}", report.direct);
    println!(
        "  probe test         {} ({} probes)",
        report.probe.symmetric, report.probe.probes_used
    );
    println!("  views agree        {}", report.agree);
    println!("  case               {}", report.case_tag.name());
    if let Some(w) = &report.witness {
        println!(
            "  witness margin     {:.3e} at eps {:.3} (route {})",
            w.certificate.margin,
            w.certificate.eps,
            w.route.name()
        );
    }
}

fn main() {
    let two_eig = random_matrix(4, 1, MatrixFamily::TwoEigNormal);
    show("random two-eigenvalue normal", &two_eig);

    let d = CMatrix::diag(&[
        Complex64::new(2.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(-1.0, 0.0),
    ]);
    show("\ndiag(2, 1, -1)", &d);

    let mut t = CMatrix::identity(3);
    t[(0, 1)] = Complex64::new(1.0, 0.0);
    show("\nI + E12 (non-normal)", &t);
}
