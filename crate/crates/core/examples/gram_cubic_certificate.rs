//! The shifted-Gram cubic of a 3x3 trace-zero block: coefficient
//! polynomials in the shift, the parity criterion, and the real-axis
//! asymmetry certificate they yield.
//!
//! Run with: cargo run --release --example gram_cubic_certificate

use pseudospectra::gram_cubic::{
    asymmetry_certificate, asymmetry_criterion, extract_coeffs, fixture_three_eig_commutator,
};
use pseudospectra::mat::CMatrix;

fn poly(name: &str, coeffs: &[f64]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.abs() > 1e-9)
        .map(|(k, c)| match k {
            0 => format!("{c:.3}"),
            1 => format!("{c:.3} t"),
            _ => format!("{c:.3} t^{k}"),
        })
        .collect();
    format!("{name}(t) = {}", terms.join(" + "))
}

fn show(label: &str, c1: &CMatrix, eps: f64) {
    let coeffs = extract_coeffs(c1).unwrap();
    println!("{label}:");
    println!("  {}", poly("p2", &coeffs.p2));
    println!("  {}", poly("p1", &coeffs.p1));
    println!("  {}", poly("p0", &coeffs.p0));
    println!(
        "  odd linear coefficient a = {:.4}, criterion applies: {}",
        coeffs.odd_linear_a,
        asymmetry_criterion(&coeffs, 1e-8)
    );
    match asymmetry_certificate(c1, eps).unwrap() {
        Some(cert) => println!(
            "  certificate at eps = {eps}: boundary crossing t0 = {:.6}, mirrored point inside by {:.3e}{}",
            cert.t0,
            cert.margin,
            if cert.flipped { " (axis flipped)" } else { "" }
        ),
        None => println!("  no certificate at eps = {eps}"),
    }
}

fn main() {
    show(
        "three-eigenvalue commutator (top entry 2)",
        &fixture_three_eig_commutator(2.0),
        1.0,
    );
    println!();
    show(
        "same construction at the degenerate top entry 1",
        &fixture_three_eig_commutator(1.0),
        1.0,
    );
}
