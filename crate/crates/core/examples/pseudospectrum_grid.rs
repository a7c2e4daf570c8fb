//! Sample the pseudospectrum of a commutator on a grid and render a small
//! ASCII portrait (# inside, . outside).
//!
//! Run with: cargo run --release --example pseudospectrum_grid

use pseudospectra::mat::{commutator, eigenvalues, random_matrix, MatrixFamily};
use pseudospectra::pseudo::{grid, GridSpec};
use pseudospectra::Complex64;

fn main() {
    let a = random_matrix(4, 11, MatrixFamily::Dense);
    let b = random_matrix(4, 12, MatrixFamily::Dense);
    let c = commutator(&a, &b).unwrap();

    let eps = 0.4;
    let rho = eigenvalues(&c)
        .unwrap()
        .eigenvalues
        .iter()
        .map(|l| l.norm())
        .fold(0.0, f64::max);
    let half_width = rho + 2.0 * eps;
    let resolution = 41;
    let spec = GridSpec::new(Complex64::new(0.0, 0.0), half_width, resolution).unwrap();
    let sample = grid(&c, eps, &spec).unwrap();

    println!(
        "sigma_{eps}([A,B]) on [{:+.2}, {:+.2}]^2, {resolution}x{resolution} cells:",
        -half_width, half_width
    );
    // rows printed top-down: highest imaginary part first
    for iy in (0..resolution).rev() {
        let row: String = (0..resolution)
            .map(|ix| {
                if sample.membership[iy * resolution + ix] {
                    '#'
                } else {
                    '.'
                }
            })
            .collect();
        println!("  {row}");
    }
    let inside = sample.membership.iter().filter(|&&m| m).count();
    println!("{inside} of {} grid points inside", resolution * resolution);
    println!("(the pspec binary emits the same data as CSV: re,im,smin,member)");
}
