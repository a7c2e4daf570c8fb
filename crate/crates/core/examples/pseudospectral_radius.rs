//! Pseudospectral radius of a rank-one nilpotent, where the closed form
//! sqrt(eps^2 + |X| eps) is known, and of a random normal matrix, where
//! the radius is the spectral radius plus eps.
//!
//! Run with: cargo run --release --example pseudospectral_radius

use pseudospectra::mat::{eigenvalues, random_matrix, random_rank_one_nilpotent, MatrixFamily};
use pseudospectra::pseudo::{radius_with, RadiusOpts};

fn main() {
    let eps = 0.5;
    let opts = RadiusOpts {
        n_rays: 64,
        tol: 1e-9,
        ..RadiusOpts::default()
    };

    let probe = random_rank_one_nilpotent(4, 7);
    let w = probe.weight();
    let r = radius_with(&probe.realize(), eps, &opts).unwrap();
    let closed_form = (eps * eps + w * eps).sqrt();
    println!("rank-one nilpotent, weight {w:.6}:");
    println!("  computed radius   {:.12}", r.value);
    println!("  closed form       {closed_form:.12}");
    println!("  difference        {:.3e}", (r.value - closed_form).abs());
    println!("  boundary residual {:.3e}  rays used {}", r.certificate_residual, r.rays_used);

    let a = random_matrix(4, 3, MatrixFamily::Normal);
    let rho = eigenvalues(&a)
        .unwrap()
        .eigenvalues
        .iter()
        .map(|l| l.norm())
        .fold(0.0, f64::max);
    let r = radius_with(&a, eps, &opts).unwrap();
    println!("\nrandom normal matrix:");
    println!("  computed radius  {:.12}", r.value);
    println!("  rho(A) + eps     {:.12}", rho + eps);
    println!("  argmax           {:.6} + {:.6}i", r.argmax.re, r.argmax.im);
}
