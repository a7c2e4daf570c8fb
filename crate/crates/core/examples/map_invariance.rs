//! Verify that canonical maps A -> mu_A U tau(A) U* + nu_A I preserve
//! commutator functionals: the pseudospectral radius for every tau, and
//! the full sampled pseudospectrum for the sign-flip family. A map that
//! flips the sign on the wrong set is caught.
//!
//! Run with: cargo run --release --example map_invariance

use pseudospectra::mat::{random_unitary, CMatrix, Complex64};
use pseudospectra::preserve::{
    verify_lie_invariance, verify_sigma_invariance, CanonicalMap, ExceptionalAction,
    ExceptionalSet, InvarianceOpts, RadialFunction, ScalarRule, SigmaOpts, Tau,
};

fn main() {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let f = RadialFunction::pseudo_radius(0.5);

    println!("pseudospectral radius invariance, random per-matrix scalars:");
    for tau in [Tau::Identity, Tau::Conjugate, Tau::Transpose, Tau::Adjoint] {
        let m = CanonicalMap {
            u: random_unitary(3, 2),
            tau,
            scalar_rule: ScalarRule::RandomPerMatrix { seed: 17 },
            exceptional: ExceptionalSet::Never,
            action: ExceptionalAction::NegateMu,
        };
        let report = verify_lie_invariance(
            &m,
            &f,
            &InvarianceOpts {
                n_pairs: 8,
                tol: 1e-6,
                ..InvarianceOpts::default()
            },
        )
        .unwrap();
        println!(
            "  tau = {:<10} passed = {:<5} max deviation = {:.3e}",
            tau.name(),
            report.passed,
            report.max_deviation
        );
    }

    println!("\nsampled pseudospectrum invariance, sign flip on two-eigenvalue normals:");
    for tau in [Tau::Identity, Tau::ITranspose] {
        let m = CanonicalMap {
            u: random_unitary(3, 9),
            tau,
            scalar_rule: ScalarRule::Constant { mu: one, nu: zero },
            exceptional: ExceptionalSet::TwoEigNormal { tol: 1e-10 },
            action: ExceptionalAction::NegateMu,
        };
        let report = verify_sigma_invariance(&m, 0.5, &SigmaOpts::default()).unwrap();
        println!("  tau = {:<10} passed = {}", tau.name(), report.passed);
    }

    // negative control: flip the sign on one specific matrix with three
    // distinct eigenvalues; its commutators reveal the flip
    let target = CMatrix::diag(&[Complex64::new(2.0, 0.0), one, -one]);
    let s2 = 2.0_f64.sqrt();
    let witness = CMatrix::from_real_rows(&[&[0.0, -s2, s2], &[0.0, -1.0, 1.0], &[0.0, -1.0, 1.0]]);
    let bad = CanonicalMap {
        u: CMatrix::identity(3),
        tau: Tau::Identity,
        scalar_rule: ScalarRule::Constant { mu: one, nu: zero },
        exceptional: ExceptionalSet::NearMatrix {
            target: target.clone(),
            tol: 1e-10,
        },
        action: ExceptionalAction::NegateMu,
    };
    let report = verify_sigma_invariance(
        &bad,
        1.0,
        &SigmaOpts {
            include_pairs: vec![(target, witness)],
            n_pairs: 3,
            ..SigmaOpts::default()
        },
    )
    .unwrap();
    println!(
        "\nnegative control (flip on diag(2,1,-1)): passed = {} (expected false, caught at pair {:?})",
        report.passed, report.first_failure
    );
}
