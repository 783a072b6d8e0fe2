//! Cone certificates: Gauduchon-power membership, Hermitian-symplectic
//! positivity, and the positive-representative search that places a P-image
//! in the Gauduchon cone. On degenerate-balanced algebras the search
//! certifies every closed class.
//!
//! Run with: cargo run --example gauduchon_certificates

use growthlab::form::Scalar;
use growthlab::lie::{
    abelian_algebra, build_complex, certify_gauduchon, dk_membership_search, hs_positivity_check,
    nullspace, sl2c_algebra, CertifyOutcome, GaussianRational, InvariantForm,
};

fn main() {
    let torus = build_complex(abelian_algebra(3)).expect("Jacobi");
    let omega = torus.algebra().standard_metric();
    let omega2 = omega.wedge(&omega).unwrap();

    match certify_gauduchon(&torus, &omega2).unwrap() {
        CertifyOutcome::Certified(cert) => {
            println!("torus ω²: certified as a Gauduchon power ({})", cert.notes);
        }
        CertifyOutcome::NotCertified { reason } => println!("torus ω²: {reason}"),
    }

    // A closed 2-form with (2,0)+(0,2) noise keeps its positivity
    // certificate for every admissible t.
    let sigma = InvariantForm::from_terms(3, [(0b011u32, 0u32, GaussianRational::from_ints(1, 0))]);
    for t in [1, 4] {
        let tilde = omega
            .add(&sigma.scale(&GaussianRational::from_ints(t, 0)))
            .add(&sigma.scale(&GaussianRational::from_ints(t, 0)).conj());
        match hs_positivity_check(&torus, &tilde).unwrap() {
            CertifyOutcome::Certified(_) => {
                println!("ω + {t}(σ+σ̄): positive power component, class certified");
            }
            CertifyOutcome::NotCertified { reason } => println!("t = {t}: {reason}"),
        }
    }

    // Pure (2,0)+(0,2) class: the power component is rank-deficient and the
    // torus family is rigid, so the honest verdict is "not certified".
    let pure = sigma.add(&sigma.conj());
    match dk_membership_search(&torus, &pure).unwrap().outcome {
        CertifyOutcome::NotCertified { reason } => println!("torus σ+σ̄: {reason}"),
        CertifyOutcome::Certified(_) => unreachable!("rank-1 power cannot be positive"),
    }

    // sl(2,ℂ) is degenerate balanced: every closed real invariant 2-form
    // certifies through the search.
    let sl2c = build_complex(sl2c_algebra()).expect("Jacobi");
    let d2 = sl2c.d_matrix_total(2);
    let basis = sl2c.total_degree_basis(2);
    let mut certified = 0;
    let mut total = 0;
    for vec in nullspace(&d2) {
        let mut w = InvariantForm::zero(3);
        for (&(i, j), c) in basis.iter().zip(&vec) {
            if !c.is_zero() {
                w.push_term(i, j, c.clone());
            }
        }
        let alpha = w.add(&w.conj());
        if alpha.is_zero() {
            continue;
        }
        total += 1;
        let search = dk_membership_search(&sl2c, &alpha).unwrap();
        if matches!(search.outcome, CertifyOutcome::Certified(_)) {
            certified += 1;
        }
        println!(
            "sl(2,ℂ) closed class #{total}: best λ_min = {:+.4e} after {} iterations",
            search.best_lambda, search.iterations
        );
    }
    println!("sl(2,ℂ): certified {certified}/{total} closed invariant classes");
}
