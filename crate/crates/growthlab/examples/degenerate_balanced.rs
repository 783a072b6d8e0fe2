//! Exact structure equations and the degenerate-balanced witness of
//! SL(2,ℂ): ω² = ½ d(α∧dᾱ + β∧dβ̄ + γ∧dγ̄), verified with residual exactly
//! zero, against the torus and Heisenberg algebras where the same solve is
//! provably infeasible.
//!
//! Run with: cargo run --example degenerate_balanced

use growthlab::form::Scalar;
use growthlab::lie::{
    abelian_algebra, build_complex, degenerate_balanced_witness, exact_power_witness,
    heisenberg_algebra, sl2c_algebra, structure_equation_strings, GaussianRational, InvariantForm,
    WitnessOutcome,
};

fn main() {
    let complex = build_complex(sl2c_algebra()).expect("Jacobi holds");
    println!("structure equations:");
    for eq in structure_equation_strings(complex.algebra()) {
        println!("  {eq}");
    }

    let omega = complex.algebra().standard_metric();
    match degenerate_balanced_witness(&complex, &omega).expect("solver") {
        WitnessOutcome::Certificate(cert) => {
            println!(
                "\nω² is d-exact: certificate verifies = {}",
                cert.verify(&complex)
            );
            // Compare with the published potential ½ Σ ξ^k ∧ dξ̄^k.
            let half = GaussianRational::from_fraction(1, 2, 0, 1);
            let mut published = InvariantForm::zero(3);
            for k in 0..3 {
                let xi = InvariantForm::from_terms(3, [(1u32 << k, 0u32, GaussianRational::one())]);
                let xibar =
                    InvariantForm::from_terms(3, [(0u32, 1u32 << k, GaussianRational::one())]);
                published = published.add(&xi.wedge(&complex.algebra().d(&xibar)).unwrap());
            }
            published = published.scale(&half);
            let diff = cert.witness[0].sub(&published);
            println!(
                "solver Γ equals ½·Σ ξ^k∧dξ̄^k up to ker d: d(difference) = 0 is {}",
                complex.algebra().d(&diff).is_zero()
            );
        }
        WitnessOutcome::Infeasible { .. } => unreachable!("sl(2,ℂ) is degenerate balanced"),
    }

    // The power lemma with β = Γ: dΓ = ω², so the witness Γ∧ω² has
    // d(Γ∧ω²) = ω⁴ = 0 (top degree), exactly.
    let half = GaussianRational::from_fraction(1, 2, 0, 1);
    let mut gamma = InvariantForm::zero(3);
    for k in 0..3 {
        let xi = InvariantForm::from_terms(3, [(1u32 << k, 0u32, GaussianRational::one())]);
        let xibar = InvariantForm::from_terms(3, [(0u32, 1u32 << k, GaussianRational::one())]);
        gamma = gamma.add(&xi.wedge(&complex.algebra().d(&xibar)).unwrap());
    }
    gamma = gamma.scale(&half);
    let (witness, power) = exact_power_witness(&complex, &gamma, 2).expect("witness");
    println!(
        "power lemma at p = 2: witness Γ∧ω² has {} monomials, d(witness) = ω⁴ = 0: {}",
        witness.terms().count(),
        power.is_zero()
    );

    for (name, algebra) in [
        ("torus (abelian)", abelian_algebra(3)),
        ("Heisenberg", heisenberg_algebra()),
    ] {
        let c = build_complex(algebra).expect("Jacobi holds");
        let omega = c.algebra().standard_metric();
        match degenerate_balanced_witness(&c, &omega).expect("solver") {
            WitnessOutcome::Infeasible {
                rank,
                rank_augmented,
            } => {
                println!(
                    "{name}: infeasible (rank {rank} vs augmented {rank_augmented}) — \
                     balanced but not degenerate balanced"
                );
            }
            WitnessOutcome::Certificate(_) => unreachable!("{name} has no exact ω²"),
        }
    }
}
