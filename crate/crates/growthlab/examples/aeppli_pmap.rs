//! The degree-2 Aeppli-class map P({α}) = {(α^{n−1})^{n−1,n−1}}_A on
//! invariant complexes: representative independence, sign cancellation for
//! even powers, and the invariant Bott-Chern/Aeppli dimension table.
//!
//! Run with: cargo run --example aeppli_pmap

use growthlab::form::Scalar;
use growthlab::lie::{
    abelian_algebra, build_complex, cohomology_dims, heisenberg_algebra, nullspace, p_map,
    sl2c_algebra, GaussianRational, InvariantForm,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    for (name, algebra) in [
        ("torus", abelian_algebra(3)),
        ("Heisenberg", heisenberg_algebra()),
        ("sl(2,C)", sl2c_algebra()),
    ] {
        let complex = build_complex(algebra).expect("Jacobi holds");
        print!("{name:>10}: invariant dims (p,q) → (BC, Aeppli):");
        for (p, q) in [(1, 1), (2, 2)] {
            let d = cohomology_dims(&complex, p, q);
            print!("  ({p},{q}) → ({}, {})", d.bc, d.aeppli);
        }
        println!();

        // Representative independence: P(α + dβ) = P(α), exactly.
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let d2 = complex.d_matrix_total(2);
        let basis = complex.total_degree_basis(2);
        let kernel = nullspace(&d2);
        let mut w = InvariantForm::zero(3);
        for vec in &kernel {
            let c = GaussianRational::from_ints(rng.random_range(-2..=2), 0);
            for (&(i, j), coeff) in basis.iter().zip(vec) {
                if !coeff.is_zero() {
                    w.push_term(i, j, coeff.mul(&c));
                }
            }
        }
        let alpha = w.add(&w.conj());
        let mut beta = InvariantForm::zero(3);
        for j in 0..3 {
            beta.push_term(
                1 << j,
                0,
                GaussianRational::from_ints(rng.random_range(-2..=2), 1),
            );
        }
        let beta = beta.add(&beta.conj());
        let shifted = alpha.add(&complex.algebra().d(&beta));
        let p1 = p_map(&complex, &alpha).expect("closed");
        let p2 = p_map(&complex, &shifted).expect("closed");
        println!(
            "            P(α) = P(α + dβ): {}; P(−α) = P(α): {}; class zero: {}",
            p1 == p2,
            p_map(&complex, &alpha.neg()).expect("closed") == p1,
            p1.is_zero()
        );
    }
}
