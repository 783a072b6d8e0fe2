//! Product constructions: the direct sum of two degenerate-balanced factors
//! carries an explicit exact potential for ω^{N−1} from the binomial
//! expansion, while pairing with a Kähler torus factor is provably
//! obstructed on the invariant complex.
//!
//! Run with: cargo run --example product_witness

use growthlab::form::Scalar;
use growthlab::lie::{
    abelian_algebra, build_complex, sl2c_algebra, FactorData, GaussianRational, InvariantForm,
    ProductOutcome,
};

fn sl2c_factor() -> FactorData {
    let complex = build_complex(sl2c_algebra()).expect("Jacobi");
    let alg = complex.algebra();
    let half = GaussianRational::from_fraction(1, 2, 0, 1);
    let mut theta = InvariantForm::zero(3);
    for k in 0..3 {
        let xi = InvariantForm::from_terms(3, [(1u32 << k, 0u32, GaussianRational::one())]);
        let xibar = InvariantForm::from_terms(3, [(0u32, 1u32 << k, GaussianRational::one())]);
        theta = theta.add(&xi.wedge(&alg.d(&xibar)).unwrap());
    }
    FactorData {
        algebra: sl2c_algebra(),
        omega: alg.standard_metric(),
        theta: Some(theta.scale(&half)),
        top_witness: None,
    }
}

fn main() {
    // Two degenerate-balanced factors: exact potential for ω⁵ on the
    // 6-dimensional direct sum.
    match growthlab::lie::product_witness(&sl2c_factor(), &sl2c_factor()).unwrap() {
        ProductOutcome::Certificate {
            algebra,
            certificate,
        } => {
            println!(
                "sl(2,ℂ) × sl(2,ℂ): dim {} sum algebra, potential with {} monomials, \
                 d(potential) = ω⁵ exactly: {}",
                algebra.dim(),
                certificate.witness[0].terms().count(),
                algebra.d(&certificate.witness[0]) == certificate.claim
            );
        }
        ProductOutcome::Infeasible { .. } => unreachable!("both factors carry witnesses"),
    }

    // Kähler torus factor: the ω₁³∧ω₂ term has no exact-potential route on
    // the invariant complex (the top invariant class of the first factor is
    // nonzero), and the fallback solve proves it.
    let ab = abelian_algebra(2);
    let kaehler = FactorData {
        algebra: ab.clone(),
        omega: ab.standard_metric(),
        theta: None,
        top_witness: None,
    };
    match growthlab::lie::product_witness(&sl2c_factor(), &kaehler).unwrap() {
        ProductOutcome::Infeasible {
            rank,
            rank_augmented,
            missing,
            ..
        } => {
            println!("sl(2,ℂ) × flat torus: infeasible (rank {rank} < augmented {rank_augmented})");
            for m in missing {
                println!("  missing route: {m}");
            }
            println!("  (the product is balanced hyperbolic through non-invariant data only)");
        }
        ProductOutcome::Certificate { .. } => unreachable!("the top class obstructs exactness"),
    }

    // Two tori: nothing is exact at all.
    let t1 = FactorData {
        algebra: ab.clone(),
        omega: ab.standard_metric(),
        theta: None,
        top_witness: None,
    };
    let t2 = FactorData {
        algebra: ab.clone(),
        omega: ab.standard_metric(),
        theta: None,
        top_witness: None,
    };
    match growthlab::lie::product_witness(&t1, &t2).unwrap() {
        ProductOutcome::Infeasible { rank, .. } => {
            println!("torus × torus: infeasible as expected (d has rank {rank})");
        }
        ProductOutcome::Certificate { .. } => unreachable!(),
    }
}
