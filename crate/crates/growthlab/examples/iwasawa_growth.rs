//! The Iwasawa-quotient model: f*ω = i dz₁∧dz̄₁ + (1+|z₁|²) i dz₂∧dz̄₂ is a
//! degenerate-metric profile whose sphere integral equals exactly four ball
//! volumes at every radius. Both subexponential-growth conditions hold, so
//! the map witnesses that the target fails divisorial hyperbolicity.
//!
//! Run with: cargo run --release --example iwasawa_growth

use growthlab::gallery::gallery;
use growthlab::growth::{
    check_condition_i, classify_condition_ii, geometric_grid, hoelder_chain_check, GrowthProfile,
    QuadratureSpec,
};

fn main() {
    let pi2 = std::f64::consts::PI.powi(2);
    let model = gallery("iwasawa", 3).expect("gallery model");
    let quad = QuadratureSpec::GaussLegendreProduct {
        radial_order: 10,
        angular_order: 10,
    };

    let short_grid = geometric_grid(0.5, 3.0, 12).expect("grid");
    let short = GrowthProfile::compute(&model, &short_grid, &quad, true).expect("profile");
    println!("   t      Vol(B_t)     2π²t⁴+⅔π²t⁶    sphere/vol");
    for (k, &t) in short.radii.iter().enumerate() {
        let expected = 2.0 * pi2 * t.powi(4) + 2.0 * pi2 / 3.0 * t.powi(6);
        println!(
            "{t:6.3}  {:12.5}  {expected:12.5}   {:8.5}",
            short.vol[k],
            short.sphere_ball[k] / short.vol[k]
        );
    }
    let hoelder = hoelder_chain_check(&short).expect("chained inequality");
    println!(
        "chained sphere-to-ball inequality margin: {:+.4}",
        hoelder.worst_margin
    );

    let radii = geometric_grid(0.5, 200.0, 90).expect("grid");
    let profile = GrowthProfile::compute(&model, &radii, &quad, false).expect("profile");
    let cond_i = check_condition_i(&profile, 1.0).expect("condition (i)");
    let cond_ii = classify_condition_ii(&profile).expect("condition (ii)");
    println!(
        "\ncondition (i): holds = {} (C₁ = {:.3}); condition (ii): {} (λ = {:.4})",
        cond_i.holds,
        cond_i.c1,
        cond_ii.classification.label(),
        cond_ii.lambda
    );
    println!("→ subexponential growth: the quotient is not divisorially hyperbolic.");
}
