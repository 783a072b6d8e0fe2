//! Growth profile of the flat-torus model: the pullback metric is the
//! Euclidean β, so Vol(B_t) = (π²/2)t⁴, the sphere integral is 2·(2π²)·t⁴,
//! and the growth test certifies subexponential growth.
//!
//! Run with: cargo run --release --example torus_growth

use growthlab::gallery::gallery;
use growthlab::growth::{
    check_condition_i, classify_condition_ii, finite_order_fit, geometric_grid, GrowthProfile,
    QuadratureSpec,
};

fn main() {
    let model = gallery("torus", 3).expect("gallery model");
    let quad = QuadratureSpec::GaussLegendreProduct {
        radial_order: 8,
        angular_order: 8,
    };

    println!("   t      Vol(B_t)     (π²/2)t⁴      sphere      2·2π²·t⁴");
    let small = geometric_grid(0.5, 2.0, 9).expect("grid");
    let short = GrowthProfile::compute(&model, &small, &quad, true).expect("profile");
    for (k, &t) in short.radii.iter().enumerate() {
        let v_expected = std::f64::consts::PI.powi(2) / 2.0 * t.powi(4);
        let s_expected = 4.0 * std::f64::consts::PI.powi(2) * t.powi(4);
        println!(
            "{t:6.3}  {:10.5}  {v_expected:10.5}  {:10.4}  {s_expected:10.4}",
            short.vol[k], short.sphere_ball[k]
        );
    }

    // Classification needs a long tail: the λ threshold is an absolute
    // slope of log F, and polynomial growth only drops below it for b ≫ 1.
    let radii = geometric_grid(0.5, 160.0, 80).expect("grid");
    let profile = GrowthProfile::compute(&model, &radii, &quad, false).expect("profile");
    profile.validate().expect("invariants");
    let cond_i = check_condition_i(&profile, 1.0).expect("condition (i)");
    let cond_ii = classify_condition_ii(&profile).expect("condition (ii)");
    let fit = finite_order_fit(&profile).expect("order fit");
    println!(
        "\ncondition (i): holds = {} (ratio_i = 8/t, slope {:+.3})",
        cond_i.holds, cond_i.trend_slope
    );
    println!(
        "condition (ii): {} (λ = {:.4})",
        cond_ii.classification.label(),
        cond_ii.lambda
    );
    println!(
        "finite order: {} (order ≈ {:.3})",
        fit.finite_order, fit.order
    );
}
