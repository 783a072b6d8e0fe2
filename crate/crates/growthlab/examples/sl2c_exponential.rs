//! Profile the SL(2,ℂ) pullback metric and watch exponential volume growth
//! defeat the subexponential-growth test: the tail slope of log F(b) hugs 2,
//! far above anything a finite-order map could produce.
//!
//! Run with: cargo run --release --example sl2c_exponential

use growthlab::gallery::gallery;
use growthlab::growth::{
    check_condition_i, classify_condition_ii, finite_order_fit, geometric_grid, GrowthProfile,
    QuadratureSpec,
};

fn main() {
    let model = gallery("sl2c", 3).expect("gallery model");
    let radii = geometric_grid(0.25, 12.0, 48).expect("grid");
    let quad = QuadratureSpec::GaussLegendreProduct {
        radial_order: 12,
        angular_order: 48,
    };

    println!("sweeping {} radii up to t = 12 …", radii.len());
    let profile = GrowthProfile::compute(&model, &radii, &quad, false).expect("profile");
    profile.validate().expect("profile invariants");

    println!("\n    t        Vol(B_t)        F(t)         ratio_i");
    for k in (0..radii.len()).step_by(4) {
        println!(
            "{:8.3}  {:14.6e}  {:12.6e}  {:10.4}",
            profile.radii[k], profile.vol[k], profile.f_cumulative[k], profile.ratio_i[k]
        );
    }

    let cond_i = check_condition_i(&profile, 1.0).expect("condition (i)");
    let cond_ii = classify_condition_ii(&profile).expect("condition (ii)");
    let fit = finite_order_fit(&profile).expect("order fit");

    println!(
        "\ncondition (i): holds = {}, C₁ = {:.3}, trend slope = {:+.3}",
        cond_i.holds, cond_i.c1, cond_i.trend_slope
    );
    println!(
        "condition (ii): {} (λ = {:.4}), holds = {:?}, witness C = {:?}",
        cond_ii.classification.label(),
        cond_ii.lambda,
        cond_ii.holds,
        cond_ii.witness_c
    );
    println!(
        "finite-order fit: order = {:.3}, residual = {:.4} → finite order: {}",
        fit.order, fit.residual, fit.finite_order
    );

    // Tail slope measured on b ∈ [6, 12] only.
    let tail: Vec<usize> = (0..profile.radii.len())
        .filter(|&k| profile.radii[k] >= 6.0)
        .collect();
    let xs: Vec<f64> = tail.iter().map(|&k| profile.radii[k]).collect();
    let ys: Vec<f64> = tail.iter().map(|&k| profile.f_cumulative[k].ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    println!("tail slope of log F on [6, 12]: {:.4}", sxy / sxx);
}
