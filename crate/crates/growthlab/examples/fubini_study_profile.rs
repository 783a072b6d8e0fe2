//! Profile the Fubini–Study chart metric on ℂ² (ambient dimension 3). The
//! volume saturates (the chart has finite total volume), the sphere-to-ball
//! ratio climbs, and the growth test reports "not certified" for the
//! comparison condition while the subexponential condition holds.
//!
//! Run with: cargo run --release --example fubini_study_profile

use growthlab::gallery::gallery;
use growthlab::growth::{
    check_condition_i, classify_condition_ii, finite_order_fit, geometric_grid, GrowthProfile,
    QuadratureSpec,
};

fn main() {
    let model = gallery("fubini_study", 3).expect("gallery model");
    let quad = QuadratureSpec::GaussLegendreProduct {
        radial_order: 12,
        angular_order: 16,
    };

    // Small radii: the quartic regime of the volume.
    let small = geometric_grid(0.02, 0.08, 12).expect("grid");
    let p_small = GrowthProfile::compute(&model, &small, &quad, false).expect("profile");
    let fit = finite_order_fit(&p_small).expect("order fit");
    println!(
        "small radii [0.02, 0.08]: order = {:.3} (residual {:.5}) → finite order: {}",
        fit.order, fit.residual, fit.finite_order
    );

    // The window where the comparison condition is probed.
    let window = geometric_grid(2.0, 8.0, 24).expect("grid");
    let p_win = GrowthProfile::compute(&model, &window, &quad, false).expect("profile");
    p_win.validate().expect("invariants");
    let cond_i = check_condition_i(&p_win, 2.0).expect("condition (i)");
    println!(
        "ratio_i on [2, 8]: first {:.3}, last {:.3}; slope = {:+.3}, certified: {}",
        p_win.ratio_i[0],
        p_win.ratio_i.last().unwrap(),
        cond_i.trend_slope,
        cond_i.holds
    );
    // The analytic ratio is 4(1+t²)/t; print the comparison.
    for k in [0, p_win.radii.len() / 2, p_win.radii.len() - 1] {
        let t = p_win.radii[k];
        println!(
            "  t = {:5.2}: ratio_i = {:8.4}, closed form 4(1+t²)/t = {:8.4}",
            t,
            p_win.ratio_i[k],
            4.0 * (1.0 + t * t) / t
        );
    }

    // A long grid decides the subexponential condition.
    let long = geometric_grid(1.0, 40.0, 48).expect("grid");
    let p_long = GrowthProfile::compute(&model, &long, &quad, false).expect("profile");
    let cond_ii = classify_condition_ii(&p_long).expect("condition (ii)");
    println!(
        "condition (ii) on [1, 40]: {} (λ = {:.4}), holds = {:?}",
        cond_ii.classification.label(),
        cond_ii.lambda,
        cond_ii.holds
    );
    let order_full = finite_order_fit(&p_long).expect("fit");
    println!(
        "order fit on [1, 40]: {:.3} (the volume saturates near {:.4})",
        order_full.order,
        p_long.vol.last().unwrap()
    );
}
