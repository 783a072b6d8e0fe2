//! CSV and JSON emission for growth profiles.
//!
//! Output is byte-reproducible for a fixed configuration: floats are
//! formatted with a fixed-precision scientific formatter and JSON field
//! order follows the struct declaration.

use serde::{Deserialize, Serialize};

use super::{
    Classification, ConditionI, ConditionII, FiniteOrderFit, GrowthProfile, QuadratureSpec,
};

/// CSV for a profile, header exactly `t,vol,sphere_ball,sphere_direct,ratio_i,F`.
/// The sphere_direct column is left empty when the direct route was not run.
pub fn profile_csv(profile: &GrowthProfile) -> String {
    let mut out = String::from("t,vol,sphere_ball,sphere_direct,ratio_i,F\n");
    for k in 0..profile.radii.len() {
        let direct = profile
            .sphere_direct
            .as_ref()
            .map(|d| fmt(d[k]))
            .unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            fmt(profile.radii[k]),
            fmt(profile.vol[k]),
            fmt(profile.sphere_ball[k]),
            direct,
            fmt(profile.ratio_i[k]),
            fmt(profile.f_cumulative[k]),
        ));
    }
    out
}

fn fmt(x: f64) -> String {
    format!("{x:.12e}")
}

/// Verdict strings are a closed enumeration so CI can grep them.
pub const VERDICT_WITNESS: &str = "not divisorially hyperbolic (witnessed by this map)";
pub const VERDICT_NO_OBSTRUCTION: &str = "no obstruction from this map (exponential growth)";
pub const VERDICT_NOT_CERTIFIED: &str = "not certified";

/// JSON report accompanying a profile run. The condition fields are null
/// when the grid's tail was too short for the corresponding regression; the
/// classification then degrades to "inconclusive".
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProfileReport {
    pub model: String,
    pub grid: GridEcho,
    pub r0: f64,
    pub c1: Option<f64>,
    pub classification: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rate: Option<f64>,
    pub condition_i: Option<ConditionI>,
    pub condition_ii_lambda: Option<f64>,
    pub condition_ii_holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_c: Option<f64>,
    pub finite_order: Option<FiniteOrderFit>,
    pub verdict: String,
    pub quadrature: QuadratureSpec,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridEcho {
    pub t_min: f64,
    pub t_max: f64,
    pub t_steps: usize,
    pub spacing: String,
}

/// Assemble the report from analysis results. The verdict is deliberately
/// one-sided: a profile that fails certification is reported "not
/// certified", never as a proof of hyperbolicity.
pub fn build_report(
    profile: &GrowthProfile,
    grid: GridEcho,
    r0: f64,
    cond_i: Option<&ConditionI>,
    cond_ii: Option<&ConditionII>,
    fit: Option<&FiniteOrderFit>,
    quad: &QuadratureSpec,
) -> ProfileReport {
    let (classification, rate) = match cond_ii.map(|c| &c.classification) {
        Some(Classification::Exponential { rate }) => ("exponential".to_string(), Some(*rate)),
        Some(Classification::Subexponential) => ("subexponential".to_string(), None),
        _ => ("inconclusive".to_string(), None),
    };
    let verdict = match (cond_ii.map(|c| &c.classification), cond_i.map(|c| c.holds)) {
        (Some(Classification::Subexponential), Some(true)) => VERDICT_WITNESS.to_string(),
        (Some(Classification::Exponential { .. }), _) => VERDICT_NO_OBSTRUCTION.to_string(),
        _ => VERDICT_NOT_CERTIFIED.to_string(),
    };
    ProfileReport {
        model: profile.model.clone(),
        grid,
        r0,
        c1: cond_i.map(|c| c.c1),
        classification,
        rate,
        condition_i: cond_i.cloned(),
        condition_ii_lambda: cond_ii.map(|c| c.lambda),
        condition_ii_holds: cond_ii.and_then(|c| c.holds),
        witness_c: cond_ii.and_then(|c| c.witness_c),
        finite_order: fit.cloned(),
        verdict,
        quadrature: quad.clone(),
        seed: quad.seed(),
    }
}
