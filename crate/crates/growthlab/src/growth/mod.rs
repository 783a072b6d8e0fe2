//! Growth profiling: ball-volume and sphere-integral series over a radius
//! grid, the cumulative growth function F, and numerical surrogates for the
//! two subexponential-growth conditions.
//!
//! The conditions themselves are existential/limsup statements, so the
//! classifier replaces them with tail regressions over fixed windows:
//!
//! * condition (i) — ∫_{S_t}|dτ| dσ ≤ C₁ t Vol(B_t) for t > r₀ — is
//!   certified when the log-log slope of ratio_i = sphere/(t·vol) over
//!   t ≥ r₀ stays ≤ 0.1 (a bounded-ratio heuristic);
//! * condition (ii) — limsup (b/C − log F(b)) = +∞ for every C — is decided
//!   from the tail slope λ of log F(b) against b: exponential when λ ≥ 0.2,
//!   subexponential when λ < 0.05 and log F(b)/b is decreasing, else
//!   inconclusive.
//!
//! Raw series are always reported so a human can overrule the thresholds.

mod integrate;
mod quad;
pub mod report;

use serde::{Deserialize, Serialize};

pub use integrate::{
    ball_sweep, sphere_direct, sphere_integral_ball, vol_ball, BallSweep, GrowthError, SphereDirect,
};
pub use quad::{
    angular_grid, ball_volume, gauss_legendre, pairwise_sum, shell_integrals, QuadError,
    QuadratureSpec,
};

use crate::gallery::PullbackModel;

/// Direct sphere integral ∫_{S_t}|dτ|_{f*ω} dσ; the independent oracle for
/// [`sphere_integral_ball`].
pub fn sphere_integral_direct(
    model: &PullbackModel,
    t: f64,
    quad: &QuadratureSpec,
) -> Result<f64, GrowthError> {
    Ok(sphere_direct(model, t, quad)?.weighted)
}

/// Growth classification decided from the tail of log F.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "classification", rename_all = "lowercase")]
pub enum Classification {
    Subexponential,
    Exponential { rate: f64 },
    Inconclusive,
}

impl Classification {
    pub fn label(&self) -> &'static str {
        match self {
            Classification::Subexponential => "subexponential",
            Classification::Exponential { .. } => "exponential",
            Classification::Inconclusive => "inconclusive",
        }
    }
}

/// Outcome of the condition (i) regression.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConditionI {
    pub holds: bool,
    /// Max of ratio_i over the tail t ≥ r₀ (the best constant observed).
    pub c1: f64,
    /// Least-squares slope of log ratio_i against log t on the tail.
    pub trend_slope: f64,
}

/// Outcome of the condition (ii) classification.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConditionII {
    pub classification: Classification,
    /// Tail slope of log F(b) against b.
    pub lambda: f64,
    pub holds: Option<bool>,
    /// For exponential profiles, a constant C > 1/λ witnessing the failure.
    pub witness_c: Option<f64>,
}

/// Sampled growth data of one model over a radius grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GrowthProfile {
    pub model: String,
    pub radii: Vec<f64>,
    pub vol: Vec<f64>,
    pub sphere_ball: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sphere_direct: Option<Vec<f64>>,
    /// A_{ω,f}(S_t) from the direct route, when computed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sphere_area: Option<Vec<f64>>,
    /// Cumulative F(b) = ∫₀^b Vol(B_t) dt on the same grid.
    pub f_cumulative: Vec<f64>,
    /// sphere_ball / (t · vol)
    pub ratio_i: Vec<f64>,
}

impl GrowthProfile {
    /// Run the quadrature sweep for a model over `radii` (sorted, positive)
    /// and assemble the profile. `with_direct` adds the direct sphere route
    /// (positive-definite models only).
    pub fn compute(
        model: &PullbackModel,
        radii: &[f64],
        quad: &QuadratureSpec,
        with_direct: bool,
    ) -> Result<GrowthProfile, GrowthError> {
        let sweep = ball_sweep(model, radii, quad)?;
        let (mut direct, mut area) = (None, None);
        if with_direct {
            let mut dv = Vec::with_capacity(radii.len());
            let mut av = Vec::with_capacity(radii.len());
            for &t in radii {
                let s = sphere_direct(model, t, quad)?;
                dv.push(s.weighted);
                av.push(s.area);
            }
            direct = Some(dv);
            area = Some(av);
        }
        let ratio: Vec<f64> = radii
            .iter()
            .zip(sweep.vol.iter().zip(&sweep.sphere_ball))
            .map(|(&t, (&v, &s))| s / (t * v).max(1e-300))
            .collect();
        let f = cumulative_f(radii, &sweep.vol)?;
        Ok(GrowthProfile {
            model: model.name().to_string(),
            radii: radii.to_vec(),
            vol: sweep.vol,
            sphere_ball: sweep.sphere_ball,
            sphere_direct: direct,
            sphere_area: area,
            f_cumulative: f,
            ratio_i: ratio,
        })
    }

    /// Enforce the profile invariants: nonnegative nondecreasing volumes,
    /// nondecreasing convex F, and (when the direct route is present) ≤ 1%
    /// relative deviation between the two sphere routes.
    pub fn validate(&self) -> Result<(), GrowthError> {
        for w in self.vol.windows(2) {
            if w[1] < w[0] * (1.0 - 1e-3) {
                return Err(GrowthError::Invariant(format!(
                    "vol not nondecreasing: {} then {}",
                    w[0], w[1]
                )));
            }
        }
        if self.vol.iter().any(|&v| v < 0.0) {
            return Err(GrowthError::Invariant("negative volume".into()));
        }
        // Exponential integrands overflow doubles for very large radii
        // (e^{2ρ} near t ≈ 350); report that instead of emitting infinities.
        if self
            .vol
            .iter()
            .chain(&self.sphere_ball)
            .chain(&self.f_cumulative)
            .any(|v| !v.is_finite())
        {
            return Err(GrowthError::Invariant(
                "non-finite integral value; reduce t_max (exponential-growth models \
                 are classified reliably well below the overflow range)"
                    .into(),
            ));
        }
        for w in self.f_cumulative.windows(2) {
            if w[1] < w[0] {
                return Err(GrowthError::Invariant("F not nondecreasing".into()));
            }
        }
        for k in 1..self.f_cumulative.len().saturating_sub(1) {
            let (f0, f1, f2) = (
                self.f_cumulative[k - 1],
                self.f_cumulative[k],
                self.f_cumulative[k + 1],
            );
            let (h0, h1) = (
                self.radii[k] - self.radii[k - 1],
                self.radii[k + 1] - self.radii[k],
            );
            // Convexity of F on a nonuniform grid via divided differences.
            let second = (f2 - f1) / h1 - (f1 - f0) / h0;
            if second < -1e-6 * f1.abs() {
                return Err(GrowthError::Invariant(format!(
                    "F not convex at t={}",
                    self.radii[k]
                )));
            }
        }
        if let Some(direct) = &self.sphere_direct {
            for ((d, b), t) in direct.iter().zip(&self.sphere_ball).zip(&self.radii) {
                if (d - b).abs() > 0.01 * b.abs().max(1e-12) {
                    return Err(GrowthError::Invariant(format!(
                        "sphere routes disagree at t={t}: direct {d} vs ball {b}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Trapezoidal cumulative integral of vol over the grid, seeded below the
/// first radius by a power-law extrapolation of vol.
pub fn cumulative_f(radii: &[f64], vol: &[f64]) -> Result<Vec<f64>, GrowthError> {
    if radii.len() != vol.len() || radii.is_empty() {
        return Err(GrowthError::Config(
            "mismatched grid and volume series".into(),
        ));
    }
    if radii[0] <= 0.0 || radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(GrowthError::Quad(QuadError::UnsortedGrid));
    }
    let mut f = Vec::with_capacity(radii.len());
    let seed = if radii.len() >= 2 && vol[0] > 0.0 && vol[1] > 0.0 {
        let p = (vol[1] / vol[0]).ln() / (radii[1] / radii[0]).ln();
        if p > -0.9 {
            vol[0] * radii[0] / (p + 1.0)
        } else {
            vol[0] * radii[0]
        }
    } else {
        vol[0] * radii[0]
    };
    f.push(seed);
    for k in 1..radii.len() {
        let df = (radii[k] - radii[k - 1]) * (vol[k] + vol[k - 1]) / 2.0;
        f.push(f[k - 1] + df);
    }
    Ok(f)
}

fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let mut ss = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        let r = y - (slope * x + intercept);
        ss += r * r;
    }
    (slope, intercept, (ss / n).sqrt())
}

/// Decide condition (i) on the tail t ≥ r₀ (needs at least 8 tail points).
pub fn check_condition_i(profile: &GrowthProfile, r0: f64) -> Result<ConditionI, GrowthError> {
    let tail: Vec<usize> = (0..profile.radii.len())
        .filter(|&k| profile.radii[k] >= r0)
        .collect();
    if tail.len() < 8 {
        return Err(GrowthError::InsufficientTail {
            needed: 8,
            found: tail.len(),
        });
    }
    let xs: Vec<f64> = tail.iter().map(|&k| profile.radii[k].ln()).collect();
    let ys: Vec<f64> = tail
        .iter()
        .map(|&k| profile.ratio_i[k].max(1e-300).ln())
        .collect();
    let (slope, _, _) = least_squares(&xs, &ys);
    let c1 = tail
        .iter()
        .map(|&k| profile.ratio_i[k])
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(ConditionI {
        holds: slope <= 0.1,
        c1,
        trend_slope: slope,
    })
}

/// Classify condition (ii) from the tail window [0.6·t_K, t_K] (needs at
/// least 6 points there).
pub fn classify_condition_ii(profile: &GrowthProfile) -> Result<ConditionII, GrowthError> {
    let t_max = *profile.radii.last().unwrap();
    let tail: Vec<usize> = (0..profile.radii.len())
        .filter(|&k| profile.radii[k] >= 0.6 * t_max)
        .collect();
    if tail.len() < 6 {
        return Err(GrowthError::InsufficientTail {
            needed: 6,
            found: tail.len(),
        });
    }
    let xs: Vec<f64> = tail.iter().map(|&k| profile.radii[k]).collect();
    let ys: Vec<f64> = tail
        .iter()
        .map(|&k| profile.f_cumulative[k].max(1e-300).ln())
        .collect();
    let (lambda, _, _) = least_squares(&xs, &ys);
    let decreasing = tail.windows(2).all(|w| {
        let a = profile.f_cumulative[w[0]].max(1e-300).ln() / profile.radii[w[0]];
        let b = profile.f_cumulative[w[1]].max(1e-300).ln() / profile.radii[w[1]];
        b <= a + 1e-12
    });
    let (classification, holds, witness) = if lambda >= 0.2 {
        // Any C > 1/λ witnesses the failure; report C = max(1, 2/λ).
        (
            Classification::Exponential { rate: lambda },
            Some(false),
            Some((2.0 / lambda).max(1.0)),
        )
    } else if lambda < 0.05 && decreasing {
        (Classification::Subexponential, Some(true), None)
    } else {
        (Classification::Inconclusive, None, None)
    };
    Ok(ConditionII {
        classification,
        lambda,
        holds,
        witness_c: witness,
    })
}

/// Log-log power-law fit of the volume series; finite order is declared when
/// the RMS residual stays within 0.05.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FiniteOrderFit {
    pub order: f64,
    pub residual: f64,
    pub finite_order: bool,
}

pub fn finite_order_fit(profile: &GrowthProfile) -> Result<FiniteOrderFit, GrowthError> {
    let t0 = profile.radii[0];
    let tk = *profile.radii.last().unwrap();
    if tk / t0 < 4.0 {
        return Err(GrowthError::Config(
            "finite-order fit needs t_K/t₁ ≥ 4".into(),
        ));
    }
    let xs: Vec<f64> = profile.radii.iter().map(|t| t.ln()).collect();
    let ys: Vec<f64> = profile.vol.iter().map(|v| v.max(1e-300).ln()).collect();
    let (order, _, residual) = least_squares(&xs, &ys);
    Ok(FiniteOrderFit {
        order,
        residual,
        finite_order: residual <= 0.05,
    })
}

/// Result of the chained comparison Vol(B_r) ≥ 2∫₀^r A²(S_t)/sphere(t)·t dt.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HoelderReport {
    /// Worst (most negative) relative margin (Vol − RHS)/Vol over the grid.
    pub worst_margin: f64,
    /// Margin per grid point.
    pub margins: Vec<f64>,
}

/// Verify the chained sphere-to-ball inequality on the grid; requires the
/// direct-route series (areas).
pub fn hoelder_chain_check(profile: &GrowthProfile) -> Result<HoelderReport, GrowthError> {
    let area = profile
        .sphere_area
        .as_ref()
        .ok_or_else(|| GrowthError::Config("direct sphere route not populated".into()))?;
    let sphere = profile
        .sphere_direct
        .as_ref()
        .unwrap_or(&profile.sphere_ball);
    // Integrand g(t) = A²(S_t)·t / sphere(t), accumulated by trapezoid with
    // a power-law seed below t₁ (mirrors cumulative_f).
    let g: Vec<f64> = (0..profile.radii.len())
        .map(|k| area[k] * area[k] * profile.radii[k] / sphere[k].max(1e-300))
        .collect();
    let rhs_seed = if g.len() >= 2 && g[0] > 0.0 && g[1] > 0.0 {
        let p = (g[1] / g[0]).ln() / (profile.radii[1] / profile.radii[0]).ln();
        if p > -0.9 {
            g[0] * profile.radii[0] / (p + 1.0)
        } else {
            g[0] * profile.radii[0]
        }
    } else {
        0.0
    };
    let mut rhs = rhs_seed;
    let mut margins = Vec::with_capacity(g.len());
    let mut worst = f64::INFINITY;
    for k in 0..g.len() {
        if k > 0 {
            rhs += (profile.radii[k] - profile.radii[k - 1]) * (g[k] + g[k - 1]) / 2.0;
        }
        let margin = (profile.vol[k] - 2.0 * rhs) / profile.vol[k].max(1e-300);
        worst = worst.min(margin);
        margins.push(margin);
    }
    Ok(HoelderReport {
        worst_margin: worst,
        margins,
    })
}

/// Geometric grid of `steps` radii from t_min to t_max inclusive.
pub fn geometric_grid(t_min: f64, t_max: f64, steps: usize) -> Result<Vec<f64>, GrowthError> {
    if t_min <= 0.0 || t_max <= t_min || steps < 2 {
        return Err(GrowthError::Config(
            "need 0 < t_min < t_max and at least 2 steps".into(),
        ));
    }
    let q = (t_max / t_min).powf(1.0 / (steps - 1) as f64);
    Ok((0..steps)
        .map(|k| {
            if k == steps - 1 {
                t_max
            } else {
                t_min * q.powi(k as i32)
            }
        })
        .collect())
}

/// Uniform grid of `steps` radii from t_min to t_max inclusive.
pub fn uniform_grid(t_min: f64, t_max: f64, steps: usize) -> Result<Vec<f64>, GrowthError> {
    if t_min <= 0.0 || t_max <= t_min || steps < 2 {
        return Err(GrowthError::Config(
            "need 0 < t_min < t_max and at least 2 steps".into(),
        ));
    }
    let h = (t_max - t_min) / (steps - 1) as f64;
    Ok((0..steps)
        .map(|k| {
            if k == steps - 1 {
                t_max
            } else {
                t_min + h * k as f64
            }
        })
        .collect())
}
