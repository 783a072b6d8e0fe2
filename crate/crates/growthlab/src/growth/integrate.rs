//! Ball volumes and sphere integrals of a pullback model.
//!
//! The sphere integral ∫_{S_t} |dτ|_{f*ω} dσ has two computation routes:
//!
//! * the ball route — 2 ∫_{B_t} Λ_{f*ω}(i∂∂̄τ) f*ω_m − ∫_{B_t} i(∂̄τ−∂τ) ∧ d(f*ω_{m−1}),
//!   which only needs the metric and its lower-power derivative on the ball;
//! * the direct route — quadrature of |dτ|_{f*ω} dσ over the sphere itself,
//!   using the Hodge star and covector norm pointwise.
//!
//! The two must agree on positive-definite models to within quadrature
//! accuracy; the direct route doubles as the independent oracle for the ball
//! route and also yields the area series A_{ω,f}(S_t).

use num_complex::Complex64;
use thiserror::Error;

use super::quad::{self, QuadError, QuadratureSpec};
use crate::form::{covector_norm, hodge_star, top_density, ExteriorForm, FormError};
use crate::gallery::PullbackModel;

#[derive(Debug, Error)]
pub enum GrowthError {
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("model `{0}` is not flagged positive definite on spheres; the direct route needs a nondegenerate metric")]
    NotPositiveDefiniteOnSphere(String),
    #[error("metric degenerate at a quadrature node (model `{0}`)")]
    DegenerateAtNode(String),
    #[error("grid invariant violated: {0}")]
    Invariant(String),
    #[error("need at least {needed} tail points, found {found}")]
    InsufficientTail { needed: usize, found: usize },
    #[error("{0}")]
    Config(String),
}

/// Per-shell values of (vol, Λ-term, d-term) integrands.
pub struct BallSweep {
    /// Cumulative ∫_{B_t} f*ω_m for each grid radius.
    pub vol: Vec<f64>,
    /// Cumulative 2∫ Λ(i∂∂̄τ) f*ω_m − ∫ i(∂̄τ−∂τ)∧d(f*ω_{m−1}).
    pub sphere_ball: Vec<f64>,
}

fn vol_density(model: &PullbackModel, z: &[Complex64]) -> Result<f64, GrowthError> {
    Ok(model.metric_at(z).volume_density())
}

/// Evaluate all ball integrands at z: [vol, λ·vol, d-term].
///
/// The volume density and the trace use the closed forms 2^m·det(h) and
/// tr(h⁻¹); both identities against the exterior-algebra route are pinned
/// by property tests in `tests/growth_checks.rs`.
fn ball_point(model: &PullbackModel, z: &[Complex64]) -> Result<[f64; 3], GrowthError> {
    let g = model.metric_at(z);
    let vol = g.volume_density();
    let lam = g
        .trace_inverse()
        .ok_or_else(|| GrowthError::DegenerateAtNode(model.name().into()))?;
    let lam_term = lam * vol;
    let dterm = if model.metric_closed() {
        0.0
    } else {
        // i(∂̄τ − ∂τ) = Σ_j (−i z̄_j) dz_j + (i z_j) dz̄_j
        let i = Complex64::new(0.0, 1.0);
        let one_form = ExteriorForm::from_terms(
            z.len(),
            z.iter()
                .enumerate()
                .flat_map(|(j, zj)| [(1u32 << j, 0u32, -i * zj.conj()), (0u32, 1u32 << j, i * zj)]),
        );
        let wedge = one_form.wedge(&model.d_lower_power_at(z))?;
        top_density(&wedge)?.value
    };
    Ok([vol, lam_term, dterm])
}

/// Sweep the ball integrands over the whole grid of radii in one pass.
pub fn ball_sweep(
    model: &PullbackModel,
    radii: &[f64],
    quad: &QuadratureSpec,
) -> Result<BallSweep, GrowthError> {
    let m = model.domain_dim();
    let mut failure: Option<GrowthError> = None;
    let shells = quad::shell_integrals(m, radii, quad, 3, &mut |z| match ball_point(model, z) {
        Ok(v) => v.to_vec(),
        Err(e) => {
            if failure.is_none() {
                failure = Some(e);
            }
            vec![0.0, 0.0, 0.0]
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let mut vol = Vec::with_capacity(radii.len());
    let mut sphere = Vec::with_capacity(radii.len());
    let (mut v_acc, mut l_acc, mut d_acc) = (0.0, 0.0, 0.0);
    for sh in shells {
        v_acc += sh[0];
        l_acc += sh[1];
        d_acc += sh[2];
        vol.push(v_acc);
        sphere.push(2.0 * l_acc - d_acc);
    }
    Ok(BallSweep {
        vol,
        sphere_ball: sphere,
    })
}

/// (ω,f)-volume of the ball B_t: ∫_{B_t} f*ω_m as a Lebesgue integral of
/// the top density.
pub fn vol_ball(model: &PullbackModel, t: f64, quad: &QuadratureSpec) -> Result<f64, GrowthError> {
    if t <= 0.0 {
        return Err(GrowthError::Config("radius must be positive".into()));
    }
    let m = model.domain_dim();
    let mut failure: Option<GrowthError> = None;
    let shells = quad::shell_integrals(m, &[t], quad, 1, &mut |z| match vol_density(model, z) {
        Ok(v) => vec![v],
        Err(e) => {
            if failure.is_none() {
                failure = Some(e);
            }
            vec![0.0]
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(shells[0][0])
}

/// Sphere integral ∫_{S_t} |dτ|_{f*ω} dσ via the two ball integrals.
pub fn sphere_integral_ball(
    model: &PullbackModel,
    t: f64,
    quad: &QuadratureSpec,
) -> Result<f64, GrowthError> {
    if t <= 0.0 {
        return Err(GrowthError::Config("radius must be positive".into()));
    }
    Ok(ball_sweep(model, &[t], quad)?.sphere_ball[0])
}

/// Values of the direct sphere quadrature at one radius.
pub struct SphereDirect {
    /// ∫_{S_t} |dτ|_{f*ω} dσ
    pub weighted: f64,
    /// A_{ω,f}(S_t) = ∫_{S_t} dσ
    pub area: f64,
}

/// Direct quadrature over S_t of |dτ|_{f*ω}·dσ (and of dσ itself), using
/// the Hodge star and covector norm pointwise. Requires a model that is
/// positive definite on spheres.
pub fn sphere_direct(
    model: &PullbackModel,
    t: f64,
    quad: &QuadratureSpec,
) -> Result<SphereDirect, GrowthError> {
    if !model.pd_everywhere() {
        return Err(GrowthError::NotPositiveDefiniteOnSphere(
            model.name().into(),
        ));
    }
    quad.validate()?;
    let m = model.domain_dim();
    let d = 2 * m;
    let angular_order = match quad {
        QuadratureSpec::GaussLegendreProduct { angular_order, .. } => *angular_order,
        // The sphere is (2m−1)-dimensional; reuse the angular product grid
        // at a resolution that mirrors the MC budget loosely.
        QuadratureSpec::MonteCarlo { .. } => 24,
    };
    let grid = angular_grid_with_angles(m, angular_order);
    let mut weighted = Vec::with_capacity(grid.len());
    let mut area = Vec::with_capacity(grid.len());
    for (angles, w) in &grid {
        let (dir, _) = direction_from_angles(d, angles);
        let z: Vec<Complex64> = (0..m)
            .map(|j| Complex64::new(t * dir[2 * j], t * dir[2 * j + 1]))
            .collect();
        let g = model.metric_at(&z);
        let dtau = ExteriorForm::d_tau(&z);
        let norm = covector_norm(&dtau, &g)
            .map_err(|_| GrowthError::DegenerateAtNode(model.name().into()))?;
        let star_dtau = hodge_star(&dtau, &g)
            .map_err(|_| GrowthError::DegenerateAtNode(model.name().into()))?;
        // Pull the (2m−1)-form back along the parametrization of S_t.
        let jac = quad::sphere_jacobian(m, t, angles);
        let coeff = pullback_top_coefficient(&star_dtau, &jac);
        weighted.push(coeff * w);
        area.push(coeff / norm.max(1e-300) * w);
    }
    Ok(SphereDirect {
        weighted: quad::pairwise_sum(&weighted),
        area: quad::pairwise_sum(&area),
    })
}

/// Angular grid that also reports the angle tuple (needed to evaluate the
/// embedding Jacobian).
fn angular_grid_with_angles(m: usize, angular_order: usize) -> Vec<(Vec<f64>, f64)> {
    let d = 2 * m;
    let capped = angular_order.min(16);
    let mut rules: Vec<Vec<(f64, f64)>> = Vec::new();
    for l in 1..=(d - 2) {
        let order = if l == 1 { angular_order } else { capped };
        let (xs, ws) = quad::gauss_legendre(order);
        rules.push(
            xs.iter()
                .zip(&ws)
                .map(|(&x, &w)| {
                    (
                        0.5 * std::f64::consts::PI * (x + 1.0),
                        0.5 * std::f64::consts::PI * w,
                    )
                })
                .collect(),
        );
    }
    let azim: Vec<(f64, f64)> = (0..capped)
        .map(|k| {
            (
                2.0 * std::f64::consts::PI * k as f64 / capped as f64,
                2.0 * std::f64::consts::PI / capped as f64,
            )
        })
        .collect();
    let mut out = Vec::new();
    let mut angles = vec![0.0; d - 1];
    fn rec(
        level: usize,
        d: usize,
        rules: &[Vec<(f64, f64)>],
        azim: &[(f64, f64)],
        angles: &mut Vec<f64>,
        w: f64,
        out: &mut Vec<(Vec<f64>, f64)>,
    ) {
        if level < d - 2 {
            for &(theta, wl) in &rules[level] {
                angles[level] = theta;
                rec(level + 1, d, rules, azim, angles, w * wl, out);
            }
        } else {
            for &(phi, wl) in azim {
                angles[d - 2] = phi;
                out.push((angles.clone(), w * wl));
            }
        }
    }
    rec(0, d, &rules, &azim, &mut angles, 1.0, &mut out);
    out
}

fn direction_from_angles(d: usize, angles: &[f64]) -> (Vec<f64>, f64) {
    let mut dir = vec![0.0; d];
    let mut sin_prod = 1.0;
    for i in 0..d - 1 {
        dir[i] = sin_prod * angles[i].cos();
        sin_prod *= angles[i].sin();
    }
    dir[d - 1] = sin_prod;
    (dir, sin_prod)
}

/// Coefficient of dθ₁∧…∧dθ_{2m−1} in the pullback of a (2m−1)-form along
/// the sphere parametrization with embedding Jacobian `jac`.
fn pullback_top_coefficient(form: &ExteriorForm, jac: &[Vec<f64>]) -> f64 {
    let m = form.dim();
    let d = 2 * m;
    // Convert dz_I ∧ dz̄_J to real-coordinate monomials dx_S, then contract
    // each with the Jacobian minor det(jac[rows ∈ S]).
    let mut real: std::collections::HashMap<u32, Complex64> = Default::default();
    for (i, j, c) in form.terms() {
        // dz_j = dx_{2j} + i·dx_{2j+1}; dz̄_j = dx_{2j} − i·dx_{2j+1}.
        let mut factors: Vec<[(u32, Complex64); 2]> = Vec::new();
        let mut hol = i;
        while hol != 0 {
            let a = hol.trailing_zeros();
            hol &= hol - 1;
            factors.push([
                (1 << (2 * a), Complex64::new(1.0, 0.0)),
                (1 << (2 * a + 1), Complex64::new(0.0, 1.0)),
            ]);
        }
        let mut anti = j;
        while anti != 0 {
            let a = anti.trailing_zeros();
            anti &= anti - 1;
            factors.push([
                (1 << (2 * a), Complex64::new(1.0, 0.0)),
                (1 << (2 * a + 1), Complex64::new(0.0, -1.0)),
            ]);
        }
        let mut acc: Vec<(u32, Complex64)> = vec![(0, *c)];
        for f in &factors {
            let mut next = Vec::with_capacity(acc.len() * 2);
            for &(mask, cc) in &acc {
                for &(bit, fc) in f {
                    if mask & bit != 0 {
                        continue;
                    }
                    let sign = if crate::form::merge_parity(mask, bit) {
                        -1.0
                    } else {
                        1.0
                    };
                    next.push((mask | bit, cc * fc * sign));
                }
            }
            acc = next;
        }
        for (mask, cc) in acc {
            *real.entry(mask).or_insert(Complex64::new(0.0, 0.0)) += cc;
        }
    }
    let mut total = Complex64::new(0.0, 0.0);
    for (mask, c) in real {
        if c.norm() < 1e-300 {
            continue;
        }
        let rows: Vec<usize> = (0..d).filter(|b| mask & (1 << b) != 0).collect();
        let mut minor: Vec<Vec<f64>> = rows.iter().map(|&r| jac[r].clone()).collect();
        total += c * quad::real_det(&mut minor);
    }
    debug_assert!(total.im.abs() < 1e-8 * (1.0 + total.re.abs()));
    total.re
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::gallery;

    fn gl(radial: usize, angular: usize) -> QuadratureSpec {
        QuadratureSpec::GaussLegendreProduct {
            radial_order: radial,
            angular_order: angular,
        }
    }

    #[test]
    fn torus_ball_volume_matches_euclidean() {
        // Vol_β(B_t) = V₄ t⁴ = (π²/2) t⁴.
        let model = gallery("torus", 3).unwrap();
        let v = vol_ball(&model, 1.0, &gl(8, 8)).unwrap();
        let expected = std::f64::consts::PI.powi(2) / 2.0;
        assert!((v - expected).abs() < 5e-3 * expected, "{v} vs {expected}");
    }

    #[test]
    fn iwasawa_ball_volume_matches_radial_oracle() {
        // ∫_{B_r} 4(1+|z₁|²) dLeb = 2π²r⁴ + (2π²/3) r⁶.
        let model = gallery("iwasawa", 3).unwrap();
        for r in [0.5, 1.0, 2.0, 3.0] {
            let v = vol_ball(&model, r, &gl(10, 10)).unwrap();
            let pi2 = std::f64::consts::PI.powi(2);
            let expected = 2.0 * pi2 * r.powi(4) + 2.0 * pi2 / 3.0 * r.powi(6);
            assert!(
                (v - expected).abs() < 5e-3 * expected,
                "r={r}: {v} vs {expected}"
            );
        }
    }

    #[test]
    fn torus_sphere_integral_both_routes() {
        // ∫_{S_t}|dτ|_β dσ_β = 2·A₃·t⁴ with A₃ = 2π².
        let model = gallery("torus", 3).unwrap();
        let t: f64 = 1.3;
        let expected = 2.0 * 2.0 * std::f64::consts::PI.powi(2) * t.powi(4);
        let ball = sphere_integral_ball(&model, t, &gl(10, 10)).unwrap();
        assert!(
            (ball - expected).abs() < 1e-2 * expected,
            "ball {ball} vs {expected}"
        );
        let direct = sphere_direct(&model, t, &gl(10, 10)).unwrap();
        assert!(
            (direct.weighted - expected).abs() < 1e-2 * expected,
            "direct {} vs {expected}",
            direct.weighted
        );
        // A_{β}(S_t) = 2π² t³.
        let area_expected = 2.0 * std::f64::consts::PI.powi(2) * t.powi(3);
        assert!((direct.area - area_expected).abs() < 1e-2 * area_expected);
    }

    #[test]
    fn iwasawa_sphere_equals_four_volumes() {
        let model = gallery("iwasawa", 3).unwrap();
        let quad = gl(10, 10);
        for t in [0.7, 1.5, 2.5] {
            let v = vol_ball(&model, t, &quad).unwrap();
            let s = sphere_integral_ball(&model, t, &quad).unwrap();
            assert!(
                (s - 4.0 * v).abs() < 1e-3 * (4.0 * v),
                "t={t}: {s} vs {}",
                4.0 * v
            );
        }
    }

    #[test]
    fn direct_route_rejects_degenerate_models() {
        let dead = crate::gallery::PullbackModel::new(
            "rank1",
            2,
            3,
            Box::new(|_z| {
                crate::form::HermitianForm::from_upper(2, |j, k| {
                    Complex64::new(if j == 0 && k == 0 { 1.0 } else { 0.0 }, 0.0)
                })
            }),
            None,
            true,
            false,
            "degenerate test model",
        );
        assert!(matches!(
            sphere_direct(&dead, 1.0, &gl(8, 8)),
            Err(GrowthError::NotPositiveDefiniteOnSphere(_))
        ));
    }
}
