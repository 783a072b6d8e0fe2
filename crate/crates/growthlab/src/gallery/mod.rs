//! Gallery of holomorphic maps ℂ^{n−1} → X represented through closed-form
//! pullback metrics f*ω.
//!
//! Every entry carries the coefficient matrix of f*ω at a point of the
//! domain, and — when f*ω is not closed — an evaluator for d(f*ω_{m−1}),
//! the exterior derivative of the (m−1)-st wedge power over (m−1)!. Ambient
//! left-invariant metrics are never materialised: each model stores the final
//! pullback formula, with the Maurer–Cartan and numeric-Jacobian paths (see
//! [`map`] and [`sl2c`]) serving as independent cross-checks.

mod map;
mod sl2c;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::form::{Definiteness, ExteriorForm, FormError, HermitianForm};

pub use map::{numeric_jacobian, pullback_metric, DerivativeMode, HolomorphicMapSpec};
pub use sl2c::{maurer_cartan_pullback, sl2c_jacobian_pullback, sl2c_map_spec};

#[derive(Debug, Error)]
pub enum GalleryError {
    #[error("unknown model name `{0}`")]
    UnknownModel(String),
    #[error("invalid ambient dimension n={n} for model `{model}`")]
    InvalidDimension { model: String, n: usize },
    #[error(transparent)]
    Form(#[from] FormError),
}

type MetricFn = dyn Fn(&[Complex64]) -> HermitianForm + Send + Sync;
type DerivFn = dyn Fn(&[Complex64]) -> ExteriorForm + Send + Sync;

/// A gallery entry: dimension data plus evaluators for the pullback metric
/// and (where needed) its lower-power exterior derivative.
pub struct PullbackModel {
    name: String,
    domain_dim: usize,
    ambient_dim: usize,
    metric_at: Box<MetricFn>,
    d_lower_power_at: Option<Box<DerivFn>>,
    metric_closed: bool,
    pd_everywhere: bool,
    reference_notes: String,
}

impl PullbackModel {
    /// Construct a model. When `d_lower_power_at` is absent the metric must
    /// be declared closed, so the derivative term of the sphere-integral
    /// formula vanishes.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        domain_dim: usize,
        ambient_dim: usize,
        metric_at: Box<MetricFn>,
        d_lower_power_at: Option<Box<DerivFn>>,
        metric_closed: bool,
        pd_everywhere: bool,
        reference_notes: impl Into<String>,
    ) -> Self {
        assert!(
            d_lower_power_at.is_some() || metric_closed,
            "a model without a derivative evaluator must declare f*ω closed"
        );
        PullbackModel {
            name: name.into(),
            domain_dim,
            ambient_dim,
            metric_at,
            d_lower_power_at,
            metric_closed,
            pd_everywhere,
            reference_notes: reference_notes.into(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Domain dimension m = n − 1.
    pub fn domain_dim(&self) -> usize {
        self.domain_dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn pd_everywhere(&self) -> bool {
        self.pd_everywhere
    }

    pub fn metric_closed(&self) -> bool {
        self.metric_closed
    }

    pub fn reference_notes(&self) -> &str {
        &self.reference_notes
    }

    /// The matrix of f*ω at z.
    pub fn metric_at(&self, z: &[Complex64]) -> HermitianForm {
        debug_assert_eq!(z.len(), self.domain_dim);
        (self.metric_at)(z)
    }

    /// d(f*ω_{m−1}) at z, a (2m−1)-form; the zero form for closed metrics.
    pub fn d_lower_power_at(&self, z: &[Complex64]) -> ExteriorForm {
        match &self.d_lower_power_at {
            Some(f) => f(z),
            None => ExteriorForm::zero(self.domain_dim),
        }
    }

    /// Same model with the metric evaluator scaled by a constant factor.
    /// Used to probe that growth classification is metric-scale invariant.
    pub fn scaled(self, factor: f64) -> PullbackModel {
        let m = self.domain_dim;
        let metric = self.metric_at;
        let deriv = self.d_lower_power_at;
        let scale_pow = Complex64::new(factor.powi(m as i32 - 1), 0.0);
        PullbackModel {
            name: self.name,
            domain_dim: self.domain_dim,
            ambient_dim: self.ambient_dim,
            metric_at: Box::new(move |z| metric(z).scale(factor)),
            d_lower_power_at: deriv.map(|f| {
                let g: Box<DerivFn> = Box::new(move |z: &[Complex64]| f(z).scale(&scale_pow));
                g
            }),
            metric_closed: self.metric_closed,
            pd_everywhere: self.pd_everywhere,
            reference_notes: self.reference_notes,
        }
    }
}

/// Closed-form pullback metrics for the model manifolds.
///
/// `n` is the ambient complex dimension; it is fixed at 3 for the Iwasawa,
/// Nakamura and SL(2,ℂ) entries and free (≥ 2) for `torus` and
/// `fubini_study`.
pub fn gallery(name: &str, n: usize) -> Result<PullbackModel, GalleryError> {
    let m = n.saturating_sub(1);
    match name {
        "torus" => {
            if n < 2 {
                return Err(GalleryError::InvalidDimension {
                    model: name.into(),
                    n,
                });
            }
            Ok(PullbackModel::new(
                "torus",
                m,
                n,
                Box::new(move |_z| HermitianForm::euclidean(m)),
                None,
                true,
                true,
                "f*ω = β, the Euclidean metric ½ Σ i dz_j∧dz̄_j of ℂ^{n−1} \
                 (inclusion of a coordinate hyperplane into a flat torus)",
            ))
        }
        "nakamura" => {
            if n != 3 {
                return Err(GalleryError::InvalidDimension {
                    model: name.into(),
                    n,
                });
            }
            Ok(PullbackModel::new(
                "nakamura",
                2,
                3,
                Box::new(|_z| HermitianForm::identity(2)),
                None,
                true,
                true,
                "f*ω₀ = i dz₂∧dz̄₂ + i dz₃∧dz̄₃ under (z₂,z₃) ↦ (0,z₂,z₃) into the \
                 solvable non-nilpotent group quotient with metric i Σ η_a∧η̄_a",
            ))
        }
        "iwasawa" => {
            if n != 3 {
                return Err(GalleryError::InvalidDimension {
                    model: name.into(),
                    n,
                });
            }
            let metric = |z: &[Complex64]| {
                let t = 1.0 + z[0].norm_sqr();
                HermitianForm::from_upper(2, |j, k| match (j, k) {
                    (0, 0) => Complex64::new(1.0, 0.0),
                    (1, 1) => Complex64::new(t, 0.0),
                    _ => Complex64::new(0.0, 0.0),
                })
                .with_definiteness(Definiteness::PositiveDefinite)
            };
            // m = 2, so f*ω_{m−1} = f*ω and
            // d(f*ω) = (∂|z₁|² + ∂̄|z₁|²) ∧ i dz₂∧dz̄₂.
            let deriv = |z: &[Complex64]| {
                let one_form =
                    ExteriorForm::from_terms(2, [(1u32, 0u32, z[0].conj()), (0u32, 1u32, z[0])]);
                let i_dz2_dzb2 =
                    ExteriorForm::from_terms(2, [(2u32, 2u32, Complex64::new(0.0, 1.0))]);
                one_form.wedge(&i_dz2_dzb2).expect("same dimension")
            };
            Ok(PullbackModel::new(
                "iwasawa",
                2,
                3,
                Box::new(metric),
                Some(Box::new(deriv)),
                false,
                true,
                "f*ω₀ = i dz₁∧dz̄₁ + (1+|z₁|²) i dz₂∧dz̄₂ under (z₁,z₂) ↦ (z₁,z₂,0) \
                 into the Heisenberg group quotient",
            ))
        }
        "sl2c" => {
            if n != 3 {
                return Err(GalleryError::InvalidDimension {
                    model: name.into(),
                    n,
                });
            }
            Ok(PullbackModel::new(
                "sl2c",
                2,
                3,
                Box::new(sl2c::sl2c_metric),
                Some(Box::new(sl2c::sl2c_d_metric)),
                false,
                true,
                "f*ω = (|z₂|²e^{−2Re z₁}+2) i dz₁∧dz̄₁ + e^{−2Re z₁} i dz₂∧dz̄₂ \
                 + z₂e^{−2Re z₁} i dz₁∧dz̄₂ + z̄₂e^{−2Re z₁} i dz₂∧dz̄₁, the pullback \
                 of the standard left-invariant metric under \
                 (z₁,z₂) ↦ [[e^{z₁}, z₂],[0, e^{−z₁}]]",
            ))
        }
        "fubini_study" => {
            if n < 2 {
                return Err(GalleryError::InvalidDimension {
                    model: name.into(),
                    n,
                });
            }
            let metric = move |z: &[Complex64]| {
                let c = 1.0 + z.iter().map(|v| v.norm_sqr()).sum::<f64>();
                let c2 = c * c;
                HermitianForm::from_upper(m, |j, k| {
                    let kron = if j == k { c } else { 0.0 };
                    (Complex64::new(kron, 0.0) - z[j].conj() * z[k]) / c2
                })
                .with_definiteness(Definiteness::PositiveDefinite)
            };
            Ok(PullbackModel::new(
                "fubini_study",
                m,
                n,
                Box::new(metric),
                None,
                true,
                true,
                "j*ω_FS = (1/(1+|z|²)) i∂∂̄|z|² − (1/(1+|z|²)²) i∂|z|²∧∂̄|z|² \
                 in the chart z ↦ [1:z:0] of projective space",
            ))
        }
        other => Err(GalleryError::UnknownModel(other.into())),
    }
}

/// Outcome of sampling the metric's eigenvalues over a ball.
#[derive(Debug, Clone)]
pub struct PsdReport {
    pub samples: usize,
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
    /// Count of samples with an eigenvalue below −1e−10 (a model bug).
    pub violations: usize,
}

/// Min-eigenvalue statistics of `metric_at` over uniform random samples in
/// the ball of the given radius.
pub fn psd_probe(model: &PullbackModel, sample_count: usize, radius: f64, seed: u64) -> PsdReport {
    assert!(sample_count > 0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = model.domain_dim();
    let mut min_eig = f64::INFINITY;
    let mut max_eig = f64::NEG_INFINITY;
    let mut violations = 0;
    for _ in 0..sample_count {
        let z = sample_in_ball(&mut rng, m, radius);
        let eig = model.metric_at(&z).eigenvalues();
        let lo = eig[0];
        let hi = *eig.last().unwrap();
        if lo < -1e-10 {
            violations += 1;
        }
        min_eig = min_eig.min(lo);
        max_eig = max_eig.max(hi);
    }
    PsdReport {
        samples: sample_count,
        min_eigenvalue: min_eig,
        max_eigenvalue: max_eig,
        violations,
    }
}

/// Uniform sample from the ball of radius `r` in ℂ^m ≅ ℝ^{2m}.
pub fn sample_in_ball(rng: &mut ChaCha8Rng, m: usize, r: f64) -> Vec<Complex64> {
    // Gaussian direction, radius from the 2m-th root of a uniform variate.
    let mut dir = Vec::with_capacity(2 * m);
    while dir.len() < 2 * m {
        // Box–Muller
        let u1: f64 = rng.random::<f64>().max(1e-12);
        let u2: f64 = rng.random();
        let r0 = (-2.0 * u1.ln()).sqrt();
        dir.push(r0 * (2.0 * std::f64::consts::PI * u2).cos());
        dir.push(r0 * (2.0 * std::f64::consts::PI * u2).sin());
    }
    let norm = dir.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-300);
    let radius = r * rng.random::<f64>().powf(1.0 / (2.0 * m as f64));
    (0..m)
        .map(|j| Complex64::new(dir[2 * j], dir[2 * j + 1]) * (radius / norm))
        .collect()
}

/// Fourth-order finite-difference exterior derivative of a form-valued map,
/// used to cross-check the analytic `d_lower_power_at` evaluators.
pub fn numeric_exterior_derivative(
    f: &dyn Fn(&[Complex64]) -> ExteriorForm,
    z: &[Complex64],
) -> ExteriorForm {
    let m = z.len();
    let norm: f64 = z.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    let h = 1e-5 * (1.0 + norm);
    let sample = f(z);
    let mut out = ExteriorForm::zero(m);
    for (i, j, _) in sample.terms() {
        let mono = |w: &[Complex64]| f(w).coefficient(i, j);
        for l in 0..m {
            let (dz_coeff, dzbar_coeff) = map::wirtinger(&mono, z, l, h);
            let dz = ExteriorForm::from_terms(m, [(1u32 << l, 0u32, dz_coeff)]);
            let dzb = ExteriorForm::from_terms(m, [(0u32, 1u32 << l, dzbar_coeff)]);
            let base = ExteriorForm::from_terms(m, [(i, j, Complex64::new(1.0, 0.0))]);
            out = out.add(&dz.wedge(&base).expect("same dimension"));
            out = out.add(&dzb.wedge(&base).expect("same dimension"));
        }
    }
    out.prune(1e-9)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gallery_matrices_match_published_values() {
        // sl2c at the origin: diag(2, 1).
        let m = gallery("sl2c", 3).unwrap();
        let h = m.metric_at(&[c(0.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(h.entry(0, 0), c(2.0, 0.0));
        assert_eq!(h.entry(1, 1), c(1.0, 0.0));
        assert_eq!(h.entry(0, 1), c(0.0, 0.0));

        // iwasawa at |z₁|² = 3: diag(1, 4).
        let m = gallery("iwasawa", 3).unwrap();
        let h = m.metric_at(&[c(3f64.sqrt(), 0.0), c(0.7, -0.3)]);
        assert!((h.entry(1, 1) - c(4.0, 0.0)).norm() < 1e-12);
        assert_eq!(h.entry(0, 0), c(1.0, 0.0));

        // fubini_study (n = 3) at 0: identity.
        let m = gallery("fubini_study", 3).unwrap();
        let h = m.metric_at(&[c(0.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(h.entry(0, 0), c(1.0, 0.0));
        assert_eq!(h.entry(1, 1), c(1.0, 0.0));
        assert_eq!(h.entry(0, 1), c(0.0, 0.0));
    }

    #[test]
    fn unknown_model_is_an_error() {
        assert!(matches!(
            gallery("klein", 3),
            Err(GalleryError::UnknownModel(_))
        ));
        assert!(matches!(
            gallery("iwasawa", 4),
            Err(GalleryError::InvalidDimension { .. })
        ));
    }

    #[test]
    fn psd_probe_reports_published_floors() {
        let torus = gallery("torus", 3).unwrap();
        let rep = psd_probe(&torus, 200, 2.0, 1);
        assert!((rep.min_eigenvalue - 0.5).abs() < 1e-12);
        assert_eq!(rep.violations, 0);

        let iwasawa = gallery("iwasawa", 3).unwrap();
        let rep = psd_probe(&iwasawa, 200, 2.0, 2);
        assert!((rep.min_eigenvalue - 1.0).abs() < 1e-9);
        assert_eq!(rep.violations, 0);

        let sl2c = gallery("sl2c", 3).unwrap();
        let rep = psd_probe(&sl2c, 200, 2.0, 3);
        assert!(rep.min_eigenvalue > 0.0);
        assert_eq!(rep.violations, 0);
    }

    #[test]
    fn metric_is_exactly_hermitian() {
        let sl2c = gallery("sl2c", 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let z = sample_in_ball(&mut rng, 2, 2.0);
            let h = sl2c.metric_at(&z);
            for j in 0..2 {
                for k in 0..2 {
                    assert_eq!(h.entry(j, k), h.entry(k, j).conj());
                }
            }
        }
    }

    #[test]
    fn analytic_derivatives_match_numeric_d() {
        for name in ["iwasawa", "sl2c"] {
            let model = gallery(name, 3).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(17);
            let metric_form = |z: &[Complex64]| model.metric_at(z).to_form();
            for _ in 0..20 {
                let z = sample_in_ball(&mut rng, 2, 1.5);
                let analytic = model.d_lower_power_at(&z);
                let numeric = numeric_exterior_derivative(&metric_form, &z);
                assert!(
                    analytic.distance(&numeric) < 1e-7 * (1.0 + analytic.max_abs()),
                    "{name}: {:e}",
                    analytic.distance(&numeric)
                );
            }
        }
    }

    #[test]
    fn closed_models_have_zero_numeric_d() {
        for (name, n) in [("torus", 3), ("nakamura", 3), ("fubini_study", 3)] {
            let model = gallery(name, n).unwrap();
            let metric_form = |z: &[Complex64]| model.metric_at(z).to_form();
            let mut rng = ChaCha8Rng::seed_from_u64(19);
            for _ in 0..10 {
                let z = sample_in_ball(&mut rng, model.domain_dim(), 1.5);
                let numeric = numeric_exterior_derivative(&metric_form, &z);
                assert!(numeric.max_abs() < 1e-7, "{name}: {:e}", numeric.max_abs());
                assert!(model.d_lower_power_at(&z).is_zero());
            }
        }
    }
}

#[cfg(test)]
mod concurrency_tests {
    use super::*;

    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn models_are_shareable_across_threads() {
        assert_send_sync::<PullbackModel>();
        assert_send_sync::<HermitianForm>();
        assert_send_sync::<ExteriorForm>();
    }
}
