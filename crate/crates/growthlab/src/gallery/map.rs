//! Holomorphic map evaluators, numeric Jacobians and metric pullback.

use num_complex::Complex64;

use crate::form::{Definiteness, HermitianForm};
use crate::linalg::CMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeMode {
    Analytic,
    FiniteDifference,
}

type EvalFn = dyn Fn(&[Complex64]) -> Vec<Complex64> + Send + Sync;
type JacFn = dyn Fn(&[Complex64]) -> CMatrix + Send + Sync;

/// A holomorphic map z ∈ ℂ^m ↦ point in a coordinate chart ℂ^N (for matrix
/// groups, the flattened matrix entries).
pub struct HolomorphicMapSpec {
    pub domain_dim: usize,
    pub target_dim: usize,
    evaluator: Box<EvalFn>,
    analytic_jacobian: Option<Box<JacFn>>,
    pub mode: DerivativeMode,
}

impl HolomorphicMapSpec {
    pub fn finite_difference(domain_dim: usize, target_dim: usize, evaluator: Box<EvalFn>) -> Self {
        HolomorphicMapSpec {
            domain_dim,
            target_dim,
            evaluator,
            analytic_jacobian: None,
            mode: DerivativeMode::FiniteDifference,
        }
    }

    pub fn analytic(
        domain_dim: usize,
        target_dim: usize,
        evaluator: Box<EvalFn>,
        jacobian: Box<JacFn>,
    ) -> Self {
        HolomorphicMapSpec {
            domain_dim,
            target_dim,
            evaluator,
            analytic_jacobian: Some(jacobian),
            mode: DerivativeMode::Analytic,
        }
    }

    pub fn eval(&self, z: &[Complex64]) -> Vec<Complex64> {
        (self.evaluator)(z)
    }

    /// Largest |∂f_a/∂z̄_j| over the map components at `z`, estimated by
    /// finite differences. A genuinely holomorphic evaluator stays below
    /// 1e−7.
    pub fn cauchy_riemann_residual(&self, z: &[Complex64]) -> f64 {
        let norm: f64 = z.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        let h = 1e-5 * (1.0 + norm);
        let mut worst = 0.0f64;
        for j in 0..self.domain_dim {
            for a in 0..self.target_dim {
                let comp = |w: &[Complex64]| (self.evaluator)(w)[a];
                let (_, dbar) = wirtinger(&comp, z, j, h);
                worst = worst.max(dbar.norm());
            }
        }
        worst
    }
}

/// Fourth-order central difference of a scalar function along one real axis.
fn central4(f: impl Fn(f64) -> Complex64, h: f64) -> Complex64 {
    (8.0 * (f(h) - f(-h)) - (f(2.0 * h) - f(-2.0 * h))) / (12.0 * h)
}

/// Wirtinger derivatives (∂g/∂z_j, ∂g/∂z̄_j) of a complex-valued function by
/// fourth-order central differences with step `h` on each real coordinate.
pub(crate) fn wirtinger(
    g: &dyn Fn(&[Complex64]) -> Complex64,
    z: &[Complex64],
    j: usize,
    h: f64,
) -> (Complex64, Complex64) {
    let shift = |re: f64, im: f64| {
        let mut w = z.to_vec();
        w[j] += Complex64::new(re, im);
        w
    };
    let dx = central4(|t| g(&shift(t, 0.0)), h);
    let dy = central4(|t| g(&shift(0.0, t)), h);
    let i = Complex64::new(0.0, 1.0);
    ((dx - i * dy) / 2.0, (dx + i * dy) / 2.0)
}

/// Jacobian J[j][a] = ∂f_a/∂z_j as an m×N matrix. Analytic mode returns the
/// supplied derivative; finite-difference mode uses fourth-order central
/// differences with step 1e−5·(1+|z|).
pub fn numeric_jacobian(f: &HolomorphicMapSpec, z: &[Complex64]) -> CMatrix {
    if let (DerivativeMode::Analytic, Some(jac)) = (f.mode, f.analytic_jacobian.as_ref()) {
        return jac(z);
    }
    let norm: f64 = z.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    let h = 1e-5 * (1.0 + norm);
    let mut out = vec![vec![Complex64::new(0.0, 0.0); f.target_dim]; f.domain_dim];
    for j in 0..f.domain_dim {
        for a in 0..f.target_dim {
            let comp = |w: &[Complex64]| (f.evaluator)(w)[a];
            let (dz, _) = wirtinger(&comp, z, j, h);
            out[j][a] = dz;
        }
    }
    out
}

/// (f*ω)_{jk̄} = Σ_{a,b} ω_{ab̄} J_{ja} conj(J_{kb}), i.e. h_out = J·h·J^H.
///
/// The result is Hermitian positive semidefinite of rank at most
/// min(m, rank J).
pub fn pullback_metric(j: &CMatrix, omega_at_fz: &HermitianForm) -> HermitianForm {
    let m = j.len();
    let n = omega_at_fz.dim();
    let h = omega_at_fz.matrix();
    let out = HermitianForm::from_upper(m, |p, q| {
        let mut s = Complex64::new(0.0, 0.0);
        for a in 0..n {
            for b in 0..n {
                s += h[a][b] * j[p][a] * j[q][b].conj();
            }
        }
        s
    });
    out.with_definiteness(Definiteness::PositiveSemidefinite)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_map_jacobian() {
        let f = HolomorphicMapSpec::finite_difference(2, 2, Box::new(|z: &[Complex64]| z.to_vec()));
        let jac = numeric_jacobian(&f, &[c(0.3, 0.2), c(-1.0, 0.5)]);
        for j in 0..2 {
            for a in 0..2 {
                let want = if j == a { 1.0 } else { 0.0 };
                assert!((jac[j][a] - c(want, 0.0)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn polynomial_map_jacobian() {
        // f(z₁,z₂) = (z₁², z₂, 0) at (1,0): first row (2,0,0).
        let f = HolomorphicMapSpec::finite_difference(
            2,
            3,
            Box::new(|z: &[Complex64]| vec![z[0] * z[0], z[1], c(0.0, 0.0)]),
        );
        let jac = numeric_jacobian(&f, &[c(1.0, 0.0), c(0.0, 0.0)]);
        assert!((jac[0][0] - c(2.0, 0.0)).norm() < 1e-10);
        assert!(jac[0][1].norm() < 1e-10);
        assert!(jac[0][2].norm() < 1e-10);
        assert!((jac[1][1] - c(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn analytic_mode_returns_supplied_derivative() {
        let f = HolomorphicMapSpec::analytic(
            1,
            2,
            Box::new(|z: &[Complex64]| vec![z[0], z[0] * z[0]]),
            Box::new(|z: &[Complex64]| vec![vec![c(1.0, 0.0), 2.0 * z[0]]]),
        );
        let jac = numeric_jacobian(&f, &[c(0.5, -0.25)]);
        assert_eq!(jac[0][1], c(1.0, -0.5));
    }

    #[test]
    fn sl2c_jacobian_rows_at_origin() {
        // f_*(∂/∂z₁) is diag(1,−1) flattened; f_*(∂/∂z₂) is [[0,1],[0,0]].
        let spec = crate::gallery::sl2c_map_spec();
        let jac = numeric_jacobian(&spec, &[c(0.0, 0.0), c(0.0, 0.0)]);
        let expect_row0 = [1.0, 0.0, 0.0, -1.0];
        let expect_row1 = [0.0, 1.0, 0.0, 0.0];
        for a in 0..4 {
            assert!((jac[0][a] - c(expect_row0[a], 0.0)).norm() < 1e-10);
            assert!((jac[1][a] - c(expect_row1[a], 0.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn pullback_under_identity_is_identity() {
        let omega = HermitianForm::from_upper(2, |j, k| match (j, k) {
            (0, 0) => c(1.2, 0.0),
            (1, 1) => c(0.8, 0.0),
            (0, 1) => c(0.1, 0.4),
            _ => c(0.0, 0.0),
        });
        let id = crate::linalg::identity(2);
        let back = pullback_metric(&id, &omega);
        for j in 0..2 {
            for k in 0..2 {
                assert!((back.entry(j, k) - omega.entry(j, k)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn rank_one_jacobian_gives_degenerate_pullback() {
        let jac = vec![
            vec![c(1.0, 0.0), c(2.0, 0.0)],
            vec![c(0.5, 0.0), c(1.0, 0.0)],
        ];
        let h = pullback_metric(&jac, &HermitianForm::identity(2));
        assert!(h.det().norm() < 1e-12);
    }

    #[test]
    fn pullback_is_functorial() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let mut rmat = |r: usize, c_: usize| -> CMatrix {
            (0..r)
                .map(|_| {
                    (0..c_)
                        .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                        .collect()
                })
                .collect()
        };
        for _ in 0..20 {
            let j1 = rmat(3, 3); // inner map ℂ³→ℂ³
            let j2 = rmat(2, 3); // outer map ℂ²→ℂ³
            let hmat = rmat(3, 3);
            let h = HermitianForm::from_upper(3, |p, q| {
                let mut s = c(0.0, 0.0);
                for l in 0..3 {
                    s += hmat[p][l] * hmat[q][l].conj();
                }
                s
            });
            let step = pullback_metric(&j2, &pullback_metric(&j1, &h));
            let composed = pullback_metric(&crate::linalg::matmul(&j2, &j1), &h);
            for p in 0..2 {
                for q in 0..2 {
                    assert!((step.entry(p, q) - composed.entry(p, q)).norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn cauchy_riemann_residual_flags_nonholomorphic() {
        let holo = HolomorphicMapSpec::finite_difference(
            1,
            1,
            Box::new(|z: &[Complex64]| vec![z[0].exp()]),
        );
        assert!(holo.cauchy_riemann_residual(&[c(0.4, -0.2)]) < 1e-7);
        let anti = HolomorphicMapSpec::finite_difference(
            1,
            1,
            Box::new(|z: &[Complex64]| vec![z[0].conj()]),
        );
        assert!(anti.cauchy_riemann_residual(&[c(0.4, -0.2)]) > 0.5);
    }
}
