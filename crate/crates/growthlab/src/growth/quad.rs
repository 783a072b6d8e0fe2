//! Quadrature machinery: Gauss–Legendre product rules in spherical
//! coordinates on ℝ^{2m}, stratified Monte Carlo, and deterministic
//! summation.
//!
//! Spherical coordinates follow the convention x₁ = ρcosθ₁,
//! y₁ = ρsinθ₁cosθ₂, x₂ = ρsinθ₁sinθ₂cosθ₃, y₂ = ρsinθ₁sinθ₂sinθ₃ (and its
//! obvious extension for m > 2), with volume Jacobian ρ^{2m−1} ∏ sin^{2m−1−l}θ_l.
//!
//! The polar angle θ₁ receives the full `angular_order`; the remaining
//! angles are capped at 16 nodes. The anisotropy of the gallery's pullback
//! metrics (exponential factors in Re z₁) lives in the (ρ, θ₁) plane, while
//! the later angles only enter through low-degree trigonometric polynomials
//! of the |z_j|², which 16 Gauss nodes integrate exactly. The final,
//! periodic angle uses a uniform rule of the same capped size.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum QuadError {
    #[error("invalid quadrature spec: {0}")]
    InvalidSpec(String),
    #[error("radii must be positive and strictly increasing")]
    UnsortedGrid,
}

/// Quadrature method and resolution for ball and sphere integrals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum QuadratureSpec {
    /// Product rule: `radial_order` Gauss–Legendre nodes per radial shell,
    /// `angular_order` nodes on the polar angle (capped at 16 on the rest).
    GaussLegendreProduct {
        radial_order: usize,
        angular_order: usize,
    },
    /// Stratified Monte Carlo with `sample_count` points overall and a fixed
    /// seed; deterministic for a given (spec, grid) pair.
    MonteCarlo { sample_count: usize, seed: u64 },
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<(), QuadError> {
        match self {
            QuadratureSpec::GaussLegendreProduct {
                radial_order,
                angular_order,
            } => {
                if *radial_order < 4 || *angular_order < 4 {
                    return Err(QuadError::InvalidSpec(format!(
                        "Gauss–Legendre orders must be ≥ 4 (got radial {radial_order}, angular {angular_order})"
                    )));
                }
                Ok(())
            }
            QuadratureSpec::MonteCarlo { sample_count, .. } => {
                if *sample_count < 10_000 {
                    return Err(QuadError::InvalidSpec(format!(
                        "Monte Carlo needs at least 10⁴ samples (got {sample_count})"
                    )));
                }
                Ok(())
            }
        }
    }

    pub fn seed(&self) -> u64 {
        match self {
            QuadratureSpec::MonteCarlo { seed, .. } => *seed,
            _ => 0,
        }
    }
}

/// Pairwise summation: deterministic and accurate independent of length.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    match v.len() {
        0 => 0.0,
        1 => v[0],
        2 => v[0] + v[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
        }
    }
}

/// Gauss–Legendre nodes and weights on [−1, 1] by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Chebyshev-like initial guess.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let pk = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = pk;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn scaled_gl(n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let (xs, ws) = gauss_legendre(n);
    xs.iter()
        .zip(&ws)
        .map(|(&x, &w)| (0.5 * (b - a) * x + 0.5 * (a + b), 0.5 * (b - a) * w))
        .collect()
}

/// One point of the angular grid: a unit direction and its weight, which
/// already contains the sin-power Jacobian factors (but not ρ^{2m−1}).
#[derive(Debug, Clone)]
pub struct AngularPoint {
    pub direction: Vec<f64>,
    pub weight: f64,
}

/// Product angular grid on S^{2m−1} as described in the module docs.
pub fn angular_grid(m: usize, angular_order: usize) -> Vec<AngularPoint> {
    let d = 2 * m;
    let capped = angular_order.min(16);
    // Angles θ_1..θ_{d−2} on [0,π] (θ₁ at full order), θ_{d−1} uniform on [0,2π).
    let mut polar_rules: Vec<Vec<(f64, f64)>> = Vec::new();
    for l in 1..=(d - 2) {
        let order = if l == 1 { angular_order } else { capped };
        polar_rules.push(scaled_gl(order, 0.0, std::f64::consts::PI));
    }
    let n_azim = capped;
    let azim: Vec<(f64, f64)> = (0..n_azim)
        .map(|k| {
            (
                2.0 * std::f64::consts::PI * k as f64 / n_azim as f64,
                2.0 * std::f64::consts::PI / n_azim as f64,
            )
        })
        .collect();

    let mut grid = Vec::new();
    let mut angles = vec![0.0f64; d - 1];
    // Iterative cartesian product over the polar angles, then the azimuth.
    fn recurse(
        level: usize,
        d: usize,
        polar_rules: &[Vec<(f64, f64)>],
        azim: &[(f64, f64)],
        angles: &mut Vec<f64>,
        weight: f64,
        grid: &mut Vec<AngularPoint>,
    ) {
        if level < d - 2 {
            for &(theta, w) in &polar_rules[level] {
                angles[level] = theta;
                // sin^{d−1−(level+1)}θ Jacobian factor for this angle.
                let sin_pow = theta.sin().powi((d - 2 - level) as i32);
                recurse(
                    level + 1,
                    d,
                    polar_rules,
                    azim,
                    angles,
                    weight * w * sin_pow,
                    grid,
                );
            }
        } else {
            for &(phi, w) in azim {
                angles[d - 2] = phi;
                let mut dir = vec![0.0; d];
                let mut sin_prod = 1.0;
                for i in 0..d - 1 {
                    dir[i] = sin_prod * angles[i].cos();
                    sin_prod *= angles[i].sin();
                }
                dir[d - 1] = sin_prod;
                grid.push(AngularPoint {
                    direction: dir,
                    weight: weight * w,
                });
            }
        }
    }
    recurse(0, d, &polar_rules, &azim, &mut angles, 1.0, &mut grid);
    grid
}

/// Convert a real direction vector in ℝ^{2m} scaled by ρ to a point of ℂ^m.
pub fn to_complex(dir: &[f64], rho: f64) -> Vec<Complex64> {
    dir.chunks(2)
        .map(|xy| Complex64::new(rho * xy[0], rho * xy[1]))
        .collect()
}

/// Integrate a batch of scalar integrands over the shells between
/// consecutive radii (the first shell starts at 0), returning per-shell
/// integrals for each integrand.
///
/// `eval` maps a point z to the values of all integrands at z.
pub fn shell_integrals(
    m: usize,
    radii: &[f64],
    quad: &QuadratureSpec,
    n_integrands: usize,
    eval: &mut dyn FnMut(&[Complex64]) -> Vec<f64>,
) -> Result<Vec<Vec<f64>>, QuadError> {
    quad.validate()?;
    if radii.is_empty() || radii[0] <= 0.0 || radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(QuadError::UnsortedGrid);
    }
    let d = 2 * m;
    match quad {
        QuadratureSpec::GaussLegendreProduct {
            radial_order,
            angular_order,
        } => {
            let grid = angular_grid(m, *angular_order);
            let mut out = vec![vec![0.0; n_integrands]; radii.len()];
            let mut lo = 0.0;
            for (k, &hi) in radii.iter().enumerate() {
                let radial = scaled_gl(*radial_order, lo, hi);
                let mut per_radial: Vec<Vec<f64>> =
                    vec![Vec::with_capacity(radial.len()); n_integrands];
                for &(rho, w_rho) in &radial {
                    let mut per_angle: Vec<Vec<f64>> =
                        vec![Vec::with_capacity(grid.len()); n_integrands];
                    for pt in &grid {
                        let z = to_complex(&pt.direction, rho);
                        let vals = eval(&z);
                        for (slot, v) in vals.into_iter().enumerate() {
                            per_angle[slot].push(v * pt.weight);
                        }
                    }
                    let jac = w_rho * rho.powi(d as i32 - 1);
                    for slot in 0..n_integrands {
                        per_radial[slot].push(jac * pairwise_sum(&per_angle[slot]));
                    }
                }
                for slot in 0..n_integrands {
                    out[k][slot] = pairwise_sum(&per_radial[slot]);
                }
                lo = hi;
            }
            Ok(out)
        }
        QuadratureSpec::MonteCarlo { sample_count, seed } => {
            let total_vol = ball_volume(d, *radii.last().unwrap());
            let mut out = vec![vec![0.0; n_integrands]; radii.len()];
            let mut lo = 0.0f64;
            for (k, &hi) in radii.iter().enumerate() {
                let shell_vol = ball_volume(d, hi) - ball_volume(d, lo);
                let n_k = ((*sample_count as f64) * shell_vol / total_vol).ceil() as usize;
                let n_k = n_k.max(64);
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
                let mut vals: Vec<Vec<f64>> = vec![Vec::with_capacity(n_k); n_integrands];
                for _ in 0..n_k {
                    let z = sample_in_shell(&mut rng, m, lo, hi);
                    for (slot, v) in eval(&z).into_iter().enumerate() {
                        vals[slot].push(v);
                    }
                }
                for slot in 0..n_integrands {
                    out[k][slot] = shell_vol * pairwise_sum(&vals[slot]) / n_k as f64;
                }
                lo = hi;
            }
            Ok(out)
        }
    }
}

/// Lebesgue volume of the d-ball of radius r: π^{d/2} r^d / Γ(d/2+1).
pub fn ball_volume(d: usize, r: f64) -> f64 {
    debug_assert!(d % 2 == 0);
    let m = d / 2;
    let mut v = 1.0;
    for k in 1..=m {
        v *= std::f64::consts::PI / k as f64;
    }
    v * r.powi(d as i32)
}

fn sample_in_shell(rng: &mut ChaCha8Rng, m: usize, lo: f64, hi: f64) -> Vec<Complex64> {
    let d = 2 * m;
    let mut dir = Vec::with_capacity(d);
    while dir.len() < d {
        let u1: f64 = rng.random::<f64>().max(1e-12);
        let u2: f64 = rng.random();
        let r0 = (-2.0 * u1.ln()).sqrt();
        dir.push(r0 * (2.0 * std::f64::consts::PI * u2).cos());
        dir.push(r0 * (2.0 * std::f64::consts::PI * u2).sin());
    }
    let norm = dir.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-300);
    let u: f64 = rng.random();
    let radius =
        (lo.powi(d as i32) + u * (hi.powi(d as i32) - lo.powi(d as i32))).powf(1.0 / d as f64);
    (0..m)
        .map(|j| Complex64::new(dir[2 * j], dir[2 * j + 1]) * (radius / norm))
        .collect()
}

/// Embedding Jacobian ∂x_row/∂θ_col of the sphere parametrization at radius
/// `t` (a 2m × (2m−1) matrix): x_i = t·(∏_{l<i} sinθ_l)·cosθ_i for
/// i < 2m−1 and x_{2m−1} = t·∏_{l<2m−1} sinθ_l.
pub fn sphere_jacobian(m: usize, t: f64, angles: &[f64]) -> Vec<Vec<f64>> {
    let d = 2 * m;
    let mut jac = vec![vec![0.0; d - 1]; d];
    for row in 0..d {
        let sin_upto = if row == d - 1 { d - 1 } else { row };
        for col in 0..d - 1 {
            if col > sin_upto || (col == sin_upto && row == d - 1) {
                continue; // x_row does not depend on θ_col
            }
            let mut v = t;
            for l in 0..sin_upto {
                v *= if l == col {
                    angles[l].cos()
                } else {
                    angles[l].sin()
                };
            }
            if row < d - 1 {
                v *= if col == row {
                    -angles[row].sin()
                } else {
                    angles[row].cos()
                };
            }
            jac[row][col] = v;
        }
    }
    jac
}

/// Determinant of a small real matrix (n ≤ 7 here) by Gaussian elimination.
pub fn real_det(mat: &mut [Vec<f64>]) -> f64 {
    let n = mat.len();
    let mut det = 1.0;
    for c in 0..n {
        let piv = (c..n)
            .max_by(|&a, &b| mat[a][c].abs().partial_cmp(&mat[b][c].abs()).unwrap())
            .unwrap();
        if mat[piv][c].abs() < 1e-300 {
            return 0.0;
        }
        if piv != c {
            mat.swap(piv, c);
            det = -det;
        }
        det *= mat[c][c];
        for r in c + 1..n {
            let f = mat[r][c] / mat[c][c];
            for cc in c..n {
                mat[r][cc] -= f * mat[c][cc];
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_nodes_integrate_polynomials_exactly() {
        let (xs, ws) = gauss_legendre(8);
        // ∫_{-1}^{1} x^10 dx = 2/11 needs order ≥ 6; order 8 handles x^14.
        let s: f64 = xs.iter().zip(&ws).map(|(&x, &w)| w * x.powi(14)).sum();
        assert!((s - 2.0 / 15.0).abs() < 1e-12);
    }

    #[test]
    fn angular_grid_measures_unit_sphere() {
        // Total weight = area of S³ = 2π² (GL on trig weights converges
        // spectrally, not exactly).
        let grid = angular_grid(2, 16);
        let total: Vec<f64> = grid.iter().map(|p| p.weight).collect();
        assert!((pairwise_sum(&total) - 2.0 * std::f64::consts::PI.powi(2)).abs() < 1e-9);
        for p in &grid {
            let n: f64 = p.direction.iter().map(|x| x * x).sum();
            assert!((n - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn shell_integrals_recover_ball_volume() {
        let quad = QuadratureSpec::GaussLegendreProduct {
            radial_order: 8,
            angular_order: 8,
        };
        let radii = [0.5, 1.0, 2.0];
        let shells = shell_integrals(2, &radii, &quad, 1, &mut |_z| vec![1.0]).unwrap();
        let mut acc = 0.0;
        for (k, &r) in radii.iter().enumerate() {
            acc += shells[k][0];
            assert!(
                (acc - ball_volume(4, r)).abs() < 1e-9 * ball_volume(4, r),
                "r={r}: {acc} vs {}",
                ball_volume(4, r)
            );
        }
    }

    #[test]
    fn monte_carlo_ball_volume_within_tolerance() {
        let quad = QuadratureSpec::MonteCarlo {
            sample_count: 40_000,
            seed: 7,
        };
        let radii = [1.0, 2.0];
        let shells = shell_integrals(2, &radii, &quad, 1, &mut |_z| vec![1.0]).unwrap();
        let total = shells[0][0] + shells[1][0];
        // Constant integrand is exact under this stratification.
        assert!((total - ball_volume(4, 2.0)).abs() < 1e-9);
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::GaussLegendreProduct {
            radial_order: 2,
            angular_order: 8
        }
        .validate()
        .is_err());
        assert!(QuadratureSpec::MonteCarlo {
            sample_count: 100,
            seed: 0
        }
        .validate()
        .is_err());
        let quad = QuadratureSpec::GaussLegendreProduct {
            radial_order: 8,
            angular_order: 8,
        };
        assert_eq!(
            shell_integrals(2, &[2.0, 1.0], &quad, 1, &mut |_| vec![1.0]).unwrap_err(),
            QuadError::UnsortedGrid
        );
    }

    #[test]
    fn sphere_jacobian_volume_consistency() {
        // det[∂x/∂(ρ,θ)] = ρ³ sin²θ₁ sinθ₂ for m = 2: check via the embedding
        // Jacobian augmented with the radial direction.
        let angles = [0.7, 1.2, 2.9];
        let t = 1.7;
        let jac = sphere_jacobian(2, t, &angles);
        let mut dir = [0.0; 4];
        let mut sin_prod = 1.0;
        for i in 0..3 {
            dir[i] = sin_prod * angles[i].cos();
            sin_prod *= angles[i].sin();
        }
        dir[3] = sin_prod;
        let mut full: Vec<Vec<f64>> = (0..4)
            .map(|r| {
                let mut row = vec![dir[r]];
                row.extend(jac[r].iter().copied());
                row
            })
            .collect();
        let det = real_det(&mut full);
        let expected = t.powi(3) * angles[0].sin().powi(2) * angles[1].sin();
        assert!((det - expected).abs() < 1e-10, "{det} vs {expected}");
    }
}
