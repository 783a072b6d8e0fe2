//! The SL(2,ℂ) model: three independent evaluation paths for the pullback
//! of the standard left-invariant metric under
//! f(z₁,z₂) = [[e^{z₁}, z₂], [0, e^{−z₁}]].
//!
//! 1. [`sl2c_metric`] — the closed-form coefficient matrix;
//! 2. [`maurer_cartan_pullback`] — analytic derivatives expanded in the
//!    left-invariant frame {A, B, C} of sl(2,ℂ);
//! 3. [`sl2c_jacobian_pullback`] — finite-difference Jacobian combined with
//!    the same frame expansion.
//!
//! The frame is A = (i/2)[[0,1],[1,0]], B = (1/2)[[0,1],[−1,0]],
//! C = (i/2)[[1,0],[0,−1]], dual to the (1,0)-coframe whose structure
//! equations are dξ¹ = ξ²∧ξ³, dξ² = ξ³∧ξ¹, dξ³ = ξ¹∧ξ².

use num_complex::Complex64;

use crate::form::{Definiteness, ExteriorForm, HermitianForm};

use super::map::{numeric_jacobian, HolomorphicMapSpec};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Closed-form matrix of f*ω.
pub(crate) fn sl2c_metric(z: &[Complex64]) -> HermitianForm {
    let u = (-2.0 * z[0].re).exp();
    let z2 = z[1];
    HermitianForm::from_upper(2, |j, k| match (j, k) {
        (0, 0) => c(z2.norm_sqr() * u + 2.0, 0.0),
        (1, 1) => c(u, 0.0),
        (0, 1) => z2 * u,
        _ => unreachable!(),
    })
    .with_definiteness(Definiteness::PositiveDefinite)
}

/// d(f*ω) as a 3-form (m = 2, so f*ω_{m−1} = f*ω). Expanding the coefficient
/// differentials (u = e^{−2Re z₁}) and collecting monomials leaves four
/// terms; the expansion is pinned against a finite-difference exterior
/// derivative in the gallery tests.
pub(crate) fn sl2c_d_metric(z: &[Complex64]) -> ExteriorForm {
    let u = (-2.0 * z[0].re).exp();
    let z2 = z[1];
    let two_i_u = c(0.0, 2.0 * u);
    ExteriorForm::from_terms(
        2,
        [
            (0b11u32, 0b01u32, -(two_i_u * z2.conj())), // dz₁∧dz₂∧dz̄₁
            (0b01u32, 0b11u32, two_i_u * z2),           // dz₁∧dz̄₁∧dz̄₂
            (0b11u32, 0b10u32, -two_i_u),               // dz₁∧dz₂∧dz̄₂
            (0b10u32, 0b11u32, two_i_u),                // dz₂∧dz̄₁∧dz̄₂
        ],
    )
}

/// The defining map as a finite-difference [`HolomorphicMapSpec`] into the
/// flattened 2×2 matrix entries (row major).
pub fn sl2c_map_spec() -> HolomorphicMapSpec {
    HolomorphicMapSpec::finite_difference(
        2,
        4,
        Box::new(|z: &[Complex64]| vec![z[0].exp(), z[1], c(0.0, 0.0), (-z[0]).exp()]),
    )
}

/// Expand a tangent matrix at g, pulled back to the identity by g⁻¹·V, in
/// the frame {A, B, C}: for a traceless M,
/// v_A = −i(m₁₂ + m₂₁), v_B = m₁₂ − m₂₁, v_C = −2i m₁₁.
fn frame_coefficients(g_inv_v: [Complex64; 4]) -> [Complex64; 3] {
    let [m11, m12, m21, _m22] = g_inv_v;
    let i = c(0.0, 1.0);
    [-i * (m12 + m21), m12 - m21, -2.0 * i * m11]
}

/// Assemble h_{jk̄} = ½ Σ_φ v_φ(j) · conj(v_φ(k)) from frame coefficients of
/// the pushed-forward coordinate fields.
fn metric_from_frame(v: [[Complex64; 3]; 2]) -> HermitianForm {
    HermitianForm::from_upper(2, |j, k| {
        let mut s = c(0.0, 0.0);
        for phi in 0..3 {
            s += v[j][phi] * v[k][phi].conj();
        }
        s * 0.5
    })
    .with_definiteness(Definiteness::PositiveDefinite)
}

fn inverse_of_f(z: &[Complex64]) -> [Complex64; 4] {
    // f(z) = [[e^{z₁}, z₂],[0, e^{−z₁}]] has det 1, so the inverse is
    // [[e^{−z₁}, −z₂],[0, e^{z₁}]].
    [(-z[0]).exp(), -z[1], c(0.0, 0.0), z[0].exp()]
}

fn mat_mul2(a: [Complex64; 4], b: [Complex64; 4]) -> [Complex64; 4] {
    [
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    ]
}

/// Pullback metric via analytic Maurer–Cartan data: computes g(z)⁻¹·∂g/∂z_j,
/// expands in {A, B, C} and assembles the Hermitian matrix. Agrees with
/// [`sl2c_metric`] identically in exact arithmetic.
pub fn maurer_cartan_pullback(z: &[Complex64]) -> HermitianForm {
    let g_inv = inverse_of_f(z);
    // ∂g/∂z₁ = [[e^{z₁}, 0],[0, −e^{−z₁}]], ∂g/∂z₂ = [[0,1],[0,0]].
    let dg1 = [z[0].exp(), c(0.0, 0.0), c(0.0, 0.0), -((-z[0]).exp())];
    let dg2 = [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
    let v1 = frame_coefficients(mat_mul2(g_inv, dg1));
    let v2 = frame_coefficients(mat_mul2(g_inv, dg2));
    metric_from_frame([v1, v2])
}

/// Pullback metric via the numeric Jacobian of the defining map and the
/// left-invariant frame at f(z); a finite-difference twin of
/// [`maurer_cartan_pullback`].
pub fn sl2c_jacobian_pullback(z: &[Complex64]) -> HermitianForm {
    let spec = sl2c_map_spec();
    let jac = numeric_jacobian(&spec, z);
    let g_inv = inverse_of_f(z);
    let rows: Vec<[Complex64; 3]> = (0..2)
        .map(|j| {
            let v = [jac[j][0], jac[j][1], jac[j][2], jac[j][3]];
            frame_coefficients(mat_mul2(g_inv, v))
        })
        .collect();
    metric_from_frame([rows[0], rows[1]])
}
