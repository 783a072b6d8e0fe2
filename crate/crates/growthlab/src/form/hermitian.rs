//! Hermitian (1,1)-forms as coefficient matrices, and the metric-dependent
//! operators: covector norms, the trace Λ, top-form densities and the Hodge
//! star.
//!
//! Conventions. A metric is ω = i Σ h_{jk̄} dz_j ∧ dz̄_k with h Hermitian, so
//! the Euclidean metric β of ℂ^m is h = ½·Id. With this normalisation
//! i dz∧dz̄ = 2 dx∧dy gives density(β_m) = 1: ball volumes computed from β
//! are plain Lebesgue volumes, and Vol_β(B_t) = V_{2m} t^{2m}.

use num_complex::Complex64;

use super::star;
use super::{ExteriorForm, Form, FormError};
use crate::linalg::{self, CMatrix};

/// Definiteness annotation carried by a [`HermitianForm`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Definiteness {
    PositiveDefinite,
    PositiveSemidefinite,
    Indefinite,
    Unknown,
}

/// A (1,1)-form ω = i Σ h_{jk̄} dz_j ∧ dz̄_k given by its m×m Hermitian
/// coefficient matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianForm {
    dim: usize,
    h: CMatrix,
    definiteness: Definiteness,
}

impl HermitianForm {
    /// Wrap a coefficient matrix, verifying h = h^H exactly.
    pub fn new(h: CMatrix, definiteness: Definiteness) -> Result<Self, FormError> {
        let dim = h.len();
        for j in 0..dim {
            if h[j].len() != dim {
                return Err(FormError::NotHermitian);
            }
            for k in 0..=j {
                if h[j][k] != h[k][j].conj() {
                    return Err(FormError::NotHermitian);
                }
            }
        }
        Ok(HermitianForm {
            dim,
            h,
            definiteness,
        })
    }

    /// Build from the upper triangle (j ≤ k); the lower triangle is filled in
    /// by conjugation so Hermitian symmetry holds exactly by construction.
    pub fn from_upper(dim: usize, mut entry: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut h = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
        for j in 0..dim {
            for k in j..dim {
                let v = entry(j, k);
                let v = if j == k { Complex64::new(v.re, 0.0) } else { v };
                h[j][k] = v;
                h[k][j] = v.conj();
            }
        }
        HermitianForm {
            dim,
            h,
            definiteness: Definiteness::Unknown,
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut s = Self::from_upper(dim, |j, k| {
            Complex64::new(if j == k { 1.0 } else { 0.0 }, 0.0)
        });
        s.definiteness = Definiteness::PositiveDefinite;
        s
    }

    /// The Euclidean metric β = ½ Σ i dz_j ∧ dz̄_j.
    pub fn euclidean(dim: usize) -> Self {
        let mut s = Self::from_upper(dim, |j, k| {
            Complex64::new(if j == k { 0.5 } else { 0.0 }, 0.0)
        });
        s.definiteness = Definiteness::PositiveDefinite;
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.h
    }

    pub fn entry(&self, j: usize, k: usize) -> Complex64 {
        self.h[j][k]
    }

    pub fn definiteness(&self) -> Definiteness {
        self.definiteness
    }

    pub fn with_definiteness(mut self, d: Definiteness) -> Self {
        self.definiteness = d;
        self
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut h = self.h.clone();
        for row in &mut h {
            for v in row {
                *v *= s;
            }
        }
        HermitianForm {
            dim: self.dim,
            h,
            definiteness: if s > 0.0 {
                self.definiteness
            } else {
                Definiteness::Unknown
            },
        }
    }

    /// The associated exterior form i Σ h_{jk̄} dz_j ∧ dz̄_k.
    pub fn to_form(&self) -> ExteriorForm {
        let i = Complex64::new(0.0, 1.0);
        Form::from_terms(
            self.dim,
            (0..self.dim)
                .flat_map(|j| (0..self.dim).map(move |k| (1u32 << j, 1u32 << k, i * self.h[j][k]))),
        )
    }

    /// Extract the coefficient matrix of a (1,1) exterior form γ, inverting
    /// the convention γ = i Σ c_{jk̄} dz_j ∧ dz̄_k.
    pub fn matrix_of(gamma: &ExteriorForm) -> Result<CMatrix, FormError> {
        if !gamma.is_zero() && gamma.bidegree() != Some((1, 1)) {
            return Err(FormError::WrongBidegree { p: 1, q: 1 });
        }
        let m = gamma.dim();
        let mut c = vec![vec![Complex64::new(0.0, 0.0); m]; m];
        let minus_i = Complex64::new(0.0, -1.0);
        for (i, j, coeff) in gamma.terms() {
            c[i.trailing_zeros() as usize][j.trailing_zeros() as usize] = minus_i * coeff;
        }
        Ok(c)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.h)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        linalg::min_eigenvalue(&self.h)
    }

    pub fn det(&self) -> Complex64 {
        match self.dim {
            0 => Complex64::new(1.0, 0.0),
            1 => self.h[0][0],
            2 => self.h[0][0] * self.h[1][1] - self.h[0][1] * self.h[1][0],
            3 => {
                let h = &self.h;
                h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1])
                    - h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0])
                    + h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0])
            }
            _ => {
                // Fallback via eigenvalues; Hermitian so det is real.
                let d: f64 = self.eigenvalues().iter().product();
                Complex64::new(d, 0.0)
            }
        }
    }

    /// Lebesgue density of ω^m/m!: equals
    /// `top_density(self.to_form().power_over_factorial(m))` and evaluates
    /// as 2^m·det(h) — the identity is pinned by a property test.
    pub fn volume_density(&self) -> f64 {
        2f64.powi(self.dim as i32) * self.det().re
    }

    /// tr(h⁻¹) = Λ_h(i∂∂̄τ); closed-form for small dimensions, `None` when
    /// the matrix is singular.
    pub fn trace_inverse(&self) -> Option<f64> {
        let h = &self.h;
        match self.dim {
            1 => {
                let d = h[0][0].re;
                (d != 0.0).then(|| 1.0 / d)
            }
            2 => {
                let det = self.det().re;
                (det != 0.0).then(|| (h[0][0].re + h[1][1].re) / det)
            }
            _ => {
                let sol = linalg::solve(&self.h, &linalg::identity(self.dim))?;
                Some((0..self.dim).map(|j| sol[j][j].re).sum())
            }
        }
    }
}

/// An (m,m)-form expressed as `value` × Lebesgue measure on ℝ^{2m}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Density {
    pub value: f64,
    pub dim: usize,
}

/// Density of a pure (m,m)-form with respect to Lebesgue measure on ℝ^{2m}.
///
/// For Φ = φ·dz_{1..m}∧dz̄_{1..m} in normal form the value is
/// φ·(−1)^{m(m−1)/2}·i^{−m}·2^m, which must be real: the imaginary part may
/// not exceed 1e−12 relative.
pub fn top_density(phi: &ExteriorForm) -> Result<Density, FormError> {
    let m = phi.dim();
    if phi.is_zero() {
        return Ok(Density { value: 0.0, dim: m });
    }
    if phi.bidegree() != Some((m, m)) {
        return Err(FormError::WrongBidegree { p: m, q: m });
    }
    let full = if m == 32 { u32::MAX } else { (1u32 << m) - 1 };
    let coeff = phi.coefficient(full, full);
    // (−1)^{m(m−1)/2} · i^{−m} · 2^m
    let sign = if (m * (m - 1) / 2) % 2 == 0 {
        1.0
    } else {
        -1.0
    };
    let i_pow = match m % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    };
    let value = coeff * sign * i_pow * 2f64.powi(m as i32);
    if value.im.abs() > 1e-12 * value.re.abs().max(1.0) {
        return Err(FormError::NonRealDensity { imag: value.im });
    }
    Ok(Density {
        value: value.re,
        dim: m,
    })
}

/// |v|_g for a 1-form v = Σ a_j dz_j + Σ b_j dz̄_j: the inverse-metric
/// pairing a^H h⁻¹ a + b^H (h⁻¹)ᵀ b, square-rooted.
pub fn covector_norm(v: &ExteriorForm, g: &HermitianForm) -> Result<f64, FormError> {
    if v.is_zero() {
        return Ok(0.0);
    }
    if v.degree() != Some(1) {
        return Err(FormError::WrongBidegree { p: 1, q: 0 });
    }
    if v.dim() != g.dim {
        return Err(FormError::DimensionMismatch {
            expected: g.dim,
            found: v.dim(),
        });
    }
    let m = g.dim;
    let mut a = vec![Complex64::new(0.0, 0.0); m];
    let mut b = vec![Complex64::new(0.0, 0.0); m];
    for (i, j, c) in v.terms() {
        if i != 0 {
            a[i.trailing_zeros() as usize] = *c;
        } else {
            b[j.trailing_zeros() as usize] = *c;
        }
    }
    let rhs: CMatrix = (0..m).map(|j| vec![a[j], b[j].conj()]).collect();
    let sol = linalg::solve(&g.h, &rhs).ok_or(FormError::NotPositiveDefinite)?;
    let mut sq = 0.0;
    for j in 0..m {
        sq += (a[j].conj() * sol[j][0]).re;
        sq += (b[j] * sol[j][1]).re;
    }
    Ok(sq.max(0.0).sqrt())
}

/// The trace Λ_g(γ) = tr(h_g⁻¹ h_γ) of a (1,1)-form γ against a
/// positive-definite metric g; Λ_g(g) = m.
pub fn trace_lambda(gamma: &ExteriorForm, g: &HermitianForm) -> Result<Complex64, FormError> {
    if gamma.dim() != g.dim {
        return Err(FormError::DimensionMismatch {
            expected: g.dim,
            found: gamma.dim(),
        });
    }
    let c = HermitianForm::matrix_of(gamma)?;
    let sol = linalg::solve(&g.h, &c).ok_or(FormError::NotPositiveDefinite)?;
    let mut tr = Complex64::new(0.0, 0.0);
    for j in 0..g.dim {
        tr += sol[j][j];
    }
    Ok(tr)
}

/// Hodge star of `v` with respect to the positive-definite metric `g`,
/// computed in a g-orthonormal frame obtained from the Cholesky factor of the
/// coefficient matrix. Satisfies v ∧ ⋆(conj v) = |v|²_g · g_m.
pub fn hodge_star(v: &ExteriorForm, g: &HermitianForm) -> Result<ExteriorForm, FormError> {
    if v.dim() != g.dim {
        return Err(FormError::DimensionMismatch {
            expected: g.dim,
            found: v.dim(),
        });
    }
    let l = linalg::cholesky(&g.h).ok_or(FormError::NotPositiveDefinite)?;
    let m = g.dim;
    // θ = Lᵀ·dz brings the metric to i Σ θ^a ∧ θ̄^a; dz_j = Σ_a S_{ja} θ^a
    // with S = (Lᵀ)⁻¹.
    let lt: CMatrix = (0..m).map(|a| (0..m).map(|j| l[j][a]).collect()).collect();
    let s = linalg::solve(&lt, &linalg::identity(m)).ok_or(FormError::NotPositiveDefinite)?;
    let v_theta = star::substitute(v, &s, m)?;
    let starred = star::orthonormal_star(&v_theta);
    star::substitute(&starred, &lt, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cz(zs: &[(f64, f64)]) -> Vec<Complex64> {
        zs.iter().map(|&(re, im)| c(re, im)).collect()
    }

    #[test]
    fn euclidean_top_density_is_one() {
        for m in 1..=4 {
            let beta = HermitianForm::euclidean(m);
            let top = beta.to_form().power_over_factorial(m).unwrap();
            let d = top_density(&top).unwrap();
            assert!((d.value - 1.0).abs() < 1e-14, "m={m}: {}", d.value);
        }
    }

    #[test]
    fn top_density_of_zero_form() {
        let z = ExteriorForm::zero(2);
        assert_eq!(top_density(&z).unwrap().value, 0.0);
    }

    #[test]
    fn iwasawa_style_density() {
        // h = diag(1, 1+|z₁|²) at z₁ = 0 gives ω²/2! = dV₀ = 4·Lebesgue.
        let h = HermitianForm::identity(2);
        let top = h.to_form().power_over_factorial(2).unwrap();
        assert!((top_density(&top).unwrap().value - 4.0).abs() < 1e-14);
    }

    #[test]
    fn covector_norms_against_euclidean() {
        let beta = HermitianForm::euclidean(2);
        // |dτ|_β = 2√τ; at |z| = 1 this is 2.
        let z = cz(&[(0.6, 0.0), (0.0, 0.8)]);
        let dtau = ExteriorForm::d_tau(&z);
        assert!((covector_norm(&dtau, &beta).unwrap() - 2.0).abs() < 1e-12);
        // |dz₁|_β = √2.
        let dz1 = ExteriorForm::dz(2, 0);
        assert!((covector_norm(&dz1, &beta).unwrap() - 2f64.sqrt()).abs() < 1e-12);
        // zero covector
        assert_eq!(covector_norm(&ExteriorForm::zero(2), &beta).unwrap(), 0.0);
    }

    #[test]
    fn trace_of_metric_is_dimension() {
        let g = HermitianForm::from_upper(3, |j, k| {
            if j == k {
                c(1.0 + j as f64, 0.0)
            } else {
                c(0.1, 0.05)
            }
        });
        let tr = trace_lambda(&g.to_form(), &g).unwrap();
        assert!((tr - c(3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn trace_examples_from_gallery_metrics() {
        // Fubini–Study at the origin (n = 3, so m = 2): Λ(i∂∂̄τ) = 2.
        let g = HermitianForm::identity(2);
        let ddbar_tau = HermitianForm::identity(2).to_form();
        let tr = trace_lambda(&ddbar_tau, &g).unwrap();
        assert!((tr - c(2.0, 0.0)).norm() < 1e-12);

        // Pullback metric diag(1, 1+|z₁|²) at |z₁|² = 1: Λ(i∂∂̄τ) = 1 + ½.
        let g = HermitianForm::from_upper(2, |j, k| match (j, k) {
            (0, 0) => c(1.0, 0.0),
            (1, 1) => c(2.0, 0.0),
            _ => c(0.0, 0.0),
        });
        let tr = trace_lambda(&ddbar_tau, &g).unwrap();
        assert!((tr - c(1.5, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn star_of_one_is_volume_form() {
        let g = HermitianForm::from_upper(2, |j, k| match (j, k) {
            (0, 0) => c(2.0, 0.0),
            (1, 1) => c(1.0, 0.0),
            (0, 1) => c(0.3, 0.4),
            _ => c(0.0, 0.0),
        });
        let one = ExteriorForm::constant(2, c(1.0, 0.0));
        let star1 = hodge_star(&one, &g).unwrap();
        let gm = g.to_form().power_over_factorial(2).unwrap();
        assert!(star1.distance(&gm) < 1e-12 * gm.max_abs());
    }

    #[test]
    fn star_rejects_indefinite_metric() {
        let g = HermitianForm::from_upper(2, |j, k| match (j, k) {
            (0, 0) => c(1.0, 0.0),
            (1, 1) => c(-1.0, 0.0),
            _ => c(0.0, 0.0),
        });
        let one = ExteriorForm::constant(2, c(1.0, 0.0));
        assert_eq!(
            hodge_star(&one, &g).unwrap_err(),
            FormError::NotPositiveDefinite
        );
    }

    #[test]
    fn unit_dtau_star_identity() {
        // (dτ/|dτ|) ∧ ⋆(dτ/|dτ|) = g_m
        let g = HermitianForm::from_upper(2, |j, k| match (j, k) {
            (0, 0) => c(1.5, 0.0),
            (1, 1) => c(2.5, 0.0),
            (0, 1) => c(0.2, -0.7),
            _ => c(0.0, 0.0),
        });
        let z = cz(&[(0.3, -1.1), (0.4, 0.2)]);
        let dtau = ExteriorForm::d_tau(&z);
        let n = covector_norm(&dtau, &g).unwrap();
        let unit = dtau.scale(&c(1.0 / n, 0.0));
        let lhs = unit.wedge(&hodge_star(&unit, &g).unwrap()).unwrap();
        let gm = g.to_form().power_over_factorial(2).unwrap();
        assert!(lhs.distance(&gm) < 1e-10 * gm.max_abs());
    }
}
