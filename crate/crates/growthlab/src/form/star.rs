//! Hodge star internals: linear frame substitution plus the star in an
//! orthonormal frame, carried out over the underlying real coframe.
//!
//! With the metric brought to i Σ θ^a ∧ θ̄^a, the real coframe
//! e^a = (θ^a + θ̄^a)/√2, f^a = −i(θ^a − θ̄^a)/√2 is orthonormal with volume
//! e¹∧f¹∧…∧e^m∧f^m, and the real Hodge star on an orthonormal monomial is
//! plain complementation with a permutation sign. The complex star is its
//! C-linear extension.

use std::collections::HashMap;

use num_complex::Complex64;

use super::{merge_inversions, ExteriorForm, Form, FormError};
use crate::linalg::CMatrix;

/// Replace dz_j ↦ Σ_a M[j][a]·ε_a (and dz̄_j ↦ conj coefficients on ε̄_a) in
/// `form`, producing a form over `new_dim` generators ε.
pub(crate) fn substitute(
    form: &ExteriorForm,
    m: &CMatrix,
    new_dim: usize,
) -> Result<ExteriorForm, FormError> {
    let mut out = Form::zero(new_dim);
    for (i, j, coeff) in form.terms() {
        let mut acc = Form::constant(new_dim, *coeff);
        let mut hol = i;
        while hol != 0 {
            let g = hol.trailing_zeros() as usize;
            hol &= hol - 1;
            let image = Form::from_terms(new_dim, (0..new_dim).map(|a| (1u32 << a, 0u32, m[g][a])));
            acc = acc.wedge(&image)?;
        }
        let mut anti = j;
        while anti != 0 {
            let g = anti.trailing_zeros() as usize;
            anti &= anti - 1;
            let image = Form::from_terms(
                new_dim,
                (0..new_dim).map(|a| (0u32, 1u32 << a, m[g][a].conj())),
            );
            acc = acc.wedge(&image)?;
        }
        out = out.add(&acc);
    }
    Ok(out)
}

/// Hodge star with respect to the standard frame metric i Σ θ^a ∧ θ̄^a,
/// extended C-linearly.
pub(crate) fn orthonormal_star(v: &ExteriorForm) -> ExteriorForm {
    let m = v.dim();
    let full: u32 = if 2 * m == 32 {
        u32::MAX
    } else {
        (1u32 << (2 * m)) - 1
    };
    let mut real: HashMap<u32, Complex64> = HashMap::new();
    for (i, j, c) in v.terms() {
        expand_real(m, i, j, *c, &mut real);
    }
    let mut starred: HashMap<u32, Complex64> = HashMap::new();
    for (mask, c) in real {
        let comp = full & !mask;
        let sign = if merge_inversions(mask, comp) % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        *starred.entry(comp).or_insert(Complex64::new(0.0, 0.0)) += c * sign;
    }
    collect_complex(m, &starred)
}

/// Expand a θ_I ∧ θ̄_J monomial over the real generators
/// (e^a ↦ bit 2a, f^a ↦ bit 2a+1) and accumulate into `real`.
fn expand_real(m: usize, i: u32, j: u32, coeff: Complex64, real: &mut HashMap<u32, Complex64>) {
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    // Factors listed in normal-form order: θ's first, then θ̄'s.
    let mut factors: Vec<[(u32, Complex64); 2]> = Vec::new();
    let mut hol = i;
    while hol != 0 {
        let a = hol.trailing_zeros();
        hol &= hol - 1;
        factors.push([
            (1 << (2 * a), Complex64::new(inv_sqrt2, 0.0)),
            (1 << (2 * a + 1), Complex64::new(0.0, inv_sqrt2)),
        ]);
    }
    let mut anti = j;
    while anti != 0 {
        let a = anti.trailing_zeros();
        anti &= anti - 1;
        factors.push([
            (1 << (2 * a), Complex64::new(inv_sqrt2, 0.0)),
            (1 << (2 * a + 1), Complex64::new(0.0, -inv_sqrt2)),
        ]);
    }
    let _ = m;
    let mut acc: Vec<(u32, Complex64)> = vec![(0, coeff)];
    for factor in &factors {
        let mut next = Vec::with_capacity(acc.len() * 2);
        for &(mask, c) in &acc {
            for &(bit, fc) in factor {
                if mask & bit != 0 {
                    continue;
                }
                let sign = if merge_inversions(mask, bit) % 2 == 0 {
                    1.0
                } else {
                    -1.0
                };
                next.push((mask | bit, c * fc * sign));
            }
        }
        acc = next;
    }
    for (mask, c) in acc {
        *real.entry(mask).or_insert(Complex64::new(0.0, 0.0)) += c;
    }
}

/// Convert a form over real generators back to the θ/θ̄ basis using
/// e^a = (θ^a + θ̄^a)/√2 and f^a = −i(θ^a − θ̄^a)/√2.
fn collect_complex(m: usize, real: &HashMap<u32, Complex64>) -> ExteriorForm {
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = Form::zero(m);
    for (&mask, &coeff) in real {
        if coeff == Complex64::new(0.0, 0.0) {
            continue;
        }
        // Substitute each real generator by its θ/θ̄ expansion, wedging in
        // ascending real-index order (the order of the stored monomial).
        let mut acc = Form::constant(m, coeff);
        let mut rest = mask;
        while rest != 0 {
            let r = rest.trailing_zeros();
            rest &= rest - 1;
            let a = (r / 2) as usize;
            let image = if r % 2 == 0 {
                Form::from_terms(
                    m,
                    [
                        (1u32 << a, 0u32, Complex64::new(inv_sqrt2, 0.0)),
                        (0u32, 1u32 << a, Complex64::new(inv_sqrt2, 0.0)),
                    ],
                )
            } else {
                Form::from_terms(
                    m,
                    [
                        (1u32 << a, 0u32, Complex64::new(0.0, -inv_sqrt2)),
                        (0u32, 1u32 << a, Complex64::new(0.0, inv_sqrt2)),
                    ],
                )
            };
            acc = acc.wedge(&image).expect("same dimension");
        }
        out = out.add(&acc);
    }
    // Cancellation leaves ~1e-16 debris on monomials that should vanish.
    out.prune(1e-13)
}
