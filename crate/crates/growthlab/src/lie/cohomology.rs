//! Invariant Bott-Chern and Aeppli cohomology, and the degree-2 Aeppli-class
//! map P({α}) = {(α^{n−1})^{n−1,n−1}}_A.
//!
//! Everything here is the cohomology of the *invariant* complex; reported
//! dimensions never claim to equal the cohomology of a compact quotient.

use crate::form::Scalar;

use super::algebra::{InvariantForm, LieError};
use super::complex::InvariantComplex;
use super::exact::{self, GMatrix};
use super::gaussian::GaussianRational;

/// Invariant Bott-Chern and Aeppli dimensions at one bidegree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CohomologyDims {
    pub bc: usize,
    pub aeppli: usize,
}

/// Exact invariant-cohomology dimensions at (p,q):
/// BC = ker∂ ∩ ker∂̄ / Im ∂∂̄ and Aeppli = ker ∂∂̄ / (Im ∂ + Im ∂̄).
pub fn cohomology_dims(complex: &InvariantComplex, p: usize, q: usize) -> CohomologyDims {
    let n = complex.dim();
    let dim_pq = complex.basis(p, q).len();

    // Stack ∂ and ∂̄ to compute dim(ker ∂ ∩ ker ∂̄).
    let mut stacked: GMatrix = Vec::new();
    if let Some(d) = complex.del_matrix(p, q) {
        stacked.extend(d.iter().cloned());
    }
    if let Some(db) = complex.del_bar_matrix(p, q) {
        stacked.extend(db.iter().cloned());
    }
    let ker_both = if stacked.is_empty() {
        dim_pq
    } else {
        dim_pq - exact::rank(&stacked)
    };

    // Im ∂∂̄ from (p−1, q−1).
    let rank_ddbar_in = if p >= 1 && q >= 1 {
        let db = complex.del_bar_matrix(p - 1, q - 1).unwrap();
        let d = complex.del_matrix(p - 1, q).unwrap();
        exact::rank(&exact::mat_mul(d, db))
    } else {
        0
    };
    let bc = ker_both - rank_ddbar_in;

    // ker(∂∂̄ out of (p,q)).
    let ker_ddbar_out = if p < n && q < n {
        let db = complex.del_bar_matrix(p, q).unwrap();
        let d = complex.del_matrix(p, q + 1).unwrap();
        dim_pq - exact::rank(&exact::mat_mul(d, db))
    } else {
        dim_pq
    };

    // Im ∂ + Im ∂̄ landing in (p,q): concatenate columns.
    let span = incoming_span(complex, p, q);
    let rank_span = if span.is_empty() {
        0
    } else {
        exact::rank(&span)
    };
    CohomologyDims {
        bc,
        aeppli: ker_ddbar_out - rank_span,
    }
}

/// Columns spanning Im ∂ + Im ∂̄ inside the (p,q) coordinate space.
pub(crate) fn incoming_span(complex: &InvariantComplex, p: usize, q: usize) -> GMatrix {
    let dim_pq = complex.basis(p, q).len();
    let mut cols: Vec<Vec<GaussianRational>> = Vec::new();
    if p >= 1 {
        let d = complex.del_matrix(p - 1, q).unwrap();
        let src = complex.basis(p - 1, q).len();
        for c in 0..src {
            cols.push((0..dim_pq).map(|r| d[r][c].clone()).collect());
        }
    }
    if q >= 1 {
        let db = complex.del_bar_matrix(p, q - 1).unwrap();
        let src = complex.basis(p, q - 1).len();
        for c in 0..src {
            cols.push((0..dim_pq).map(|r| db[r][c].clone()).collect());
        }
    }
    // Store column-major data as a rows×cols matrix.
    let mut span = exact::zeros(dim_pq, cols.len());
    for (c, col) in cols.iter().enumerate() {
        for (r, v) in col.iter().enumerate() {
            span[r][c] = v.clone();
        }
    }
    span
}

/// An Aeppli cohomology class, stored as the canonical residual of a
/// representative modulo Im ∂ + Im ∂̄ (equal classes have equal residuals).
#[derive(Debug, Clone, PartialEq)]
pub struct AeppliClass {
    pub bidegree: (usize, usize),
    pub coords: Vec<GaussianRational>,
}

impl AeppliClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

/// The Aeppli class of a ∂∂̄-closed (p,q)-form.
pub fn aeppli_class(
    complex: &InvariantComplex,
    form: &InvariantForm,
    p: usize,
    q: usize,
) -> Result<AeppliClass, LieError> {
    let n = complex.dim();
    if !form.is_zero() && form.bidegree() != Some((p, q)) {
        return Err(LieError::WrongBidegree { p, q });
    }
    if p < n && q < n {
        let ddbar = complex.algebra().del(&complex.algebra().del_bar(form));
        if !ddbar.is_zero() {
            return Err(LieError::Unsupported("form is not ∂∂̄-closed".into()));
        }
    }
    let span = incoming_span(complex, p, q);
    let v = complex.coordinates(form, p, q);
    Ok(AeppliClass {
        bidegree: (p, q),
        coords: exact::reduce_mod_span(&span, &v),
    })
}

/// P({α}) = {(α^{n−1})^{n−1,n−1}}_A for a closed real invariant 2-form α.
///
/// Checks exactly that dα = 0 and that the (n−1,n−1) part of α^{n−1} is
/// ∂∂̄-closed; the class does not depend on the representative of {α}_DR.
pub fn p_map(complex: &InvariantComplex, alpha: &InvariantForm) -> Result<AeppliClass, LieError> {
    let n = complex.dim();
    if !complex.algebra().d(alpha).is_zero() {
        return Err(LieError::NotClosed);
    }
    if alpha.conj() != *alpha {
        return Err(LieError::NotReal);
    }
    // Plain (n−1)-st power, no factorial.
    let mut power = InvariantForm::constant(n, GaussianRational::one());
    for _ in 0..n - 1 {
        power = power.wedge(alpha).expect("same dimension");
    }
    let component = power.bidegree_component(n - 1, n - 1);
    aeppli_class(complex, &component, n - 1, n - 1)
}
