//! Pointwise complex exterior algebra over the dz_I ∧ dz̄_J monomial basis.
//!
//! A form on ℂ^m is stored as a sparse sum Σ c_{I,J} dz_I ∧ dz̄_J where I and
//! J are strictly increasing index sets, encoded as bitmasks. Normal form
//! keeps every holomorphic differential to the left of every anti-holomorphic
//! one; all sign bookkeeping happens when terms are inserted or multiplied.
//!
//! The coefficient type is generic so the same wedge engine serves both the
//! numeric (f64-complex) algebra used by quadrature and the exact
//! Gaussian-rational algebra used by the invariant-cohomology layer.

mod hermitian;
mod star;

use num_complex::Complex64;
use thiserror::Error;

pub use hermitian::{
    covector_norm, hodge_star, top_density, trace_lambda, Definiteness, Density, HermitianForm,
};

/// Errors from exterior-algebra and metric operations.
#[derive(Debug, Error, PartialEq)]
pub enum FormError {
    #[error("dimension mismatch: expected m={expected}, found m={found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("expected a form of pure bidegree ({p},{q})")]
    WrongBidegree { p: usize, q: usize },
    #[error("metric is not positive definite")]
    NotPositiveDefinite,
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("top-form density has non-real value (imaginary part {imag:e})")]
    NonRealDensity { imag: f64 },
}

/// Coefficient ring for [`Form`]. Implemented by `Complex64` and by the exact
/// Gaussian rationals in [`crate::lie`].
pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn conj(&self) -> Self;
    /// Exact division by a small non-zero integer (used by γ^p / p!).
    fn div_int(&self, k: i64) -> Self;
    fn from_int(n: i64) -> Self;
    /// The imaginary unit.
    fn i() -> Self;
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn conj(&self) -> Self {
        Complex64::new(self.re, -self.im)
    }
    fn div_int(&self, k: i64) -> Self {
        self / k as f64
    }
    fn from_int(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn i() -> Self {
        Complex64::new(0.0, 1.0)
    }
}

/// True when merging the single-bit set `b` into `a` flips the sign.
pub(crate) fn merge_parity(a: u32, b: u32) -> bool {
    merge_inversions(a, b) % 2 == 1
}

/// Number of inversions when the increasing index sets `a` and `b` are
/// concatenated and re-sorted; the merge sign is (−1)^inversions.
pub(crate) fn merge_inversions(a: u32, b: u32) -> u32 {
    let mut inv = 0;
    let mut rest = b;
    while rest != 0 {
        let y = rest.trailing_zeros();
        inv += (a >> (y + 1)).count_ones();
        rest &= rest - 1;
    }
    inv
}

/// Sign and index sets for dz_{I1}∧dz̄_{J1} ∧ dz_{I2}∧dz̄_{J2} in normal form,
/// or `None` if an index repeats.
pub(crate) fn wedge_monomial(i1: u32, j1: u32, i2: u32, j2: u32) -> Option<(u32, u32, i32)> {
    if i1 & i2 != 0 || j1 & j2 != 0 {
        return None;
    }
    // dz_{I2} moves left across dz̄_{J1}, then both sides are merge-sorted.
    let mut swaps = i2.count_ones() * j1.count_ones();
    swaps += merge_inversions(i1, i2) + merge_inversions(j1, j2);
    let sign = if swaps % 2 == 0 { 1 } else { -1 };
    Some((i1 | i2, j1 | j2, sign))
}

/// A complex exterior form Σ c_{I,J} dz_I ∧ dz̄_J on ℂ^m.
///
/// All stored terms share the same total degree |I| + |J| (mixed bidegree is
/// allowed); zero coefficients are never stored. The zero form carries no
/// degree of its own and is compatible with every degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Form<S> {
    dim: usize,
    terms: Vec<(u32, u32, S)>,
}

/// The numeric instantiation used throughout quadrature and the gallery.
pub type ExteriorForm = Form<Complex64>;

impl<S: Scalar> Form<S> {
    pub fn zero(dim: usize) -> Self {
        Form {
            dim,
            terms: Vec::new(),
        }
    }

    /// The degree-0 form with constant coefficient `c`.
    pub fn constant(dim: usize, c: S) -> Self {
        let mut f = Form::zero(dim);
        f.push_term(0, 0, c);
        f
    }

    /// dz_j (0-based index).
    pub fn dz(dim: usize, j: usize) -> Self {
        assert!(j < dim);
        let mut f = Form::zero(dim);
        f.push_term(1 << j, 0, S::one());
        f
    }

    /// dz̄_j (0-based index).
    pub fn dz_bar(dim: usize, j: usize) -> Self {
        assert!(j < dim);
        let mut f = Form::zero(dim);
        f.push_term(0, 1 << j, S::one());
        f
    }

    /// Build from explicit (I, J, coefficient) triples in any order.
    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (u32, u32, S)>) -> Self {
        let mut f = Form::zero(dim);
        for (i, j, c) in terms {
            f.push_term(i, j, c);
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree of the stored terms, `None` for the zero form.
    pub fn degree(&self) -> Option<usize> {
        self.terms
            .first()
            .map(|(i, j, _)| (i.count_ones() + j.count_ones()) as usize)
    }

    /// `Some((p, q))` when every term has holomorphic degree p and
    /// anti-holomorphic degree q.
    pub fn bidegree(&self) -> Option<(usize, usize)> {
        let (i0, j0, _) = self.terms.first()?;
        let (p, q) = (i0.count_ones(), j0.count_ones());
        if self
            .terms
            .iter()
            .all(|(i, j, _)| i.count_ones() == p && j.count_ones() == q)
        {
            Some((p as usize, q as usize))
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &S)> {
        self.terms.iter().map(|(i, j, c)| (*i, *j, c))
    }

    /// Coefficient of dz_I ∧ dz̄_J in normal form.
    pub fn coefficient(&self, i: u32, j: u32) -> S {
        match self
            .terms
            .binary_search_by_key(&(i, j), |(a, b, _)| (*a, *b))
        {
            Ok(pos) => self.terms[pos].2.clone(),
            Err(_) => S::zero(),
        }
    }

    /// Add `c·dz_I∧dz̄_J` to the form, combining with an existing term.
    ///
    /// Panics if a term of a different total degree is mixed in: forms are
    /// homogeneous by construction.
    pub fn push_term(&mut self, i: u32, j: u32, c: S) {
        if c.is_zero() {
            return;
        }
        let deg = i.count_ones() + j.count_ones();
        if let Some(d) = self.degree() {
            assert!(
                deg as usize == d,
                "mixed total degrees in one form: {deg} vs {d}"
            );
        }
        match self
            .terms
            .binary_search_by_key(&(i, j), |(a, b, _)| (*a, *b))
        {
            Ok(pos) => {
                let sum = self.terms[pos].2.add(&c);
                if sum.is_zero() {
                    self.terms.remove(pos);
                } else {
                    self.terms[pos].2 = sum;
                }
            }
            Err(pos) => self.terms.insert(pos, (i, j, c)),
        }
    }

    /// Sum of two forms of equal dimension and degree.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch in add");
        let mut out = self.clone();
        for (i, j, c) in &other.terms {
            out.push_term(*i, *j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Form {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(i, j, c)| (*i, *j, c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        if s.is_zero() {
            return Form::zero(self.dim);
        }
        Form {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(i, j, c)| (*i, *j, c.mul(s)))
                .collect(),
        }
    }

    /// Complex conjugate; maps the (p,q) part to the (q,p) part.
    pub fn conj(&self) -> Self {
        let mut out = Form::zero(self.dim);
        for (i, j, c) in &self.terms {
            // conj(dz_I∧dz̄_J) = dz̄_I∧dz_J = (−1)^{|I||J|} dz_J∧dz̄_I.
            let sign = i.count_ones() * j.count_ones();
            let mut cc = c.conj();
            if sign % 2 == 1 {
                cc = cc.neg();
            }
            out.push_term(*j, *i, cc);
        }
        out
    }

    /// Wedge product; bilinear and graded-anticommutative. Degrees add, and
    /// anything exceeding the top degree 2m collapses to zero.
    pub fn wedge(&self, other: &Self) -> Result<Self, FormError> {
        if self.dim != other.dim {
            return Err(FormError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let mut raw: Vec<(u32, u32, S)> = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (i1, j1, c1) in &self.terms {
            for (i2, j2, c2) in &other.terms {
                if let Some((i, j, sign)) = wedge_monomial(*i1, *j1, *i2, *j2) {
                    let mut c = c1.mul(c2);
                    if sign < 0 {
                        c = c.neg();
                    }
                    raw.push((i, j, c));
                }
            }
        }
        raw.sort_unstable_by_key(|(i, j, _)| (*i, *j));
        let mut terms: Vec<(u32, u32, S)> = Vec::with_capacity(raw.len());
        for (i, j, c) in raw {
            match terms.last_mut() {
                Some((li, lj, lc)) if *li == i && *lj == j => {
                    *lc = lc.add(&c);
                }
                _ => terms.push((i, j, c)),
            }
        }
        terms.retain(|(_, _, c)| !c.is_zero());
        Ok(Form {
            dim: self.dim,
            terms,
        })
    }

    /// The sub-sum of terms with |I| = p and |J| = q; summing every component
    /// of a degree-k form over p + q = k reconstructs the form.
    pub fn bidegree_component(&self, p: usize, q: usize) -> Self {
        Form {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(i, j, _)| i.count_ones() as usize == p && j.count_ones() as usize == q)
                .cloned()
                .collect(),
        }
    }

    /// γ^p / p!, computed by repeated wedge with exact division at each step.
    pub fn power_over_factorial(&self, p: usize) -> Result<Self, FormError> {
        let mut acc = Form::constant(self.dim, S::one());
        for k in 1..=p {
            acc = acc.wedge(self)?;
            acc = Form {
                dim: acc.dim,
                terms: acc
                    .terms
                    .into_iter()
                    .map(|(i, j, c)| (i, j, c.div_int(k as i64)))
                    .collect(),
            };
        }
        Ok(acc)
    }
}

impl ExteriorForm {
    /// Largest coefficient magnitude, 0 for the zero form.
    pub fn max_abs(&self) -> f64 {
        self.terms
            .iter()
            .map(|(_, _, c)| c.norm())
            .fold(0.0, f64::max)
    }

    /// Drop terms whose magnitude is below `tol` times the largest one.
    pub fn prune(&self, tol: f64) -> Self {
        let cut = self.max_abs() * tol;
        Form {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(_, _, c)| c.norm() > cut)
                .cloned()
                .collect(),
        }
    }

    /// Max coefficient magnitude of the difference.
    pub fn distance(&self, other: &Self) -> f64 {
        self.sub(other).max_abs()
    }

    /// ∂τ = Σ z̄_j dz_j for τ = |z|².
    pub fn del_tau(z: &[Complex64]) -> Self {
        Form::from_terms(
            z.len(),
            z.iter()
                .enumerate()
                .map(|(j, zj)| (1u32 << j, 0u32, zj.conj())),
        )
    }

    /// ∂̄τ = Σ z_j dz̄_j for τ = |z|².
    pub fn del_bar_tau(z: &[Complex64]) -> Self {
        Form::from_terms(
            z.len(),
            z.iter().enumerate().map(|(j, zj)| (0u32, 1u32 << j, *zj)),
        )
    }

    /// dτ = ∂τ + ∂̄τ.
    pub fn d_tau(z: &[Complex64]) -> Self {
        Self::del_tau(z).add(&Self::del_bar_tau(z))
    }
}
