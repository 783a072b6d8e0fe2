//! Complex Lie algebras presented by holomorphic structure equations
//! dξ^k = Σ_{i<j} c^k_{ij} ξ^i ∧ ξ^j on a (1,0)-coframe ξ¹..ξⁿ, with the
//! conjugate equations following by conjugation.
//!
//! The exterior differential extends to the full bigraded algebra of
//! invariant forms by the Leibniz rule; d² = 0 is equivalent to the Jacobi
//! identity and is verified when a complex is built.

use serde::Deserialize;
use thiserror::Error;

use crate::form::{Form, Scalar};

use super::gaussian::GaussianRational;

/// Invariant form with exact Gaussian-rational coefficients over the
/// coframe ξ_I ∧ ξ̄_J.
pub type InvariantForm = Form<GaussianRational>;

#[derive(Debug, Error)]
pub enum LieError {
    #[error("Jacobi identity fails: d²ξ^{covector} has a nonzero ξ^{i}∧ξ^{j}∧ξ^{k} term")]
    JacobiFailure {
        covector: usize,
        i: usize,
        j: usize,
        k: usize,
    },
    #[error("structure constant index out of range in ({k},{i},{j}): dim is {dim}")]
    IndexOutOfRange {
        k: usize,
        i: usize,
        j: usize,
        dim: usize,
    },
    #[error("structure file: {0}")]
    Parse(String),
    #[error("form is not closed (dα ≠ 0)")]
    NotClosed,
    #[error("form is not real (conj ≠ identity)")]
    NotReal,
    #[error("expected a form of bidegree ({p},{q})")]
    WrongBidegree { p: usize, q: usize },
    #[error("{0}")]
    Unsupported(String),
}

/// A complex Lie algebra in coframe presentation.
#[derive(Debug, Clone)]
pub struct ComplexLieAlgebra {
    dim: usize,
    labels: Vec<String>,
    /// dξ^k as a (2,0)-form, k = 0..dim.
    d_xi: Vec<InvariantForm>,
}

impl ComplexLieAlgebra {
    /// Build from constants (k, i, j, c) meaning dξ^k += c·ξ^i∧ξ^j, indices
    /// 1-based and in either order (i > j is normalised by antisymmetry).
    pub fn from_constants(
        dim: usize,
        constants: &[(usize, usize, usize, GaussianRational)],
        labels: Option<Vec<String>>,
    ) -> Result<Self, LieError> {
        let mut d_xi = vec![InvariantForm::zero(dim); dim];
        for (k, i, j, c) in constants {
            if *k == 0 || *k > dim || *i == 0 || *i > dim || *j == 0 || *j > dim || i == j {
                return Err(LieError::IndexOutOfRange {
                    k: *k,
                    i: *i,
                    j: *j,
                    dim,
                });
            }
            let (lo, hi, coeff) = if i < j {
                (*i - 1, *j - 1, c.clone())
            } else {
                (*j - 1, *i - 1, c.neg())
            };
            d_xi[*k - 1].push_term((1 << lo) | (1 << hi), 0, coeff);
        }
        let labels = labels.unwrap_or_else(|| (1..=dim).map(|k| format!("xi{k}")).collect());
        Ok(ComplexLieAlgebra { dim, labels, d_xi })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// dξ^k (0-based k).
    pub fn d_generator(&self, k: usize) -> &InvariantForm {
        &self.d_xi[k]
    }

    /// Exterior differential of an arbitrary invariant form by the Leibniz
    /// rule.
    pub fn d(&self, form: &InvariantForm) -> InvariantForm {
        let n = self.dim;
        let mut out = InvariantForm::zero(n);
        for (hol, anti, coeff) in form.terms() {
            // Walk the generators of the monomial in normal-form order.
            let mut position = 0u32;
            let mut rest = hol;
            while rest != 0 {
                let a = rest.trailing_zeros();
                rest &= rest - 1;
                let d_gen = self.d_xi[a as usize].clone();
                out = out.add(&monomial_replace(
                    n, hol, anti, a, false, &d_gen, coeff, position,
                ));
                position += 1;
            }
            let mut rest = anti;
            while rest != 0 {
                let a = rest.trailing_zeros();
                rest &= rest - 1;
                let d_gen = self.d_xi[a as usize].conj();
                out = out.add(&monomial_replace(
                    n, hol, anti, a, true, &d_gen, coeff, position,
                ));
                position += 1;
            }
        }
        out
    }

    /// ∂: the (p+1, q) components of d applied per bidegree.
    pub fn del(&self, form: &InvariantForm) -> InvariantForm {
        self.split_d(form, true)
    }

    /// ∂̄: the (p, q+1) components of d applied per bidegree.
    pub fn del_bar(&self, form: &InvariantForm) -> InvariantForm {
        self.split_d(form, false)
    }

    fn split_d(&self, form: &InvariantForm, holomorphic: bool) -> InvariantForm {
        let n = self.dim;
        let mut out = InvariantForm::zero(n);
        // Group terms by bidegree, apply d, keep the requested component.
        let mut seen: Vec<(usize, usize)> = Vec::new();
        for (i, j, _) in form.terms() {
            let pq = (i.count_ones() as usize, j.count_ones() as usize);
            if !seen.contains(&pq) {
                seen.push(pq);
            }
        }
        for (p, q) in seen {
            let comp = form.bidegree_component(p, q);
            let d_comp = self.d(&comp);
            let kept = if holomorphic {
                d_comp.bidegree_component(p + 1, q)
            } else {
                d_comp.bidegree_component(p, q + 1)
            };
            out = out.add(&kept);
        }
        out
    }

    /// Verify d∘d = 0 on every generator; reports the offending covector and
    /// degree-3 monomial on failure.
    pub fn check_jacobi(&self) -> Result<(), LieError> {
        for k in 0..self.dim {
            let dd = self.d(&self.d_xi[k]);
            if !dd.is_zero() {
                let (hol, _, _) = dd.terms().next().unwrap();
                let mut idx = Vec::new();
                for b in 0..self.dim {
                    if hol & (1 << b) != 0 {
                        idx.push(b + 1);
                    }
                }
                while idx.len() < 3 {
                    idx.push(0);
                }
                return Err(LieError::JacobiFailure {
                    covector: k + 1,
                    i: idx[0],
                    j: idx[1],
                    k: idx[2],
                });
            }
        }
        Ok(())
    }

    /// The standard diagonal invariant metric ω = (i/2) Σ ξ^a ∧ ξ̄^a.
    pub fn standard_metric(&self) -> InvariantForm {
        let half_i = GaussianRational::from_fraction(0, 1, 1, 2);
        Form::from_terms(
            self.dim,
            (0..self.dim).map(|a| (1u32 << a, 1u32 << a, half_i.clone())),
        )
    }
}

/// d(prefix ∧ gen ∧ suffix) contribution for one generator: sign (−1)^pos ·
/// prefix-and-suffix monomial wedged with d(gen) in place.
#[allow(clippy::too_many_arguments)]
fn monomial_replace(
    n: usize,
    hol: u32,
    anti: u32,
    gen: u32,
    gen_is_anti: bool,
    d_gen: &InvariantForm,
    coeff: &GaussianRational,
    position: u32,
) -> InvariantForm {
    // Build the monomial without the generator, as (left part) ∧ (right part)
    // where d(gen) slots into the generator's position with sign (−1)^pos.
    let (rem_hol, rem_anti) = if gen_is_anti {
        (hol, anti & !(1 << gen))
    } else {
        (hol & !(1 << gen), anti)
    };
    let mut c = coeff.clone();
    if position % 2 == 1 {
        c = c.neg();
    }
    // d(gen) has even degree, so prefix ∧ d(gen) ∧ suffix = d(gen) ∧ remainder.
    let remainder = InvariantForm::from_terms(n, [(rem_hol, rem_anti, c)]);
    d_gen.wedge(&remainder).expect("same dimension")
}

// --- gallery algebras -------------------------------------------------------

fn one() -> GaussianRational {
    GaussianRational::from_ints(1, 0)
}

/// sl(2,ℂ): dξ¹ = ξ²∧ξ³, dξ² = ξ³∧ξ¹, dξ³ = ξ¹∧ξ².
pub fn sl2c_algebra() -> ComplexLieAlgebra {
    ComplexLieAlgebra::from_constants(
        3,
        &[(1, 2, 3, one()), (2, 3, 1, one()), (3, 1, 2, one())],
        Some(vec!["alpha".into(), "beta".into(), "gamma".into()]),
    )
    .expect("valid constants")
}

/// The Heisenberg algebra underlying the Iwasawa quotient:
/// dξ³ = −ξ¹∧ξ², dξ¹ = dξ² = 0 (from γ = dz₃ − z₁dz₂).
pub fn heisenberg_algebra() -> ComplexLieAlgebra {
    ComplexLieAlgebra::from_constants(
        3,
        &[(3, 1, 2, one().neg())],
        Some(vec!["alpha".into(), "beta".into(), "gamma".into()]),
    )
    .expect("valid constants")
}

/// Abelian algebra of dimension n: every differential vanishes.
pub fn abelian_algebra(n: usize) -> ComplexLieAlgebra {
    ComplexLieAlgebra::from_constants(n, &[], None).expect("valid constants")
}

/// The solvable non-nilpotent algebra of the Nakamura quotients:
/// dξ² = −ξ¹∧ξ², dξ³ = ξ¹∧ξ³ (from η₂ = e^{−z₁}dz₂, η₃ = e^{z₁}dz₃).
pub fn nakamura_algebra() -> ComplexLieAlgebra {
    ComplexLieAlgebra::from_constants(
        3,
        &[(2, 1, 2, one().neg()), (3, 1, 3, one())],
        Some(vec!["eta1".into(), "eta2".into(), "eta3".into()]),
    )
    .expect("valid constants")
}

// --- JSON structure-constant files ------------------------------------------

#[derive(Deserialize)]
struct StructureFileRaw {
    dim: usize,
    constants: Vec<Vec<serde_json::Value>>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

/// Parse `{dim, constants: [[k,i,j,re,im], ...], labels}` where re/im may be
/// integers, floats (must be dyadic-exact) or fraction strings "p/q".
pub fn parse_structure_json(text: &str) -> Result<ComplexLieAlgebra, LieError> {
    let raw: StructureFileRaw =
        serde_json::from_str(text).map_err(|e| LieError::Parse(e.to_string()))?;
    let mut constants = Vec::with_capacity(raw.constants.len());
    for (row_idx, row) in raw.constants.iter().enumerate() {
        if row.len() != 5 {
            return Err(LieError::Parse(format!(
                "constants[{row_idx}]: expected 5 entries [k,i,j,re,im], found {}",
                row.len()
            )));
        }
        let idx = |slot: usize| -> Result<usize, LieError> {
            row[slot].as_u64().map(|v| v as usize).ok_or_else(|| {
                LieError::Parse(format!(
                    "constants[{row_idx}][{slot}]: expected a positive integer index"
                ))
            })
        };
        let scalar = |slot: usize| -> Result<GaussianRational, LieError> {
            match &row[slot] {
                serde_json::Value::Number(n) => {
                    let x = n.as_f64().unwrap();
                    GaussianRational::from_f64_exact(x).ok_or_else(|| {
                        LieError::Parse(format!("constants[{row_idx}][{slot}]: non-finite number"))
                    })
                }
                serde_json::Value::String(s) => {
                    GaussianRational::parse_real(s).ok_or_else(|| {
                        LieError::Parse(format!(
                            "constants[{row_idx}][{slot}]: cannot parse fraction `{s}`"
                        ))
                    })
                }
                other => Err(LieError::Parse(format!(
                    "constants[{row_idx}][{slot}]: expected number or fraction string, found {other}"
                ))),
            }
        };
        let (k, i, j) = (idx(0)?, idx(1)?, idx(2)?);
        let re = scalar(3)?;
        let im = scalar(4)?;
        constants.push((k, i, j, GaussianRational::new(re.re, im.re)));
    }
    ComplexLieAlgebra::from_constants(raw.dim, &constants, raw.labels)
}

/// Render dξ^k in terms of the labels, e.g. `d alpha = beta∧gamma`.
pub fn structure_equation_strings(algebra: &ComplexLieAlgebra) -> Vec<String> {
    let n = algebra.dim();
    (0..n)
        .map(|k| {
            let d = algebra.d_generator(k);
            if d.is_zero() {
                return format!("d {} = 0", algebra.labels()[k]);
            }
            let mut parts = Vec::new();
            for (hol, _, c) in d.terms() {
                let mut gens = Vec::new();
                for b in 0..n {
                    if hol & (1 << b) != 0 {
                        gens.push(algebra.labels()[b].clone());
                    }
                }
                let coeff = c.to_fraction_string();
                let mono = gens.join("∧");
                if coeff == "1" {
                    parts.push(mono);
                } else if coeff == "-1" {
                    parts.push(format!("-{mono}"));
                } else {
                    parts.push(format!("({coeff})·{mono}"));
                }
            }
            format!("d {} = {}", algebra.labels()[k], parts.join(" + "))
        })
        .collect()
}
