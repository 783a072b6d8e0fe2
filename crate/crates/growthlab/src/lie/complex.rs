//! The Chevalley–Eilenberg bicomplex of invariant forms: per-bidegree
//! monomial bases in lexicographic multi-index order and the exact matrices
//! of ∂ and ∂̄ between them.

use std::collections::HashMap;

use crate::form::Scalar;

use super::algebra::{ComplexLieAlgebra, InvariantForm, LieError};
use super::exact::{self, GMatrix};
use super::gaussian::GaussianRational;

/// Basis monomials (I, J) of bidegree (p, q), ascending in (I, J).
pub fn bidegree_basis(n: usize, p: usize, q: usize) -> Vec<(u32, u32)> {
    let masks = |k: usize| -> Vec<u32> {
        (0u32..(1 << n))
            .filter(|m| m.count_ones() as usize == k)
            .collect()
    };
    let his = masks(p);
    let ais = masks(q);
    let mut out = Vec::with_capacity(his.len() * ais.len());
    for &i in &his {
        for &j in &ais {
            out.push((i, j));
        }
    }
    out.sort_unstable();
    out
}

/// The bicomplex: bases and differential matrices, built once per algebra.
pub struct InvariantComplex {
    algebra: ComplexLieAlgebra,
    bases: HashMap<(usize, usize), Vec<(u32, u32)>>,
    index: HashMap<(usize, usize), HashMap<(u32, u32), usize>>,
    /// ∂ from (p,q) to (p+1,q).
    del: HashMap<(usize, usize), GMatrix>,
    /// ∂̄ from (p,q) to (p,q+1).
    del_bar: HashMap<(usize, usize), GMatrix>,
}

/// Build the bicomplex, verifying the Jacobi identity and the matrix
/// identities ∂² = 0, ∂̄² = 0 and ∂∂̄ = −∂̄∂ on every bidegree.
pub fn build_complex(algebra: ComplexLieAlgebra) -> Result<InvariantComplex, LieError> {
    algebra.check_jacobi()?;
    let n = algebra.dim();
    let mut bases = HashMap::new();
    let mut index = HashMap::new();
    for p in 0..=n {
        for q in 0..=n {
            let b = bidegree_basis(n, p, q);
            let idx: HashMap<(u32, u32), usize> =
                b.iter().enumerate().map(|(pos, key)| (*key, pos)).collect();
            bases.insert((p, q), b);
            index.insert((p, q), idx);
        }
    }
    let mut del = HashMap::new();
    let mut del_bar = HashMap::new();
    for p in 0..=n {
        for q in 0..=n {
            let src = &bases[&(p, q)];
            if p < n {
                del.insert(
                    (p, q),
                    operator_matrix(&algebra, src, &index[&(p + 1, q)], true),
                );
            }
            if q < n {
                del_bar.insert(
                    (p, q),
                    operator_matrix(&algebra, src, &index[&(p, q + 1)], false),
                );
            }
        }
    }
    let complex = InvariantComplex {
        algebra,
        bases,
        index,
        del,
        del_bar,
    };
    complex.verify_squares()?;
    Ok(complex)
}

fn operator_matrix(
    algebra: &ComplexLieAlgebra,
    source: &[(u32, u32)],
    target_index: &HashMap<(u32, u32), usize>,
    holomorphic: bool,
) -> GMatrix {
    let rows = target_index.len();
    let mut mat = exact::zeros(rows, source.len());
    for (col, &(i, j)) in source.iter().enumerate() {
        let mono = InvariantForm::from_terms(algebra.dim(), [(i, j, GaussianRational::one())]);
        let image = if holomorphic {
            algebra.del(&mono)
        } else {
            algebra.del_bar(&mono)
        };
        for (ti, tj, c) in image.terms() {
            let row = target_index[&(ti, tj)];
            mat[row][col] = c.clone();
        }
    }
    mat
}

impl InvariantComplex {
    pub fn algebra(&self) -> &ComplexLieAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn basis(&self, p: usize, q: usize) -> &[(u32, u32)] {
        &self.bases[&(p, q)]
    }

    /// Matrix of ∂ from (p,q); `None` past the top row.
    pub fn del_matrix(&self, p: usize, q: usize) -> Option<&GMatrix> {
        self.del.get(&(p, q))
    }

    /// Matrix of ∂̄ from (p,q); `None` past the top column.
    pub fn del_bar_matrix(&self, p: usize, q: usize) -> Option<&GMatrix> {
        self.del_bar.get(&(p, q))
    }

    /// Coordinates of a pure-(p,q) form in the stored basis.
    pub fn coordinates(&self, form: &InvariantForm, p: usize, q: usize) -> Vec<GaussianRational> {
        let idx = &self.index[&(p, q)];
        let mut v = vec![GaussianRational::zero(); idx.len()];
        for (i, j, c) in form.bidegree_component(p, q).terms() {
            v[idx[&(i, j)]] = c.clone();
        }
        v
    }

    /// The form with the given coordinates at bidegree (p,q).
    pub fn from_coordinates(
        &self,
        coords: &[GaussianRational],
        p: usize,
        q: usize,
    ) -> InvariantForm {
        let basis = &self.bases[&(p, q)];
        InvariantForm::from_terms(
            self.dim(),
            basis
                .iter()
                .zip(coords.iter())
                .filter(|(_, c)| !c.is_zero())
                .map(|(&(i, j), c)| (i, j, c.clone())),
        )
    }

    /// All monomials of a fixed total degree, ordered by (p,q) then basis.
    pub fn total_degree_basis(&self, k: usize) -> Vec<(u32, u32)> {
        let n = self.dim();
        let mut out = Vec::new();
        for p in 0..=k.min(n) {
            let q = k - p;
            if q <= n {
                out.extend(self.bases[&(p, q)].iter().copied());
            }
        }
        out
    }

    /// Matrix of d on the full total-degree space Λ^k → Λ^{k+1}.
    pub fn d_matrix_total(&self, k: usize) -> GMatrix {
        let src = self.total_degree_basis(k);
        let tgt = self.total_degree_basis(k + 1);
        let tgt_index: HashMap<(u32, u32), usize> = tgt
            .iter()
            .enumerate()
            .map(|(pos, key)| (*key, pos))
            .collect();
        let mut mat = exact::zeros(tgt.len(), src.len());
        for (col, &(i, j)) in src.iter().enumerate() {
            let mono = InvariantForm::from_terms(self.dim(), [(i, j, GaussianRational::one())]);
            for (ti, tj, c) in self.algebra.d(&mono).terms() {
                mat[tgt_index[&(ti, tj)]][col] = c.clone();
            }
        }
        mat
    }

    /// Coordinates of a degree-k form in the total-degree basis.
    pub fn total_coordinates(&self, form: &InvariantForm, k: usize) -> Vec<GaussianRational> {
        let basis = self.total_degree_basis(k);
        let index: HashMap<(u32, u32), usize> = basis
            .iter()
            .enumerate()
            .map(|(pos, key)| (*key, pos))
            .collect();
        let mut v = vec![GaussianRational::zero(); basis.len()];
        for (i, j, c) in form.terms() {
            v[index[&(i, j)]] = c.clone();
        }
        v
    }

    fn verify_squares(&self) -> Result<(), LieError> {
        let n = self.dim();
        for p in 0..n {
            for q in 0..=n {
                if let (Some(a), Some(b)) = (self.del_matrix(p, q), self.del_matrix(p + 1, q)) {
                    if !exact::is_zero_matrix(&exact::mat_mul(b, a)) {
                        return Err(LieError::Unsupported(format!(
                            "∂² ≠ 0 out of bidegree ({p},{q})"
                        )));
                    }
                }
            }
        }
        for p in 0..=n {
            for q in 0..n {
                if let (Some(a), Some(b)) =
                    (self.del_bar_matrix(p, q), self.del_bar_matrix(p, q + 1))
                {
                    if !exact::is_zero_matrix(&exact::mat_mul(b, a)) {
                        return Err(LieError::Unsupported(format!(
                            "∂̄² ≠ 0 out of bidegree ({p},{q})"
                        )));
                    }
                }
            }
        }
        for p in 0..n {
            for q in 0..n {
                let db_then_d = exact::mat_mul(
                    self.del_matrix(p, q + 1).unwrap(),
                    self.del_bar_matrix(p, q).unwrap(),
                );
                let d_then_db = exact::mat_mul(
                    self.del_bar_matrix(p + 1, q).unwrap(),
                    self.del_matrix(p, q).unwrap(),
                );
                let sum: GMatrix = db_then_d
                    .iter()
                    .zip(&d_then_db)
                    .map(|(r1, r2)| r1.iter().zip(r2).map(|(x, y)| x.add(y)).collect())
                    .collect();
                if !exact::is_zero_matrix(&sum) {
                    return Err(LieError::Unsupported(format!(
                        "∂∂̄ ≠ −∂̄∂ out of bidegree ({p},{q})"
                    )));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::algebra::{abelian_algebra, heisenberg_algebra, sl2c_algebra};

    #[test]
    fn bases_have_binomial_sizes() {
        let b = bidegree_basis(3, 1, 1);
        assert_eq!(b.len(), 9);
        let b = bidegree_basis(3, 2, 2);
        assert_eq!(b.len(), 9);
        assert!(b.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn complexes_build_for_gallery_algebras() {
        for algebra in [sl2c_algebra(), heisenberg_algebra(), abelian_algebra(3)] {
            let c = build_complex(algebra).unwrap();
            // d of the standard metric splits correctly through matrices.
            let omega = c.algebra().standard_metric();
            let coords = c.coordinates(&omega, 1, 1);
            let image = exact::mat_mul(
                c.del_matrix(1, 1).unwrap(),
                &coords.iter().map(|x| vec![x.clone()]).collect::<Vec<_>>(),
            );
            let direct = c.coordinates(&c.algebra().del(&omega), 2, 1);
            for (row, want) in image.iter().zip(direct) {
                assert_eq!(row[0], want);
            }
        }
    }

    #[test]
    fn abelian_complex_has_zero_differentials() {
        let c = build_complex(abelian_algebra(2)).unwrap();
        for p in 0..2 {
            for q in 0..=2 {
                if let Some(m) = c.del_matrix(p, q) {
                    assert!(exact::is_zero_matrix(m));
                }
            }
        }
    }

    #[test]
    fn total_degree_d_squares_to_zero() {
        let c = build_complex(sl2c_algebra()).unwrap();
        for k in 0..5 {
            let d1 = c.d_matrix_total(k);
            let d2 = c.d_matrix_total(k + 1);
            assert!(
                exact::is_zero_matrix(&exact::mat_mul(&d2, &d1)),
                "degree {k}"
            );
        }
    }
}
