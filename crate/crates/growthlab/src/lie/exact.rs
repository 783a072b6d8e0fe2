//! Exact dense linear algebra over ℚ(i): rank, solving, nullspaces and
//! column-span reduction by Gauss–Jordan elimination. Entries are exact, so
//! any nonzero pivot is a valid pivot.

use crate::form::Scalar;

use super::gaussian::GaussianRational;

pub type GMatrix = Vec<Vec<GaussianRational>>;

pub fn zeros(rows: usize, cols: usize) -> GMatrix {
    vec![vec![GaussianRational::zero(); cols]; rows]
}

pub fn mat_mul(a: &GMatrix, b: &GMatrix) -> GMatrix {
    let rows = a.len();
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    let mut out = zeros(rows, cols);
    for i in 0..rows {
        for l in 0..inner {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..cols {
                if b[l][j].is_zero() {
                    continue;
                }
                out[i][j] = out[i][j].add(&a[i][l].mul(&b[l][j]));
            }
        }
    }
    out
}

pub fn is_zero_matrix(a: &GMatrix) -> bool {
    a.iter().all(|row| row.iter().all(|x| x.is_zero()))
}

/// Row-reduce in place; returns the pivot columns.
fn row_reduce(mat: &mut GMatrix) -> Vec<usize> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][c].inv().expect("nonzero pivot");
        for j in c..cols {
            mat[r][j] = mat[r][j].mul(&inv);
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in c..cols {
                    let t = mat[r][j].mul(&f);
                    mat[i][j] = mat[i][j].sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank(mat: &GMatrix) -> usize {
    let mut m = mat.clone();
    row_reduce(&mut m).len()
}

/// One solution of A·x = b, or `None` when the system is inconsistent.
pub fn solve(a: &GMatrix, b: &[GaussianRational]) -> Option<Vec<GaussianRational>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut aug: GMatrix = (0..rows)
        .map(|i| {
            let mut row = a[i].clone();
            row.push(b[i].clone());
            row
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    // Inconsistent iff a pivot lands in the appended column.
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![GaussianRational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    Some(x)
}

/// Rank of A and of the augmented [A | b], certifying (in)feasibility.
pub fn rank_certificate(a: &GMatrix, b: &[GaussianRational]) -> (usize, usize) {
    let ra = rank(a);
    let rows = a.len();
    let aug: GMatrix = (0..rows)
        .map(|i| {
            let mut row = a[i].clone();
            row.push(b[i].clone());
            row
        })
        .collect();
    (ra, rank(&aug))
}

/// Basis of the nullspace of A (as column vectors).
pub fn nullspace(a: &GMatrix) -> Vec<Vec<GaussianRational>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m = a.clone();
    let pivots = row_reduce(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut v = vec![GaussianRational::zero(); cols];
        v[fc] = GaussianRational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = m[r][fc].neg();
        }
        basis.push(v);
    }
    basis
}

/// Canonical residual of `v` modulo the column span of `span`. Two vectors
/// are congruent modulo the span iff their residuals are equal; the zero
/// residual means membership.
pub fn reduce_mod_span(span: &GMatrix, v: &[GaussianRational]) -> Vec<GaussianRational> {
    let rows = v.len();
    let cols = if span.is_empty() { 0 } else { span[0].len() };
    // Row-reduce the transpose: each reduced row is a span vector with a
    // leading 1 at its pivot coordinate and zeros at all other pivots, so
    // the elimination below is order-independent and canonical.
    let mut t: GMatrix = (0..cols)
        .map(|c| (0..rows).map(|r| span[r][c].clone()).collect())
        .collect();
    let pivots = row_reduce(&mut t);
    let mut res: Vec<GaussianRational> = v.to_vec();
    for (r, &p) in pivots.iter().enumerate() {
        if res[p].is_zero() {
            continue;
        }
        let f = res[p].clone();
        for c in 0..rows {
            let step = t[r][c].mul(&f);
            res[c] = res[c].sub(&step);
        }
    }
    res
}

/// Leading principal minors of a Hermitian matrix over ℚ(i); `None` when a
/// minor fails to be real (i.e. the matrix was not Hermitian).
pub fn leading_principal_minors(h: &GMatrix) -> Option<Vec<GaussianRational>> {
    let n = h.len();
    let mut minors = Vec::with_capacity(n);
    for k in 1..=n {
        let sub: GMatrix = (0..k).map(|i| h[i][..k].to_vec()).collect();
        let d = det(&sub);
        if !d.is_real() {
            return None;
        }
        minors.push(d);
    }
    Some(minors)
}

/// Exact determinant by fraction-based Gaussian elimination.
pub fn det(a: &GMatrix) -> GaussianRational {
    let n = a.len();
    let mut m = a.clone();
    let mut d = GaussianRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return GaussianRational::zero();
        };
        if p != c {
            m.swap(p, c);
            d = d.neg();
        }
        d = d.mul(&m[c][c]);
        let inv = m[c][c].inv().expect("nonzero");
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].mul(&inv);
            for j in c..n {
                let t = m[c][j].mul(&f);
                m[i][j] = m[i][j].sub(&t);
            }
        }
    }
    d
}

/// Exact positive-definiteness of a Hermitian matrix by Sylvester's
/// criterion.
pub fn is_positive_definite(h: &GMatrix) -> bool {
    match leading_principal_minors(h) {
        Some(minors) => minors.iter().all(|m| m.is_positive_real()),
        None => false,
    }
}
