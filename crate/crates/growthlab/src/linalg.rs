//! Small dense complex matrices: just enough linear algebra for metric
//! coefficient matrices (solve, Cholesky, Hermitian eigenvalues).
//!
//! Matrices here are a handful of rows at most, so plain O(n³) routines with
//! partial pivoting are the right tool.

use num_complex::Complex64;

pub type CMatrix = Vec<Vec<Complex64>>;

pub fn identity(n: usize) -> CMatrix {
    (0..n)
        .map(|j| {
            (0..n)
                .map(|k| {
                    if j == k {
                        Complex64::new(1.0, 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
                .collect()
        })
        .collect()
}

pub fn matmul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (n, k) = (a.len(), b.len());
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![Complex64::new(0.0, 0.0); m]; n];
    for i in 0..n {
        for l in 0..k {
            let ail = a[i][l];
            if ail == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..m {
                out[i][j] += ail * b[l][j];
            }
        }
    }
    out
}

/// Conjugate transpose.
pub fn adjoint(a: &CMatrix) -> CMatrix {
    let n = a.len();
    let m = if n == 0 { 0 } else { a[0].len() };
    (0..m)
        .map(|j| (0..n).map(|i| a[i][j].conj()).collect())
        .collect()
}

/// Solve A·X = B by Gaussian elimination with partial pivoting.
/// Returns `None` when A is (numerically) singular.
pub fn solve(a: &CMatrix, b: &CMatrix) -> Option<CMatrix> {
    let n = a.len();
    let m = if n == 0 { 0 } else { b[0].len() };
    let mut aug: Vec<Vec<Complex64>> = (0..n)
        .map(|i| {
            let mut row = a[i].clone();
            row.extend_from_slice(&b[i]);
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&r1, &r2| {
                aug[r1][col]
                    .norm()
                    .partial_cmp(&aug[r2][col].norm())
                    .unwrap()
            })
            .unwrap();
        if aug[piv][col].norm() < 1e-300 {
            return None;
        }
        aug.swap(col, piv);
        let inv = Complex64::new(1.0, 0.0) / aug[col][col];
        for j in col..n + m {
            aug[col][j] *= inv;
        }
        for row in 0..n {
            if row != col {
                let f = aug[row][col];
                if f != Complex64::new(0.0, 0.0) {
                    for j in col..n + m {
                        let t = aug[col][j];
                        aug[row][j] -= f * t;
                    }
                }
            }
        }
    }
    Some((0..n).map(|i| aug[i][n..].to_vec()).collect())
}

/// Cholesky factor L (lower triangular, positive real diagonal) of a
/// Hermitian matrix, so that h = L·L^H. `None` when h is not positive
/// definite.
pub fn cholesky(h: &CMatrix) -> Option<CMatrix> {
    let n = h.len();
    let mut l = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for j in 0..n {
        let mut diag = h[j][j].re;
        for k in 0..j {
            diag -= l[j][k].norm_sqr();
        }
        if diag <= 0.0 || h[j][j].im.abs() > 1e-12 * (1.0 + h[j][j].re.abs()) {
            return None;
        }
        l[j][j] = Complex64::new(diag.sqrt(), 0.0);
        for i in j + 1..n {
            let mut s = h[i][j];
            for k in 0..j {
                s -= l[i][k] * l[j][k].conj();
            }
            l[i][j] = s / l[j][j];
        }
    }
    Some(l)
}

/// Eigenvalues of a Hermitian matrix, ascending.
///
/// Works on the real symmetric embedding [[Re, −Im], [Im, Re]] whose spectrum
/// is that of h with every eigenvalue doubled.
pub fn hermitian_eigenvalues(h: &CMatrix) -> Vec<f64> {
    hermitian_eigen(h).0
}

/// Eigenvalues (ascending) and matching unit eigenvectors of a Hermitian
/// matrix.
pub fn hermitian_eigen(h: &CMatrix) -> (Vec<f64>, Vec<Vec<Complex64>>) {
    let n = h.len();
    let mut m = vec![vec![0.0f64; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            m[i][j] = h[i][j].re;
            m[i][j + n] = -h[i][j].im;
            m[i + n][j] = h[i][j].im;
            m[i + n][j + n] = h[i][j].re;
        }
    }
    let (eig, vecs) = symmetric_eigen(&mut m);
    let mut order: Vec<usize> = (0..2 * n).collect();
    order.sort_by(|&a, &b| eig[a].partial_cmp(&eig[b]).unwrap());
    // Every eigenvalue appears twice in the embedding; take one
    // representative of each pair. The embedded eigenvector [x; y]
    // corresponds to the complex vector x + iy.
    let mut values = Vec::with_capacity(n);
    let mut vectors = Vec::with_capacity(n);
    for k in 0..n {
        let idx = order[2 * k];
        values.push((eig[order[2 * k]] + eig[order[2 * k + 1]]) / 2.0);
        let mut v: Vec<Complex64> = (0..n)
            .map(|i| Complex64::new(vecs[i][idx], vecs[i + n][idx]))
            .collect();
        let norm: f64 = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-300 {
            for c in &mut v {
                *c /= norm;
            }
        }
        vectors.push(v);
    }
    (values, vectors)
}

pub fn min_eigenvalue(h: &CMatrix) -> f64 {
    hermitian_eigenvalues(h)[0]
}

/// Cyclic Jacobi iteration for a real symmetric matrix, returning the
/// eigenvalues (diagonal) and the accumulated rotation matrix whose columns
/// are the eigenvectors.
fn symmetric_eigen(a: &mut [Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut v = vec![vec![0.0f64; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let scale: f64 = a
        .iter()
        .flat_map(|r| r.iter().map(|x| x.abs()))
        .fold(0.0, f64::max)
        .max(1.0);
    for _sweep in 0..60 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[p][q] * a[p][q];
            }
        }
        if off.sqrt() < 1e-14 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k][p];
                    let vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    ((0..n).map(|i| a[i][i]).collect(), v)
}
