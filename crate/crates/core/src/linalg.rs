//! Exact Gaussian elimination: echelon forms, linear solves, kernels,
//! inverses and congruence diagonalization of symmetric matrices.

use crate::error::{Error, Result};
use crate::matrix::{zero_vector, Matrix, Vector};
use crate::scalar::Scalar;
use crate::subspace::Subspace;

/// Reduced row-echelon form together with the pivot columns.
pub fn rref(a: &Matrix) -> (Matrix, Vec<usize>) {
    let (rows, cols) = (a.rows(), a.cols());
    let mut m: Vec<Vector> = a.row_vectors();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in m[r].iter_mut().skip(c) {
                *x = &*x * &inv;
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (Matrix::from_rows(m).unwrap_or_else(|_| Matrix::zeros(rows, cols)), pivots)
}

pub fn rank(a: &Matrix) -> usize {
    rref(a).1.len()
}

/// Some `x` with `A x = b`, or `None` when the system is inconsistent.
/// Free variables are set to zero.
pub fn solve_linear(a: &Matrix, b: &[Scalar]) -> Result<Option<Vector>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let n = a.cols();
    let augmented = Matrix::from_fn(a.rows(), n + 1, |i, j| {
        if j < n {
            a.get(i, j).clone()
        } else {
            b[i].clone()
        }
    });
    let (r, pivots) = rref(&augmented);
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = zero_vector(n);
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = r.get(row, n).clone();
    }
    Ok(Some(x))
}

/// Solution space of `A x = 0`, in canonical echelon form.
pub fn kernel(a: &Matrix) -> Subspace {
    let n = a.cols();
    let (r, pivots) = rref(a);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let vectors = free.iter().map(|&f| {
        let mut v = zero_vector(n);
        v[f] = Scalar::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -r.get(row, f);
        }
        v
    });
    Subspace::from_vectors(n, vectors).expect("kernel vectors have ambient length")
}

pub fn inverse(a: &Matrix) -> Result<Matrix> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    let n = a.rows();
    let augmented = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            a.get(i, j).clone()
        } else if j - n == i {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    });
    let (r, pivots) = rref(&augmented);
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(Error::Singular);
    }
    Ok(Matrix::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
}

pub fn determinant(a: &Matrix) -> Result<Scalar> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    let n = a.rows();
    let mut m = a.row_vectors();
    let mut det = Scalar::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Ok(Scalar::zero());
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det = &det * &m[c][c];
        let inv = m[c][c].inv().expect("nonzero pivot");
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..n {
                let delta = &f * &m[c][j];
                m[i][j] = &m[i][j] - &delta;
            }
        }
    }
    Ok(det)
}

// Apply the column operation `col_i += f * col_j` and the matching row
// operation to the symmetric matrix, and the column operation to `p`.
fn add_multiple(s: &mut [Vector], p: &mut [Vector], i: usize, j: usize, f: &Scalar) {
    let n = s.len();
    for row in s.iter_mut() {
        let delta = f * &row[j];
        row[i] = &row[i] + &delta;
    }
    let row_j = s[j].clone();
    for k in 0..n {
        let delta = f * &row_j[k];
        s[i][k] = &s[i][k] + &delta;
    }
    for row in p.iter_mut() {
        let delta = f * &row[j];
        row[i] = &row[i] + &delta;
    }
}

fn swap_both(s: &mut [Vector], p: &mut [Vector], i: usize, j: usize) {
    s.swap(i, j);
    for row in s.iter_mut() {
        row.swap(i, j);
    }
    for row in p.iter_mut() {
        row.swap(i, j);
    }
}

/// Invertible `P` and diagonal `D` with `Pᵀ S P = D`.
///
/// Pivots on the first nonzero diagonal entry; when the remaining diagonal
/// is zero but some off-diagonal `S[i][j]` is not, row/column `j` is first
/// added to `i` (first such pair in index order).
pub fn congruence_diagonalize(s: &Matrix) -> Result<(Matrix, Matrix)> {
    if !s.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = s.rows();
    let mut m = s.row_vectors();
    let mut p = Matrix::identity(n).row_vectors();
    for k in 0..n {
        let diag = (k..n).find(|&i| !m[i][i].is_zero());
        let pivot = match diag {
            Some(i) => i,
            None => {
                let off = (k..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !m[i][j].is_zero());
                let Some((i, j)) = off else { break };
                add_multiple(&mut m, &mut p, i, j, &Scalar::one());
                i
            }
        };
        if pivot != k {
            swap_both(&mut m, &mut p, pivot, k);
        }
        let inv = m[k][k].inv().expect("nonzero pivot");
        for r in k + 1..n {
            if m[r][k].is_zero() {
                continue;
            }
            let f = -(&m[r][k] * &inv);
            add_multiple(&mut m, &mut p, r, k, &f);
        }
    }
    let d = Matrix::from_rows(m)?;
    let p = Matrix::from_rows(p)?;
    Ok((p, d))
}

/// Counts of negative, zero and positive diagonal entries.
pub fn diagonal_inertia(d: &Matrix) -> (usize, usize, usize) {
    let mut counts = (0, 0, 0);
    for i in 0..d.rows().min(d.cols()) {
        let x = d.get(i, i);
        if x.is_negative() {
            counts.0 += 1;
        } else if x.is_zero() {
            counts.1 += 1;
        } else {
            counts.2 += 1;
        }
    }
    counts
}
