//! Linear subspaces of `K^n` stored by their reduced row-echelon basis, so
//! two subspaces are equal exactly when their representations are.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{kernel, rref};
use crate::matrix::{format_vector, Matrix, Vector};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    // rows are the echelon basis; no zero rows
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Matrix::zeros(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Matrix::identity(ambient),
        }
    }

    /// Span of the given vectors.
    pub fn from_vectors<I>(ambient: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vector>,
    {
        let rows: Vec<Vector> = vectors.into_iter().collect();
        if let Some(bad) = rows.iter().find(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                found: bad.len(),
            });
        }
        if rows.is_empty() {
            return Ok(Self::zero(ambient));
        }
        let (r, pivots) = rref(&Matrix::from_rows(rows)?);
        let keep: Vec<usize> = (0..pivots.len()).collect();
        let all: Vec<usize> = (0..ambient).collect();
        Ok(Self {
            ambient,
            basis: r.select(&keep, &all),
        })
    }

    /// Span of the columns of `m`.
    pub fn column_space(m: &Matrix) -> Self {
        Self::from_vectors(m.rows(), m.columns()).expect("columns have the row count")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> Vec<Vector> {
        self.basis.row_vectors()
    }

    /// The echelon basis as matrix rows.
    pub fn basis_matrix(&self) -> &Matrix {
        &self.basis
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut rows = self.basis();
        rows.push(v.to_vec());
        let m = Matrix::from_rows(rows).expect("consistent widths");
        rref(&m).1.len() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis().iter().all(|v| other.contains(v))
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Self::from_vectors(self.ambient, self.basis().into_iter().chain(other.basis()))
    }

    /// Vectors orthogonal to every element under the coordinate dot product.
    pub fn annihilator(&self) -> Self {
        if self.is_zero() {
            return Self::full(self.ambient);
        }
        kernel(&self.basis)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        crate::linalg::solve_linear(&self.basis.transpose(), v).ok().flatten()
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.basis().iter().map(|v| format_vector(v)).collect();
        write!(f, "span{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int_vector;

    fn span(ambient: usize, vs: &[&[i64]]) -> Subspace {
        Subspace::from_vectors(ambient, vs.iter().map(|v| int_vector(v))).unwrap()
    }

    #[test]
    fn sum_and_intersection() {
        let u = span(2, &[&[1, 0]]);
        let v = span(2, &[&[0, 1]]);
        assert_eq!(u.sum(&v).unwrap(), Subspace::full(2));
        assert_eq!(u.intersect(&v).unwrap(), Subspace::zero(2));
        assert_eq!(u.sum(&u).unwrap(), u);
        assert_eq!(u.intersect(&u).unwrap(), u);

        let a = span(3, &[&[1, 0, 0], &[0, 1, 0]]);
        let b = span(3, &[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(a.intersect(&b).unwrap(), span(3, &[&[0, 1, 0]]));
    }

    #[test]
    fn canonical_representation() {
        let a = span(3, &[&[1, 1, 0], &[1, -1, 0]]);
        let b = span(3, &[&[2, 0, 0], &[0, 3, 0], &[1, 1, 0]]);
        assert_eq!(a, b);
        assert!(a.contains(&int_vector(&[5, 7, 0])));
        assert!(!a.contains(&int_vector(&[0, 0, 1])));
    }

    #[test]
    fn ambient_mismatch() {
        let a = Subspace::full(2);
        let b = Subspace::full(3);
        assert!(matches!(a.sum(&b), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(a.intersect(&b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn coordinates_in_basis() {
        let a = span(3, &[&[1, 0, 2], &[0, 1, 3]]);
        assert_eq!(a.coordinates(&int_vector(&[2, 1, 7])), Some(int_vector(&[2, 1])));
        assert_eq!(a.coordinates(&int_vector(&[0, 0, 1])), None);
    }
}
