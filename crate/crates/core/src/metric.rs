//! Symmetric bilinear forms, their signatures and orthogonal geometry, and
//! the pairing of a Lie algebra with a nondegenerate form.

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::flatness::LeviCivita;
use crate::linalg::{congruence_diagonalize, determinant, diagonal_inertia, kernel};
use crate::lie::LieAlgebra;
use crate::matrix::{is_zero_vector, scale_vector, sub_vectors, unit_vector, Matrix, Vector};
use crate::scalar::Scalar;
use crate::subspace::Subspace;

/// `(n_minus, n_zero, n_plus)`. A nondegenerate form of signature
/// `(p, q)` has `n_zero = 0`; Lorentzian is `(1, 0, n - 1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Signature {
    pub minus: usize,
    pub zero: usize,
    pub plus: usize,
}

impl Signature {
    pub fn new(minus: usize, zero: usize, plus: usize) -> Self {
        Self { minus, zero, plus }
    }

    pub fn dim(&self) -> usize {
        self.minus + self.zero + self.plus
    }

    /// Nondegenerate of signature `(2, n - 2)`.
    pub fn is_two_negative(&self) -> bool {
        self.zero == 0 && self.minus == 2
    }

    pub fn is_definite(&self) -> bool {
        self.zero == 0 && (self.minus == 0 || self.plus == 0)
    }
}

impl std::ops::Add for Signature {
    type Output = Signature;
    fn add(self, rhs: Signature) -> Signature {
        Signature::new(self.minus + rhs.minus, self.zero + rhs.zero, self.plus + rhs.plus)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero == 0 {
            write!(f, "({},{})", self.minus, self.plus)
        } else {
            write!(f, "({},{},{})", self.minus, self.zero, self.plus)
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BilinearForm {
    gram: Matrix,
    nondegenerate: bool,
}

impl BilinearForm {
    pub fn new(gram: Matrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let nondegenerate = gram.rows() == 0 || !determinant(&gram)?.is_zero();
        Ok(Self {
            gram,
            nondegenerate,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::new(Matrix::identity(n)).expect("identity is symmetric")
    }

    /// Diagonal form with the given entries.
    pub fn diagonal(entries: &[Scalar]) -> Self {
        Self::new(Matrix::diagonal(entries)).expect("diagonal is symmetric")
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.nondegenerate
    }

    pub fn eval(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        crate::matrix::dot(u, &self.gram.mul_vec(v))
    }

    pub fn norm(&self, u: &[Scalar]) -> Scalar {
        self.eval(u, u)
    }

    pub fn signature(&self) -> Signature {
        let (_, d) = congruence_diagonalize(&self.gram).expect("gram is symmetric");
        let (minus, zero, plus) = diagonal_inertia(&d);
        Signature::new(minus, zero, plus)
    }

    /// `{ v : f(v, w) = 0 for all w in W }`.
    pub fn orthogonal_complement(&self, w: &Subspace) -> Subspace {
        if w.is_zero() {
            return Subspace::full(self.dim());
        }
        kernel(&(w.basis_matrix() * &self.gram))
    }

    /// `W ∩ W⊥ != 0`.
    pub fn is_degenerate_on(&self, w: &Subspace) -> bool {
        !w.intersect(&self.orthogonal_complement(w))
            .expect("same ambient")
            .is_zero()
    }

    pub fn is_totally_isotropic(&self, w: &Subspace) -> bool {
        self.restrict(w).gram.is_zero()
    }

    /// The form restricted to `W`, in the echelon basis of `W`.
    pub fn restrict(&self, w: &Subspace) -> BilinearForm {
        let b = w.basis_matrix();
        let g = &(b * &self.gram) * &b.transpose();
        BilinearForm::new(g).expect("restriction of a symmetric form is symmetric")
    }

    /// Gram matrix in the basis given by the columns of `p`: `Pᵀ G P`.
    pub fn change_basis(&self, p: &Matrix) -> Result<BilinearForm> {
        if p.rows() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: p.rows(),
            });
        }
        BilinearForm::new(&(&p.transpose() * &self.gram) * p)
    }

    /// Adjoint `A*` of an endomorphism: `f(A u, v) = f(u, A* v)`.
    pub fn adjoint(&self, a: &Matrix) -> Result<Matrix> {
        let g_inv = crate::linalg::inverse(&self.gram).map_err(|_| Error::DegenerateForm)?;
        Ok(&(&g_inv * &a.transpose()) * &self.gram)
    }

    /// `f(A u, v) + f(u, A v) = 0` for all `u, v`.
    pub fn is_skew(&self, a: &Matrix) -> bool {
        let ga = &self.gram * a;
        (&ga + &ga.transpose()).is_zero()
    }

    /// Completes an isotropic `e` to a hyperbolic pair: returns `ē` with
    /// `f(ē, ē) = 0` and `f(e, ē) = 1`.
    ///
    /// Takes `w = x_j / f(e, x_j)` for the first basis vector with
    /// `f(e, x_j) != 0`, then `ē = w - f(w, w)/2 · e`.
    pub fn hyperbolic_pair(&self, e: &[Scalar]) -> Result<Vector> {
        if e.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: e.len(),
            });
        }
        if !self.nondegenerate {
            return Err(Error::DegenerateForm);
        }
        if is_zero_vector(e) {
            return Err(Error::ZeroVector);
        }
        if !self.norm(e).is_zero() {
            return Err(Error::NotIsotropic);
        }
        let ge = self.gram.transpose().mul_vec(e);
        let j = ge
            .iter()
            .position(|x| !x.is_zero())
            .ok_or(Error::DegenerateForm)?;
        let w = scale_vector(&ge[j].inv().expect("nonzero"), &unit_vector(self.dim(), j));
        let half = Scalar::from_ratio(1, 2);
        Ok(sub_vectors(&w, &scale_vector(&(&half * &self.norm(&w)), e)))
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::new(Matrix::block_diagonal(&self.gram, &other.gram)).expect("blocks are symmetric")
    }
}

/// A Lie algebra with a nondegenerate symmetric form.
#[derive(Debug)]
pub struct MetricLieAlgebra {
    algebra: LieAlgebra,
    form: BilinearForm,
    levi_civita: OnceLock<LeviCivita>,
}

impl Clone for MetricLieAlgebra {
    fn clone(&self) -> Self {
        Self {
            algebra: self.algebra.clone(),
            form: self.form.clone(),
            levi_civita: self.levi_civita.clone(),
        }
    }
}

impl PartialEq for MetricLieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.form == other.form
    }
}

impl MetricLieAlgebra {
    pub fn new(algebra: LieAlgebra, form: BilinearForm) -> Result<Self> {
        if algebra.dim() != form.dim() {
            return Err(Error::DimensionMismatch {
                expected: algebra.dim(),
                found: form.dim(),
            });
        }
        if !form.is_nondegenerate() {
            return Err(Error::DegenerateForm);
        }
        Ok(Self {
            algebra,
            form,
            levi_civita: OnceLock::new(),
        })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn signature(&self) -> Signature {
        self.form.signature()
    }

    /// Levi-Civita product, computed on first use.
    pub fn levi_civita(&self) -> &LeviCivita {
        self.levi_civita
            .get_or_init(|| LeviCivita::compute(&self.algebra, &self.form))
    }

    /// Algebra and form expressed in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix) -> Result<Self> {
        Self::new(self.algebra.change_basis(p)?, self.form.change_basis(p)?)
    }

    /// Orthogonal direct sum of metric Lie algebras.
    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::new(
            self.algebra.direct_sum(&other.algebra),
            self.form.direct_sum(&other.form),
        )
        .expect("sum of nondegenerate forms is nondegenerate")
    }

    pub fn center(&self) -> Subspace {
        self.algebra.center()
    }

    /// `Z(g) ∩ Z(g)⊥`.
    pub fn isotropic_center(&self) -> Subspace {
        let z = self.center();
        z.intersect(&self.form.orthogonal_complement(&z))
            .expect("same ambient")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int_vector;
    use crate::scalar::q;

    #[test]
    fn signature_examples() {
        assert_eq!(BilinearForm::identity(4).signature(), Signature::new(0, 0, 4));
        let h = BilinearForm::new(Matrix::from_ints(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(h.signature(), Signature::new(1, 0, 1));
        assert_eq!(h.signature().to_string(), "(1,1)");
    }

    #[test]
    fn nonsymmetric_rejected() {
        let err = BilinearForm::new(Matrix::from_ints(&[&[0, 1], &[0, 0]])).unwrap_err();
        assert_eq!(err, Error::NotSymmetric);
    }

    #[test]
    fn complements() {
        let f = BilinearForm::identity(3);
        assert!(f.orthogonal_complement(&Subspace::full(3)).is_zero());
        let w = Subspace::from_vectors(3, [int_vector(&[1, 0, 0])]).unwrap();
        assert_eq!(
            f.orthogonal_complement(&w),
            Subspace::from_vectors(3, [int_vector(&[0, 1, 0]), int_vector(&[0, 0, 1])]).unwrap()
        );
    }

    #[test]
    fn degeneracy_and_isotropy() {
        let f = BilinearForm::diagonal(&[q(-1, 1), q(1, 1)]);
        let null = Subspace::from_vectors(2, [int_vector(&[1, 1])]).unwrap();
        assert!(f.is_totally_isotropic(&null));
        assert!(f.is_degenerate_on(&null));
        let id = BilinearForm::identity(2);
        let line = Subspace::from_vectors(2, [int_vector(&[1, 0])]).unwrap();
        assert!(!id.is_degenerate_on(&line));
        assert!(!id.is_totally_isotropic(&line));
    }

    #[test]
    fn hyperbolic_pairs() {
        let h = BilinearForm::new(Matrix::from_ints(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(h.hyperbolic_pair(&int_vector(&[1, 0])).unwrap(), int_vector(&[0, 1]));

        let f = BilinearForm::diagonal(&[q(-1, 1), q(1, 1), q(1, 1)]);
        let e = int_vector(&[1, 1, 0]);
        let ebar = f.hyperbolic_pair(&e).unwrap();
        assert_eq!(ebar, vec![q(-1, 2), q(1, 2), q(0, 1)]);
        assert!(f.norm(&ebar).is_zero());
        assert!(f.eval(&e, &ebar).is_one());

        let id = BilinearForm::identity(2);
        assert_eq!(id.hyperbolic_pair(&int_vector(&[1, 0])).unwrap_err(), Error::NotIsotropic);
        assert_eq!(h.hyperbolic_pair(&int_vector(&[0, 0])).unwrap_err(), Error::ZeroVector);
    }

    #[test]
    fn skew_and_adjoint() {
        let f = BilinearForm::diagonal(&[q(-1, 1), q(1, 1)]);
        let boost = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert!(f.is_skew(&boost));
        let a = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
        let adj = f.adjoint(&a).unwrap();
        let (u, v) = (int_vector(&[2, 3]), int_vector(&[5, 7]));
        assert_eq!(f.eval(&a.mul_vec(&u), &v), f.eval(&u, &adj.mul_vec(&v)));
    }

    #[test]
    fn metric_algebra_requires_nondegenerate_form() {
        let g = LieAlgebra::abelian(2);
        let degenerate = BilinearForm::diagonal(&[q(1, 1), q(0, 1)]);
        assert_eq!(
            MetricLieAlgebra::new(g.clone(), degenerate).unwrap_err(),
            Error::DegenerateForm
        );
        assert!(matches!(
            MetricLieAlgebra::new(g, BilinearForm::identity(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
