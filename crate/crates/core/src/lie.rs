//! Lie algebras given by structure constants in a fixed basis `x_1..x_n`.
//!
//! Only the brackets `[x_i, x_j]` with `i < j` are stored; the others follow
//! from antisymmetry. Indices are 0-based in the API and 1-based in text.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{inverse, kernel};
use crate::matrix::{add_vectors, is_zero_vector, scale_vector, zero_vector, Matrix, Vector};
use crate::scalar::Scalar;
use crate::subspace::Subspace;

#[derive(Clone, Debug)]
pub struct LieAlgebra {
    dim: usize,
    consts: Vec<Vector>,
    name: Option<String>,
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl PartialEq for LieAlgebra {
    /// Equality of structure constants; the name is a label only.
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.consts == other.consts
    }
}

impl Eq for LieAlgebra {}

impl LieAlgebra {
    /// Builds the algebra from nonzero brackets `[x_i, x_j] = v` (0-based)
    /// and checks the Jacobi identity. Entries with `i > j` are mirrored;
    /// repeated pairs overwrite earlier ones.
    pub fn new<I>(dim: usize, brackets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Vector)>,
    {
        let g = Self::from_brackets_unchecked(dim, brackets)?;
        if let Some((i, j, k)) = g.jacobi_violation() {
            return Err(Error::Jacobi(i + 1, j + 1, k + 1));
        }
        Ok(g)
    }

    /// As [`LieAlgebra::new`] without the Jacobi check.
    pub fn from_brackets_unchecked<I>(dim: usize, brackets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Vector)>,
    {
        let mut consts = vec![zero_vector(dim); dim * dim.saturating_sub(1) / 2];
        for (i, j, v) in brackets {
            if i >= dim || j >= dim {
                return Err(Error::InvalidParameter(format!(
                    "bracket index ({}, {}) outside dimension {dim}",
                    i + 1,
                    j + 1
                )));
            }
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
            if i == j {
                if is_zero_vector(&v) {
                    continue;
                }
                return Err(Error::InvalidParameter(format!(
                    "[x{0}, x{0}] must vanish",
                    i + 1
                )));
            }
            if i < j {
                consts[pair_index(dim, i, j)] = v;
            } else {
                consts[pair_index(dim, j, i)] = v.iter().map(|x| -x).collect();
            }
        }
        Ok(Self {
            dim,
            consts,
            name: None,
        })
    }

    pub fn abelian(dim: usize) -> Self {
        Self::from_brackets_unchecked(dim, []).expect("no brackets")
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `[x_i, x_j]` in coordinates.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vector {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.consts[pair_index(self.dim, i, j)].clone(),
            std::cmp::Ordering::Greater => self.consts[pair_index(self.dim, j, i)]
                .iter()
                .map(|x| -x)
                .collect(),
            std::cmp::Ordering::Equal => zero_vector(self.dim),
        }
    }

    /// Nonzero brackets `(i, j, [x_i, x_j])` with `i < j`, in index order.
    pub fn nonzero_brackets(&self) -> impl Iterator<Item = (usize, usize, &Vector)> + '_ {
        let n = self.dim;
        (0..n)
            .flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
            .map(move |(i, j)| (i, j, &self.consts[pair_index(n, i, j)]))
            .filter(|(_, _, v)| !is_zero_vector(v))
    }

    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vector> {
        for w in [u, v] {
            if w.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: w.len(),
                });
            }
        }
        Ok(self.br(u, v))
    }

    pub(crate) fn br(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        let n = self.dim;
        let mut out = zero_vector(n);
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if i == j || v[j].is_zero() {
                    continue;
                }
                let c = &u[i] * &v[j];
                let b = self.basis_bracket(i, j);
                if !is_zero_vector(&b) {
                    out = add_vectors(&out, &scale_vector(&c, &b));
                }
            }
        }
        out
    }

    /// Matrix of `ad_u = [u, .]`.
    pub fn ad(&self, u: &[Scalar]) -> Matrix {
        let n = self.dim;
        let cols: Vec<Vector> = (0..n)
            .map(|j| self.br(u, &crate::matrix::unit_vector(n, j)))
            .collect();
        Matrix::from_columns(n, &cols).expect("bracket has length n")
    }

    pub fn ad_basis(&self, i: usize) -> Matrix {
        let n = self.dim;
        let cols: Vec<Vector> = (0..n).map(|j| self.basis_bracket(i, j)).collect();
        Matrix::from_columns(n, &cols).expect("bracket has length n")
    }

    pub fn is_abelian(&self) -> bool {
        self.consts.iter().all(|v| is_zero_vector(v))
    }

    /// First basis triple `i < j < k` with a nonzero cyclic sum.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let t1 = self.br(&self.basis_bracket(i, j), &crate::matrix::unit_vector(n, k));
                    let t2 = self.br(&self.basis_bracket(j, k), &crate::matrix::unit_vector(n, i));
                    let t3 = self.br(&self.basis_bracket(k, i), &crate::matrix::unit_vector(n, j));
                    if !is_zero_vector(&add_vectors(&add_vectors(&t1, &t2), &t3)) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn check_jacobi(&self) -> bool {
        self.jacobi_violation().is_none()
    }

    /// `Z(g) = { u : ad_u = 0 }`.
    pub fn center(&self) -> Subspace {
        let n = self.dim;
        // column i stacks [x_i, x_j] over all j
        let m = Matrix::from_fn(n * n, n, |r, i| {
            let (j, k) = (r / n, r % n);
            self.basis_bracket(i, j)[k].clone()
        });
        kernel(&m)
    }

    /// Span of `[u, v]` over bases of `a` and `b`.
    pub fn bracket_span(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut vs = Vec::new();
        for u in a.basis() {
            for v in b.basis() {
                vs.push(self.br(&u, &v));
            }
        }
        Subspace::from_vectors(self.dim, vs).expect("brackets have length n")
    }

    /// The derived ideal `[g, g]`.
    pub fn derived(&self) -> Subspace {
        Subspace::from_vectors(self.dim, self.consts.iter().cloned()).expect("length n")
    }

    /// `C^1 = g`, `C^{k+1} = [g, C^k]`, ending with the first term equal to
    /// its predecessor or zero (that term included).
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let full = Subspace::full(self.dim);
        let mut series = vec![full.clone()];
        loop {
            let last = series.last().expect("nonempty");
            if last.is_zero() {
                break;
            }
            let next = self.bracket_span(&full, last);
            let stable = next == *last;
            series.push(next);
            if stable {
                break;
            }
        }
        series
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().is_some_and(Subspace::is_zero)
    }

    /// Number of nonzero terms of the lower central series, for nilpotent
    /// algebras.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let series = self.lower_central_series();
        series
            .last()
            .is_some_and(Subspace::is_zero)
            .then(|| series.iter().filter(|s| !s.is_zero()).count())
    }

    /// Non-abelian with `[g, g]` inside the center.
    pub fn is_two_step(&self) -> bool {
        !self.is_abelian() && self.derived().is_subspace_of(&self.center())
    }

    /// `g1 ⊕ g2` with the basis of `g1` first.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (m, n) = (self.dim, other.dim);
        let total = m + n;
        let pad = |v: &Vector, offset: usize| {
            let mut w = zero_vector(total);
            for (k, x) in v.iter().enumerate() {
                w[k + offset] = x.clone();
            }
            w
        };
        let left = self.nonzero_brackets().map(|(i, j, v)| (i, j, pad(v, 0)));
        let right = other
            .nonzero_brackets()
            .map(|(i, j, v)| (i + m, j + m, pad(v, m)));
        let brackets: Vec<_> = left.chain(right).collect();
        Self::from_brackets_unchecked(total, brackets).expect("blocks fit")
    }

    /// Structure constants in the basis `y_j = sum_i P[i][j] x_i`.
    pub fn change_basis(&self, p: &Matrix) -> Result<Self> {
        if p.rows() != self.dim || p.cols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: p.rows().max(p.cols()),
            });
        }
        let p_inv = inverse(p)?;
        let cols = p.columns();
        let n = self.dim;
        let mut brackets = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let w = self.br(&cols[a], &cols[b]);
                if !is_zero_vector(&w) {
                    brackets.push((a, b, p_inv.mul_vec(&w)));
                }
            }
        }
        let mut g = Self::from_brackets_unchecked(n, brackets)?;
        g.name = self.name.clone();
        Ok(g)
    }

    pub fn fingerprint(&self) -> Fingerprint {
        Fingerprint {
            dim: self.dim,
            lower_central_dims: self.lower_central_series().iter().map(Subspace::dim).collect(),
            center_dim: self.center().dim(),
            derived_dim: self.derived().dim(),
        }
    }
}

/// Coarse isomorphism invariants.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub lower_central_dims: Vec<usize>,
    pub center_dim: usize,
    pub derived_dim: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{int_vector, unit_vector};

    fn e(n: usize, i: usize) -> Vector {
        unit_vector(n, i)
    }

    fn heisenberg3() -> LieAlgebra {
        LieAlgebra::new(3, [(0, 1, e(3, 2))]).unwrap()
    }

    fn l64() -> LieAlgebra {
        LieAlgebra::new(6, [(0, 1, e(6, 4)), (0, 2, e(6, 5)), (1, 3, e(6, 5))]).unwrap()
    }

    #[test]
    fn bracket_examples() {
        let h = heisenberg3();
        assert_eq!(h.bracket(&e(3, 0), &e(3, 1)).unwrap(), e(3, 2));
        let u = int_vector(&[1, 2, 3]);
        assert_eq!(h.bracket(&u, &u).unwrap(), zero_vector(3));
        assert_eq!(l64().bracket(&e(6, 1), &e(6, 3)).unwrap(), e(6, 5));
        assert!(matches!(
            h.bracket(&e(2, 0), &e(3, 0)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn jacobi_checks() {
        assert!(LieAlgebra::abelian(4).check_jacobi());
        assert!(l64().check_jacobi());
        // [x1,x2]=x3, [x1,x3]=x1: cyclic sum on (x1,x2,x3) is [x3,x1] != 0
        let bad = LieAlgebra::new(3, [(0, 1, e(3, 2)), (0, 2, e(3, 0))]);
        assert_eq!(bad.unwrap_err(), Error::Jacobi(1, 2, 3));
    }

    #[test]
    fn diagonal_bracket_rejected() {
        let err = LieAlgebra::new(2, [(0, 0, e(2, 1))]).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
    }

    #[test]
    fn centers_and_derived() {
        assert_eq!(LieAlgebra::abelian(3).center(), Subspace::full(3));
        let h = heisenberg3();
        let z3 = Subspace::from_vectors(3, [e(3, 2)]).unwrap();
        assert_eq!(h.center(), z3);
        assert_eq!(h.derived(), z3);
        let z56 = Subspace::from_vectors(6, [e(6, 4), e(6, 5)]).unwrap();
        assert_eq!(l64().center(), z56);
        assert_eq!(l64().derived(), z56);
        assert!(LieAlgebra::abelian(3).derived().is_zero());
    }

    #[test]
    fn nilpotency() {
        assert_eq!(LieAlgebra::abelian(2).nilpotency_class(), Some(1));
        let h = heisenberg3();
        assert_eq!(h.nilpotency_class(), Some(2));
        assert!(h.is_two_step());
        // basis (e, e1, e2, ebar): [ebar,e1]=e, [ebar,e2]=e1
        let fil = LieAlgebra::new(4, [(3, 1, e(4, 0)), (3, 2, e(4, 1))]).unwrap();
        assert_eq!(fil.nilpotency_class(), Some(3));
        assert!(!fil.is_two_step());
        // sl2-like: [x1,x2]=x3,[x3,x1]=2x1,[x3,x2]=-2x2 is not nilpotent
        let sl2 = LieAlgebra::new(
            3,
            [
                (0, 1, e(3, 2)),
                (2, 0, int_vector(&[2, 0, 0])),
                (2, 1, int_vector(&[0, -2, 0])),
            ],
        )
        .unwrap();
        assert!(!sl2.is_nilpotent());
        assert_eq!(sl2.nilpotency_class(), None);
    }

    #[test]
    fn direct_sums() {
        let s = heisenberg3().direct_sum(&LieAlgebra::abelian(3));
        assert_eq!(s.dim(), 6);
        assert_eq!(s.center().dim(), 4);
        assert!(LieAlgebra::abelian(2).direct_sum(&LieAlgebra::abelian(3)).is_abelian());
        let l3l3 = heisenberg3().direct_sum(&heisenberg3());
        let expected = LieAlgebra::new(6, [(0, 1, e(6, 2)), (3, 4, e(6, 5))]).unwrap();
        assert_eq!(l3l3, expected);
    }

    #[test]
    fn base_change() {
        let h = heisenberg3();
        assert_eq!(h.change_basis(&Matrix::identity(3)).unwrap(), h);
        let swap = Matrix::from_ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let swapped = h.change_basis(&swap).unwrap();
        assert_eq!(swapped.basis_bracket(0, 1), int_vector(&[0, 0, -1]));
        assert_eq!(swapped.fingerprint(), h.fingerprint());
        let singular = Matrix::from_ints(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 1]]);
        assert_eq!(h.change_basis(&singular).unwrap_err(), Error::Singular);
    }

    #[test]
    fn fingerprints_separate_four_dim_cases() {
        let r4 = LieAlgebra::abelian(4).fingerprint();
        let h3r = heisenberg3().direct_sum(&LieAlgebra::abelian(1)).fingerprint();
        let fil = LieAlgebra::new(4, [(3, 1, e(4, 0)), (3, 2, e(4, 1))])
            .unwrap()
            .fingerprint();
        assert_eq!(r4.lower_central_dims, vec![4, 0]);
        assert_eq!(h3r.lower_central_dims, vec![4, 1, 0]);
        assert_eq!(h3r.center_dim, 2);
        assert_eq!(fil.lower_central_dims, vec![4, 2, 1, 0]);
        assert!(r4 != h3r && h3r != fil && r4 != fil);
    }
}
