//! Double extensions `g = Re ⊕ B ⊕ Rē` of a flat metric Lie algebra `B`
//! by an admissible quadruple `(ξ, D, μ, b0)`, and the inverse extraction
//! from a flat algebra with a suitable central isotropic vector.
//!
//! Brackets of the extension, with `ξ*` the adjoint of `ξ` on `B`:
//!
//! ```text
//! [ē, e] = μ e
//! [ē, a] = D(a) - <b0, a> e
//! [a, b] = [a, b]_B + <(ξ - ξ*)(a), b> e
//! ```
//!
//! Extended bases are ordered `(e, B..., ē)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::flatness::is_flat;
use crate::linalg::{inverse, kernel};
use crate::lie::LieAlgebra;
use crate::matrix::{is_zero_vector, scale_vector, sub_vectors, unit_vector, zero_vector, Matrix, Vector};
use crate::metric::{BilinearForm, MetricLieAlgebra};
use crate::scalar::Scalar;
use crate::subspace::Subspace;

/// An admissibility identity that fails.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Violation {
    /// `ξ([a,b]) = L_a ξ(b) - L_b ξ(a)`.
    Cocycle,
    /// `D - ξ` is skew-symmetric.
    Skew,
    /// `[D, ξ] = ξ² - μξ - R_b0`.
    Commutator,
    /// `a.ξ(b) - ξ(a.b) = D(a).b + a.D(b) - D(a.b)`.
    Derivation,
}

impl Violation {
    pub fn name(self) -> &'static str {
        match self {
            Violation::Cocycle => "cocycle",
            Violation::Skew => "skew",
            Violation::Commutator => "commutator",
            Violation::Derivation => "derivation",
        }
    }

    pub fn join(violations: &[Violation]) -> String {
        violations
            .iter()
            .map(|v| v.name())
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Extension data without the base, for chains.
#[derive(Clone, PartialEq, Debug)]
pub struct ExtensionStage {
    pub xi: Matrix,
    pub d: Matrix,
    pub mu: Scalar,
    pub b0: Vector,
}

impl ExtensionStage {
    pub fn zero(n: usize) -> Self {
        Self {
            xi: Matrix::zeros(n, n),
            d: Matrix::zeros(n, n),
            mu: Scalar::zero(),
            b0: zero_vector(n),
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct AdmissibleQuadruple {
    pub base: MetricLieAlgebra,
    pub xi: Matrix,
    pub d: Matrix,
    pub mu: Scalar,
    pub b0: Vector,
}

impl AdmissibleQuadruple {
    pub fn new(base: MetricLieAlgebra, stage: ExtensionStage) -> Self {
        Self {
            base,
            xi: stage.xi,
            d: stage.d,
            mu: stage.mu,
            b0: stage.b0,
        }
    }

    /// `ξ = D = 0`, `μ = 0`, `b0 = 0`.
    pub fn zero(base: MetricLieAlgebra) -> Self {
        let n = base.dim();
        Self::new(base, ExtensionStage::zero(n))
    }

    pub fn stage(&self) -> ExtensionStage {
        ExtensionStage {
            xi: self.xi.clone(),
            d: self.d.clone(),
            mu: self.mu.clone(),
            b0: self.b0.clone(),
        }
    }

    fn check_shapes(&self) -> Result<()> {
        let n = self.base.dim();
        for m in [&self.xi, &self.d] {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: if m.rows() != n { m.rows() } else { m.cols() },
                });
            }
        }
        if self.b0.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.b0.len(),
            });
        }
        Ok(())
    }
}

/// The violated admissibility identities, empty when admissible.
pub fn check_admissible(q: &AdmissibleQuadruple) -> Result<Vec<Violation>> {
    q.check_shapes()?;
    let base = &q.base;
    if !is_flat(base) {
        return Err(Error::NotFlat);
    }
    let n = base.dim();
    let g = base.algebra();
    let lc = base.levi_civita();
    let (xi, d) = (&q.xi, &q.d);
    let mut violations = Vec::new();

    let cocycle = (0..n).all(|a| {
        (a + 1..n).all(|b| {
            let lhs = xi.mul_vec(&g.basis_bracket(a, b));
            let rhs = sub_vectors(&lc.left(a).mul_vec(&xi.column(b)), &lc.left(b).mul_vec(&xi.column(a)));
            lhs == rhs
        })
    });
    if !cocycle {
        violations.push(Violation::Cocycle);
    }

    if !base.form().is_skew(&(d - xi)) {
        violations.push(Violation::Skew);
    }

    let rhs = &(&(xi * xi) - &xi.scale(&q.mu)) - &lc.right_mul(&q.b0);
    if d.commutator(xi) != rhs {
        violations.push(Violation::Commutator);
    }

    let derivation = (0..n).all(|a| {
        (0..n).all(|b| {
            let ab = lc.basis_product(a, b);
            let lhs = sub_vectors(&lc.left(a).mul_vec(&xi.column(b)), &xi.mul_vec(&ab));
            let da_b = lc.right(b).mul_vec(&d.column(a));
            let a_db = lc.left(a).mul_vec(&d.column(b));
            let rhs = sub_vectors(&da_b.iter().zip(&a_db).map(|(x, y)| x + y).collect::<Vector>(), &d.mul_vec(&ab));
            lhs == rhs
        })
    });
    if !derivation {
        violations.push(Violation::Derivation);
    }
    Ok(violations)
}

/// Frame `(e, B..., ē)` inside an ambient metric Lie algebra, with
/// `<e,e> = <ē,ē> = 0`, `<e,ē> = 1` and `B ⊥ {e, ē}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AdaptedBasis {
    pub e: Vector,
    pub ebar: Vector,
    pub b: Vec<Vector>,
}

impl AdaptedBasis {
    /// Standard frame of an extended algebra of dimension `n + 2`.
    pub fn standard(n: usize) -> Self {
        Self {
            e: unit_vector(n + 2, 0),
            ebar: unit_vector(n + 2, n + 1),
            b: (1..=n).map(|i| unit_vector(n + 2, i)).collect(),
        }
    }

    /// Change-of-basis matrix with columns `e, B..., ē`.
    pub fn matrix(&self) -> Matrix {
        let mut cols = vec![self.e.clone()];
        cols.extend(self.b.iter().cloned());
        cols.push(self.ebar.clone());
        Matrix::from_columns(self.e.len(), &cols).expect("frame vectors share a length")
    }

    pub fn is_valid(&self, f: &BilinearForm) -> bool {
        let one = Scalar::one();
        f.norm(&self.e).is_zero()
            && f.norm(&self.ebar).is_zero()
            && f.eval(&self.e, &self.ebar) == one
            && self
                .b
                .iter()
                .all(|v| f.eval(v, &self.e).is_zero() && f.eval(v, &self.ebar).is_zero())
    }
}

/// The extension of `q.base` by `q`, in the standard frame.
pub fn double_extend(q: &AdmissibleQuadruple) -> Result<(MetricLieAlgebra, AdaptedBasis)> {
    let violations = check_admissible(q)?;
    if !violations.is_empty() {
        return Err(Error::Inadmissible(violations));
    }
    Ok(extend_unchecked(q))
}

fn extend_unchecked(q: &AdmissibleQuadruple) -> (MetricLieAlgebra, AdaptedBasis) {
    let base = &q.base;
    let n = base.dim();
    let big = n + 2;
    let (e, ebar) = (0, n + 1);
    let f0 = base.form();
    let embed = |v: &[Scalar], e_coeff: Scalar| {
        let mut out = zero_vector(big);
        out[e] = e_coeff;
        for (i, x) in v.iter().enumerate() {
            out[i + 1] = x.clone();
        }
        out
    };

    let mut brackets = Vec::new();
    // [e, ē] = -μ e
    brackets.push((e, ebar, scale_vector(&-&q.mu, &unit_vector(big, e))));
    let gb0: Vector = f0.gram().mul_vec(&q.b0);
    for a in 0..n {
        // [a, ē] = -D(a) + <b0, a> e
        let dcol = q.d.column(a);
        let v = embed(&scale_vector(&Scalar::from_int(-1), &dcol), gb0[a].clone());
        brackets.push((a + 1, ebar, v));
    }
    let xi_adj = f0.adjoint(&q.xi).expect("nondegenerate base");
    let skew = &q.xi - &xi_adj;
    let g_skew = f0.gram() * &skew;
    for a in 0..n {
        for b in a + 1..n {
            // <(ξ - ξ*)(x_a), x_b> = (G (ξ - ξ*))[b][a]
            let coeff = g_skew.get(b, a).clone();
            let v = embed(&base.algebra().basis_bracket(a, b), coeff);
            brackets.push((a + 1, b + 1, v));
        }
    }
    let algebra = LieAlgebra::from_brackets_unchecked(big, brackets)
        .expect("indices within range");

    let mut gram = Matrix::zeros(big, big);
    gram.set(e, ebar, Scalar::one());
    gram.set(ebar, e, Scalar::one());
    for i in 0..n {
        for j in 0..n {
            gram.set(i + 1, j + 1, f0.gram().get(i, j).clone());
        }
    }
    let form = BilinearForm::new(gram).expect("symmetric");
    let mg = MetricLieAlgebra::new(algebra, form).expect("hyperbolic sum of a nondegenerate form");
    (mg, AdaptedBasis::standard(n))
}

/// Echelon basis of `{ e ∈ Z ∩ Z⊥ : L_e = R_e = 0 }`.
pub fn find_extension_vectors(mg: &MetricLieAlgebra) -> Subspace {
    let n = mg.dim();
    let w = mg.isotropic_center().basis();
    if w.is_empty() {
        return Subspace::zero(n);
    }
    let lc = mg.levi_civita();
    // column k: entries of L_{w_k} followed by entries of R_{w_k}
    let blocks: Vec<Vector> = w
        .iter()
        .map(|v| {
            let mut col = lc.left_mul(v).entries().to_vec();
            col.extend_from_slice(lc.right_mul(v).entries());
            col
        })
        .collect();
    let m = Matrix::from_columns(2 * n * n, &blocks).expect("equal lengths");
    let coeffs = kernel(&m);
    Subspace::from_vectors(
        n,
        coeffs.basis().iter().map(|c| {
            let mut v = zero_vector(n);
            for (ck, wk) in c.iter().zip(&w) {
                if !ck.is_zero() {
                    v = v.iter().zip(wk).map(|(x, y)| x + &(ck * y)).collect();
                }
            }
            v
        }),
    )
    .expect("vectors of the ambient dimension")
}

/// Reads off a quadruple whose extension is `mg` in the returned frame.
///
/// `ē` is the hyperbolic partner of `e` and `B` the echelon basis of
/// `{e, ē}⊥`. In that frame `μ` is the `e`-coefficient of `[ē, e]`,
/// `D(a)` the `B`-part of `[ē, a]`, `<b0, a> = -(e-coefficient of [ē, a])`
/// and `ξ(a) = -(B-part of a.ē)`.
pub fn extract(mg: &MetricLieAlgebra, e: &[Scalar]) -> Result<(AdmissibleQuadruple, AdaptedBasis)> {
    let n = mg.dim();
    if e.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: e.len(),
        });
    }
    let mut failed = Vec::new();
    if !is_flat(mg) {
        failed.push("not flat");
    }
    if is_zero_vector(e) {
        failed.push("e is zero");
    }
    if !mg.form().norm(e).is_zero() {
        failed.push("e is not isotropic");
    }
    if !mg.center().contains(e) {
        failed.push("e is not central");
    }
    let lc = mg.levi_civita();
    if !lc.left_mul(e).is_zero() || !lc.right_mul(e).is_zero() {
        failed.push("L_e or R_e is nonzero");
    }
    if !failed.is_empty() {
        return Err(Error::Precondition(failed.join("; ")));
    }

    let ebar = mg.form().hyperbolic_pair(e)?;
    let pair = Subspace::from_vectors(n, [e.to_vec(), ebar.clone()])?;
    let b = mg.form().orthogonal_complement(&pair).basis();
    let frame = AdaptedBasis {
        e: e.to_vec(),
        ebar,
        b,
    };
    let adapted = mg.change_basis(&frame.matrix())?;

    let m = n - 2;
    let last = n - 1;
    let middle = |v: &[Scalar]| v[1..=m].to_vec();
    let g = adapted.algebra();
    let brackets = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).map(|(i, j)| {
        (i, j, middle(&g.basis_bracket(i + 1, j + 1)))
    });
    let base_algebra = LieAlgebra::new(m, brackets.collect::<Vec<_>>())?;
    let all: Vec<usize> = (1..=m).collect();
    let base_form = BilinearForm::new(adapted.form().gram().select(&all, &all))?;
    let base = MetricLieAlgebra::new(base_algebra, base_form)?;

    let mu = g.basis_bracket(last, 0)[0].clone();
    let mut d_cols = Vec::with_capacity(m);
    let mut w = Vec::with_capacity(m);
    let mut xi_cols = Vec::with_capacity(m);
    let alc = adapted.levi_civita();
    for a in 1..=m {
        let br = g.basis_bracket(last, a);
        d_cols.push(middle(&br));
        w.push(-&br[0]);
        xi_cols.push(scale_vector(&Scalar::from_int(-1), &middle(&alc.basis_product(a, last))));
    }
    let b0 = inverse(base.form().gram())?.mul_vec(&w);
    let q = AdmissibleQuadruple {
        base,
        xi: Matrix::from_columns(m, &xi_cols)?,
        d: Matrix::from_columns(m, &d_cols)?,
        mu,
        b0,
    };
    Ok((q, frame))
}

/// Folds `double_extend` over the stages, starting from `base`.
pub fn iterated_extend(base: &MetricLieAlgebra, stages: &[ExtensionStage]) -> Result<MetricLieAlgebra> {
    stages.iter().try_fold(base.clone(), |current, stage| {
        let q = AdmissibleQuadruple::new(current, stage.clone());
        Ok(double_extend(&q)?.0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int_vector;

    fn abelian(form: BilinearForm) -> MetricLieAlgebra {
        MetricLieAlgebra::new(LieAlgebra::abelian(form.dim()), form).unwrap()
    }

    fn lorentz2() -> BilinearForm {
        BilinearForm::diagonal(&[Scalar::from_int(-1), Scalar::one()])
    }

    fn nilpotent_stage() -> ExtensionStage {
        let xi = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
        ExtensionStage {
            xi: xi.clone(),
            d: xi,
            mu: Scalar::zero(),
            b0: int_vector(&[1, 0]),
        }
    }

    #[test]
    fn euclidean_plane_extension() {
        let mut stage = ExtensionStage::zero(2);
        stage.b0 = int_vector(&[1, 0]);
        let q = AdmissibleQuadruple::new(abelian(BilinearForm::identity(2)), stage);
        let (mg, frame) = double_extend(&q).unwrap();
        // [ē, e1] = -e, stored as [e1, ē] = e
        let g = mg.algebra();
        assert_eq!(g.basis_bracket(1, 3), int_vector(&[1, 0, 0, 0]));
        assert_eq!(g.nonzero_brackets().count(), 1);
        assert_eq!(mg.signature().to_string(), "(1,3)");
        assert!(frame.is_valid(mg.form()));
        assert!(is_flat(&mg));
    }

    #[test]
    fn lorentzian_plane_gives_filiform() {
        let q = AdmissibleQuadruple::new(abelian(lorentz2()), nilpotent_stage());
        let (mg, _) = double_extend(&q).unwrap();
        let g = mg.algebra();
        // [ē,e1] = e, [ē,e2] = e1, [e1,e2] = e
        assert_eq!(g.basis_bracket(3, 1), int_vector(&[1, 0, 0, 0]));
        assert_eq!(g.basis_bracket(3, 2), int_vector(&[0, 1, 0, 0]));
        assert_eq!(g.basis_bracket(1, 2), int_vector(&[1, 0, 0, 0]));
        assert_eq!(g.nilpotency_class(), Some(3));
        assert!(is_flat(&mg));
    }

    #[test]
    fn skew_violation() {
        let mut stage = ExtensionStage::zero(2);
        stage.d = Matrix::from_ints(&[&[1, 0], &[0, 0]]);
        let q = AdmissibleQuadruple::new(abelian(BilinearForm::identity(2)), stage);
        let v = check_admissible(&q).unwrap();
        assert!(v.contains(&Violation::Skew));
        assert!(matches!(double_extend(&q), Err(Error::Inadmissible(_))));
    }

    #[test]
    fn zero_quadruple_adds_hyperbolic_plane() {
        let q = AdmissibleQuadruple::zero(abelian(BilinearForm::identity(2)));
        let (mg, _) = double_extend(&q).unwrap();
        assert!(mg.algebra().is_abelian());
        assert_eq!(mg.signature().to_string(), "(1,3)");
    }

    #[test]
    fn extract_inverts_extend() {
        let q = AdmissibleQuadruple::new(abelian(lorentz2()), nilpotent_stage());
        let (mg, frame) = double_extend(&q).unwrap();
        let (back, back_frame) = extract(&mg, &frame.e).unwrap();
        assert_eq!(back_frame, frame);
        assert_eq!(back, q);
    }

    #[test]
    fn extract_rejects_non_null_vectors() {
        let mg = abelian(BilinearForm::identity(2));
        assert!(matches!(
            extract(&mg, &int_vector(&[1, 0])),
            Err(Error::Precondition(_))
        ));
        assert!(find_extension_vectors(&mg).is_zero());
    }

    #[test]
    fn chain_of_two() {
        let mut stage = ExtensionStage::zero(1);
        stage.b0 = int_vector(&[1]);
        let base = abelian(BilinearForm::identity(1));
        let out = iterated_extend(&base, &[stage, ExtensionStage::zero(3)]).unwrap();
        assert_eq!(out.dim(), 5);
        assert_eq!(out.signature().to_string(), "(2,3)");
        assert!(is_flat(&out));
        assert_eq!(iterated_extend(&base, &[]).unwrap(), base);
    }
}
