//! The Levi-Civita product of a metric Lie algebra, the flatness test, and
//! the structural checks that hold on flat instances.
//!
//! The product is determined by Koszul's formula
//!
//! ```text
//! 2<u.v, w> = <[u,v], w> + <[w,u], v> + <[w,v], u>
//! ```
//!
//! and the algebra is flat when `u -> L_u` is a Lie algebra homomorphism,
//! `L_[u,v] = [L_u, L_v]`.

use crate::error::{Error, Result};
use crate::linalg::{inverse, kernel};
use crate::lie::LieAlgebra;
use crate::matrix::{is_zero_vector, unit_vector, zero_vector, Matrix, Vector};
use crate::metric::{BilinearForm, MetricLieAlgebra};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::subspace::Subspace;

/// Left and right multiplication matrices of the basis vectors:
/// `x_i . v = L_i v` and `v . x_i = R_i v`.
#[derive(Clone, Debug)]
pub struct LeviCivita {
    left: Vec<Matrix>,
    right: Vec<Matrix>,
}

impl LeviCivita {
    pub(crate) fn compute(g: &LieAlgebra, f: &BilinearForm) -> Self {
        let n = g.dim();
        let gram = f.gram();
        let g_inv = inverse(gram).expect("metric Lie algebras carry nondegenerate forms");
        // lowered[a][b][c] = <[x_a, x_b], x_c>
        let lowered: Vec<Vec<Vector>> = (0..n)
            .map(|a| (0..n).map(|b| gram.mul_vec(&g.basis_bracket(a, b))).collect())
            .collect();
        let half = Scalar::from_ratio(1, 2);
        let mut left_cols = vec![Vec::with_capacity(n); n];
        for (i, cols) in left_cols.iter_mut().enumerate() {
            for j in 0..n {
                let rhs: Vector = (0..n)
                    .map(|k| &(&lowered[i][j][k] + &lowered[k][i][j]) + &lowered[k][j][i])
                    .collect();
                let product = if is_zero_vector(&rhs) {
                    zero_vector(n)
                } else {
                    g_inv.mul_vec(&rhs).iter().map(|x| x * &half).collect()
                };
                cols.push(product);
            }
        }
        let left: Vec<Matrix> = left_cols
            .iter()
            .map(|cols| Matrix::from_columns(n, cols).expect("columns of length n"))
            .collect();
        let right = (0..n)
            .map(|i| Matrix::from_fn(n, n, |r, j| left[j].get(r, i).clone()))
            .collect();
        Self { left, right }
    }

    pub fn dim(&self) -> usize {
        self.left.len()
    }

    /// `L_{x_i}`.
    pub fn left(&self, i: usize) -> &Matrix {
        &self.left[i]
    }

    /// `R_{x_i}`.
    pub fn right(&self, i: usize) -> &Matrix {
        &self.right[i]
    }

    fn combine(mats: &[Matrix], u: &[Scalar]) -> Matrix {
        let n = mats.len();
        let mut out = Matrix::zeros(n, n);
        for (c, m) in u.iter().zip(mats) {
            if !c.is_zero() {
                out = &out + &m.scale(c);
            }
        }
        out
    }

    pub fn left_mul(&self, u: &[Scalar]) -> Matrix {
        Self::combine(&self.left, u)
    }

    pub fn right_mul(&self, u: &[Scalar]) -> Matrix {
        Self::combine(&self.right, u)
    }

    /// `x_i . x_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> Vector {
        self.left[i].column(j)
    }

    pub fn product(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        self.left_mul(u).mul_vec(v)
    }
}

pub fn levi_civita(mg: &MetricLieAlgebra) -> &LeviCivita {
    mg.levi_civita()
}

/// Flatness via `L_[x_i,x_j] = [L_i, L_j]` for all `i < j`.
pub fn is_flat(mg: &MetricLieAlgebra) -> bool {
    let lc = mg.levi_civita();
    let g = mg.algebra();
    let n = mg.dim();
    (0..n).all(|i| {
        (i + 1..n).all(|j| lc.left_mul(&g.basis_bracket(i, j)) == lc.left(i).commutator(lc.left(j)))
    })
}

/// `R(u, v) = L_[u,v] - [L_u, L_v]`.
pub fn curvature(mg: &MetricLieAlgebra, u: &[Scalar], v: &[Scalar]) -> Result<Matrix> {
    let bracket = mg.algebra().bracket(u, v)?;
    let lc = mg.levi_civita();
    Ok(&lc.left_mul(&bracket) - &lc.left_mul(u).commutator(&lc.left_mul(v)))
}

/// Flatness via left symmetry of the associator,
/// `(u.v).w - u.(v.w) = (v.u).w - v.(u.w)`, on all basis triples.
pub fn flat_by_associator(mg: &MetricLieAlgebra) -> bool {
    let lc = mg.levi_civita();
    let n = mg.dim();
    // assoc[i][j] is w -> ass(x_i, x_j, w)
    let assoc = |i: usize, j: usize| {
        &lc.left_mul(&lc.basis_product(i, j)) - &(lc.left(i) * lc.left(j))
    };
    (0..n).all(|i| (i + 1..n).all(|j| assoc(i, j) == assoc(j, i)))
}

/// Flatness via `R_{u.v} - R_v R_u = [L_u, R_v]` on all basis pairs.
pub fn flat_by_right_multiplication(mg: &MetricLieAlgebra) -> bool {
    let lc = mg.levi_civita();
    let n = mg.dim();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let lhs = &lc.right_mul(&lc.basis_product(i, j)) - &(lc.right(j) * lc.right(i));
            lhs == lc.left(i).commutator(lc.right(j))
        })
    })
}

/// Koszul's formula holds exactly on all basis triples.
pub fn koszul_formula_holds(mg: &MetricLieAlgebra) -> bool {
    let lc = mg.levi_civita();
    let (g, f) = (mg.algebra(), mg.form());
    let n = mg.dim();
    let two = Scalar::from_int(2);
    let e = |k| unit_vector(n, k);
    (0..n).all(|i| {
        (0..n).all(|j| {
            let prod = lc.basis_product(i, j);
            (0..n).all(|k| {
                let lhs = &two * &f.eval(&prod, &e(k));
                let rhs = &(&f.eval(&g.basis_bracket(i, j), &e(k))
                    + &f.eval(&g.basis_bracket(k, i), &e(j)))
                    + &f.eval(&g.basis_bracket(k, j), &e(i));
                lhs == rhs
            })
        })
    })
}

/// Every `L_u` is skew-symmetric and `L_u - R_u = ad_u`, on basis vectors.
pub fn koszul_invariants_hold(mg: &MetricLieAlgebra) -> bool {
    let lc = mg.levi_civita();
    let (g, f) = (mg.algebra(), mg.form());
    (0..mg.dim()).all(|i| {
        f.is_skew(lc.left(i)) && (lc.left(i) - lc.right(i)) == g.ad_basis(i)
    })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StructuralSubspaces {
    /// Common kernel of `L_u` over the center.
    pub n: Subspace,
    /// `N ∩ Z⊥`.
    pub g0: Subspace,
    /// `N⊥`.
    pub h0: Subspace,
    /// Sum of the images `Im L_u` over the center.
    pub image_sum: Subspace,
}

impl StructuralSubspaces {
    /// The two descriptions of `h0` agree.
    pub fn h0_matches_image_sum(&self) -> bool {
        self.h0 == self.image_sum
    }
}

pub fn structural_subspaces(mg: &MetricLieAlgebra) -> Result<StructuralSubspaces> {
    if !is_flat(mg) {
        return Err(Error::NotFlat);
    }
    let n = mg.dim();
    let lc = mg.levi_civita();
    let z = mg.center();
    let lefts: Vec<Matrix> = z.basis().iter().map(|u| lc.left_mul(u)).collect();
    let common_kernel = if lefts.is_empty() {
        Subspace::full(n)
    } else {
        kernel(&Matrix::vstack(&lefts, n))
    };
    let z_perp = mg.form().orthogonal_complement(&z);
    let g0 = common_kernel.intersect(&z_perp)?;
    let h0 = mg.form().orthogonal_complement(&common_kernel);
    let image_sum = Subspace::from_vectors(n, lefts.iter().flat_map(Matrix::columns))?;
    Ok(StructuralSubspaces {
        n: common_kernel,
        g0,
        h0,
        image_sum,
    })
}

/// For central `u, v` and all `a, b`: `u.v = 0`, `L_u = R_u`,
/// `L_u L_v = 0` and `u.(a.b) = a.(u.b)`.
pub fn center_identity_check(mg: &MetricLieAlgebra) -> Result<bool> {
    if !is_flat(mg) {
        return Err(Error::NotFlat);
    }
    let lc = mg.levi_civita();
    let zs: Vec<(Matrix, Matrix)> = mg
        .center()
        .basis()
        .iter()
        .map(|u| (lc.left_mul(u), lc.right_mul(u)))
        .collect();
    let n = mg.dim();
    for (lu, ru) in &zs {
        if lu != ru {
            return Ok(false);
        }
        if (0..n).any(|a| !lu.commutator(lc.left(a)).is_zero()) {
            return Ok(false);
        }
        for (lv, _) in &zs {
            if !(lu * lv).is_zero() {
                return Ok(false);
            }
        }
    }
    // u.v = 0 is L_u applied to v
    let basis = mg.center().basis();
    for (lu, _) in &zs {
        if basis.iter().any(|v| !is_zero_vector(&lu.mul_vec(v))) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `[g,g]⊥` and `{ u : R_u = R_u* }`, computed independently.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DerivedPerp {
    pub derived_perp: Subspace,
    pub self_adjoint_right: Subspace,
}

pub fn derived_perp_sides(mg: &MetricLieAlgebra) -> DerivedPerp {
    let n = mg.dim();
    let f = mg.form();
    let derived_perp = f.orthogonal_complement(&mg.algebra().derived());
    let lc = mg.levi_civita();
    // column i: R_i - R_i* flattened
    let diffs: Vec<Matrix> = (0..n)
        .map(|i| {
            let adj = f.adjoint(lc.right(i)).expect("nondegenerate");
            lc.right(i) - &adj
        })
        .collect();
    let m = Matrix::from_fn(n * n, n, |r, i| diffs[i].entries()[r].clone());
    DerivedPerp {
        derived_perp,
        self_adjoint_right: kernel(&m),
    }
}

pub fn derived_perp_check(mg: &MetricLieAlgebra) -> bool {
    let sides = derived_perp_sides(mg);
    sides.derived_perp == sides.self_adjoint_right
}

/// `L_e = R_e = 0` for every `e` in `Z ∩ Z⊥`.
pub fn isotropic_center_is_null(mg: &MetricLieAlgebra) -> bool {
    let lc = mg.levi_civita();
    mg.isotropic_center()
        .basis()
        .iter()
        .all(|e| lc.left_mul(e).is_zero() && lc.right_mul(e).is_zero())
}

/// `Z + Z⊥` is closed under left and right products with all of `g`.
pub fn center_sum_is_two_sided_ideal(mg: &MetricLieAlgebra) -> bool {
    let z = mg.center();
    let a = z
        .sum(&mg.form().orthogonal_complement(&z))
        .expect("same ambient");
    let lc = mg.levi_civita();
    let basis = a.basis();
    (0..mg.dim()).all(|i| {
        basis
            .iter()
            .all(|v| a.contains(&lc.left(i).mul_vec(v)) && a.contains(&lc.right(i).mul_vec(v)))
    })
}

/// `<[x,y],[x,y]> = 0` for all `x, y` in `W`, via the polarized identity
/// `<[a,c],[b,d]> + <[a,d],[b,c]> = 0` on a basis of `W`.
pub fn brackets_null_on(mg: &MetricLieAlgebra, w: &Subspace) -> bool {
    let basis = w.basis();
    let m = basis.len();
    let (g, f) = (mg.algebra(), mg.form());
    let br: Vec<Vec<Vector>> = basis
        .iter()
        .map(|a| basis.iter().map(|b| g.br(a, b)).collect())
        .collect();
    let lowered: Vec<Vec<Vector>> = br
        .iter()
        .map(|row| row.iter().map(|v| f.gram().mul_vec(v)).collect())
        .collect();
    let pair = |a: usize, c: usize, b: usize, d: usize| crate::matrix::dot(&br[a][c], &lowered[b][d]);
    for a in 0..m {
        for b in a..m {
            for c in 0..m {
                for d in c..m {
                    if !(&pair(a, c, b, d) + &pair(a, d, b, c)).is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Checks the conclusions that hold for every flat 2-step nilpotent
/// metric Lie algebra, on this instance.
pub fn two_step_audit(mg: &MetricLieAlgebra) -> Result<Report> {
    if !is_flat(mg) {
        return Err(Error::NotFlat);
    }
    let g = mg.algebra();
    if !g.is_two_step() {
        return Err(Error::NotTwoStep);
    }
    let f = mg.form();
    let n = mg.dim();
    let sig = mg.signature();
    let z = mg.center();
    let z_perp = f.orthogonal_complement(&z);
    let iso = mg.isotropic_center();
    let k = iso.dim();

    let mut report = Report::new();
    report.check("center_degenerate", k > 0, format!("dim(Z∩Z⊥)={k}"));
    report.check(
        "isotropic_center_null",
        isotropic_center_is_null(mg),
        "L_e = R_e = 0 on Z∩Z⊥",
    );
    report.check(
        "null_brackets",
        brackets_null_on(mg, &z_perp),
        "<[x,y],[x,y]> = 0 on Z⊥",
    );

    let p = sig.minus.min(sig.plus);
    if k == p {
        let abelian = g.bracket_span(&z_perp, &z_perp).is_zero();
        report.check("center_perp_abelian", abelian, format!("dim(Z∩Z⊥)={k}=p"));
    } else {
        report.check(
            "center_perp_abelian",
            true,
            format!("not applicable: dim(Z∩Z⊥)={k}, p={p}"),
        );
    }

    // B1 is a complement of Z∩Z⊥ in Z⊥; its form is the induced one on the quotient.
    let induced = f.restrict(&z_perp).signature();
    let b1_dim = induced.minus + induced.plus;
    let b1_definite = b1_dim > 0 && (induced.minus == 0 || induced.plus == 0);
    if k == 1 && b1_definite {
        let fp = g.fingerprint();
        let ok = b1_dim == 1 && fp.derived_dim == 1 && fp.center_dim + 2 == n;
        report.check(
            "heisenberg_branch",
            ok,
            format!(
                "dim B1={b1_dim}, dim[g,g]={}, dim Z={} (trivial extension of H3 needs 1, 1, {})",
                fp.derived_dim,
                fp.center_dim,
                n - 2
            ),
        );
    } else {
        report.check(
            "heisenberg_branch",
            true,
            format!("not applicable: dim(Z∩Z⊥)={k}, B1 signature {induced}"),
        );
    }
    Ok(report)
}

/// Flatness verdict plus every structural check applicable to a flat
/// instance. Non-flat inputs get only the Koszul and flatness lines.
pub fn battery(mg: &MetricLieAlgebra) -> Report {
    let mut report = Report::new();
    report.check(
        "koszul_invariants",
        koszul_invariants_hold(mg),
        "L_u skew, L_u - R_u = ad_u",
    );
    let flat = is_flat(mg);
    report.check("flat", flat, "L_[u,v] = [L_u,L_v]");
    if !flat {
        return report;
    }
    let agree = flat_by_associator(mg) && flat_by_right_multiplication(mg);
    report.check("flatness_criteria_agree", agree, "associator and right-multiplication forms");
    report.check(
        "center_identities",
        center_identity_check(mg).unwrap_or(false),
        "u.v = 0, L_u = R_u, L_u L_v = 0, u.(a.b) = a.(u.b)",
    );
    report.check("derived_perp", derived_perp_check(mg), "[g,g]⊥ = {u : R_u = R_u*}");

    let g = mg.algebra();
    let sig = mg.signature();
    let s = structural_subspaces(mg).expect("flat");
    let mut ok = s.h0.is_subspace_of(&s.g0) && mg.form().is_totally_isotropic(&s.h0);
    if sig.is_two_negative() {
        ok &= s.h0.dim() <= 2;
    }
    report.check(
        "structural_subspaces",
        ok,
        format!("dim N={}, dim g0={}, dim h0={}", s.n.dim(), s.g0.dim(), s.h0.dim()),
    );
    report.check(
        "h0_image_sum",
        s.h0_matches_image_sum(),
        "N⊥ = sum of Im L_u over the center",
    );

    let nilpotent = g.is_nilpotent();
    if nilpotent && !g.is_abelian() && sig.is_two_negative() && mg.dim() >= 4 {
        let iso = mg.isotropic_center();
        report.check("center_degenerate", !iso.is_zero(), format!("dim(Z∩Z⊥)={}", iso.dim()));
        report.check("isotropic_center_null", isotropic_center_is_null(mg), "L_e = R_e = 0 on Z∩Z⊥");
        report.check(
            "two_sided_ideal",
            center_sum_is_two_sided_ideal(mg),
            "Z + Z⊥ closed under products",
        );
    }
    if g.is_two_step() {
        if let Ok(r) = two_step_audit(mg) {
            for c in r.checks {
                if report.get(&c.name).is_none() {
                    report.checks.push(c);
                }
            }
        }
        if sig.is_two_negative() {
            let d = g.derived().dim();
            report.check("derived_dim_bound", d <= 3, format!("dim[g,g]={d}"));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int_vector;
    use crate::scalar::q;

    fn h3_euclidean() -> MetricLieAlgebra {
        let g = LieAlgebra::new(3, [(0, 1, unit_vector(3, 2))]).unwrap();
        MetricLieAlgebra::new(g, BilinearForm::identity(3)).unwrap()
    }

    #[test]
    fn abelian_products_vanish() {
        let f = BilinearForm::diagonal(&[q(-1, 1), q(2, 1), q(1, 3)]);
        let mg = MetricLieAlgebra::new(LieAlgebra::abelian(3), f).unwrap();
        let lc = mg.levi_civita();
        assert!((0..3).all(|i| lc.left(i).is_zero()));
        assert!(is_flat(&mg));
    }

    #[test]
    fn heisenberg_euclidean_products() {
        // x1.x2 = x3/2, x1.x3 = -x2/2, x2.x3 = x1/2
        let mg = h3_euclidean();
        let lc = mg.levi_civita();
        assert_eq!(lc.basis_product(0, 1), vec![q(0, 1), q(0, 1), q(1, 2)]);
        assert_eq!(lc.basis_product(0, 2), vec![q(0, 1), q(-1, 2), q(0, 1)]);
        assert_eq!(lc.basis_product(1, 2), vec![q(1, 2), q(0, 1), q(0, 1)]);
        assert!(koszul_formula_holds(&mg));
        assert!(koszul_invariants_hold(&mg));
        assert!(!is_flat(&mg));
    }

    #[test]
    fn heisenberg_euclidean_curvature() {
        // Oracle from the product table above: L1 = [[0,0,0],[0,0,-1/2],[0,1/2,0]],
        // L2 = [[0,0,1/2],[0,0,0],[-1/2,0,0]], L3 = [[0,1/2,0],[-1/2,0,0],[0,0,0]].
        // L3 - [L1,L2] = [[0,3/4,0],[-3/4,0,0],[0,0,0]].
        let mg = h3_euclidean();
        let r = curvature(&mg, &unit_vector(3, 0), &unit_vector(3, 1)).unwrap();
        let expected = Matrix::from_rows(vec![
            vec![q(0, 1), q(3, 4), q(0, 1)],
            vec![q(-3, 4), q(0, 1), q(0, 1)],
            vec![q(0, 1), q(0, 1), q(0, 1)],
        ])
        .unwrap();
        assert_eq!(r, expected);
        let u = int_vector(&[1, 2, 0]);
        let v = int_vector(&[0, 1, 3]);
        let two_u: Vector = u.iter().map(|x| x * &q(2, 1)).collect();
        assert_eq!(curvature(&mg, &two_u, &v).unwrap(), curvature(&mg, &u, &v).unwrap().scale(&q(2, 1)));
    }

    #[test]
    fn non_flat_preconditions() {
        let mg = h3_euclidean();
        assert_eq!(center_identity_check(&mg).unwrap_err(), Error::NotFlat);
        assert_eq!(structural_subspaces(&mg).unwrap_err(), Error::NotFlat);
        assert_eq!(two_step_audit(&mg).unwrap_err(), Error::NotFlat);
        assert!(!flat_by_associator(&mg));
        assert!(!flat_by_right_multiplication(&mg));
    }

    #[test]
    fn abelian_structural_subspaces() {
        let mg = MetricLieAlgebra::new(LieAlgebra::abelian(2), BilinearForm::identity(2)).unwrap();
        let s = structural_subspaces(&mg).unwrap();
        assert_eq!(s.n, Subspace::full(2));
        assert!(s.h0.is_zero());
        assert!(center_identity_check(&mg).unwrap());
        let sides = derived_perp_sides(&mg);
        assert_eq!(sides.derived_perp, Subspace::full(2));
        assert_eq!(sides.self_adjoint_right, Subspace::full(2));
        assert_eq!(two_step_audit(&mg).unwrap_err(), Error::NotTwoStep);
    }
}
