use flatlie_core::catalog::{self, Theorem62Data, Variant};
use flatlie_core::doubleext::{extract, find_extension_vectors};
use flatlie_core::flatness::{derived_perp_sides, is_flat, structural_subspaces, two_step_audit};
use flatlie_core::lie::LieAlgebra;
use flatlie_core::linalg::inverse;
use flatlie_core::matrix::{int_vector, unit_vector, Matrix};
use flatlie_core::metric::{BilinearForm, MetricLieAlgebra, Signature};
use flatlie_core::report::Status;
use flatlie_core::scalar::Scalar;
use flatlie_core::subspace::Subspace;

fn q(p: i64, d: i64) -> Scalar {
    Scalar::from_ratio(p, d)
}

fn l64() -> MetricLieAlgebra {
    catalog::l64_metric(&q(0, 1), &q(1, 1), &q(0, 1), &q(1, 1)).unwrap()
}

fn span(n: usize, idx: &[usize]) -> Subspace {
    Subspace::from_vectors(n, idx.iter().map(|&i| unit_vector(n, i - 1))).unwrap()
}

fn lorentzian_h3_plus_r() -> MetricLieAlgebra {
    catalog::flat_two_step_instances()
        .into_iter()
        .find(|(n, _)| n == "Lorentzian H3+R")
        .unwrap()
        .1
}

#[test]
fn l64_structural_subspaces() {
    let s = structural_subspaces(&l64()).unwrap();
    assert_eq!(s.n, span(6, &[3, 4, 5, 6]));
    assert_eq!(s.h0, span(6, &[3, 6]));
    assert!(l64().form().is_totally_isotropic(&s.h0));
    assert!(s.h0_matches_image_sum());
}

#[test]
fn lorentzian_h3_has_small_h0() {
    let mg = lorentzian_h3_plus_r();
    assert_eq!(mg.signature(), Signature::new(1, 0, 3));
    assert!(structural_subspaces(&mg).unwrap().h0.dim() <= 1);
}

#[test]
fn derived_perp_equalities() {
    let sides = derived_perp_sides(&l64());
    assert_eq!(sides.derived_perp, span(6, &[2, 3, 4, 6]));
    assert_eq!(sides.derived_perp, sides.self_adjoint_right);

    let data = Theorem62Data::new(&[[q(0, 1), q(1, 1), q(2, 1), q(0, 1)]], int_vector(&[1, 1, 1]));
    let (mg, _) = data.build().unwrap();
    assert_eq!(mg.dim(), 8);
    assert_eq!(mg.signature(), Signature::new(2, 0, 6));
    let sides = derived_perp_sides(&mg);
    assert_eq!(sides.derived_perp, sides.self_adjoint_right);

    let abelian = MetricLieAlgebra::new(LieAlgebra::abelian(3), BilinearForm::identity(3)).unwrap();
    let sides = derived_perp_sides(&abelian);
    assert_eq!(sides.derived_perp, Subspace::full(3));
    assert_eq!(sides.self_adjoint_right, Subspace::full(3));
}

#[test]
fn two_step_audit_branches() {
    let r = two_step_audit(&l64()).unwrap();
    assert!(r.passed(), "{r}");
    assert_eq!(l64().isotropic_center().dim(), 1);

    let t = catalog::table_frames()
        .into_iter()
        .find(|t| t.name == "L3+L3" && t.variant == Variant::Corrected)
        .unwrap();
    let mg = t.metric().unwrap();
    let r = two_step_audit(&mg).unwrap();
    assert!(r.passed(), "{r}");
    assert_eq!(mg.isotropic_center().dim(), 2);
    let perp = mg.form().orthogonal_complement(&mg.center());
    assert!(perp.basis().iter().all(|u| perp.basis().iter().all(|v| mg
        .algebra()
        .bracket(u, v)
        .unwrap()
        .iter()
        .all(Scalar::is_zero))));

    let r = two_step_audit(&lorentzian_h3_plus_r()).unwrap();
    assert!(r.passed(), "{r}");
    assert!(r.get("heisenberg_branch").is_some_and(|c| c.status == Status::Pass));
}

#[test]
fn extension_vectors() {
    assert_eq!(find_extension_vectors(&l64()), span(6, &[6]));
    assert_eq!(find_extension_vectors(&lorentzian_h3_plus_r()).dim(), 1);
    let euclid = MetricLieAlgebra::new(LieAlgebra::abelian(3), BilinearForm::identity(3)).unwrap();
    assert!(find_extension_vectors(&euclid).is_zero());
}

#[test]
fn extract_from_l64_and_neutral_space() {
    let (quad, frame) = extract(&l64(), &unit_vector(6, 5)).unwrap();
    assert_eq!(quad.base.dim(), 4);
    assert_eq!(quad.base.signature(), Signature::new(1, 0, 3));
    assert!(quad.base.algebra().is_nilpotent());
    assert!(is_flat(&quad.base));
    assert!(frame.is_valid(l64().form()));

    let neutral = MetricLieAlgebra::new(
        LieAlgebra::abelian(4),
        BilinearForm::diagonal(&[q(-1, 1), q(-1, 1), q(1, 1), q(1, 1)]),
    )
    .unwrap();
    let (quad, _) = extract(&neutral, &int_vector(&[1, 0, 1, 0])).unwrap();
    assert_eq!(quad.base.dim(), 2);
    assert!(quad.base.algebra().is_abelian());
    assert!(quad.xi.is_zero() && quad.d.is_zero() && quad.mu.is_zero());
    assert!(quad.b0.iter().all(Scalar::is_zero));
}

#[test]
fn l65_frame_over_quadratic_field() {
    let t = catalog::table_frames()
        .into_iter()
        .find(|t| t.name == "L6_5(-1)")
        .unwrap();
    let mg = t.metric().unwrap();
    let v = catalog::theorem62_check(&mg, &t.frame).unwrap();
    assert!(v.holds() && v.flat);
    assert_eq!(v.lhs, Some(Scalar::zero()));
    // ē1 and ē2 commute here, so z0 = 0 and its norm cannot move with the
    // metric; the shifted left side alone already breaks the constraint
    let lhs = &v.lhs.clone().unwrap() + &q(1, 1);
    assert_ne!(Some(lhs), v.rhs);

    // a metric perturbation on the b-block breaks both constraint and flatness
    let p = t.frame.matrix().unwrap();
    let mut framed = mg.form().change_basis(&p).unwrap().gram().clone();
    let b1 = 4 + t.frame.z.len();
    framed.set(b1, b1, framed.get(b1, b1) + &q(1, 1));
    let pinv = inverse(&p).unwrap();
    let gram: Matrix = &(&pinv.transpose() * &framed) * &pinv;
    let perturbed = MetricLieAlgebra::new(mg.algebra().clone(), BilinearForm::new(gram).unwrap()).unwrap();
    let v = catalog::theorem62_check(&perturbed, &t.frame).unwrap();
    assert!(!v.holds());
    assert!(!is_flat(&perturbed));
}

#[test]
fn two_isotropic_family_examples() {
    let zero = Theorem62Data::new(&[[q(0, 1), q(0, 1), q(0, 1), q(0, 1)]], int_vector(&[0]));
    let (mg, _) = zero.build().unwrap();
    assert!(mg.algebra().is_abelian() && is_flat(&mg));

    let l63 = Theorem62Data::new(&[[q(1, 1), q(0, 1), q(0, 1), q(-3, 4)]], int_vector(&[1]));
    assert_eq!(l63.lhs(), q(3, 1));
    assert_eq!(l63.rhs(), q(3, 1));
    let (mg, frame) = l63.build().unwrap();
    assert!(is_flat(&mg));
    assert!(catalog::theorem62_check(&mg, &frame).unwrap().holds());
}
