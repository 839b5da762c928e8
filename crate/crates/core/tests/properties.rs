use proptest::prelude::*;

use flatlie_core::doubleext::{double_extend, extract};
use flatlie_core::flatness::is_flat;
use flatlie_core::format::{self, Instance};
use flatlie_core::linalg::solve_linear;
use flatlie_core::matrix::{Matrix, Vector};
use flatlie_core::metric::Signature;
use flatlie_core::sampling::{self, sampler};
use flatlie_core::scalar::Scalar;
use flatlie_core::subspace::Subspace;

fn quadratic(d: u32) -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=5, -9i64..=9, 1i64..=5).prop_map(move |(a, b, c, e)| {
        let surd = Scalar::sqrt_of(d).unwrap();
        &Scalar::from_ratio(a, b) + &(&Scalar::from_ratio(c, e) * &surd)
    })
}

fn field_pair() -> impl Strategy<Value = (Scalar, Scalar)> {
    prop::sample::select(vec![2u32, 3, 5, 15]).prop_flat_map(|d| (quadratic(d), quadratic(d)))
}

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-3i64..=3, rows * cols)
        .prop_map(move |v| Matrix::from_fn(rows, cols, |i, j| Scalar::from_int(v[i * cols + j])))
}

fn subspace(n: usize) -> impl Strategy<Value = Subspace> {
    (0..=n).prop_flat_map(move |k| int_matrix(k, n)).prop_map(move |m| {
        Subspace::from_vectors(n, m.row_vectors()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_is_a_field_automorphism((x, y) in field_pair()) {
        prop_assert_eq!((&x * &y).conjugate(), &x.conjugate() * &y.conjugate());
        prop_assert_eq!((&x + &y).conjugate(), &x.conjugate() + &y.conjugate());
        prop_assert_eq!((&x * &x.conjugate()).to_rational().cloned(), Some(x.norm()));
    }

    #[test]
    fn norm_is_multiplicative((x, y) in field_pair()) {
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        if let Some(inv) = x.inv() {
            prop_assert!((&x * &inv).is_one());
        } else {
            prop_assert!(x.is_zero());
        }
    }

    #[test]
    fn solve_recovers_consistent_systems(a in int_matrix(3, 4), x in prop::collection::vec(-4i64..=4, 4)) {
        let x: Vector = x.into_iter().map(Scalar::from_int).collect();
        let b = a.mul_vec(&x);
        let y = solve_linear(&a, &b).unwrap().expect("consistent");
        prop_assert_eq!(a.mul_vec(&y), b);
    }

    #[test]
    fn signature_is_a_congruence_invariant(seed in any::<u64>(), minus in 0usize..=3, plus in 0usize..=3) {
        prop_assume!(minus + plus > 0);
        let mut rng = sampler(seed);
        let f = sampling::form_with_signature(&mut rng, minus, plus);
        prop_assert_eq!(f.signature(), Signature::new(minus, 0, plus));
        let p = sampling::invertible_matrix(&mut rng, minus + plus);
        prop_assert_eq!(f.change_basis(&p).unwrap().signature(), f.signature());
    }

    #[test]
    fn grassmann_identity(u in subspace(5), w in subspace(5)) {
        let sum = u.sum(&w).unwrap();
        let cap = u.intersect(&w).unwrap();
        prop_assert_eq!(sum.dim() + cap.dim(), u.dim() + w.dim());
        prop_assert!(cap.is_subspace_of(&u) && cap.is_subspace_of(&w));
        prop_assert!(u.is_subspace_of(&sum) && w.is_subspace_of(&sum));
    }

    #[test]
    fn orthogonal_complement_is_an_involution(seed in any::<u64>(), w in subspace(4)) {
        let mut rng = sampler(seed);
        let f = sampling::form_with_signature(&mut rng, 2, 2);
        let perp = f.orthogonal_complement(&w);
        prop_assert_eq!(w.dim() + perp.dim(), 4);
        prop_assert_eq!(f.orthogonal_complement(&perp), w);
    }

    #[test]
    fn fingerprint_is_a_basis_invariant(seed in any::<u64>()) {
        let mut rng = sampler(seed);
        let mg = sampling::metric_algebra(&mut rng);
        let p = sampling::invertible_matrix(&mut rng, mg.dim());
        let moved = mg.change_basis(&p).unwrap();
        prop_assert_eq!(moved.algebra().fingerprint(), mg.algebra().fingerprint());
        prop_assert_eq!(moved.signature(), mg.signature());
        prop_assert_eq!(is_flat(&moved), is_flat(&mg));
    }

    #[test]
    fn print_then_parse_is_the_identity(seed in any::<u64>()) {
        let mut rng = sampler(seed);
        let quad = sampling::nilpotent_quadruple(&mut rng);
        let inst = Instance::new(quad.base.clone()).with_stage(quad.stage());
        let text = format::print(&inst);
        let back = format::parse(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(format::print(&back), text);

        let mg = sampling::metric_algebra(&mut rng);
        let inst = Instance::new(mg);
        let text = format::print(&inst);
        prop_assert_eq!(format::parse(&text).unwrap(), inst);
    }

    #[test]
    fn double_extension_invariants(seed in any::<u64>()) {
        let mut rng = sampler(seed);
        let quad = sampling::nilpotent_quadruple(&mut rng);
        let (mg, frame) = double_extend(&quad).unwrap();
        let base = quad.base.signature();
        prop_assert_eq!(mg.dim(), quad.base.dim() + 2);
        prop_assert_eq!(mg.signature(), Signature::new(base.minus + 1, 0, base.plus + 1));
        prop_assert!(is_flat(&mg));
        prop_assert!(frame.is_valid(mg.form()));
        prop_assert!(mg.center().contains(&frame.e));
        prop_assert!(mg.form().norm(&frame.e).is_zero());
        let (back, _) = extract(&mg, &frame.e).unwrap();
        prop_assert_eq!(back.base.signature(), base);
        prop_assert_eq!(back.base.algebra().fingerprint(), quad.base.algebra().fingerprint());
    }
}
