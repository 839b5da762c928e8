//! Seeded random instances: small rationals, forms of given signature,
//! admissible quadruples, and parameter draws for the catalog families.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::catalog::Theorem62Data;
use crate::doubleext::{double_extend, AdmissibleQuadruple, ExtensionStage};
use crate::linalg::determinant;
use crate::lie::LieAlgebra;
use crate::matrix::{zero_vector, Matrix, Vector};
use crate::metric::{BilinearForm, MetricLieAlgebra};
use crate::scalar::Scalar;

pub type Sampler = ChaCha8Rng;

pub fn sampler(seed: u64) -> Sampler {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p| <= 6`, `1 <= q <= 4`.
pub fn rational<R: Rng>(rng: &mut R) -> Scalar {
    Scalar::from_ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

pub fn nonzero_rational<R: Rng>(rng: &mut R) -> Scalar {
    loop {
        let x = rational(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn positive_rational<R: Rng>(rng: &mut R) -> Scalar {
    Scalar::from_ratio(rng.gen_range(1..=6), rng.gen_range(1..=4))
}

/// Zero with probability `p_zero`, otherwise a nonzero rational.
pub fn sparse_rational<R: Rng>(rng: &mut R, p_zero: f64) -> Scalar {
    if rng.gen_bool(p_zero) {
        Scalar::zero()
    } else {
        nonzero_rational(rng)
    }
}

/// Invertible matrix with small integer entries.
pub fn invertible_matrix<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| Scalar::from_int(rng.gen_range(-2..=2)));
        if !determinant(&m).expect("square").is_zero() {
            return m;
        }
    }
}

/// `Pᵀ diag(-1,..,-1, 1,..,1) P` for a random invertible `P`.
pub fn form_with_signature<R: Rng>(rng: &mut R, minus: usize, plus: usize) -> BilinearForm {
    let n = minus + plus;
    let diag: Vec<Scalar> = (0..n)
        .map(|i| if i < minus { -positive_rational(rng) } else { positive_rational(rng) })
        .collect();
    let p = invertible_matrix(rng, n);
    BilinearForm::new(&(&p.transpose() * &Matrix::diagonal(&diag)) * &p).expect("congruent to a diagonal")
}

pub fn positive_definite_form<R: Rng>(rng: &mut R, n: usize) -> BilinearForm {
    form_with_signature(rng, 0, n)
}

/// Quadruple over an abelian Euclidean or Lorentzian base of dimension
/// 1 to 4 with `D = ξ = [[0, X], [0, 0]]`, `μ = 0` and random `b0`.
pub fn nilpotent_quadruple<R: Rng>(rng: &mut R) -> AdmissibleQuadruple {
    let n = rng.gen_range(1..=4);
    let lorentzian = n >= 2 && rng.gen_bool(0.5);
    let form = if lorentzian {
        form_with_signature(rng, 1, n - 1)
    } else {
        positive_definite_form(rng, n)
    };
    let split = rng.gen_range(0..=n);
    let xi = Matrix::from_fn(n, n, |i, j| {
        if i < split && j >= split {
            sparse_rational(rng, 0.3)
        } else {
            Scalar::zero()
        }
    });
    let base = MetricLieAlgebra::new(LieAlgebra::abelian(n), form).expect("nondegenerate");
    AdmissibleQuadruple::new(
        base,
        ExtensionStage {
            xi: xi.clone(),
            d: xi,
            mu: Scalar::zero(),
            b0: (0..n).map(|_| sparse_rational(rng, 0.3)).collect(),
        },
    )
}

/// `(a, b, c, d)` with `b != 0` and `d > 0`.
pub fn l64_parameters<R: Rng>(rng: &mut R) -> [Scalar; 4] {
    [rational(rng), nonzero_rational(rng), rational(rng), positive_rational(rng)]
}

/// `(α, β, γ, δ)` and a Lorentzian form on `B` with `δ = -α<e1, e1>`.
pub fn example4dim_parameters<R: Rng>(rng: &mut R) -> ([Scalar; 4], BilinearForm) {
    let alpha = sparse_rational(rng, 0.35);
    let beta = sparse_rational(rng, 0.35);
    let gamma = sparse_rational(rng, 0.35);
    let form = loop {
        let p = sparse_rational(rng, 0.35);
        let q = rational(rng);
        let r = rational(rng);
        let det = &(&p * &r) - &q.square();
        if det.is_negative() {
            let g = Matrix::from_rows(vec![vec![p, q.clone()], vec![q, r]]).expect("2x2");
            break BilinearForm::new(g).expect("symmetric");
        }
    };
    let delta = -&(&alpha * form.gram().get(0, 0));
    ([alpha, beta, gamma, delta], form)
}

/// Bracket data satisfying the norm constraint: all parameters random with
/// `α_k != 0`, then `δ_k` solved for. `z0` has a nonzero first `Z1`
/// coordinate.
pub fn theorem62_data<R: Rng>(rng: &mut R) -> Theorem62Data {
    let k = rng.gen_range(1..=3);
    let m = rng.gen_range(1..=3);
    let mut alpha: Vec<Scalar> = (0..k).map(|_| sparse_rational(rng, 0.3)).collect();
    alpha[k - 1] = nonzero_rational(rng);
    let beta: Vec<Scalar> = (0..k).map(|_| sparse_rational(rng, 0.3)).collect();
    let gamma: Vec<Scalar> = (0..k).map(|_| sparse_rational(rng, 0.3)).collect();
    let mut delta: Vec<Scalar> = (0..k).map(|_| sparse_rational(rng, 0.3)).collect();
    let z1_gram: Vec<Scalar> = (0..m).map(|_| positive_rational(rng)).collect();
    let mut z0: Vector = (0..m + 2).map(|_| sparse_rational(rng, 0.3)).collect();
    z0[0] = nonzero_rational(rng);
    let mut data = Theorem62Data {
        alpha,
        beta,
        gamma,
        delta: delta.clone(),
        z1_gram,
        z0,
    };
    // rhs is affine in δ_k with slope -4 α_k
    delta[k - 1] = Scalar::zero();
    data.delta = delta;
    let gap = &data.rhs() - &data.lhs();
    data.delta[k - 1] = &gap / &(&Scalar::from_int(4) * &data.alpha[k - 1]);
    data
}

/// A nonzero shift keeping the form on `Z1` positive for [`Theorem62Data::shifted`].
pub fn norm_shift<R: Rng>(rng: &mut R, data: &Theorem62Data) -> Scalar {
    let floor = -&(&data.z1_gram[0] * &data.z0[0].square());
    loop {
        let s = nonzero_rational(rng);
        if (&s - &floor).is_positive() {
            return s;
        }
    }
}

/// A 2-step nilpotent algebra with brackets of the first `n - c` basis
/// vectors landing in the last `c`, with a random nondegenerate form.
/// Mostly non-flat.
pub fn two_step_metric_algebra<R: Rng>(rng: &mut R) -> MetricLieAlgebra {
    let n = rng.gen_range(3..=6);
    let c = rng.gen_range(1..=2).min(n - 2);
    let top = n - c;
    let mut brackets = Vec::new();
    for i in 0..top {
        for j in i + 1..top {
            if rng.gen_bool(0.5) {
                let mut v = zero_vector(n);
                for x in v.iter_mut().skip(top) {
                    *x = Scalar::from_int(rng.gen_range(-2..=2));
                }
                brackets.push((i, j, v));
            }
        }
    }
    let g = LieAlgebra::new(n, brackets).expect("brackets land in the center");
    let minus = rng.gen_range(0..=n.min(3));
    MetricLieAlgebra::new(g, form_with_signature(rng, minus, n - minus)).expect("nondegenerate")
}

/// Flat metric algebra obtained by extending a random quadruple.
pub fn flat_metric_algebra<R: Rng>(rng: &mut R) -> MetricLieAlgebra {
    double_extend(&nilpotent_quadruple(rng)).expect("admissible by construction").0
}

/// Alternates between [`two_step_metric_algebra`] and a random base change
/// of [`flat_metric_algebra`].
pub fn metric_algebra<R: Rng>(rng: &mut R) -> MetricLieAlgebra {
    if rng.gen_bool(0.5) {
        two_step_metric_algebra(rng)
    } else {
        let mg = flat_metric_algebra(rng);
        let p = invertible_matrix(rng, mg.dim());
        mg.change_basis(&p).expect("invertible")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::doubleext::check_admissible;
    use crate::metric::Signature;

    #[test]
    fn forms_have_requested_signature() {
        let mut rng = sampler(1);
        for _ in 0..20 {
            let f = form_with_signature(&mut rng, 2, 3);
            assert_eq!(f.signature(), Signature::new(2, 0, 3));
        }
    }

    #[test]
    fn quadruples_are_admissible() {
        let mut rng = sampler(2);
        for _ in 0..30 {
            let q = nilpotent_quadruple(&mut rng);
            assert!(check_admissible(&q).unwrap().is_empty());
        }
    }

    #[test]
    fn family_draws_satisfy_norm_constraint() {
        let mut rng = sampler(3);
        for _ in 0..30 {
            let d = theorem62_data(&mut rng);
            assert!(d.satisfies_constraint());
            let s = norm_shift(&mut rng, &d);
            let shifted = d.shifted(&s).unwrap();
            assert_eq!(shifted.lhs(), &d.lhs() + &(&Scalar::from_int(3) * &s));
        }
    }

    #[test]
    fn deterministic_for_a_seed() {
        let a = metric_algebra(&mut sampler(9));
        let b = metric_algebra(&mut sampler(9));
        assert_eq!(a, b);
    }
}
