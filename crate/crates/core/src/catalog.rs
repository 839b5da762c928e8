//! Named algebras, metrics and frames: Heisenberg algebras, the
//! six-dimensional 2-step nilpotent table, the flat metric family on
//! `L6_4`, the flat metrics on trivial extensions of `H3`, the bracket
//! family with two isotropic central directions, and the four-dimensional
//! double-extension family.

use crate::doubleext::{double_extend, AdmissibleQuadruple, ExtensionStage};
use crate::error::{Error, Result};
use crate::flatness::is_flat;
use crate::linalg::inverse;
use crate::lie::{Fingerprint, LieAlgebra};
use crate::matrix::{is_zero_vector, unit_vector, zero_vector, Matrix, Vector};
use crate::metric::{BilinearForm, MetricLieAlgebra, Signature};
use crate::scalar::{q, Scalar};

/// Stable catalog identifiers; `R^n` stands for `R^1`, `R^2`, ...
pub const NAMES: [&str; 11] = [
    "R^n", "H3", "H5", "L3+3L1", "L5_1+L1", "L5_4+L1", "L3+L3", "L6_4", "L6_5(-1)", "L6_3", "filiform4",
];

/// Rows of the six-dimensional table.
pub const SIXDIM_NAMES: [&str; 7] = ["L3+3L1", "L5_1+L1", "L5_4+L1", "L3+L3", "L6_4", "L6_5(-1)", "L6_3"];

fn from_table(dim: usize, table: &[(usize, usize, i64, usize)]) -> LieAlgebra {
    // (i, j, c, k) means [x_i, x_j] = c x_k, 1-based
    let brackets = table.iter().map(|&(i, j, c, k)| {
        let mut v = zero_vector(dim);
        v[k - 1] = Scalar::from_int(c);
        (i - 1, j - 1, v)
    });
    LieAlgebra::new(dim, brackets.collect::<Vec<_>>()).expect("catalog tables satisfy Jacobi")
}

/// `H_{2k+1}` with `[x_{2i-1}, x_{2i}] = x_{2k+1}`.
pub fn heisenberg(k: usize) -> Result<LieAlgebra> {
    if k == 0 {
        return Err(Error::InvalidParameter("Heisenberg algebras need k >= 1".into()));
    }
    let n = 2 * k + 1;
    let table: Vec<_> = (1..=k).map(|i| (2 * i - 1, 2 * i, 1, n)).collect();
    Ok(from_table(n, &table).with_name(format!("H{n}")))
}

pub fn abelian(n: usize) -> LieAlgebra {
    LieAlgebra::abelian(n).with_name(format!("R^{n}"))
}

pub fn sixdim_table(name: &str) -> Result<LieAlgebra> {
    let table: &[(usize, usize, i64, usize)] = match name {
        "L3+3L1" => &[(1, 2, 1, 3)],
        "L5_1+L1" => &[(1, 2, 1, 3), (1, 4, 1, 5)],
        "L5_4+L1" => &[(1, 3, 1, 5), (2, 4, 1, 5)],
        "L3+L3" => &[(1, 2, 1, 3), (4, 5, 1, 6)],
        "L6_4" => &[(1, 2, 1, 5), (1, 3, 1, 6), (2, 4, 1, 6)],
        "L6_5(-1)" => &[(1, 3, 1, 5), (1, 4, 1, 6), (2, 4, 1, 5), (2, 3, -1, 6)],
        "L6_3" => &[(1, 3, 1, 6), (1, 2, 1, 4), (2, 3, 1, 5)],
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    Ok(from_table(6, table).with_name(name))
}

/// Four-dimensional filiform algebra in the basis `(e, e1, e2, ē)`:
/// `[ē, e1] = e`, `[ē, e2] = e1`.
pub fn filiform4() -> LieAlgebra {
    from_table(4, &[(4, 2, 1, 1), (4, 3, 1, 2)]).with_name("filiform4")
}

/// The flat metric on `L6_4` with `<x1,x5> = a`, `<x1,x6> = 1`,
/// `<x2,x3> = b`, `<x2,x4> = c`, `<x4,x4> = d`, `<x5,x5> = 1/(3d)`.
pub fn l64_metric(a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar) -> Result<MetricLieAlgebra> {
    if b.is_zero() {
        return Err(Error::InvalidParameter("b must be nonzero".into()));
    }
    if !d.is_positive() {
        return Err(Error::InvalidParameter("d must be positive".into()));
    }
    let third = (&Scalar::from_int(3) * d).inv().expect("d > 0");
    let mut gram = Matrix::zeros(6, 6);
    for (i, j, v) in [
        (0, 4, a.clone()),
        (0, 5, Scalar::one()),
        (1, 2, b.clone()),
        (1, 3, c.clone()),
        (3, 3, d.clone()),
        (4, 4, third),
    ] {
        gram.set(i, j, v.clone());
        gram.set(j, i, v);
    }
    MetricLieAlgebra::new(sixdim_table("L6_4")?, BilinearForm::new(gram)?)
}

/// Closed-form Levi-Civita products `x_i . x_j` of [`l64_metric`], indexed
/// `[i][j]` from 0. Products not listed vanish.
pub fn l64_products(a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar) -> Result<Vec<Vec<Vector>>> {
    if b.is_zero() || !d.is_positive() {
        return Err(Error::InvalidParameter("need b != 0 and d > 0".into()));
    }
    let half = q(1, 2);
    let inv = |x: &Scalar| x.inv().expect("nonzero");
    let (ib, id) = (inv(b), inv(d));
    let bd = &ib * &id;
    let vec6 = |entries: &[(usize, Scalar)]| {
        let mut v = zero_vector(6);
        for (k, s) in entries {
            v[k - 1] = s.clone();
        }
        v
    };
    let mut t = vec![vec![zero_vector(6); 6]; 6];
    let c2 = &(c * c) * &(&(&ib * &ib) * &id);
    t[0][0] = vec6(&[(2, -&ib), (3, -&(&(a * &ib) + &c2)), (4, c * &bd)]);
    let x12_x3 = &(c * &bd) * &half;
    let x12_x4 = -&(&id * &half);
    let x12_x6 = a * &half;
    t[0][1] = vec6(&[(3, x12_x3.clone()), (4, x12_x4.clone()), (5, half.clone()), (6, x12_x6.clone())]);
    t[1][0] = vec6(&[(3, x12_x3), (4, x12_x4), (5, -&half), (6, x12_x6)]);
    t[0][2] = vec6(&[(6, Scalar::one())]);
    t[0][3] = vec6(&[(3, &ib * &half)]);
    t[3][0] = t[0][3].clone();
    t[0][4] = vec6(&[(3, -&(&bd * &q(1, 6)))]);
    t[4][0] = t[0][4].clone();
    t[1][3] = vec6(&[(6, half.clone())]);
    t[3][1] = vec6(&[(6, -&half)]);
    t[1][4] = vec6(&[(6, &id * &q(1, 6))]);
    t[4][1] = t[1][4].clone();
    Ok(t)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CenterBlock {
    Euclidean,
    Lorentzian,
}

/// `H3 ⊕ Z1` with `H3 = (x1, x2, x3)`, `[x1, x2] = x3`, and on `H3` the
/// form `[[0,0,α],[0,∓1,0],[α,0,0]]`: `-1` with Euclidean `Z1`, `+1`
/// with Lorentzian `Z1`.
pub fn theorem61_h3_metric(alpha: &Scalar, block: CenterBlock, z1dim: usize) -> Result<MetricLieAlgebra> {
    if alpha.is_zero() {
        return Err(Error::InvalidParameter("alpha must be nonzero".into()));
    }
    if block == CenterBlock::Lorentzian && z1dim == 0 {
        return Err(Error::InvalidParameter("a Lorentzian center block needs dimension >= 1".into()));
    }
    let n = 3 + z1dim;
    let mut gram = Matrix::zeros(n, n);
    gram.set(0, 2, alpha.clone());
    gram.set(2, 0, alpha.clone());
    let middle = match block {
        CenterBlock::Euclidean => -1,
        CenterBlock::Lorentzian => 1,
    };
    gram.set(1, 1, Scalar::from_int(middle));
    for i in 3..n {
        let s = if block == CenterBlock::Lorentzian && i == 3 { -1 } else { 1 };
        gram.set(i, i, Scalar::from_int(s));
    }
    let g = heisenberg(1)?.direct_sum(&LieAlgebra::abelian(z1dim));
    MetricLieAlgebra::new(g, BilinearForm::new(gram)?)
}

/// Frame `(e1, ē1, e2, ē2, z..., b...)` for the family with two isotropic
/// central directions. Vectors are in the coordinates of the ambient basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Frame62 {
    pub e1: Vector,
    pub ebar1: Vector,
    pub e2: Vector,
    pub ebar2: Vector,
    /// Basis of the Euclidean central block `Z1`.
    pub z: Vec<Vector>,
    /// The orthonormal vectors `b_i`.
    pub b: Vec<Vector>,
}

impl Frame62 {
    /// Unit vectors in frame order.
    pub fn standard(z1dim: usize, k: usize) -> Self {
        let n = 4 + z1dim + k;
        let u = |i| unit_vector(n, i);
        Self {
            e1: u(0),
            ebar1: u(1),
            e2: u(2),
            ebar2: u(3),
            z: (4..4 + z1dim).map(u).collect(),
            b: (4 + z1dim..n).map(u).collect(),
        }
    }

    pub fn len(&self) -> usize {
        4 + self.z.len() + self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vectors(&self) -> Vec<Vector> {
        let mut out = vec![self.e1.clone(), self.ebar1.clone(), self.e2.clone(), self.ebar2.clone()];
        out.extend(self.z.iter().cloned());
        out.extend(self.b.iter().cloned());
        out
    }

    /// Columns in frame order.
    pub fn matrix(&self) -> Result<Matrix> {
        let vs = self.vectors();
        Matrix::from_columns(vs[0].len(), &vs)
    }

    /// Gram matrix of the standard frame metric: two hyperbolic planes, the
    /// given diagonal on `Z1`, identity on the `b_i`.
    pub fn standard_gram(z_gram: &[Scalar], k: usize) -> Matrix {
        let n = 4 + z_gram.len() + k;
        let mut g = Matrix::zeros(n, n);
        for (i, j) in [(0, 1), (1, 0), (2, 3), (3, 2)] {
            g.set(i, j, Scalar::one());
        }
        for (i, s) in z_gram.iter().enumerate() {
            g.set(4 + i, 4 + i, s.clone());
        }
        for i in 4 + z_gram.len()..n {
            g.set(i, i, Scalar::one());
        }
        g
    }

    /// The form on the ambient space making this frame carry the standard
    /// frame metric: `P^{-T} G P^{-1}`.
    pub fn induced_form(&self, z_gram: &[Scalar]) -> Result<BilinearForm> {
        if z_gram.len() != self.z.len() {
            return Err(Error::DimensionMismatch {
                expected: self.z.len(),
                found: z_gram.len(),
            });
        }
        let p_inv = inverse(&self.matrix()?)?;
        let g = Self::standard_gram(z_gram, self.b.len());
        BilinearForm::new(&(&p_inv.transpose() * &g) * &p_inv)
    }
}

/// Bracket data `[ē1, ē2] = z0`, `[ē1, b_i] = α_i e1 + β_i e2`,
/// `[ē2, b_i] = γ_i e1 + δ_i e2` subject to
/// `3<z0, z0> = Σ (γ_i + β_i)² - 4 α_i δ_i`.
#[derive(Clone, PartialEq, Debug)]
pub struct Theorem62Data {
    pub alpha: Vec<Scalar>,
    pub beta: Vec<Scalar>,
    pub gamma: Vec<Scalar>,
    pub delta: Vec<Scalar>,
    /// Positive diagonal of the form on `Z1`; its length is `dim Z1`.
    pub z1_gram: Vec<Scalar>,
    /// `Z1` coordinates followed by the `e1` and `e2` coefficients.
    pub z0: Vector,
}

impl Theorem62Data {
    /// Unit form on `Z1`, `z0` given by its `Z1` coordinates.
    pub fn new(params: &[[Scalar; 4]], z0_z1: Vector) -> Self {
        let m = z0_z1.len();
        let mut z0 = z0_z1;
        z0.extend([Scalar::zero(), Scalar::zero()]);
        Self {
            alpha: params.iter().map(|p| p[0].clone()).collect(),
            beta: params.iter().map(|p| p[1].clone()).collect(),
            gamma: params.iter().map(|p| p[2].clone()).collect(),
            delta: params.iter().map(|p| p[3].clone()).collect(),
            z1_gram: vec![Scalar::one(); m],
            z0,
        }
    }

    pub fn k(&self) -> usize {
        self.alpha.len()
    }

    pub fn z1_dim(&self) -> usize {
        self.z1_gram.len()
    }

    pub fn dim(&self) -> usize {
        4 + self.z1_dim() + self.k()
    }

    /// `<z0, z0>`; the `e1`, `e2` parts are isotropic and orthogonal.
    pub fn z0_norm(&self) -> Scalar {
        self.z1_gram
            .iter()
            .zip(&self.z0)
            .map(|(g, z)| g * &z.square())
            .sum()
    }

    pub fn lhs(&self) -> Scalar {
        &Scalar::from_int(3) * &self.z0_norm()
    }

    pub fn rhs(&self) -> Scalar {
        constraint_rhs(&self.alpha, &self.beta, &self.gamma, &self.delta)
    }

    pub fn satisfies_constraint(&self) -> bool {
        self.lhs() == self.rhs()
    }

    fn validate_shape(&self) -> Result<()> {
        let k = self.k();
        for v in [&self.beta, &self.gamma, &self.delta] {
            if v.len() != k {
                return Err(Error::DimensionMismatch { expected: k, found: v.len() });
            }
        }
        if self.z0.len() != self.z1_dim() + 2 {
            return Err(Error::DimensionMismatch {
                expected: self.z1_dim() + 2,
                found: self.z0.len(),
            });
        }
        if self.z1_gram.iter().any(|g| !g.is_positive()) {
            return Err(Error::InvalidParameter("the form on Z1 must be positive".into()));
        }
        Ok(())
    }

    /// The metric algebra in frame order `(e1, ē1, e2, ē2, Z1, b)`.
    pub fn build(&self) -> Result<(MetricLieAlgebra, Frame62)> {
        self.validate_shape()?;
        if !self.satisfies_constraint() {
            return Err(Error::NormConstraint {
                lhs: self.lhs().to_string(),
                rhs: self.rhs().to_string(),
            });
        }
        self.build_unchecked()
    }

    /// As [`Theorem62Data::build`] without the norm constraint.
    pub fn build_unchecked(&self) -> Result<(MetricLieAlgebra, Frame62)> {
        self.validate_shape()?;
        let m = self.z1_dim();
        let k = self.k();
        let n = self.dim();
        let (e1, eb1, e2, eb2) = (0, 1, 2, 3);
        let mut z0 = zero_vector(n);
        z0[4..4 + m].clone_from_slice(&self.z0[..m]);
        z0[e1] = self.z0[m].clone();
        z0[e2] = self.z0[m + 1].clone();
        let mut brackets = vec![(eb1, eb2, z0)];
        for i in 0..k {
            let b = 4 + m + i;
            let mut v1 = zero_vector(n);
            v1[e1] = self.alpha[i].clone();
            v1[e2] = self.beta[i].clone();
            let mut v2 = zero_vector(n);
            v2[e1] = self.gamma[i].clone();
            v2[e2] = self.delta[i].clone();
            brackets.push((eb1, b, v1));
            brackets.push((eb2, b, v2));
        }
        let g = LieAlgebra::new(n, brackets)?;
        let form = BilinearForm::new(Frame62::standard_gram(&self.z1_gram, k))?;
        Ok((MetricLieAlgebra::new(g, form)?, Frame62::standard(m, k)))
    }

    /// Copy with `<z0, z0>` raised by `shift`, by rescaling the form on the
    /// first `Z1` direction that `z0` touches.
    pub fn shifted(&self, shift: &Scalar) -> Result<Self> {
        let j = self.z0[..self.z1_dim()]
            .iter()
            .position(|x| !x.is_zero())
            .ok_or_else(|| Error::InvalidParameter("z0 has no Z1 component".into()))?;
        let mut out = self.clone();
        let sq = self.z0[j].square();
        out.z1_gram[j] = &self.z1_gram[j] + &(shift / &sq);
        if !out.z1_gram[j].is_positive() {
            return Err(Error::InvalidParameter("shift makes the form on Z1 indefinite".into()));
        }
        Ok(out)
    }
}

pub fn constraint_rhs(alpha: &[Scalar], beta: &[Scalar], gamma: &[Scalar], delta: &[Scalar]) -> Scalar {
    let four = Scalar::from_int(4);
    (0..alpha.len())
        .map(|i| &(&gamma[i] + &beta[i]).square() - &(&four * &(&alpha[i] * &delta[i])))
        .sum()
}

/// `Z1` coordinates of a `z0` with `<z0, z0> = target` under the unit
/// form, as a sum of integer squares, when `target` is a nonnegative
/// integer needing at most `z1dim` squares.
pub fn suggest_z0(target: &Scalar, z1dim: usize) -> Option<Vector> {
    let t = target.to_rational()?;
    if !t.is_integer() || t < &num_rational::BigRational::from_integer(0.into()) {
        return None;
    }
    let t: u64 = t.to_integer().try_into().ok()?;
    fn search(t: u64, slots: usize, max: u64, acc: &mut Vec<u64>) -> bool {
        if t == 0 {
            return true;
        }
        if slots == 0 {
            return false;
        }
        let mut r = max.min((t as f64).sqrt() as u64 + 1);
        while r >= 1 {
            if r * r <= t {
                acc.push(r);
                if search(t - r * r, slots - 1, r, acc) {
                    return true;
                }
                acc.pop();
            }
            r -= 1;
        }
        false
    }
    let mut acc = Vec::new();
    if !search(t, z1dim, u64::MAX, &mut acc) {
        return None;
    }
    let mut v: Vector = acc.iter().map(|&r| Scalar::from_int(r as i64)).collect();
    v.resize(z1dim, Scalar::zero());
    Some(v)
}

/// Outcome of testing a frame against the bracket shape and constraint.
#[derive(Clone, PartialEq, Debug)]
pub struct Theorem62Verdict {
    /// The frame carries the standard frame metric with Euclidean `Z1`.
    pub normalization: bool,
    /// Brackets in the frame have the prescribed shape.
    pub shape: bool,
    /// `3<z0, z0>`, when the shape holds.
    pub lhs: Option<Scalar>,
    /// `Σ (γ_i + β_i)² - 4 α_i δ_i`, when the shape holds.
    pub rhs: Option<Scalar>,
    pub flat: bool,
}

impl Theorem62Verdict {
    pub fn constraint_holds(&self) -> bool {
        matches!((&self.lhs, &self.rhs), (Some(l), Some(r)) if l == r)
    }

    pub fn holds(&self) -> bool {
        self.normalization && self.shape && self.constraint_holds()
    }

    /// On a well-formed frame the constraint decides flatness.
    pub fn consistent(&self) -> bool {
        !(self.normalization && self.shape) || self.constraint_holds() == self.flat
    }
}

pub fn theorem62_check(mg: &MetricLieAlgebra, frame: &Frame62) -> Result<Theorem62Verdict> {
    let n = mg.dim();
    if frame.len() != n || frame.vectors().iter().any(|v| v.len() != n) {
        return Err(Error::InvalidParameter(format!(
            "frame must consist of {n} vectors of length {n}"
        )));
    }
    let p = frame.matrix()?;
    let inframe = mg.change_basis(&p).map_err(|e| match e {
        Error::Singular => Error::InvalidParameter("frame vectors are linearly dependent".into()),
        other => other,
    })?;
    let m = frame.z.len();
    let k = frame.b.len();
    let g = inframe.form().gram();

    let z_idx: Vec<usize> = (4..4 + m).collect();
    let z_block = g.select(&z_idx, &z_idx);
    let mut expected = Frame62::standard_gram(&vec![Scalar::one(); m], k);
    for (a, &i) in z_idx.iter().enumerate() {
        for (b, &j) in z_idx.iter().enumerate() {
            expected.set(i, j, z_block.get(a, b).clone());
        }
    }
    let normalization = g == &expected
        && BilinearForm::new(z_block).map(|f| f.signature() == Signature::new(0, 0, m)).unwrap_or(false);

    let alg = inframe.algebra();
    let (eb1, eb2) = (1, 3);
    let in_e = |v: &Vector| v.iter().enumerate().all(|(i, x)| i == 0 || i == 2 || x.is_zero());
    let mut shape = true;
    for i in 0..n {
        for j in i + 1..n {
            let v = alg.basis_bracket(i, j);
            if is_zero_vector(&v) {
                continue;
            }
            let ok = match (i, j) {
                (1, 3) => v.iter().enumerate().all(|(r, x)| (r == 0 || r == 2 || z_idx.contains(&r)) || x.is_zero()),
                (1, j) | (3, j) if j >= 4 + m => in_e(&v),
                _ => false,
            };
            shape &= ok;
        }
    }
    let (lhs, rhs) = if shape {
        let z0 = alg.basis_bracket(eb1, eb2);
        let lhs = &Scalar::from_int(3) * &inframe.form().norm(&z0);
        let bs = 4 + m..n;
        let alpha: Vec<Scalar> = bs.clone().map(|b| alg.basis_bracket(eb1, b)[0].clone()).collect();
        let beta: Vec<Scalar> = bs.clone().map(|b| alg.basis_bracket(eb1, b)[2].clone()).collect();
        let gamma: Vec<Scalar> = bs.clone().map(|b| alg.basis_bracket(eb2, b)[0].clone()).collect();
        let delta: Vec<Scalar> = bs.map(|b| alg.basis_bracket(eb2, b)[2].clone()).collect();
        (Some(lhs), Some(constraint_rhs(&alpha, &beta, &gamma, &delta)))
    } else {
        (None, None)
    };
    Ok(Theorem62Verdict {
        normalization,
        shape,
        lhs,
        rhs,
        flat: is_flat(mg),
    })
}

/// The four-dimensional family in the basis `(ē, e, e1, e2)`:
/// `[ē, e1] = βe`, `[ē, e2] = αe1 + γe`, `[e1, e2] = δe`, with `<ē, e> = 1`
/// and the given Lorentzian form on `span{e1, e2}`.
///
/// The metric is flat exactly when `δ = -α<e1, e1>`; other `δ` are rejected.
pub fn example4dim(
    alpha: &Scalar,
    beta: &Scalar,
    gamma: &Scalar,
    delta: &Scalar,
    form_b: &BilinearForm,
) -> Result<MetricLieAlgebra> {
    if form_b.dim() != 2 || form_b.signature() != Signature::new(1, 0, 1) {
        return Err(Error::InvalidParameter("the form on B must be 2-dimensional Lorentzian".into()));
    }
    let p = form_b.gram().get(0, 0);
    let required = -&(alpha * p);
    if delta != &required {
        return Err(Error::InvalidParameter(format!(
            "delta must equal -alpha<e1,e1> = {required} for a flat metric"
        )));
    }
    let v = |c: [&Scalar; 4]| c.iter().map(|x| (*x).clone()).collect::<Vector>();
    let z = Scalar::zero();
    let g = LieAlgebra::new(
        4,
        [
            (0, 2, v([&z, beta, &z, &z])),
            (0, 3, v([&z, gamma, alpha, &z])),
            (2, 3, v([&z, delta, &z, &z])),
        ],
    )?;
    let mut gram = Matrix::zeros(4, 4);
    gram.set(0, 1, Scalar::one());
    gram.set(1, 0, Scalar::one());
    for i in 0..2 {
        for j in 0..2 {
            gram.set(2 + i, 2 + j, form_b.gram().get(i, j).clone());
        }
    }
    MetricLieAlgebra::new(g, BilinearForm::new(gram)?)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FourDimClass {
    Abelian,
    H3PlusR,
    Filiform,
}

/// Class of a four-dimensional nilpotent algebra by fingerprint.
pub fn classify4(g: &LieAlgebra) -> Option<FourDimClass> {
    let fp = g.fingerprint();
    let refs: [(Fingerprint, FourDimClass); 3] = [
        (abelian(4).fingerprint(), FourDimClass::Abelian),
        (
            heisenberg(1).expect("k = 1").direct_sum(&LieAlgebra::abelian(1)).fingerprint(),
            FourDimClass::H3PlusR,
        ),
        (filiform4().fingerprint(), FourDimClass::Filiform),
    ];
    refs.into_iter().find(|(r, _)| *r == fp).map(|(_, c)| c)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Variant {
    Printed,
    Corrected,
}

/// An adapted frame for a row of the six-dimensional table, carrying the
/// standard frame metric.
#[derive(Clone, PartialEq, Debug)]
pub struct TableFrame {
    pub name: &'static str,
    pub variant: Variant,
    pub algebra: LieAlgebra,
    pub frame: Frame62,
    pub z_gram: Vec<Scalar>,
    pub note: &'static str,
}

impl TableFrame {
    /// The induced metric; fails when the frame is singular.
    pub fn metric(&self) -> Result<MetricLieAlgebra> {
        MetricLieAlgebra::new(self.algebra.clone(), self.frame.induced_form(&self.z_gram)?)
    }

    pub fn check(&self) -> Result<Theorem62Verdict> {
        theorem62_check(&self.metric()?, &self.frame)
    }

    pub fn label(&self) -> String {
        let v = match self.variant {
            Variant::Printed => "printed",
            Variant::Corrected => "corrected",
        };
        format!("{} ({v})", self.name)
    }
}

fn x(coeffs: &[(usize, Scalar)]) -> Vector {
    let mut v = zero_vector(6);
    for (i, c) in coeffs {
        v[i - 1] = c.clone();
    }
    v
}

fn xi(i: usize) -> Vector {
    unit_vector(6, i - 1)
}

/// Frames for the rows admitting a flat metric with two isotropic central
/// directions, as printed and, where the printed datum fails, corrected.
pub fn table_frames() -> Vec<TableFrame> {
    let l51 = sixdim_table("L5_1+L1").expect("known");
    let l51_frame = Frame62 {
        e1: xi(6),
        ebar1: xi(1),
        e2: xi(5),
        ebar2: xi(2),
        z: vec![xi(3)],
        b: vec![xi(4)],
    };
    let l33 = sixdim_table("L3+L3").expect("known");
    let l33_frame = |b1: usize| Frame62 {
        e1: xi(3),
        ebar1: xi(1),
        e2: xi(6),
        ebar2: xi(4),
        z: vec![],
        b: vec![xi(b1), xi(5)],
    };
    let s15 = Scalar::sqrt_of(15).expect("square-free");
    let l65_frame = Frame62 {
        e1: x(&[(5, Scalar::one()), (6, Scalar::one())]),
        ebar1: xi(1),
        e2: x(&[(6, Scalar::from_int(-2))]),
        ebar2: xi(2),
        z: vec![],
        b: vec![xi(4), x(&[(4, -&(&Scalar::from_int(3) + &s15)), (3, Scalar::from_int(-1))])],
    };
    let l63_frame = Frame62 {
        e1: xi(4),
        ebar1: xi(1),
        e2: x(&[(5, q(4, 3))]),
        ebar2: xi(3),
        z: vec![xi(6)],
        b: vec![xi(2)],
    };
    vec![
        TableFrame {
            name: "L5_1+L1",
            variant: Variant::Printed,
            algebra: l51.clone(),
            frame: l51_frame.clone(),
            z_gram: vec![Scalar::one()],
            note: "<z0,z0> = 1 gives 3 on the left against 1 on the right",
        },
        TableFrame {
            name: "L5_1+L1",
            variant: Variant::Corrected,
            algebra: l51,
            frame: l51_frame,
            z_gram: vec![q(1, 3)],
            note: "<z0,z0> = 1/3",
        },
        TableFrame {
            name: "L3+L3",
            variant: Variant::Printed,
            algebra: l33.clone(),
            frame: l33_frame(1),
            z_gram: vec![],
            note: "b1 = x1 repeats ē1 = x1, so the frame is singular",
        },
        TableFrame {
            name: "L3+L3",
            variant: Variant::Corrected,
            algebra: l33,
            frame: l33_frame(2),
            z_gram: vec![],
            note: "b1 = x2",
        },
        TableFrame {
            name: "L6_5(-1)",
            variant: Variant::Printed,
            algebra: sixdim_table("L6_5(-1)").expect("known"),
            frame: l65_frame,
            z_gram: vec![],
            note: "over Q(sqrt 15)",
        },
        TableFrame {
            name: "L6_3",
            variant: Variant::Printed,
            algebra: sixdim_table("L6_3").expect("known"),
            frame: l63_frame,
            z_gram: vec![Scalar::one()],
            note: "e2 = (4/3) x5",
        },
    ]
}

/// Every assignment of `x1..x6` to the frame slots, in both layouts
/// (one `Z1` direction and one `b`, or two `b`s), with the standard frame
/// metric.
pub fn permutation_frames(algebra: &LieAlgebra) -> Vec<(Frame62, Vec<Scalar>)> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (1..=6).collect();
    permutations(&mut perm, 0, &mut |p| {
        for z1 in [1usize, 0] {
            let v = |slot: usize| xi(p[slot]);
            out.push((
                Frame62 {
                    e1: v(0),
                    ebar1: v(1),
                    e2: v(2),
                    ebar2: v(3),
                    z: (4..4 + z1).map(v).collect(),
                    b: (4 + z1..6).map(v).collect(),
                },
                vec![Scalar::one(); z1],
            ));
        }
    });
    debug_assert_eq!(algebra.dim(), 6);
    out
}

fn permutations(v: &mut Vec<usize>, start: usize, f: &mut dyn FnMut(&[usize])) {
    if start == v.len() {
        f(v);
        return;
    }
    for i in start..v.len() {
        v.swap(start, i);
        permutations(v, start + 1, f);
        v.swap(start, i);
    }
}

/// A named metric algebra with an optional frame.
#[derive(Clone, PartialEq, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub metric: MetricLieAlgebra,
    pub frame: Option<Frame62>,
}

fn lorentz_plane() -> BilinearForm {
    BilinearForm::new(Matrix::from_ints(&[&[0, 1], &[1, 0]])).expect("symmetric")
}

/// The representative metric algebra for a catalog name. `R^n` is spelled
/// with a concrete `n`, e.g. `R^4`.
pub fn by_name(name: &str) -> Result<CatalogEntry> {
    let entry = |desc: &str, metric: MetricLieAlgebra, frame: Option<Frame62>| CatalogEntry {
        name: name.to_string(),
        description: desc.to_string(),
        metric,
        frame,
    };
    let corrected = |n: &str| {
        table_frames()
            .into_iter()
            .find(|t| t.name == n && t.variant == Variant::Corrected)
            .expect("listed")
    };
    let printed = |n: &str| {
        table_frames()
            .into_iter()
            .find(|t| t.name == n)
            .expect("listed")
    };
    if let Some(rest) = name.strip_prefix("R^") {
        let n: usize = rest
            .parse()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::UnknownName(name.to_string()))?;
        let diag: Vec<Scalar> = (0..n).map(|i| Scalar::from_int(if i < 2.min(n - 1) { -1 } else { 1 })).collect();
        let mg = MetricLieAlgebra::new(abelian(n), BilinearForm::diagonal(&diag))?;
        return Ok(entry("abelian, diagonal form", mg, None));
    }
    match name {
        "H3" => Ok(entry(
            "Heisenberg H3, form [[0,0,1],[0,-1,0],[1,0,0]]",
            theorem61_h3_metric(&Scalar::one(), CenterBlock::Euclidean, 0)?,
            None,
        )),
        "H5" => Ok(entry(
            "Heisenberg H5, Euclidean form (no flat metric of signature (2,3))",
            MetricLieAlgebra::new(heisenberg(2)?, BilinearForm::identity(5))?,
            None,
        )),
        "L3+3L1" => Ok(entry(
            "H3 plus Euclidean R^3, form [[0,0,1],[0,-1,0],[1,0,0]] on H3",
            theorem61_h3_metric(&Scalar::one(), CenterBlock::Euclidean, 3)?,
            None,
        )),
        "L5_4+L1" => Ok(entry(
            "H5 plus R, Euclidean form (no flat metric of signature (2,4))",
            MetricLieAlgebra::new(sixdim_table(name)?, BilinearForm::identity(6))?,
            None,
        )),
        "L5_1+L1" | "L3+L3" => {
            let t = corrected(name);
            Ok(entry(&format!("standard frame metric, {}", t.note), t.metric()?, Some(t.frame)))
        }
        "L6_5(-1)" | "L6_3" => {
            let t = printed(name);
            Ok(entry(&format!("standard frame metric, {}", t.note), t.metric()?, Some(t.frame)))
        }
        "L6_4" => Ok(entry(
            "flat metric with a = 0, b = 1, c = 0, d = 1",
            l64_metric(&Scalar::zero(), &Scalar::one(), &Scalar::zero(), &Scalar::one())?,
            None,
        )),
        "filiform4" => {
            let g = filiform4();
            let mut gram = Matrix::zeros(4, 4);
            gram.set(0, 3, Scalar::one());
            gram.set(3, 0, Scalar::one());
            for i in 0..2 {
                for j in 0..2 {
                    gram.set(1 + i, 1 + j, lorentz_plane().gram().get(i, j).clone());
                }
            }
            Ok(entry(
                "basis (e, e1, e2, ē), <e,ē> = 1, <e1,e2> = 1",
                MetricLieAlgebra::new(g, BilinearForm::new(gram)?)?,
                None,
            ))
        }
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

/// Flat instances of signature `(2, n-2)` built from the catalog.
pub fn flat_signature_two_instances() -> Vec<(String, MetricLieAlgebra)> {
    let mut out = Vec::new();
    for (a, b, c, d) in [(q(0, 1), q(1, 1), q(0, 1), q(1, 1)), (q(1, 1), q(2, 1), q(3, 1), q(1, 1)), (q(-1, 1), q(1, 2), q(2, 1), q(4, 1))] {
        out.push((
            format!("L6_4({a},{b},{c},{d})"),
            l64_metric(&a, &b, &c, &d).expect("valid parameters"),
        ));
    }
    for (alpha, block, m, label) in [
        (q(1, 1), CenterBlock::Euclidean, 0, "H3 Euclidean Z1 (alpha=1, dim Z1=0)"),
        (q(1, 1), CenterBlock::Euclidean, 1, "H3 Euclidean Z1 (alpha=1, dim Z1=1)"),
        (q(2, 1), CenterBlock::Lorentzian, 1, "H3 Lorentzian Z1 (alpha=2, dim Z1=1)"),
        (q(-3, 2), CenterBlock::Euclidean, 3, "L3+3L1 (alpha=-3/2)"),
    ] {
        out.push((label.to_string(), theorem61_h3_metric(&alpha, block, m).expect("alpha != 0")));
    }
    for t in table_frames() {
        if let Ok(mg) = t.metric() {
            if is_flat(&mg) {
                out.push((t.label(), mg));
            }
        }
    }
    let d1 = Theorem62Data::new(&[[q(0, 1), q(1, 1), q(2, 1), q(0, 1)]], vec![q(1, 1), q(1, 1), q(1, 1)]);
    let d2 = Theorem62Data::new(&[[q(1, 1), q(0, 1), q(0, 1), q(-3, 4)]], vec![q(1, 1)]);
    for (label, d) in [("two isotropic directions, dim 8", d1), ("two isotropic directions, L6_3 datum", d2)] {
        out.push((label.to_string(), d.build().expect("constraint holds").0));
    }
    let b = lorentz_plane();
    for (a, be, ga, label) in [(1, 1, 0, "4-dim family, filiform"), (0, 1, 1, "4-dim family, H3+R")] {
        let (a, be, ga) = (Scalar::from_int(a), Scalar::from_int(be), Scalar::from_int(ga));
        out.push((label.to_string(), example4dim(&a, &be, &ga, &Scalar::zero(), &b).expect("delta = 0 since <e1,e1> = 0")));
    }
    out.push(("filiform4".to_string(), by_name("filiform4").expect("listed").metric));
    out
}

/// Flat 2-step instances of several signatures: those of
/// [`flat_signature_two_instances`] plus Lorentzian and higher-index examples.
pub fn flat_two_step_instances() -> Vec<(String, MetricLieAlgebra)> {
    let mut out: Vec<_> = flat_signature_two_instances()
        .into_iter()
        .filter(|(_, mg)| mg.algebra().is_two_step())
        .collect();
    let base = MetricLieAlgebra::new(LieAlgebra::abelian(2), BilinearForm::identity(2)).expect("definite");
    let mut stage = ExtensionStage::zero(2);
    stage.b0 = vec![Scalar::one(), Scalar::zero()];
    let lorentz_h3 = double_extend(&AdmissibleQuadruple::new(base, stage))
        .expect("admissible over an abelian base")
        .0;
    let l64 = l64_metric(&q(0, 1), &q(1, 1), &q(0, 1), &q(1, 1)).expect("valid parameters");
    out.push(("Lorentzian H3+R".to_string(), lorentz_h3.clone()));
    out.push(("L6_4 + Lorentzian H3+R".to_string(), l64.direct_sum(&lorentz_h3)));
    out
}
