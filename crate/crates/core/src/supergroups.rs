//! The classical supergroups as predicates on A-points.
//!
//! `GL(m|n)` is the set of graded matrices with invertible `p` and `s`
//! bodies. The other series are stabilizers inside it:
//!
//! * `SL(m|n)`: `Ber(g) = 1`;
//! * `OSp(m|2n)`: `gˢᵗ Φ g = Φ` for the even form `Φ = diag(I_m, J_n)`;
//! * `πSp(n|n)`: the same condition for the odd form with identity
//!   off-diagonal blocks;
//! * `P(n)`: `πSp(n|n)` together with `Ber(g) = 1`.
//!
//! `Q(n)` needs the odd determinant and is rejected as unsupported.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Block, Error, Result};
use crate::linalg::RationalMatrix;
use crate::random::{self, SeededRng};
use crate::superalgebra::{AlgebraElement, AlgebraMorphism, Parity, Signature};
use crate::superflag::{self, BigCellPoint};
use crate::supermatrix::{BlockShape, SuperMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupLabel {
    Gl {
        m: usize,
        n: usize,
    },
    Sl {
        m: usize,
        n: usize,
    },
    /// `OSp(m|2n)`; `n` is half the odd dimension.
    Osp {
        m: usize,
        n: usize,
    },
    PiSp {
        n: usize,
    },
    P {
        n: usize,
    },
    Q {
        n: usize,
    },
}

impl GroupLabel {
    /// Row (and column) shape of the matrices the label is checked against.
    pub fn shape(&self) -> BlockShape {
        match *self {
            GroupLabel::Gl { m, n } | GroupLabel::Sl { m, n } => BlockShape::new(m, n),
            GroupLabel::Osp { m, n } => BlockShape::new(m, 2 * n),
            GroupLabel::PiSp { n } | GroupLabel::P { n } | GroupLabel::Q { n } => {
                BlockShape::new(n, n)
            }
        }
    }

    pub fn standard_form(&self) -> Option<StandardForm> {
        match *self {
            GroupLabel::Osp { m, n } => Some(StandardForm::osp(m, n)),
            GroupLabel::PiSp { n } | GroupLabel::P { n } => Some(StandardForm::pi(n)),
            _ => None,
        }
    }

    fn requires_unit_berezinian(&self) -> bool {
        matches!(self, GroupLabel::Sl { .. } | GroupLabel::P { .. })
    }

    fn check_supported(&self) -> Result<()> {
        if let GroupLabel::Q { .. } = self {
            return Err(Error::UnsupportedLabel(self.to_string()));
        }
        Ok(())
    }
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroupLabel::Gl { m, n } => write!(f, "GL({m}|{n})"),
            GroupLabel::Sl { m, n } => write!(f, "SL({m}|{n})"),
            GroupLabel::Osp { m, n } => write!(f, "OSp({m}|{})", 2 * n),
            GroupLabel::PiSp { n } => write!(f, "πSp({n}|{n})"),
            GroupLabel::P { n } => write!(f, "P({n})"),
            GroupLabel::Q { n } => write!(f, "Q({n})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormKind {
    /// Even form `diag(I_m, [[0, I_n], [−I_n, 0]])` on `k^{m|2n}`.
    Osp { m: usize, n: usize },
    /// Odd form `[[0, I_n], [I_n, 0]]` on `k^{n|n}`.
    Pi { n: usize },
}

/// A standard bilinear form `Φ` with rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardForm {
    pub kind: FormKind,
    pub shape: BlockShape,
    pub matrix: RationalMatrix,
}

impl StandardForm {
    pub fn osp(m: usize, n: usize) -> Self {
        let size = m + 2 * n;
        let matrix = RationalMatrix::from_fn(size, size, |i, j| {
            let v = if i < m || j < m {
                i64::from(i == j)
            } else {
                let (a, b) = (i - m, j - m);
                if a < n && b == a + n {
                    1
                } else if a >= n && b + n == a {
                    -1
                } else {
                    0
                }
            };
            BigRational::from_integer(v.into())
        });
        StandardForm {
            kind: FormKind::Osp { m, n },
            shape: BlockShape::new(m, 2 * n),
            matrix,
        }
    }

    pub fn pi(n: usize) -> Self {
        let matrix = RationalMatrix::from_fn(2 * n, 2 * n, |i, j| {
            BigRational::from_integer(i64::from(i + n == j || j + n == i).into())
        });
        StandardForm {
            kind: FormKind::Pi { n },
            shape: BlockShape::new(n, n),
            matrix,
        }
    }

    pub fn parity(&self) -> Parity {
        match self.kind {
            FormKind::Osp { .. } => Parity::Even,
            FormKind::Pi { .. } => Parity::Odd,
        }
    }

    /// `Φ` as a matrix over `sig`. The odd form is not a graded (even)
    /// supermatrix, so this is an intermediate value only.
    pub fn over(&self, sig: Signature) -> SuperMatrix {
        SuperMatrix::from_fn_unchecked(sig, self.shape, self.shape, |i, j| {
            AlgebraElement::constant(sig, self.matrix[(i, j)].clone())
        })
    }

    /// `gˢᵗ Φ g − Φ`.
    pub fn residual(&self, g: &SuperMatrix) -> SuperMatrix {
        let phi = self.over(g.signature());
        &(&(&g.supertranspose() * &phi) * g) - &phi
    }

    /// `Xˢᵗ Φ + Φ X`, the infinitesimal form condition.
    pub fn lie_residual(&self, x: &SuperMatrix) -> SuperMatrix {
        let phi = self.over(x.signature());
        &(&x.supertranspose() * &phi) + &(&phi * x)
    }

    /// The form evaluated on the transformed basis columns `g eᵢ`, `g eⱼ`:
    /// `ψ(u, v) = Σ σ(u,k) u_k Φ_kl v_l`, where `σ(u,k) = −1` exactly when the
    /// column `u` is odd and `k` is an even index (the supertranspose of a
    /// single homogeneous column). Returns true iff `ψ(g eᵢ, g eⱼ) = Φᵢⱼ` for
    /// all pairs.
    pub fn preserved_on_basis_pairs(&self, g: &SuperMatrix) -> bool {
        let sig = g.signature();
        let size = self.shape.total();
        for i in 0..size {
            let column_odd = self.shape.parity(i).is_odd();
            for j in 0..size {
                let mut value = AlgebraElement::zero(sig);
                for k in 0..size {
                    let u = g.get(k, i);
                    if u.is_zero() {
                        continue;
                    }
                    let flip = column_odd && !self.shape.parity(k).is_odd();
                    for l in 0..size {
                        let phi = &self.matrix[(k, l)];
                        if phi.is_zero() {
                            continue;
                        }
                        let term = (u * g.get(l, j)).scale(phi);
                        value = if flip { value - term } else { value + term };
                    }
                }
                if value != AlgebraElement::constant(sig, self.matrix[(i, j)].clone()) {
                    return false;
                }
            }
        }
        true
    }
}

/// First violated membership condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    SingularBody(Block),
    Berezinian(AlgebraElement),
    FormResidual(SuperMatrix),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SingularBody(b) => write!(f, "body of {b} is singular"),
            Violation::Berezinian(ber) => write!(f, "Berezinian is {ber}, not 1"),
            Violation::FormResidual(r) => write!(f, "form residual is nonzero:\n{r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub violation: Option<Violation>,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        self.violation.is_none()
    }

    fn fail(v: Violation) -> Self {
        Membership { violation: Some(v) }
    }
}

fn check_shape(label: &GroupLabel, g: &SuperMatrix) -> Result<()> {
    let shape = label.shape();
    if g.row_shape() != shape || g.col_shape() != shape {
        return Err(Error::ShapeMismatch {
            op: "group membership",
            left: format!("{label} on {shape}x{shape}"),
            right: format!("{}x{}", g.row_shape(), g.col_shape()),
        });
    }
    if let Some((row, col)) = g.grading_violation() {
        return Err(Error::GradingViolation { row, col });
    }
    Ok(())
}

/// Exact membership test, reporting the first violated condition.
pub fn group_contains(label: &GroupLabel, g: &SuperMatrix) -> Result<Membership> {
    label.check_supported()?;
    check_shape(label, g)?;
    match g.berezinian() {
        Err(Error::NotInvertible { block }) => {
            return Ok(Membership::fail(Violation::SingularBody(block)));
        }
        Err(e) => return Err(e),
        Ok(ber) => {
            if label.requires_unit_berezinian() && !ber.is_one() {
                return Ok(Membership::fail(Violation::Berezinian(ber)));
            }
        }
    }
    if let Some(form) = label.standard_form() {
        let residual = form.residual(g);
        if !residual.is_zero() {
            return Ok(Membership::fail(Violation::FormResidual(residual)));
        }
    }
    Ok(Membership { violation: None })
}

/// The linear condition defining the Lie superalgebra of `label`.
pub fn lie_algebra_contains(label: &GroupLabel, x: &SuperMatrix) -> Result<bool> {
    label.check_supported()?;
    check_shape(label, x)?;
    if label.requires_unit_berezinian() && !x.supertrace()?.is_zero() {
        return Ok(false);
    }
    if let Some(form) = label.standard_form() {
        return Ok(form.lie_residual(x).is_zero());
    }
    Ok(true)
}

/// Positions of a square shape whose block parity is `parity`.
fn positions(shape: BlockShape, parity: Parity) -> Vec<(usize, usize)> {
    let n = shape.total();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| shape.parity(i) + shape.parity(j) == parity)
        .collect()
}

/// Basis, over ℚ, of the rational patterns `E` supported on positions of the
/// given block parity such that `m·E` lies in the Lie superalgebra for every
/// monomial `m` of that parity. The constraints are linear in the entries and
/// depend only on positions, so solving them once at body level suffices.
pub fn lie_algebra_basis(label: &GroupLabel, parity: Parity) -> Result<Vec<RationalMatrix>> {
    label.check_supported()?;
    let shape = label.shape();
    let size = shape.total();
    let pos = positions(shape, parity);
    let scalars = Signature::scalars();
    let elementary = |&(a, b): &(usize, usize)| {
        SuperMatrix::from_fn_unchecked(scalars, shape, shape, |i, j| {
            AlgebraElement::from_int(scalars, i64::from((i, j) == (a, b)))
        })
    };
    // One column per position; rows are the flattened constraint values.
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    let columns: Vec<SuperMatrix> = pos.iter().map(elementary).collect();
    if label.requires_unit_berezinian() {
        rows.push(
            columns
                .iter()
                .map(|e| e.supertrace().expect("square").body())
                .collect(),
        );
    }
    if let Some(form) = label.standard_form() {
        let residuals: Vec<RationalMatrix> = columns
            .iter()
            .map(|e| form.lie_residual(e).body())
            .collect();
        for i in 0..size {
            for j in 0..size {
                rows.push(residuals.iter().map(|r| r[(i, j)].clone()).collect());
            }
        }
    }
    let constraint = if rows.is_empty() {
        RationalMatrix::zeros(0, pos.len())
    } else {
        RationalMatrix::from_rows(rows)
    };
    Ok(constraint
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut m = RationalMatrix::zeros(size, size);
            for (&(i, j), c) in pos.iter().zip(v) {
                m[(i, j)] = c;
            }
            m
        })
        .collect())
}

/// A random element of the Lie superalgebra with zero body:
/// `Σ mₖ Eₖ` for a few random monomials `mₖ` and random rational
/// combinations `Eₖ` of the basis patterns of matching parity.
pub fn random_lie_element(
    label: &GroupLabel,
    sig: Signature,
    rng: &mut SeededRng,
) -> Result<SuperMatrix> {
    let shape = label.shape();
    let mut x = SuperMatrix::zeros(sig, shape, shape);
    for parity in [Parity::Even, Parity::Odd] {
        let basis = lie_algebra_basis(label, parity)?;
        if basis.is_empty() {
            continue;
        }
        for _ in 0..3 {
            let Some(m) = random::soul_monomial(rng, sig, parity) else {
                continue;
            };
            let mut pattern = RationalMatrix::zeros(shape.total(), shape.total());
            for b in &basis {
                let c = random::small_int(rng, 2);
                if c.is_zero() {
                    continue;
                }
                for i in 0..shape.total() {
                    for j in 0..shape.total() {
                        if !b[(i, j)].is_zero() {
                            pattern[(i, j)] += &c * &b[(i, j)];
                        }
                    }
                }
            }
            let term = SuperMatrix::from_fn(sig, shape, shape, |i, j| {
                AlgebraElement::monomial(sig, m, pattern[(i, j)].clone()).expect("fits")
            })?;
            x = &x + &term;
        }
    }
    Ok(x)
}

fn orthogonal_body(rng: &mut SeededRng, m: usize) -> RationalMatrix {
    let mut o = RationalMatrix::identity(m);
    if m >= 2 {
        for _ in 0..3 {
            let a = rng.random_range(0..m);
            let b = (a + rng.random_range(1..m)) % m;
            // Rational rotation from a Pythagorean parametrization.
            let t = random::rational(rng.random_range(-3i64..=3), rng.random_range(1i64..=3));
            let denom = BigRational::one() + &t * &t;
            let c = (BigRational::one() - &t * &t) / &denom;
            let s = (&t + &t) / &denom;
            let mut rot = RationalMatrix::identity(m);
            rot[(a, a)] = c.clone();
            rot[(b, b)] = c;
            rot[(a, b)] = -s.clone();
            rot[(b, a)] = s;
            o = &rot * &o;
        }
    }
    for i in 0..m {
        if rng.random_bool(0.3) {
            for j in 0..m {
                o[(i, j)] = -o[(i, j)].clone();
            }
        }
    }
    o
}

fn symplectic_body(rng: &mut SeededRng, n: usize) -> RationalMatrix {
    let size = 2 * n;
    let j = StandardForm::osp(0, n).matrix;
    let mut sp = RationalMatrix::identity(size);
    for _ in 0..3 {
        // Transvection x ↦ x + c v (vᵀ J x).
        let v = RationalMatrix::from_fn(size, 1, |_, _| random::small_int(rng, 2));
        let c = random::nonzero_rational(rng);
        let vvt_j = &(&v * &v.transpose()) * &j;
        let t = RationalMatrix::from_fn(size, size, |a, b| {
            let id = if a == b {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            id + &c * &vvt_j[(a, b)]
        });
        sp = &t * &sp;
    }
    sp
}

fn unimodular_body(rng: &mut SeededRng, n: usize) -> RationalMatrix {
    let mut u = RationalMatrix::identity(n);
    if n >= 2 {
        for _ in 0..4 {
            let a = rng.random_range(0..n);
            let b = (a + rng.random_range(1..n)) % n;
            let mut e = RationalMatrix::identity(n);
            e[(a, b)] = random::small_int(rng, 2);
            u = &e * &u;
        }
    }
    u
}

fn inverse_transpose(m: &RationalMatrix) -> RationalMatrix {
    m.inverse().expect("invertible body").transpose()
}

/// Rational body of a classical group element, block diagonal.
fn group_body(label: &GroupLabel, rng: &mut SeededRng) -> Result<RationalMatrix> {
    let body = match *label {
        GroupLabel::Gl { m, n } => random::block_diagonal(
            &random::invertible_rational(rng, m),
            &random::invertible_rational(rng, n),
        ),
        GroupLabel::Sl { m, n } => {
            let mut p = random::invertible_rational(rng, m);
            let mut s = random::invertible_rational(rng, n);
            // Rescale one row so that det(p) = det(s).
            if m > 0 {
                let f = s.det() / p.det();
                for j in 0..m {
                    p[(0, j)] = &p[(0, j)] * &f;
                }
            } else if n > 0 {
                let f = s.det().recip();
                for j in 0..n {
                    s[(0, j)] = &s[(0, j)] * &f;
                }
            }
            random::block_diagonal(&p, &s)
        }
        GroupLabel::Osp { m, n } => {
            random::block_diagonal(&orthogonal_body(rng, m), &symplectic_body(rng, n))
        }
        GroupLabel::PiSp { n } => {
            let p = random::invertible_rational(rng, n);
            let s = inverse_transpose(&p);
            random::block_diagonal(&p, &s)
        }
        GroupLabel::P { n } => {
            // det(p)² = 1 forces Ber = 1 on the body.
            let p = unimodular_body(rng, n);
            let s = inverse_transpose(&p);
            random::block_diagonal(&p, &s)
        }
        GroupLabel::Q { .. } => return Err(Error::UnsupportedLabel(label.to_string())),
    };
    Ok(body)
}

/// A deterministic pseudo-random member of `label` over `sig`: a rational
/// element of the classical group times `exp(X)` for a random soul-only Lie
/// superalgebra element `X`.
pub fn random_group_element(label: &GroupLabel, sig: Signature, seed: u64) -> Result<SuperMatrix> {
    label.check_supported()?;
    let mut rng = random::rng_from_seed(seed);
    let shape = label.shape();
    let body = SuperMatrix::from_rational(sig, shape, shape, &group_body(label, &mut rng)?)?;
    let x = random_lie_element(label, sig, &mut rng)?;
    Ok(&body * &x.exp_nilpotent()?)
}

/// Checks `φ(Ber g) = Ber(φ g)` and `φ(g·gˢᵗ) = φ(g)·φ(gˢᵗ)` (companion
/// pair `(g, gˢᵗ)`).
pub fn naturality_check(phi: &AlgebraMorphism, g: &SuperMatrix) -> Result<bool> {
    if phi.source() != g.signature() {
        return Err(Error::SignatureMismatch {
            left: g.signature(),
            right: phi.source(),
        });
    }
    let image = g.map_entries(phi)?;
    let ber_then_phi = phi.apply(&g.berezinian()?)?;
    let phi_then_ber = image.berezinian()?;
    if ber_then_phi != phi_then_ber {
        return Ok(false);
    }
    let companion = g.supertranspose();
    let lhs = (g * &companion).map_entries(phi)?;
    let rhs = &image * &companion.map_entries(phi)?;
    Ok(lhs == rhs)
}

/// The actions whose axioms can be checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupAction {
    /// `GL(4|1)` on big-cell coordinates of the superflag.
    Flag,
    /// `GL(m|n)` on even column vectors `A^{m|n}`.
    Linear,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionPoint {
    BigCell(BigCellPoint),
    Column(SuperMatrix),
}

fn act(action: GroupAction, g: &SuperMatrix, x: &ActionPoint) -> Result<ActionPoint> {
    match (action, x) {
        (GroupAction::Flag, ActionPoint::BigCell(pt)) => match superflag::flag_act(g, pt) {
            Ok(p) => Ok(ActionPoint::BigCell(p)),
            Err(Error::OutsideBigCell(f)) => Err(Error::DomainError(format!(
                "flag action leaves the big cell: {f}"
            ))),
            Err(e) => Err(e),
        },
        (GroupAction::Linear, ActionPoint::Column(v)) => {
            if v.col_shape() != BlockShape::new(1, 0) {
                return Err(Error::ShapeMismatch {
                    op: "linear action",
                    left: "(m|n)x(1|0) column".into(),
                    right: format!("{}x{}", v.row_shape(), v.col_shape()),
                });
            }
            Ok(ActionPoint::Column(g.try_mul(v)?))
        }
        _ => Err(Error::ShapeMismatch {
            op: "action",
            left: format!("{action:?}"),
            right: "point of a different action".into(),
        }),
    }
}

/// `1·x = x` and `(g₁g₂)·x = g₁·(g₂·x)`.
pub fn action_axioms_check(
    action: GroupAction,
    g1: &SuperMatrix,
    g2: &SuperMatrix,
    x: &ActionPoint,
) -> Result<bool> {
    let identity = SuperMatrix::identity(g1.signature(), g1.row_shape());
    if act(action, &identity, x)? != *x {
        return Ok(false);
    }
    let product = g1.try_mul(g2)?;
    let lhs = act(action, &product, x)?;
    let rhs = act(action, g1, &act(action, g2, x)?)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    fn labels() -> Vec<GroupLabel> {
        vec![
            GroupLabel::Gl { m: 2, n: 2 },
            GroupLabel::Sl { m: 2, n: 2 },
            GroupLabel::Osp { m: 2, n: 1 },
            GroupLabel::Osp { m: 1, n: 1 },
            GroupLabel::PiSp { n: 2 },
            GroupLabel::P { n: 2 },
        ]
    }

    #[test]
    fn identity_belongs_to_every_group() {
        let s = sig(0, 4);
        for label in labels() {
            let id = SuperMatrix::identity(s, label.shape());
            assert!(group_contains(&label, &id).unwrap().is_member(), "{label}");
            let zero = SuperMatrix::zeros(s, label.shape(), label.shape());
            assert!(lie_algebra_contains(&label, &zero).unwrap(), "{label}");
        }
    }

    #[test]
    fn gl_and_sl_examples() {
        let s = sig(0, 2);
        let shape = BlockShape::new(1, 1);
        let th = |j| AlgebraElement::odd_generator(s, j).unwrap();
        let one = AlgebraElement::one(s);
        let g = SuperMatrix::new(
            s,
            shape,
            shape,
            vec![vec![one.clone(), th(0)], vec![th(1), one]],
        )
        .unwrap();
        assert!(group_contains(&GroupLabel::Gl { m: 1, n: 1 }, &g)
            .unwrap()
            .is_member());

        let d = SuperMatrix::from_integers(s, shape, shape, &[&[2, 0], &[0, 1]]).unwrap();
        let m = group_contains(&GroupLabel::Sl { m: 1, n: 1 }, &d).unwrap();
        assert_eq!(
            m.violation,
            Some(Violation::Berezinian(AlgebraElement::from_int(s, 2)))
        );
    }

    #[test]
    fn shape_mismatch_and_unsupported() {
        let s = sig(0, 2);
        let id = SuperMatrix::identity(s, BlockShape::new(2, 1));
        assert!(matches!(
            group_contains(&GroupLabel::Gl { m: 1, n: 1 }, &id),
            Err(Error::ShapeMismatch { .. })
        ));
        let q = GroupLabel::Q { n: 2 };
        assert!(matches!(
            group_contains(&q, &SuperMatrix::identity(s, q.shape())),
            Err(Error::UnsupportedLabel(_))
        ));
        assert!(matches!(
            random_group_element(&q, s, 0),
            Err(Error::UnsupportedLabel(_))
        ));
    }

    #[test]
    fn lie_basis_dimensions() {
        // osp(2|2): even part so(2) ⊕ sp(2) has dim 1 + 3, odd part 2·2.
        let osp = GroupLabel::Osp { m: 2, n: 1 };
        assert_eq!(lie_algebra_basis(&osp, Parity::Even).unwrap().len(), 4);
        assert_eq!(lie_algebra_basis(&osp, Parity::Odd).unwrap().len(), 4);
        // p(2): a arbitrary (4), d = −aᵀ; b symmetric (3), c antisymmetric (1).
        let pi = GroupLabel::PiSp { n: 2 };
        assert_eq!(lie_algebra_basis(&pi, Parity::Even).unwrap().len(), 4);
        assert_eq!(lie_algebra_basis(&pi, Parity::Odd).unwrap().len(), 4);
        let sl = GroupLabel::Sl { m: 2, n: 2 };
        assert_eq!(lie_algebra_basis(&sl, Parity::Even).unwrap().len(), 7);
        assert_eq!(lie_algebra_basis(&sl, Parity::Odd).unwrap().len(), 8);
    }

    #[test]
    fn solved_osp_direction_is_in_the_lie_algebra() {
        let s = sig(0, 2);
        let label = GroupLabel::Osp { m: 2, n: 1 };
        let shape = label.shape();
        let theta = AlgebraElement::odd_generator(s, 0).unwrap();
        for b in lie_algebra_basis(&label, Parity::Odd).unwrap() {
            let x = SuperMatrix::from_fn(s, shape, shape, |i, j| theta.scale(&b[(i, j)])).unwrap();
            assert!(lie_algebra_contains(&label, &x).unwrap());
            let g = x.exp_nilpotent().unwrap();
            assert!(group_contains(&label, &g).unwrap().is_member());
        }
    }

    #[test]
    fn random_members_are_members() {
        let s = sig(0, 4);
        for label in labels() {
            for seed in 0..10 {
                let g = random_group_element(&label, s, seed).unwrap();
                let m = group_contains(&label, &g).unwrap();
                assert!(m.is_member(), "{label} seed {seed}: {:?}", m.violation);
            }
        }
    }

    #[test]
    fn determinism_and_variation() {
        let s = sig(0, 4);
        let label = GroupLabel::Gl { m: 2, n: 2 };
        assert_eq!(
            random_group_element(&label, s, 5).unwrap(),
            random_group_element(&label, s, 5).unwrap()
        );
        assert_ne!(
            random_group_element(&label, s, 5).unwrap(),
            random_group_element(&label, s, 6).unwrap()
        );
    }

    #[test]
    fn basis_pair_formulation_agrees_with_matrix_formulation() {
        let s = sig(0, 4);
        for label in [GroupLabel::Osp { m: 2, n: 1 }, GroupLabel::PiSp { n: 2 }] {
            let form = label.standard_form().unwrap();
            for seed in 0..5 {
                let g = random_group_element(&label, s, seed).unwrap();
                assert!(form.preserved_on_basis_pairs(&g));
                let h = random_group_element(&GroupLabel::Gl { m: 2, n: 2 }, s, seed).unwrap();
                assert_eq!(
                    form.preserved_on_basis_pairs(&h),
                    group_contains(&label, &h).unwrap().is_member()
                );
            }
        }
    }

    #[test]
    fn naturality_examples() {
        let s = sig(0, 4);
        let g = random_group_element(&GroupLabel::Gl { m: 2, n: 2 }, s, 1).unwrap();
        assert!(naturality_check(&AlgebraMorphism::identity(s), &g).unwrap());
        let body = AlgebraMorphism::body_projection(s, Signature::scalars());
        assert!(naturality_check(&body, &g).unwrap());
        // Ber(body(g)) = body(Ber(g))
        let bg = g.map_entries(&body).unwrap();
        assert_eq!(
            bg.berezinian().unwrap().body(),
            g.berezinian().unwrap().body()
        );
    }

    #[test]
    fn linear_action_axioms() {
        let s = sig(0, 4);
        let label = GroupLabel::Gl { m: 2, n: 2 };
        let g1 = random_group_element(&label, s, 1).unwrap();
        let g2 = random_group_element(&label, s, 2).unwrap();
        let mut rng = random::rng_from_seed(9);
        let v = random::graded_matrix(&mut rng, s, label.shape(), BlockShape::new(1, 0), 3, 2);
        assert!(
            action_axioms_check(GroupAction::Linear, &g1, &g2, &ActionPoint::Column(v)).unwrap()
        );
    }
}
