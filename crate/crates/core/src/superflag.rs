//! Big-cell coordinates on the superflag of `2|0 ⊂ 2|1` subspaces of
//! `k^{4|1}`, the super-Poincaré subgroup and its action.
//!
//! A `(4|1)×(4|1)` matrix is split as
//!
//! ```text
//!     [ Z   *   τ₁ ]    Z, W: 2×2 even
//! g = [ W   *   τ₂ ]    τ₁, τ₂: 2×1 odd
//!     [ ρ₁  *   g₅₅]    ρ₁: 1×2 odd
//! ```
//!
//! and the flag spanned by its first columns has coordinates
//! `A = W Z⁻¹`, `α = ρ₁ Z⁻¹`, `β = (τ₂ − W Z⁻¹ τ₁) d` with
//! `d = (g₅₅ − ρ₁ Z⁻¹ τ₁)⁻¹`.

use std::fmt;

use num_traits::Zero;
use rand::Rng;

use crate::error::{BigCellFailure, Error, Result};
use crate::linalg::RationalMatrix;
use crate::random;
use crate::superalgebra::{AlgebraElement, AlgebraMorphism, Monomial, Parity, Signature};
use crate::supermatrix::{BlockShape, SuperMatrix};

/// Row and column shape of the ambient matrices.
pub const FLAG_SHAPE: BlockShape = BlockShape::new(4, 1);

const EVEN2: BlockShape = BlockShape::new(2, 0);
const ODD1: BlockShape = BlockShape::new(0, 1);

/// Zero positions of the stabilizer of the base flag (0-based).
pub const STABILIZER_ZEROS: [(usize, usize); 8] = [
    (2, 0),
    (2, 1),
    (3, 0),
    (3, 1),
    (4, 0),
    (4, 1),
    (2, 4),
    (3, 4),
];

fn expect_shape(name: &str, m: &SuperMatrix, rows: BlockShape, cols: BlockShape) -> Result<()> {
    if m.row_shape() != rows || m.col_shape() != cols {
        return Err(Error::ShapeMismatch {
            op: "superflag",
            left: format!("{name} must be {rows}x{cols}"),
            right: format!("{}x{}", m.row_shape(), m.col_shape()),
        });
    }
    if let Some((row, col)) = m.grading_violation() {
        return Err(Error::GradingViolation { row, col });
    }
    Ok(())
}

fn expect_sig(sig: Signature, other: Signature) -> Result<()> {
    if sig != other {
        return Err(Error::SignatureMismatch {
            left: sig,
            right: other,
        });
    }
    Ok(())
}

/// Coordinates `(A, α, β)` of a flag in the big cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigCellPoint {
    a: SuperMatrix,
    alpha: SuperMatrix,
    beta: SuperMatrix,
}

impl BigCellPoint {
    /// `a` is `(2|0)×(2|0)`, `alpha` is `(0|1)×(2|0)` and `beta` is
    /// `(2|0)×(0|1)`, all graded and over one signature.
    pub fn new(a: SuperMatrix, alpha: SuperMatrix, beta: SuperMatrix) -> Result<Self> {
        expect_shape("A", &a, EVEN2, EVEN2)?;
        expect_shape("alpha", &alpha, ODD1, EVEN2)?;
        expect_shape("beta", &beta, EVEN2, ODD1)?;
        expect_sig(a.signature(), alpha.signature())?;
        expect_sig(a.signature(), beta.signature())?;
        Ok(BigCellPoint { a, alpha, beta })
    }

    /// The base flag `(0, 0, 0)`.
    pub fn origin(sig: Signature) -> Self {
        BigCellPoint {
            a: SuperMatrix::zeros(sig, EVEN2, EVEN2),
            alpha: SuperMatrix::zeros(sig, ODD1, EVEN2),
            beta: SuperMatrix::zeros(sig, EVEN2, ODD1),
        }
    }

    pub fn a(&self) -> &SuperMatrix {
        &self.a
    }

    pub fn alpha(&self) -> &SuperMatrix {
        &self.alpha
    }

    pub fn beta(&self) -> &SuperMatrix {
        &self.beta
    }

    pub fn signature(&self) -> Signature {
        self.a.signature()
    }

    /// The second-chart coordinate `B = A − βα`.
    pub fn b(&self) -> SuperMatrix {
        &self.a - &(&self.beta * &self.alpha)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.alpha.is_zero() && self.beta.is_zero()
    }

    /// Componentwise difference.
    pub fn difference(&self, other: &BigCellPoint) -> Result<BigCellPoint> {
        Ok(BigCellPoint {
            a: self.a.try_sub(&other.a)?,
            alpha: self.alpha.try_sub(&other.alpha)?,
            beta: self.beta.try_sub(&other.beta)?,
        })
    }

    pub fn map_entries(&self, phi: &AlgebraMorphism) -> Result<BigCellPoint> {
        Ok(BigCellPoint {
            a: self.a.map_entries(phi)?,
            alpha: self.alpha.map_entries(phi)?,
            beta: self.beta.map_entries(phi)?,
        })
    }

    /// The section `[[I, 0, 0], [A, I, β], [α, 0, 1]]` of the quotient map.
    pub fn lift(&self) -> SuperMatrix {
        let sig = self.signature();
        SuperMatrix::from_fn(sig, FLAG_SHAPE, FLAG_SHAPE, |i, j| match (i, j) {
            _ if i == j => AlgebraElement::one(sig),
            (2..=3, 0..=1) => self.a.get(i - 2, j).clone(),
            (2..=3, 4) => self.beta.get(i - 2, 0).clone(),
            (4, 0..=1) => self.alpha.get(0, j).clone(),
            _ => AlgebraElement::zero(sig),
        })
        .expect("graded by construction")
    }
}

impl fmt::Display for BigCellPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "A = {}alpha = {}beta = {}",
            self.a, self.alpha, self.beta
        )
    }
}

struct FlagBlocks {
    z: SuperMatrix,
    w: SuperMatrix,
    rho1: SuperMatrix,
    tau1: SuperMatrix,
    tau2: SuperMatrix,
    g55: AlgebraElement,
}

impl FlagBlocks {
    fn of(g: &SuperMatrix) -> Result<Self> {
        expect_shape("g", g, FLAG_SHAPE, FLAG_SHAPE)?;
        Ok(FlagBlocks {
            z: g.block(0..2, 0..2),
            w: g.block(2..4, 0..2),
            rho1: g.block(4..5, 0..2),
            tau1: g.block(0..2, 4..5),
            tau2: g.block(2..4, 4..5),
            g55: g.get(4, 4).clone(),
        })
    }

    fn z_inverse(&self) -> Result<SuperMatrix> {
        if self.z.det_even()?.body().is_zero() {
            return Err(Error::OutsideBigCell(BigCellFailure::DetZ));
        }
        self.z.inverse_even()
    }

    fn g55_inverse(&self) -> Result<AlgebraElement> {
        self.g55
            .inv()
            .map_err(|_| Error::OutsideBigCell(BigCellFailure::G55))
    }

    /// `(V, Y)` of the second chart.
    fn second_chart(&self) -> Result<(SuperMatrix, SuperMatrix)> {
        let g55_inv = self.g55_inverse()?;
        let v = &self.w - &(&self.tau2 * &self.rho1).scale(&g55_inv);
        let y = &self.z - &(&self.tau1 * &self.rho1).scale(&g55_inv);
        Ok((v, y))
    }
}

/// The quotient map `g ↦ (W Z⁻¹, ρ₁ Z⁻¹, (τ₂ − W Z⁻¹ τ₁) d)`.
pub fn flag_pi(g: &SuperMatrix) -> Result<BigCellPoint> {
    let b = FlagBlocks::of(g)?;
    let z_inv = b.z_inverse()?;
    let (_, y) = b.second_chart()?;
    if y.det_even()?.body().is_zero() {
        return Err(Error::OutsideBigCell(BigCellFailure::DetY));
    }
    let d_denominator = &b.g55 - (&(&b.rho1 * &z_inv) * &b.tau1).get(0, 0);
    let d = d_denominator
        .inv()
        .map_err(|_| Error::OutsideBigCell(BigCellFailure::DComplement))?;
    let a = &b.w * &z_inv;
    let alpha = &b.rho1 * &z_inv;
    let beta = (&b.tau2 - &(&a * &b.tau1)).scale(&d);
    Ok(BigCellPoint { a, alpha, beta })
}

/// `A − (B + βα)` with `B = V Y⁻¹` computed from the second chart.
pub fn twistor_residual(g: &SuperMatrix) -> Result<SuperMatrix> {
    let pt = flag_pi(g)?;
    let (v, y) = FlagBlocks::of(g)?.second_chart()?;
    let b = &v * &y.inverse_even()?;
    Ok(&pt.a - &(&b + &(&pt.beta * &pt.alpha)))
}

/// An element `(L, N, R, χ, φ, d)` of the super-Poincaré subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoincareElement {
    l: SuperMatrix,
    r: SuperMatrix,
    n: SuperMatrix,
    chi: SuperMatrix,
    phi: SuperMatrix,
    d: AlgebraElement,
}

impl PoincareElement {
    /// `L`, `R`, `N` are `(2|0)×(2|0)`, `chi` is `(2|0)×(0|1)`, `phi` is
    /// `(0|1)×(2|0)` and `d` is even. The bodies of `det L`, `det R` and `d`
    /// must be nonzero.
    pub fn new(
        l: SuperMatrix,
        r: SuperMatrix,
        n: SuperMatrix,
        chi: SuperMatrix,
        phi: SuperMatrix,
        d: AlgebraElement,
    ) -> Result<Self> {
        expect_shape("L", &l, EVEN2, EVEN2)?;
        expect_shape("R", &r, EVEN2, EVEN2)?;
        expect_shape("N", &n, EVEN2, EVEN2)?;
        expect_shape("chi", &chi, EVEN2, ODD1)?;
        expect_shape("phi", &phi, ODD1, EVEN2)?;
        let sig = l.signature();
        for m in [&r, &n, &chi, &phi] {
            expect_sig(sig, m.signature())?;
        }
        expect_sig(sig, d.signature())?;
        if !d.has_parity(Parity::Even) {
            return Err(Error::DomainError("d must be even".into()));
        }
        if l.det_even()?.body().is_zero() {
            return Err(Error::DomainError("L is not invertible".into()));
        }
        if r.det_even()?.body().is_zero() {
            return Err(Error::DomainError("R is not invertible".into()));
        }
        if d.body().is_zero() {
            return Err(Error::DomainError("d is not invertible".into()));
        }
        Ok(PoincareElement {
            l,
            r,
            n,
            chi,
            phi,
            d,
        })
    }

    pub fn identity(sig: Signature) -> Self {
        PoincareElement {
            l: SuperMatrix::identity(sig, EVEN2),
            r: SuperMatrix::identity(sig, EVEN2),
            n: SuperMatrix::zeros(sig, EVEN2, EVEN2),
            chi: SuperMatrix::zeros(sig, EVEN2, ODD1),
            phi: SuperMatrix::zeros(sig, ODD1, EVEN2),
            d: AlgebraElement::one(sig),
        }
    }

    /// The pure translation by `n`.
    pub fn translation(n: SuperMatrix) -> Result<Self> {
        let id = Self::identity(n.signature());
        Self::new(id.l, id.r, n, id.chi, id.phi, id.d)
    }

    pub fn l(&self) -> &SuperMatrix {
        &self.l
    }

    pub fn r(&self) -> &SuperMatrix {
        &self.r
    }

    pub fn n(&self) -> &SuperMatrix {
        &self.n
    }

    pub fn chi(&self) -> &SuperMatrix {
        &self.chi
    }

    pub fn phi(&self) -> &SuperMatrix {
        &self.phi
    }

    pub fn d(&self) -> &AlgebraElement {
        &self.d
    }

    pub fn signature(&self) -> Signature {
        self.l.signature()
    }

    /// `[[L, 0, 0], [N L, R, R χ], [d φ, 0, d]]`.
    pub fn matrix(&self) -> SuperMatrix {
        let sig = self.signature();
        let nl = &self.n * &self.l;
        let rchi = &self.r * &self.chi;
        let dphi = self.phi.scale(&self.d);
        SuperMatrix::from_fn(sig, FLAG_SHAPE, FLAG_SHAPE, |i, j| match (i, j) {
            (0..=1, 0..=1) => self.l.get(i, j).clone(),
            (2..=3, 0..=1) => nl.get(i - 2, j).clone(),
            (2..=3, 2..=3) => self.r.get(i - 2, j - 2).clone(),
            (2..=3, 4) => rchi.get(i - 2, 0).clone(),
            (4, 0..=1) => dphi.get(0, j).clone(),
            (4, 4) => self.d.clone(),
            _ => AlgebraElement::zero(sig),
        })
        .expect("graded by construction")
    }

    /// Inverse of [`PoincareElement::matrix`] read back as Poincaré data.
    pub fn from_matrix(g: &SuperMatrix) -> Result<Self> {
        expect_shape("g", g, FLAG_SHAPE, FLAG_SHAPE)?;
        if !has_poincare_pattern(g) {
            return Err(Error::DomainError(
                "matrix does not have the Poincaré block pattern".into(),
            ));
        }
        let l = g.block(0..2, 0..2);
        let r = g.block(2..4, 2..4);
        let d = g.get(4, 4).clone();
        let l_inv = l.inverse_even()?;
        let r_inv = r.inverse_even()?;
        let d_inv = d.inv()?;
        let n = &g.block(2..4, 0..2) * &l_inv;
        let chi = &r_inv * &g.block(2..4, 4..5);
        let phi = g.block(4..5, 0..2).scale(&d_inv);
        Self::new(l, r, n, chi, phi, d)
    }
}

/// Zero blocks of the Poincaré display: rows 0–1 outside columns 0–1, and
/// row 4 columns 2–3.
pub fn has_poincare_pattern(g: &SuperMatrix) -> bool {
    if g.row_shape() != FLAG_SHAPE || g.col_shape() != FLAG_SHAPE {
        return false;
    }
    let zero_at = |i: usize, j: usize| g.get(i, j).is_zero();
    (0..2).all(|i| (2..5).all(|j| zero_at(i, j))) && (2..4).all(|j| zero_at(4, j))
}

/// `A ↦ R(A + χα)L⁻¹ + N`, `α ↦ d(α + φ)L⁻¹`, `β ↦ d⁻¹R(β + χ)`.
pub fn poincare_act(p: &PoincareElement, pt: &BigCellPoint) -> Result<BigCellPoint> {
    expect_sig(p.signature(), pt.signature())?;
    let l_inv = p.l.inverse_even()?;
    let d_inv = p.d.inv()?;
    let a = &(&(&p.r * &(&pt.a + &(&p.chi * &pt.alpha))) * &l_inv) + &p.n;
    let alpha = (&(&pt.alpha + &p.phi) * &l_inv).scale(&p.d);
    let beta = (&p.r * &(&pt.beta + &p.chi)).scale(&d_inv);
    Ok(BigCellPoint { a, alpha, beta })
}

/// `flag_pi(P·g) − poincare_act(P, flag_pi(g))`.
pub fn equivariance_residual(p: &PoincareElement, g: &SuperMatrix) -> Result<BigCellPoint> {
    let moved = flag_pi(&p.matrix().try_mul(g)?)?;
    let acted = poincare_act(p, &flag_pi(g)?)?;
    moved.difference(&acted)
}

/// Membership in the stabilizer `H` of the base flag: invertible with the
/// displayed zero pattern.
pub fn stabilizer_contains(h: &SuperMatrix) -> Result<bool> {
    if h.row_shape() != FLAG_SHAPE || h.col_shape() != FLAG_SHAPE {
        return Err(Error::ShapeMismatch {
            op: "stabilizer_contains",
            left: format!("{FLAG_SHAPE}x{FLAG_SHAPE}"),
            right: format!("{}x{}", h.row_shape(), h.col_shape()),
        });
    }
    if STABILIZER_ZEROS
        .iter()
        .any(|&(i, j)| !h.get(i, j).is_zero())
    {
        return Ok(false);
    }
    match h.inverse() {
        Ok(_) => Ok(true),
        Err(Error::NotInvertible { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// `g · x = π(g · lift(x))`.
pub fn flag_act(g: &SuperMatrix, pt: &BigCellPoint) -> Result<BigCellPoint> {
    flag_pi(&g.try_mul(&pt.lift())?)
}

/// `φ(π(g)) = π(φ(g))` entrywise.
pub fn flag_naturality_check(phi: &AlgebraMorphism, g: &SuperMatrix) -> Result<bool> {
    let lhs = flag_pi(g)?.map_entries(phi)?;
    let rhs = flag_pi(&g.map_entries(phi)?)?;
    Ok(lhs == rhs)
}

/// Direction sets for the Jacobian of `π` at the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JacobianBasis {
    /// All elementary matrices of `gl(4|1)`.
    Gl,
    /// Supertrace-free combinations spanning `sl(4|1)`.
    Sl,
    /// Elementary matrices in the stabilizer pattern.
    Stabilizer,
}

impl JacobianBasis {
    pub fn name(&self) -> &'static str {
        match self {
            JacobianBasis::Gl => "gl",
            JacobianBasis::Sl => "sl",
            JacobianBasis::Stabilizer => "stabilizer",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "gl" => Some(JacobianBasis::Gl),
            "sl" => Some(JacobianBasis::Sl),
            "stabilizer" => Some(JacobianBasis::Stabilizer),
            _ => None,
        }
    }

    fn positions(parity: Parity) -> impl Iterator<Item = (usize, usize)> {
        (0..5)
            .flat_map(|i| (0..5).map(move |j| (i, j)))
            .filter(move |&(i, j)| FLAG_SHAPE.parity(i) + FLAG_SHAPE.parity(j) == parity)
    }

    /// Rational direction matrices of the given parity, in a fixed order.
    pub fn directions(&self, parity: Parity) -> Vec<RationalMatrix> {
        let elementary = |entries: &[(usize, usize, i64)]| {
            let mut m = RationalMatrix::zeros(5, 5);
            for &(i, j, v) in entries {
                m[(i, j)] = random::rational(v, 1);
            }
            m
        };
        match (self, parity) {
            (JacobianBasis::Gl, _) | (JacobianBasis::Sl, Parity::Odd) => Self::positions(parity)
                .map(|(i, j)| elementary(&[(i, j, 1)]))
                .collect(),
            (JacobianBasis::Sl, Parity::Even) => {
                let mut out: Vec<RationalMatrix> = Self::positions(parity)
                    .filter(|&(i, j)| i != j)
                    .map(|(i, j)| elementary(&[(i, j, 1)]))
                    .collect();
                for i in 0..3 {
                    out.push(elementary(&[(i, i, 1), (i + 1, i + 1, -1)]));
                }
                out.push(elementary(&[(0, 0, 1), (4, 4, 1)]));
                out
            }
            (JacobianBasis::Stabilizer, _) => Self::positions(parity)
                .filter(|p| !STABILIZER_ZEROS.contains(p))
                .map(|(i, j)| elementary(&[(i, j, 1)]))
                .collect(),
        }
    }
}

impl fmt::Display for JacobianBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Differential of `π` at the identity. Columns of `even_matrix` are the
/// first-order changes of `A` (rows `a11, a12, a21, a22`); columns of
/// `odd_matrix` are those of `(α₁, α₂, β₁, β₂)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobianReport {
    pub basis: JacobianBasis,
    pub even_rank: usize,
    pub odd_rank: usize,
    pub even_matrix: RationalMatrix,
    pub odd_matrix: RationalMatrix,
}

/// `π(I + t·E)` over a signature with the single generator `t`, returning
/// the `t`-coefficients selected by `read`.
fn derivative(
    direction: &RationalMatrix,
    parity: Parity,
    read: impl Fn(&BigCellPoint) -> Vec<AlgebraElement>,
) -> Vec<num_rational::BigRational> {
    let (sig, t) = match parity {
        Parity::Even => (Signature::new(1, 0), Monomial::even_generator(0)),
        Parity::Odd => (Signature::new(0, 1), Monomial::odd_generator(0)),
    };
    let sig = sig.expect("one generator");
    let g = SuperMatrix::from_fn(sig, FLAG_SHAPE, FLAG_SHAPE, |i, j| {
        let id = AlgebraElement::from_int(sig, i64::from(i == j));
        let step = AlgebraElement::monomial(sig, t, direction[(i, j)].clone()).expect("fits");
        id + step
    })
    .expect("direction respects the grading");
    let pt = flag_pi(&g).expect("the identity lies in the big cell");
    read(&pt).iter().map(|e| e.coefficient(&t)).collect()
}

fn columns_to_matrix(columns: &[Vec<num_rational::BigRational>]) -> RationalMatrix {
    RationalMatrix::from_fn(4, columns.len(), |i, j| columns[j][i].clone())
}

pub fn jacobian_at_identity(basis: JacobianBasis) -> JacobianReport {
    let even: Vec<_> = basis
        .directions(Parity::Even)
        .iter()
        .map(|e| {
            derivative(e, Parity::Even, |pt| {
                (0..4).map(|k| pt.a.get(k / 2, k % 2).clone()).collect()
            })
        })
        .collect();
    let odd: Vec<_> = basis
        .directions(Parity::Odd)
        .iter()
        .map(|e| {
            derivative(e, Parity::Odd, |pt| {
                vec![
                    pt.alpha.get(0, 0).clone(),
                    pt.alpha.get(0, 1).clone(),
                    pt.beta.get(0, 0).clone(),
                    pt.beta.get(1, 0).clone(),
                ]
            })
        })
        .collect();
    let even_matrix = columns_to_matrix(&even);
    let odd_matrix = columns_to_matrix(&odd);
    JacobianReport {
        basis,
        even_rank: even_matrix.rank(),
        odd_rank: odd_matrix.rank(),
        even_matrix,
        odd_matrix,
    }
}

/// A random `GL(4|1)` element; it may fall outside the big cell.
pub fn random_flag_matrix(rng: &mut impl Rng, sig: Signature) -> SuperMatrix {
    random::invertible_graded_matrix(rng, sig, FLAG_SHAPE, 2)
}

fn random_invertible_even2(rng: &mut impl Rng, sig: Signature) -> SuperMatrix {
    let body = random::invertible_rational(rng, 2);
    random::graded_matrix_with_body(rng, sig, EVEN2, EVEN2, &body, 1)
}

/// Random Poincaré data with soul perturbations in every part.
pub fn random_poincare(rng: &mut impl Rng, sig: Signature) -> PoincareElement {
    let l = random_invertible_even2(rng, sig);
    let r = random_invertible_even2(rng, sig);
    let n = random::graded_matrix(rng, sig, EVEN2, EVEN2, 3, 1);
    let chi = random::graded_matrix(rng, sig, EVEN2, ODD1, 0, 2);
    let phi = random::graded_matrix(rng, sig, ODD1, EVEN2, 0, 2);
    let d = AlgebraElement::constant(sig, random::nonzero_rational(rng))
        + random::soul(rng, sig, Parity::Even, 2);
    PoincareElement::new(l, r, n, chi, phi, d).expect("valid by construction")
}

/// Random Poincaré data with all odd parts and souls zero.
pub fn random_classical_poincare(rng: &mut impl Rng, sig: Signature) -> PoincareElement {
    let rational = |body: &RationalMatrix| {
        SuperMatrix::from_rational(sig, EVEN2, EVEN2, body).expect("even block")
    };
    let l_body = random::invertible_rational(rng, 2);
    let r_body = random::invertible_rational(rng, 2);
    let n_body = RationalMatrix::from_fn(2, 2, |_, _| random::small_int(rng, 3));
    let l = rational(&l_body);
    let r = rational(&r_body);
    let n = rational(&n_body);
    let id = PoincareElement::identity(sig);
    let d = AlgebraElement::constant(sig, random::nonzero_rational(rng));
    PoincareElement::new(l, r, n, id.chi, id.phi, d).expect("valid by construction")
}

/// A random big-cell point with soul-perturbed coordinates.
pub fn random_big_cell_point(rng: &mut impl Rng, sig: Signature) -> BigCellPoint {
    BigCellPoint {
        a: random::graded_matrix(rng, sig, EVEN2, EVEN2, 3, 1),
        alpha: random::graded_matrix(rng, sig, ODD1, EVEN2, 0, 2),
        beta: random::graded_matrix(rng, sig, EVEN2, ODD1, 0, 2),
    }
}

/// A random member of the stabilizer `H`.
pub fn random_stabilizer(rng: &mut impl Rng, sig: Signature) -> SuperMatrix {
    let g = random::invertible_graded_matrix(rng, sig, FLAG_SHAPE, 2);
    // Zeroing the pattern keeps the block-triangular body invertible only if
    // the diagonal blocks are; redraw them explicitly.
    let top = random::invertible_rational(rng, 2);
    let mid = random::invertible_rational(rng, 2);
    SuperMatrix::from_fn(sig, FLAG_SHAPE, FLAG_SHAPE, |i, j| {
        if STABILIZER_ZEROS.contains(&(i, j)) {
            return AlgebraElement::zero(sig);
        }
        let e = g.get(i, j).clone();
        match (i, j) {
            (0..=1, 0..=1) => e.soul() + AlgebraElement::constant(sig, top[(i, j)].clone()),
            (2..=3, 2..=3) => e.soul() + AlgebraElement::constant(sig, mid[(i - 2, j - 2)].clone()),
            _ => e,
        }
    })
    .expect("graded by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    #[test]
    fn identity_maps_to_origin() {
        let s = sig(0, 6);
        let pt = flag_pi(&SuperMatrix::identity(s, FLAG_SHAPE)).unwrap();
        assert_eq!(pt, BigCellPoint::origin(s));
        assert!(twistor_residual(&SuperMatrix::identity(s, FLAG_SHAPE))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn even_matrix_maps_to_its_w_block() {
        let s = sig(0, 2);
        let g = SuperMatrix::from_integers(
            s,
            FLAG_SHAPE,
            FLAG_SHAPE,
            &[
                &[1, 0, 0, 0, 0],
                &[0, 1, 0, 0, 0],
                &[2, -1, 1, 0, 0],
                &[3, 5, 0, 1, 0],
                &[0, 0, 0, 0, 1],
            ],
        )
        .unwrap();
        let pt = flag_pi(&g).unwrap();
        assert_eq!(
            *pt.a(),
            SuperMatrix::from_integers(s, EVEN2, EVEN2, &[&[2, -1], &[3, 5]]).unwrap()
        );
        assert!(pt.alpha().is_zero() && pt.beta().is_zero());
    }

    #[test]
    fn singular_z_is_outside_the_big_cell() {
        let s = sig(0, 2);
        let g = SuperMatrix::from_integers(
            s,
            FLAG_SHAPE,
            FLAG_SHAPE,
            &[
                &[1, 1, 0, 0, 0],
                &[1, 1, 0, 0, 0],
                &[0, 0, 1, 0, 0],
                &[0, 0, 0, 1, 0],
                &[0, 0, 0, 0, 1],
            ],
        )
        .unwrap();
        assert_eq!(
            flag_pi(&g),
            Err(Error::OutsideBigCell(BigCellFailure::DetZ))
        );
    }

    #[test]
    fn lift_is_a_section() {
        let s = sig(0, 4);
        let mut rng = random::rng_from_seed(4);
        for _ in 0..5 {
            let pt = random_big_cell_point(&mut rng, s);
            assert_eq!(flag_pi(&pt.lift()).unwrap(), pt);
            assert!(pt.lift().berezinian().unwrap().is_one());
        }
    }

    #[test]
    fn poincare_examples() {
        let s = sig(0, 4);
        assert_eq!(
            PoincareElement::identity(s).matrix(),
            SuperMatrix::identity(s, FLAG_SHAPE)
        );
        let n = SuperMatrix::from_integers(s, EVEN2, EVEN2, &[&[1, 2], &[3, 4]]).unwrap();
        let t = PoincareElement::translation(n.clone()).unwrap();
        let moved = poincare_act(&t, &BigCellPoint::origin(s)).unwrap();
        assert_eq!(
            moved,
            BigCellPoint::new(n, moved.alpha.clone(), moved.beta.clone()).unwrap()
        );
        assert!(moved.alpha().is_zero() && moved.beta().is_zero());
        assert!(
            equivariance_residual(&t, &SuperMatrix::identity(s, FLAG_SHAPE))
                .unwrap()
                .is_zero()
        );
        let mut rng = random::rng_from_seed(1);
        let p = random_poincare(&mut rng, s);
        assert_eq!(PoincareElement::from_matrix(&p.matrix()).unwrap(), p);
    }

    #[test]
    fn random_equivariance_and_twistor() {
        let s = sig(0, 4);
        let mut rng = random::rng_from_seed(2);
        let mut checked = 0;
        while checked < 5 {
            let g = random_flag_matrix(&mut rng, s);
            let Ok(res) = twistor_residual(&g) else {
                continue;
            };
            assert!(res.is_zero());
            let p = random_poincare(&mut rng, s);
            assert!(equivariance_residual(&p, &g).unwrap().is_zero());
            checked += 1;
        }
    }

    #[test]
    fn stabilizer_examples() {
        let s = sig(0, 4);
        assert!(stabilizer_contains(&SuperMatrix::identity(s, FLAG_SHAPE)).unwrap());
        let g = SuperMatrix::identity(s, FLAG_SHAPE)
            .with_entry(2, 0, AlgebraElement::one(s))
            .unwrap();
        assert!(!stabilizer_contains(&g).unwrap());
        let mut rng = random::rng_from_seed(3);
        for _ in 0..5 {
            let h = random_stabilizer(&mut rng, s);
            assert!(stabilizer_contains(&h).unwrap());
            assert!(flag_pi(&h).unwrap().is_zero());
        }
    }

    #[test]
    fn jacobian_ranks() {
        for (basis, ranks, counts) in [
            (JacobianBasis::Gl, (4, 4), (17, 8)),
            (JacobianBasis::Sl, (4, 4), (16, 8)),
            (JacobianBasis::Stabilizer, (0, 0), (13, 4)),
        ] {
            let r = jacobian_at_identity(basis);
            assert_eq!((r.even_rank, r.odd_rank), ranks, "{basis}");
            assert_eq!(
                (r.even_matrix.cols(), r.odd_matrix.cols()),
                counts,
                "{basis}"
            );
        }
    }
}
