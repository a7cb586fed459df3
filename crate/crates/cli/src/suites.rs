//! The property catalog run by `supergeom verify`.
//!
//! Trial `i` of the property with catalog ordinal `k` draws from stream `k` of
//! the generator seeded with `master_seed + i`. A draw that leaves the domain
//! of a partial operation (big cell, nilpotent exponential) is redrawn from a
//! derived seed, up to [`MAX_ATTEMPTS`] times.

use std::collections::BTreeMap;

use rand::Rng;
use serde_json::Value;
use supergeom::format::Wire;
use supergeom::random::{self, rng_from_seed_stream, SeededRng};
use supergeom::superflag::{self, JacobianBasis, FLAG_SHAPE};
use supergeom::supergroups::{self, ActionPoint, GroupAction};
use supergeom::{
    AlgebraElement, AlgebraMorphism, BigCellPoint, BlockShape, Error, GroupLabel, Parity,
    PoincareElement, Signature, SuperMatrix,
};

use crate::config::SuiteName;

pub const MAX_ATTEMPTS: u64 = 8;

const ATTEMPT_STRIDE: u64 = 0x9E37_79B9_7F4A_7C15;

/// Inputs and randomness of one attempt.
pub struct Trial {
    pub rng: SeededRng,
    pub sig: Signature,
    inputs: BTreeMap<String, Value>,
}

impl Trial {
    fn new(sig: Signature, seed: u64, stream: u64) -> Self {
        Trial {
            rng: rng_from_seed_stream(seed, stream),
            sig,
            inputs: BTreeMap::new(),
        }
    }

    /// Remember an input for the witness of a failing trial.
    pub fn record<T: Wire>(&mut self, name: &str, value: &T) {
        let json = serde_json::to_value(value.to_wire()).expect("wire types serialize");
        self.inputs.insert(name.to_string(), json);
    }

    pub fn record_morphism(&mut self, name: &str, phi: &AlgebraMorphism) {
        let images = |xs: &[AlgebraElement]| {
            Value::Array(
                xs.iter()
                    .map(|x| serde_json::to_value(x.to_wire()).expect("wire types serialize"))
                    .collect(),
            )
        };
        let mut map = serde_json::Map::new();
        map.insert("even".into(), images(phi.even_images()));
        map.insert("odd".into(), images(phi.odd_images()));
        self.inputs.insert(name.to_string(), Value::Object(map));
    }

    pub fn into_inputs(self) -> BTreeMap<String, Value> {
        self.inputs
    }
}

/// Result of one attempt of a property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
}

fn check(ok: bool, message: &str) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail(message.to_string())
    }
}

/// Collapses a sequence of checks into the first failure.
fn all(checks: impl IntoIterator<Item = Verdict>) -> Verdict {
    checks
        .into_iter()
        .find(|v| *v != Verdict::Pass)
        .unwrap_or(Verdict::Pass)
}

pub type PropertyFn = fn(&mut Trial) -> Result<Verdict, Error>;

pub struct Property {
    pub suite: SuiteName,
    pub name: &'static str,
    /// Properties without random inputs run a single trial.
    pub deterministic: bool,
    pub run: PropertyFn,
}

/// Whether an error means "redraw" rather than "fail".
pub fn is_out_of_domain(e: &Error) -> bool {
    matches!(
        e,
        Error::OutsideBigCell(_) | Error::DomainError(_) | Error::BodyNotZero { .. }
    )
}

/// Seed of attempt `attempt` of a trial with seed `seed`.
pub fn attempt_seed(seed: u64, attempt: u64) -> u64 {
    seed.wrapping_add(attempt.wrapping_mul(ATTEMPT_STRIDE))
}

#[derive(Debug, Clone, PartialEq)]
pub enum TrialOutcome {
    Pass {
        redraws: u64,
    },
    Fail {
        redraws: u64,
        attempt: u64,
        message: String,
        inputs: BTreeMap<String, Value>,
    },
    /// Every attempt fell outside the domain.
    Resampled,
}

/// Runs one trial, redrawing out-of-domain attempts.
pub fn run_trial(run: PropertyFn, sig: Signature, seed: u64, stream: u64) -> TrialOutcome {
    for attempt in 0..MAX_ATTEMPTS {
        let mut trial = Trial::new(sig, attempt_seed(seed, attempt), stream);
        let verdict = match run(&mut trial) {
            Ok(v) => v,
            Err(e) if is_out_of_domain(&e) => continue,
            Err(e) => Verdict::Fail(format!("unexpected error: {e}")),
        };
        return match verdict {
            Verdict::Pass => TrialOutcome::Pass { redraws: attempt },
            Verdict::Fail(message) => TrialOutcome::Fail {
                redraws: attempt,
                attempt,
                message,
                inputs: trial.into_inputs(),
            },
        };
    }
    TrialOutcome::Resampled
}

pub fn catalog() -> Vec<Property> {
    use SuiteName::*;
    let p = |suite, name, run: PropertyFn| Property {
        suite,
        name,
        deterministic: false,
        run,
    };
    let fixed = |suite, name, run: PropertyFn| Property {
        suite,
        name,
        deterministic: true,
        run,
    };
    vec![
        p(Algebra, "ring_laws", ring_laws),
        p(Algebra, "supercommutativity", supercommutativity),
        p(Algebra, "odd_squares_vanish", odd_squares_vanish),
        p(Algebra, "body_character", body_character),
        p(Algebra, "inverse", inverse),
        p(Algebra, "morphism_laws", morphism_laws),
        p(Matrix, "ber_multiplicative", ber_multiplicative),
        p(Matrix, "two_sided_inverse", two_sided_inverse),
        p(Matrix, "ber_closed_forms", ber_closed_forms),
        p(
            Matrix,
            "supertranspose_antihomomorphism",
            supertranspose_antihomomorphism,
        ),
        p(Matrix, "supertrace_cyclic", supertrace_cyclic),
        p(Matrix, "exp_inverse", exp_inverse),
        p(Groups, "closure_sl", closure_sl),
        p(Groups, "closure_osp", closure_osp),
        p(Groups, "closure_pisp", closure_pisp),
        p(Groups, "closure_p", closure_p),
        p(Groups, "lie_exp_membership", lie_exp_membership),
        p(Groups, "naturality", naturality),
        p(Groups, "linear_action", linear_action),
        p(Flag, "twistor", twistor),
        p(Flag, "equivariance", equivariance),
        p(Flag, "right_h_invariance", right_h_invariance),
        p(Flag, "flag_action_axioms", flag_action_axioms),
        p(Flag, "classical_limit", classical_limit),
        p(Flag, "flag_naturality", flag_naturality),
        p(Flag, "poincare_closure", poincare_closure),
        fixed(Jacobian, "ranks_gl", ranks_gl),
        fixed(Jacobian, "ranks_sl", ranks_sl),
        fixed(Jacobian, "ranks_stabilizer", ranks_stabilizer),
    ]
}

// algebra

fn element(t: &mut Trial) -> AlgebraElement {
    let sig = t.sig;
    AlgebraElement::constant(sig, random::small_int(&mut t.rng, 3))
        + random::soul(&mut t.rng, sig, Parity::Even, 3)
        + random::soul(&mut t.rng, sig, Parity::Odd, 3)
}

fn homogeneous(t: &mut Trial) -> AlgebraElement {
    let sig = t.sig;
    if t.rng.random::<bool>() {
        AlgebraElement::constant(sig, random::small_int(&mut t.rng, 3))
            + random::soul(&mut t.rng, sig, Parity::Even, 3)
    } else {
        random::soul(&mut t.rng, sig, Parity::Odd, 3)
    }
}

fn ring_laws(t: &mut Trial) -> Result<Verdict, Error> {
    let (x, y, z) = (element(t), element(t), element(t));
    t.record("x", &x);
    t.record("y", &y);
    t.record("z", &z);
    Ok(all([
        check(
            &(&x * &y) * &z == &x * &(&y * &z),
            "product is not associative",
        ),
        check(
            &x * &(&y + &z) == &(&x * &y) + &(&x * &z),
            "left distributivity fails",
        ),
        check(
            &(&x + &y) * &z == &(&x * &z) + &(&y * &z),
            "right distributivity fails",
        ),
        check(&x + &y == &y + &x, "sum is not commutative"),
        check(&x * &AlgebraElement::one(t.sig) == x, "1 is not a unit"),
    ]))
}

fn supercommutativity(t: &mut Trial) -> Result<Verdict, Error> {
    let (x, y) = (homogeneous(t), homogeneous(t));
    t.record("x", &x);
    t.record("y", &y);
    let both_odd =
        x.has_parity(Parity::Odd) && y.has_parity(Parity::Odd) && !x.is_zero() && !y.is_zero();
    let yx = &y * &x;
    let expected = if both_odd { -yx } else { yx };
    Ok(check(&x * &y == expected, "xy != (-1)^{|x||y|} yx"))
}

fn odd_squares_vanish(t: &mut Trial) -> Result<Verdict, Error> {
    let sig = t.sig;
    let x = random::soul(&mut t.rng, sig, Parity::Odd, 4);
    t.record("x", &x);
    Ok(check(
        (&x * &x).is_zero(),
        "odd element squares to a nonzero value",
    ))
}

fn body_character(t: &mut Trial) -> Result<Verdict, Error> {
    let (x, y) = (element(t), element(t));
    t.record("x", &x);
    t.record("y", &y);
    let bound = (t.sig.even_count() + t.sig.odd_count() + 1) as u32;
    Ok(all([
        check(
            (&x * &y).body() == x.body() * y.body(),
            "body is not multiplicative",
        ),
        check(
            (&x + &y).body() == x.body() + y.body(),
            "body is not additive",
        ),
        check(x.soul().pow(bound).is_zero(), "soul is not nilpotent"),
    ]))
}

fn inverse(t: &mut Trial) -> Result<Verdict, Error> {
    let sig = t.sig;
    let x = AlgebraElement::constant(sig, random::nonzero_rational(&mut t.rng))
        + random::soul(&mut t.rng, sig, Parity::Even, 3);
    t.record("x", &x);
    let inv = x.inv()?;
    Ok(all([
        check((&x * &inv).is_one(), "x * x^-1 != 1"),
        check(inv.inv()? == x, "(x^-1)^-1 != x"),
    ]))
}

fn morphism_laws(t: &mut Trial) -> Result<Verdict, Error> {
    let sig = t.sig;
    let phi = random::morphism(&mut t.rng, sig, sig);
    let (x, y) = (element(t), element(t));
    t.record_morphism("phi", &phi);
    t.record("x", &x);
    t.record("y", &y);
    Ok(all([
        check(
            phi.validate().is_valid(),
            "morphism violates its constraints",
        ),
        check(
            phi.apply(&(&x * &y))? == &phi.apply(&x)? * &phi.apply(&y)?,
            "phi(xy) != phi(x)phi(y)",
        ),
        check(
            phi.apply(&(&x + &y))? == &phi.apply(&x)? + &phi.apply(&y)?,
            "phi(x+y) != phi(x)+phi(y)",
        ),
        check(
            phi.apply(&AlgebraElement::one(sig))?.is_one(),
            "phi(1) != 1",
        ),
    ]))
}

// matrix

const SHAPE22: BlockShape = BlockShape::new(2, 2);

fn invertible(t: &mut Trial, shape: BlockShape) -> SuperMatrix {
    let sig = t.sig;
    random::invertible_graded_matrix(&mut t.rng, sig, shape, 2)
}

fn ber_multiplicative(t: &mut Trial) -> Result<Verdict, Error> {
    let (g, h) = (invertible(t, SHAPE22), invertible(t, SHAPE22));
    t.record("g", &g);
    t.record("h", &h);
    let lhs = (&g * &h).berezinian()?;
    Ok(check(
        lhs == &g.berezinian()? * &h.berezinian()?,
        "Ber(gh) != Ber(g)Ber(h)",
    ))
}

fn two_sided_inverse(t: &mut Trial) -> Result<Verdict, Error> {
    let g = invertible(t, SHAPE22);
    t.record("g", &g);
    let inv = g.inverse()?;
    let id = SuperMatrix::identity(t.sig, SHAPE22);
    Ok(all([
        check(inv.is_graded(), "inverse is not graded"),
        check(&g * &inv == id, "g g^-1 != 1"),
        check(&inv * &g == id, "g^-1 g != 1"),
        check(
            inv.berezinian()? == g.berezinian()?.inv()?,
            "Ber(g^-1) != Ber(g)^-1",
        ),
    ]))
}

fn ber_closed_forms(t: &mut Trial) -> Result<Verdict, Error> {
    let g = invertible(t, BlockShape::new(2, 1));
    t.record("g", &g);
    Ok(check(
        g.berezinian()? == g.berezinian_by_p_complement()?,
        "the two Berezinian formulas disagree",
    ))
}

fn supertranspose_antihomomorphism(t: &mut Trial) -> Result<Verdict, Error> {
    let sig = t.sig;
    let g = random::graded_matrix(&mut t.rng, sig, SHAPE22, BlockShape::new(1, 2), 2, 2);
    let h = random::graded_matrix(&mut t.rng, sig, BlockShape::new(1, 2), SHAPE22, 2, 2);
    t.record("g", &g);
    t.record("h", &h);
    Ok(check(
        (&g * &h).supertranspose() == &h.supertranspose() * &g.supertranspose(),
        "(gh)^st != h^st g^st",
    ))
}

fn supertrace_cyclic(t: &mut Trial) -> Result<Verdict, Error> {
    let sig = t.sig;
    let a = random::graded_matrix(&mut t.rng, sig, SHAPE22, SHAPE22, 2, 2);
    let b = random::graded_matrix(&mut t.rng, sig, SHAPE22, SHAPE22, 2, 2);
    t.record("a", &a);
    t.record("b", &b);
    Ok(check(
        (&a * &b).supertrace()? == (&b * &a).supertrace()?,
        "str(ab) != str(ba)",
    ))
}

fn exp_inverse(t: &mut Trial) -> Result<Verdict, Error> {
    let sig = t.sig;
    let x = random::graded_matrix(&mut t.rng, sig, SHAPE22, SHAPE22, 0, 2);
    t.record("x", &x);
    let e = x.exp_nilpotent()?;
    Ok(check(
        &e * &(-&x).exp_nilpotent()? == SuperMatrix::identity(sig, SHAPE22),
        "exp(x) exp(-x) != 1",
    ))
}

// groups

fn closure(t: &mut Trial, label: GroupLabel) -> Result<Verdict, Error> {
    let (s1, s2) = (t.rng.random::<u64>(), t.rng.random::<u64>());
    let g = supergroups::random_group_element(&label, t.sig, s1)?;
    let h = supergroups::random_group_element(&label, t.sig, s2)?;
    t.record("g", &g);
    t.record("h", &h);
    let member = |m: &SuperMatrix| -> Result<bool, Error> {
        Ok(supergroups::group_contains(&label, m)?.is_member())
    };
    Ok(all([
        check(member(&g)?, "generated element is not a member"),
        check(member(&(&g * &h))?, "product is not a member"),
        check(member(&g.inverse()?)?, "inverse is not a member"),
    ]))
}

fn closure_sl(t: &mut Trial) -> Result<Verdict, Error> {
    closure(t, GroupLabel::Sl { m: 2, n: 2 })
}

fn closure_osp(t: &mut Trial) -> Result<Verdict, Error> {
    closure(t, GroupLabel::Osp { m: 2, n: 1 })
}

fn closure_pisp(t: &mut Trial) -> Result<Verdict, Error> {
    closure(t, GroupLabel::PiSp { n: 2 })
}

fn closure_p(t: &mut Trial) -> Result<Verdict, Error> {
    closure(t, GroupLabel::P { n: 2 })
}

fn lie_exp_membership(t: &mut Trial) -> Result<Verdict, Error> {
    let labels = [
        GroupLabel::Gl { m: 2, n: 2 },
        GroupLabel::Sl { m: 2, n: 2 },
        GroupLabel::Osp { m: 2, n: 1 },
        GroupLabel::PiSp { n: 2 },
        GroupLabel::P { n: 2 },
    ];
    let label = labels[t.rng.random_range(0..labels.len())];
    let x = supergroups::random_lie_element(&label, t.sig, &mut t.rng)?;
    t.record("x", &x);
    Ok(all([
        check(
            supergroups::lie_algebra_contains(&label, &x)?,
            "element is outside the Lie superalgebra",
        ),
        check(
            supergroups::group_contains(&label, &x.exp_nilpotent()?)?.is_member(),
            &format!("exp(x) is not in {label}"),
        ),
    ]))
}

fn naturality(t: &mut Trial) -> Result<Verdict, Error> {
    let sig = t.sig;
    let target = sig.extended(0, 1).unwrap_or(sig);
    let phi = random::morphism(&mut t.rng, sig, target);
    let g = invertible(t, SHAPE22);
    t.record_morphism("phi", &phi);
    t.record("g", &g);
    Ok(check(
        supergroups::naturality_check(&phi, &g)?,
        "naturality square does not commute",
    ))
}

fn linear_action(t: &mut Trial) -> Result<Verdict, Error> {
    let sig = t.sig;
    let (g1, g2) = (invertible(t, SHAPE22), invertible(t, SHAPE22));
    let v = random::graded_matrix(&mut t.rng, sig, SHAPE22, BlockShape::new(1, 0), 3, 2);
    t.record("g1", &g1);
    t.record("g2", &g2);
    t.record("v", &v);
    Ok(check(
        supergroups::action_axioms_check(GroupAction::Linear, &g1, &g2, &ActionPoint::Column(v))?,
        "linear action axioms fail",
    ))
}

// flag

/// A `GL(4|1)` draw; outside the big cell this is an out-of-domain error.
fn flag_matrix(t: &mut Trial) -> Result<SuperMatrix, Error> {
    let sig = t.sig;
    let g = superflag::random_flag_matrix(&mut t.rng, sig);
    t.record("g", &g);
    superflag::flag_pi(&g)?;
    Ok(g)
}

fn twistor(t: &mut Trial) -> Result<Verdict, Error> {
    let g = flag_matrix(t)?;
    Ok(check(
        superflag::twistor_residual(&g)?.is_zero(),
        "A - B - beta alpha != 0",
    ))
}

fn equivariance(t: &mut Trial) -> Result<Verdict, Error> {
    let g = flag_matrix(t)?;
    let sig = t.sig;
    let p = superflag::random_poincare(&mut t.rng, sig);
    t.record("p", &p);
    Ok(check(
        superflag::equivariance_residual(&p, &g)?.is_zero(),
        "pi(Pg) differs from the coordinate action on pi(g)",
    ))
}

fn right_h_invariance(t: &mut Trial) -> Result<Verdict, Error> {
    let g = flag_matrix(t)?;
    let sig = t.sig;
    let h = superflag::random_stabilizer(&mut t.rng, sig);
    t.record("h", &h);
    Ok(all([
        check(
            superflag::stabilizer_contains(&h)?,
            "generated element is not in H",
        ),
        check(
            superflag::flag_pi(&(&g * &h))? == superflag::flag_pi(&g)?,
            "pi(gh) != pi(g)",
        ),
    ]))
}

fn flag_action_axioms(t: &mut Trial) -> Result<Verdict, Error> {
    let sig = t.sig;
    let p1 = superflag::random_poincare(&mut t.rng, sig);
    let p2 = superflag::random_poincare(&mut t.rng, sig);
    let pt = superflag::random_big_cell_point(&mut t.rng, sig);
    t.record("p1", &p1);
    t.record("p2", &p2);
    t.record("point", &pt);
    let (m1, m2) = (p1.matrix(), p2.matrix());
    Ok(all([
        check(
            supergroups::action_axioms_check(
                GroupAction::Flag,
                &m1,
                &m2,
                &ActionPoint::BigCell(pt.clone()),
            )?,
            "flag action axioms fail",
        ),
        check(
            superflag::flag_act(&m1, &pt)? == superflag::poincare_act(&p1, &pt)?,
            "matrix action and coordinate action disagree",
        ),
    ]))
}

fn classical_limit(t: &mut Trial) -> Result<Verdict, Error> {
    let sig = t.sig;
    let p = superflag::random_classical_poincare(&mut t.rng, sig);
    let even2 = BlockShape::new(2, 0);
    let a = random::graded_matrix(&mut t.rng, sig, even2, even2, 3, 0);
    let origin = BigCellPoint::origin(sig);
    let pt = BigCellPoint::new(a, origin.alpha().clone(), origin.beta().clone())?;
    t.record("p", &p);
    t.record("point", &pt);
    let moved = superflag::poincare_act(&p, &pt)?;
    let expected = &(&(p.r() * pt.a()) * &p.l().inverse_even()?) + p.n();
    Ok(all([
        check(*moved.a() == expected, "A' != R A L^-1 + N"),
        check(
            moved.alpha().is_zero() && moved.beta().is_zero(),
            "odd coordinates became nonzero",
        ),
    ]))
}

fn flag_naturality(t: &mut Trial) -> Result<Verdict, Error> {
    let sig = t.sig;
    let target = sig.extended(0, 1).unwrap_or(sig);
    let phi = random::morphism(&mut t.rng, sig, target);
    t.record_morphism("phi", &phi);
    let g = flag_matrix(t)?;
    Ok(check(
        superflag::flag_naturality_check(&phi, &g)?,
        "pi does not commute with phi",
    ))
}

fn poincare_closure(t: &mut Trial) -> Result<Verdict, Error> {
    let sig = t.sig;
    let a = superflag::random_poincare(&mut t.rng, sig);
    let b = superflag::random_poincare(&mut t.rng, sig);
    t.record("a", &a);
    t.record("b", &b);
    let prod = &a.matrix() * &b.matrix();
    let inv = a.matrix().inverse()?;
    Ok(all([
        check(
            superflag::has_poincare_pattern(&prod),
            "product leaves the Poincare pattern",
        ),
        check(
            PoincareElement::from_matrix(&prod)?.matrix() == prod,
            "product does not round-trip",
        ),
        check(
            superflag::has_poincare_pattern(&inv),
            "inverse leaves the Poincare pattern",
        ),
        check(inv.row_shape() == FLAG_SHAPE, "inverse has the wrong shape"),
    ]))
}

// jacobian

fn ranks(t: &mut Trial, basis: JacobianBasis, expected: (usize, usize)) -> Result<Verdict, Error> {
    let r = superflag::jacobian_at_identity(basis);
    t.record("report", &r);
    Ok(check(
        (r.even_rank, r.odd_rank) == expected,
        &format!(
            "ranks ({},{}) != ({},{})",
            r.even_rank, r.odd_rank, expected.0, expected.1
        ),
    ))
}

fn ranks_gl(t: &mut Trial) -> Result<Verdict, Error> {
    ranks(t, JacobianBasis::Gl, (4, 4))
}

fn ranks_sl(t: &mut Trial) -> Result<Verdict, Error> {
    ranks(t, JacobianBasis::Sl, (4, 4))
}

fn ranks_stabilizer(t: &mut Trial) -> Result<Verdict, Error> {
    ranks(t, JacobianBasis::Stabilizer, (0, 0))
}
