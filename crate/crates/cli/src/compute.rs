//! `supergeom compute …`: single evaluations on JSON payloads.

use serde::Deserialize;
use supergeom::format::{self, Wire};
use supergeom::superflag::{self, JacobianBasis};
use supergeom::{ParseError, SuperMatrix};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    /// Berezinian of a square supermatrix.
    Ber,
    /// Big-cell coordinates of a `GL(4|1)` matrix.
    Pi,
    /// Coordinate action of a Poincaré element on a point.
    Act,
    /// Jacobian of the projection at the identity.
    Jacobian,
}

/// Optional payload of `compute jacobian`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct JacobianRequest {
    basis: String,
}

fn parse_basis(name: &str, path: &str) -> Result<JacobianBasis, CliError> {
    JacobianBasis::from_name(name).ok_or_else(|| {
        CliError::Parse(ParseError::new(
            path,
            format!("unknown basis '{name}' (expected gl, sl or stabilizer)"),
        ))
    })
}

/// Evaluates `op` on `input` and returns compact JSON.
pub fn run(op: Op, input: Option<&str>, basis: Option<&str>) -> Result<String, CliError> {
    let payload =
        || input.ok_or_else(|| CliError::Config("this command needs an input payload".into()));
    match op {
        Op::Ber => {
            let g = SuperMatrix::from_json_str(payload()?)?;
            Ok(g.berezinian()?.to_json_string())
        }
        Op::Pi => {
            let g = SuperMatrix::from_json_str(payload()?)?;
            Ok(superflag::flag_pi(&g)?.to_json_string())
        }
        Op::Act => {
            let (p, pt) = format::act_from_str(payload()?)?;
            Ok(superflag::poincare_act(&p, &pt)?.to_json_string())
        }
        Op::Jacobian => {
            let basis = match (basis, input) {
                (Some(name), _) => parse_basis(name, "--basis")?,
                (None, Some(text)) => {
                    let req: JacobianRequest = format::parse_json(text)?;
                    parse_basis(&req.basis, "$.basis")?
                }
                (None, None) => {
                    return Err(CliError::Config(
                        "compute jacobian needs --basis or --in".into(),
                    ))
                }
            };
            Ok(superflag::jacobian_at_identity(basis).to_json_string())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use supergeom::{BigCellPoint, BlockShape, PoincareElement, Signature};

    #[test]
    fn pi_of_identity_is_origin() {
        let s = Signature::new(0, 2).unwrap();
        let id = SuperMatrix::identity(s, superflag::FLAG_SHAPE).to_json_string();
        let out = run(Op::Pi, Some(&id), None).unwrap();
        assert_eq!(out, BigCellPoint::origin(s).to_json_string());
    }

    #[test]
    fn ber_of_identity_is_one() {
        let s = Signature::new(0, 2).unwrap();
        let id = SuperMatrix::identity(s, BlockShape::new(2, 2)).to_json_string();
        let out = run(Op::Ber, Some(&id), None).unwrap();
        assert!(out.contains(r#""c":"1""#), "{out}");
    }

    #[test]
    fn act_by_identity_is_trivial() {
        let s = Signature::new(0, 3).unwrap();
        let pt = superflag::random_big_cell_point(&mut supergeom::random::rng_from_seed(3), s);
        let payload = format::act_to_string(&PoincareElement::identity(s), &pt);
        assert_eq!(
            run(Op::Act, Some(&payload), None).unwrap(),
            pt.to_json_string()
        );
    }

    #[test]
    fn jacobian_basis_sources() {
        let a = run(Op::Jacobian, None, Some("sl")).unwrap();
        let b = run(Op::Jacobian, Some(r#"{"basis":"sl"}"#), None).unwrap();
        assert_eq!(a, b);
        assert!(matches!(
            run(Op::Jacobian, None, Some("so")),
            Err(CliError::Parse(_))
        ));
        assert!(matches!(
            run(Op::Jacobian, None, None),
            Err(CliError::Config(_))
        ));
    }

    #[test]
    fn singular_input_is_a_domain_error() {
        let s = Signature::new(0, 2).unwrap();
        let z =
            SuperMatrix::zeros(s, BlockShape::new(1, 1), BlockShape::new(1, 1)).to_json_string();
        let err = run(Op::Ber, Some(&z), None).unwrap_err();
        assert_eq!(err.exit_code(), crate::exit::INPUT_ERROR);
    }
}
