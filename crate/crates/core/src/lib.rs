//! Exact supergeometry over Weil superalgebras.
//!
//! * [`superalgebra`]: Grassmann-number arithmetic in `Λ(p,q)` and morphisms
//!   between such algebras.
//! * [`supermatrix`]: graded matrices, Berezinian, supertranspose, inverse
//!   and exponentials of nilpotent matrices.
//! * [`supergroups`]: membership predicates for GL, SL, OSp, πSp and P(n),
//!   random members, naturality and action-axiom checks.
//! * [`superflag`]: the big cell of the superflag `F(2|0, 2|1; C^{4|1})`,
//!   the projection from GL(4|1), the twistor relation, the super Poincaré
//!   group and the Jacobian of the projection at the identity.
//! * [`format`]: the JSON wire formats.
//!
//! All arithmetic is over ℚ, so every identity is checked with exact
//! equality.

pub mod error;
pub mod format;
pub mod linalg;
pub mod random;
pub mod superalgebra;
pub mod superflag;
pub mod supergroups;
pub mod supermatrix;

pub use error::{BigCellFailure, Block, Error, ParseError, Result};
pub use linalg::RationalMatrix;
pub use superalgebra::{
    AlgebraElement, AlgebraMorphism, Generator, Monomial, MorphismViolation, Parity, ParityTag,
    Signature, ValidityReport, MAX_GENERATORS,
};
pub use superflag::{BigCellPoint, JacobianBasis, JacobianReport, PoincareElement};
pub use supergroups::{GroupLabel, Membership, StandardForm, Violation};
pub use supermatrix::{BlockDecomposition, BlockShape, SuperMatrix};
