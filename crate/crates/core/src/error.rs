use std::fmt;

use thiserror::Error;

use crate::superalgebra::{MorphismViolation, Signature};
use crate::supermatrix::BlockShape;

/// Which block of a supermatrix failed an invertibility test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    /// Even-even block `p`.
    P,
    /// Odd-odd block `s`.
    S,
    /// A matrix that was inverted as a whole (all entries even).
    Whole,
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::P => f.write_str("p (even-even block)"),
            Block::S => f.write_str("s (odd-odd block)"),
            Block::Whole => f.write_str("whole matrix"),
        }
    }
}

/// The invertibility condition that keeps a matrix out of the big cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BigCellFailure {
    /// `det(Z)` has zero body.
    DetZ,
    /// `g55` has zero body.
    G55,
    /// `det(Y)` has zero body, `Y = Z - g55^-1 tau1 rho1`.
    DetY,
    /// `g55 - rho1 Z^-1 tau1` has zero body.
    DComplement,
}

impl fmt::Display for BigCellFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BigCellFailure::DetZ => f.write_str("det(Z) has zero body"),
            BigCellFailure::G55 => f.write_str("g55 has zero body"),
            BigCellFailure::DetY => f.write_str("det(Y) has zero body"),
            BigCellFailure::DComplement => f.write_str("g55 - rho1 Z^-1 tau1 has zero body"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("signature mismatch: {left} vs {right}")]
    SignatureMismatch { left: Signature, right: Signature },

    #[error("signature Λ({even},{odd}) exceeds the cap of {cap} generators per parity")]
    SignatureTooLarge { even: usize, odd: usize, cap: usize },

    #[error("generator index {index} out of range for {sig}")]
    GeneratorOutOfRange { index: usize, sig: Signature },

    #[error("element has zero body and is not invertible")]
    BodyZero,

    #[error("shape mismatch in {op}: {left} vs {right}")]
    ShapeMismatch {
        op: &'static str,
        left: String,
        right: String,
    },

    #[error("matrix is not square: {rows} x {cols}")]
    NotSquare { rows: BlockShape, cols: BlockShape },

    #[error("entry ({row},{col}) is not even")]
    NotEven { row: usize, col: usize },

    #[error("entry ({row},{col}) violates the grading")]
    GradingViolation { row: usize, col: usize },

    #[error("matrix is not invertible: body of {block} is singular")]
    NotInvertible { block: Block },

    #[error("entry ({row},{col}) has nonzero body; matrix is not nilpotent")]
    BodyNotZero { row: usize, col: usize },

    #[error("no construction available for {0}")]
    UnsupportedLabel(String),

    #[error("invalid morphism: {}", format_violations(.0))]
    InvalidMorphism(Vec<MorphismViolation>),

    #[error("outside the big cell: {0}")]
    OutsideBigCell(BigCellFailure),

    #[error("domain error: {0}")]
    DomainError(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

fn format_violations(v: &[MorphismViolation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// A payload that failed to parse, with a JSON path to the offending item.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {path}: {message}")]
pub struct ParseError {
    pub path: String,
    pub message: String,
}

impl ParseError {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        ParseError {
            path: path.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
