use thiserror::Error;

use crate::complex::Face;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("no top faces given")]
    EmptyComplex,
    #[error("top face {face} has {found} vertices, expected {expected}")]
    MixedFaceSize { face: Face, found: usize, expected: usize },
    #[error("face {0} has repeated vertices")]
    RepeatedVertex(Face),
    #[error("duplicate top face {0}")]
    DuplicateTopFace(Face),
    #[error("face {0} is not in the complex")]
    FaceNotFound(Face),
    #[error("dimension {dim} out of range ({reason})")]
    DimensionOutOfRange { dim: isize, reason: &'static str },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("cochain dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ratio undefined for the zero cochain")]
    ZeroCochain,
    #[error("graph is not reversible with respect to its vertex weights")]
    NonReversible,
    #[error("enumeration of {needed} candidates exceeds budget {budget}{}", context.as_deref().map(|c| format!(" ({c})")).unwrap_or_default())]
    Infeasible { needed: u128, budget: u64, context: Option<String> },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub fn dim(dim: impl TryInto<isize>, reason: &'static str) -> Self {
        Error::DimensionOutOfRange { dim: dim.try_into().unwrap_or(isize::MAX), reason }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, Error::Infeasible { .. })
    }

    pub(crate) fn with_context(self, ctx: impl Into<String>) -> Self {
        match self {
            Error::Infeasible { needed, budget, context: None } => {
                Error::Infeasible { needed, budget, context: Some(ctx.into()) }
            }
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
