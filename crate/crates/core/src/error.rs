use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("algebra: inexact division ({context})")]
    InexactDivision { context: String },
    #[error("algebra: division by zero")]
    DivisionByZero,
    #[error("algebra: substitution needs exponent {exponent} but t^{bound} was requested")]
    DegreeTooLarge { exponent: usize, bound: usize },
    #[error("groups: closure exceeded cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("groups: generator {index} is not invertible over the integers")]
    NonInvertible { index: usize },
    #[error("groups: rank mismatch (expected {expected}, got {got})")]
    RankMismatch { expected: usize, got: usize },
    #[error("groups: integer overflow while multiplying matrices")]
    Overflow,
    #[error("groups: subgroup is not contained in the parent group")]
    SubgroupMismatch,
    #[error("groups: generator {index} does not act bijectively")]
    NotAnAction { index: usize },
    #[error("groups: bad permutation `{text}`: {reason}")]
    BadPermutation { text: String, reason: String },
    #[error("polytopes: generator {index} does not preserve the polytope")]
    NotInvariant { index: usize },
    #[error("polytopes: dimension {dim} exceeds the cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("polytopes: {count} vertices or facets exceed the cap {cap}")]
    VertexCap { count: usize, cap: usize },
    #[error("polytopes: points do not span a full-dimensional polytope")]
    NotFullDimensional,
    #[error("polytopes: polytope is not reflexive")]
    NotReflexive,
    #[error("polytopes: group does not act linearly on the polytope's coordinates")]
    AffineAction,
    #[error("combinatorics: phi of face {face} under element {element} is not a polynomial")]
    PhiNotPolynomial { face: usize, element: usize },
    #[error("hypersurface: negative exponent in {context}")]
    NegativeExponent { context: String },
}

impl Error {
    pub(crate) fn inexact(context: impl Into<String>) -> Self {
        Error::InexactDivision { context: context.into() }
    }

    pub fn with_context(self, ctx: &str) -> Self {
        match self {
            Error::InexactDivision { context } => Error::InexactDivision {
                context: format!("{ctx}: {context}"),
            },
            Error::NegativeExponent { context } => Error::NegativeExponent {
                context: format!("{ctx}: {context}"),
            },
            other => other,
        }
    }
}
