use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("empty document: no facets")]
    EmptyDocument,

    #[error("not a pseudomanifold: simplex {simplex} lies in {count} facets")]
    NotPseudomanifold { simplex: String, count: usize },

    #[error("complex is not pure: {0}")]
    NotPure(String),

    #[error("not a subcomplex: {0}")]
    NotSubcomplex(String),

    #[error("chain condition fails in dimension {dim}: boundary of boundary is nonzero")]
    ChainCondition { dim: usize },

    #[error("not a chain map in dimension {dim}")]
    NotChainMap { dim: usize },

    #[error("involution is not free: cell {cell} is fixed")]
    InvolutionNotFree { cell: String },

    #[error("map is not an involution: {0}")]
    NotInvolution(String),

    #[error("subcomplex is not invariant under the involution: {0}")]
    NotInvariant(String),

    #[error("quotient is not a regular cell complex: {0}")]
    NotRegular(String),

    #[error("malformed coefficient system: {0}")]
    BadLocalSystem(String),

    #[error("2 is not invertible in the coefficient group {0}")]
    TwoNotInvertible(String),

    #[error("coefficient modulus must be at least 2, got {0}")]
    BadModulus(u64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("homotopy degree {k} is below the sphere dimension {i}: the group is zero")]
    BelowSphereDimension { i: u32, k: u32 },

    #[error("deleted product is empty")]
    EmptyDeletedProduct,

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),

    #[error("catalog entry `{id}` failed self-validation: {reason}")]
    CatalogValidation { id: String, reason: String },

    #[error("time budget exceeded")]
    BudgetExceeded,
}
