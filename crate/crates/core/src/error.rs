use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("elements belong to different groups")]
    GroupMismatch,
    #[error("monoids do not share an ambient group")]
    AmbientMismatch,
    #[error("monoid does not generate its ambient group")]
    NotSpanning,
    #[error("polyhedron is unbounded")]
    UnboundedPolyhedron,
    #[error("cone is not a facet of the given cone")]
    NotAFacet,
    #[error("relation {index} is not homogeneous")]
    InhomogeneousRelation { index: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
