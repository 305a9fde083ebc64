use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no direction")]
    ZeroVector,
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cone not strictly convex")]
    NotPointed,
    #[error("cone is not full-dimensional")]
    NotFullDimensional,
    #[error("tau is not contained in sigma")]
    TauNotInSigma,
    #[error("ray lies outside the support of the fan")]
    RayOutsideSupport,
    #[error("no well-defined upper hull: lifted points are degenerate")]
    DegenerateLift,
    #[error("subdivision is not coherent relative to Delta")]
    NotCoherent,
    #[error("fan does not refine Delta")]
    NotARefinement,
    #[error("monomial ideal has no generators")]
    EmptyGenerators,
    #[error("generator lies outside the dual of the ambient cone")]
    GeneratorOutsideDual,
    #[error("unsupported ambient for minimal generators")]
    UnsupportedAmbient,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
