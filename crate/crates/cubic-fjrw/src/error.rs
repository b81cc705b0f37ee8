use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("non-invertible weight: {0}")]
    NonInvertibleWeight(String),
    #[error("element is not nilpotent: constant term {0}")]
    NotNilpotent(String),
    #[error("elements belong to different local algebras")]
    AlgebraMismatch,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("unknown stratum pairing: {0}")]
    UnknownStratumPairing(String),
    #[error("unknown node-psi pairing: {0}")]
    UnknownNodePsiPairing(String),
    #[error("unsupported stratum: {0}")]
    UnsupportedStratum(String),
    #[error("degree overflow: {0}")]
    DegreeOverflow(String),
    #[error("cannot pull back {0}")]
    InvalidPullback(String),
    #[error("vertex case out of scope: {0}")]
    VertexOutOfScope(String),
    #[error("edge case out of scope: {0}")]
    EdgeOutOfScope(String),
    #[error("unresolved atoms: {0}")]
    UnresolvedAtoms(String),
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("invalid fraction `{0}`")]
    InvalidFraction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
