use thiserror::Error;

/// Errors surfaced by the library. Everything here is a domain error: the
/// input violated a documented precondition or a hypothesis of the theory
/// (e.g. a generating set that does not generate).
#[derive(Debug, Error)]
pub enum Error {
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("spec mismatch: ({r1},{c1}) vs ({r2},{c2})")]
    SpecMismatch { r1: usize, c1: usize, r2: usize, c2: usize },

    #[error("empty argument list")]
    EmptyArgumentList,

    #[error("inputs {a} and {b} are not coprime")]
    NonCoprime { a: String, b: String },

    #[error("matrix is not square of even dimension")]
    BadMatrixShape,

    #[error("word has content below weight {weight}")]
    WeightTooLow { weight: usize },

    #[error("target vector is not in the column lattice")]
    NotInLattice,

    #[error("generating set does not generate the abelianization")]
    DegenerateGeneratingSet,

    #[error("section miss: homology vector outside the served domain")]
    SectionMiss,

    #[error("handle {handle} out of range for genus {genus}")]
    HandleOutOfRange { handle: usize, genus: usize },

    #[error("resource budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
