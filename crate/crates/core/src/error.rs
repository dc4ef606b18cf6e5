use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("mode index {mode} out of range for {modes} modes")]
    ModeOutOfRange { mode: usize, modes: usize },

    #[error("invalid mode basis: {0}")]
    InvalidModeBasis(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("partition blocks are not contiguous in the current mode order")]
    NonContiguousPartition,

    #[error("block index {index} out of range for {blocks} blocks")]
    BlockOutOfRange { index: usize, blocks: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("generator is not unitary (deviation {0:e})")]
    NonUnitary(f64),

    #[error("unsupported state structure: {0}")]
    UnsupportedStructure(String),

    #[error("separable-state search did not converge: best value {best}, gradient norm {grad_norm:e}")]
    SolverNonConvergence { best: f64, grad_norm: f64 },

    #[error("no sign change found while scanning r in [{lo}, {hi}]")]
    BracketFailure { lo: f64, hi: f64 },

    #[error("correlation bound violated: I = {mutual_info} > rhs = {rhs}")]
    BoundViolation { mutual_info: f64, rhs: f64 },

    #[error("ratio undefined: {0}")]
    UndefinedRatio(String),

    #[error("malformed grid `{spec}`: {reason}")]
    GridSpec { spec: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
