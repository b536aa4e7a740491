use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("unknown state name `{0}`")]
    UnknownState(String),

    #[error("state `{name}` is not defined for n = {n}")]
    IncompatibleQubits { name: String, n: usize },

    #[error("qubit count {0} out of range")]
    QubitCountOutOfRange(usize),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid local operator: {0}")]
    InvalidOperator(String),

    #[error("invalid Acin form: {0}")]
    InvalidAcinForm(String),

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("dimension mismatch: {0} vs {1} qubits")]
    DimensionMismatch(usize, usize),

    #[error("operation requires {expected} qubits, got n = {n}")]
    WrongQubitCount { expected: &'static str, n: usize },

    #[error("kernel order {0} exceeds the supported maximum")]
    KernelTooLarge(usize),

    #[error("random sampling failed after {0} rejections")]
    SamplingFailed(usize),

    #[error("malformed document: {0}")]
    Parse(String),

    /// Numerically computed invariants contradict each other at the chosen
    /// tolerance (non-monotone rank profile, tree/numeric disagreement, ...).
    #[error("tolerance inconsistency: {0}")]
    Inconsistent(String),
}

impl Error {
    pub fn is_inconsistency(&self) -> bool {
        matches!(self, Error::Inconsistent(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
