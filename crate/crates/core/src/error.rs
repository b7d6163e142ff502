use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("zero input: {0}")]
    ZeroInput(String),
    #[error("coordinate change matrix is singular")]
    SingularMatrix,
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("not a filter regular sequence: {0}")]
    NotFilterRegular(String),
    #[error("module is not multihomogeneous for the Z x Z^{0} grading")]
    NotMultihomogeneous(usize),
    #[error("E-depth {edepth} is below the required bound {required}")]
    EdepthTooSmall { edepth: usize, required: usize },
    #[error("decomposition solve infeasible: {0}")]
    Infeasible(String),
    #[error("genericity certification failed after {retries} retries: {detail}")]
    CertificationFailed { retries: usize, detail: String },
    #[error("containment violated: {0}")]
    ContainmentViolated(String),
    #[error("module is not of finite length: {0}")]
    NotArtinian(String),
    #[error("input is not homogeneous: {0}")]
    NotHomogeneous(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
