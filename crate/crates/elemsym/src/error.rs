use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different rings")]
    DescriptorMismatch,
    #[error("invalid ring descriptor: {0}")]
    BadDescriptor(String),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("2 is not invertible in this ring")]
    TwoNotInvertible,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("certificates refer to different ideals")]
    IdealMismatch,
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("odd dimension {0}")]
    OddDimension(usize),
    #[error("matrix is not alternating")]
    NotAlternating,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("certificate check failed: {0}")]
    CertificateInvalid(String),
    #[error("vector is not in the kernel of the pairing")]
    NotInKernel,
    #[error("bad generator indices ({i}, {j}) for size {size}")]
    BadIndices { i: usize, j: usize, size: usize },
    #[error("side condition violated: {0}")]
    SideConditionViolated(String),
    #[error("form is not the standard symplectic form")]
    NonstandardForm,
    #[error("vector support meets the auxiliary pair {0}")]
    SupportOverlap(usize),
    #[error("tilde pairing is nonzero")]
    PairingNonzero,
    #[error("coordinate pair {0} is not zero")]
    PairNotZero(usize),
    #[error("dimension too small: {0}")]
    DimensionTooSmall(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("missing ideal certificate: {0}")]
    NotCertified(String),
    #[error("form mismatch: {0}")]
    FormMismatch(String),
    #[error("form relation does not hold")]
    FormRelationFails,
    #[error("ring is not a supported local ring")]
    NotLocalRing,
    #[error("pfaffian is not 1")]
    PfaffianNotOne,
    #[error("form is not congruent to the standard form modulo the ideal: {0}")]
    NotCongruentToStandard(String),
    #[error("unknown suite {0}")]
    UnknownSuite(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
