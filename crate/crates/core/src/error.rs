use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not hermitian (relative defect {defect:.3e})")]
    NotHermitian { defect: f64 },
    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NonConvergence { sweeps: usize },
    #[error("functional calculus table has {got} values but the spectrum has {expected} clusters")]
    MissingClusterValue { expected: usize, got: usize },
    #[error("matrix is not an orthogonal projection (relative defect {defect:.3e})")]
    NotProjection { defect: f64 },
    #[error("matrix is not a hermitian involution (relative defect {defect:.3e})")]
    NotInvolution { defect: f64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("eigenvalue {value} of the generic part lies too close to 0 or 1")]
    DegenerateSpectrum { value: f64 },
    #[error("inconsistent decomposition: {0}")]
    InconsistentDecomposition(String),
    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("range of e meets an eigenspace of u; no generic minimizer exists")]
    CaseOne,
    #[error("‖eue‖ = {norm} is too close to 1 for the C*-algebra construction")]
    NormTooLarge { norm: f64 },
    #[error("value {value} outside the admissible range {range}")]
    OutOfRange { value: f64, range: &'static str },
    #[error("{clusters} distinct spectral points exceed the enumeration cap of {cap}")]
    TooManyClusters { clusters: usize, cap: usize },
    #[error("parameters are not normalized: |x|^2 + |y|^2 = {norm_sq}")]
    NotNormalized { norm_sq: f64 },
    #[error("invalid instance specification: {0}")]
    BadSpec(String),
    #[error("invalid range: {0}")]
    BadRange(String),
    #[error("independent checks disagree: {0}")]
    Mismatch(String),
    #[error("matrix contains non-finite entries")]
    NonFinite,
}
