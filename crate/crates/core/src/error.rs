use alloc::string::String;
use alloc::vec::Vec;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid mismatch: left grid (L = {left_l}, N = {left_n}) vs right grid (L = {right_l}, N = {right_n})")]
    GridMismatch { left_l: f64, left_n: usize, right_l: f64, right_n: usize },

    #[error("hermite order {0} is above the stable evaluation limit of 60")]
    HermiteOrderTooLarge(usize),

    #[error("invalid profile parameter: {0}")]
    InvalidProfile(String),

    #[error("degenerate state: norm {0:e} is below 1e-12")]
    DegenerateState(f64),

    #[error("derivative order {0} exceeds the supported maximum of 8")]
    DerivativeOrderTooLarge(usize),

    #[error("observable X^{n} P^{m} exceeds the total degree bound of 12")]
    ObservableTooLarge { n: u32, m: u32 },

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid dimension {0}: must lie in 2..=64")]
    InvalidDimension(usize),

    #[error("state is not normalized: norm {0}")]
    NotNormalized(f64),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid convex decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("value {value} outside the domain [{lo}, {hi}]")]
    Domain { value: f64, lo: f64, hi: f64 },

    #[error("target coefficient {0} is zero")]
    ZeroCoefficient(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("state orthogonal to mixture support: <psi|rho|psi> = {0:e}")]
    OrthogonalToSupport(f64),

    #[error("state lies outside the support of the mixture: residual {0:e}")]
    OutsideSupport(f64),

    #[error("state is not in the span of the given set: residual {0:e}")]
    NotInSpan(f64),

    #[error("remainder rank {remainder} did not drop below {original}")]
    RankDidNotDecrease { original: usize, remainder: usize },

    #[error("map is not monotone: derivative {derivative:e} at x = {x}")]
    NotMonotone { x: f64, derivative: f64 },

    #[error("point {value} lies outside the range [{lo}, {hi}]")]
    OutOfRange { value: f64, lo: f64, hi: f64 },

    #[error("forward value overflow at x = {0}")]
    Overflow(f64),

    #[error("time points yield non-monotone maps: {0:?}")]
    NonMonotoneTimes(Vec<f64>),

    #[error("smoothing width {width} is unresolved at spacing {dx}")]
    UnresolvedTaper { width: f64, dx: f64 },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
