use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("exponent p = {0} is below 1")]
    BadExponent(f64),
    #[error("polytope vertex list is not centrally symmetric (vertex {0} has no antipode)")]
    NotSymmetric(usize),
    #[error("unit ball does not span the space")]
    DegenerateBall,
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    #[error("zero functional has no support point")]
    ZeroFunctional,
    #[error("zero vector has no norming functional")]
    ZeroVector,
    #[error("expected a polytope norm")]
    NotPolytope,
    #[error("operator norm not supported for this pair of norms")]
    UnsupportedNormPair,
    #[error("numerical breakdown: {0}")]
    NumericalBreakdown(&'static str),
    #[error("projection did not converge (residual {0:e})")]
    NotConverged(f64),
    #[error("index out of range or repeated: {0}")]
    IndexError(usize),
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("point set needs at least {0} points")]
    TooFewPoints(usize),
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("operator norm of the inverse is {0}, above 1")]
    NormBoundViolated(f64),
    #[error("p = infinity: use the summing family")]
    UseSummingFamily,
    #[error("family parameter too small: {0}")]
    TooSmall(usize),
    #[error("determinant vanished for every start")]
    DegenerateStart,
    #[error("pair ({i}, {j}): constant {value} does not exceed {threshold}")]
    NotStrictlyConvexEvidence { i: usize, j: usize, value: f64, threshold: f64 },
    #[error("system is not biorthogonal: x*_{i}(x_{j}) = {value}")]
    NotBiorthogonal { i: usize, j: usize, value: f64 },
    #[error("not an Auerbach system: {0}")]
    NotAuerbach(&'static str),
    #[error("invalid search configuration: {0}")]
    InvalidConfig(&'static str),
}
