use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty support: every mass is zero")]
    EmptySupport,
    #[error("bad mass: {0}")]
    BadMass(String),
    #[error("degenerate law: variance is zero")]
    DegenerateLaw,
    #[error("law is not standardized: {0}")]
    NotStandardized(String),
    #[error("bad order {0}")]
    BadOrder(usize),
    #[error("convolution support exceeds {0} atoms")]
    SupportBlowup(usize),
    #[error("bad n: {0}")]
    BadN(i64),
    #[error("bad rho {0}: must be >= 1")]
    BadRho(f64),
    #[error("bad parameter: {0}")]
    BadParam(String),
    #[error("bad index: {0}")]
    BadIndex(String),
    #[error("moments differ at order {index} ({lhs} vs {rhs}); zeta is infinite")]
    MomentMismatch { index: usize, lhs: f64, rhs: f64 },
    #[error("unresolved sign change near {0}")]
    UnresolvedSign(f64),
    #[error("quadrature did not converge on [{0}, {1}]")]
    QuadratureFailed(f64, f64),
    #[error("sandwich violated at n={n}: {lower} <= {value} < {upper} fails")]
    SandwichViolation { n: u64, lower: f64, value: f64, upper: f64 },
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("sequence is not sorted decreasingly")]
    NotSorted,
    #[error("coincident interpolation nodes")]
    CoincidentNodes,
    #[error("interpolation nodes too close: {0} and {1}")]
    IllConditioned(f64, f64),
    #[error("bad range: {0}")]
    BadRange(String),
    #[error("null-space extraction failed: smallest singular value {0}")]
    NumericalRankFailure(f64),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
