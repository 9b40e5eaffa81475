use thiserror::Error;

/// Errors raised while building polynomials, rules, interpolants and bounds.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension must be at least 3, got {0}")]
    InvalidDimension(u32),

    #[error("adjacent family parameters must be 0 or 1, got ({a}, {b})")]
    InvalidFamily { a: u8, b: u8 },

    #[error("degree {degree} exceeds the supported maximum {max}")]
    UnsupportedDegree { degree: usize, max: usize },

    #[error("strength must be at least {min}, got {tau}")]
    InvalidStrength { tau: u32, min: u32 },

    #[error("strength {requested} does not match the strength {actual} implied by M = {m}")]
    StrengthMismatch { requested: u32, actual: u32, m: f64 },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("cardinality {m} is below the minimum {min}")]
    InvalidCardinality { m: f64, min: f64 },

    #[error("s = {s} lies outside the branch interval [{lo}, {hi}] of L_{tau}")]
    Domain { tau: u32, s: f64, lo: f64, hi: f64 },

    #[error("could not isolate {expected} roots, found {found} sign changes")]
    RootIsolation { expected: usize, found: usize },

    #[error("bisection for M = {m} did not converge (residual {residual:e})")]
    NoConvergence { m: f64, residual: f64 },

    #[error("quadrature rule construction failed: {0}")]
    RuleConstruction(String),

    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("derivative of order {order} unavailable (maximum {max})")]
    UnsupportedDerivative { order: usize, max: usize },

    #[error("interpolation nodes must be strictly increasing and inside [-1, 1)")]
    InvalidNodes,

    #[error("u = {u} must lie strictly between the largest interpolation node {node} and 1")]
    InvalidU { u: f64, node: f64 },

    #[error("no structural bound on u is available for strength {tau}; supply u explicitly")]
    RequiresUserInput { tau: u32 },

    #[error("{what} is out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },

    #[error("degenerate configuration: {0}")]
    Degenerate(&'static str),

    #[error("interpolant falls below the potential by {violation:e} (tolerance {tolerance:e})")]
    D1Violation { violation: f64, tolerance: f64 },

    #[error("numerical inconsistency: {0}")]
    NumericalInconsistency(String),

    #[error("invalid point set: {0}")]
    InvalidPointSet(String),

    #[error("invalid potential specification {0:?}")]
    PotentialSyntax(String),
}

pub type Result<T> = std::result::Result<T, Error>;
