use thiserror::Error;

pub type Result<T> = std::result::Result<T, HeunError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HeunError {
    #[error("pole of the gamma function at {0}")]
    Pole(f64),
    #[error("argument outside the principal sector: {0}")]
    Branch(String),
    #[error("no evaluation strategy converged: {0}")]
    Convergence(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("recurrence generation failed at n = {index}: {reason}")]
    Generation { index: i64, reason: String },
    #[error("continued fraction breakdown at depth {0}")]
    CfBreakdown(usize),
    #[error("root finder did not converge after {iterations} iterations (last residual {residual:e}); try another starting point")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("coefficient denominator vanishes at n = {index}; {remedy}")]
    Denominator { index: i64, remedy: String },
    #[error("quadrature failed: {0}")]
    Quadrature(String),
    #[error("validity condition violated: {0}")]
    Condition(String),
    #[error("parameters are not degenerate (B1 and omega both nonzero)")]
    NotDegenerate,
    #[error("s = {0} is not a non-negative integer or half-integer")]
    NotQes(f64),
    #[error("no roots found in [{lo}, {hi}]")]
    NoRoots { lo: f64, hi: f64 },
    #[error("matching failed: relative mismatch {0:e}")]
    MatchFailure(f64),
    #[error("degenerate mapping: {0}")]
    Degenerate(String),
}
