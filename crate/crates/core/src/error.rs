//! Crate-wide error type.
//!
//! Domain guards carry the violated inequality as text so that callers (the
//! evolvers and the CLI) can surface the exact constraint that failed.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the validity domain of a solution family or function.
    /// `constraint` names the violated inequality, e.g. `"|c*x| < pi/2"`.
    #[error("domain error: {constraint} violated (got {value})")]
    Domain { constraint: String, value: f64 },

    /// Invalid construction parameters (broken type invariant).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A root/target was not enclosed by the supplied bracket.
    #[error("bracket error: target {target} not enclosed by [{lo}, {hi}]")]
    Bracket { target: f64, lo: f64, hi: f64 },

    /// An iterative scheme did not meet its tolerance in the allowed budget.
    #[error("no convergence after {iterations} iterations: {context}")]
    NonConvergence { iterations: usize, context: String },

    /// A solution family queried past extinction.
    #[error("curve extinct: requires t < {t0}, got t = {t}")]
    Extinct { t0: f64, t: f64 },

    /// Shooting failed to bracket the far-field/closing condition.
    #[error("shooting bracket failure: tried [{lo}, {hi}]: {context}")]
    ShootingBracket { lo: f64, hi: f64, context: String },

    /// A profile expected to blow up stayed bounded (nonexistence).
    #[error("no blow-up before rho = {rho_max}: {context}")]
    NoBlowUp { rho_max: f64, context: String },

    /// Similarity profile tail not converged at the truncation radius.
    #[error("tail not converged: F(rho_max) = {tail} >= {tol}")]
    TailNotConverged { tail: f64, tol: f64 },

    /// Graph evolution stopped: slope exceeded the configured cap
    /// (approach to a vertical asymptote).
    #[error("slope cap exceeded: |y_x| = {slope} > {cap} at t = {t}")]
    SlopeCap { slope: f64, cap: f64, t: f64 },

    /// Time stepping became unstable (NaN or runaway values).
    #[error("time-step instability at t = {t}: {context}")]
    Instability { t: f64, context: String },

    /// A closed curve self-intersected.
    #[error("curve is not simple: segments {seg_a} and {seg_b} intersect")]
    SelfIntersection { seg_a: usize, seg_b: usize },

    /// Operation requires a closed curve.
    #[error("open curve: {context}")]
    OpenCurve { context: String },

    /// Not enough data to run a fit or diagnostic.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// A least-squares fit failed its quality gate.
    #[error("fit failure: {0}")]
    FitFailure(String),

    /// Malformed serialized input.
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn domain(constraint: impl Into<String>, value: f64) -> Self {
        Error::Domain {
            constraint: constraint.into(),
            value,
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// True for errors that signal bad problem data rather than an internal
    /// failure; the CLI maps these to exit code 2.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::Domain { .. }
                | Error::InvalidInput(_)
                | Error::Bracket { .. }
                | Error::Extinct { .. }
                | Error::OpenCurve { .. }
                | Error::SelfIntersection { .. }
                | Error::Parse(_)
        )
    }
}
