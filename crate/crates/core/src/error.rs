use thiserror::Error;

use crate::mat2::Generator;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("bisection did not converge in {0} iterations")]
    MaxIterExceeded(usize),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("determinant {det} is not 1")]
    Det { det: f64 },

    #[error("generator {0} has no assigned matrix")]
    UnboundGenerator(Generator),

    #[error("Riley polynomial does not change sign on the bracket for m={m}, n={n}, y={y}")]
    BracketFailure { m: i64, n: i64, y: f64 },

    #[error("longitude entry W12 = {w12:e} is too close to zero")]
    SingularLongitude { w12: f64 },

    #[error("constraint violated: {0}")]
    ConstraintViolation(String),

    #[error("J(2,2) is the trefoil and is excluded")]
    TrefoilExcluded,

    #[error("slope {p}/{q} is not in the certified set for J({k},{l})", k = 2 * .m, l = 2 * .n)]
    SlopeNotCertified { m: i64, n: i64, p: i64, q: i64 },

    #[error("no parameter found for slope {p}/{q}: {grid}")]
    SearchFailure { p: i64, q: i64, grid: String },

    #[error("sample point excluded: {0}")]
    ExcludedPoint(String),

    #[error("exact mismatch for {id} at {point}")]
    ExactMismatch { id: String, point: String },
}

impl Error {
    /// Errors that indicate a bug or a broken invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::ConstraintViolation(_) | Error::ExactMismatch { .. } | Error::BracketFailure { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
