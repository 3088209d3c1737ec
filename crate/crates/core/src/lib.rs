//! SL₂(ℝ) representations of the double twist knots `J(2m, 2n)`, their
//! longitude eigenvalues, and the surgery slopes they certify.
//!
//! The algebra is written once over [`numeric::Scalar`] and runs both over
//! exact rationals (the [`verify`] suite) and doubles (sampling and root
//! finding in [`slopes`]).

pub mod chebyshev;
pub mod error;
pub mod knots;
pub mod longitude;
pub mod mat2;
pub mod numeric;
pub mod riley;
pub mod slopes;
pub mod verify;

pub use error::{Error, Result};
pub use knots::DoubleTwistKnot;
pub use longitude::{longitude_eig, HolonomyPair};
pub use mat2::Mat2;
pub use numeric::{Rat, Scalar, Tol};
pub use riley::{solve_x, RepParamsXY};
pub use slopes::{
    find_witness, solve_s0, solve_te, sweep, theorem_intervals, Family, GridSpec, Interval, IntervalSet, SlopeSample,
    Witness, WitnessKind,
};
pub use verify::{run_all, run_identity, IdentityId, VerifyConfig};
