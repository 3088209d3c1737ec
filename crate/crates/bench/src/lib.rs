//! Fixtures shared by the benchmarks.

use twistknot_core::numeric::{rat, Rat};
use twistknot_core::Mat2;

/// Knots spanning the twist, general and negative cases.
pub const KNOTS: [(i64, i64); 4] = [(1, 3), (2, 2), (3, -2), (4, 4)];

/// A unimodular rational matrix with six-digit entries.
pub fn exact_matrix() -> Mat2<Rat> {
    let (a, b, c) = (rat(982_451, 65_537), rat(-7_919, 104_729), rat(3_571, 15_485));
    let d = (rat(1, 1) + b.clone() * c.clone()) / a.clone();
    Mat2::new(a, b, c, d)
}

/// An exact `(M, y)` pair of the kind drawn by the identity suite.
pub fn exact_point() -> (Rat, Rat) {
    (rat(314_159, 271_828), rat(-141_421, 173_205))
}
