//! The sequence `S_0 = 1`, `S_1 = t`, `S_{j+1} = t S_j - S_{j-1}`, for every
//! integer `j`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numeric::Scalar;

/// Index into the Chebyshev-like sequence; any sign is allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChebIndex(pub i64);

/// `S_j(t)` by the three-term recurrence, run upwards for `j >= 0` and
/// downwards (`S_{k-1} = t S_k - S_{k+1}`) for `j < 0`.
pub fn cheb<T: Scalar>(j: i64, t: &T) -> T {
    if j >= 0 {
        let (mut prev, mut cur) = (T::zero(), T::one()); // S_{-1}, S_0
        for _ in 0..j {
            let next = t.clone() * cur.clone() - prev;
            prev = cur;
            cur = next;
        }
        cur
    } else {
        let (mut next, mut cur) = (t.clone(), T::one()); // S_1, S_0
        for _ in 0..(-j) {
            let prev = t.clone() * cur.clone() - next;
            next = cur;
            cur = prev;
        }
        cur
    }
}

/// The pair `(S_{j-1}(t), S_{j-2}(t))` used by the matrix power formula.
pub fn cheb_pair<T: Scalar>(j: i64, t: &T) -> (T, T) {
    (cheb(j - 1, t), cheb(j - 2, t))
}

const CLOSED_FORM_MIN_INDEX: i64 = 64;

/// Floating `S_j(t)`.
///
/// For `|t| > 2` and `|j| > 64` the closed form in `σ = (t + sqrt(t²-4))/2`
/// replaces the recurrence, whose rounding error grows like `σ^j`.
pub fn cheb_f64(j: i64, t: f64) -> f64 {
    if t.abs() <= 2.0 || j.abs() <= CLOSED_FORM_MIN_INDEX {
        return cheb(j, &t);
    }
    let a = t.abs();
    let sigma = 0.5 * (a + ((a - 2.0) * (a + 2.0)).sqrt());
    // (σ^{j+1} - σ^{-j-1}) / (σ - σ^{-1}), computed in logs to delay overflow
    let ls = sigma.ln();
    let k = (j + 1) as f64;
    let num = 2.0 * (k * ls).sinh();
    let den = 2.0 * ls.sinh();
    let v = num / den;
    if t < 0.0 && j.rem_euclid(2) == 1 {
        -v
    } else {
        v
    }
}

/// The `n - 1` roots `2 cos((2j-1)π/(2n-1))`, `j = 1..n-1`, of
/// `S_{n-1}(t) - S_{n-2}(t)`.
pub fn sdiff_roots(n: i64) -> Result<Vec<f64>> {
    if n < 3 {
        return Err(Error::Domain(format!("sdiff_roots needs n >= 3, got {n}")));
    }
    let d = (2 * n - 1) as f64;
    Ok((1..n).map(|j| 2.0 * ((2 * j - 1) as f64 * PI / d).cos()).collect())
}
