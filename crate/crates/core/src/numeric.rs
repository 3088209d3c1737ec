//! Scalars, exact rationals and sign-change root bracketing.
//!
//! Everything algebraic in this crate is written once against [`Scalar`] and
//! instantiated at [`Rat`] (exact identity checks) and `f64` (sampling).

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rat = BigRational;

/// A field element usable by the generic matrix and polynomial code.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn to_f64(&self) -> f64;
    fn is_zero(&self) -> bool;
    fn abs(&self) -> Self;

    /// Whether `self` should be treated as exactly 1 for a determinant whose
    /// two products have combined magnitude `magnitude`.
    fn is_unit_det(&self, magnitude: f64) -> bool;

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn is_unit_det(&self, magnitude: f64) -> bool {
        (self - 1.0).abs() <= DET_EPS * magnitude.max(1.0)
    }
}

/// Relative determinant tolerance for floating matrices.
pub const DET_EPS: f64 = 1e-12;

impl Scalar for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        Rat::from_integer(BigInt::from(v))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn is_unit_det(&self, _magnitude: f64) -> bool {
        One::is_one(self)
    }
}

/// `num / den` as an exact rational.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// The exact rational value of a finite double.
pub fn rat_from_f64(x: f64) -> Result<Rat> {
    Rat::from_f64(x).ok_or_else(|| Error::Domain(format!("{x} is not finite")))
}

/// Integer power for any scalar, negative exponents by inversion.
pub fn powi<T: Scalar>(x: &T, e: i64) -> T {
    let mut base = if e < 0 { T::one() / x.clone() } else { x.clone() };
    let mut k = e.unsigned_abs();
    let mut acc = T::one();
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * base.clone();
        }
        base = base.square();
        k >>= 1;
    }
    acc
}

/// Stopping rule for [`bisect`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tol {
    /// Accept `x` once `|f(x)| <= abs_eps`.
    pub abs_eps: f64,
    /// Accept once the bracket is narrower than `rel_eps * max(1, |x|)`.
    /// Zero means "bisect down to floating resolution".
    pub rel_eps: f64,
    pub max_iter: usize,
}

impl Default for Tol {
    fn default() -> Self {
        Tol { abs_eps: 1e-12, rel_eps: 0.0, max_iter: 200 }
    }
}

impl Tol {
    pub fn new(abs_eps: f64, rel_eps: f64, max_iter: usize) -> Result<Self> {
        if !(abs_eps > 0.0) || !(rel_eps >= 0.0) || max_iter == 0 {
            return Err(Error::Domain(format!(
                "invalid tolerance abs_eps={abs_eps}, rel_eps={rel_eps}, max_iter={max_iter}"
            )));
        }
        Ok(Tol { abs_eps, rel_eps, max_iter })
    }

    pub fn with_abs(abs_eps: f64) -> Self {
        Tol { abs_eps, ..Tol::default() }
    }
}

/// Finds a root of `f` inside `(lo, hi)` from a sign change alone.
///
/// Returns the first midpoint with `|f| <= tol.abs_eps`. When the bracket
/// shrinks below `tol.rel_eps * max(1, |x|)` or to adjacent doubles first,
/// the evaluated midpoint with the smallest `|f|` is returned.
pub fn bisect<F>(f: F, lo: f64, hi: f64, tol: &Tol) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(lo < hi) {
        return Err(Error::Domain(format!("empty bracket [{lo}, {hi}]")));
    }
    let (mut a, mut b) = (lo, hi);
    let fa0 = f(a);
    let fb0 = f(b);
    if !(fa0 * fb0 < 0.0) {
        return Err(Error::NoSignChange { lo, hi, f_lo: fa0, f_hi: fb0 });
    }
    let mut fa = fa0;
    let mut best = (f64::NAN, f64::INFINITY);
    for _ in 0..tol.max_iter {
        let mid = a + 0.5 * (b - a);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid);
        if fm.abs() < best.1 {
            best = (mid, fm.abs());
        }
        if fm.abs() <= tol.abs_eps {
            return Ok(mid);
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
        if b - a <= tol.rel_eps * mid.abs().max(1.0) {
            return Ok(best.0);
        }
    }
    let mid = a + 0.5 * (b - a);
    if mid <= a || mid >= b {
        // bracket exhausted at floating resolution
        return Ok(best.0);
    }
    Err(Error::MaxIterExceeded(tol.max_iter))
}

/// `n` points `origin + t` with `t` log-spaced over `[lo_off, hi_off]`.
pub fn log_offset_grid(origin: f64, lo_off: f64, hi_off: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo_off.ln(), hi_off.ln());
    match n {
        0 => vec![],
        1 => vec![origin + (0.5 * (a + b)).exp()],
        _ => (0..n).map(|k| origin + (a + (b - a) * k as f64 / (n - 1) as f64).exp()).collect(),
    }
}

/// `n` uniform points strictly inside `(lo, hi)`.
pub fn open_uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| lo + (hi - lo) * (k + 1) as f64 / (n + 1) as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two() {
        let x = bisect(|x| x * x - 2.0, 1.0, 2.0, &Tol::default()).unwrap();
        assert!((x - std::f64::consts::SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn linear_root() {
        let x = bisect(|x| x - 1.0, 0.0, 2.0, &Tol::default()).unwrap();
        assert_eq!(x, 1.0);
    }

    #[test]
    fn s0_equation_for_n2() {
        // oracle: scan a fine grid for the sign change, then refine by halving
        let g = |x: f64| (x.powi(3) - x.powi(-4)) * (x - 1.0) - 4.0;
        let mut lo = 1.5;
        let step = 1e-4;
        while g(lo + step) < 0.0 {
            lo += step;
        }
        let (mut a, mut b) = (lo, lo + step);
        for _ in 0..60 {
            let m = 0.5 * (a + b);
            if g(m) < 0.0 {
                a = m
            } else {
                b = m
            }
        }
        let oracle = 0.5 * (a + b);
        assert!((oracle - 1.7548776662466927).abs() < 1e-13);

        let x = bisect(g, 1.5, 2.0, &Tol::default()).unwrap();
        assert!((x - oracle).abs() < 1e-12);
        assert!(g(x).abs() <= 1e-12);
    }

    #[test]
    fn no_sign_change() {
        let err = bisect(|x| x * x + 1.0, -1.0, 1.0, &Tol::default()).unwrap_err();
        assert!(matches!(err, Error::NoSignChange { .. }));
        let err = bisect(|x| x, 0.0, 1.0, &Tol::default()).unwrap_err();
        assert!(matches!(err, Error::NoSignChange { .. }));
    }

    #[test]
    fn max_iter() {
        let tol = Tol { abs_eps: 1e-300, rel_eps: 0.0, max_iter: 5 };
        let err = bisect(|x| x - 0.3, 0.0, 1.0, &tol).unwrap_err();
        assert_eq!(err, Error::MaxIterExceeded(5));
    }

    #[test]
    fn width_stop_returns_interior_point() {
        let tol = Tol { abs_eps: 1e-300, rel_eps: 1e-3, max_iter: 200 };
        let x = bisect(|x| x - 0.3, 0.0, 1.0, &tol).unwrap();
        assert!(x > 0.0 && x < 1.0 && (x - 0.3).abs() < 2e-3);
    }

    #[test]
    fn invalid_tol() {
        assert!(Tol::new(0.0, 0.0, 10).is_err());
        assert!(Tol::new(1e-9, -1.0, 10).is_err());
        assert!(Tol::new(1e-9, 0.0, 0).is_err());
    }

    #[test]
    fn rational_power() {
        let x = rat(3, 2);
        assert_eq!(powi(&x, 3), rat(27, 8));
        assert_eq!(powi(&x, -2), rat(4, 9));
        assert_eq!(powi(&x, 0), rat(1, 1));
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn small_rat() -> impl Strategy<Value = Rat> {
            (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| rat(n, d))
        }

        proptest! {
            #[test]
            fn rat_field_axioms(a in small_rat(), b in small_rat(), c in small_rat()) {
                prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
                prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
                prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
                prop_assert!(num::Integer::gcd(a.numer(), a.denom()) == BigInt::from(1) || Zero::is_zero(&a));
                prop_assert!(Signed::is_positive(a.denom()));
            }

            #[test]
            fn bisect_rational_cubic(r in 1i64..200, d in 1i64..50) {
                // p(x) = (x - r/d)(x^2 + 1) has a single real root
                let root = r as f64 / d as f64;
                let p = |x: f64| (x - root) * (x * x + 1.0);
                let lo = root - 1.0 - (r % 3) as f64;
                let hi = root + 0.5;
                let x = bisect(p, lo, hi, &Tol::default()).unwrap();
                prop_assert!(p(x).abs() <= 1e-12);
            }
        }
    }
}
