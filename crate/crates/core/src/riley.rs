//! Riley polynomial `φ_K(x, y)` of `J(2m, 2n)`, the twist-knot polynomial
//! `γ_n(x, z)`, and the normal-form representations they parameterize.
//!
//! Both polynomials depend on the meridian trace `x` only through `x²`.
//! Floating root finding is done in the gap coordinate `g = x² - y - 2`:
//! near the roots `g` is tiny compared with `y + 2`, and writing `x²`
//! explicitly would throw away most of its digits.

use std::f64::consts::PI;

use crate::chebyshev::cheb;
use crate::error::{Error, Result};
use crate::mat2::Mat2;

use crate::numeric::{bisect, rat_from_f64, Rat, Scalar, Tol};

fn two<T: Scalar>() -> T {
    T::from_i64(2)
}

/// `β_m = 2 - (y - 2) g S²_{m-1}(y)` with `g = x² - y - 2`.
pub fn beta_gap<T: Scalar>(m: i64, gap: &T, y: &T) -> T {
    let s = cheb(m - 1, y);
    two::<T>() - (y.clone() - two()) * gap.clone() * s.square()
}

/// `α_m = 1 + g S_{m-1}(y) (S_{m-1}(y) - S_{m-2}(y))` with `g = x² - y - 2`.
pub fn alpha_gap<T: Scalar>(m: i64, gap: &T, y: &T) -> T {
    let s1 = cheb(m - 1, y);
    let s2 = cheb(m - 2, y);
    T::one() + gap.clone() * s1.clone() * (s1 - s2)
}

/// `φ_K = α_m S_{n-1}(β_m) - S_{n-2}(β_m)` in the gap coordinate.
pub fn phi_gap<T: Scalar>(m: i64, n: i64, gap: &T, y: &T) -> T {
    let b = beta_gap(m, gap, y);
    let a = alpha_gap(m, gap, y);
    a * cheb(n - 1, &b) - cheb(n - 2, &b)
}

fn gap_of<T: Scalar>(x: &T, y: &T) -> T {
    x.square() - y.clone() - two()
}

pub fn beta<T: Scalar>(m: i64, x: &T, y: &T) -> T {
    beta_gap(m, &gap_of(x, y), y)
}

pub fn alpha<T: Scalar>(m: i64, x: &T, y: &T) -> T {
    alpha_gap(m, &gap_of(x, y), y)
}

/// The Riley polynomial `φ_K(x, y)` of `J(2m, 2n)`.
pub fn phi<T: Scalar>(m: i64, n: i64, x: &T, y: &T) -> T {
    phi_gap(m, n, &gap_of(x, y), y)
}

/// `γ_n(x, z)` given `x²`.
pub fn gamma_x2<T: Scalar>(n: i64, x2: &T, z: &T) -> T {
    let a = cheb(n - 1, z);
    let b = cheb(n - 2, z);
    -(z.clone() + T::one()) * a.square()
        + b.square()
        + two::<T>() * a.clone() * b.clone()
        + x2.clone() * a.clone() * (a - b)
}

/// `γ_n(x, z)`; zero exactly when the twist normal form is a representation.
pub fn gamma<T: Scalar>(n: i64, x: &T, z: &T) -> T {
    gamma_x2(n, &x.square(), z)
}

/// `y = tr A B^-1` in terms of `x²` and `z = tr B C^-1`.
pub fn y_from_x2z<T: Scalar>(n: i64, x2: &T, z: &T) -> T {
    let a = cheb(n - 1, z);
    let b = cheb(n - 2, z);
    (z.square() - two()) * a.square() + two::<T>() * b.square()
        - two::<T>() * z.clone() * a.clone() * b
        - x2.clone() * (z.clone() - two()) * a.square()
}

pub fn y_from_xz<T: Scalar>(n: i64, x: &T, z: &T) -> T {
    y_from_x2z(n, &x.square(), z)
}

/// `A = [[M, 0], [2 - y, 1/M]]`, `B = [[M, 1], [0, 1/M]]`.
pub fn build_rep_xy<T: Scalar>(big_m: T, y: T) -> (Mat2<T>, Mat2<T>) {
    let inv = T::one() / big_m.clone();
    let a = Mat2::new(big_m.clone(), T::zero(), two::<T>() - y, inv.clone());
    let b = Mat2::new(big_m, T::one(), T::zero(), inv);
    (a, b)
}

/// `B = [[M, 1], [0, 1/M]]`, `C = [[M, 0], [2 - z, 1/M]]`.
pub fn build_rep_xz<T: Scalar>(big_m: T, z: T) -> (Mat2<T>, Mat2<T>) {
    let (c, b) = build_rep_xy(big_m, z);
    (b, c)
}

/// The eigenvalue `M > 1` with `M + 1/M = x`, for `x > 2`.
pub fn meridian_from_trace(x: f64) -> f64 {
    0.5 * (x + ((x - 2.0) * (x + 2.0)).sqrt())
}

/// `M² > 1` from `x²`, via `M² + M⁻² = x² - 2`.
pub fn meridian_sq_from_x2(x2: f64) -> f64 {
    let t = x2 - 2.0;
    0.5 * (t + ((x2 - 4.0) * x2).sqrt())
}

/// The sign-change bracket for `φ_K(·, y)` given by `δ₁ < δ₂`, where
/// `x² = y + 2 + δ / ((y - 2) S²_{m-1}(y))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootBracket {
    pub delta_lo: f64,
    pub delta_hi: f64,
    pub x_lo: f64,
    pub x_hi: f64,
    /// `(y - 2) S²_{m-1}(y)`.
    pub scale: f64,
}

impl RootBracket {
    pub fn gap(&self, delta: f64) -> f64 {
        delta / self.scale
    }
}

fn case_deltas(n: i64) -> (f64, f64) {
    let cosine_delta = |j: i64, d: i64| 2.0 - 2.0 * ((2 * j - 1) as f64 * PI / d as f64).cos();
    match n {
        2 => (1.0, 2.0),
        n if n > 2 => (cosine_delta(1, 2 * n - 1), cosine_delta(2, 2 * n - 1)),
        n => {
            let l = -n;
            (cosine_delta(1, 2 * l + 1), cosine_delta(2, 2 * l + 1))
        }
    }
}

/// The first sign-change bracket of `x ↦ φ_K(x, y)` for `|n| >= 2`, `y > 2`.
///
/// The sign change is verified numerically; if it is not seen at the
/// endpoints the bracket is halved once before giving up.
pub fn bracket_x(m: i64, n: i64, y: f64) -> Result<RootBracket> {
    if m < 1 || n.abs() < 2 {
        return Err(Error::Domain(format!("bracket_x needs m >= 1 and |n| >= 2, got m={m}, n={n}")));
    }
    if !(y > 2.0) || !y.is_finite() {
        return Err(Error::Domain(format!("bracket_x needs y > 2, got {y}")));
    }
    let s = cheb(m - 1, &y);
    let scale = (y - 2.0) * s * s;
    let f = |d: f64| phi_gap(m, n, &(d / scale), &y);
    let (mut lo, mut hi) = case_deltas(n);
    if f(lo) * f(hi) >= 0.0 {
        let mid = 0.5 * (lo + hi);
        if f(lo) * f(mid) < 0.0 {
            hi = mid;
        } else if f(mid) * f(hi) < 0.0 {
            lo = mid;
        } else {
            return Err(Error::BracketFailure { m, n, y });
        }
    }
    let x_of = |d: f64| (y + 2.0 + d / scale).sqrt();
    Ok(RootBracket { delta_lo: lo, delta_hi: hi, x_lo: x_of(lo), x_hi: x_of(hi), scale })
}

/// A point `(x, y)` with `x = M + 1/M`, usually a root of `φ_K`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepParamsXY {
    pub m: i64,
    pub n: i64,
    pub x: f64,
    pub y: f64,
    pub big_m: f64,
    /// `x² - y - 2`, carried at full precision.
    pub gap: f64,
    pub phi_residual: f64,
    pub on_variety: bool,
}

/// Solves `φ_K(x, y) = 0` for `x` inside the first bracket. `big_m` is
/// polished with [`polish_meridian`].
pub fn solve_x(m: i64, n: i64, y: f64, tol: &Tol) -> Result<RepParamsXY> {
    let mut rep = solve_x_raw(m, n, y, tol)?;
    rep.big_m = polish_meridian(m, n, y, rep.big_m);
    Ok(rep)
}

/// [`solve_x`] without the polishing step, for callers that only use `gap`.
pub(crate) fn solve_x_raw(m: i64, n: i64, y: f64, tol: &Tol) -> Result<RepParamsXY> {
    let br = bracket_x(m, n, y)?;
    let f = |d: f64| phi_gap(m, n, &(d / br.scale), &y);
    let delta = bisect(f, br.delta_lo, br.delta_hi, tol)?;
    let gap = br.gap(delta);
    let residual = f(delta).abs();
    let x = (y + 2.0 + gap).sqrt();
    let u = meridian_sq_from_x2(y + 2.0 + gap);
    Ok(RepParamsXY { m, n, x, y, big_m: u.sqrt(), gap, phi_residual: residual, on_variety: residual <= tol.abs_eps })
}

/// Steps taken from the starting double by [`polish_meridian`].
const POLISH_ULPS: u64 = 16;

/// The double nearest the root of `M ↦ φ_K(M + 1/M, y)` next to `big_m`,
/// found by evaluating `φ_K` exactly at neighbouring doubles. Returns
/// `big_m` unchanged if no sign change is seen within [`POLISH_ULPS`].
///
/// The matrices of the normal form can have entries far above 1, so one ulp
/// in `M` may move the relation residual by more than the other rounding.
pub fn polish_meridian(m: i64, n: i64, y: f64, big_m: f64) -> f64 {
    if !(big_m > 0.0 && big_m.is_finite()) {
        return big_m;
    }
    let Ok(yq) = rat_from_f64(y) else {
        return big_m;
    };
    let phi_at = |v: f64| -> Rat {
        let mq = rat_from_f64(v).unwrap_or_else(|_| Rat::one());
        let x = mq.clone() + Rat::one() / mq;
        phi(m, n, &x, &yq)
    };
    let up = |v: f64| f64::from_bits(v.to_bits() + 1);
    let down = |v: f64| f64::from_bits(v.to_bits() - 1);
    let mut cur = (big_m, phi_at(big_m));
    if cur.1.is_zero() {
        return big_m;
    }
    let probe = (up(big_m), phi_at(up(big_m)));
    let step: &dyn Fn(f64) -> f64 = if probe.1.abs() < cur.1.abs() { &up } else { &down };
    for _ in 0..POLISH_ULPS {
        let v = step(cur.0);
        let next = (v, phi_at(v));
        if next.1.is_zero() || num::Signed::is_positive(&next.1) != num::Signed::is_positive(&cur.1) {
            return if next.1.abs() < cur.1.abs() { next.0 } else { cur.0 };
        }
        cur = next;
    }
    big_m
}

/// A point `(x, z)` of the twist normal form for `J(2, 2n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepParamsXZ {
    pub n: i64,
    pub x: f64,
    pub x2: f64,
    pub z: f64,
    pub big_m: f64,
    pub gamma_residual: f64,
    pub on_variety: bool,
}

/// The real twist-knot representation with `z = s + 1/s` and
/// `x² = (2 + s + 1/s)(s^{4n-1} - 1) / ((s^{2n} - 1)(s^{2n-1} + 1))`.
pub fn twist_params_from_s(n: i64, s: f64) -> Result<RepParamsXZ> {
    if n == 0 || !(s > 0.0) || s == 1.0 {
        return Err(Error::Domain(format!("twist parameters need n != 0 and s > 0, s != 1; got n={n}, s={s}")));
    }
    let p = |k: i64| s.powi(k as i32);
    let x2 = (2.0 + s + 1.0 / s) * (p(4 * n - 1) - 1.0) / ((p(2 * n) - 1.0) * (p(2 * n - 1) + 1.0));
    if !(x2 > 4.0) {
        return Err(Error::Domain(format!("x² = {x2} <= 4 at s = {s}; no real M > 1")));
    }
    let z = s + 1.0 / s;
    let g = gamma_x2(n, &x2, &z);
    let scale = 1f64.max(cheb(n - 1, &z).powi(2) * x2);
    Ok(RepParamsXZ {
        n,
        x: x2.sqrt(),
        x2,
        z,
        big_m: meridian_sq_from_x2(x2).sqrt(),
        gamma_residual: g.abs(),
        on_variety: g.abs() <= 1e-9 * scale,
    })
}
