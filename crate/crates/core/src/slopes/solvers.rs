//! The two transcendental constants of the slope intervals.

use crate::error::{Error, Result};
use crate::numeric::{bisect, open_uniform_grid, Tol};

/// `(s^{2n-1} - s^{-2n})(s - 1) - 4`.
pub fn s0_equation(n: i64, s: f64) -> f64 {
    (s.powi((2 * n - 1) as i32) - s.powi((-2 * n) as i32)) * (s - 1.0) - 4.0
}

/// `(s^{2n} - 1)² - s (s^{2n-1} + 1)²`, which vanishes at the same `s > 1`.
pub fn s0_equation_squared(n: i64, s: f64) -> f64 {
    let a = s.powi((2 * n) as i32) - 1.0;
    let b = s.powi((2 * n - 1) as i32) + 1.0;
    a * a - s * b * b
}

/// The unique `s₀ > 1` with `(s^{2n-1} - s^{-2n})(s - 1) = 4`, `n >= 2`.
pub fn solve_s0(n: i64, tol: &Tol) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!("s0 is defined for n >= 2, got {n}")));
    }
    let grid = open_uniform_grid(1.0, 2.0, 64);
    let values: Vec<f64> = grid.iter().map(|&s| s0_equation(n, s)).collect();
    if values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::ConstraintViolation(format!("s0 equation is not increasing on (1, 2] for n={n}")));
    }
    bisect(|s| s0_equation(n, s), 1.0, 2.0, tol)
}

/// The real solution of `t e^t = c` for `c > 0`.
pub fn solve_te(c: f64, tol: &Tol) -> Result<f64> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::Domain(format!("t e^t = c needs c > 0, got {c}")));
    }
    let hi = c.ln().max(1.0) + 1.0;
    bisect(|t| t * t.exp() - c, 0.0, hi, tol)
}

/// `ω_k`, the solution of `t e^t = 4(2k - 1)`, for `k >= 1`.
pub fn omega(k: i64) -> Result<f64> {
    if k < 1 {
        return Err(Error::Domain(format!("omega needs k >= 1, got {k}")));
    }
    solve_te((4 * (2 * k - 1)) as f64, &Tol::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scan_oracle(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
        let step = 1e-5;
        let mut a = lo;
        while f(a + step) < 0.0 {
            a += step;
        }
        let mut b = a + step;
        for _ in 0..60 {
            let m = 0.5 * (a + b);
            if f(m) < 0.0 {
                a = m
            } else {
                b = m
            }
        }
        assert!(b <= hi);
        0.5 * (a + b)
    }

    #[test]
    fn s0_values() {
        let tol = Tol::default();
        let s2 = solve_s0(2, &tol).unwrap();
        assert!((s2 - 1.7548776662466927).abs() < 1e-12);
        let s3 = solve_s0(3, &tol).unwrap();
        assert!(s3 > 1.0 && s3 < 2.0);
        assert!(s0_equation(3, s3).abs() <= 1e-12);
        assert!((s3 - scan_oracle(|s| s0_equation(3, s), 1.0, 2.0)).abs() < 1e-12);
        assert!((s3 - 1.5118512553015178).abs() < 1e-12);
        for n in 2..=6 {
            let s = solve_s0(n, &tol).unwrap();
            assert!(s0_equation_squared(n, s).abs() <= 1e-9, "n={n}");
        }
        assert!(matches!(solve_s0(1, &tol), Err(Error::Domain(_))));
    }

    #[test]
    fn te_values() {
        let tol = Tol::default();
        assert!((solve_te(std::f64::consts::E, &tol).unwrap() - 1.0).abs() <= 1e-10);
        let w2 = solve_te(12.0, &tol).unwrap();
        let oracle = scan_oracle(|t| t * t.exp() - 12.0, 1.0, 3.0);
        assert!((w2 - oracle).abs() < 1e-12);
        assert!((w2 - 1.862816864432358).abs() < 1e-12);
        let w3 = solve_te(20.0, &tol).unwrap();
        assert!((w3 - 2.205).abs() < 1e-3);
        assert!((w3 - omega(3).unwrap()).abs() == 0.0);
        assert!((solve_te(0.5, &tol).unwrap() - 0.35173371124919584).abs() < 1e-12);
        assert!(solve_te(0.0, &tol).is_err());
        assert!(omega(0).is_err());
    }
}
