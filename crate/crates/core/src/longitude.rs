//! Longitude holonomy eigenvalue `L = -W̃₁₂ / W₁₂`, where `W̃₁₂` is `W₁₂`
//! with `M` replaced by `M⁻¹`.

use crate::chebyshev::cheb;
use crate::error::{Error, Result};
use crate::knots::w_word;
use crate::mat2::{eval_word, Assignment, Generator};
use crate::numeric::Scalar;
use crate::riley::build_rep_xy;

/// `W₁₂ = S_{m-1}(y) [x S_{m-1}(y) - (M - M⁻¹) S_{m-2}(y) - y M⁻¹ S_{m-1}(y)]`.
pub fn w12<T: Scalar>(m: i64, big_m: &T, y: &T) -> T {
    let inv = T::one() / big_m.clone();
    let x = big_m.clone() + inv.clone();
    let s1 = cheb(m - 1, y);
    let s2 = cheb(m - 2, y);
    s1.clone() * (x * s1.clone() - (big_m.clone() - inv.clone()) * s2 - y.clone() * inv * s1)
}

/// The (1,2) entry of `w(B, A) = (B A⁻¹)^m (B⁻¹ A)^m` computed by matrix
/// products; this is the word whose entry the closed form describes.
/// On the variety `w(A, B)` gives the same ratio inverted.
pub fn w12_by_matrix<T: Scalar>(m: i64, big_m: &T, y: &T) -> Result<T> {
    let (a, b) = build_rep_xy(big_m.clone(), y.clone());
    let mut asg = Assignment::new();
    asg.insert(Generator::A, b);
    asg.insert(Generator::B, a);
    Ok(eval_word(&w_word(m), &asg)?.a12)
}

/// `-W₁₂(M⁻¹) / W₁₂(M)` in the arithmetic of `T`, without any checks.
pub fn longitude_ratio<T: Scalar>(m: i64, big_m: &T, y: &T) -> T {
    let inv = T::one() / big_m.clone();
    -w12(m, &inv, y) / w12(m, big_m, y)
}

/// `(1 - (y-1)M²) / (y - 1 - M²)`, the `m = 1` case.
pub fn longitude_m1<T: Scalar>(big_m: &T, y: &T) -> T {
    let m2 = big_m.square();
    let v = y.clone() - T::one();
    (T::one() - v.clone() * m2.clone()) / (v - m2)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolonomyPair {
    pub big_m: f64,
    pub l: f64,
}

const SINGULAR_W12: f64 = 1e-14;
const CROSS_CHECK_REL: f64 = 1e-6;

/// `L` at a floating point `(M, y)` of the representation variety of
/// `J(2m, 2n)`. The value does not depend on `n`; it is accepted so callers
/// can pass the knot they are working with.
pub fn longitude_eig(m: i64, n: i64, big_m: f64, y: f64) -> Result<HolonomyPair> {
    if m < 1 || n == 0 {
        return Err(Error::Domain(format!("longitude_eig needs m >= 1, n != 0; got m={m}, n={n}")));
    }
    if big_m == 0.0 || big_m.abs() == 1.0 || !big_m.is_finite() || !y.is_finite() {
        return Err(Error::Domain(format!("M = {big_m} must be finite and not 0 or ±1")));
    }
    let den = w12(m, &big_m, &y);
    if den.abs() < SINGULAR_W12 {
        return Err(Error::SingularLongitude { w12: den });
    }
    let num = w12(m, &(1.0 / big_m), &y);
    let l = -num / den;

    let den_mat = w12_by_matrix(m, &big_m, &y)?;
    let num_mat = w12_by_matrix(m, &(1.0 / big_m), &y)?;
    // only compare when the matrix route itself is not dominated by cancellation
    let scale = cheb(m - 1, &y).abs().max(1.0).powi(2) * (big_m.abs() + 1.0 / big_m.abs() + y.abs());
    if den_mat.abs() > 1e-8 * scale {
        let l_mat = -num_mat / den_mat;
        if (l_mat - l).abs() > CROSS_CHECK_REL * l.abs().max(1.0) {
            return Err(Error::ConstraintViolation(format!(
                "longitude formula {l} disagrees with matrix route {l_mat} at M={big_m}, y={y}"
            )));
        }
    }
    if l == 0.0 || !l.is_finite() {
        return Err(Error::SingularLongitude { w12: den });
    }
    Ok(HolonomyPair { big_m, l })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Tol;
    use crate::numeric::{powi, rat, Rat};
    use crate::riley::solve_x;

    fn points() -> Vec<(Rat, Rat)> {
        let mut v = Vec::new();
        for (a, b) in [(3, 2), (5, 3), (7, 2), (-4, 3), (11, 7)] {
            for (c, d) in [(5, 2), (1, 3), (-7, 4), (13, 5)] {
                v.push((rat(a, b), rat(c, d)));
            }
        }
        v
    }

    #[test]
    fn m1_value() {
        let (mm, y) = (rat(3, 1), rat(5, 1));
        assert_eq!(w12(1, &mm, &y), mm.clone() + rat(1, 3) - rat(5, 3));
    }

    #[test]
    fn at_y_two() {
        // S_1(2) = 2, S_0 = 1: W₁₂ = 2(2x - (M - 1/M) - 4/M)
        let (mm, y) = (rat(2, 1), rat(2, 1));
        let x = rat(5, 2);
        let expected = rat(2, 1) * (rat(2, 1) * x - rat(3, 2) - rat(2, 1));
        assert_eq!(w12(2, &mm, &y), expected);
    }

    #[test]
    fn formula_matches_matrix_entry() {
        for m in 1..=3 {
            for (mm, y) in points() {
                assert_eq!(w12(m, &mm, &y), w12_by_matrix(m, &mm, &y).unwrap());
            }
        }
    }

    #[test]
    fn unswapped_word_inverts_l_on_variety() {
        let p = solve_x(1, -2, 3.0, &Tol::default()).unwrap();
        let (a, b) = build_rep_xy(p.big_m, p.y);
        let (ai, bi) = build_rep_xy(1.0 / p.big_m, p.y);
        let entry = |a: crate::mat2::Mat2<f64>, b: crate::mat2::Mat2<f64>| {
            let mut asg = Assignment::new();
            asg.insert(Generator::A, a);
            asg.insert(Generator::B, b);
            eval_word(&w_word(1), &asg).unwrap().a12
        };
        let l_ab = -entry(ai, bi) / entry(a, b);
        let l = longitude_eig(1, -2, p.big_m, p.y).unwrap().l;
        assert!((l * l_ab - 1.0).abs() < 1e-9);
    }

    #[test]
    fn m1_closed_form() {
        let pts = points();
        assert_eq!(pts.len(), 20);
        for (mm, y) in pts {
            assert_eq!(longitude_ratio(1, &mm, &y), longitude_m1(&mm, &y));
        }
    }

    #[test]
    fn closed_form_in_s() {
        for m in 1..=3 {
            for (mm, s) in points() {
                let y = s.clone() + rat(1, 1) / s.clone();
                let m2 = mm.square();
                let s2m = powi(&s, 2 * m);
                let s2m1 = powi(&s, 2 * m + 1);
                let num = m2.clone() - s.clone() - s2m.clone() + m2.clone() * s2m1.clone();
                let den = rat(-1, 1) + m2.clone() * s.clone() + m2 * s2m - s2m1;
                assert_eq!(longitude_ratio(m, &mm, &y), num / den, "m={m}");
            }
        }
    }

    #[test]
    fn inversion_inverts_l() {
        for m in 1..=3 {
            for (mm, y) in points() {
                let inv = rat(1, 1) / mm.clone();
                assert_eq!(longitude_ratio(m, &mm, &y) * longitude_ratio(m, &inv, &y), rat(1, 1));
            }
        }
    }

    #[test]
    fn abelian_limit() {
        for m in 1..=3 {
            let p = longitude_eig(m, 2, 1.7, 2.0 + 1e-9).unwrap();
            assert!((p.l - 1.0).abs() < 1e-6, "m={m}: {}", p.l);
        }
    }

    #[test]
    fn on_variety_values() {
        for (m, n) in [(1, 2), (2, 3), (3, -2)] {
            let p = solve_x(m, n, 3.0, &Tol::default()).unwrap();
            let h = longitude_eig(m, n, p.big_m, p.y).unwrap();
            assert!(h.l.is_finite() && h.l != 0.0);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(longitude_eig(1, 2, 1.0, 3.0), Err(Error::Domain(_))));
        assert!(matches!(longitude_eig(0, 2, 1.5, 3.0), Err(Error::Domain(_))));
        // m = 1: W₁₂ = M + 1/M - y/M vanishes at y = M² + 1
        assert!(matches!(longitude_eig(1, 2, 2.0, 5.0), Err(Error::SingularLongitude { .. })));
    }
}
