//! The five real representation families and their `(M, L)` values.
//!
//! Each family is a curve of points `(M, y)` on the representation variety.
//! `L` is evaluated from cancellation-free closed forms in the family
//! parameter rather than from `(M, y)` alone: near the ends of a family the
//! ratio `-W̃₁₂/W₁₂` is a quotient of two nearly cancelling quantities.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::knots::{relation_residual_at, DoubleTwistKnot};
use crate::numeric::Tol;
use crate::riley::{meridian_sq_from_x2, solve_x_raw};
use crate::slopes::solvers::solve_s0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// General `m`, `|n| >= 2`; `y = s + 1/s`, `s > 1`.
    F0,
    /// `m = 1`, `n >= 2`, `s > s₀(n)`.
    F1,
    /// `m = 1`, `n >= 2`, `θ ∈ (π/(2(2n-1)), π/(2n))`.
    F2,
    /// `m = 1`, `n = -l <= -1`, `s > 1`.
    F3,
    /// `m = 1`, `n = -l <= -1`, `θ ∈ (0, π/(2(2l+1)))`.
    F4,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::F0, Family::F1, Family::F2, Family::F3, Family::F4];

    pub fn is_angular(self) -> bool {
        matches!(self, Family::F2 | Family::F4)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::F0 => "f0",
            Family::F1 => "f1",
            Family::F2 => "f2",
            Family::F3 => "f3",
            Family::F4 => "f4",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "f0" => Ok(Family::F0),
            "f1" => Ok(Family::F1),
            "f2" => Ok(Family::F2),
            "f3" => Ok(Family::F3),
            "f4" => Ok(Family::F4),
            _ => Err(Error::Domain(format!("unknown family {s:?}; expected f0..f4"))),
        }
    }
}

/// One point of a family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeSample {
    pub family: Family,
    pub m: i64,
    pub n: i64,
    /// `s` or `θ`.
    pub param: f64,
    pub big_m: f64,
    pub l: f64,
    /// `-log|L| / log M`.
    pub r: f64,
    pub y: f64,
    /// Max-abs entry of `A Wⁿ - Wⁿ B`, evaluated exactly at `(M, y)`.
    pub relation_residual: f64,
    /// `relation_residual` relative to the size of the products.
    pub relation_residual_rel: f64,
}

/// `(M, L)` data at one parameter, with logs computed stably.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Point {
    pub big_m: f64,
    pub log_m: f64,
    pub l: f64,
    pub log_abs_l: f64,
    pub y: f64,
}

impl Point {
    pub fn r(&self) -> f64 {
        -self.log_abs_l / self.log_m
    }
}

/// A family with fixed knot parameters and its parameter domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Branch {
    pub family: Family,
    pub m: i64,
    pub n: i64,
    s0: f64,
}

impl Branch {
    pub fn new(family: Family, m: i64, n: i64) -> Result<Branch> {
        DoubleTwistKnot::new(m, n)?;
        let bad = |why: &str| Err(Error::Domain(format!("{family} needs {why}; got m={m}, n={n}")));
        let mut s0 = f64::NAN;
        match family {
            Family::F0 if n.abs() < 2 => return bad("|n| >= 2"),
            Family::F1 | Family::F2 if m != 1 || n < 2 => return bad("m = 1 and n >= 2"),
            Family::F3 | Family::F4 if m != 1 || n > -1 => return bad("m = 1 and n <= -1"),
            _ => {}
        }
        if family == Family::F1 {
            s0 = solve_s0(n, &Tol::default())?;
        }
        Ok(Branch { family, m, n, s0 })
    }

    /// Open parameter interval.
    pub fn domain(&self) -> (f64, f64) {
        let l = -self.n;
        match self.family {
            Family::F0 | Family::F3 => (1.0, f64::INFINITY),
            Family::F1 => (self.s0, f64::INFINITY),
            Family::F2 => (PI / (2 * (2 * self.n - 1)) as f64, PI / (2 * self.n) as f64),
            Family::F4 => (0.0, PI / (2 * (2 * l + 1)) as f64),
        }
    }

    /// `s₀(n)` for F1, NaN otherwise.
    pub fn s0(&self) -> f64 {
        self.s0
    }

    /// Search coordinate: `ln(s - lo)` for `s` families, `θ` itself otherwise.
    pub fn param_of(&self, coord: f64) -> f64 {
        if self.family.is_angular() {
            coord
        } else {
            self.domain().0 + coord.exp()
        }
    }

    pub fn coord_of(&self, param: f64) -> f64 {
        if self.family.is_angular() {
            param
        } else {
            (param - self.domain().0).ln()
        }
    }

    /// Default search coordinates with `points` entries.
    pub fn default_coords(&self, points: usize) -> Vec<f64> {
        let (lo, hi) = self.domain();
        match self.family {
            Family::F0 | Family::F3 => log_coords(1e-6, 1e6, points),
            Family::F1 => log_coords(1e-6, 1e5, points),
            Family::F2 | Family::F4 => crate::numeric::open_uniform_grid(lo, hi, points),
        }
    }

    fn check_param(&self, param: f64) -> Result<()> {
        let (lo, hi) = self.domain();
        if !(param > lo && param < hi) || !param.is_finite() {
            return Err(Error::Domain(format!(
                "{} parameter {param} outside ({lo}, {hi}) for m={}, n={}",
                self.family, self.m, self.n
            )));
        }
        Ok(())
    }

    pub(crate) fn point(&self, param: f64) -> Result<Point> {
        self.check_param(param)?;
        match self.family {
            Family::F0 => f0_point(self.m, self.n, param),
            Family::F1 => twist_point(Family::F1, &f1_parts(self.n, param)),
            Family::F2 => twist_point(Family::F2, &f2_parts(self.n, param)),
            Family::F3 => twist_point(Family::F3, &f3_parts(-self.n, param)),
            Family::F4 => twist_point(Family::F4, &f4_parts(-self.n, param)),
        }
    }

    pub fn sample(&self, param: f64) -> Result<SlopeSample> {
        let p = self.point(param)?;
        let knot = DoubleTwistKnot::new(self.m, self.n)?;
        let res = relation_residual_at(&knot, p.big_m, p.y)?;
        Ok(SlopeSample {
            family: self.family,
            m: self.m,
            n: self.n,
            param,
            big_m: p.big_m,
            l: p.l,
            r: p.r(),
            y: p.y,
            relation_residual: res.abs,
            relation_residual_rel: res.rel,
        })
    }
}

fn log_coords(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    crate::numeric::log_offset_grid(0.0, lo, hi, n).into_iter().map(f64::ln).collect()
}

/// A sample of `family` for the knot `J(2m, 2n)` at parameter `param`.
pub fn family_sample(family: Family, m: i64, n: i64, param: f64) -> Result<SlopeSample> {
    Branch::new(family, m, n)?.sample(param)
}

fn violation(family: Family, what: &str, param: f64) -> Error {
    Error::ConstraintViolation(format!("{family}: {what} fails at parameter {param}"))
}

fn f0_point(m: i64, n: i64, s_in: f64) -> Result<Point> {
    let y = s_in + 1.0 / s_in;
    // the root of s + 1/s = y, so that s and y agree to the last bit
    let s = 0.5 * (y + ((y - 2.0) * (y + 2.0)).sqrt());
    let sm1 = s - 1.0;
    if !(sm1 > 0.0) {
        return Err(Error::Domain(format!("s = {s_in} is too close to 1")));
    }
    let rep = solve_x_raw(m, n, y, &Tol::default())?;
    let g = rep.gap;
    let u = meridian_sq_from_x2(y + 2.0 + g);
    let us1 = u * s - 1.0;
    // u - s from (u - s)(1 - 1/(us)) = g
    let e = g * u * s / us1;
    let k = -2.0 * m as f64 * sm1.ln_1p();
    let q = k.exp();
    let one_minus_q = -k.exp_m1();
    let den = e + us1 * q;
    let l = (e * q + us1) / den;
    let lm1 = one_minus_q * sm1 * (u + 1.0) / den;
    if !(e > 0.0) {
        return Err(violation(Family::F0, "M² > s", s_in));
    }
    if !(lm1 > 0.0) {
        return Err(violation(Family::F0, "L > 1", s_in));
    }
    let log_abs_l = if lm1 < 0.5 { lm1.ln_1p() } else { l.ln() };
    let log_m = 0.5 * (sm1 + e).ln_1p();
    Ok(Point { big_m: u.sqrt(), log_m, l, log_abs_l, y })
}

/// Closed-form data of an `m = 1` family point: `x²`, `v = y - 1`,
/// `v - 1` and `D = u + 1/u - v - 1/v` with `u = M²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct TwistParts {
    pub x2: f64,
    pub v: f64,
    pub vm1: f64,
    pub d: f64,
    pub param: f64,
}

/// `s^{-k}` and `1 - s^{-k}` for `s > 1`.
fn neg_pow(ln_s: f64, k: i64) -> (f64, f64) {
    let t = -(k as f64) * ln_s;
    (t.exp(), -t.exp_m1())
}

fn f1_parts(n: i64, s: f64) -> TwistParts {
    let ls = s.ln();
    let (_, om_4n1) = neg_pow(ls, 4 * n - 1);
    let (_, om_2n) = neg_pow(ls, 2 * n);
    let (p_2n1, _) = neg_pow(ls, 2 * n - 1);
    let (p_2np1, _) = neg_pow(ls, 2 * n + 1);
    let (p_2n2, _) = neg_pow(ls, 2 * n + 2);
    let x2 = (2.0 + s + 1.0 / s) * om_4n1 / (om_2n * (1.0 + p_2n1));
    let v = s * (1.0 + p_2np1) / (1.0 + p_2n1);
    // (s^{2n} - 1)(s - 1) / (s^{2n} + s)
    let vm1 = om_2n * (s - 1.0) / (1.0 + p_2n1);
    let d = -(s + 1.0).powi(2) * (s - 1.0) * p_2n2 / ((1.0 + p_2np1) * om_2n);
    TwistParts { x2, v, vm1, d, param: s }
}

fn f3_parts(l: i64, s: f64) -> TwistParts {
    let ls = s.ln();
    let (_, om_4l1) = neg_pow(ls, 4 * l + 1);
    let (p_2l1, _) = neg_pow(ls, 2 * l + 1);
    let (_, om_2l) = neg_pow(ls, 2 * l);
    let (p_2lm1, _) = neg_pow(ls, 2 * l - 1);
    let x2 = (2.0 + s + 1.0 / s) * om_4l1 / ((1.0 + p_2l1) * om_2l);
    let v = (1.0 + s * p_2l1 * s) / (s * (1.0 + p_2l1));
    // -(s^{2l} - 1)(s - 1) / (s^{2l+1} + 1)
    let vm1 = -om_2l * (s - 1.0) / (s * (1.0 + p_2l1));
    let d = (s + 1.0).powi(2) * (s - 1.0) * p_2l1 / (om_2l * (1.0 + p_2lm1));
    TwistParts { x2, v, vm1, d, param: s }
}

fn f2_parts(n: i64, theta: f64) -> TwistParts {
    let k = |j: i64| j as f64 * theta;
    let c = theta.cos();
    let x2 = 4.0 * c * c * k(4 * n - 1).sin() / (2.0 * k(2 * n).sin() * k(2 * n - 1).cos());
    let v = k(2 * n + 1).cos() / k(2 * n - 1).cos();
    let vm1 = -2.0 * k(2 * n).sin() * theta.sin() / k(2 * n - 1).cos();
    let d = -2.0 * c * c * theta.sin() / (k(2 * n).sin() * k(2 * n + 1).cos());
    TwistParts { x2, v, vm1, d, param: theta }
}

fn f4_parts(l: i64, theta: f64) -> TwistParts {
    let k = |j: i64| j as f64 * theta;
    let c = theta.cos();
    let x2 = 4.0 * c * c * k(4 * l + 1).sin() / (2.0 * k(2 * l + 1).cos() * k(2 * l).sin());
    let v = k(2 * l - 1).cos() / k(2 * l + 1).cos();
    let vm1 = 2.0 * k(2 * l).sin() * theta.sin() / k(2 * l + 1).cos();
    let d = 2.0 * c * c * theta.sin() / (k(2 * l).sin() * k(2 * l - 1).cos());
    TwistParts { x2, v, vm1, d, param: theta }
}

/// `L = (uv - 1)/(u - v)` with `(u - v)(uv - 1) = D u v`: the factor of
/// larger size is formed directly and the other recovered from `D`.
fn twist_point(family: Family, t: &TwistParts) -> Result<Point> {
    if !(t.x2 > 4.0) || !t.x2.is_finite() {
        return Err(violation(family, "x² > 4", t.param));
    }
    let u = meridian_sq_from_x2(t.x2);
    let v = t.v;
    let a0 = u - v;
    let b0 = u * v - 1.0;
    let (a, b) = if a0.abs() >= b0.abs() { (a0, t.d * u * v / a0) } else { (t.d * u * v / b0, b0) };
    let l = b / a;
    let lm1 = (u + 1.0) * t.vm1 / a;
    let ok = match family {
        Family::F1 => l < -1.0 && t.vm1 > 0.0 && a < 0.0,
        Family::F2 | Family::F4 => lm1 > 0.0 && t.vm1 > 0.0 && a > 0.0,
        // M² - s ~ s^{1-2l} drops below resolution for large s
        Family::F3 => b > 0.0 && lm1 < 0.0 && u > t.param * (1.0 - 1e-12),
        Family::F0 => unreachable!("F0 has its own evaluator"),
    };
    if !ok {
        let what = match family {
            Family::F1 => "y - 1 > M² > 1 and L < -1",
            Family::F2 | Family::F4 => "M² > y - 1 > 1 and L > 1",
            _ => "M² > s and 0 < L < 1",
        };
        return Err(violation(family, what, t.param));
    }
    let log_abs_l = if lm1.abs() < 0.5 { lm1.ln_1p() } else { b.abs().ln() - a.abs().ln() };
    let log_m = 0.5 * u.ln();
    Ok(Point { big_m: u.sqrt(), log_m, l, log_abs_l, y: 1.0 + v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::longitude::longitude_m1;
    use crate::numeric::{powi, rat, Rat, Scalar};

    /// Exact `x²`, `v`, `D` of F1/F3 at rational `s` from the raw formulas.
    fn exact_parts(family: Family, k: i64, s: &Rat) -> (Rat, Rat, Rat) {
        let one = rat(1, 1);
        let p = |e: i64| powi(s, e);
        let z = s.clone() + one.clone() / s.clone();
        let (x2, v) = match family {
            Family::F1 => (
                (rat(2, 1) + z) * (p(4 * k - 1) - one.clone())
                    / ((p(2 * k) - one.clone()) * (p(2 * k - 1) + one.clone())),
                (p(2 * k + 1) + one.clone()) / (p(2 * k) + s.clone()),
            ),
            _ => (
                (rat(2, 1) + z) * (p(4 * k + 1) - one.clone())
                    / ((p(2 * k + 1) + one.clone()) * (p(2 * k) - one.clone())),
                (p(2 * k) + s.clone()) / (p(2 * k + 1) + one.clone()),
            ),
        };
        let d = x2.clone() - rat(2, 1) - v.clone() - one / v.clone();
        (x2, v, d)
    }

    #[test]
    fn s_family_parts_match_raw_formulas() {
        for k in 1..=3 {
            for (a, b) in [(7, 4), (5, 2), (9, 1)] {
                let s = rat(a, b);
                let sf = a as f64 / b as f64;
                for (fam, parts) in [(Family::F1, f1_parts(k + 1, sf)), (Family::F3, f3_parts(k, sf))] {
                    let kk = if fam == Family::F1 { k + 1 } else { k };
                    let (x2, v, d) = exact_parts(fam, kk, &s);
                    let close =
                        |got: f64, want: &Rat| (got - want.to_f64()).abs() <= 1e-13 * want.to_f64().abs().max(1.0);
                    assert!(close(parts.x2, &x2), "{fam} k={kk} s={sf} x2");
                    assert!(close(parts.v, &v), "{fam} k={kk} s={sf} v");
                    assert!(close(parts.vm1, &(v.clone() - rat(1, 1))), "{fam} k={kk} s={sf} v-1");
                    assert!(close(parts.d, &d), "{fam} k={kk} s={sf} D");
                }
            }
        }
    }

    #[test]
    fn angle_family_parts_are_consistent() {
        for (n, th) in [(2, 0.7), (3, 0.45), (4, 0.35)] {
            let t = f2_parts(n, th);
            let u = meridian_sq_from_x2(t.x2);
            assert!((t.vm1 - (t.v - 1.0)).abs() < 1e-12);
            assert!((t.d - (u + 1.0 / u - t.v - 1.0 / t.v)).abs() < 1e-10);
        }
        for (l, th) in [(1, 0.3), (2, 0.2), (3, 0.1)] {
            let t = f4_parts(l, th);
            let u = meridian_sq_from_x2(t.x2);
            assert!((t.vm1 - (t.v - 1.0)).abs() < 1e-12);
            assert!((t.d - (u + 1.0 / u - t.v - 1.0 / t.v)).abs() < 1e-10);
        }
    }

    #[test]
    fn angle_families_are_the_s_families_at_unit_modulus() {
        // s = e^{2iθ} turns the s-formulas into the cosine formulas
        use num::complex::Complex64;
        let (n, th) = (3i64, 0.45);
        let s = Complex64::from_polar(1.0, 2.0 * th);
        let p = |k: i64| s.powi(k as i32);
        let x2 = (2.0 + s + 1.0 / s) * (p(4 * n - 1) - 1.0) / ((p(2 * n) - 1.0) * (p(2 * n - 1) + 1.0));
        let v = (p(2 * n + 1) + 1.0) / (p(2 * n) + s);
        let t = f2_parts(n, th);
        assert!((x2 - t.x2).norm() < 1e-12 && (v - t.v).norm() < 1e-12);
        let l = 2i64;
        let q = |k: i64| s.powi(k as i32);
        let x2 = (2.0 + s + 1.0 / s) * (q(4 * l + 1) - 1.0) / ((q(2 * l + 1) + 1.0) * (q(2 * l) - 1.0));
        let v = (q(2 * l) + s) / (q(2 * l + 1) + 1.0);
        let t = f4_parts(l, th);
        assert!((x2 - t.x2).norm() < 1e-12 && (v - t.v).norm() < 1e-12);
    }

    #[test]
    fn twist_l_matches_m1_formula() {
        for (fam, n, p) in [(Family::F1, 3, 2.5), (Family::F2, 2, 0.7), (Family::F3, -2, 1.8), (Family::F4, -1, 0.3)] {
            let b = Branch::new(fam, 1, n).unwrap();
            let pt = b.point(p).unwrap();
            let l = longitude_m1(&pt.big_m, &pt.y);
            assert!((pt.l - l).abs() <= 1e-9 * l.abs().max(1.0), "{fam}: {} vs {l}", pt.l);
            assert!((pt.log_abs_l - pt.l.abs().ln()).abs() < 1e-9);
        }
    }

    #[test]
    fn f0_l_matches_general_formula() {
        for (m, n, s) in [(2, 2, 3.0), (3, -2, 1.7), (1, 3, 5.0)] {
            let pt = Branch::new(Family::F0, m, n).unwrap().point(s).unwrap();
            let l = crate::longitude::longitude_eig(m, n, pt.big_m, pt.y).unwrap().l;
            assert!((pt.l - l).abs() <= 1e-8 * l.abs(), "({m},{n}) s={s}: {} vs {l}", pt.l);
        }
    }

    #[test]
    fn samples_are_representations() {
        for (fam, m, n, p) in [
            (Family::F0, 2, 2, 1.5),
            (Family::F0, 3, -2, 4.0),
            (Family::F1, 1, 2, 2.5),
            (Family::F2, 1, 3, 0.4),
            (Family::F3, 1, -1, 2.0),
            (Family::F4, 1, -2, 0.2),
        ] {
            let smp = family_sample(fam, m, n, p).unwrap();
            assert!(smp.relation_residual <= 1e-9, "{fam} ({m},{n}) {p}: {}", smp.relation_residual);
            assert!(smp.big_m > 1.0);
        }
    }

    #[test]
    fn domains() {
        assert!(matches!(family_sample(Family::F0, 2, 1, 2.0), Err(Error::Domain(_))));
        assert!(matches!(family_sample(Family::F0, 2, 2, 0.5), Err(Error::Domain(_))));
        assert!(matches!(family_sample(Family::F1, 2, 2, 3.0), Err(Error::Domain(_))));
        assert!(matches!(family_sample(Family::F1, 1, 2, 1.6), Err(Error::Domain(_))));
        assert!(matches!(family_sample(Family::F2, 1, 2, 0.1), Err(Error::Domain(_))));
        assert!(matches!(family_sample(Family::F3, 1, 2, 2.0), Err(Error::Domain(_))));
        assert!(matches!(family_sample(Family::F4, 1, -1, 0.6), Err(Error::Domain(_))));
        assert_eq!("F3".parse::<Family>().unwrap(), Family::F3);
        assert!("f5".parse::<Family>().is_err());
    }

    #[test]
    fn f0_near_one_and_far() {
        let b = Branch::new(Family::F0, 2, 2).unwrap();
        let r = b.sample(1.0 + 1e-4).unwrap().r;
        assert!(r > -0.5 && r < 0.0, "{r}");
        let r = b.sample(1e6).unwrap().r;
        assert!((r + 8.0).abs() <= 0.1, "{r}");
    }

    #[test]
    fn sign_constraints_from_the_lemmas() {
        let f1 = Branch::new(Family::F1, 1, 3).unwrap();
        let smp = f1.sample(f1.s0() + 1.0).unwrap();
        assert!(smp.l < -1.0);
        assert!(smp.y - 1.0 > smp.big_m.powi(2) && smp.big_m.powi(2) > 1.0);
        let (lo, hi) = Branch::new(Family::F2, 1, 2).unwrap().domain();
        let smp = family_sample(Family::F2, 1, 2, 0.5 * (lo + hi)).unwrap();
        assert!(smp.l > 1.0 && smp.big_m.powi(2) > smp.y - 1.0 && smp.y - 1.0 > 1.0);
        let smp = family_sample(Family::F3, 1, -2, 3.0).unwrap();
        assert!(smp.l > 0.0 && smp.l < 1.0 && smp.big_m.powi(2) > 3.0);
    }

    #[test]
    fn f3_limits() {
        let smp = family_sample(Family::F3, 1, -1, 1.0 + 1e-6).unwrap();
        let limit = 1.0 + (1.0 + 5f64.sqrt()) / 2.0;
        assert!((smp.big_m.powi(2) - limit).abs() < 1e-3);
        let smp = family_sample(Family::F3, 1, -2, 1e4).unwrap();
        assert!((1e16 * smp.l - 1.0).abs() < 0.1);
    }
}
