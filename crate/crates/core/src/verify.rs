//! Identity suite: the algebraic identities behind the slope computations,
//! checked over exact rationals at seeded random points.
//!
//! Each identity is a pure checker. Exact identities compare both sides in
//! [`Rat`]; the inequality identities also check the sign of the closed-form
//! difference at floating samples, and the trigonometric forms are compared
//! against the `s`-forms at `s = e^{2iθ}`.

use std::fmt;
use std::str::FromStr;

use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::chebyshev::cheb;
use crate::error::{Error, Result};
use crate::knots::{
    relation_residual_at, relation_residual_rel, twist_meridian_a, twist_relation_matrix, DoubleTwistKnot,
};
use crate::longitude::{longitude_m1, longitude_ratio, w12, w12_by_matrix};
use crate::mat2::{eval_word, Assignment, Generator, Mat2};
use crate::numeric::{powi, rat, rat_from_f64, Rat, Scalar, Tol};
use crate::riley::{
    build_rep_xz, gamma, gamma_x2, meridian_from_trace, solve_x, twist_params_from_s, y_from_x2z, y_from_xz,
};

/// Numerators and denominators of sample rationals are drawn from `1..=POOL`.
pub const POOL: i64 = 1_000_000;
/// Floating samples per parameter for the sign checks.
pub const SIGN_SAMPLES: usize = 100;
pub const DEFAULT_SEED: u64 = 20_240_601;

const MAX_RESAMPLE: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    /// `D^j = S_{j-1}(tr D) D - S_{j-2}(tr D) I`; free: `D` with det 1, `j ∈ [-8, 8]`.
    Eq0ChebMatrix,
    /// `BU - UC` of the twist normal form in terms of `γ_n`; free: `M, z`.
    PropBuuc,
    /// `tr A B⁻¹ = y(x, z)` with `A = (b⁻¹c)ⁿ b (b⁻¹c)⁻ⁿ`; free: `M, z`.
    LemmaTraceOdd,
    /// Closed form of `W₁₂` against the matrix entry; free: `M, y`.
    LemmaW12,
    /// `γ_n = 0` and `y - 1 = (s^{2n+1}+1)/(s^{2n}+s)` on the `s`-curve, `n >= 1`; free: `s`.
    LemmaB,
    /// The same for `n = -l`; free: `s`.
    LemmaBNeg,
    /// `x² - (v + 1/v + 2)` on the positive twist curve, `n >= 1`; free: `s`.
    Ineq5Diff,
    /// The angular form of the previous difference, `n >= 2`; free: `θ`.
    Ineq1Diff,
    /// The difference on the negative twist curve, `l >= 1`; free: `s`, `θ`.
    IneqDiff,
    /// Three polynomial forms of the `s₀` equation; free: `s`.
    S0Equiv,
    /// `φ_K ≈ 0` implies a small relation residual; free: `y > 2`.
    RileyIffResidual,
    /// `-W̃₁₂/W₁₂` against the `m = 1` closed form; free: `M, y`.
    LongitudeM1Consist,
    /// `-W̃₁₂/W₁₂` against the rational form in `s`, `y = s + 1/s`; free: `M, s`.
    LongitudeLsConsist,
}

impl IdentityId {
    pub const ALL: [IdentityId; 13] = [
        IdentityId::Eq0ChebMatrix,
        IdentityId::PropBuuc,
        IdentityId::LemmaTraceOdd,
        IdentityId::LemmaW12,
        IdentityId::LemmaB,
        IdentityId::LemmaBNeg,
        IdentityId::Ineq5Diff,
        IdentityId::Ineq1Diff,
        IdentityId::IneqDiff,
        IdentityId::S0Equiv,
        IdentityId::RileyIffResidual,
        IdentityId::LongitudeM1Consist,
        IdentityId::LongitudeLsConsist,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::Eq0ChebMatrix => "EQ0_CHEB_MATRIX",
            IdentityId::PropBuuc => "PROP_BUUC",
            IdentityId::LemmaTraceOdd => "LEMMA_TRACE_ODD",
            IdentityId::LemmaW12 => "LEMMA_W12",
            IdentityId::LemmaB => "LEMMA_B",
            IdentityId::LemmaBNeg => "LEMMA_B_NEG",
            IdentityId::Ineq5Diff => "INEQ5_DIFF",
            IdentityId::Ineq1Diff => "INEQ1_DIFF",
            IdentityId::IneqDiff => "INEQ_DIFF",
            IdentityId::S0Equiv => "S0_EQUIV",
            IdentityId::RileyIffResidual => "RILEY_IFF_RESIDUAL",
            IdentityId::LongitudeM1Consist => "LONGITUDE_M1_CONSIST",
            IdentityId::LongitudeLsConsist => "LONGITUDE_LS_CONSIST",
        }
    }

    fn index(self) -> u64 {
        IdentityId::ALL.iter().position(|&i| i == self).unwrap_or(0) as u64
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .iter()
            .copied()
            .find(|i| i.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Domain(format!("unknown identity id {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Sampling {
    /// Seeded uniform draws from the rational pool.
    #[default]
    Random,
    /// Deterministic distinct rationals; use with enough trials to exceed
    /// the degree of the identity.
    Grid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Exact sample points per parameter value.
    pub trials: usize,
    pub seed: u64,
    /// Inclusive `m` range.
    pub m_range: (i64, i64),
    /// Inclusive `n` range; 0 is skipped.
    pub n_range: (i64, i64),
    pub sampling: Sampling,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { trials: 20, seed: DEFAULT_SEED, m_range: (1, 4), n_range: (-4, 4), sampling: Sampling::Random }
    }
}

impl VerifyConfig {
    fn validate(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::Domain("trials must be at least 1".into()));
        }
        let (mlo, mhi) = self.m_range;
        let (nlo, nhi) = self.n_range;
        if mlo < 1 || mlo > mhi || mhi > 12 {
            return Err(Error::Domain(format!("m range [{mlo}, {mhi}] must lie in [1, 12]")));
        }
        if nlo > nhi || nlo < -12 || nhi > 12 {
            return Err(Error::Domain(format!("n range [{nlo}, {nhi}] must lie in [-12, 12]")));
        }
        Ok(())
    }

    fn ms(&self) -> Vec<i64> {
        (self.m_range.0..=self.m_range.1).collect()
    }

    fn ns(&self) -> Vec<i64> {
        (self.n_range.0..=self.n_range.1).filter(|&n| n != 0).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub seed: u64,
    pub trials: usize,
    /// Individual comparisons made, exact and floating.
    pub checks: usize,
    pub passed: bool,
    pub failures: Vec<Error>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub seed: u64,
    pub passed: bool,
    pub reports: Vec<IdentityReport>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Param {
    None,
    M(i64),
    N(i64),
    Knot(i64, i64),
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::None => Ok(()),
            Param::M(m) => write!(f, "m={m}, "),
            Param::N(n) => write!(f, "n={n}, "),
            Param::Knot(m, n) => write!(f, "m={m}, n={n}, "),
        }
    }
}

struct Sampler {
    rng: ChaCha8Rng,
    sampling: Sampling,
    point: i64,
    draw: i64,
}

impl Sampler {
    fn new(cfg: &VerifyConfig, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(stream);
        Sampler { rng, sampling: cfg.sampling, point: 0, draw: 0 }
    }

    fn next_point(&mut self) {
        self.point += 1;
        self.draw = 0;
    }

    /// A positive rational, never 1 in grid mode.
    fn pos(&mut self) -> Rat {
        self.draw += 1;
        match self.sampling {
            Sampling::Random => rat(self.rng.gen_range(1..=POOL), self.rng.gen_range(1..=POOL)),
            Sampling::Grid => {
                let (k, j) = (self.point, self.draw);
                rat(2 + k * (2 * j + 1), 1 + k + j)
            }
        }
    }

    fn coin(&mut self) -> bool {
        match self.sampling {
            Sampling::Random => self.rng.gen(),
            Sampling::Grid => (self.point + self.draw) % 2 == 1,
        }
    }

    fn signed(&mut self) -> Rat {
        let v = self.pos();
        if self.coin() {
            -v
        } else {
            v
        }
    }

    fn int(&mut self, lo: i64, hi: i64) -> i64 {
        match self.sampling {
            Sampling::Random => self.rng.gen_range(lo..=hi),
            Sampling::Grid => lo + (self.point + self.draw).rem_euclid(hi - lo + 1),
        }
    }

    /// Strictly inside `(lo, hi)`.
    fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        loop {
            let t: f64 = self.rng.gen();
            let v = lo + t * (hi - lo);
            if v > lo && v < hi {
                return v;
            }
        }
    }
}

fn excluded(what: &str) -> Error {
    Error::ExcludedPoint(what.into())
}

fn nonzero(v: &Rat, what: &str) -> Result<()> {
    if Scalar::is_zero(v) {
        Err(excluded(what))
    } else {
        Ok(())
    }
}

fn not_unit(s: &Rat) -> Result<()> {
    if Scalar::is_zero(&(s.clone() - Rat::one())) || Scalar::is_zero(&(s.clone() + Rat::one())) {
        Err(excluded("s = ±1"))
    } else {
        Ok(())
    }
}

/// Exact-check context: identity, parameter and the free variables drawn so far.
struct Ctx {
    id: IdentityId,
    param: Param,
    vars: Vec<(&'static str, String)>,
}

impl Ctx {
    fn new(id: IdentityId, param: Param) -> Self {
        Ctx { id, param, vars: Vec::new() }
    }

    fn var<T: fmt::Display>(&mut self, name: &'static str, v: &T) {
        self.vars.push((name, v.to_string()));
    }

    fn point(&self) -> String {
        let vars: Vec<String> = self.vars.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{}{}", self.param, vars.join(", "))
    }

    fn mismatch(&self, what: &str) -> Error {
        Error::ExactMismatch { id: self.id.name().into(), point: format!("{} ({what})", self.point()) }
    }

    fn eq<T: PartialEq>(&self, lhs: &T, rhs: &T, what: &str) -> Result<()> {
        if lhs == rhs {
            Ok(())
        } else {
            Err(self.mismatch(what))
        }
    }
}

fn one() -> Rat {
    Rat::one()
}

fn two() -> Rat {
    rat(2, 1)
}

fn pow_by_multiplication(d: &Mat2<Rat>, j: i64) -> Mat2<Rat> {
    let base = if j < 0 { d.adjugate() } else { d.clone() };
    (0..j.unsigned_abs()).fold(Mat2::identity(), |acc, _| &acc * &base)
}

fn check_eq0(smp: &mut Sampler, ctx: &mut Ctx) -> Result<()> {
    let a = smp.signed();
    let b = smp.signed();
    let c = smp.signed();
    let d = (one() + b.clone() * c.clone()) / a.clone();
    let j = smp.int(-8, 8);
    let dm = Mat2::new(a, b, c, d);
    ctx.var("D", &format!("{dm:?}"));
    ctx.var("j", &j);
    let t = dm.trace();
    let formula = &dm.scale(&cheb(j - 1, &t)) - &Mat2::identity().scale(&cheb(j - 2, &t));
    ctx.eq(&formula, &pow_by_multiplication(&dm, j), "D^j")
}

fn check_buuc(smp: &mut Sampler, ctx: &mut Ctx, n: i64) -> Result<()> {
    let big_m = smp.signed();
    let z = smp.signed();
    ctx.var("M", &big_m);
    ctx.var("z", &z);
    let x = big_m.clone() + one() / big_m.clone();
    let (b, c) = build_rep_xz(big_m.clone(), z.clone());
    let lhs = twist_relation_matrix(n, &b, &c)?;
    let g = gamma(n, &x, &z);
    let rhs =
        Mat2::new((two() - z.clone()) * g.clone(), g.clone() / big_m.clone(), (z - two()) * big_m * g, Rat::zero());
    ctx.eq(&lhs, &rhs, "BU - UC")
}

fn twist_assignment<T: Scalar>(b: Mat2<T>, c: Mat2<T>) -> Assignment<T> {
    let mut asg = Assignment::new();
    asg.insert(Generator::B, b);
    asg.insert(Generator::C, c);
    asg
}

fn check_trace_odd(smp: &mut Sampler, ctx: &mut Ctx, n: i64) -> Result<()> {
    let big_m = smp.signed();
    let z = smp.signed();
    ctx.var("M", &big_m);
    ctx.var("z", &z);
    let x = big_m.clone() + one() / big_m.clone();
    let (b, c) = build_rep_xz(big_m, z.clone());
    let a = eval_word(&twist_meridian_a(n), &twist_assignment(b.clone(), c))?;
    let lhs = (&a * &b.adjugate()).trace();
    ctx.eq(&lhs, &y_from_xz(n, &x, &z), "tr A B^-1")
}

/// At a real twist-knot representation the meridian `a` given by the word
/// and `b` satisfy the two-generator relation of `J(2, 2n)`.
fn meridian_chain_checks(smp: &mut Sampler, n: i64) -> (usize, Vec<Error>) {
    let Ok(knot) = DoubleTwistKnot::new(1, n) else {
        return (0, vec![Error::Domain(format!("n={n}"))]);
    };
    let mut failures = Vec::new();
    let samples = 10;
    for _ in 0..samples {
        let s = smp.uniform(3.0, 4.0);
        let outcome = (|| -> Result<f64> {
            let t = twist_params_from_s(n, s)?;
            // exact arithmetic at the rational values of the float root
            let (b, c) = build_rep_xz(rat_from_f64(t.big_m)?, rat_from_f64(t.z)?);
            let a = eval_word(&twist_meridian_a(n), &twist_assignment(b.clone(), c))?;
            Ok(relation_residual_rel(&knot, &a, &b)?.rel)
        })();
        match outcome {
            Ok(rel) if rel <= 1e-9 => {}
            Ok(rel) => failures.push(float_failure(
                IdentityId::LemmaTraceOdd,
                Param::N(n),
                &format!("s={s}"),
                &format!("meridian relation residual {rel:e}"),
            )),
            Err(e) => failures.push(e),
        }
    }
    (samples, failures)
}

fn check_w12(smp: &mut Sampler, ctx: &mut Ctx, m: i64) -> Result<()> {
    let big_m = smp.signed();
    let y = smp.signed();
    ctx.var("M", &big_m);
    ctx.var("y", &y);
    ctx.eq(&w12(m, &big_m, &y), &w12_by_matrix(m, &big_m, &y)?, "W12")
}

fn draw_s(smp: &mut Sampler, ctx: &mut Ctx) -> Result<Rat> {
    let s = smp.signed();
    ctx.var("s", &s);
    not_unit(&s)?;
    Ok(s)
}

/// `x²` on the positive twist curve.
fn x2_positive(n: i64, s: &Rat) -> Result<Rat> {
    let p = |k: i64| powi(s, k);
    let z = s.clone() + one() / s.clone();
    let den = (p(2 * n) - one()) * (p(2 * n - 1) + one());
    nonzero(&den, "x² denominator")?;
    Ok((two() + z) * (p(4 * n - 1) - one()) / den)
}

/// `x²` on the negative twist curve, `n = -l`.
fn x2_negative(l: i64, s: &Rat) -> Result<Rat> {
    let p = |k: i64| powi(s, k);
    let z = s.clone() + one() / s.clone();
    let den = (p(2 * l + 1) + one()) * (p(2 * l) - one());
    nonzero(&den, "x² denominator")?;
    Ok((two() + z) * (p(4 * l + 1) - one()) / den)
}

fn v_positive(n: i64, s: &Rat) -> Result<Rat> {
    let den = powi(s, 2 * n) + s.clone();
    nonzero(&den, "s^{2n} + s")?;
    Ok((powi(s, 2 * n + 1) + one()) / den)
}

fn v_negative(l: i64, s: &Rat) -> Result<Rat> {
    let den = powi(s, 2 * l + 1) + one();
    nonzero(&den, "s^{2l+1} + 1")?;
    Ok((powi(s, 2 * l) + s.clone()) / den)
}

fn check_lemma_b(smp: &mut Sampler, ctx: &mut Ctx, n: i64) -> Result<()> {
    let s = draw_s(smp, ctx)?;
    let z = s.clone() + one() / s.clone();
    let x2 = x2_positive(n, &s)?;
    ctx.eq(&gamma_x2(n, &x2, &z), &Rat::zero(), "γ_n")?;
    ctx.eq(&(y_from_x2z(n, &x2, &z) - one()), &v_positive(n, &s)?, "y - 1")
}

fn check_lemma_b_neg(smp: &mut Sampler, ctx: &mut Ctx, l: i64) -> Result<()> {
    let s = draw_s(smp, ctx)?;
    let z = s.clone() + one() / s.clone();
    let x2 = x2_negative(l, &s)?;
    ctx.eq(&gamma_x2(-l, &x2, &z), &Rat::zero(), "γ_{-l}")?;
    ctx.eq(&(y_from_x2z(-l, &x2, &z) - one()), &v_negative(l, &s)?, "y - 1")
}

fn v_sum(v: &Rat) -> Result<Rat> {
    nonzero(v, "v")?;
    Ok(v.clone() + one() / v.clone() + two())
}

/// `-(s+1)²(s^{2n} - s^{2n-1}) / ((s^{2n+1}+1)(s^{2n}-1))`.
pub fn ineq5_closed<T: Scalar>(n: i64, s: &T) -> T {
    let p = |k: i64| powi(s, k);
    -(s.clone() + T::one()).square() * (p(2 * n) - p(2 * n - 1)) / ((p(2 * n + 1) + T::one()) * (p(2 * n) - T::one()))
}

/// `(s+1)²(s-1) s^{2l-2} / ((s^{2l}-1)(s^{2l-1}+1))`.
pub fn ineq_neg_closed<T: Scalar>(l: i64, s: &T) -> T {
    let p = |k: i64| powi(s, k);
    (s.clone() + T::one()).square() * (s.clone() - T::one()) * p(2 * l - 2)
        / ((p(2 * l) - T::one()) * (p(2 * l - 1) + T::one()))
}

fn check_ineq_positive(smp: &mut Sampler, ctx: &mut Ctx, n: i64) -> Result<()> {
    let s = draw_s(smp, ctx)?;
    let den = powi(&s, 2 * n + 1) + one();
    nonzero(&den, "s^{2n+1} + 1")?;
    let diff = x2_positive(n, &s)? - v_sum(&v_positive(n, &s)?)?;
    ctx.eq(&diff, &ineq5_closed(n, &s), "LHS - RHS")
}

fn check_ineq_negative(smp: &mut Sampler, ctx: &mut Ctx, l: i64) -> Result<()> {
    let s = draw_s(smp, ctx)?;
    let den = powi(&s, 2 * l - 1) + one();
    nonzero(&den, "s^{2l-1} + 1")?;
    let diff = x2_negative(l, &s)? - v_sum(&v_negative(l, &s)?)?;
    ctx.eq(&diff, &ineq_neg_closed(l, &s), "LHS - RHS")
}

fn check_s0(smp: &mut Sampler, ctx: &mut Ctx, n: i64) -> Result<()> {
    let s = draw_s(smp, ctx)?;
    let p = |k: i64| powi(&s, k);
    let q = (p(2 * n - 1) - p(-2 * n)) * (s.clone() - one()) - rat(4, 1);
    let big_p = (two() + s.clone() + one() / s.clone()) * (p(4 * n - 1) - one())
        - rat(4, 1) * (p(2 * n) - one()) * (p(2 * n - 1) + one());
    ctx.eq(&big_p, &(p(2 * n - 1) * (s.clone() - one()) * q.clone()), "x² numerator form")?;
    let r = (p(2 * n) - one()).square() - s.clone() * (p(2 * n - 1) + one()).square();
    ctx.eq(&r, &(p(2 * n) * q.clone()), "squared form")?;
    let t = (p(4 * n - 1) - one()) * (s.clone() - one()) - rat(4, 1) * p(2 * n);
    ctx.eq(&t, &(p(2 * n) * q), "cleared form")
}

fn check_longitude_m1(smp: &mut Sampler, ctx: &mut Ctx) -> Result<()> {
    let big_m = smp.signed();
    let y = smp.signed();
    ctx.var("M", &big_m);
    ctx.var("y", &y);
    nonzero(&w12(1, &big_m, &y), "W12")?;
    nonzero(&(y.clone() - one() - big_m.square()), "y - 1 - M²")?;
    ctx.eq(&longitude_ratio(1, &big_m, &y), &longitude_m1(&big_m, &y), "L")
}

/// `(M² - s - s^{2m} + M² s^{2m+1}) / (-1 + M² s + M² s^{2m} - s^{2m+1})`.
pub fn longitude_s_form<T: Scalar>(m: i64, big_m: &T, s: &T) -> T {
    let u = big_m.square();
    let p = |k: i64| powi(s, k);
    (u.clone() - s.clone() - p(2 * m) + u.clone() * p(2 * m + 1))
        / (-T::one() + u.clone() * s.clone() + u * p(2 * m) - p(2 * m + 1))
}

fn check_longitude_ls(smp: &mut Sampler, ctx: &mut Ctx, m: i64) -> Result<()> {
    let big_m = smp.signed();
    ctx.var("M", &big_m);
    let s = draw_s(smp, ctx)?;
    let y = s.clone() + one() / s.clone();
    nonzero(&w12(m, &big_m, &y), "W12")?;
    let u = big_m.square();
    let den = -one() + u.clone() * s.clone() + u * powi(&s, 2 * m) - powi(&s, 2 * m + 1);
    nonzero(&den, "L_s denominator")?;
    ctx.eq(&longitude_ratio(m, &big_m, &y), &longitude_s_form(m, &big_m, &s), "L")
}

fn float_failure(id: IdentityId, param: Param, at: &str, what: &str) -> Error {
    Error::ExactMismatch { id: id.name().into(), point: format!("{param}{at} ({what})") }
}

fn trig_positive(n: i64, th: f64) -> (f64, f64, f64) {
    let nf = n as f64;
    let c2 = th.cos().powi(2);
    let lhs = 4.0 * c2 * ((4.0 * nf - 1.0) * th).sin() / (2.0 * ((2.0 * nf - 1.0) * th).cos() * (2.0 * nf * th).sin());
    let ratio = ((2.0 * nf + 1.0) * th).cos() / ((2.0 * nf - 1.0) * th).cos();
    let rhs = ratio + 1.0 / ratio + 2.0;
    let closed = -2.0 * c2 * th.sin() / ((2.0 * nf * th).sin() * ((2.0 * nf + 1.0) * th).cos());
    (lhs, rhs, closed)
}

fn trig_negative(l: i64, th: f64) -> (f64, f64, f64) {
    let lf = l as f64;
    let c2 = th.cos().powi(2);
    let lhs = 4.0 * c2 * ((4.0 * lf + 1.0) * th).sin() / (2.0 * ((2.0 * lf + 1.0) * th).cos() * (2.0 * lf * th).sin());
    let ratio = ((2.0 * lf - 1.0) * th).cos() / ((2.0 * lf + 1.0) * th).cos();
    let rhs = ratio + 1.0 / ratio + 2.0;
    let closed = 2.0 * c2 * th.sin() / ((2.0 * lf * th).sin() * ((2.0 * lf - 1.0) * th).cos());
    (lhs, rhs, closed)
}

fn complex_s_form(id: IdentityId, k: i64, th: f64) -> Complex64 {
    let s = Complex64::from_polar(1.0, 2.0 * th);
    let p = |e: i64| s.powi(e as i32);
    let one = Complex64::new(1.0, 0.0);
    match id {
        IdentityId::Ineq1Diff => {
            -(s + one).powi(2) * (p(2 * k) - p(2 * k - 1)) / ((p(2 * k + 1) + one) * (p(2 * k) - one))
        }
        _ => (s + one).powi(2) * (s - one) * p(2 * k - 2) / ((p(2 * k) - one) * (p(2 * k - 1) + one)),
    }
}

/// Sign and consistency checks at `SIGN_SAMPLES` floating points.
fn sign_checks(smp: &mut Sampler, id: IdentityId, k: i64) -> (usize, Vec<Error>) {
    let param = if id == IdentityId::IneqDiff { Param::N(-k) } else { Param::N(k) };
    let mut failures = Vec::new();
    let mut checks = 0;
    for _ in 0..SIGN_SAMPLES {
        if id == IdentityId::Ineq5Diff {
            // s - 1 log-uniform so that both ends of (1, 10³) are covered
            let s = 1.0 + 10f64.powf(smp.uniform(-3.0, 999f64.log10()));
            let d = ineq5_closed(k, &s);
            checks += 1;
            if !(d < 0.0) {
                failures.push(float_failure(id, param, &format!("s={s}"), &format!("difference {d} is not negative")));
            }
            continue;
        }
        let (lo, hi, trig) = if id == IdentityId::Ineq1Diff {
            (
                std::f64::consts::PI / (2 * (2 * k - 1)) as f64,
                std::f64::consts::PI / (2 * k) as f64,
                trig_positive as fn(i64, f64) -> (f64, f64, f64),
            )
        } else {
            (0.0, std::f64::consts::PI / (2 * (2 * k + 1)) as f64, trig_negative as fn(i64, f64) -> (f64, f64, f64))
        };
        let th = smp.uniform(lo, hi);
        let (lhs, rhs, closed) = trig(k, th);
        let at = format!("θ={th}");
        let scale = 1f64.max(lhs.abs()).max(rhs.abs());
        checks += 3;
        if !(closed > 0.0) {
            failures.push(float_failure(id, param, &at, &format!("difference {closed} is not positive")));
        }
        if !((lhs - rhs - closed).abs() <= 1e-8 * scale) {
            failures.push(float_failure(
                id,
                param,
                &at,
                &format!("LHS - RHS = {} but closed form {closed}", lhs - rhs),
            ));
        }
        let c = complex_s_form(id, k, th);
        if !((c.re - closed).abs() <= 1e-8 * scale.max(closed.abs()) && c.im.abs() <= 1e-8 * scale.max(closed.abs())) {
            failures.push(float_failure(id, param, &at, &format!("s-form at e^(2iθ) is {c}, angular form {closed}")));
        }
    }
    (checks, failures)
}

/// Residual bound at roots of `φ_K`, and a lower bound at perturbed points.
fn riley_checks(smp: &mut Sampler, m: i64, n: i64, trials: usize) -> (usize, Vec<Error>) {
    let id = IdentityId::RileyIffResidual;
    let param = Param::Knot(m, n);
    let Ok(knot) = DoubleTwistKnot::new(m, n) else {
        return (0, vec![Error::Domain(format!("m={m}, n={n}"))]);
    };
    let tol = Tol::default();
    let mut failures = Vec::new();
    let mut checks = 0;
    for _ in 0..trials {
        let y = smp.uniform(2.05, 10.0);
        let at = format!("y={y}");
        let outcome = (|| -> Result<Vec<String>> {
            let rep = solve_x(m, n, y, &tol)?;
            let mut bad = Vec::new();
            if rep.phi_residual <= 1e-12 {
                let res = relation_residual_at(&knot, rep.big_m, y)?;
                if !(res.rel <= 1e-9) {
                    bad.push(format!("|φ| = {:e} but relation residual {:e}", rep.phi_residual, res.rel));
                }
            } else {
                bad.push(format!("solver left |φ| = {:e}", rep.phi_residual));
            }
            let off = relation_residual_at(&knot, meridian_from_trace(rep.x + 0.1), y)?;
            if !(off.rel > 1e-4) {
                bad.push(format!("perturbed residual {:e} is not above 1e-4", off.rel));
            }
            Ok(bad)
        })();
        checks += 2;
        match outcome {
            Ok(bad) => failures.extend(bad.iter().map(|w| float_failure(id, param, &at, w))),
            Err(e) => failures.push(e),
        }
    }
    (checks, failures)
}

fn params(id: IdentityId, cfg: &VerifyConfig) -> Vec<Param> {
    let ns = cfg.ns();
    let pos: Vec<Param> = ns.iter().filter(|&&n| n >= 1).map(|&n| Param::N(n)).collect();
    let neg: Vec<Param> = ns.iter().filter(|&&n| n <= -1).map(|&n| Param::N(n)).collect();
    match id {
        IdentityId::Eq0ChebMatrix | IdentityId::LongitudeM1Consist => vec![Param::None],
        IdentityId::PropBuuc | IdentityId::LemmaTraceOdd => ns.iter().map(|&n| Param::N(n)).collect(),
        IdentityId::LemmaW12 | IdentityId::LongitudeLsConsist => cfg.ms().into_iter().map(Param::M).collect(),
        IdentityId::LemmaB | IdentityId::Ineq5Diff | IdentityId::S0Equiv => pos,
        IdentityId::Ineq1Diff => ns.iter().filter(|&&n| n >= 2).map(|&n| Param::N(n)).collect(),
        IdentityId::LemmaBNeg | IdentityId::IneqDiff => neg,
        IdentityId::RileyIffResidual => cfg
            .ms()
            .into_iter()
            .flat_map(|m| ns.iter().filter(|n| n.abs() >= 2).map(move |&n| Param::Knot(m, n)))
            .collect(),
    }
}

/// One exact comparison at a fresh point. `Err(ExcludedPoint)` asks for a resample.
fn exact_check(id: IdentityId, param: Param, smp: &mut Sampler, ctx: &mut Ctx) -> Result<()> {
    match (id, param) {
        (IdentityId::Eq0ChebMatrix, _) => check_eq0(smp, ctx),
        (IdentityId::LongitudeM1Consist, _) => check_longitude_m1(smp, ctx),
        (IdentityId::PropBuuc, Param::N(n)) => check_buuc(smp, ctx, n),
        (IdentityId::LemmaTraceOdd, Param::N(n)) => check_trace_odd(smp, ctx, n),
        (IdentityId::LemmaW12, Param::M(m)) => check_w12(smp, ctx, m),
        (IdentityId::LongitudeLsConsist, Param::M(m)) => check_longitude_ls(smp, ctx, m),
        (IdentityId::LemmaB, Param::N(n)) => check_lemma_b(smp, ctx, n),
        (IdentityId::LemmaBNeg, Param::N(n)) => check_lemma_b_neg(smp, ctx, -n),
        (IdentityId::Ineq5Diff | IdentityId::Ineq1Diff, Param::N(n)) => check_ineq_positive(smp, ctx, n),
        (IdentityId::IneqDiff, Param::N(n)) => check_ineq_negative(smp, ctx, -n),
        (IdentityId::S0Equiv, Param::N(n)) => check_s0(smp, ctx, n),
        _ => Err(Error::Domain(format!("{id} has no exact check for {param:?}"))),
    }
}

fn run_param(id: IdentityId, param: Param, cfg: &VerifyConfig, stream: u64) -> (usize, Vec<Error>) {
    let mut smp = Sampler::new(cfg, stream);
    if let Param::Knot(m, n) = param {
        return riley_checks(&mut smp, m, n, cfg.trials);
    }
    let mut checks = 0;
    let mut failures = Vec::new();
    for _ in 0..cfg.trials {
        let mut attempts = 0;
        loop {
            smp.next_point();
            let mut ctx = Ctx::new(id, param);
            match exact_check(id, param, &mut smp, &mut ctx) {
                Err(Error::ExcludedPoint(why)) => {
                    attempts += 1;
                    if attempts >= MAX_RESAMPLE {
                        failures.push(Error::ExcludedPoint(format!("{id}: {why} after {attempts} draws")));
                        break;
                    }
                }
                Ok(()) => {
                    checks += 1;
                    break;
                }
                Err(e) => {
                    checks += 1;
                    failures.push(e);
                    break;
                }
            }
        }
    }
    let extra = match (id, param) {
        (IdentityId::Ineq5Diff | IdentityId::Ineq1Diff, Param::N(n)) => sign_checks(&mut smp, id, n),
        (IdentityId::IneqDiff, Param::N(n)) => sign_checks(&mut smp, id, -n),
        (IdentityId::LemmaTraceOdd, Param::N(n)) => meridian_chain_checks(&mut smp, n),
        _ => (0, Vec::new()),
    };
    failures.extend(extra.1);
    (checks + extra.0, failures)
}

/// Runs one identity over the parameter ranges of `cfg`.
pub fn run_identity(id: IdentityId, cfg: &VerifyConfig) -> Result<IdentityReport> {
    cfg.validate()?;
    let ps = params(id, cfg);
    let results: Vec<(usize, Vec<Error>)> =
        ps.par_iter().enumerate().map(|(k, &p)| run_param(id, p, cfg, id.index() * 1024 + k as u64)).collect();
    let checks = results.iter().map(|r| r.0).sum();
    let failures: Vec<Error> = results.into_iter().flat_map(|r| r.1).collect();
    Ok(IdentityReport { id, seed: cfg.seed, trials: cfg.trials, checks, passed: failures.is_empty(), failures })
}

/// Runs every identity.
pub fn run_all(cfg: &VerifyConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let reports = IdentityId::ALL.par_iter().map(|&id| run_identity(id, cfg)).collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport { seed: cfg.seed, passed: reports.iter().all(|r| r.passed), reports })
}
