//! Representations certifying individual slopes `p/q`.

use rayon::prelude::*;

use num::integer::gcd;

use crate::error::{Error, Result};
use crate::knots::DoubleTwistKnot;
use crate::numeric::{bisect, Tol};
use crate::slopes::family::{Branch, Family, SlopeSample};
use crate::slopes::intervals::theorem_intervals;

/// Points scanned per family when looking for a sign change.
pub const WITNESS_GRID: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    /// A family sample with `M^p L^q = ±1` up to tolerance.
    Representation,
    /// `r = 0`: the surgered manifold has positive first Betti number.
    ZeroSlope,
    /// `r = -4` on a twist knot, known from the literature; no sample.
    Cited,
}

impl WitnessKind {
    pub fn as_str(self) -> &'static str {
        match self {
            WitnessKind::Representation => "representation",
            WitnessKind::ZeroSlope => "zero_slope",
            WitnessKind::Cited => "cited",
        }
    }
}

/// How the knot of the sample relates to the requested one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reduction {
    Direct,
    /// `J(2m, 2n) = J(2n, 2m)`.
    Swap,
    /// `J(2m, -2l)` and `J(2l, -2m)` are mirror images; slopes change sign.
    Mirror,
}

impl Reduction {
    pub fn as_str(self) -> &'static str {
        match self {
            Reduction::Direct => "direct",
            Reduction::Swap => "swap",
            Reduction::Mirror => "mirror",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub m: i64,
    pub n: i64,
    pub p: i64,
    pub q: i64,
    pub kind: WitnessKind,
    pub reduction: Reduction,
    /// Present for `Representation` witnesses.
    pub sample: Option<SlopeSample>,
    /// `|p' log M + q log|L||` with `p' = ±p` as given by the reduction.
    pub scalar_residual: Option<f64>,
}

#[derive(Debug, Clone, Copy)]
struct Route {
    family: Family,
    m: i64,
    n: i64,
    reduction: Reduction,
}

impl Route {
    fn new(family: Family, m: i64, n: i64, reduction: Reduction) -> Self {
        Route { family, m, n, reduction }
    }
}

/// Candidate families for slope `r` on `J(2m, 2n)`, most natural first.
fn routes(m: i64, n: i64, r: f64) -> Vec<Route> {
    use Family::*;
    use Reduction::*;
    let twist_positive = |k: i64, red: Reduction| -> Vec<Route> {
        // J(2, 2k), k >= 2
        if r < -4.0 {
            vec![Route::new(F1, 1, k, red)]
        } else {
            vec![Route::new(F2, 1, k, red), Route::new(F0, 1, k, red)]
        }
    };
    if n >= 2 && m >= 2 {
        let mut v = Vec::new();
        if r > -4.0 * m as f64 {
            v.push(Route::new(F0, m, n, Direct));
        }
        if r > -4.0 * n as f64 {
            v.push(Route::new(F0, n, m, Swap));
        }
        if n > m {
            v.reverse();
        }
        v
    } else if n >= 2 {
        twist_positive(n, Direct)
    } else if n == 1 {
        twist_positive(m, Swap)
    } else {
        let l = -n;
        match (m == 1, r < 0.0) {
            (true, true) => {
                let mut v = vec![Route::new(F4, 1, n, Direct)];
                if l >= 2 {
                    v.push(Route::new(F0, 1, n, Direct));
                }
                v
            }
            (true, false) => vec![Route::new(F3, 1, n, Direct)],
            (false, true) if l >= 2 => vec![Route::new(F0, m, n, Direct)],
            (false, true) => vec![Route::new(F3, 1, -m, Mirror)],
            (false, false) if l == 1 => {
                vec![Route::new(F4, 1, -m, Mirror), Route::new(F0, 1, -m, Mirror)]
            }
            (false, false) => vec![Route::new(F0, l, -m, Mirror)],
        }
    }
}

/// Finds a family sample with `-log|L| / log M = p/q` on `J(2m, 2n)`.
///
/// `tol.abs_eps` bounds both the scalar residual and the relation residual
/// of the returned sample.
pub fn find_witness(m: i64, n: i64, p: i64, q: i64, tol: &Tol) -> Result<Witness> {
    let knot = DoubleTwistKnot::new(m, n)?;
    if q < 1 {
        return Err(Error::Domain(format!("denominator must be positive, got {q}")));
    }
    if gcd(p.abs(), q) != 1 {
        return Err(Error::Domain(format!("{p}/{q} is not in lowest terms")));
    }
    if knot.is_trefoil() {
        return Err(Error::TrefoilExcluded);
    }
    if !theorem_intervals(m, n)?.contains_rational(p, q) {
        return Err(Error::SlopeNotCertified { m, n, p, q });
    }
    let bare = |kind, reduction| Witness { m, n, p, q, kind, reduction, sample: None, scalar_residual: None };
    if p == 0 {
        return Ok(bare(WitnessKind::ZeroSlope, Reduction::Direct));
    }
    if p == -4 && q == 1 && (m == 1 || n == 1) {
        let red = if m == 1 { Reduction::Direct } else { Reduction::Swap };
        return Ok(bare(WitnessKind::Cited, red));
    }
    let r = p as f64 / q as f64;
    let mut last_err = None;
    for route in routes(m, n, r) {
        let pp = if route.reduction == Reduction::Mirror { -p } else { p };
        match search(route, pp, q, tol) {
            Ok((sample, scalar)) => {
                return Ok(Witness {
                    m,
                    n,
                    p,
                    q,
                    kind: WitnessKind::Representation,
                    reduction: route.reduction,
                    sample: Some(sample),
                    scalar_residual: Some(scalar),
                })
            }
            Err(e) if e.is_internal() => return Err(e),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or(Error::SearchFailure { p, q, grid: "no applicable family".into() }))
}

fn search(route: Route, p: i64, q: i64, tol: &Tol) -> Result<(SlopeSample, f64)> {
    let branch = Branch::new(route.family, route.m, route.n)?;
    let g = |coord: f64| -> f64 {
        match branch.point(branch.param_of(coord)) {
            Ok(pt) => p as f64 * pt.log_m + q as f64 * pt.log_abs_l,
            Err(_) => f64::NAN,
        }
    };
    let coords = branch.default_coords(WITNESS_GRID);
    let values: Vec<f64> = coords.par_iter().map(|&c| g(c)).collect();
    let describe = |why: &str| {
        let (lo, hi) = (coords[0], coords[coords.len() - 1]);
        let (plo, phi) = (branch.param_of(lo), branch.param_of(hi));
        format!(
            "{} on J({},{}) with {} points over [{plo:e}, {phi:e}]: {why}",
            route.family,
            2 * route.m,
            2 * route.n,
            coords.len()
        )
    };
    let inner = Tol { abs_eps: tol.abs_eps, rel_eps: 0.0, max_iter: tol.max_iter.max(200) };
    let mut reason = "no sign change".to_string();
    for k in 0..coords.len().saturating_sub(1) {
        let (a, b) = (values[k], values[k + 1]);
        if !(a.is_finite() && b.is_finite()) || a * b > 0.0 {
            continue;
        }
        let c = if a == 0.0 {
            coords[k]
        } else if b == 0.0 {
            coords[k + 1]
        } else {
            match bisect(g, coords[k], coords[k + 1], &inner) {
                Ok(c) => c,
                Err(e) => {
                    reason = e.to_string();
                    continue;
                }
            }
        };
        let scalar = g(c).abs();
        let sample = branch.sample(branch.param_of(c))?;
        if scalar <= tol.abs_eps && sample.relation_residual <= tol.abs_eps {
            return Ok((sample, scalar));
        }
        reason = format!("best point has scalar residual {scalar:e}, relation residual {:e}", sample.relation_residual);
    }
    Err(Error::SearchFailure { p, q, grid: describe(&reason) })
}
