//! Family samples over a parameter grid.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::slopes::family::{Branch, Family, SlopeSample};

/// Sweep grid: `points` values of the parameter. Without a range the
/// family's default grid is used; with a range `(lo, hi)` the points are
/// log-spaced in `param - origin` for `s` families and uniform strictly
/// inside `(lo, hi)` for `θ` families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub points: usize,
    pub range: Option<(f64, f64)>,
}

impl GridSpec {
    pub fn new(points: usize) -> Self {
        GridSpec { points, range: None }
    }

    pub fn with_range(points: usize, lo: f64, hi: f64) -> Self {
        GridSpec { points, range: Some((lo, hi)) }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub samples: Vec<SlopeSample>,
    /// Parameters at which no sample could be produced.
    pub errors: Vec<(f64, Error)>,
}

/// The parameter values of a sweep.
pub fn grid_params(branch: &Branch, grid: &GridSpec) -> Result<Vec<f64>> {
    if grid.points == 0 {
        return Err(Error::Domain("a sweep needs at least one point".into()));
    }
    let Some((lo, hi)) = grid.range else {
        return Ok(branch.default_coords(grid.points).into_iter().map(|c| branch.param_of(c)).collect());
    };
    let (dlo, dhi) = branch.domain();
    if !(lo < hi) || lo < dlo || hi > dhi || (lo == dlo && !branch.family.is_angular()) {
        return Err(Error::Domain(format!(
            "{} range [{lo}, {hi}] is not inside the domain ({dlo}, {dhi})",
            branch.family
        )));
    }
    if branch.family.is_angular() {
        Ok(crate::numeric::open_uniform_grid(lo, hi, grid.points))
    } else {
        Ok(crate::numeric::log_offset_grid(dlo, lo - dlo, hi - dlo, grid.points))
    }
}

/// Samples `family` on `J(2m, 2n)` in grid order. Per-point failures are
/// collected in `errors`; the call itself fails only on invalid input.
pub fn sweep(family: Family, m: i64, n: i64, grid: &GridSpec) -> Result<SweepResult> {
    let branch = Branch::new(family, m, n)?;
    let params = grid_params(&branch, grid)?;
    let outcomes: Vec<(f64, Result<SlopeSample>)> = params.par_iter().map(|&p| (p, branch.sample(p))).collect();
    let mut samples = Vec::with_capacity(outcomes.len());
    let mut errors = Vec::new();
    for (p, o) in outcomes {
        match o {
            Ok(s) => samples.push(s),
            Err(e) => errors.push((p, e)),
        }
    }
    Ok(SweepResult { samples, errors })
}
