//! Slope intervals and their assembly for `J(2m, 2n)`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::slopes::solvers::omega;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    /// May be `-inf`.
    pub lo: f64,
    pub hi: f64,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl Interval {
    pub fn open(lo: f64, hi: f64) -> Self {
        Interval { lo, hi, lo_open: true, hi_open: true }
    }

    pub fn closed(lo: f64, hi: f64) -> Self {
        Interval { lo, hi, lo_open: false, hi_open: false }
    }

    /// `(lo, hi]`.
    pub fn open_closed(lo: f64, hi: f64) -> Self {
        Interval { lo, hi, lo_open: true, hi_open: false }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && (self.lo_open || self.hi_open))
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_open { x > self.lo } else { x >= self.lo };
        let below = if self.hi_open { x < self.hi } else { x <= self.hi };
        above && below
    }

    /// Membership of `p/q`, exact against integer endpoints.
    pub fn contains_rational(&self, p: i64, q: i64) -> bool {
        let ok = |c: Ordering, open: bool| c == Ordering::Greater || (!open && c == Ordering::Equal);
        ok(cmp_rational(p, q, self.lo), self.lo_open) && ok(cmp_rational(p, q, self.hi).reverse(), self.hi_open)
    }

    pub fn negate(&self) -> Self {
        Interval { lo: -self.hi, hi: -self.lo, lo_open: self.hi_open, hi_open: self.lo_open }
    }
}

/// Compares `p/q` (`q > 0`) with `x`.
fn cmp_rational(p: i64, q: i64, x: f64) -> Ordering {
    if x == f64::INFINITY {
        return Ordering::Less;
    }
    if x == f64::NEG_INFINITY {
        return Ordering::Greater;
    }
    if x.fract() == 0.0 && x.abs() < 1e15 {
        (p as i128).cmp(&(x as i128 * q as i128))
    } else {
        (p as f64 / q as f64).partial_cmp(&x).unwrap_or(Ordering::Equal)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_open { '(' } else { '[' },
            self.lo,
            self.hi,
            if self.hi_open { ')' } else { ']' }
        )
    }
}

/// Sorted, pairwise disjoint, non-empty intervals.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    pub fn new(parts: Vec<Interval>) -> Self {
        let mut v: Vec<Interval> = parts.into_iter().filter(|i| !i.is_empty()).collect();
        // closed left ends first among equal `lo`
        v.sort_by(|a, b| a.lo.partial_cmp(&b.lo).unwrap_or(Ordering::Equal).then(a.lo_open.cmp(&b.lo_open)));
        let mut out: Vec<Interval> = Vec::with_capacity(v.len());
        for iv in v {
            if let Some(last) = out.last_mut() {
                let touches = iv.lo < last.hi || (iv.lo == last.hi && !(iv.lo_open && last.hi_open));
                if touches {
                    if iv.hi > last.hi || (iv.hi == last.hi && !iv.hi_open) {
                        last.hi = iv.hi;
                        last.hi_open = iv.hi_open;
                    }
                    continue;
                }
            }
            out.push(iv);
        }
        IntervalSet { intervals: out }
    }

    pub fn empty() -> Self {
        IntervalSet::default()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.intervals.iter().any(|i| i.contains(x))
    }

    pub fn contains_rational(&self, p: i64, q: i64) -> bool {
        self.intervals.iter().any(|i| i.contains_rational(p, q))
    }

    pub fn negate(&self) -> Self {
        IntervalSet::new(self.intervals.iter().map(Interval::negate).collect())
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("∅");
        }
        for (k, iv) in self.intervals.iter().enumerate() {
            if k > 0 {
                f.write_str(" ∪ ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct IntervalOptions {
    /// For `n = -1`, `m >= 2`, close the interval at 4.
    pub closed_four_for_n_minus_one: bool,
}

/// `-(4(2k-1)/ω_k + 4)`.
pub fn deep_endpoint(k: i64) -> Result<f64> {
    Ok(-((4 * (2 * k - 1)) as f64 / omega(k)? + 4.0))
}

fn twist_case(k: i64) -> Result<IntervalSet> {
    Ok(IntervalSet::new(vec![Interval::open(-((4 * k + 2) as f64), deep_endpoint(k)?), Interval::closed(-4.0, 0.0)]))
}

fn check_knot(m: i64, n: i64) -> Result<()> {
    if m < 1 || n == 0 {
        return Err(Error::Domain(format!("need m >= 1 and n != 0, got m={m}, n={n}")));
    }
    if m == 1 && n == 1 {
        return Err(Error::TrefoilExcluded);
    }
    Ok(())
}

/// The certified slope set of `J(2m, 2n)`.
pub fn theorem_intervals(m: i64, n: i64) -> Result<IntervalSet> {
    theorem_intervals_with(m, n, &IntervalOptions::default())
}

pub fn theorem_intervals_with(m: i64, n: i64, opts: &IntervalOptions) -> Result<IntervalSet> {
    check_knot(m, n)?;
    let (mf, nf) = (m as f64, n as f64);
    if n >= 2 && m >= 2 {
        Ok(IntervalSet::new(vec![Interval::open_closed(-(4.0 * mf).max(4.0 * nf), 0.0)]))
    } else if n >= 2 {
        twist_case(n)
    } else if n == 1 {
        twist_case(m)
    } else {
        let mut iv = Interval::open(-4.0 * mf, -4.0 * nf);
        if n == -1 && m >= 2 && opts.closed_four_for_n_minus_one {
            iv.hi_open = false;
        }
        Ok(IntervalSet::new(vec![iv]))
    }
}

/// The certified slope set of the mirror image `J(-2m, -2n)`, built from its
/// own case table.
pub fn mirror_intervals(m: i64, n: i64) -> Result<IntervalSet> {
    check_knot(m, n)?;
    let (mf, nf) = (m as f64, n as f64);
    let twist = |k: i64| -> Result<IntervalSet> {
        Ok(IntervalSet::new(vec![Interval::closed(0.0, 4.0), Interval::open(-deep_endpoint(k)?, (4 * k + 2) as f64)]))
    };
    if n >= 2 && m >= 2 {
        Ok(IntervalSet::new(vec![Interval { lo: 0.0, hi: (4.0 * mf).max(4.0 * nf), lo_open: false, hi_open: true }]))
    } else if n >= 2 {
        twist(n)
    } else if n == 1 {
        twist(m)
    } else {
        Ok(IntervalSet::new(vec![Interval::open(4.0 * nf, 4.0 * mf)]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_values() {
        let s = theorem_intervals(1, -1).unwrap();
        assert_eq!(s.intervals(), &[Interval::open(-4.0, 4.0)]);
        let s = theorem_intervals(2, 3).unwrap();
        assert_eq!(s.intervals(), &[Interval::open_closed(-12.0, 0.0)]);
        let s = theorem_intervals(1, 2).unwrap();
        assert_eq!(s.intervals(), &[Interval::closed(-4.0, 0.0)]);
        assert!(deep_endpoint(2).unwrap() < -10.0);
        let s = theorem_intervals(1, 3).unwrap();
        assert_eq!(s.intervals().len(), 2);
        assert_eq!(s.intervals()[0].lo, -14.0);
        assert!((s.intervals()[0].hi + 13.07).abs() < 0.01);
        assert_eq!(s.intervals()[1], Interval::closed(-4.0, 0.0));
        assert_eq!(theorem_intervals(3, 1).unwrap(), theorem_intervals(1, 3).unwrap());
        assert_eq!(theorem_intervals(1, 1), Err(Error::TrefoilExcluded));
        assert!(matches!(theorem_intervals(0, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn proof_endpoint_flag() {
        let opts = IntervalOptions { closed_four_for_n_minus_one: true };
        let s = theorem_intervals_with(3, -1, &opts).unwrap();
        assert!(s.contains_rational(4, 1));
        assert!(!theorem_intervals(3, -1).unwrap().contains_rational(4, 1));
        // the flag only concerns m >= 2
        assert!(!theorem_intervals_with(1, -1, &opts).unwrap().contains_rational(4, 1));
    }

    #[test]
    fn rational_membership() {
        let s = theorem_intervals(2, 2).unwrap();
        assert!(s.contains_rational(0, 1));
        assert!(!s.contains_rational(-8, 1));
        assert!(s.contains_rational(-15, 2));
        assert!(!s.contains_rational(1, 1_000_000));
        let s = theorem_intervals(1, 3).unwrap();
        assert!(s.contains_rational(-27, 2));
        assert!(!s.contains_rational(-13, 1));
        assert!(s.contains_rational(-4, 1));
        assert!(!s.contains_rational(-41, 10));
    }

    #[test]
    fn normalization() {
        let s = IntervalSet::new(vec![
            Interval::open(3.0, 5.0),
            Interval::open(1.0, 1.0),
            Interval::closed(0.0, 3.0),
            Interval::open(2.0, 1.0),
            Interval::open(7.0, 9.0),
            Interval::open(5.0, 7.0),
        ]);
        assert_eq!(
            s.intervals(),
            &[
                Interval { lo: 0.0, hi: 5.0, lo_open: false, hi_open: true },
                Interval::open(5.0, 7.0),
                Interval::open(7.0, 9.0)
            ]
        );
        let t = IntervalSet::new(vec![Interval::open_closed(0.0, 1.0), Interval::open(1.0, 2.0)]);
        assert_eq!(t.intervals(), &[Interval::open(0.0, 2.0)]);
        assert!(IntervalSet::new(vec![Interval::open(1.0, 0.0)]).is_empty());
        assert!(IntervalSet::new(vec![Interval::closed(1.0, 1.0)]).contains(1.0));
    }

    #[test]
    fn mirror_table_is_the_negation() {
        for m in 1..=4 {
            for n in [-4i64, -3, -2, -1, 1, 2, 3, 4] {
                if (m, n) == (1, 1) {
                    continue;
                }
                let a = theorem_intervals(m, n).unwrap();
                let b = mirror_intervals(m, n).unwrap();
                assert_eq!(a.negate(), b, "({m},{n})");
                for (p, q) in [(-13, 1), (-7, 2), (-1, 3), (0, 1), (5, 2), (15, 1)] {
                    assert_eq!(a.contains_rational(p, q), b.contains_rational(-p, q));
                }
            }
        }
    }

    #[test]
    fn negative_n_symmetry() {
        // J(2m,-2l) and J(2l,-2m) are mirror images of each other up to isotopy
        for m in 1..=4 {
            for l in 1..=4 {
                assert_eq!(theorem_intervals(m, -l).unwrap(), theorem_intervals(l, -m).unwrap().negate());
            }
        }
    }
}
