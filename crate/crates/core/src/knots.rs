//! The double twist knots `J(2m, 2n)` and their knot group presentations.

use crate::error::{Error, Result};
use crate::mat2::{eval_word, pow_cheb, Assignment, Generator, Mat2, Word};
use crate::numeric::{rat_from_f64, Scalar};
use crate::riley::build_rep_xy;

use Generator::{A, B, C};

/// `J(2m, 2n)` with `m >= 1`, `n != 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DoubleTwistKnot {
    m: i64,
    n: i64,
}

impl DoubleTwistKnot {
    pub fn new(m: i64, n: i64) -> Result<Self> {
        if m < 1 {
            return Err(Error::Domain(format!("m must be >= 1, got {m}")));
        }
        if n == 0 {
            return Err(Error::Domain("n must be nonzero".into()));
        }
        Ok(DoubleTwistKnot { m, n })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn is_trefoil(&self) -> bool {
        self.m == 1 && self.n == 1
    }

    pub fn is_excluded_from_theorem(&self) -> bool {
        self.is_trefoil()
    }

    pub fn is_twist_knot(&self) -> bool {
        self.m == 1
    }

    /// `w = (a b^-1)^m (a^-1 b)^m`.
    pub fn w(&self) -> Word {
        w_word(self.m)
    }
}

pub fn w_word(m: i64) -> Word {
    let ab = Word::from_syllables([(A, 1), (B, -1)]);
    let ba = Word::from_syllables([(A, -1), (B, 1)]);
    ab.pow(m).concat(&ba.pow(m))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: [Generator; 2],
    pub relator: Word,
    /// Letter count of the relator as written, before free reduction.
    pub raw_length: usize,
}

/// `<a, b | a w^n = w^n b>`, relator `a w^n b^-1 w^-n`.
pub fn presentation(k: &DoubleTwistKnot) -> Presentation {
    let wn = k.w().pow(k.n);
    let parts = [Word::gen(A), wn.clone(), Word::gen(B).inverse(), wn.inverse()];
    let raw_length = 2 + 2 * wn_raw_len(k.m, k.n);
    let relator = parts.iter().fold(Word::new(), |acc, p| acc.concat(p));
    Presentation { generators: [A, B], relator, raw_length }
}

fn wn_raw_len(m: i64, n: i64) -> usize {
    (4 * m * n.abs()) as usize
}

/// `u = (b^-1 c)^n c (b^-1 c)^-n`.
pub fn twist_u(n: i64) -> Word {
    let bc = Word::from_syllables([(B, -1), (C, 1)]);
    bc.pow(n).concat(&Word::gen(C)).concat(&bc.pow(-n))
}

/// The meridian `a = (b^-1 c)^n b (b^-1 c)^-n` in the twist presentation.
pub fn twist_meridian_a(n: i64) -> Word {
    let bc = Word::from_syllables([(B, -1), (C, 1)]);
    bc.pow(n).concat(&Word::gen(B)).concat(&bc.pow(-n))
}

/// `<b, c | b u = u c>` for `J(2, 2n)`, relator `b u c^-1 u^-1`.
pub fn twist_presentation(n: i64) -> Result<Presentation> {
    if n == 0 {
        return Err(Error::Domain("n must be nonzero".into()));
    }
    let u = twist_u(n);
    let raw_length = 2 + 2 * (4 * n.unsigned_abs() as usize + 1);
    let relator = Word::gen(B).concat(&u).concat(&Word::gen(C).inverse()).concat(&u.inverse());
    Ok(Presentation { generators: [B, C], relator, raw_length })
}

/// `A W^n - W^n B` with `W = w(A, B)`.
pub fn relation_matrix<T: Scalar>(k: &DoubleTwistKnot, a: &Mat2<T>, b: &Mat2<T>) -> Result<Mat2<T>> {
    Ok(relation_parts(k, a, b)?.0)
}

fn relation_parts<T: Scalar>(k: &DoubleTwistKnot, a: &Mat2<T>, b: &Mat2<T>) -> Result<(Mat2<T>, Mat2<T>)> {
    let mut asg = Assignment::new();
    asg.insert(A, a.clone());
    asg.insert(B, b.clone());
    let w = eval_word(&k.w(), &asg)?;
    let wn = pow_cheb(&w, k.n)?;
    Ok((&(a * &wn) - &(&wn * b), wn))
}

/// Max-abs entry of `A W^n - W^n B`, evaluated in the arithmetic of `T`.
pub fn relation_residual<T: Scalar>(k: &DoubleTwistKnot, a: &Mat2<T>, b: &Mat2<T>) -> Result<f64> {
    Ok(relation_matrix(k, a, b)?.max_abs())
}

/// Residual of the knot group relation at a floating representation point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    /// Max-abs entry of `A W^n - W^n B`.
    pub abs: f64,
    /// `abs` divided by `max(1, |A|·|W^n|, |W^n|·|B|)` (max-abs norms).
    pub rel: f64,
}

/// Absolute and relative relation residual of `(A, B)` in the arithmetic of `T`.
pub fn relation_residual_rel<T: Scalar>(k: &DoubleTwistKnot, a: &Mat2<T>, b: &Mat2<T>) -> Result<Residual> {
    let (r, wn) = relation_parts(k, a, b)?;
    let abs = r.max_abs();
    let wn_norm = wn.max_abs();
    let scale = 1f64.max(a.max_abs() * wn_norm).max(wn_norm * b.max_abs());
    Ok(Residual { abs, rel: abs / scale })
}

/// Relation residual at the normal-form pair built from `(M, y)`.
///
/// The doubles are converted to rationals exactly and the products are
/// formed in exact arithmetic, so the result measures only how far the
/// given point is from the representation variety.
pub fn relation_residual_at(k: &DoubleTwistKnot, big_m: f64, y: f64) -> Result<Residual> {
    let mq = rat_from_f64(big_m)?;
    let yq = rat_from_f64(y)?;
    if Scalar::is_zero(&mq) {
        return Err(Error::Domain("M must be nonzero".into()));
    }
    let (a, b) = build_rep_xy(mq, yq);
    relation_residual_rel(k, &a, &b)
}

/// `B U - U C` for the twist presentation.
pub fn twist_relation_matrix<T: Scalar>(n: i64, b: &Mat2<T>, c: &Mat2<T>) -> Result<Mat2<T>> {
    let mut asg = Assignment::new();
    asg.insert(B, b.clone());
    asg.insert(C, c.clone());
    let u = eval_word(&twist_u(n), &asg)?;
    Ok(&(b * &u) - &(&u * c))
}

pub fn twist_relation_residual<T: Scalar>(n: i64, b: &Mat2<T>, c: &Mat2<T>) -> Result<f64> {
    Ok(twist_relation_matrix(n, b, c)?.max_abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rat, Tol};
    use crate::riley::{build_rep_xy, solve_x};

    #[test]
    fn construction() {
        assert!(DoubleTwistKnot::new(0, 1).is_err());
        assert!(DoubleTwistKnot::new(1, 0).is_err());
        let k = DoubleTwistKnot::new(1, 1).unwrap();
        assert!(k.is_trefoil() && k.is_excluded_from_theorem());
        assert!(!DoubleTwistKnot::new(1, -1).unwrap().is_trefoil());
    }

    #[test]
    fn trefoil_relator() {
        let k = DoubleTwistKnot::new(1, 1).unwrap();
        let p = presentation(&k);
        // a (a b^-1 a^-1 b) b^-1 (b^-1 a b a^-1)
        let expected =
            Word::from_syllables([(A, 1), (A, 1), (B, -1), (A, -1), (B, 1), (B, -1), (B, -1), (A, 1), (B, 1), (A, -1)]);
        assert_eq!(p.relator, expected);
        assert_eq!(p.raw_length, 10);
        assert_eq!(p.generators, [A, B]);
    }

    #[test]
    fn w_for_m2() {
        let k = DoubleTwistKnot::new(2, 1).unwrap();
        let expected = Word::from_syllables([(A, 1), (B, -1), (A, 1), (B, -1), (A, -1), (B, 1), (A, -1), (B, 1)]);
        assert_eq!(k.w(), expected);
    }

    #[test]
    fn relator_lengths_and_abelianization() {
        for m in 1..=3 {
            for n in [-3i64, -1, 1, 2] {
                let k = DoubleTwistKnot::new(m, n).unwrap();
                let p = presentation(&k);
                assert_eq!(p.raw_length, 2 + 8 * (m * n.abs()) as usize);
                assert_eq!(p.relator.exponent_sum(A), 1);
                assert_eq!(p.relator.exponent_sum(B), -1);
            }
        }
    }

    #[test]
    fn twist_words() {
        // n = 1: b^-1 c c c^-1 b reduces to b^-1 c b
        assert_eq!(twist_u(1), Word::from_syllables([(B, -1), (C, 1), (C, 1), (C, -1), (B, 1)]));
        assert_eq!(twist_u(1).syllables(), &[(B, -1), (C, 1), (B, 1)]);
        // n = -1: c^-1 b c b^-1 c
        assert_eq!(twist_u(-1), Word::from_syllables([(C, -1), (B, 1), (C, 1), (B, -1), (C, 1)]));
        let bc = Word::from_syllables([(B, -1), (C, 1)]);
        let cb = Word::from_syllables([(C, -1), (B, 1)]);
        assert_eq!(twist_u(2), bc.pow(2).concat(&Word::gen(C)).concat(&cb.pow(2)));
        let p = twist_presentation(2).unwrap();
        assert_eq!(p.generators, [B, C]);
        assert_eq!(p.relator.exponent_sum(B), 1);
        assert_eq!(p.relator.exponent_sum(C), -1);
        assert!(twist_presentation(0).is_err());
    }

    #[test]
    fn equal_generators_have_zero_residual() {
        let k = DoubleTwistKnot::new(2, 3).unwrap();
        let a = Mat2::new(rat(2, 1), rat(3, 1), rat(1, 1), rat(2, 1));
        assert_eq!(relation_residual(&k, &a, &a).unwrap(), 0.0);
    }

    #[test]
    fn riley_root_is_a_representation() {
        let k = DoubleTwistKnot::new(1, 2).unwrap();
        let p = solve_x(1, 2, 3.0, &Tol::default()).unwrap();
        let (a, b) = build_rep_xy(p.big_m, p.y);
        assert!(relation_residual(&k, &a, &b).unwrap() <= 1e-9);
        assert!(relation_residual_at(&k, p.big_m, p.y).unwrap().abs <= 1e-9);
    }

    #[test]
    fn random_pairs_are_not_representations() {
        let k = DoubleTwistKnot::new(2, 2).unwrap();
        let mut hits = 0;
        for (mm, y) in [(1.3, 2.7), (2.1, 5.0), (1.7, -1.0), (3.0, 0.5), (1.1, 9.0)] {
            let (a, b) = build_rep_xy(mm, y);
            if relation_residual(&k, &a, &b).unwrap() > 0.01 {
                hits += 1;
            }
        }
        assert!(hits >= 4);
    }

    #[test]
    fn residual_is_conjugation_invariant() {
        let k = DoubleTwistKnot::new(2, -2).unwrap();
        let p = solve_x(2, -2, 2.5, &Tol::default()).unwrap();
        let (a, b) = build_rep_xy(p.big_m, p.y);
        let g = Mat2::new(1.5, 0.25, -0.4, (1.0 + 0.25 * -0.4) / 1.5);
        let gi = g.adjugate();
        let ca = &(&g * &a) * &gi;
        let cb = &(&g * &b) * &gi;
        let r0 = relation_residual(&k, &a, &b).unwrap();
        let r1 = relation_residual(&k, &ca, &cb).unwrap();
        assert!((r0 - r1).abs() <= 1e-10, "{r0} vs {r1}");
    }
}
