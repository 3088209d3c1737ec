//! 2×2 matrices over a [`Scalar`], free-group words, and their evaluation.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::chebyshev::cheb_pair;
use crate::error::{Error, Result};
use crate::numeric::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Mat2<T> {
    pub a11: T,
    pub a12: T,
    pub a21: T,
    pub a22: T,
}

impl<T: Scalar> Mat2<T> {
    pub fn new(a11: T, a12: T, a21: T, a22: T) -> Self {
        Mat2 { a11, a12, a21, a22 }
    }

    pub fn identity() -> Self {
        Mat2::new(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn zero() -> Self {
        Mat2::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    pub fn det(&self) -> T {
        self.a11.clone() * self.a22.clone() - self.a12.clone() * self.a21.clone()
    }

    pub fn trace(&self) -> T {
        self.a11.clone() + self.a22.clone()
    }

    /// Inverse of a determinant-one matrix.
    pub fn adjugate(&self) -> Self {
        Mat2::new(self.a22.clone(), -self.a12.clone(), -self.a21.clone(), self.a11.clone())
    }

    pub fn scale(&self, k: &T) -> Self {
        Mat2::new(
            k.clone() * self.a11.clone(),
            k.clone() * self.a12.clone(),
            k.clone() * self.a21.clone(),
            k.clone() * self.a22.clone(),
        )
    }

    pub fn entries(&self) -> [&T; 4] {
        [&self.a11, &self.a12, &self.a21, &self.a22]
    }

    /// Largest absolute entry, as a double.
    pub fn max_abs(&self) -> f64 {
        self.entries().iter().map(|e| e.to_f64().abs()).fold(0.0, f64::max)
    }

    /// Checks `det = 1`: exactly for rationals, to a relative `1e-12` for
    /// doubles.
    pub fn check_unimodular(&self) -> Result<()> {
        let d = self.det();
        let magnitude =
            (self.a11.clone() * self.a22.clone()).to_f64().abs() + (self.a12.clone() * self.a21.clone()).to_f64().abs();
        if d.is_unit_det(magnitude) {
            Ok(())
        } else {
            Err(Error::Det { det: d.to_f64() })
        }
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Mat2<U> {
        Mat2 { a11: f(&self.a11), a12: f(&self.a12), a21: f(&self.a21), a22: f(&self.a22) }
    }
}

impl<T: Scalar> Mul for &Mat2<T> {
    type Output = Mat2<T>;
    fn mul(self, o: &Mat2<T>) -> Mat2<T> {
        Mat2::new(
            self.a11.clone() * o.a11.clone() + self.a12.clone() * o.a21.clone(),
            self.a11.clone() * o.a12.clone() + self.a12.clone() * o.a22.clone(),
            self.a21.clone() * o.a11.clone() + self.a22.clone() * o.a21.clone(),
            self.a21.clone() * o.a12.clone() + self.a22.clone() * o.a22.clone(),
        )
    }
}

impl<T: Scalar> Mul for Mat2<T> {
    type Output = Mat2<T>;
    fn mul(self, o: Mat2<T>) -> Mat2<T> {
        &self * &o
    }
}

impl<T: Scalar> Add for &Mat2<T> {
    type Output = Mat2<T>;
    fn add(self, o: &Mat2<T>) -> Mat2<T> {
        Mat2::new(
            self.a11.clone() + o.a11.clone(),
            self.a12.clone() + o.a12.clone(),
            self.a21.clone() + o.a21.clone(),
            self.a22.clone() + o.a22.clone(),
        )
    }
}

impl<T: Scalar> Sub for &Mat2<T> {
    type Output = Mat2<T>;
    fn sub(self, o: &Mat2<T>) -> Mat2<T> {
        Mat2::new(
            self.a11.clone() - o.a11.clone(),
            self.a12.clone() - o.a12.clone(),
            self.a21.clone() - o.a21.clone(),
            self.a22.clone() - o.a22.clone(),
        )
    }
}

/// `D^j = S_{j-1}(tr D) D - S_{j-2}(tr D) I` for `det D = 1`.
pub fn pow_cheb<T: Scalar>(d: &Mat2<T>, j: i64) -> Result<Mat2<T>> {
    d.check_unimodular()?;
    Ok(pow_cheb_unchecked(d, j))
}

pub(crate) fn pow_cheb_unchecked<T: Scalar>(d: &Mat2<T>, j: i64) -> Mat2<T> {
    match j {
        0 => Mat2::identity(),
        1 => d.clone(),
        -1 => d.adjugate(),
        _ => {
            let (p, q) = cheb_pair(j, &d.trace());
            let mut m = d.scale(&p);
            m.a11 = m.a11 - q.clone();
            m.a22 = m.a22 - q;
            m
        }
    }
}

/// Generators of the two knot group presentations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    A,
    B,
    C,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Generator::A => 'a',
            Generator::B => 'b',
            Generator::C => 'c',
        };
        write!(f, "{c}")
    }
}

/// A word in the free group, stored as syllables `(generator, exponent)`
/// with nonzero exponents and no two adjacent syllables on the same
/// generator.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Word {
    letters: Vec<(Generator, i64)>,
}

impl Word {
    pub fn new() -> Self {
        Word::default()
    }

    pub fn gen(g: Generator) -> Self {
        Word { letters: vec![(g, 1)] }
    }

    pub fn from_syllables<I: IntoIterator<Item = (Generator, i64)>>(it: I) -> Self {
        let mut w = Word::new();
        for (g, e) in it {
            w.push(g, e);
        }
        w
    }

    /// Appends `g^e`, merging with the last syllable and cancelling.
    pub fn push(&mut self, g: Generator, e: i64) {
        if e == 0 {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.0 == g {
                last.1 += e;
                if last.1 == 0 {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push((g, e));
    }

    pub fn syllables(&self) -> &[(Generator, i64)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of letters, `Σ |e|`.
    pub fn letter_len(&self) -> usize {
        self.letters.iter().map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn exponent_sum(&self, g: Generator) -> i64 {
        self.letters.iter().filter(|(h, _)| *h == g).map(|(_, e)| e).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &(g, e) in &other.letters {
            w.push(g, e);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect() }
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::new();
        for _ in 0..k.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, (g, e)) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if *e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

pub type Assignment<T> = HashMap<Generator, Mat2<T>>;

/// Evaluates a word as an ordered matrix product; powers other than `1` go
/// through [`pow_cheb`].
pub fn eval_word<T: Scalar>(word: &Word, assign: &Assignment<T>) -> Result<Mat2<T>> {
    for (g, _) in word.syllables() {
        assign.get(g).ok_or(Error::UnboundGenerator(*g))?.check_unimodular()?;
    }
    let mut acc: Option<Mat2<T>> = None;
    for &(g, e) in word.syllables() {
        let m = &assign[&g];
        let factor = pow_cheb_unchecked(m, e);
        acc = Some(match acc {
            None => factor,
            Some(p) => &p * &factor,
        });
    }
    Ok(acc.unwrap_or_else(Mat2::identity))
}
