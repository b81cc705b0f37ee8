//! Sparse Laurent polynomials in the equivariant parameter `t`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(int(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * t^k`
    pub fn monomial(c: Rational, k: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(k, c);
        p
    }

    /// The parameter `t` itself.
    pub fn t() -> Self {
        Self::monomial(int(1), 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    fn add_term(&mut self, k: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(k).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i64) -> Rational {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => self.coeffs.get(&0).cloned(),
            _ => None,
        }
    }

    /// `(k, c)` when the polynomial is the single term `c t^k`.
    pub fn as_monomial(&self) -> Option<(i64, &Rational)> {
        if self.coeffs.len() == 1 {
            self.coeffs.iter().next().map(|(k, c)| (*k, c))
        } else {
            None
        }
    }

    /// Inverse of a single nonzero term.
    pub fn inverse(&self) -> Result<Self> {
        match self.as_monomial() {
            Some((k, c)) => Ok(Self::monomial(c.recip(), -k)),
            None => Err(Error::NonInvertibleWeight(self.to_string())),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::from_terms(self.terms().map(|(k, c)| (k, c * r)))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Substitutes `t -> s t`.
    pub fn rescale_t(&self, s: &Rational) -> Self {
        Self::from_terms(self.terms().map(|(k, c)| (k, c * pow_signed(s, k))))
    }
}

fn pow_signed(s: &Rational, k: i64) -> Rational {
    let base = if k < 0 { s.recip() } else { s.clone() };
    (0..k.unsigned_abs()).fold(Rational::one(), |acc, _| acc * &base)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match *k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if *k == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in rhs.terms() {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in rhs.terms() {
            out.add_term(k, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (i, a) in self.terms() {
            for (j, b) in rhs.terms() {
                out.add_term(i + j, a * b);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&int(-1))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// The bracket `[p]_{t^k}`.
pub fn laurent_coeff(p: &LaurentPoly, k: i64) -> Rational {
    p.coeff(k)
}
