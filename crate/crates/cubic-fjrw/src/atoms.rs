//! Symbolic moduli integrals and linear combinations over them.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::rational::{int, rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    /// The genus-one invariant being solved for.
    Theta,
    /// Integral of ch_1 of the pushed-forward dual spin bundle, genus one, one node.
    ICh1,
    /// Integral of the node psi class on the same spin moduli.
    IPsiSpin11,
    /// Fundamental class of the genus-zero spin moduli with monodromies (1, 1, 2).
    IG0112,
    /// Integral of lambda_1 over the moduli of one-pointed elliptic curves.
    HodgeLambda1,
    /// Integral of psi_1 over the same space.
    PsiM11,
}

pub const ALL_ATOMS: [Atom; 6] =
    [Atom::Theta, Atom::ICh1, Atom::IPsiSpin11, Atom::IG0112, Atom::HodgeLambda1, Atom::PsiM11];

impl Atom {
    pub fn name(self) -> &'static str {
        match self {
            Atom::Theta => "THETA",
            Atom::ICh1 => "I_CH1",
            Atom::IPsiSpin11 => "I_PSI_SPIN11",
            Atom::IG0112 => "I_G0_112",
            Atom::HodgeLambda1 => "HODGE_LAMBDA1",
            Atom::PsiM11 => "PSI_M11",
        }
    }

    pub fn from_name(s: &str) -> Option<Atom> {
        ALL_ATOMS.into_iter().find(|a| a.name() == s)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AtomCombo {
    terms: BTreeMap<Atom, LaurentPoly>,
    constant: LaurentPoly,
}

impl AtomCombo {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self { terms: BTreeMap::new(), constant: p }
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_poly(LaurentPoly::constant(r))
    }

    pub fn atom(a: Atom, c: LaurentPoly) -> Self {
        let mut out = Self::zero();
        out.add_atom(a, c);
        out
    }

    fn add_atom(&mut self, a: Atom, c: LaurentPoly) {
        let slot = self.terms.entry(a).or_default();
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&a);
        }
    }

    pub fn constant(&self) -> &LaurentPoly {
        &self.constant
    }

    pub fn atom_coeff(&self, a: Atom) -> LaurentPoly {
        self.terms.get(&a).cloned().unwrap_or_default()
    }

    pub fn atoms(&self) -> impl Iterator<Item = (Atom, &LaurentPoly)> {
        self.terms.iter().map(|(a, c)| (*a, c))
    }

    pub fn is_atom_free(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value as a plain rational when atom-free and constant in `t`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_atom_free() {
            self.constant.as_constant()
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.constant = &out.constant + &other.constant;
        for (a, c) in &other.terms {
            out.add_atom(*a, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-LaurentPoly::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, p: &LaurentPoly) -> Self {
        let mut out = Self::from_poly(&self.constant * p);
        for (a, c) in &self.terms {
            out.add_atom(*a, c * p);
        }
        out
    }

    /// Product; fails unless one factor is atom-free.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        match (self.is_atom_free(), other.is_atom_free()) {
            (true, _) => Ok(other.scale(&self.constant)),
            (_, true) => Ok(self.scale(&other.constant)),
            _ => Err(Error::UnresolvedAtoms(format!("nonlinear product ({self}) * ({other})"))),
        }
    }

    /// Term-wise bracket `[.]_{t^k}`.
    pub fn coeff(&self, k: i64) -> Self {
        let mut out = Self::from_rational(self.constant.coeff(k));
        for (a, c) in &self.terms {
            out.add_atom(*a, LaurentPoly::constant(c.coeff(k)));
        }
        out
    }
}

impl fmt::Display for AtomCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (a, c) in &self.terms {
            match c.as_constant() {
                Some(r) if r.is_one() => parts.push((false, a.name().to_string())),
                Some(r) if (-&r).is_one() => parts.push((true, a.name().to_string())),
                Some(r) => parts.push((r.is_negative(), format!("{}*{}", r.abs(), a.name()))),
                None => parts.push((false, format!("({c})*{}", a.name()))),
            }
        }
        match self.constant.as_constant() {
            Some(r) if r.is_zero() => {}
            Some(r) => parts.push((r.is_negative(), r.abs().to_string())),
            None => parts.push((false, format!("({})", self.constant))),
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        for (i, (neg, body)) in parts.iter().enumerate() {
            match (i, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AtomValue {
    Known(Rational),
    /// Kept symbolic; its value is never needed.
    Symbolic,
    /// The quantity being solved for.
    Unknown,
}

#[derive(Clone, Debug)]
pub struct AtomTable {
    values: BTreeMap<Atom, AtomValue>,
    psi_summands: (Rational, Rational),
}

impl AtomTable {
    pub fn standard() -> Self {
        // two boundary contributions to the node psi integral on the spin moduli
        let first = -int(8) * rat(1, 3 * 3 * 24);
        let second = rat(3 * 3 - 1, 24 * 3 * 3);
        let psi = &first + &second;
        let values = BTreeMap::from([
            (Atom::Theta, AtomValue::Unknown),
            (Atom::ICh1, AtomValue::Symbolic),
            (Atom::IPsiSpin11, AtomValue::Known(psi)),
            (Atom::IG0112, AtomValue::Known(rat(1, 3))),
            (Atom::HodgeLambda1, AtomValue::Known(rat(1, 24))),
            (Atom::PsiM11, AtomValue::Known(rat(1, 24))),
        ]);
        Self { values, psi_summands: (first, second) }
    }

    pub fn value(&self, a: Atom) -> &AtomValue {
        self.values.get(&a).unwrap_or(&AtomValue::Unknown)
    }

    pub fn with_value(mut self, a: Atom, v: AtomValue) -> Self {
        self.values.insert(a, v);
        self
    }

    /// The two stored summands of the node psi integral.
    pub fn psi_summands(&self) -> (&Rational, &Rational) {
        (&self.psi_summands.0, &self.psi_summands.1)
    }

    /// Substitutes every known atom.
    pub fn resolve(&self, c: &AtomCombo) -> AtomCombo {
        let mut out = AtomCombo::from_poly(c.constant().clone());
        for (a, coeff) in c.atoms() {
            match self.value(a) {
                AtomValue::Known(v) => out = out.add(&AtomCombo::from_poly(coeff.scale(v))),
                _ => out.add_atom(a, coeff.clone()),
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_matches_report_format() {
        let c = AtomCombo::atom(Atom::Theta, LaurentPoly::constant(rat(-1, 6)));
        assert_eq!(c.to_string(), "-1/6*THETA");
        let d = c.add(&AtomCombo::from_rational(rat(1, 648)));
        assert_eq!(d.to_string(), "-1/6*THETA + 1/648");
        assert_eq!(AtomCombo::zero().to_string(), "0");
    }

    #[test]
    fn zero_coefficients_vanish() {
        let c = AtomCombo::atom(Atom::ICh1, LaurentPoly::constant(int(2)));
        assert!(c.sub(&c).is_atom_free());
    }

    #[test]
    fn nonlinear_product_rejected() {
        let c = AtomCombo::atom(Atom::ICh1, LaurentPoly::one());
        assert!(c.mul(&c).is_err());
        assert!(c.mul(&AtomCombo::from_rational(int(3))).is_ok());
    }

    #[test]
    fn resolve_substitutes_known_atoms() {
        let t = AtomTable::standard();
        let c = AtomCombo::atom(Atom::IG0112, LaurentPoly::constant(int(-3)))
            .add(&AtomCombo::atom(Atom::ICh1, LaurentPoly::one()));
        let r = t.resolve(&c);
        assert_eq!(r.constant().coeff(0), int(-1));
        assert_eq!(r.atom_coeff(Atom::ICh1), LaurentPoly::one());
    }
}
