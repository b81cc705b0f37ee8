//! Truncated polynomial algebras of nilpotent classes over Laurent coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

/// Generator list plus the truncation cap (dimension of the vertex moduli).
#[derive(Debug, PartialEq, Eq)]
pub struct LocalAlgebra {
    generators: Vec<Generator>,
    cap: u32,
}

pub type Exponents = Vec<u32>;

#[derive(Clone, Debug)]
pub struct Local {
    algebra: Arc<LocalAlgebra>,
    terms: BTreeMap<Exponents, LaurentPoly>,
}

impl LocalAlgebra {
    pub fn new<S: Into<String>>(generators: impl IntoIterator<Item = (S, u32)>, cap: u32) -> Arc<Self> {
        let generators = generators
            .into_iter()
            .map(|(name, degree)| Generator { name: name.into(), degree })
            .collect();
        Arc::new(Self { generators, cap })
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn degree(&self, e: &[u32]) -> u32 {
        e.iter().zip(&self.generators).map(|(k, g)| k * g.degree).sum()
    }

    /// Exponent vector of a monomial written like `"psi1*ch1^2"`; `"1"` is the unit.
    pub fn parse_monomial(&self, s: &str) -> Result<Exponents> {
        let mut e = vec![0; self.generators.len()];
        if s.trim() == "1" {
            return Ok(e);
        }
        for factor in s.split('*') {
            let (name, pow) = match factor.trim().split_once('^') {
                Some((n, p)) => (n, p.parse::<u32>().map_err(|_| Error::UnknownGenerator(factor.to_string()))?),
                None => (factor.trim(), 1),
            };
            e[self.index_of(name)?] += pow;
        }
        Ok(e)
    }

    pub fn monomial_name(&self, e: &[u32]) -> String {
        let parts: Vec<String> = e
            .iter()
            .zip(&self.generators)
            .filter(|(k, _)| **k > 0)
            .map(|(k, g)| if *k == 1 { g.name.clone() } else { format!("{}^{}", g.name, k) })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Local {
    pub fn zero(algebra: &Arc<LocalAlgebra>) -> Self {
        Self { algebra: algebra.clone(), terms: BTreeMap::new() }
    }

    pub fn scalar(algebra: &Arc<LocalAlgebra>, c: LaurentPoly) -> Self {
        let mut out = Self::zero(algebra);
        out.add_term(vec![0; algebra.generators.len()], c);
        out
    }

    pub fn one(algebra: &Arc<LocalAlgebra>) -> Self {
        Self::scalar(algebra, LaurentPoly::one())
    }

    pub fn generator(algebra: &Arc<LocalAlgebra>, name: &str) -> Result<Self> {
        let mut e = vec![0; algebra.generators.len()];
        e[algebra.index_of(name)?] = 1;
        let mut out = Self::zero(algebra);
        out.add_term(e, LaurentPoly::one());
        Ok(out)
    }

    fn add_term(&mut self, e: Exponents, c: LaurentPoly) {
        if c.is_zero() || self.algebra.degree(&e) > self.algebra.cap {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_default();
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn algebra(&self) -> &Arc<LocalAlgebra> {
        &self.algebra
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> LaurentPoly {
        self.terms.get(&vec![0; self.algebra.generators.len()]).cloned().unwrap_or_default()
    }

    pub fn coeff(&self, e: &[u32]) -> LaurentPoly {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-LaurentPoly::one())
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero(&self.algebra);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.algebra);
        for (e1, a) in &self.terms {
            for (e2, b) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                out.add_term(e, a * b);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        (0..n).try_fold(Self::one(&self.algebra), |acc, _| acc.mul(self))
    }

    /// Extracts the `t^k` coefficient of every term.
    pub fn t_coeff(&self, k: i64) -> BTreeMap<Exponents, Rational> {
        self.terms
            .iter()
            .map(|(e, c)| (e.clone(), c.coeff(k)))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    /// Terms of class degree exactly `d`.
    pub fn degree_part(&self, d: u32) -> impl Iterator<Item = (&Exponents, &LaurentPoly)> {
        self.terms.iter().filter(move |(e, _)| self.algebra.degree(e) == d)
    }
}

impl PartialEq for Local {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.terms == other.terms
    }
}

impl fmt::Display for Local {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("({c})*{}", self.algebra.monomial_name(e)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `sum_j n^j / w^(j+1)`, i.e. `1/(w - n)` for a unit `w` and nilpotent `n`.
pub fn geometric_inverse(w: &LaurentPoly, n: &Local) -> Result<Local> {
    let winv = w.inverse()?;
    if !n.constant_term().is_zero() {
        return Err(Error::NotNilpotent(n.constant_term().to_string()));
    }
    let algebra = n.algebra().clone();
    let mut out = Local::zero(&algebra);
    let mut power = Local::scalar(&algebra, winv.clone());
    // n is nilpotent of order at most cap + 1
    for _ in 0..=algebra.cap() {
        out = out.add(&power)?;
        power = power.mul(n)?.scale(&winv);
        if power.is_zero() {
            break;
        }
    }
    Ok(out)
}
