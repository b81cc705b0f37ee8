//! Boundary calculus on the moduli of three-pointed genus-one curves.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, int, rat, Rational};

pub const DIM: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum M13Generator {
    DIrr,
    D02,
    D03,
    /// kappa_1 minus the sum of the marked psi classes.
    Kps,
    /// Formal `psi_+ + psi_-` at the node of the irreducible boundary.
    NodePsi,
}

/// Stored generators; `Kps` never survives construction.
const STORED: [M13Generator; 4] = [M13Generator::DIrr, M13Generator::D02, M13Generator::D03, M13Generator::NodePsi];

impl M13Generator {
    pub fn name(self) -> &'static str {
        match self {
            M13Generator::DIrr => "d_irr",
            M13Generator::D02 => "d02",
            M13Generator::D03 => "d03",
            M13Generator::Kps => "kps",
            M13Generator::NodePsi => "node_psi",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [Self::DIrr, Self::D02, Self::D03, Self::Kps, Self::NodePsi].into_iter().find(|g| g.name() == s)
    }

    fn slot(self) -> Option<usize> {
        STORED.iter().position(|g| *g == self)
    }
}

/// Exponents of `(d_irr, d02, d03, node_psi)`.
pub type M13Mono = [u8; 4];

pub fn mono_degree(m: &M13Mono) -> u32 {
    m.iter().map(|e| *e as u32).sum()
}

pub fn mono_name(m: &M13Mono) -> String {
    let parts: Vec<String> = STORED
        .iter()
        .zip(m)
        .filter(|(_, e)| **e > 0)
        .map(|(g, e)| if *e == 1 { g.name().to_string() } else { format!("{}^{}", g.name(), e) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Parses `"d_irr*d02^2"`, in any factor order.
pub fn parse_mono(s: &str) -> Result<M13Mono> {
    let bad = || Error::InvalidTable(format!("bad monomial `{s}`"));
    let mut m = [0u8; 4];
    if s.trim() == "1" {
        return Ok(m);
    }
    for factor in s.split('*') {
        let factor = factor.trim();
        let (name, pow) = match factor.split_once('^') {
            Some((n, p)) => (n, p.parse::<u8>().map_err(|_| bad())?),
            None => (factor, 1),
        };
        let g = M13Generator::from_name(name).ok_or_else(bad)?;
        let slot = g.slot().ok_or_else(bad)?;
        m[slot] = m[slot].checked_add(pow).ok_or_else(bad)?;
    }
    Ok(m)
}

fn killed(m: &M13Mono) -> bool {
    m[0] >= 2 || mono_degree(m) > DIM
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct M13Class {
    terms: BTreeMap<M13Mono, Rational>,
}

impl M13Class {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(r: Rational) -> Self {
        Self::monomial([0; 4], r)
    }

    pub fn one() -> Self {
        Self::scalar(int(1))
    }

    pub fn monomial(m: M13Mono, c: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(m, c);
        out
    }

    pub fn generator(g: M13Generator) -> Self {
        match g.slot() {
            Some(i) => {
                let mut m = [0; 4];
                m[i] = 1;
                Self::monomial(m, int(1))
            }
            None => Self::kps(),
        }
    }

    /// Genus-one relation: `kappa_1 - sum psi_i = -d02 - d03`.
    pub fn kps() -> Self {
        Self::generator(M13Generator::D02).add(&Self::generator(M13Generator::D03)).neg()
    }

    fn add_term(&mut self, m: M13Mono, c: Rational) {
        if c.is_zero() || killed(&m) {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&M13Mono, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &M13Mono) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&int(-1))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c * r);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let m = [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]];
                out.add_term(m, x * y);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }
}

pub(crate) fn write_terms<K>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (K, Rational)>,
    name: impl Fn(&K) -> String,
) -> fmt::Result {
    let mut first = true;
    for (k, c) in terms {
        let n = name(&k);
        let mag = c.abs();
        let body = match (n.as_str(), mag.is_one()) {
            ("1", _) => mag.to_string(),
            (_, true) => n,
            _ => format!("{mag}*{n}"),
        };
        match (first, c.is_negative()) {
            (true, true) => write!(f, "-{body}")?,
            (true, false) => write!(f, "{body}")?,
            (false, true) => write!(f, " - {body}")?,
            (false, false) => write!(f, " + {body}")?,
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for M13Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        terms.sort_by_key(|(m, _)| (mono_degree(m), std::cmp::Reverse(*m)));
        write_terms(f, terms.into_iter(), mono_name)
    }
}

/// Intersection numbers of degree-three monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingTable {
    entries: BTreeMap<M13Mono, Rational>,
    nodepsi_entries: BTreeMap<M13Mono, Rational>,
}

/// Columns of the printed intersection table: products of two boundary divisors.
pub const TABLE1_COLUMNS: [[u8; 4]; 5] = [[0, 1, 1, 0], [1, 0, 1, 0], [1, 1, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0]];
pub const TABLE1_ROWS: [[u8; 4]; 3] = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]];

/// The printed grid, row by row.
pub fn table1_grid() -> [[Rational; 5]; 3] {
    [
        [rat(3, 2), int(0), int(0), rat(-3, 2), rat(-1, 2)],
        [int(0), rat(3, 2), rat(-3, 2), rat(1, 8), rat(-1, 8)],
        [rat(-1, 8), rat(-1, 2), rat(3, 2), int(0), rat(1, 12)],
    ]
}

fn mono_add(a: &M13Mono, b: &M13Mono) -> M13Mono {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

impl PairingTable {
    pub fn standard() -> Self {
        let grid = table1_grid();
        let readings = TABLE1_ROWS.iter().enumerate().flat_map(|(r, row)| {
            let grid = &grid;
            TABLE1_COLUMNS.iter().enumerate().map(move |(c, col)| (mono_add(row, col), grid[r][c].clone()))
        });
        let nodepsi = [([1, 0, 0, 2], int(3)), ([1, 1, 0, 1], int(3)), ([1, 0, 1, 1], int(0))];
        Self::from_readings(readings, nodepsi).expect("built-in intersection table is consistent")
    }

    /// Builds a table from `(monomial, value)` readings, rejecting conflicting duplicates.
    pub fn from_readings(
        readings: impl IntoIterator<Item = (M13Mono, Rational)>,
        nodepsi: impl IntoIterator<Item = (M13Mono, Rational)>,
    ) -> Result<Self> {
        let mut entries = BTreeMap::new();
        let mut nodepsi_entries = BTreeMap::new();
        for (m, v) in readings {
            if mono_degree(&m) != DIM || m[3] != 0 {
                return Err(Error::InvalidTable(format!("pairing key {} is not a degree-3 boundary monomial", mono_name(&m))));
            }
            if m[0] >= 2 && !v.is_zero() {
                return Err(Error::InvalidTable(format!("{} must vanish (d_irr^2 = 0)", mono_name(&m))));
            }
            insert_consistent(&mut entries, m, v)?;
        }
        for (m, v) in nodepsi {
            if mono_degree(&m) != DIM || m[3] == 0 {
                return Err(Error::InvalidTable(format!("node-psi key {} must be degree 3 with a node_psi factor", mono_name(&m))));
            }
            insert_consistent(&mut nodepsi_entries, m, v)?;
        }
        Ok(Self { entries, nodepsi_entries })
    }

    pub fn entries(&self) -> &BTreeMap<M13Mono, Rational> {
        &self.entries
    }

    pub fn nodepsi_entries(&self) -> &BTreeMap<M13Mono, Rational> {
        &self.nodepsi_entries
    }

    pub fn nodepsi_pairing(&self, m: &M13Mono) -> Result<Rational> {
        self.nodepsi_entries
            .get(m)
            .cloned()
            .ok_or_else(|| Error::UnknownNodePsiPairing(mono_name(m)))
    }

    /// Degree of a class; parts of degree below three are dropped.
    pub fn m13_degree(&self, c: &M13Class) -> Result<Rational> {
        let mut total = Rational::zero();
        for (m, coeff) in c.terms() {
            if mono_degree(m) != DIM || killed(m) {
                continue;
            }
            let v = if m[3] > 0 {
                self.nodepsi_pairing(m)?
            } else {
                self.entries
                    .get(m)
                    .cloned()
                    .ok_or_else(|| Error::UnknownStratumPairing(mono_name(m)))?
            };
            total += coeff * v;
        }
        Ok(total)
    }

    pub fn to_json(&self) -> PairingJson {
        let dump = |map: &BTreeMap<M13Mono, Rational>| {
            map.iter().map(|(m, v)| (mono_name(m), rational::format(v))).collect()
        };
        PairingJson { entries: dump(&self.entries), node_psi: dump(&self.nodepsi_entries) }
    }

    pub fn from_json(j: &PairingJson) -> Result<Self> {
        let read = |map: &BTreeMap<String, String>| -> Result<Vec<(M13Mono, Rational)>> {
            map.iter().map(|(k, v)| Ok((parse_mono(k)?, rational::parse(v)?))).collect()
        };
        Self::from_readings(read(&j.entries)?, read(&j.node_psi)?)
    }
}

fn insert_consistent(map: &mut BTreeMap<M13Mono, Rational>, m: M13Mono, v: Rational) -> Result<()> {
    match map.get(&m) {
        Some(old) if *old != v => Err(Error::InvalidTable(format!(
            "{} read as both {} and {}",
            mono_name(&m),
            old,
            v
        ))),
        _ => {
            map.insert(m, v);
            Ok(())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingJson {
    pub entries: BTreeMap<String, String>,
    pub node_psi: BTreeMap<String, String>,
}
