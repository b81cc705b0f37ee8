//! Intersection theory on the three-spin moduli and pushforward along `st`.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::m13::{M13Class, M13Generator, PairingTable};
use crate::rational::{self, int, rat, Rational};

pub const DIM: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeFamily {
    Irr,
    Sep02,
    Sep03,
}

impl NodeFamily {
    pub fn suffix(self) -> &'static str {
        match self {
            NodeFamily::Irr => "irr",
            NodeFamily::Sep02 => "02",
            NodeFamily::Sep03 => "03",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WGenerator {
    Dirr0,
    Dirr1,
    Dirr2,
    D02,
    D03,
    D03_0,
    /// Pullback of `kappa_1 - sum psi_i`.
    Kps,
    /// Pullback of the irreducible boundary divisor.
    PullIrr,
    /// `psi_+ + psi_-` at the node of a stratum of the given family.
    NodePsi(NodeFamily),
}

/// Boundary divisors that cut out strata, in slot order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Boundary {
    Dirr0,
    Dirr1,
    D02,
    D03,
    D03_0,
}

pub const BOUNDARY: [Boundary; 5] = [Boundary::Dirr0, Boundary::Dirr1, Boundary::D02, Boundary::D03, Boundary::D03_0];

impl Boundary {
    pub fn name(self) -> &'static str {
        match self {
            Boundary::Dirr0 => "Dirr0",
            Boundary::Dirr1 => "Dirr1",
            Boundary::D02 => "D02",
            Boundary::D03 => "D03",
            Boundary::D03_0 => "D03_0",
        }
    }

    pub fn family(self) -> NodeFamily {
        match self {
            Boundary::Dirr0 | Boundary::Dirr1 => NodeFamily::Irr,
            Boundary::D02 => NodeFamily::Sep02,
            Boundary::D03 | Boundary::D03_0 => NodeFamily::Sep03,
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

const KPS: usize = 5;
const PULL: usize = 6;
const NSLOTS: usize = 10;

fn psi_slot(f: NodeFamily) -> usize {
    7 + f as usize
}

const SLOT_NAMES: [&str; NSLOTS] = [
    "Dirr0",
    "Dirr1",
    "D02",
    "D03",
    "D03_0",
    "W_KPS",
    "W_PULL_IRR",
    "W_NODE_PSI_irr",
    "W_NODE_PSI_02",
    "W_NODE_PSI_03",
];

impl WGenerator {
    /// `Dirr2` shares the slot of `Dirr1`: the two classes coincide.
    fn slot(self) -> usize {
        match self {
            WGenerator::Dirr0 => 0,
            WGenerator::Dirr1 | WGenerator::Dirr2 => 1,
            WGenerator::D02 => 2,
            WGenerator::D03 => 3,
            WGenerator::D03_0 => 4,
            WGenerator::Kps => KPS,
            WGenerator::PullIrr => PULL,
            WGenerator::NodePsi(f) => psi_slot(f),
        }
    }
}

pub type WMono = [u8; NSLOTS];

pub fn mono_degree(m: &WMono) -> u32 {
    m.iter().map(|e| *e as u32).sum()
}

pub fn mono_name(m: &WMono) -> String {
    let parts: Vec<String> = SLOT_NAMES
        .iter()
        .zip(m)
        .filter(|(_, e)| **e > 0)
        .map(|(n, e)| if *e == 1 { n.to_string() } else { format!("{n}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn mono_mul(a: &WMono, b: &WMono) -> WMono {
    let mut m = *a;
    for (x, y) in m.iter_mut().zip(b) {
        *x += y;
    }
    m
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WClass {
    terms: BTreeMap<WMono, Rational>,
}

impl WClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(r: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term([0; NSLOTS], r);
        out
    }

    pub fn one() -> Self {
        Self::scalar(int(1))
    }

    pub fn monomial(m: WMono, c: Rational) -> Result<Self> {
        if mono_degree(&m) > DIM {
            return Err(Error::DegreeOverflow(mono_name(&m)));
        }
        let mut out = Self::zero();
        out.add_term(m, c);
        Ok(out)
    }

    pub fn generator(g: WGenerator) -> Self {
        let mut m = [0; NSLOTS];
        m[g.slot()] = 1;
        let mut out = Self::zero();
        out.add_term(m, int(1));
        out
    }

    /// `S = Dirr0 - Dirr1 - Dirr2`.
    pub fn s() -> Self {
        Self::generator(WGenerator::Dirr0)
            .sub(&Self::generator(WGenerator::Dirr1))
            .sub(&Self::generator(WGenerator::Dirr2))
    }

    fn add_term(&mut self, m: WMono, c: Rational) {
        // classes above the dimension vanish
        if c.is_zero() || mono_degree(&m) > DIM {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WMono, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff_of(&self, g: WGenerator) -> Rational {
        let mut m = [0; NSLOTS];
        m[g.slot()] = 1;
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
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
                out.add_term(mono_mul(a, b), x * y);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }
}

impl fmt::Display for WClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        terms.sort_by_key(|(m, _)| (mono_degree(m), std::cmp::Reverse(*m)));
        crate::m13::write_terms(f, terms.into_iter(), mono_name)
    }
}

/// Square-free set of boundary divisors, as a bit mask over [`BOUNDARY`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Stratum(u8);

impl Stratum {
    pub fn of(parts: &[Boundary]) -> Self {
        Stratum(parts.iter().fold(0, |acc, b| acc | (1 << b.slot())))
    }

    pub fn members(self) -> impl Iterator<Item = Boundary> {
        BOUNDARY.into_iter().filter(move |b| self.0 & (1 << b.slot()) != 0)
    }

    pub fn codim(self) -> u32 {
        self.0.count_ones()
    }

    pub fn name(self) -> String {
        let parts: Vec<&str> = self.members().map(Boundary::name).collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut parts = Vec::new();
        for p in s.split('*') {
            let b = BOUNDARY
                .into_iter()
                .find(|b| b.name() == p.trim())
                .ok_or_else(|| Error::InvalidTable(format!("unknown stratum factor `{p}` in `{s}`")))?;
            if parts.iter().any(|q: &Boundary| q.family() == b.family()) {
                return Err(Error::InvalidTable(format!("`{s}` repeats a node family")));
            }
            parts.push(b);
        }
        Ok(Self::of(&parts))
    }
}

/// Degrees of `st` over strata, node monodromy orders and image divisors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumData {
    deg_st: Rational,
    deg: BTreeMap<Stratum, Rational>,
    dirr2_deg: Rational,
    mplus: BTreeMap<Boundary, u32>,
    dirr2_mplus: u32,
    image: BTreeMap<Boundary, M13Generator>,
}

impl StratumData {
    pub fn standard() -> Self {
        use Boundary::*;
        let deg = [
            (vec![Dirr0], int(1)),
            (vec![Dirr1], rat(1, 3)),
            (vec![D02], int(3)),
            (vec![D03], int(1)),
            (vec![D03_0], rat(1, 9)),
            (vec![D02, D03], int(1)),
            (vec![Dirr0, D02], int(1)),
            (vec![Dirr1, D02], rat(1, 3)),
            (vec![Dirr0, D03], rat(1, 3)),
            (vec![Dirr1, D03], rat(1, 9)),
            (vec![Dirr0, D03_0], rat(1, 9)),
            (vec![Dirr1, D03_0], int(0)),
            (vec![D02, D03_0], rat(1, 9)),
            // 3^2 * (1/3) * (1/3) * (1/3)
            (vec![Dirr0, D02, D03], rat(1, 3)),
            // 3^2 * (1/3)^4
            (vec![Dirr1, D02, D03], rat(1, 9)),
            (vec![Dirr0, D02, D03_0], rat(1, 9)),
            (vec![Dirr1, D02, D03_0], int(0)),
        ]
        .into_iter()
        .map(|(s, d)| (Stratum::of(&s), d))
        .collect();
        let mplus = BTreeMap::from([(Dirr0, 1), (Dirr1, 3), (D02, 1), (D03, 3), (D03_0, 3)]);
        let image = BTreeMap::from([
            (Dirr0, M13Generator::DIrr),
            (Dirr1, M13Generator::DIrr),
            (D02, M13Generator::D02),
            (D03, M13Generator::D03),
            (D03_0, M13Generator::D03),
        ]);
        Self { deg_st: int(3), deg, dirr2_deg: rat(1, 3), mplus, dirr2_mplus: 3, image }
    }

    pub fn deg_st(&self) -> &Rational {
        &self.deg_st
    }

    pub fn deg(&self, s: Stratum) -> Result<Rational> {
        if s.codim() == 0 {
            return Ok(self.deg_st.clone());
        }
        self.deg.get(&s).cloned().ok_or_else(|| Error::UnsupportedStratum(s.name()))
    }

    pub fn mplus(&self, b: Boundary) -> u32 {
        self.mplus[&b]
    }

    pub fn image(&self, b: Boundary) -> M13Generator {
        self.image[&b]
    }

    pub fn to_json(&self) -> StratumJson {
        let mut deg1 = BTreeMap::new();
        let mut deg2 = BTreeMap::new();
        let mut deg3 = BTreeMap::new();
        for (s, d) in &self.deg {
            let target = match s.codim() {
                1 => &mut deg1,
                2 => &mut deg2,
                _ => &mut deg3,
            };
            target.insert(s.name(), rational::format(d));
        }
        deg1.insert("Dirr2".to_string(), rational::format(&self.dirr2_deg));
        let mut mplus: BTreeMap<String, u32> = self.mplus.iter().map(|(b, m)| (b.name().to_string(), *m)).collect();
        mplus.insert("Dirr2".to_string(), self.dirr2_mplus);
        let image = self.image.iter().map(|(b, g)| (b.name().to_string(), g.name().to_string())).collect();
        StratumJson { deg_st: rational::format(&self.deg_st), deg1, deg2, deg3, mplus, image }
    }

    pub fn from_json(j: &StratumJson) -> Result<Self> {
        let bad = |msg: String| Error::InvalidTable(msg);
        let deg_st = rational::parse(&j.deg_st)?;
        let mut deg = BTreeMap::new();
        let mut dirr2_deg = None;
        for (codim, map) in [(1, &j.deg1), (2, &j.deg2), (3, &j.deg3)] {
            for (k, v) in map {
                let v = rational::parse(v)?;
                if k == "Dirr2" && codim == 1 {
                    dirr2_deg = Some(v);
                    continue;
                }
                let s = Stratum::parse(k)?;
                if s.codim() != codim {
                    return Err(bad(format!("`{k}` listed among codimension-{codim} strata")));
                }
                if v < Rational::zero() {
                    return Err(bad(format!("negative degree for `{k}`")));
                }
                deg.insert(s, v);
            }
        }
        let dirr1 = Stratum::of(&[Boundary::Dirr1]);
        let dirr2_deg = dirr2_deg.ok_or_else(|| bad("missing degree for Dirr2".into()))?;
        if deg.get(&dirr1) != Some(&dirr2_deg) {
            return Err(bad("Dirr1 and Dirr2 must have equal degrees".into()));
        }
        let mut mplus = BTreeMap::new();
        let mut image = BTreeMap::new();
        for b in BOUNDARY {
            let m = *j.mplus.get(b.name()).ok_or_else(|| bad(format!("missing mplus for {}", b.name())))?;
            if m == 0 {
                return Err(bad(format!("mplus for {} must be positive", b.name())));
            }
            mplus.insert(b, m);
            let g = j.image.get(b.name()).ok_or_else(|| bad(format!("missing image for {}", b.name())))?;
            let g = M13Generator::from_name(g)
                .filter(|g| matches!(g, M13Generator::DIrr | M13Generator::D02 | M13Generator::D03))
                .ok_or_else(|| bad(format!("image of {} must be a boundary divisor", b.name())))?;
            image.insert(b, g);
        }
        let dirr2_mplus = *j.mplus.get("Dirr2").ok_or_else(|| bad("missing mplus for Dirr2".into()))?;
        if dirr2_mplus != mplus[&Boundary::Dirr1] {
            return Err(bad("Dirr1 and Dirr2 must have equal mplus".into()));
        }
        Ok(Self { deg_st, deg, dirr2_deg, mplus, dirr2_mplus, image })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumJson {
    pub deg_st: String,
    pub deg1: BTreeMap<String, String>,
    pub deg2: BTreeMap<String, String>,
    pub deg3: BTreeMap<String, String>,
    pub mplus: BTreeMap<String, u32>,
    pub image: BTreeMap<String, String>,
}

pub fn bernoulli2(x: &Rational) -> Rational {
    x * x - x + rat(1, 6)
}

/// First Chern class of `R pi_* L` by Chiodo's formula.
pub fn chiodo_c1() -> WClass {
    let b = |x: Rational| bernoulli2(&x) / int(2);
    let third = rat(1, 3);
    let mut c = WClass::generator(WGenerator::Kps).scale(&b(third.clone()));
    c = c.add(&WClass::generator(WGenerator::D02).scale(&b(int(0))));
    c = c.add(&WClass::generator(WGenerator::D03).scale(&(int(3) * b(third))));
    for (q, g) in [(0i64, WGenerator::Dirr0), (1, WGenerator::Dirr1), (2, WGenerator::Dirr2)] {
        let q_minus = (3 - q).rem_euclid(3);
        let m_q = 3 / q.gcd(&3);
        c = c.add(&WClass::generator(g).scale(&(b(rat(q_minus, 3)) * int(m_q))));
    }
    c
}

/// The cosection-localized virtual class.
pub fn virtual_class() -> WClass {
    chiodo_c1().neg().sub(&WClass::generator(WGenerator::D03_0).scale(&int(3)))
}

/// Pullback of a boundary generator along `st`.
pub fn st_pullback(b: M13Generator) -> Result<WClass> {
    use WGenerator as W;
    match b {
        M13Generator::DIrr => Ok(WClass::generator(W::Dirr0).add(&WClass::generator(W::Dirr1).scale(&int(6)))),
        M13Generator::D03 => Ok(WClass::generator(W::D03).scale(&int(3))),
        M13Generator::D02 => Ok(WClass::generator(W::D02)),
        other => Err(Error::InvalidPullback(other.name().to_string())),
    }
}

/// Pullback of an arbitrary class, as a ring map.
pub fn st_pullback_class(c: &M13Class) -> Result<WClass> {
    const GENS: [M13Generator; 4] = [M13Generator::DIrr, M13Generator::D02, M13Generator::D03, M13Generator::NodePsi];
    let mut out = WClass::zero();
    for (m, coeff) in c.terms() {
        let mut term = WClass::scalar(coeff.clone());
        for (g, e) in GENS.iter().zip(m) {
            if *e > 0 {
                term = term.mul(&st_pullback(*g)?.pow(*e as u32));
            }
        }
        out = out.add(&term);
    }
    Ok(out)
}

fn node_psi_power(f: NodeFamily, mplus: u32, n: u32) -> WClass {
    WClass::generator(WGenerator::NodePsi(f)).scale(&rat(-1, mplus as i64)).pow(n)
}

/// Rewrites repeated boundary factors through node psi insertions.
pub fn reduce_self_intersections(c: &WClass, data: &StratumData) -> Result<WClass> {
    let (d0, d1) = (Boundary::Dirr0.slot(), Boundary::Dirr1.slot());
    let mut out = WClass::zero();
    for (m, coeff) in c.terms() {
        if mono_degree(m) > DIM {
            return Err(Error::DegreeOverflow(mono_name(m)));
        }
        let mut expanded = WClass::monomial(*m, coeff.clone())?;
        if m[d0] + m[d1] >= 2 && m[d1] > 0 {
            // Dirr1 = (st^* d_irr - Dirr0) / 6
            let mut rest = *m;
            rest[d1] = 0;
            let sub = WClass::generator(WGenerator::PullIrr)
                .sub(&WClass::generator(WGenerator::Dirr0))
                .scale(&rat(1, 6));
            expanded = WClass::monomial(rest, coeff.clone())?.mul(&sub.pow(m[d1] as u32));
        }
        for (m2, c2) in expanded.terms() {
            if m2[PULL] >= 2 {
                continue;
            }
            out = out.add(&reduce_families(m2, c2, data));
        }
    }
    Ok(out)
}

fn reduce_families(m: &WMono, c: &Rational, data: &StratumData) -> WClass {
    let mut base = *m;
    let mut factor = WClass::scalar(c.clone());
    for b in [Boundary::Dirr0, Boundary::Dirr1, Boundary::D02] {
        let e = m[b.slot()];
        if e >= 2 {
            base[b.slot()] = 1;
            factor = factor.mul(&node_psi_power(b.family(), data.mplus(b), (e - 1) as u32));
        }
    }
    let (a, z) = (m[Boundary::D03.slot()], m[Boundary::D03_0.slot()]);
    if a + z >= 2 {
        // D03 restricted to its h^0-jumping component is that component
        let keep = if z > 0 { Boundary::D03_0 } else { Boundary::D03 };
        base[Boundary::D03.slot()] = 0;
        base[Boundary::D03_0.slot()] = 0;
        base[keep.slot()] = 1;
        factor = factor.mul(&node_psi_power(NodeFamily::Sep03, data.mplus(keep), (a + z - 1) as u32));
    }
    let mut base_class = WClass::zero();
    base_class.add_term(base, int(1));
    base_class.mul(&factor)
}

/// Pushforward of a reduced class to the moduli of curves.
pub fn st_pushforward(c: &WClass, data: &StratumData) -> Result<M13Class> {
    let mut out = M13Class::zero();
    for (m, coeff) in c.terms() {
        if m[Boundary::Dirr0.slot()] > 0 && m[PULL] > 0 {
            continue;
        }
        let mut parts = Vec::new();
        for b in BOUNDARY {
            match m[b.slot()] {
                0 => {}
                1 => parts.push(b),
                _ => return Err(Error::UnsupportedStratum(format!("{} (not reduced)", mono_name(m)))),
            }
        }
        let stratum = Stratum::of(&parts);
        let mut families = BTreeMap::new();
        for b in &parts {
            if families.insert(b.family(), *b).is_some() {
                return Err(Error::UnsupportedStratum(format!("{} (not reduced)", mono_name(m))));
            }
        }
        let mut image = M13Class::scalar(coeff * data.deg(stratum)?);
        for b in &parts {
            image = image.mul(&M13Class::generator(data.image(*b)));
        }
        image = image.mul(&M13Class::kps().pow(m[KPS] as u32));
        image = image.mul(&M13Class::generator(M13Generator::DIrr).pow(m[PULL] as u32));
        for f in [NodeFamily::Irr, NodeFamily::Sep02, NodeFamily::Sep03] {
            let e = m[psi_slot(f)];
            if e == 0 {
                continue;
            }
            let b = families
                .get(&f)
                .ok_or_else(|| Error::UnsupportedStratum(format!("{} (node psi off its stratum)", mono_name(m))))?;
            let psi = match f {
                NodeFamily::Irr => M13Class::generator(M13Generator::NodePsi),
                // on a separating divisor, -psi_+ - psi_- is its normal bundle
                _ => M13Class::generator(data.image(*b)).neg(),
            };
            image = image.mul(&psi.pow(e as u32));
        }
        out = out.add(&image);
    }
    Ok(out)
}

/// `deg st_*(c)` through reduction, pushforward and pairing.
pub fn push_degree(c: &WClass, data: &StratumData, pairing: &PairingTable) -> Result<Rational> {
    let pushed = st_pushforward(&reduce_self_intersections(c, data)?, data)?;
    pairing.m13_degree(&pushed)
}
