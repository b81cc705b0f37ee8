//! The cube of the virtual class, split the way the hand computation splits it.

use num_traits::Zero;

use crate::error::Result;
use crate::m13::M13Class;
use crate::rational::{int, rat, Rational};
use crate::tables::Tables;
use crate::threespin::{
    push_degree, reduce_self_intersections, st_pushforward, virtual_class, WClass, WGenerator,
};

fn w(g: WGenerator) -> WClass {
    WClass::generator(g)
}

/// `T = -D02 + D03 - 36 D03_0`, the boundary part of the virtual class besides `S`.
pub fn t_class() -> WClass {
    w(WGenerator::D03).sub(&w(WGenerator::D02)).sub(&w(WGenerator::D03_0).scale(&int(36)))
}

#[derive(Clone, Debug)]
pub struct Row {
    pub label: &'static str,
    pub coeff: Rational,
    pub delta: WClass,
}

fn row(label: &'static str, coeff: Rational, factors: &[WClass]) -> Row {
    let delta = factors.iter().fold(WClass::one(), |acc, f| acc.mul(f));
    Row { label, coeff, delta }
}

/// Summands of `W_KPS * (T^2 - 2 S T)`.
pub fn table2_rows() -> Vec<Row> {
    use WGenerator::*;
    let s = WClass::s;
    vec![
        row("S*D02", int(2), &[s(), w(D02)]),
        row("S*D03", int(-2), &[s(), w(D03)]),
        row("S*D03_0", int(72), &[s(), w(D03_0)]),
        row("D02^2", int(1), &[w(D02), w(D02)]),
        row("D02*D03", int(-2), &[w(D02), w(D03)]),
        row("D02*D03_0", int(72), &[w(D02), w(D03_0)]),
        row("D03^2", int(1), &[w(D03), w(D03)]),
        row("D03*D03_0", int(-72), &[w(D03), w(D03_0)]),
        row("D03_0^2", int(36 * 36), &[w(D03_0), w(D03_0)]),
    ]
}

/// Summands of `S T^2` (first six) and `T^3` (remaining ten).
pub fn table3_rows() -> Vec<Row> {
    use WGenerator::*;
    let s = WClass::s;
    let c = 36 * 36;
    vec![
        row("S*D02^2", int(1), &[s(), w(D02), w(D02)]),
        row("S*D02*D03", int(-2), &[s(), w(D02), w(D03)]),
        row("S*D02*D03_0", int(72), &[s(), w(D02), w(D03_0)]),
        row("S*D03^2", int(1), &[s(), w(D03), w(D03)]),
        row("S*D03*D03_0", int(-72), &[s(), w(D03), w(D03_0)]),
        row("S*D03_0^2", int(c), &[s(), w(D03_0), w(D03_0)]),
        row("D02^3", int(-1), &[w(D02), w(D02), w(D02)]),
        row("D02^2*D03", int(3), &[w(D02), w(D02), w(D03)]),
        row("D02^2*D03_0", int(-108), &[w(D02), w(D02), w(D03_0)]),
        row("D02*D03^2", int(-3), &[w(D02), w(D03), w(D03)]),
        row("D02*D03*D03_0", int(216), &[w(D02), w(D03), w(D03_0)]),
        row("D02*D03_0^2", int(-3 * c), &[w(D02), w(D03_0), w(D03_0)]),
        row("D03^3", int(1), &[w(D03), w(D03), w(D03)]),
        row("D03^2*D03_0", int(-108), &[w(D03), w(D03), w(D03_0)]),
        row("D03*D03_0^2", int(3 * c), &[w(D03), w(D03_0), w(D03_0)]),
        row("D03_0^3", int(-36 * c), &[w(D03_0), w(D03_0), w(D03_0)]),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowTotal {
    pub label: &'static str,
    pub coeff: Rational,
    pub total: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Breakdown {
    /// `(K/36)^3 + 3 (K/36)^2 X`, where the virtual class is `K/36 + X`.
    pub prop1: Rational,
    /// `3 (K/36) (X^2 - S^2/144)`.
    pub prop2: Rational,
    /// `(-3 S T^2 + T^3) / 12^3`.
    pub prop3: Rational,
    /// `deg st_*(S^3)`.
    pub prop4_s3: Rational,
    /// `deg st_*(S^2 (K - 3 D02 + 3 D03 - 108 D03_0))`.
    pub prop4_mixed: Rational,
    pub g4: Rational,
    pub g5: Rational,
    pub table2: Vec<RowTotal>,
    pub table3: Vec<RowTotal>,
    /// `deg st_*(virt^3)` computed directly.
    pub theta: Rational,
}

impl Breakdown {
    /// The sum of the parts, which must equal `theta`.
    pub fn assembled(&self) -> Rational {
        &self.prop1 + &self.prop2 + &self.prop3 + (&self.prop4_mixed - &self.prop4_s3) / int(12 * 12 * 12)
    }
}

pub fn theta_three_spin(t: &Tables) -> Result<Rational> {
    push_degree(&virtual_class().pow(3), &t.strata, &t.pairing)
}

pub fn breakdown(t: &Tables) -> Result<Breakdown> {
    let deg = |c: &WClass| push_degree(c, &t.strata, &t.pairing);
    let k = w(WGenerator::Kps);
    let s = WClass::s();
    let tc = t_class();
    let a = k.scale(&rat(1, 36));
    let x = tc.sub(&s).scale(&rat(1, 12));
    let s12 = s.scale(&rat(1, 12));

    let prop1 = deg(&a.pow(3).add(&a.pow(2).mul(&x).scale(&int(3))))?;
    let prop2 = deg(&a.mul(&x.pow(2).sub(&s12.pow(2))).scale(&int(3)))?;
    let g4 = deg(&s.mul(&tc.pow(2)))?;
    let g5 = deg(&tc.pow(3))?;
    let prop3 = (&g5 - int(3) * &g4) / int(12 * 12 * 12);
    let prop4_s3 = deg(&s.pow(3))?;
    let mixed = k
        .sub(&w(WGenerator::D02).scale(&int(3)))
        .add(&w(WGenerator::D03).scale(&int(3)))
        .sub(&w(WGenerator::D03_0).scale(&int(108)));
    let prop4_mixed = deg(&s.pow(2).mul(&mixed))?;

    let totals = |rows: Vec<Row>, with_kps: bool| -> Result<Vec<RowTotal>> {
        rows.into_iter()
            .map(|r| {
                let c = if with_kps { k.mul(&r.delta) } else { r.delta.clone() };
                Ok(RowTotal { label: r.label, total: &r.coeff * deg(&c)?, coeff: r.coeff })
            })
            .collect()
    };
    Ok(Breakdown {
        prop1,
        prop2,
        prop3,
        prop4_s3,
        prop4_mixed,
        g4,
        g5,
        table2: totals(table2_rows(), true)?,
        table3: totals(table3_rows(), false)?,
        theta: theta_three_spin(t)?,
    })
}

/// Pushforward of the virtual class itself.
pub fn max_group_pushforward(t: &Tables) -> Result<M13Class> {
    st_pushforward(&reduce_self_intersections(&virtual_class(), &t.strata)?, &t.strata)
}

/// Cube of the pushed-forward virtual class, paired on the moduli of curves.
pub fn theta_max_group(t: &Tables) -> Result<Rational> {
    t.pairing.m13_degree(&max_group_pushforward(t)?.pow(3))
}

pub fn sum_totals(rows: &[RowTotal]) -> Rational {
    rows.iter().fold(Rational::zero(), |acc, r| acc + &r.total)
}
