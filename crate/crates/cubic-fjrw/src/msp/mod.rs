//! Torus localization over decorated fixed-locus graphs of the mixed-spin-P moduli.

mod catalog;

pub use catalog::catalog_graphs;

use num_traits::{One, Signed, Zero};

use crate::atoms::{Atom, AtomCombo, AtomTable};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::local_algebra::{geometric_inverse, Local, LocalAlgebra};
use crate::rational::{frac, int, is_integer, rat, to_i64, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Zero,
    One,
    Infinity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    Stable,
    /// Unstable, one edge and no markings.
    U01,
    /// Unstable, two edges.
    U02,
    /// Unstable, one edge and one marking.
    U11,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Marking {
    /// Narrow monodromy with `m` in `{1, 2}`.
    Narrow(u8),
    OnePhi,
    OneRho,
}

/// A moduli integral that a vertex monomial integrates to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomBinding {
    /// Monomial in the vertex generators, e.g. `"psi1"`, or `"1"` for the fundamental class.
    pub monomial: String,
    pub atom: Atom,
    pub factor: Rational,
}

impl AtomBinding {
    pub fn new(monomial: &str, atom: Atom, factor: Rational) -> Self {
        Self { monomial: monomial.to_string(), atom, factor }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MspVertex {
    pub level: Level,
    pub kind: VertexKind,
    pub genus: u32,
    pub markings: Vec<Marking>,
    pub moduli_dim: u32,
    pub atom_bindings: Vec<AtomBinding>,
}

impl MspVertex {
    pub fn unstable(level: Level, kind: VertexKind) -> Self {
        Self { level, kind, genus: 0, markings: vec![], moduli_dim: 0, atom_bindings: vec![] }
    }

    pub fn stable(level: Level, genus: u32, moduli_dim: u32, atom_bindings: Vec<AtomBinding>) -> Self {
        Self { level, kind: VertexKind::Stable, genus, markings: vec![], moduli_dim, atom_bindings }
    }

    /// Member of the set of unstable one-edge vertices at infinity.
    pub fn is_inf_01(&self) -> bool {
        self.level == Level::Infinity && self.kind == VertexKind::U01
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    /// Between levels 1 and infinity.
    Infinity,
    /// Between levels 0 and 1.
    Zero,
    /// Between levels 0 and infinity.
    ZeroInfinity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MspEdge {
    pub kind: EdgeKind,
    pub d: Rational,
    /// The endpoint at the higher level (infinity for `EdgeKind::Infinity`).
    pub upper: usize,
    /// The endpoint at level 1.
    pub lower: usize,
}

impl MspEdge {
    pub fn infinity(d: Rational, upper: usize, lower: usize) -> Self {
        Self { kind: EdgeKind::Infinity, d, upper, lower }
    }

    pub fn r(&self) -> u32 {
        if is_integer(&self.d) {
            1
        } else {
            3
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalType {
    pub g: u32,
    pub gamma: Vec<Marking>,
    pub d0: Rational,
    pub d_inf: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MspGraph {
    pub id: usize,
    pub vertices: Vec<MspVertex>,
    pub edges: Vec<MspEdge>,
    pub aut_order: u32,
    pub numerical_type: NumericalType,
}

/// Which end of an edge a flag sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Upper,
    Lower,
}

pub fn vdim(g: u32, gamma: &[Marking], d0: &Rational, d_inf: &Rational) -> Rational {
    let l = gamma.len() as i64;
    let l_phi = gamma.iter().filter(|m| **m == Marking::OnePhi).count() as i64;
    let sum_m: i64 = gamma.iter().map(|m| if let Marking::Narrow(k) = m { *k as i64 } else { 0 }).sum();
    d0 + d_inf + int(g as i64 - 1 + l) - int(2) * (int(l_phi) + rat(sum_m, 3))
}

fn t_mono(c: Rational, k: i64) -> LaurentPoly {
    LaurentPoly::monomial(c, k)
}

/// Equivariant weight of the flag `(e, v)`.
pub fn node_weight(e: &MspEdge, side: Side, upper_is_inf_01: bool) -> Result<LaurentPoly> {
    if e.kind != EdgeKind::Infinity {
        return Err(Error::EdgeOutOfScope(format!("{:?} edge", e.kind)));
    }
    if e.d.is_zero() {
        return Err(Error::EdgeOutOfScope("edge of degree 0".into()));
    }
    let d = &e.d;
    let w = match (side, upper_is_inf_01) {
        (Side::Upper, false) => int(1) / (int(e.r() as i64) * d),
        (Side::Lower, false) => -(int(1) / d),
        (Side::Upper, true) => int(3) / (int(3) * d + int(1)),
        (Side::Lower, true) => -(int(3) / (int(3) * d + int(1))),
    };
    Ok(t_mono(w, 1))
}

fn product(range: std::ops::RangeInclusive<i64>, f: impl Fn(i64) -> Rational) -> Rational {
    range.fold(Rational::one(), |acc, j| acc * f(j))
}

fn count(r: &Rational, what: &str) -> Result<i64> {
    to_i64(r).ok_or_else(|| Error::EdgeOutOfScope(format!("{what} = {r} is not an integer")))
}

/// Contribution of an edge between levels 1 and infinity.
pub fn edge_factor(e: &MspEdge, upper_is_inf_01: bool) -> Result<LaurentPoly> {
    if e.kind != EdgeKind::Infinity {
        return Err(Error::EdgeOutOfScope(format!("{:?} edge", e.kind)));
    }
    let d = &e.d;
    if !d.is_negative() {
        return Err(Error::EdgeOutOfScope(format!("edge degree {d} must be negative")));
    }
    // every factor is a multiple of t; track coefficient and power separately
    let (num, num_deg, den, den_deg) = if upper_is_inf_01 {
        let s = int(3) * d + int(1);
        let n1 = count(&(-d - int(1)), "-d-1")?;
        let n2 = count(&(int(-3) * d - int(1)), "-3d-1")?;
        let n3 = count(&-d, "-d")?;
        let num = product(1..=n1, |j| (int(-1) - int(3 * j) / &s).pow(3));
        let den = product(1..=n2, |j| int(-3 * j) / &s) * product(1..=n3, |j| int(3 * j) / &s);
        (num, 3 * n1, den, n2 + n3)
    } else {
        let n1 = count(&(-d).ceil(), "ceil(-d)")? - 1;
        let n2 = count(&(int(-3) * d), "-3d")?;
        let n3 = count(&(-d).floor(), "floor(-d)")?;
        let num = product(1..=n1, |j| (int(-1) - int(j) / d).pow(3));
        let den = product(1..=n2, |j| int(-j) / d) * product(1..=n3, |j| int(j) / d);
        (num, 3 * n1, den, n2 + n3)
    };
    if den.is_zero() {
        return Err(Error::EdgeOutOfScope(format!("degenerate edge factor at d = {d}")));
    }
    Ok(t_mono(num / den, num_deg - den_deg))
}

/// Order of the edge automorphism group.
pub fn ge_order(e: &MspEdge, upper_is_inf_01: bool) -> Result<u32> {
    let delta = if upper_is_inf_01 { int(-1) } else { int(0) };
    let g = (int(-3) * &e.d + delta).abs();
    to_i64(&g)
        .filter(|g| *g > 0)
        .map(|g| g as u32)
        .ok_or_else(|| Error::EdgeOutOfScope(format!("edge group order {g}")))
}

/// Flags at a vertex: `(edge index, side)`, in edge order.
pub fn flags(g: &MspGraph, v: usize) -> Vec<(usize, Side)> {
    let mut out = Vec::new();
    for (i, e) in g.edges.iter().enumerate() {
        if e.upper == v {
            out.push((i, Side::Upper));
        }
        if e.lower == v {
            out.push((i, Side::Lower));
        }
    }
    out
}

fn upper_is_inf_01(g: &MspGraph, e: &MspEdge) -> bool {
    g.vertices[e.upper].is_inf_01()
}

pub fn flag_weights(g: &MspGraph, v: usize) -> Result<Vec<LaurentPoly>> {
    flags(g, v)
        .into_iter()
        .map(|(i, side)| {
            let e = &g.edges[i];
            node_weight(e, side, upper_is_inf_01(g, e))
        })
        .collect()
}

/// Fractional monodromies of the spin bundle at the special points of a vertex at infinity.
fn spin_fractions(g: &MspGraph, v: usize) -> Result<Vec<Rational>> {
    let mut out: Vec<Rational> = flags(g, v).into_iter().map(|(i, _)| frac(&-&g.edges[i].d)).collect();
    for m in &g.vertices[v].markings {
        match m {
            Marking::Narrow(k) => out.push(rat(*k as i64, 3)),
            other => return Err(Error::VertexOutOfScope(format!("marking {other:?} at a stable vertex at infinity"))),
        }
    }
    if out.iter().any(|f| f.is_zero()) {
        return Err(Error::VertexOutOfScope("broad node at a stable vertex at infinity".into()));
    }
    Ok(out)
}

/// `(moduli dimension, rank of R pi_* L^vee)` for a stable vertex at infinity.
pub fn spin_vertex_data(g: &MspGraph, v: usize) -> Result<(i64, i64)> {
    let vert = &g.vertices[v];
    let fr = spin_fractions(g, v)?;
    let n = fr.len() as i64;
    let genus = vert.genus as i64;
    let orb = rat(2 * genus - 2 + n, 3);
    let sum: Rational = fr.iter().fold(Rational::zero(), |a, f| a + f);
    let deg_l = &orb - &sum;
    let deg_lv = -&orb - (int(n) - &sum);
    let chi_l = to_i64(&deg_l).expect("coarse degree is an integer") - genus + 1;
    let rank_lv = to_i64(&deg_lv).expect("coarse degree is an integer") - genus + 1;
    Ok((3 * genus - 3 + n + 3 * chi_l, rank_lv))
}

fn psi_names(k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("psi{i}")).collect()
}

/// Vertex contribution, given the weights of its flags.
pub fn vertex_factor_with_weights(v: &MspVertex, weights: &[LaurentPoly], rank: Option<i64>) -> Result<Local> {
    let plain = |p: LaurentPoly| Ok(Local::scalar(&LocalAlgebra::new(Vec::<(String, u32)>::new(), 0), p));
    let need = |k: usize| {
        if weights.len() == k {
            Ok(())
        } else {
            Err(Error::VertexOutOfScope(format!("{:?} vertex with {} flags", v.kind, weights.len())))
        }
    };
    let t = LaurentPoly::t();
    match (v.level, v.kind) {
        (Level::Infinity, VertexKind::U01) => {
            need(1)?;
            plain(weights[0].clone())
        }
        (Level::One, VertexKind::U01) => {
            need(1)?;
            plain(&t.scale(&int(3)) * &weights[0])
        }
        (Level::Infinity, VertexKind::U02) => {
            need(2)?;
            plain((&weights[0] + &weights[1]).inverse()?)
        }
        (Level::One, VertexKind::U02) => {
            need(2)?;
            plain(&t_mono(int(-3), 4) * &(&weights[0] + &weights[1]).inverse()?)
        }
        (Level::Infinity, VertexKind::Stable) => {
            let mut gens: Vec<(String, u32)> = vec![("ch1".into(), 1)];
            gens.extend(psi_names(weights.len()).into_iter().map(|p| (p, 1)));
            let a = LocalAlgebra::new(gens, v.moduli_dim);
            let euler = match rank {
                Some(-1) => Local::scalar(&a, -&t).sub(&Local::generator(&a, "ch1")?)?,
                Some(-2) if v.moduli_dim == 0 => Local::scalar(&a, t.pow(2)),
                other => {
                    return Err(Error::VertexOutOfScope(format!(
                        "spin vertex with bundle rank {other:?} on a {}-dimensional moduli",
                        v.moduli_dim
                    )))
                }
            };
            with_psi_inverses(euler, &a, weights)
        }
        (Level::One, VertexKind::Stable) if v.genus == 1 && v.markings.is_empty() => {
            let mut gens: Vec<(String, u32)> = vec![("lambda1".into(), 1), ("lambda1v".into(), 1)];
            gens.extend(psi_names(weights.len()).into_iter().map(|p| (p, 1)));
            let a = LocalAlgebra::new(gens, v.moduli_dim);
            let lambda = Local::generator(&a, "lambda1")?;
            let lambda_v = Local::generator(&a, "lambda1v")?;
            let dual = lambda_v.sub(&Local::scalar(&a, t.clone()))?.scale(&t_mono(int(-1), -1)).pow(3)?;
            let hodge = geometric_inverse(&t.scale(&int(3)), &lambda.neg())?.scale(&t.scale(&int(3)));
            let edges = Local::scalar(&a, t_mono(int(-1), 3).pow(weights.len() as u32));
            with_psi_inverses(dual.mul(&hodge)?.mul(&edges)?, &a, weights)
        }
        _ => Err(Error::VertexOutOfScope(format!(
            "{:?} vertex at level {:?} (genus {})",
            v.kind, v.level, v.genus
        ))),
    }
}

fn with_psi_inverses(mut acc: Local, a: &std::sync::Arc<LocalAlgebra>, weights: &[LaurentPoly]) -> Result<Local> {
    for (w, name) in weights.iter().zip(psi_names(weights.len())) {
        acc = acc.mul(&geometric_inverse(w, &Local::generator(a, &name)?)?)?;
    }
    Ok(acc)
}

pub fn vertex_factor(g: &MspGraph, v: usize) -> Result<Local> {
    let vert = &g.vertices[v];
    let rank = match (vert.level, vert.kind) {
        (Level::Infinity, VertexKind::Stable) => {
            let (dim, rank) = spin_vertex_data(g, v)?;
            if dim != vert.moduli_dim as i64 {
                return Err(Error::VertexOutOfScope(format!(
                    "vertex {v} declares moduli dimension {} but its spin data give {dim}",
                    vert.moduli_dim
                )));
            }
            Some(rank)
        }
        (Level::Infinity, VertexKind::U02) => {
            // the twist exponent for integral degrees is printed inconsistently; refuse it
            if flags(g, v).iter().any(|(i, _)| is_integer(&g.edges[*i].d)) {
                return Err(Error::VertexOutOfScope(format!("vertex {v}: two-edge vertex at infinity with an integral edge")));
            }
            None
        }
        _ => None,
    };
    vertex_factor_with_weights(vert, &flag_weights(g, v)?, rank)
}

/// Reads the top-degree part of a vertex factor against its atom bindings.
pub fn integrate(v: &MspVertex, b: &Local) -> Result<AtomCombo> {
    if v.kind != VertexKind::Stable {
        return Ok(AtomCombo::from_poly(b.constant_term()));
    }
    let a = b.algebra();
    let mut out = AtomCombo::zero();
    for (e, coeff) in b.degree_part(a.cap()) {
        let binding = v
            .atom_bindings
            .iter()
            .find(|bd| a.parse_monomial(&bd.monomial).map(|m| &m == e).unwrap_or(false))
            .ok_or_else(|| Error::UnresolvedAtoms(format!("no integral bound to {}", a.monomial_name(e))))?;
        out = out.add(&AtomCombo::atom(binding.atom, coeff.scale(&binding.factor)));
    }
    Ok(out)
}

/// `t^delta / |Aut| * prod_e A_e / |G_e|`, everything except the vertex factors.
pub fn graph_prefactor(g: &MspGraph) -> Result<LaurentPoly> {
    let nt = &g.numerical_type;
    let delta = vdim(nt.g, &nt.gamma, &nt.d0, &nt.d_inf);
    let delta = to_i64(&delta).ok_or_else(|| Error::EdgeOutOfScope(format!("virtual dimension {delta}")))?;
    let mut p = t_mono(rat(1, g.aut_order as i64), delta);
    for e in &g.edges {
        let up01 = upper_is_inf_01(g, e);
        let ge = ge_order(e, up01)?;
        p = &p * &edge_factor(e, up01)?.scale(&rat(1, ge as i64));
    }
    Ok(p)
}

/// Contribution with every atom left symbolic.
pub fn graph_contribution_raw(g: &MspGraph) -> Result<AtomCombo> {
    let mut total = AtomCombo::from_poly(graph_prefactor(g)?);
    for v in 0..g.vertices.len() {
        let b = vertex_factor(g, v)?;
        total = total.mul(&integrate(&g.vertices[v], &b)?)?;
    }
    Ok(total.coeff(0))
}

pub fn graph_contribution(g: &MspGraph, atoms: &AtomTable) -> Result<AtomCombo> {
    Ok(atoms.resolve(&graph_contribution_raw(g)?))
}

pub fn contributions(graphs: &[MspGraph], atoms: &AtomTable) -> Result<Vec<AtomCombo>> {
    graphs.iter().map(|g| graph_contribution(g, atoms)).collect()
}

/// Solves the vanishing of the total contribution for the invariant.
pub fn solve_theta_from(graphs: &[MspGraph], atoms: &AtomTable) -> Result<Rational> {
    let total = contributions(graphs, atoms)?.iter().fold(AtomCombo::zero(), |acc, c| acc.add(c));
    let leftover: Vec<String> = total.atoms().filter(|(a, _)| *a != Atom::Theta).map(|(a, _)| a.to_string()).collect();
    if !leftover.is_empty() {
        return Err(Error::UnresolvedAtoms(leftover.join(", ")));
    }
    let coeff = total.atom_coeff(Atom::Theta).as_constant().filter(|c| !c.is_zero());
    let constant = total.constant().as_constant();
    match (coeff, constant) {
        (Some(c), Some(k)) => Ok(-k / c),
        _ => Err(Error::UnresolvedAtoms(format!("total {total} is not linear in THETA"))),
    }
}

pub fn solve_theta() -> Result<Rational> {
    solve_theta_from(&catalog_graphs(), &AtomTable::standard())
}
