//! The eight fixed-locus graphs of type `(g, l, d0, d_inf) = (1, 0, 0, 1)`.

use super::{AtomBinding, Level, MspEdge, MspGraph, MspVertex, NumericalType, VertexKind};
use crate::atoms::Atom;
use crate::rational::{int, rat, Rational};

fn spin_inf(genus: u32, dim: u32, bindings: Vec<AtomBinding>) -> MspVertex {
    MspVertex::stable(Level::Infinity, genus, dim, bindings)
}

/// Genus-one spin vertex with a single node.
fn spin_g1_one_node() -> MspVertex {
    spin_inf(
        1,
        1,
        vec![
            AtomBinding::new("ch1", Atom::ICh1, int(1)),
            AtomBinding::new("psi1", Atom::IPsiSpin11, int(1)),
        ],
    )
}

/// Genus-one vertex at level one, on the moduli of one-pointed elliptic curves.
fn elliptic() -> MspVertex {
    MspVertex::stable(
        Level::One,
        1,
        1,
        vec![
            AtomBinding::new("lambda1", Atom::HodgeLambda1, int(1)),
            AtomBinding::new("lambda1v", Atom::HodgeLambda1, int(-1)),
            AtomBinding::new("psi1", Atom::PsiM11, int(1)),
        ],
    )
}

fn u(level: Level, kind: VertexKind) -> MspVertex {
    MspVertex::unstable(level, kind)
}

fn e(d: Rational, upper: usize, lower: usize) -> MspEdge {
    MspEdge::infinity(d, upper, lower)
}

fn graph(id: usize, vertices: Vec<MspVertex>, edges: Vec<MspEdge>, aut_order: u32) -> MspGraph {
    let numerical_type = NumericalType { g: 1, gamma: vec![], d0: int(0), d_inf: int(1) };
    MspGraph { id, vertices, edges, aut_order, numerical_type }
}

pub fn catalog_graphs() -> Vec<MspGraph> {
    use Level::{Infinity as Inf, One};
    use VertexKind::{U01, U02};
    let third = || rat(-1, 3);
    let two_thirds = || rat(-2, 3);
    vec![
        // the three legs may be permuted
        graph(
            0,
            vec![
                spin_inf(1, 0, vec![AtomBinding::new("1", Atom::Theta, int(1))]),
                u(One, U01),
                u(One, U01),
                u(One, U01),
            ],
            vec![e(two_thirds(), 0, 1), e(two_thirds(), 0, 2), e(two_thirds(), 0, 3)],
            6,
        ),
        graph(1, vec![spin_g1_one_node(), u(One, U01)], vec![e(rat(-4, 3), 0, 1)], 1),
        graph(
            2,
            vec![spin_g1_one_node(), u(One, U02), u(Inf, U01)],
            vec![e(third(), 0, 1), e(int(-1), 2, 1)],
            1,
        ),
        graph(
            3,
            vec![spin_g1_one_node(), u(One, U02), u(Inf, U02), u(One, U01)],
            vec![e(third(), 0, 1), e(third(), 2, 1), e(two_thirds(), 2, 3)],
            1,
        ),
        graph(
            4,
            vec![
                spin_inf(0, 0, vec![AtomBinding::new("1", Atom::IG0112, int(1))]),
                u(One, U02),
                u(One, U01),
            ],
            vec![e(third(), 0, 1), e(third(), 0, 1), e(two_thirds(), 0, 2)],
            2,
        ),
        graph(5, vec![u(One, U02), u(Inf, U02)], vec![e(third(), 1, 0), e(two_thirds(), 1, 0)], 1),
        graph(6, vec![u(Inf, U01), elliptic()], vec![e(int(-1), 0, 1)], 1),
        graph(
            7,
            vec![elliptic(), u(Inf, U02), u(One, U01)],
            vec![e(third(), 1, 0), e(two_thirds(), 1, 2)],
            1,
        ),
    ]
}
