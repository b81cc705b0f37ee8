use cubic_fjrw::m13::{
    parse_mono, table1_grid, M13Class, M13Generator, PairingTable, TABLE1_COLUMNS, TABLE1_ROWS,
};
use cubic_fjrw::rational::{int, rat, Rational};
use proptest::prelude::*;

fn g(x: M13Generator) -> M13Class {
    M13Class::generator(x)
}

fn deg(c: &M13Class) -> Rational {
    PairingTable::standard().m13_degree(c).unwrap()
}

fn boundary() -> [M13Class; 3] {
    [g(M13Generator::DIrr), g(M13Generator::D02), g(M13Generator::D03)]
}

#[test]
fn printed_grid_is_read_back() {
    let t = PairingTable::standard();
    let grid = table1_grid();
    for (r, row) in TABLE1_ROWS.iter().enumerate() {
        for (c, col) in TABLE1_COLUMNS.iter().enumerate() {
            let prod = M13Class::monomial(*row, int(1)).mul(&M13Class::monomial(*col, int(1)));
            assert_eq!(t.m13_degree(&prod).unwrap(), grid[r][c], "row {r} column {c}");
        }
    }
    assert_eq!(deg(&boundary()[0].mul(&boundary()[1]).mul(&boundary()[2])), rat(3, 2));
}

#[test]
fn permutation_symmetry() {
    let b = boundary();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let v = deg(&b[i].mul(&b[j]).mul(&b[k]));
                for (x, y, z) in [(i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)] {
                    assert_eq!(deg(&b[x].mul(&b[y]).mul(&b[z])), v);
                }
            }
        }
    }
}

#[test]
fn repeated_readings_agree() {
    let grid = table1_grid();
    // the triple product appears on the diagonal three times
    assert_eq!(grid[0][0], grid[1][1]);
    assert_eq!(grid[1][1], grid[2][2]);
    // d_irr d02^2 read in row d_irr and in row d02
    assert_eq!(grid[0][3], grid[1][2]);
    // d_irr d03^2 read in row d_irr and in row d03
    assert_eq!(grid[0][4], grid[2][1]);
    // d02 d03^2 read in row d02 and in row d03
    assert_eq!(grid[1][4], grid[2][0]);
    // d02^2 d03 vanishes
    assert_eq!(grid[2][3], int(0));
}

#[test]
fn inconsistent_readings_are_rejected() {
    let m = parse_mono("d_irr*d02*d03").unwrap();
    assert!(PairingTable::from_readings([(m, rat(3, 2)), (m, int(1))], []).is_err());
    let sq = parse_mono("d_irr^2*d02").unwrap();
    assert!(PairingTable::from_readings([(sq, int(1))], []).is_err());
    let low = parse_mono("d02*d03").unwrap();
    assert!(PairingTable::from_readings([(low, int(1))], []).is_err());
}

#[test]
fn d_irr_squared_annihilates() {
    let sq = g(M13Generator::DIrr).pow(2);
    for x in boundary().into_iter().chain([M13Class::kps(), g(M13Generator::NodePsi)]) {
        assert!(sq.mul(&x).is_zero());
    }
}

#[test]
fn kps_expands() {
    assert_eq!(M13Class::kps(), g(M13Generator::D02).add(&g(M13Generator::D03)).neg());
    assert_eq!(g(M13Generator::Kps), M13Class::kps());
    assert_eq!(M13Class::kps().to_string(), "-d02 - d03");
}

#[test]
fn cube_of_the_canonical_class() {
    // (d02 + d03)^3 = 1/8 + 3*0 + 3*(-1/8) + 1/12
    let s = g(M13Generator::D02).add(&g(M13Generator::D03));
    assert_eq!(deg(&s.pow(3)), rat(-1, 6));
    assert_eq!(deg(&M13Class::kps().pow(3)), rat(1, 6));
}

#[test]
fn node_psi_pairings() {
    let t = PairingTable::standard();
    let psi = g(M13Generator::NodePsi);
    let d_irr = g(M13Generator::DIrr);
    assert_eq!(t.m13_degree(&d_irr.mul(&psi).mul(&psi)).unwrap(), int(3));
    assert_eq!(t.m13_degree(&d_irr.mul(&g(M13Generator::D02)).mul(&psi)).unwrap(), int(3));
    assert_eq!(t.m13_degree(&d_irr.mul(&g(M13Generator::D03)).mul(&psi)).unwrap(), int(0));
    assert!(t.m13_degree(&psi.pow(3)).is_err());
}

#[test]
fn json_round_trip() {
    let t = PairingTable::standard();
    assert_eq!(PairingTable::from_json(&t.to_json()).unwrap(), t);
}

#[test]
fn display_is_canonical() {
    let c = g(M13Generator::DIrr)
        .scale(&rat(-1, 36))
        .sub(&g(M13Generator::D02).scale(&rat(1, 3)))
        .sub(&g(M13Generator::D03).scale(&rat(1, 3)));
    assert_eq!(c.to_string(), "-1/36*d_irr - 1/3*d02 - 1/3*d03");
    assert_eq!(M13Class::zero().to_string(), "0");
}

fn linear() -> impl Strategy<Value = M13Class> {
    prop::array::uniform3((-9i64..9, 1i64..5)).prop_map(|cs| {
        boundary()
            .iter()
            .zip(cs)
            .fold(M13Class::zero(), |acc, (b, (n, d))| acc.add(&b.scale(&rat(n, d))))
    })
}

proptest! {
    #[test]
    fn degree_is_trilinear_and_symmetric(x in linear(), y in linear(), z in linear(), w in linear(), n in -5i64..5) {
        let t = PairingTable::standard();
        let d = |c: &M13Class| t.m13_degree(c).unwrap();
        prop_assert_eq!(d(&x.mul(&y).mul(&z)), d(&z.mul(&x).mul(&y)));
        prop_assert_eq!(d(&x.add(&w).mul(&y).mul(&z)), d(&x.mul(&y).mul(&z)) + d(&w.mul(&y).mul(&z)));
        prop_assert_eq!(d(&x.scale(&int(n)).mul(&y).mul(&z)), int(n) * d(&x.mul(&y).mul(&z)));
    }

    #[test]
    fn ring_laws(x in linear(), y in linear(), z in linear()) {
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert!(x.mul(&y).mul(&z).mul(&x).is_zero());
    }
}
