use cubic_fjrw::m13::{M13Class, M13Generator, PairingTable};
use cubic_fjrw::props::{self, sum_totals};
use cubic_fjrw::rational::{int, rat, Rational};
use cubic_fjrw::tables::Tables;
use cubic_fjrw::threespin::{
    bernoulli2, chiodo_c1, push_degree, reduce_self_intersections, st_pullback, st_pullback_class,
    st_pushforward, virtual_class, Boundary, NodeFamily, StratumData, WClass, WGenerator,
};
use cubic_fjrw::Error;
use proptest::prelude::*;

fn w(g: WGenerator) -> WClass {
    WClass::generator(g)
}

fn m(g: M13Generator) -> M13Class {
    M13Class::generator(g)
}

fn data() -> StratumData {
    StratumData::standard()
}

fn binom(n: u32, k: u32) -> i64 {
    (1..=k).fold(1i64, |acc, i| acc * (n - k + i) as i64 / i as i64)
}

#[test]
fn bernoulli_polynomial() {
    let numbers = [int(1), rat(-1, 2), rat(1, 6)];
    for x in [int(0), rat(1, 3), rat(2, 3), rat(5, 7), int(-2)] {
        let mut direct = Rational::from_integer(0.into());
        for (k, b) in numbers.iter().enumerate() {
            let mut p = int(binom(2, k as u32)) * b;
            for _ in 0..(2 - k) {
                p *= &x;
            }
            direct += p;
        }
        assert_eq!(bernoulli2(&x), direct);
        assert_eq!(bernoulli2(&x), bernoulli2(&(int(1) - &x)));
    }
    assert_eq!(bernoulli2(&int(0)), rat(1, 6));
    assert_eq!(bernoulli2(&rat(1, 3)), rat(-1, 18));
}

#[test]
fn chern_class_coefficients() {
    let c = chiodo_c1();
    assert_eq!(c.coeff_of(WGenerator::Kps), rat(-1, 36));
    assert_eq!(c.coeff_of(WGenerator::D02), rat(1, 12));
    assert_eq!(c.coeff_of(WGenerator::D03), rat(-1, 12));
    assert_eq!(c.coeff_of(WGenerator::Dirr0), rat(1, 12));
    // Dirr1 and Dirr2 are the same class, each with -1/12
    assert_eq!(c.coeff_of(WGenerator::Dirr1), rat(-1, 6));
}

#[test]
fn virtual_class_matches_closed_form() {
    let s = WClass::s();
    assert_eq!(s, w(WGenerator::Dirr0).sub(&w(WGenerator::Dirr1)).sub(&w(WGenerator::Dirr2)));
    let expect = w(WGenerator::Kps)
        .scale(&rat(1, 36))
        .sub(&s.scale(&rat(1, 12)))
        .sub(&w(WGenerator::D02).scale(&rat(1, 12)))
        .add(&w(WGenerator::D03).scale(&rat(1, 12)))
        .sub(&w(WGenerator::D03_0).scale(&int(3)));
    assert_eq!(virtual_class(), expect);
    assert_eq!(virtual_class().coeff_of(WGenerator::D03_0), int(-3));
    assert_eq!(virtual_class().coeff_of(WGenerator::Kps), rat(1, 36));
    assert_eq!(virtual_class().coeff_of(WGenerator::D03), rat(1, 12));
}

#[test]
fn pullbacks() {
    assert_eq!(
        st_pullback(M13Generator::DIrr).unwrap(),
        w(WGenerator::Dirr0).add(&w(WGenerator::Dirr1).scale(&int(6)))
    );
    assert_eq!(st_pullback(M13Generator::D03).unwrap(), w(WGenerator::D03).scale(&int(3)));
    assert_eq!(st_pullback(M13Generator::D02).unwrap(), w(WGenerator::D02));
    assert!(matches!(st_pullback(M13Generator::NodePsi), Err(Error::InvalidPullback(_))));
    let kps = st_pullback_class(&M13Class::kps()).unwrap();
    assert_eq!(kps, w(WGenerator::D02).add(&w(WGenerator::D03).scale(&int(3))).neg());
}

#[test]
fn self_intersection_examples() {
    let d = data();
    let node03 = w(WGenerator::NodePsi(NodeFamily::Sep03));
    assert_eq!(
        reduce_self_intersections(&w(WGenerator::D03).pow(2), &d).unwrap(),
        w(WGenerator::D03).mul(&node03).scale(&rat(-1, 3))
    );
    assert!(reduce_self_intersections(&w(WGenerator::PullIrr).pow(2), &d).unwrap().is_zero());

    let d0 = w(WGenerator::Dirr0);
    let p = w(WGenerator::PullIrr);
    let s2 = d0.pow(2).scale(&rat(16, 9)).sub(&d0.mul(&p).scale(&rat(8, 9)));
    let s3 = d0.pow(3).scale(&rat(64, 27)).sub(&d0.pow(2).mul(&p).scale(&rat(16, 9)));
    let s = WClass::s();
    assert_eq!(reduce_self_intersections(&s.pow(2), &d).unwrap(), reduce_self_intersections(&s2, &d).unwrap());
    assert_eq!(reduce_self_intersections(&s.pow(3), &d).unwrap(), reduce_self_intersections(&s3, &d).unwrap());
    let node_irr = w(WGenerator::NodePsi(NodeFamily::Irr));
    assert_eq!(
        reduce_self_intersections(&s.pow(2), &d).unwrap(),
        d0.mul(&node_irr).scale(&rat(-16, 9)).sub(&d0.mul(&p).scale(&rat(8, 9)))
    );
}

#[test]
fn pushforward_examples() {
    let t = Tables::standard();
    let d03 = w(WGenerator::D03);
    let pushed = st_pushforward(&reduce_self_intersections(&d03.pow(2), &t.strata).unwrap(), &t.strata).unwrap();
    assert_eq!(t.pairing.m13_degree(&pushed.mul(&M13Class::kps())).unwrap(), rat(1, 72));

    let row = |a: WClass, coeff: i64| int(coeff) * push_degree(&a, &t.strata, &t.pairing).unwrap();
    let s = WClass::s();
    assert_eq!(row(s.mul(&w(WGenerator::D02)).mul(&w(WGenerator::D03_0)), 72), int(12));
    assert_eq!(row(w(WGenerator::D03_0).pow(3), -36 * 36 * 36), int(-48));
    assert_eq!(push_degree(&w(WGenerator::D02), &t.strata, &t.pairing).unwrap(), int(0));
}

#[test]
fn stratum_degrees() {
    let d = data();
    assert_eq!(*d.deg_st(), int(3));
    assert_eq!(d.mplus(Boundary::D02), 1);
    assert_eq!(d.mplus(Boundary::D03), 3);
    assert_eq!(d.mplus(Boundary::D03_0), 3);
    assert_eq!(d.mplus(Boundary::Dirr0), 1);
    assert_eq!(d.mplus(Boundary::Dirr1), 3);
    assert_eq!(d.image(Boundary::D03_0), M13Generator::D03);
    let one = |b| st_pushforward(&WClass::generator(b), &d).unwrap();
    assert_eq!(one(WGenerator::Dirr0), m(M13Generator::DIrr));
    assert_eq!(one(WGenerator::Dirr1), m(M13Generator::DIrr).scale(&rat(1, 3)));
    assert_eq!(one(WGenerator::Dirr2), m(M13Generator::DIrr).scale(&rat(1, 3)));
    assert_eq!(one(WGenerator::D02), m(M13Generator::D02).scale(&int(3)));
    assert_eq!(one(WGenerator::D03), m(M13Generator::D03));
    assert_eq!(one(WGenerator::D03_0), m(M13Generator::D03).scale(&rat(1, 9)));
}

#[test]
fn projection_formula_kills_dirr0_times_pulled_back_irr() {
    let d = data();
    let base = w(WGenerator::Dirr0).mul(&w(WGenerator::PullIrr));
    let gens = [
        WGenerator::Dirr0,
        WGenerator::Dirr1,
        WGenerator::Dirr2,
        WGenerator::D02,
        WGenerator::D03,
        WGenerator::D03_0,
        WGenerator::Kps,
        WGenerator::PullIrr,
        WGenerator::NodePsi(NodeFamily::Irr),
        WGenerator::NodePsi(NodeFamily::Sep02),
        WGenerator::NodePsi(NodeFamily::Sep03),
    ];
    for g in gens {
        let c = base.mul(&w(g));
        assert!(st_pushforward(&c, &d).unwrap().is_zero(), "{g:?}");
    }
}

#[test]
fn projection_formula_for_pulled_back_classes() {
    // st_*(st^*a * X) = a * st_*X
    let t = Tables::standard();
    let d = &t.strata;
    let xs = [
        w(WGenerator::D02),
        w(WGenerator::D03),
        w(WGenerator::D03_0),
        w(WGenerator::Dirr1),
        w(WGenerator::D02).mul(&w(WGenerator::D03)),
        w(WGenerator::D02).mul(&w(WGenerator::D03_0)),
    ];
    let pulled = [
        (w(WGenerator::Kps), M13Class::kps()),
        (w(WGenerator::PullIrr), m(M13Generator::DIrr)),
    ];
    for x in &xs {
        let down = st_pushforward(&reduce_self_intersections(x, d).unwrap(), d).unwrap();
        for (up, a) in &pulled {
            let lhs = st_pushforward(&reduce_self_intersections(&up.mul(x), d).unwrap(), d).unwrap();
            assert_eq!(lhs, a.mul(&down), "{x} times {up}");
        }
    }
}

#[test]
fn unsupported_strata_error() {
    let mut j = Tables::standard().to_json();
    j.strata.deg3.remove("Dirr0*D02*D03");
    let broken = serde_json::to_string(&cubic_fjrw::tables::TablesJson { pairing: j.pairing, strata: j.strata });
    match Tables::from_json_str(&broken.unwrap()) {
        Err(e) => assert!(e.to_string().contains("Dirr0*D02*D03"), "{e}"),
        Ok(t) => {
            let c = w(WGenerator::Dirr0).mul(&w(WGenerator::D02)).mul(&w(WGenerator::D03));
            let e = st_pushforward(&c, &t.strata).unwrap_err();
            assert!(e.to_string().contains("Dirr0*D02*D03"), "{e}");
        }
    }
    let node = w(WGenerator::NodePsi(NodeFamily::Sep02)).mul(&w(WGenerator::D03));
    assert!(matches!(st_pushforward(&node, &data()), Err(Error::UnsupportedStratum(_))));
}

#[test]
fn degree_is_truncated_above_three() {
    let d02 = w(WGenerator::D02);
    assert!(d02.pow(4).is_zero());
    assert!(WClass::monomial([0, 0, 4, 0, 0, 0, 0, 0, 0, 0], int(1)).is_err());
}

#[test]
fn table_two_rows() {
    let b = props::breakdown(&Tables::standard()).unwrap();
    let expect = [int(0), rat(2, 9), int(-8), rat(-3, 8), rat(-1, 4), int(1), rat(1, 72), rat(-1, 9), int(2)];
    assert_eq!(b.table2.len(), expect.len());
    for (row, e) in b.table2.iter().zip(&expect) {
        assert_eq!(&row.total, e, "{}", row.label);
    }
}

#[test]
fn table_three_rows() {
    let b = props::breakdown(&Tables::standard()).unwrap();
    let expect = [
        rat(-1, 2),
        rat(-1, 3),
        int(12),
        rat(-1, 54),
        rat(4, 3),
        int(-24),
        rat(-3, 8),
        int(0),
        int(0),
        rat(1, 8),
        int(-1),
        int(18),
        rat(1, 108),
        rat(-1, 9),
        int(4),
        int(-48),
    ];
    assert_eq!(b.table3.len(), expect.len());
    for (row, e) in b.table3.iter().zip(&expect) {
        assert_eq!(&row.total, e, "{}", row.label);
    }
    // the first six rows are S T^2, the rest T^3
    assert_eq!(sum_totals(&b.table3[..6]), b.g4);
    assert_eq!(sum_totals(&b.table3[6..]), b.g5);
}

#[test]
fn proposition_values() {
    let b = props::breakdown(&Tables::standard()).unwrap();
    let scale = rat(1, 1728);
    assert_eq!(b.prop1, rat(2, 27) * &scale);
    assert_eq!(b.prop2, rat(-11, 2) * &scale);
    assert_eq!(b.prop3, rat(389, 54) * &scale);
    assert_eq!(b.prop4_s3, rat(64, 9));
    assert_eq!(b.prop4_mixed, rat(64, 3));
    assert_eq!(b.g4, rat(-23, 2) - rat(1, 54));
    assert_eq!(b.g5, int(-27) - rat(19, 54));
    // the parts of prop 1: 1/54 + 1/18
    assert_eq!(b.prop1, (rat(1, 54) + rat(1, 18)) * &scale);
    assert_eq!(b.assembled(), b.theta);
    // table 2 sums to the bracket of prop 2 after the K/36 prefactor
    assert_eq!(sum_totals(&b.table2) * rat(3, 36) * rat(1, 144), b.prop2);
}

#[test]
fn theta_from_intersection_theory() {
    assert_eq!(props::theta_three_spin(&Tables::standard()).unwrap(), rat(1, 108));
}

#[test]
fn max_group_pushforward() {
    let t = Tables::standard();
    let expect = m(M13Generator::DIrr)
        .scale(&rat(-1, 36))
        .sub(&m(M13Generator::D02).scale(&rat(1, 3)))
        .sub(&m(M13Generator::D03).scale(&rat(1, 3)));
    assert_eq!(props::max_group_pushforward(&t).unwrap(), expect);
}

#[test]
fn max_group_cube_by_hand() {
    // (a d_irr + b (d02 + d03))^3 = 3 a b^2 d_irr (d02 + d03)^2 + b^3 (d02 + d03)^3
    let p = PairingTable::standard();
    let s = m(M13Generator::D02).add(&m(M13Generator::D03));
    let mixed = p.m13_degree(&m(M13Generator::DIrr).mul(&s.pow(2))).unwrap();
    let pure = p.m13_degree(&s.pow(3)).unwrap();
    assert_eq!(mixed, int(1));
    assert_eq!(pure, rat(-1, 6));
    let (a, b) = (rat(-1, 36), rat(-1, 3));
    let hand = int(3) * &a * &b * &b * mixed + &b * &b * &b * pure;
    assert_eq!(props::theta_max_group(&Tables::standard()).unwrap(), hand);
}

fn w_linear() -> impl Strategy<Value = WClass> {
    let gens = [
        WGenerator::Dirr0,
        WGenerator::Dirr1,
        WGenerator::D02,
        WGenerator::D03,
        WGenerator::D03_0,
        WGenerator::Kps,
    ];
    prop::array::uniform6(-6i64..6).prop_map(move |cs| {
        gens.iter().zip(cs).fold(WClass::zero(), |acc, (g, c)| acc.add(&w(*g).scale(&int(c))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn push_degree_is_linear(x in w_linear(), y in w_linear(), z in w_linear(), u in w_linear(), n in -4i64..4) {
        let t = Tables::standard();
        let d = |c: &WClass| push_degree(c, &t.strata, &t.pairing).unwrap();
        let lhs = d(&x.scale(&int(n)).add(&u).mul(&y).mul(&z));
        prop_assert_eq!(lhs, int(n) * d(&x.mul(&y).mul(&z)) + d(&u.mul(&y).mul(&z)));
        prop_assert_eq!(d(&x.mul(&y).mul(&z)), d(&z.mul(&y).mul(&x)));
    }

    #[test]
    fn w_ring_laws(x in w_linear(), y in w_linear(), z in w_linear()) {
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
    }
}
