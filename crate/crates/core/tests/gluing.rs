use proptest::prelude::*;
use syz_mirror::gluing::{self, stripped_transition_2d, wall_crossing_2d, ChartGluing, ChartId, GluingUnit};
use syz_mirror::lattice::{det, mat_mul};
use syz_mirror::laurent::parse_laurent;
use syz_mirror::rational::{int, ratio};
use syz_mirror::subdivision::{Lifting, RegularSubdivision};
use syz_mirror::toricfan::Fan;

fn unit(n: usize) -> impl Strategy<Value = GluingUnit> {
    ((1i64..9, 1i64..9, any::<bool>()), -3i64..=3, -3i64..=3, prop::collection::vec(-3i64..=3, n))
        .prop_map(|((p, q, neg), a, k, m)| GluingUnit::new(ratio(if neg { -p } else { p }, q), a, k, m).unwrap())
}

fn unimodular(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec((0..n, 0..n, -2i64..=2), 0..8).prop_map(move |ops| {
        let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        for (i, j, c) in ops {
            if i != j {
                let mut e: Vec<Vec<i64>> = (0..n).map(|r| (0..n).map(|s| i64::from(r == s)).collect()).collect();
                e[i][j] = c;
                m = mat_mul(&m, &e);
            }
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(100) })]

    #[test]
    fn units_are_closed_under_product_and_quotient(a in unit(3), b in unit(3)) {
        let p = a.mul(&b);
        prop_assert_eq!(p.w_exp(), a.w_exp() + b.w_exp());
        prop_assert_eq!(p.opw_exp(), a.opw_exp() + b.opw_exp());
        prop_assert_eq!(p.coeff(), &(a.coeff() * b.coeff()));
        let m: Vec<i64> = a.monomial().iter().zip(b.monomial()).map(|(x, y)| x + y).collect();
        prop_assert_eq!(p.monomial(), m.as_slice());
        prop_assert_eq!(p.div(&b), a.clone());
        prop_assert!(a.mul(&a.inv()).is_one());
    }

    #[test]
    fn gluing_inverse_composes_to_identity(m in unimodular(3), scalars in prop::collection::vec(unit(0), 3)) {
        let images: Vec<GluingUnit> = (0..3)
            .map(|j| {
                let col: Vec<i64> = (0..3).map(|i| m[i][j]).collect();
                let s = &scalars[j];
                GluingUnit::new(s.coeff().clone(), s.w_exp(), s.opw_exp(), col).unwrap()
            })
            .collect();
        prop_assume!(det(&m).abs() == 1);
        let g = ChartGluing::new(ChartId::Interval(0), ChartId::Interval(1), images).unwrap();
        let inv = g.inverse().unwrap();
        prop_assert!(g.compose(&inv).unwrap().is_identity());
        prop_assert!(inv.compose(&g).unwrap().is_identity());
    }
}

#[test]
fn singular_monomial_part_is_not_a_gluing() {
    let images = vec![
        GluingUnit::new(int(1), 0, 0, vec![1, 1]).unwrap(),
        GluingUnit::new(int(1), 0, 0, vec![1, 1]).unwrap(),
    ];
    assert!(ChartGluing::new(ChartId::Interval(0), ChartId::Interval(1), images).is_err());
}

#[test]
fn stripped_a1_gluing_is_the_fan_transition() {
    let f = parse_laurent("(z - 2)*(z - 4)", 1).unwrap();
    let p = f.newton_polytope().unwrap();
    let mut h = Lifting::flat(&p);
    h.set(&[1], int(-1));
    let fan = Fan::from_subdivision(&RegularSubdivision::new(&p, &h).unwrap());
    let mut order: Vec<usize> = (0..fan.max_cones().len()).collect();
    order.sort_by_key(|&c| fan.max_cones()[c].iter().map(|&r| fan.rays()[r][0]).min());
    let fan_transition = fan.chart_transition(order[0], order[1]).unwrap();
    assert_eq!(fan_transition, vec![vec![2, -1], vec![1, 0]]);
    for wall in 0..2 {
        assert_eq!(stripped_transition_2d(&wall_crossing_2d(2, wall).unwrap()).unwrap(), fan_transition);
    }
}

#[test]
fn cell_cycles_of_random_liftings_close() {
    let f = parse_laurent("1 + z1 + z2 + z1^2 + z1*z2 + z2^2", 2).unwrap();
    let p = f.newton_polytope().unwrap();
    for seed in 0..10i64 {
        let h = Lifting::from_fn(p.lattice_points(), |a| int((a[0] * 7 + a[1] * 3 + seed).rem_euclid(5)));
        let curve = RegularSubdivision::new(&p, &h).unwrap().dual_tropical_curve().unwrap();
        for cycle in &curve.cycles {
            let n = cycle.len();
            let loop_: Vec<_> = (0..n)
                .map(|i| gluing::wall_crossing_3d(&curve, &cycle[i], &cycle[(i + 1) % n]).unwrap())
                .collect();
            assert!(gluing::verify_cocycle(&loop_).unwrap());
        }
    }
}

#[test]
fn non_adjacent_labels_have_no_gluing() {
    let f = parse_laurent("10 + z1 + z2 + 1/(z1*z2)", 2).unwrap();
    let p = f.newton_polytope().unwrap();
    let curve = RegularSubdivision::new(&p, &Lifting::flat(&p)).unwrap().dual_tropical_curve().unwrap();
    // flat lifting: a single triangle, (0,0) is not a label
    assert!(gluing::wall_crossing_3d(&curve, &[0, 0], &[1, 0]).is_err());
}
