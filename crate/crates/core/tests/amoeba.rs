mod common;

use proptest::prelude::*;
use syz_mirror::amoeba::{amoeba_membership, amoeba_raster, chamber_labeling, tube_distance};
use syz_mirror::laurent::parse_laurent;
use syz_mirror::rational::int;
use syz_mirror::subdivision::{Lifting, RegularSubdivision};

#[test]
fn tropical_limit_agreement() {
    let f = parse_laurent("1 + z1 + z2", 2).unwrap();
    let p = f.newton_polytope().unwrap();
    let curve = RegularSubdivision::new(&p, &Lifting::flat(&p)).unwrap().dual_tropical_curve().unwrap();
    let n = 40;
    for iy in 0..n {
        for ix in 0..n {
            let q = [-4.0 + 8.0 * (ix as f64 + 0.5) / n as f64, -4.0 + 8.0 * (iy as f64 + 0.5) / n as f64];
            if tube_distance(&curve, q) > 1.0 {
                assert!(!amoeba_membership(&f, q, 1e-6).unwrap(), "{q:?} far from the curve");
            }
        }
    }
    // the vertex and samples along each leg
    assert!(amoeba_membership(&f, [0.0, 0.0], 1e-6).unwrap());
    for t in [0.5, 1.5, 3.0] {
        for q in [[t, t], [-t, 0.0], [0.0, -t]] {
            assert!(amoeba_membership(&f, q, 1e-6).unwrap(), "{q:?} on a leg");
        }
    }
}

#[test]
fn kp2_complement_has_four_components() {
    let f = parse_laurent("10 + z1 + z2 + 1/(z1*z2)", 2).unwrap();
    let p = f.newton_polytope().unwrap();
    let mut h = Lifting::flat(&p);
    h.set(&[0, 0], int(-1));
    let curve = RegularSubdivision::new(&p, &h).unwrap().dual_tropical_curve().unwrap();
    let bbox = syz_mirror::amoeba::default_box(&curve, 4.0);
    let raster = amoeba_raster(&f, bbox, 64, 1e-6).unwrap();
    let labels = chamber_labeling(&raster, &f).unwrap();
    let mut got: Vec<Vec<i64>> = labels.chambers.iter().map(|c| c.label.clone()).collect();
    got.sort();
    assert_eq!(got, vec![vec![-1, -1], vec![0, 0], vec![0, 1], vec![1, 0]]);
}

#[test]
fn low_resolution_is_rejected() {
    let f = parse_laurent("1 + z1 + z2", 2).unwrap();
    assert!(amoeba_raster(&f, [-1.0, 1.0, -1.0, 1.0], 8, 1e-6).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(64) })]

    #[test]
    fn membership_is_monotone_in_tol(x in -4.0f64..4.0, y in -4.0f64..4.0, e1 in 1u32..8, de in 1u32..4) {
        let f = parse_laurent("1 + z1 + z2", 2).unwrap();
        let (t1, t2) = (10f64.powi(-(e1 as i32 + de as i32)), 10f64.powi(-(e1 as i32)));
        if amoeba_membership(&f, [x, y], t1).unwrap() {
            prop_assert!(amoeba_membership(&f, [x, y], t2).unwrap());
        }
    }

    #[test]
    fn membership_agrees_with_triangle_oracle_off_the_boundary(x in -4.0f64..4.0, y in -4.0f64..4.0) {
        let f = parse_laurent("1 + z1 + z2", 2).unwrap();
        let near = [-0.05, 0.05]
            .iter()
            .any(|d| common::triangle_oracle(x + d, y) != common::triangle_oracle(x, y)
                || common::triangle_oracle(x, y + d) != common::triangle_oracle(x, y));
        if !near {
            prop_assert_eq!(amoeba_membership(&f, [x, y], 1e-6).unwrap(), common::triangle_oracle(x, y));
        }
    }
}
