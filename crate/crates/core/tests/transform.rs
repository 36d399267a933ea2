mod common;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use syz_mirror::fibration::SYZBase2D;
use syz_mirror::laurent::parse_laurent;
use syz_mirror::rational::{int, ratio};
use syz_mirror::subdivision::{DualTropicalCurve, Lifting, RegularSubdivision};
use syz_mirror::transform::{
    intersection_number_2d, syz_transform_2d, syz_transform_3d, validate_tropical_section, wall_values_from_path,
    winding_degree, AdmissiblePath2D, TropicalSection3D,
};
use syz_mirror::Error;

fn kp2_curve() -> DualTropicalCurve {
    let f = parse_laurent("10 + z1 + z2 + 1/(z1*z2)", 2).unwrap();
    let p = f.newton_polytope().unwrap();
    let mut h = Lifting::flat(&p);
    h.set(&[0, 0], int(-1));
    RegularSubdivision::new(&p, &h).unwrap().dual_tropical_curve().unwrap()
}

fn polyline() -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-6.0f64..6.0, -3.0f64..3.0), 2..12)
        .prop_map(|v| v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(64) })]

    #[test]
    fn degree_equals_intersection_number(path in polyline()) {
        let base = SYZBase2D::from_moduli(&[2.0, 4.0]).unwrap();
        let ap = AdmissiblePath2D::new(path, [2.0, 4.0]).unwrap();
        let Ok(inter) = intersection_number_2d(&ap) else { return Ok(()) };
        let values = wall_values_from_path(&ap, &[2.0, 4.0]).unwrap();
        let bundle = syz_transform_2d(&values, &base).unwrap();
        prop_assert_eq!(bundle.degree, Some(inter));
        prop_assert!(bundle.bundle.verify_cocycle());
    }

    #[test]
    fn winding_is_additive_under_concatenation(a in polyline(), b in polyline()) {
        let mut b = b;
        b[0] = *a.last().unwrap();
        let (Ok(wa), Ok(wb)) = (winding_degree(&a), winding_degree(&b)) else { return Ok(()) };
        let joined: Vec<Complex64> = a.iter().chain(b.iter().skip(1)).copied().collect();
        prop_assert_eq!(winding_degree(&joined).unwrap(), wa + wb);
    }

    #[test]
    fn transform_is_a_tensor_functor(m1 in prop::collection::vec(-3i64..=3, 2), m2 in prop::collection::vec(-3i64..=3, 2)) {
        let curve = kp2_curve();
        let (s1, s2) = (TropicalSection3D::constant(&curve, &m1), TropicalSection3D::constant(&curve, &m2));
        let b1 = syz_transform_3d(&s1, &curve).unwrap();
        let b2 = syz_transform_3d(&s2, &curve).unwrap();
        let b12 = syz_transform_3d(&s1.add(&s2), &curve).unwrap();
        prop_assert_eq!(&b12.bundle, &b1.bundle.tensor(&b2.bundle).unwrap());
        for ((x, y), z) in b1.wall_factors.iter().zip(&b2.wall_factors).zip(&b12.wall_factors) {
            prop_assert_eq!(&z.2, &x.2.mul(&y.2));
        }
        prop_assert_eq!(b12.structure_sheaf, m1.iter().zip(&m2).all(|(a, b)| a + b == 0));
    }
}

#[test]
fn zero_section_of_c_star_has_degree_zero() {
    let path: Vec<Complex64> = (0..50).map(|i| Complex64::from_polar(1.0 + 0.1 * i as f64, 0.3)).collect();
    assert_eq!(winding_degree(&path).unwrap(), 0);
}

#[test]
fn argument_principle_recovers_exponents() {
    for n in -3i32..=3 {
        let w = common::argument_principle(|w| (Complex64::new(1.0, 0.0) + w).powi(-n), 1024);
        assert!((-w - n as f64).abs() < 1e-3);
    }
}

#[test]
fn sheet_oracle_matches_transform_on_radial_paths() {
    let base = SYZBase2D::from_moduli(&[2.0, 4.0]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let path = common::radial_spiral(&mut rng, 1.0, 6.0);
        let want = common::sheet_at_radius(&path, 4.0) - common::sheet_at_radius(&path, 2.0);
        let ap = AdmissiblePath2D::new(path, [2.0, 4.0]).unwrap();
        let values = wall_values_from_path(&ap, &[2.0, 4.0]).unwrap();
        assert_eq!(syz_transform_2d(&values, &base).unwrap().degree, Some(want));
    }
}

#[test]
fn simplex_constant_section_has_expected_factors() {
    let f = parse_laurent("1 + z1 + z2", 2).unwrap();
    let p = f.newton_polytope().unwrap();
    let curve = RegularSubdivision::new(&p, &Lifting::flat(&p)).unwrap().dual_tropical_curve().unwrap();
    let b = syz_transform_3d(&TropicalSection3D::constant(&curve, &[1, 0]), &curve).unwrap();
    let mut exps: Vec<i64> = b.wall_factors.iter().map(|(_, _, u)| u.opw_exp().abs()).collect();
    exps.sort();
    assert_eq!(exps, vec![0, 1, 1]);
    assert!(b.bundle.verify_cocycle());
    assert!(!b.structure_sheaf);
}

#[test]
fn gradient_sections_are_integral_and_valid() {
    let curve = kp2_curve();
    let s = TropicalSection3D::from_gradient(&curve, |_| vec![int(2), int(-1)]);
    validate_tropical_section(&s, &curve).unwrap();
    let half = TropicalSection3D::from_gradient(&curve, |_| vec![ratio(1, 2), int(0)]);
    assert!(matches!(
        validate_tropical_section(&half, &curve),
        Err(Error::InvalidSection { ref constraint, .. }) if constraint == "integrality"
    ));
}

#[test]
fn invalid_sections_are_rejected_before_construction() {
    let curve = kp2_curve();
    let mut v = TropicalSection3D::constant(&curve, &[1, 2]).to_json();
    let legs = v["legs"].as_array_mut().unwrap();
    let n = legs[0]["n"].as_i64().unwrap();
    legs[0]["n"] = json!(n + 1);
    let s = TropicalSection3D::from_json(&v).unwrap();
    assert!(matches!(syz_transform_3d(&s, &curve), Err(Error::InvalidSection { .. })));
}

#[test]
fn wall_count_mismatch_is_rejected() {
    let base = SYZBase2D::from_moduli(&[2.0, 4.0]).unwrap();
    assert!(matches!(syz_transform_2d(&[0], &base), Err(Error::WallCountMismatch { .. })));
}
