use proptest::prelude::*;
use syz_mirror::lattice::{identity, mat_mul};
use syz_mirror::rational::int;
use syz_mirror::subdivision::{LatticePolytope, Lifting, RegularSubdivision};
use syz_mirror::toricfan::Fan;

fn random_fan(points: &[(i64, i64)], heights: &[i64]) -> Option<(RegularSubdivision, Fan)> {
    let pts: Vec<Vec<i64>> = points.iter().map(|&(a, b)| vec![a, b]).collect();
    let p = LatticePolytope::from_points(2, &pts).ok()?;
    let h = Lifting::from_fn(p.lattice_points(), |a| {
        int(heights[(a[0] * 3 + a[1] * 5).rem_euclid(heights.len() as i64) as usize])
    });
    let s = RegularSubdivision::new(&p, &h).ok()?;
    let fan = Fan::from_subdivision(&s);
    Some((s, fan))
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(20) })]

    #[test]
    fn smoothness_matches_unimodularity(
        pts in prop::collection::vec((-2i64..=2, -2i64..=2), 3..6),
        hs in prop::collection::vec(0i64..5, 7),
    ) {
        let Some((s, fan)) = random_fan(&pts, &hs) else { return Ok(()) };
        prop_assert_eq!(fan.is_smooth(), s.is_unimodular().unwrap_or(false));
        prop_assert_eq!(fan.calabi_yau_certificate(), Some(vec![0, 0, 1]));
        prop_assert!(fan.has_convex_support());
    }

    #[test]
    fn chart_transitions_close_on_triples(
        pts in prop::collection::vec((-2i64..=2, -2i64..=2), 3..7),
        hs in prop::collection::vec(0i64..7, 11),
    ) {
        let Some((_, fan)) = random_fan(&pts, &hs) else { return Ok(()) };
        if !fan.is_smooth() {
            return Ok(());
        }
        let n = fan.max_cones().len();
        let shares_facet = |a: usize, b: usize| {
            fan.max_cones()[a].iter().filter(|r| fan.max_cones()[b].contains(r)).count() == 2
        };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if a == b || b == c || a == c || !(shares_facet(a, b) && shares_facet(b, c) && shares_facet(c, a)) {
                        continue;
                    }
                    let m = mat_mul(
                        &mat_mul(&fan.chart_transition(a, b).unwrap(), &fan.chart_transition(b, c).unwrap()),
                        &fan.chart_transition(c, a).unwrap(),
                    );
                    prop_assert_eq!(m, identity(3));
                }
            }
        }
    }
}

#[test]
fn non_unimodular_triangle_is_singular() {
    let p = LatticePolytope::from_points(2, &[vec![0, 0], vec![2, 1], vec![1, 2]]).unwrap();
    let mut h = Lifting::flat(&p);
    h.set(&[1, 1], int(1));
    let s = RegularSubdivision::new(&p, &h).unwrap();
    let fan = Fan::from_subdivision(&s);
    assert!(!s.is_unimodular().unwrap());
    assert!(!fan.is_smooth());
    assert_eq!(fan.calabi_yau_certificate(), Some(vec![0, 0, 1]));
}

#[test]
fn chart_of_singular_cone_is_an_error() {
    let fan = Fan::new(2, vec![vec![1, 0], vec![1, 2]], vec![vec![0, 1]]).unwrap();
    assert!(!fan.is_smooth());
    assert!(fan.chart(0).is_err());
    assert!(fan.cone(3).is_err());
}
