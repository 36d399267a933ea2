use proptest::prelude::*;
use syz_mirror::laurent::parse_laurent;
use syz_mirror::rational::{int, ratio};
use syz_mirror::subdivision::{LatticePolytope, Lifting, RegularSubdivision};

fn polygon() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec((0i64..=3, 0i64..=3), 3..7).prop_map(|v| v.into_iter().map(|(a, b)| vec![a, b]).collect())
}

fn subdivision(points: &[Vec<i64>], heights: &[i64]) -> Option<RegularSubdivision> {
    let p = LatticePolytope::from_points(2, points).ok()?;
    let h = Lifting::from_fn(p.lattice_points(), |a| {
        let k = (a[0] * 4 + a[1]).rem_euclid(heights.len() as i64) as usize;
        int(heights[k])
    });
    RegularSubdivision::new(&p, &h).ok()
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(48) })]

    #[test]
    fn cell_volumes_sum_to_polytope_volume(pts in polygon(), hs in prop::collection::vec(0i64..6, 16)) {
        let Some(s) = subdivision(&pts, &hs) else { return Ok(()) };
        let total: i64 = (0..s.cells().len()).map(|c| s.cell_volume(c)).sum();
        prop_assert_eq!(total, s.polytope().normalized_volume());
    }

    #[test]
    fn legs_match_boundary_edges(pts in polygon(), hs in prop::collection::vec(0i64..6, 16)) {
        let Some(s) = subdivision(&pts, &hs) else { return Ok(()) };
        let curve = s.dual_tropical_curve().unwrap();
        prop_assert_eq!(curve.legs.len(), s.boundary_edges().len());
        prop_assert_eq!(curve.bounded_edges.len(), s.interior_edges().len());
        let lengths: i64 = s.boundary_edges().iter().map(|e| e.lattice_length).sum();
        let weights: i64 = curve.legs.iter().map(|l| l.weight).sum();
        prop_assert_eq!(lengths, weights);
    }

    #[test]
    fn random_points_are_covered(pts in polygon(), hs in prop::collection::vec(0i64..6, 16), probes in prop::collection::vec((0i64..=30, 0i64..=30), 20)) {
        let Some(s) = subdivision(&pts, &hs) else { return Ok(()) };
        for (a, b) in probes {
            let p = [ratio(a, 10), ratio(b, 10)];
            if !s.polytope().contains_rational(&p) {
                continue;
            }
            let cells = s.locate(&p);
            prop_assert!(!cells.is_empty());
            if cells.len() == 2 {
                prop_assert!(s.shared_face(cells[0], cells[1]).is_some());
            }
        }
    }
}

#[test]
fn kp2_interior_lifting_gives_three_triangles() {
    let f = parse_laurent("10 + z1 + z2 + 1/(z1*z2)", 2).unwrap();
    let p = f.newton_polytope().unwrap();
    let mut h = Lifting::flat(&p);
    h.set(&[0, 0], int(-1));
    let s = RegularSubdivision::new(&p, &h).unwrap();
    assert_eq!(s.cells().len(), 3);
    assert!(s.is_unimodular().unwrap());
    let curve = s.dual_tropical_curve().unwrap();
    assert_eq!(curve.vertices.len(), 3);
    assert_eq!(curve.bounded_edges.len(), 3);
}

#[test]
fn tied_lifting_keeps_polygonal_cell() {
    let p = LatticePolytope::from_points(2, &[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
    let s = RegularSubdivision::new(&p, &Lifting::flat(&p)).unwrap();
    assert_eq!(s.cells().len(), 1);
    assert!(s.is_unimodular().is_err());
}
