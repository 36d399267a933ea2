mod common;

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use syz_mirror::fibration::{
    base_2d, circle_action, fiber_lagrangian_residual, fiber_residual_for, moment_map, symplectic_form, syz_fibration_2d,
    BaseCoordinate, ConicFibrationSpace,
};
use syz_mirror::laurent::{parse_laurent, CRational, LaurentPolynomial};
use syz_mirror::rational::ratio;
use syz_mirror::Error;

fn point(rng: &mut ChaCha8Rng, f: &LaurentPolynomial) -> [Complex64; 3] {
    loop {
        let z = Complex64::from_polar(rng.gen_range(0.5..8.0), rng.gen_range(0.0..TAU));
        let x = Complex64::from_polar(rng.gen_range(0.3..3.0), rng.gen_range(0.0..TAU));
        let fz = f.eval(&[z]);
        if fz.norm() > 0.1 {
            return [x, fz / x, z];
        }
    }
}

fn a1() -> (LaurentPolynomial, ConicFibrationSpace) {
    let f = parse_laurent("(z - 2)*(z - 4)", 1).unwrap();
    (f.clone(), ConicFibrationSpace::new(f))
}

fn real(v: &[Complex64; 3]) -> [f64; 6] {
    [v[0].re, v[0].im, v[1].re, v[1].im, v[2].re, v[2].im]
}

#[test]
fn fibration_is_circle_invariant() {
    let (f, space) = a1();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..5 {
        let p = point(&mut rng, &f);
        let base = syz_fibration_2d(&space, p).unwrap();
        for _ in 0..20 {
            let q = circle_action(p, rng.gen_range(0.0..TAU));
            let b = syz_fibration_2d(&space, q).unwrap();
            for k in 0..2 {
                assert!((b[k] - base[k]).abs() <= 1e-12 * base[k].abs().max(1.0), "{b:?} vs {base:?}");
            }
        }
    }
}

#[test]
fn moment_map_is_the_hamiltonian() {
    let (f, _) = a1();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let i = Complex64::i();
    for _ in 0..20 {
        let p = point(&mut rng, &f);
        let v = [i * p[0], -i * p[1], Complex64::new(0.0, 0.0)];
        let u: [Complex64; 3] = std::array::from_fn(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        // exact for a quadratic up to round-off
        let h = 1e-3;
        let mu = |s: f64| moment_map(p[0] + u[0] * s, p[1] + u[1] * s);
        let dmu = (mu(h) - mu(-h)) / (2.0 * h);
        let iv = symplectic_form(&p, &real(&v), &real(&u));
        assert!((dmu - iv).abs() < 1e-8 * iv.abs().max(1.0), "dmu {dmu} vs omega(V, u) {iv}");
    }
}

#[test]
fn walls_are_invariant_under_unit_scaling() {
    let (f, space) = a1();
    let c = CRational::new(ratio(3, 5), ratio(4, 5));
    let g = ConicFibrationSpace::new(f.scale(&c).unwrap());
    let (b1, b2) = (base_2d(&space, None).unwrap(), base_2d(&g, None).unwrap());
    assert_eq!(b1.chambers.len(), b2.chambers.len());
    for (a, b) in b1.walls.iter().zip(&b2.walls) {
        assert!((a - b).abs() < 1e-12);
    }
}

#[test]
fn closed_form_frame_agrees_with_svd_frame() {
    let (f, space) = a1();
    let df = f.partial_derivative(0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let p = point(&mut rng, &f);
        let frame = common::fiber_frame(p[0], p[1], p[2], df.eval(&[p[2]]));
        assert!(common::frame_residual(p[2], &frame) < 1e-12);
        assert!(fiber_lagrangian_residual(&space, p, 1e-9).unwrap() < 1e-8);
    }
}

#[test]
fn pinched_fiber_is_singular() {
    let (_, space) = a1();
    let p = [Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(2.0, 0.0)];
    assert!(matches!(fiber_lagrangian_residual(&space, p, 1e-9), Err(Error::SingularFiber { .. })));
}

#[test]
fn log_modulus_and_real_x_is_not_lagrangian() {
    let (f, space) = a1();
    let mut rng = ChaCha8Rng::seed_from_u64(91);
    let p = point(&mut rng, &f);
    let r = fiber_residual_for(&space, p, [BaseCoordinate::LogAbsZ, BaseCoordinate::RealX], 1e-9).unwrap();
    assert!(r > 1e-2, "residual {r}");
}

/// `Re z` Poisson-commutes with `μ` (it does not involve `x, y`), so this map has
/// Lagrangian fibers and the residual is at round-off level.
#[test]
#[ignore = "the (Re z, mu) map is Lagrangian; the control cannot exceed 1e-2"]
fn fiber_control_real_z_is_not_lagrangian() {
    let (f, space) = a1();
    let mut rng = ChaCha8Rng::seed_from_u64(91);
    let p = point(&mut rng, &f);
    let r = fiber_residual_for(&space, p, [BaseCoordinate::RealZ, BaseCoordinate::Moment], 1e-9).unwrap();
    assert!(r > 1e-2, "residual {r}");
}

#[test]
fn equal_moduli_are_rejected() {
    let f = parse_laurent("(z - 1)*(z + 1)", 1).unwrap();
    assert!(matches!(
        base_2d(&ConicFibrationSpace::new(f), None),
        Err(Error::EqualModulusRoots { .. })
    ));
}
