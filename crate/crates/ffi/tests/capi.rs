use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use syz_mirror_ffi::*;

fn parse(expr: &str, dim: usize) -> *mut SyzPolynomial {
    let c = CString::new(expr).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { syz_polynomial_parse(c.as_ptr(), dim, &mut p) }, SyzStatus::Ok);
    assert!(!p.is_null());
    p
}

fn take_string(s: *mut libc::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { syz_string_free(s) };
    out
}

fn last_error() -> String {
    let e = syz_last_error();
    assert!(!e.is_null());
    unsafe { CStr::from_ptr(e) }.to_string_lossy().into_owned()
}

#[test]
fn parse_eval_and_free() {
    let p = parse("1 + z1 + z2", 2);
    assert_eq!(unsafe { syz_polynomial_dim(p) }, 2);
    let (re, im) = ([1.0, 2.0], [0.0, 1.0]);
    let (mut a, mut b) = (0.0, 0.0);
    let s = unsafe { syz_polynomial_eval(p, re.as_ptr(), im.as_ptr(), 2, &mut a, &mut b) };
    assert_eq!(s, SyzStatus::Ok);
    assert!((a - 4.0).abs() < 1e-12 && (b - 1.0).abs() < 1e-12);
    let s = unsafe { syz_polynomial_eval(p, re.as_ptr(), im.as_ptr(), 1, &mut a, &mut b) };
    assert_eq!(s, SyzStatus::InvalidInput);
    unsafe { syz_polynomial_free(p) };
}

#[test]
fn syntax_errors_set_last_error() {
    let c = CString::new("1 + + z").unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { syz_polynomial_parse(c.as_ptr(), 1, &mut p) }, SyzStatus::Parse);
    assert!(p.is_null());
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { syz_polynomial_parse(ptr::null(), 1, &mut p) }, SyzStatus::NullPointer);
}

#[test]
fn amoeba_membership() {
    let p = parse("1 + z1 + z2", 2);
    let mut inside = false;
    assert_eq!(unsafe { syz_amoeba_membership(p, 0.0, 0.0, 1e-6, &mut inside) }, SyzStatus::Ok);
    assert!(inside);
    assert_eq!(unsafe { syz_amoeba_membership(p, -3.0, -3.0, 1e-6, &mut inside) }, SyzStatus::Ok);
    assert!(!inside);
    unsafe { syz_polynomial_free(p) };
}

#[test]
fn mirror_report_json() {
    let p = parse("z1 + z2 + z1^-1*z2^-1 + 10", 2);
    let mut out = ptr::null_mut();
    let lifting = CString::new(r#"{"(0,0)": -1}"#).unwrap();
    assert_eq!(unsafe { syz_mirror_report(p, lifting.as_ptr(), &mut out) }, SyzStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(v["rays"].as_array().unwrap().len(), 4);
    unsafe { syz_polynomial_free(p) };
}

#[test]
fn base_and_transform_2d() {
    let p = parse("(z - 2)*(z - 4)", 1);
    let mut base = ptr::null_mut();
    assert_eq!(unsafe { syz_base2d_new(p, ptr::null(), 0, &mut base) }, SyzStatus::Ok);
    assert_eq!(unsafe { syz_base2d_wall_count(base) }, 2);
    let mut walls = [0.0; 2];
    assert_eq!(unsafe { syz_base2d_walls(base, walls.as_mut_ptr(), 2) }, SyzStatus::Ok);
    assert!((walls[0] - 2f64.ln()).abs() < 1e-9 && (walls[1] - 4f64.ln()).abs() < 1e-9);

    let values = [0i64, 1];
    let mut bundle = ptr::null_mut();
    assert_eq!(unsafe { syz_transform2d(base, values.as_ptr(), 2, &mut bundle) }, SyzStatus::Ok);
    let mut d = 0;
    assert_eq!(unsafe { syz_bundle_degree(bundle, &mut d) }, SyzStatus::Ok);
    assert_eq!(d.abs(), 1);
    assert!(!unsafe { syz_bundle_is_structure_sheaf(bundle) });
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { syz_bundle_json(bundle, &mut out) }, SyzStatus::Ok);
    assert!(take_string(out).contains("cocycle"));
    unsafe { syz_bundle_free(bundle) };

    let mut bundle = ptr::null_mut();
    assert_eq!(unsafe { syz_transform2d(base, values.as_ptr(), 1, &mut bundle) }, SyzStatus::InvalidInput);
    unsafe { syz_base2d_free(base) };
    unsafe { syz_polynomial_free(p) };
}

#[test]
fn equal_moduli_is_a_math_error() {
    let p = parse("(z - 1)*(z + 1)", 1);
    let mut base = ptr::null_mut();
    assert_eq!(unsafe { syz_base2d_new(p, ptr::null(), 0, &mut base) }, SyzStatus::Math);
    assert!(base.is_null());
    unsafe { syz_polynomial_free(p) };
}

#[test]
fn transform_3d_zero_section_and_validation() {
    let p = parse("1 + z1 + z2", 2);
    let mut curve = ptr::null_mut();
    assert_eq!(unsafe { syz_curve_new(p, ptr::null(), &mut curve) }, SyzStatus::Ok);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { syz_curve_json(curve, &mut out) }, SyzStatus::Ok);
    let cv: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    let legs = cv["legs"].as_array().unwrap();
    assert_eq!(legs.len(), 3);

    let zero: Vec<_> = legs
        .iter()
        .flat_map(|l| {
            let (a, b) = (l["alpha"].clone(), l["beta"].clone());
            [
                serde_json::json!({"alpha": a, "beta": b, "n": 0}),
                serde_json::json!({"alpha": b, "beta": a, "n": 0}),
            ]
        })
        .collect();
    let section = CString::new(serde_json::json!({ "legs": zero }).to_string()).unwrap();
    let mut bundle = ptr::null_mut();
    assert_eq!(unsafe { syz_transform3d(curve, section.as_ptr(), &mut bundle) }, SyzStatus::Ok);
    assert!(unsafe { syz_bundle_is_structure_sheaf(bundle) });
    let mut d = 0;
    assert_eq!(unsafe { syz_bundle_degree(bundle, &mut d) }, SyzStatus::NotAvailable);
    unsafe { syz_bundle_free(bundle) };

    let bad = CString::new(r#"{"legs": []}"#).unwrap();
    let mut bundle = ptr::null_mut();
    assert_eq!(unsafe { syz_transform3d(curve, bad.as_ptr(), &mut bundle) }, SyzStatus::Validation);
    let msg = last_error();
    assert!(msg.contains("coverage"), "{msg}");
    unsafe { syz_curve_free(curve) };
    unsafe { syz_polynomial_free(p) };
}

#[test]
fn null_handles_are_rejected() {
    let mut inside = false;
    assert_eq!(unsafe { syz_amoeba_membership(ptr::null(), 0.0, 0.0, 1e-6, &mut inside) }, SyzStatus::NullPointer);
    assert_eq!(unsafe { syz_polynomial_dim(ptr::null()) }, 0);
    unsafe {
        syz_polynomial_free(ptr::null_mut());
        syz_string_free(ptr::null_mut());
    }
    assert!(!unsafe { CStr::from_ptr(syz_version()) }.to_bytes().is_empty());
}

#[test]
fn header_declares_the_api() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/syz_mirror.h");
    let h = std::fs::read_to_string(&path).unwrap();
    for name in [
        "syz_last_error",
        "syz_string_free",
        "syz_polynomial_parse",
        "syz_amoeba_membership",
        "syz_mirror_report",
        "syz_base2d_new",
        "syz_curve_new",
        "syz_transform2d",
        "syz_transform3d",
        "syz_bundle_degree",
        "typedef struct SyzPolynomial SyzPolynomial",
        "SYZ_STATUS_OK = 0",
    ] {
        assert!(h.contains(name), "header lacks {name}");
    }
    // Compile check when a C compiler is around.
    if let Ok(out) = Command::new("cc").args(["-fsyntax-only", "-x", "c"]).arg(&path).output() {
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
}
