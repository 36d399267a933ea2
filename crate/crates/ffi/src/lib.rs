//! C ABI for `syz-mirror`.
//!
//! Objects cross the boundary as opaque handles created by `*_new`/`*_parse`
//! and released by the matching `*_free`. Every fallible call returns a
//! [`SyzStatus`]; on failure [`syz_last_error`] describes the cause. Strings
//! returned through `char **` are owned by the caller and released with
//! [`syz_string_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::{c_char, size_t};
use num_complex::Complex64;
use serde_json::Value;

use syz_mirror::fibration::{self, ConicFibrationSpace, SYZBase2D};
use syz_mirror::laurent::{parse_laurent, LaurentPolynomial};
use syz_mirror::subdivision::{DualTropicalCurve, Lifting, RegularSubdivision};
use syz_mirror::transform::{self, MirrorLineBundle, TropicalSection3D};
use syz_mirror::{amoeba, cli, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SyzStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    /// A mathematical precondition failed (equal root moduli, singular fiber, ...).
    Math = 5,
    /// A section or gluing failed validation.
    Validation = 6,
    NotAvailable = 7,
    Panic = 8,
}

pub struct SyzPolynomial {
    inner: LaurentPolynomial,
}

pub struct SyzBase2D {
    inner: SYZBase2D,
}

pub struct SyzCurve {
    inner: DualTropicalCurve,
}

pub struct SyzBundle {
    inner: MirrorLineBundle,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn status_of(e: &Error) -> SyzStatus {
    match e {
        Error::Syntax { .. } | Error::Json(_) => SyzStatus::Parse,
        Error::EqualModulusRoots { .. }
        | Error::SingularFiber { .. }
        | Error::OffHypersurface { .. }
        | Error::UnresolvedComponents { .. }
        | Error::NotInvertible { .. }
        | Error::RootFinding(_) => SyzStatus::Math,
        Error::InvalidSection { .. } | Error::CocycleFailure { .. } | Error::NonAdjacentLabels { .. } => {
            SyzStatus::Validation
        }
        _ => SyzStatus::InvalidInput,
    }
}

/// Runs `f`, recording errors and converting panics.
fn guard(f: impl FnOnce() -> Result<(), SyzStatus>) -> SyzStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SyzStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            SyzStatus::Panic
        }
    }
}

fn fail(e: Error) -> SyzStatus {
    set_error(e.to_string());
    status_of(&e)
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, SyzStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(SyzStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        SyzStatus::InvalidUtf8
    })
}

unsafe fn read_json_opt(p: *const c_char) -> Result<Option<Value>, SyzStatus> {
    if p.is_null() {
        return Ok(None);
    }
    let s = read_str(p)?;
    serde_json::from_str(s).map(Some).map_err(|e| fail(e.into()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, SyzStatus> {
    p.as_ref().ok_or_else(|| {
        set_error("null handle");
        SyzStatus::NullPointer
    })
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), SyzStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(SyzStatus::NullPointer);
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), SyzStatus> {
    let c = CString::new(s).map_err(|_| {
        set_error("output contains a NUL byte");
        SyzStatus::InvalidInput
    })?;
    put(out, c.into_raw())
}

/// Message of the last failed call on this thread, or NULL. Valid until the next failure.
#[no_mangle]
pub extern "C" fn syz_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn syz_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn syz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a Laurent polynomial in `z1..z{dim}` (`z` when `dim = 1`).
///
/// # Safety
/// `expr` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn syz_polynomial_parse(expr: *const c_char, dim: size_t, out: *mut *mut SyzPolynomial) -> SyzStatus {
    guard(|| {
        let text = read_str(expr)?;
        let inner = parse_laurent(text, dim).map_err(fail)?;
        put(out, Box::into_raw(Box::new(SyzPolynomial { inner })))
    })
}

/// # Safety
/// `p` must come from [`syz_polynomial_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn syz_polynomial_free(p: *mut SyzPolynomial) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn syz_polynomial_dim(p: *const SyzPolynomial) -> size_t {
    p.as_ref().map_or(0, |p| p.inner.dim())
}

/// Evaluates at `(re[i] + i·im[i])`, `n = dim` coordinates.
///
/// # Safety
/// `re`, `im` must hold `n` doubles; the outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn syz_polynomial_eval(
    p: *const SyzPolynomial,
    re: *const f64,
    im: *const f64,
    n: size_t,
    out_re: *mut f64,
    out_im: *mut f64,
) -> SyzStatus {
    guard(|| {
        let p = handle(p)?;
        if re.is_null() || im.is_null() {
            set_error("null coordinate array");
            return Err(SyzStatus::NullPointer);
        }
        if n != p.inner.dim() {
            return Err(fail(Error::DimensionMismatch {
                expected: p.inner.dim(),
                found: n,
            }));
        }
        let re = std::slice::from_raw_parts(re, n);
        let im = std::slice::from_raw_parts(im, n);
        let z: Vec<Complex64> = re.iter().zip(im).map(|(a, b)| Complex64::new(*a, *b)).collect();
        let v = p.inner.eval(&z);
        put(out_re, v.re)?;
        put(out_im, v.im)
    })
}

/// Whether `(x, y)` lies in the amoeba of a two-variable polynomial.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn syz_amoeba_membership(p: *const SyzPolynomial, x: f64, y: f64, tol: f64, out: *mut bool) -> SyzStatus {
    guard(|| {
        let p = handle(p)?;
        let inside = amoeba::amoeba_membership(&p.inner, [x, y], tol).map_err(fail)?;
        put(out, inside)
    })
}

unsafe fn subdivision(p: &SyzPolynomial, lifting_json: *const c_char) -> Result<RegularSubdivision, SyzStatus> {
    let polytope = p.inner.newton_polytope().map_err(fail)?;
    let mut lifting = Lifting::flat(&polytope);
    if let Some(v) = read_json_opt(lifting_json)? {
        for (point, h) in Lifting::from_json(&v).map_err(fail)?.heights() {
            lifting.set(point.as_slice(), h.clone());
        }
    }
    RegularSubdivision::new(&polytope, &lifting).map_err(fail)
}

/// Fan report JSON for the subdivision induced by `lifting_json` (NULL: flat lifting).
///
/// # Safety
/// `p` must be a live handle, `lifting_json` NULL or a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn syz_mirror_report(p: *const SyzPolynomial, lifting_json: *const c_char, out: *mut *mut c_char) -> SyzStatus {
    guard(|| {
        let p = handle(p)?;
        let sub = subdivision(p, lifting_json)?;
        let (report, _) = cli::mirror_report(&p.inner, &sub);
        put_string(out, report.to_string())
    })
}

/// 2d base of `xy = f(z)`; `moduli` may be NULL to compute root moduli numerically.
///
/// # Safety
/// `p` must be a live one-variable handle; `moduli` NULL or `n` doubles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn syz_base2d_new(p: *const SyzPolynomial, moduli: *const f64, n: size_t, out: *mut *mut SyzBase2D) -> SyzStatus {
    guard(|| {
        let p = handle(p)?;
        let given = (!moduli.is_null()).then(|| std::slice::from_raw_parts(moduli, n));
        let space = ConicFibrationSpace::new(p.inner.clone());
        let inner = fibration::base_2d(&space, given).map_err(fail)?;
        put(out, Box::into_raw(Box::new(SyzBase2D { inner })))
    })
}

/// # Safety
/// `b` must come from [`syz_base2d_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn syz_base2d_free(b: *mut SyzBase2D) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// # Safety
/// `b` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn syz_base2d_wall_count(b: *const SyzBase2D) -> size_t {
    b.as_ref().map_or(0, |b| b.inner.wall_count())
}

/// Copies up to `cap` wall positions into `out`.
///
/// # Safety
/// `b` must be a live handle and `out` must hold `cap` doubles.
#[no_mangle]
pub unsafe extern "C" fn syz_base2d_walls(b: *const SyzBase2D, out: *mut f64, cap: size_t) -> SyzStatus {
    guard(|| {
        let b = handle(b)?;
        if out.is_null() {
            set_error("null output pointer");
            return Err(SyzStatus::NullPointer);
        }
        for (i, w) in b.inner.walls.iter().take(cap).enumerate() {
            out.add(i).write(*w);
        }
        Ok(())
    })
}

/// Dual tropical curve of a two-variable polynomial (`lifting_json` NULL: flat).
///
/// # Safety
/// `p` must be a live handle, `lifting_json` NULL or a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn syz_curve_new(p: *const SyzPolynomial, lifting_json: *const c_char, out: *mut *mut SyzCurve) -> SyzStatus {
    guard(|| {
        let p = handle(p)?;
        let inner = subdivision(p, lifting_json)?.dual_tropical_curve().map_err(fail)?;
        put(out, Box::into_raw(Box::new(SyzCurve { inner })))
    })
}

/// # Safety
/// `c` must come from [`syz_curve_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn syz_curve_free(c: *mut SyzCurve) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn syz_curve_json(c: *const SyzCurve, out: *mut *mut c_char) -> SyzStatus {
    guard(|| {
        let c = handle(c)?;
        let text = serde_json::to_string(&c.inner).map_err(|e| fail(e.into()))?;
        put_string(out, text)
    })
}

/// Transform of a 2d section given by one integer per wall.
///
/// # Safety
/// `b` must be a live handle, `values` must hold `n` integers, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn syz_transform2d(b: *const SyzBase2D, values: *const i64, n: size_t, out: *mut *mut SyzBundle) -> SyzStatus {
    guard(|| {
        let b = handle(b)?;
        let values: &[i64] = if n == 0 {
            &[]
        } else if values.is_null() {
            set_error("null wall values");
            return Err(SyzStatus::NullPointer);
        } else {
            std::slice::from_raw_parts(values, n)
        };
        let inner = transform::syz_transform_2d(values, &b.inner).map_err(fail)?;
        put(out, Box::into_raw(Box::new(SyzBundle { inner })))
    })
}

/// Transform of a 3d tropical section `{"legs": [{"alpha", "beta", "n"}]}`.
///
/// # Safety
/// `c` must be a live handle, `section_json` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn syz_transform3d(c: *const SyzCurve, section_json: *const c_char, out: *mut *mut SyzBundle) -> SyzStatus {
    guard(|| {
        let c = handle(c)?;
        let v = read_json_opt(section_json)?.ok_or_else(|| {
            set_error("null section");
            SyzStatus::NullPointer
        })?;
        let s = TropicalSection3D::from_json(&v).map_err(fail)?;
        let inner = transform::syz_transform_3d(&s, &c.inner).map_err(fail)?;
        put(out, Box::into_raw(Box::new(SyzBundle { inner })))
    })
}

/// # Safety
/// `b` must come from a transform call and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn syz_bundle_free(b: *mut SyzBundle) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Degree on the exceptional curve; `SYZ_STATUS_NOT_AVAILABLE` unless the base has two walls.
///
/// # Safety
/// `b` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn syz_bundle_degree(b: *const SyzBundle, out: *mut i64) -> SyzStatus {
    guard(|| {
        let b = handle(b)?;
        match b.inner.degree {
            Some(d) => put(out, d),
            None => {
                set_error("degree is only defined for a base with two walls");
                Err(SyzStatus::NotAvailable)
            }
        }
    })
}

/// # Safety
/// `b` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn syz_bundle_is_structure_sheaf(b: *const SyzBundle) -> bool {
    b.as_ref().is_some_and(|b| b.inner.structure_sheaf)
}

/// # Safety
/// `b` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn syz_bundle_json(b: *const SyzBundle, out: *mut *mut c_char) -> SyzStatus {
    guard(|| {
        let b = handle(b)?;
        put_string(out, b.inner.report().to_string())
    })
}
