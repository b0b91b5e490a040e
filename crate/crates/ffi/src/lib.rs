//! C interface. Every function returns an [`HfStatus`]; on failure the message
//! is kept per thread and read back with [`hf_last_error`]. Objects cross the
//! boundary as opaque handles that the caller frees with the matching
//! `*_free` function. Strings returned to C are freed with [`hf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use heckeforge::arith::{check_prime, parse_bipoly, parse_factored, FactoredBi};
use heckeforge::curves::canonicalize;
use heckeforge::grass;
use heckeforge::hecke::{Basis, HeckeAlgebra};
use heckeforge::lattice::{hall_number, smith_cartan, working_precision, LatMat, DEFAULT_ENUMERATION_CAP};
use heckeforge::rootdatum::RootDatum;
use heckeforge::symbols::{lemma_exten_check, parshin_sum};
use heckeforge::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    NotPrime = 4,
    /// Input outside the domain of the operation.
    Domain = 5,
    /// A precision, Weyl group or enumeration cap was reached.
    CapExceeded = 6,
    Unsupported = 7,
    /// The output buffer is too small; the needed length was written.
    BufferTooSmall = 8,
    Panic = 9,
}

/// Root datum handle.
pub struct HfRootDatum(RootDatum);

/// Hecke algebra handle.
pub struct HfHecke(HeckeAlgebra);

/// Factored element of `F_p(x, t)`.
pub struct HfFactored(FactoredBi);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> HfStatus {
    match e {
        Error::Syntax { .. } | Error::NegativeExponent { .. } => HfStatus::Syntax,
        Error::NotPrime(_) => HfStatus::NotPrime,
        Error::PrecisionCap { .. } | Error::WeylCap { .. } | Error::EnumerationCap { .. } | Error::NoStabilization { .. } => {
            HfStatus::CapExceeded
        }
        Error::UnsupportedGroup(_) | Error::UnsupportedFactor(_) | Error::TransitionUnavailable(_) => HfStatus::Unsupported,
        _ => HfStatus::Domain,
    }
}

struct Fail(HfStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> HfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            HfStatus::Ok
        }
        Ok(Err(Fail(s, m))) => {
            set_error(m);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            HfStatus::Panic
        }
    }
}

fn null() -> Fail {
    Fail(HfStatus::NullPointer, "null pointer argument".into())
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s).to_str().map_err(|_| Fail(HfStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn slice<'a, T>(p: *const T, len: usize) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null());
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(null)
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(null)
}

/// Copies `data` into `buf` when `cap` allows, always reporting the length.
unsafe fn fill<T: Copy>(data: &[T], buf: *mut T, cap: usize, len_out: *mut usize) -> Result<(), Fail> {
    *out(len_out)? = data.len();
    if data.len() > cap {
        return Err(Fail(HfStatus::BufferTooSmall, format!("need room for {} values", data.len())));
    }
    if !data.is_empty() {
        if buf.is_null() {
            return Err(null());
        }
        ptr::copy_nonoverlapping(data.as_ptr(), buf, data.len());
    }
    Ok(())
}

/// Copies the calling thread's last error message, NUL-terminated, into `buf`.
/// Returns the message length excluding the terminator; pass `cap = 0` to query it.
///
/// # Safety
/// `buf` must point to `cap` writable bytes when `cap > 0`.
#[no_mangle]
pub unsafe extern "C" fn hf_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let m = e.borrow();
        if cap > 0 && !buf.is_null() {
            let n = m.len().min(cap - 1);
            ptr::copy_nonoverlapping(m.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        m.len()
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn hf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn give_string(s: String, dst: *mut *mut c_char) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(HfStatus::Domain, "interior NUL".into()))?;
    *out(dst)? = c.into_raw();
    Ok(())
}

/// Parses a group name such as `GL3`, `PGL2`, `B2` or `G2`.
///
/// # Safety
/// `name` is a NUL-terminated string; `out_handle` is writable.
#[no_mangle]
pub unsafe extern "C" fn hf_root_datum_new(name: *const c_char, out_handle: *mut *mut HfRootDatum) -> HfStatus {
    guard(|| {
        let dst = out(out_handle)?;
        let d = RootDatum::parse(text(name)?)?;
        *dst = Box::into_raw(Box::new(HfRootDatum(d)));
        Ok(())
    })
}

/// # Safety
/// `h` comes from [`hf_root_datum_new`] and is not used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn hf_root_datum_free(h: *mut HfRootDatum) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Semisimple rank and coweight length.
///
/// # Safety
/// `h` is a live handle; the outputs are writable.
#[no_mangle]
pub unsafe extern "C" fn hf_root_datum_rank(h: *const HfRootDatum, rank: *mut usize, coweight_len: *mut usize) -> HfStatus {
    guard(|| {
        let d = &handle(h)?.0;
        *out(rank)? = d.rank();
        *out(coweight_len)? = d.lattice_rank();
        Ok(())
    })
}

/// Point count of the orbit `Gr^lambda` as polynomial coefficients in `q`, lowest first.
///
/// # Safety
/// `lambda` holds `len` values; `coeffs` has room for `cap` values; `coeffs_len` is writable.
#[no_mangle]
pub unsafe extern "C" fn hf_orbit_count(
    h: *const HfRootDatum,
    lambda: *const i64,
    len: usize,
    coeffs: *mut i64,
    cap: usize,
    coeffs_len: *mut usize,
) -> HfStatus {
    guard(|| {
        let p = grass::orbit_count(&handle(h)?.0, slice(lambda, len)?)?;
        fill(p.coeffs(), coeffs, cap, coeffs_len)
    })
}

/// # Safety
/// `d` is a live root datum handle; it is copied, so it may be freed afterwards.
#[no_mangle]
pub unsafe extern "C" fn hf_hecke_new(d: *const HfRootDatum, out_handle: *mut *mut HfHecke) -> HfStatus {
    guard(|| {
        let dst = out(out_handle)?;
        let datum = handle(d)?.0.clone();
        *dst = Box::into_raw(Box::new(HfHecke(HeckeAlgebra::new(datum))));
        Ok(())
    })
}

/// # Safety
/// `h` comes from [`hf_hecke_new`] and is not used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn hf_hecke_free(h: *mut HfHecke) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Product of two basis elements (`basis` is `'A'` or `'T'`) as a JSON string.
///
/// # Safety
/// `lambda` and `mu` hold `len` values each; `json` receives a string for [`hf_string_free`].
#[no_mangle]
pub unsafe extern "C" fn hf_hecke_mul_json(
    h: *const HfHecke,
    basis: c_char,
    lambda: *const i64,
    mu: *const i64,
    len: usize,
    json: *mut *mut c_char,
) -> HfStatus {
    guard(|| {
        let alg = &handle(h)?.0;
        let b = match basis as u8 {
            b'A' => Basis::A,
            b'T' => Basis::T,
            _ => return Err(Fail(HfStatus::Domain, "basis must be 'A' or 'T'".into())),
        };
        let x = alg.basis_element(b, slice(lambda, len)?)?;
        let y = alg.basis_element(b, slice(mu, len)?)?;
        let prod = alg.mul(&x, &y)?;
        give_string(serde_json::to_string(&prod).expect("serializable"), json)
    })
}

/// Parses a factored element such as `x^2 * (x + t)^-1` over `F_p`.
///
/// # Safety
/// `expr` is a NUL-terminated string; `out_handle` is writable.
#[no_mangle]
pub unsafe extern "C" fn hf_factored_parse(expr: *const c_char, p: u64, out_handle: *mut *mut HfFactored) -> HfStatus {
    guard(|| {
        let dst = out(out_handle)?;
        let f = parse_factored(text(expr)?, check_prime(p)?)?;
        *dst = Box::into_raw(Box::new(HfFactored(f)));
        Ok(())
    })
}

/// # Safety
/// `h` comes from [`hf_factored_parse`] and is not used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn hf_factored_free(h: *mut HfFactored) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Sum of the flag boundary values of `(f, g)` over all flags through the origin.
///
/// # Safety
/// `f` and `g` are live handles; `total` is writable.
#[no_mangle]
pub unsafe extern "C" fn hf_parshin_total(f: *const HfFactored, g: *const HfFactored, total: *mut i64) -> HfStatus {
    guard(|| {
        let r = parshin_sum(&handle(f)?.0, &handle(g)?.0)?;
        *out(total)? = r.total;
        Ok(())
    })
}

/// Both sides of the two-flag identity for an axis-supported pair.
///
/// # Safety
/// `f` and `g` are live handles; the outputs are writable.
#[no_mangle]
pub unsafe extern "C" fn hf_lemma_exten(
    f: *const HfFactored,
    g: *const HfFactored,
    lhs: *mut i64,
    rhs: *mut i64,
    ok: *mut bool,
) -> HfStatus {
    guard(|| {
        let c = lemma_exten_check(&handle(f)?.0, &handle(g)?.0)?;
        *out(lhs)? = c.lhs;
        *out(rhs)? = c.rhs;
        *out(ok)? = c.ok;
        Ok(())
    })
}

/// Coefficients `s_0 .. s_{prec-1}` of the curve `x = s(t)` cut out by `poly`.
///
/// # Safety
/// `poly` is a NUL-terminated string; `coeffs` has room for `cap` values.
#[no_mangle]
pub unsafe extern "C" fn hf_canonicalize(
    poly: *const c_char,
    p: u64,
    prec: usize,
    coeffs: *mut u32,
    cap: usize,
    coeffs_len: *mut usize,
) -> HfStatus {
    guard(|| {
        let f = parse_bipoly(text(poly)?, check_prime(p)?)?;
        let c = canonicalize(&f, prec)?;
        fill(&c.coeffs(), coeffs, cap, coeffs_len)
    })
}

/// Cartan invariant of an `n x n` matrix of polynomials in `x`, given as a JSON
/// array of rows of coefficient lists, e.g. `[[[0,1],[1]],[[0],[0,0,1]]]`.
///
/// # Safety
/// `matrix_json` is a NUL-terminated string; `cartan` has room for `cap` values.
#[no_mangle]
pub unsafe extern "C" fn hf_smith(
    matrix_json: *const c_char,
    p: u64,
    cartan: *mut i64,
    cap: usize,
    cartan_len: *mut usize,
) -> HfStatus {
    guard(|| {
        let entries: Vec<Vec<Vec<i64>>> = serde_json::from_str(text(matrix_json)?)
            .map_err(|e| Fail(HfStatus::Syntax, format!("matrix is not a nested coefficient list: {e}")))?;
        let degree: usize = entries.iter().flatten().map(Vec::len).max().unwrap_or(0);
        let prec = working_precision((degree * entries.len().max(1)) as i64);
        let m = LatMat::from_coeff_lists(check_prime(p)?, &entries, prec)?;
        fill(&smith_cartan(&m)?, cartan, cap, cartan_len)
    })
}

/// Hall number `g^nu_{lambda mu}(q)` for `GL(n)`, by sublattice enumeration.
///
/// # Safety
/// `lambda`, `mu` and `nu` hold `n` values each; `count` is writable.
#[no_mangle]
pub unsafe extern "C" fn hf_hall_number(
    lambda: *const i64,
    mu: *const i64,
    nu: *const i64,
    n: usize,
    q: u32,
    count: *mut u64,
) -> HfStatus {
    guard(|| {
        *out(count)? = hall_number(slice(lambda, n)?, slice(mu, n)?, slice(nu, n)?, q, DEFAULT_ENUMERATION_CAP)?;
        Ok(())
    })
}
