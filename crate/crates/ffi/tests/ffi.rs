use std::ffi::{c_char, CStr, CString};
use std::ptr;

use heckeforge_ffi::*;

fn last_error() -> String {
    let mut buf = vec![0 as c_char; 256];
    unsafe { hf_last_error(buf.as_mut_ptr(), buf.len()) };
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned()
}

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

#[test]
fn root_datum_and_orbit_count() {
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { hf_root_datum_new(c("GL2").as_ptr(), &mut d) }, HfStatus::Ok);
    let (mut rank, mut len) = (0, 0);
    assert_eq!(unsafe { hf_root_datum_rank(d, &mut rank, &mut len) }, HfStatus::Ok);
    assert_eq!((rank, len), (1, 2));
    let lam = [2i64, 0];
    let mut coeffs = [0i64; 4];
    let mut n = 0;
    assert_eq!(unsafe { hf_orbit_count(d, lam.as_ptr(), 2, coeffs.as_mut_ptr(), 4, &mut n) }, HfStatus::Ok);
    assert_eq!(&coeffs[..n], &[0, 1, 1]);
    assert_eq!(unsafe { hf_orbit_count(d, lam.as_ptr(), 2, coeffs.as_mut_ptr(), 1, &mut n) }, HfStatus::BufferTooSmall);
    assert_eq!(n, 3);
    let bad = [0i64, 1];
    assert_eq!(unsafe { hf_orbit_count(d, bad.as_ptr(), 2, coeffs.as_mut_ptr(), 4, &mut n) }, HfStatus::Domain);
    assert!(last_error().contains("dominant"), "{}", last_error());
    unsafe { hf_root_datum_free(d) };
}

#[test]
fn errors_and_null_handling() {
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { hf_root_datum_new(c("E9").as_ptr(), &mut d) }, HfStatus::Unsupported);
    assert!(d.is_null());
    assert_eq!(unsafe { hf_root_datum_new(ptr::null(), &mut d) }, HfStatus::NullPointer);
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { hf_factored_parse(c("x").as_ptr(), 6, &mut f) }, HfStatus::NotPrime);
    assert_eq!(unsafe { hf_factored_parse(c("x +* t").as_ptr(), 5, &mut f) }, HfStatus::Syntax);
    let needed = unsafe { hf_last_error(ptr::null_mut(), 0) };
    assert!(needed > 0);
    unsafe {
        hf_root_datum_free(ptr::null_mut());
        hf_factored_free(ptr::null_mut());
        hf_hecke_free(ptr::null_mut());
        hf_string_free(ptr::null_mut());
    }
    assert!(!unsafe { CStr::from_ptr(hf_version()) }.to_str().unwrap().is_empty());
}

#[test]
fn symbols() {
    let parse = |s: &str| {
        let mut h = ptr::null_mut();
        assert_eq!(unsafe { hf_factored_parse(c(s).as_ptr(), 5, &mut h) }, HfStatus::Ok);
        h
    };
    let (x, xt, m) = (parse("x"), parse("x + t"), parse("x^2 * t^-1 * (1 + x)"));
    let mut total = 7;
    assert_eq!(unsafe { hf_parshin_total(x, xt, &mut total) }, HfStatus::Ok);
    assert_eq!(total, 0);
    let (mut lhs, mut rhs, mut ok) = (0, 0, false);
    assert_eq!(unsafe { hf_lemma_exten(x, m, &mut lhs, &mut rhs, &mut ok) }, HfStatus::Ok);
    assert_eq!((lhs, rhs, ok), (-1, -1, true));
    assert_eq!(unsafe { hf_lemma_exten(x, xt, &mut lhs, &mut rhs, &mut ok) }, HfStatus::Domain);
    unsafe {
        hf_factored_free(x);
        hf_factored_free(xt);
        hf_factored_free(m);
    }
}

#[test]
fn curves_lattices_and_hecke() {
    let mut s = [0u32; 8];
    let mut n = 0;
    assert_eq!(unsafe { hf_canonicalize(c("x + t + x*t").as_ptr(), 5, 6, s.as_mut_ptr(), 8, &mut n) }, HfStatus::Ok);
    assert_eq!(&s[..n], &[0, 4, 1, 4, 1, 4]);
    assert_eq!(unsafe { hf_canonicalize(c("1 + x").as_ptr(), 5, 6, s.as_mut_ptr(), 8, &mut n) }, HfStatus::Domain);

    let mut cartan = [0i64; 2];
    assert_eq!(unsafe { hf_smith(c("[[[0,1],[1]],[[0],[0,0,1]]]").as_ptr(), 3, cartan.as_mut_ptr(), 2, &mut n) }, HfStatus::Ok);
    assert_eq!(cartan, [3, 0]);
    assert_eq!(unsafe { hf_smith(c("[[1,").as_ptr(), 3, cartan.as_mut_ptr(), 2, &mut n) }, HfStatus::Syntax);

    let mut count = 0;
    assert_eq!(unsafe { hf_hall_number([1, 0].as_ptr(), [1, 0].as_ptr(), [1, 1].as_ptr(), 2, 3, &mut count) }, HfStatus::Ok);
    assert_eq!(count, 4);

    let mut d = ptr::null_mut();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { hf_root_datum_new(c("GL2").as_ptr(), &mut d) }, HfStatus::Ok);
    assert_eq!(unsafe { hf_hecke_new(d, &mut h) }, HfStatus::Ok);
    unsafe { hf_root_datum_free(d) };
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { hf_hecke_mul_json(h, b'T' as c_char, [1, 0].as_ptr(), [1, 0].as_ptr(), 2, &mut json) }, HfStatus::Ok);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    unsafe { hf_string_free(json) };
    assert_eq!(
        text,
        r#"{"group":"GL2","basis":"T","terms":[{"coweight":[1,1],"coeffs":{"2":1,"4":1}},{"coweight":[2,0],"coeffs":{"0":1}}]}"#
    );
    assert_eq!(unsafe { hf_hecke_mul_json(h, b'Q' as c_char, [1, 0].as_ptr(), [1, 0].as_ptr(), 2, &mut json) }, HfStatus::Domain);
    unsafe { hf_hecke_free(h) };
}
