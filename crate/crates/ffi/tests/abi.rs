use std::ffi::{CStr, CString};
use std::ptr;

use tropical_marginal_ffi::*;

const SANDWICH: &str = include_str!("../../core/fixtures/sandwich_4x4.json");

fn last_error() -> String {
    unsafe { CStr::from_ptr(tm_last_error()).to_string_lossy().into_owned() }
}

#[test]
fn matrix_round_trip_and_product() {
    unsafe {
        let mut a = ptr::null_mut();
        let mut b = ptr::null_mut();
        assert_eq!(
            tm_matrix_new(TmSemiring::MinPlus, 2, [3, 2, 1, 5].as_ptr(), &mut a),
            TmStatus::Ok
        );
        assert_eq!(
            tm_matrix_new(TmSemiring::MinPlus, 2, [0, 9, 9, 0].as_ptr(), &mut b),
            TmStatus::Ok
        );
        let mut c = ptr::null_mut();
        assert_eq!(tm_matrix_mul(a, b, &mut c), TmStatus::Ok);
        assert!(tm_matrix_equal(a, c));

        let json = tm_matrix_to_json(a);
        assert_eq!(
            CStr::from_ptr(json).to_str().unwrap(),
            r#"{"semiring":"min-plus","rows":[[3,2],[1,5]]}"#
        );
        let mut back = ptr::null_mut();
        assert_eq!(tm_matrix_from_json(json, &mut back), TmStatus::Ok);
        assert!(tm_matrix_equal(a, back));
        tm_string_free(json);

        let mut v = 0;
        assert_eq!(tm_matrix_get(a, 1, 0, &mut v), TmStatus::Ok);
        assert_eq!(v, 1);
        assert_eq!(tm_matrix_get(a, 2, 0, &mut v), TmStatus::InvalidArgument);
        assert_eq!(tm_matrix_dim(a), 2);
        for m in [a, b, c, back] {
            tm_matrix_free(m);
        }
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(
            tm_matrix_new(TmSemiring::MinPlus, 2, ptr::null(), &mut m),
            TmStatus::NullPointer
        );
        assert!(last_error().contains("entries"));
        let bad = CString::new("{").unwrap();
        assert_eq!(tm_matrix_from_json(bad.as_ptr(), &mut m), TmStatus::Parse);
        assert!(m.is_null());

        let mut inf = ptr::null_mut();
        let doc = CString::new(r#"{"semiring":"min-plus","rows":[["inf"]]}"#).unwrap();
        assert_eq!(tm_matrix_from_json(doc.as_ptr(), &mut inf), TmStatus::Ok);
        let mut v = 0;
        assert_eq!(tm_matrix_get(inf, 0, 0, &mut v), TmStatus::NotInteger);
        tm_matrix_free(inf);
        tm_matrix_free(ptr::null_mut());
    }
}

#[test]
fn golden_exchange_through_the_abi() {
    unsafe {
        let proto = CString::new("sandwich").unwrap();
        let params = CString::new(SANDWICH).unwrap();
        let mut t = ptr::null_mut();
        assert_eq!(tm_run_protocol(proto.as_ptr(), params.as_ptr(), &mut t), TmStatus::Ok);
        assert!(tm_transcript_agreed(t));
        let (mut ka, mut kb) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(tm_transcript_key(t, TmRole::Alice, &mut ka), TmStatus::Ok);
        assert_eq!(tm_transcript_key(t, TmRole::Bob, &mut kb), TmStatus::Ok);
        assert!(tm_matrix_equal(ka, kb));
        let mut v = 0;
        assert_eq!(tm_matrix_get(ka, 0, 0, &mut v), TmStatus::Ok);
        assert_eq!(v, 202);
        let json = tm_transcript_to_json(t);
        assert!(CStr::from_ptr(json)
            .to_str()
            .unwrap()
            .starts_with(r#"{"protocol":"sandwich""#));
        tm_string_free(json);
        tm_matrix_free(ka);
        tm_matrix_free(kb);
        tm_transcript_free(t);

        let unknown = CString::new("stickel").unwrap();
        assert_eq!(
            tm_run_protocol(unknown.as_ptr(), params.as_ptr(), &mut t),
            TmStatus::Parse
        );
    }
}

#[test]
fn set_verification() {
    let word = CString::new(r#"{"constants":[{"semiring":"min-plus","rows":[[3,7,4],[5,12,7],[6,5,11]]}],"summands":[["c0","x0"]],"circles":[]}"#).unwrap();
    let good = r#"{"semiring":"min-plus","dim":3,"arity":1,"body":{"type":"raw","tuples":[[[[0,7,5],[1,0,6],[-1,5,0]]],[[[1,7,5],[1,0,6],[-1,5,0]]]]}}"#;
    let set = CString::new(good).unwrap();
    let mut failed = 99;
    unsafe {
        assert_eq!(tm_verify_set(word.as_ptr(), set.as_ptr(), &mut failed), TmStatus::Ok);
    }
    assert_eq!(failed, 1);
}

#[test]
fn header_declares_the_api() {
    let header = include_str!("../include/tropical_marginal.h");
    for name in [
        "tm_matrix_new",
        "tm_run_protocol",
        "tm_last_error",
        "TM_STATUS_NOT_MARGINAL",
        "typedef struct TmMatrix TmMatrix",
    ] {
        assert!(header.contains(name), "{name}");
    }
}
