use std::ffi::{c_char, CStr, CString};
use std::ptr;

use ultratree_ffi::*;

fn parse(text: &str) -> *mut UtTree {
    let c = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { ut_tree_parse(c.as_ptr(), &mut out) }, UtStatus::Ok);
    assert!(!out.is_null());
    out
}

fn take_string(p: *mut c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { ut_string_free(p) };
    s
}

fn last_error() -> String {
    let p = ut_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn tree_queries() {
    let t = parse("(H (F (A a) (E (B b) (C c))) (D d))");
    let mut n = 0usize;
    unsafe {
        assert_eq!(ut_tree_node_count(t, &mut n), UtStatus::Ok);
        assert_eq!(n, 7);
        assert_eq!(ut_tree_leaf_count(t, &mut n), UtStatus::Ok);
        assert_eq!(n, 4);
        let mut h = 0u32;
        assert_eq!(ut_tree_root_height(t, &mut h), UtStatus::Ok);
        assert_eq!(h, 3);

        let mut leaves = [0usize; 4];
        for (i, slot) in leaves.iter_mut().enumerate() {
            assert_eq!(ut_tree_leaf(t, i, slot), UtStatus::Ok);
        }
        let mut label = ptr::null_mut();
        assert_eq!(ut_tree_label(t, leaves[3], &mut label), UtStatus::Ok);
        assert_eq!(take_string(label), "D");

        let [a, b, _, d] = leaves;
        let mut yes = false;
        assert_eq!(ut_tree_c_commands(t, d, a, &mut yes), UtStatus::Ok);
        assert!(yes);
        assert_eq!(ut_tree_c_commands(t, a, d, &mut yes), UtStatus::Ok);
        assert!(!yes);
        assert_eq!(ut_tree_cu_commands(t, a, b, &mut yes), UtStatus::Ok);
        assert!(yes);
        assert_eq!(ut_tree_dominates(t, 0, d, &mut yes), UtStatus::Ok);
        assert!(yes);

        assert_eq!(ut_tree_theorem_disagreements(t, false, &mut n), UtStatus::Ok);
        assert_eq!(n, 0);

        let mut text = ptr::null_mut();
        assert_eq!(ut_tree_to_string(t, &mut text), UtStatus::Ok);
        assert_eq!(take_string(text), "(H (F (A a) (E (B b) (C c))) (D d))");

        let mut m = ptr::null_mut();
        assert_eq!(ut_tree_leaf_matrix(t, &mut m), UtStatus::Ok);
        let mut v = 0u64;
        assert_eq!(ut_matrix_get(m, 0, 3, &mut v), UtStatus::Ok);
        assert_eq!(v, 3);
        assert_eq!(ut_matrix_ultrametric_triples(m, &mut n), UtStatus::Ok);
        assert_eq!(n, 0);
        ut_matrix_free(m);
        ut_tree_free(t);
    }
}

#[test]
fn internal_nodes_can_disagree() {
    let t = parse("(R (F (X (A a) (B b)) (C c)) (G (Y (D d) (E e)) (K k)))");
    let mut n = 0usize;
    unsafe {
        assert_eq!(ut_tree_theorem_disagreements(t, true, &mut n), UtStatus::Ok);
        assert!(n > 0);
        ut_tree_free(t);
    }
}

#[test]
fn government_policy_string() {
    let t = parse("(VP (V see) (N it))");
    let (mut v, mut n) = (0usize, 0usize);
    let mut yes = false;
    unsafe {
        ut_tree_leaf(t, 0, &mut v);
        ut_tree_leaf(t, 1, &mut n);
        assert_eq!(ut_tree_governs(t, ptr::null(), v, n, &mut yes), UtStatus::Ok);
        assert!(yes);
        let only_n = CString::new("N").unwrap();
        assert_eq!(ut_tree_governs(t, only_n.as_ptr(), v, n, &mut yes), UtStatus::Ok);
        assert!(!yes);
        let empty = CString::new(" , ").unwrap();
        assert_eq!(ut_tree_governs(t, empty.as_ptr(), v, n, &mut yes), UtStatus::InvalidArgument);
        ut_tree_free(t);
    }
}

#[test]
fn matrix_round_trip_and_violations() {
    let json = CString::new(r#"{"labels":["A","M","J","H"],"rows":[[0,3,3,3],[3,0,1,2],[3,1,0,1],[3,2,1,0]]}"#).unwrap();
    let mut m = ptr::null_mut();
    let mut n = 0usize;
    unsafe {
        assert_eq!(ut_matrix_from_json(json.as_ptr(), &mut m), UtStatus::Ok);
        assert_eq!(ut_matrix_size(m, &mut n), UtStatus::Ok);
        assert_eq!(n, 4);
        assert_eq!(ut_matrix_ultrametric_triples(m, &mut n), UtStatus::Ok);
        assert_eq!(n, 1);
        assert_eq!(ut_matrix_metric_violations(m, &mut n), UtStatus::Ok);
        assert_eq!(n, 0);
        let mut label = ptr::null_mut();
        assert_eq!(ut_matrix_label(m, 2, &mut label), UtStatus::Ok);
        assert_eq!(take_string(label), "J");
        let mut text = ptr::null_mut();
        assert_eq!(ut_matrix_to_json(m, &mut text), UtStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(text)).unwrap();
        assert_eq!(v["rows"][1][3], 2);
        let mut x = 0u64;
        assert_eq!(ut_matrix_get(m, 4, 0, &mut x), UtStatus::OutOfRange);
        ut_matrix_free(m);

        assert_eq!(ut_matrix_xbar_template(5, &mut m), UtStatus::Ok);
        assert_eq!(ut_matrix_get(m, 1, 2, &mut x), UtStatus::Ok);
        assert_eq!(x, 6);
        ut_matrix_free(m);
    }
}

#[test]
fn errors_set_status_and_message() {
    let mut t = ptr::null_mut();
    let bad = CString::new("(S (A a)").unwrap();
    unsafe {
        assert_eq!(ut_tree_parse(bad.as_ptr(), &mut t), UtStatus::ParseError);
        assert!(t.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(ut_tree_parse(ptr::null(), &mut t), UtStatus::NullPointer);

        let invalid = [0xffu8 as c_char, 0];
        assert_eq!(ut_tree_parse(invalid.as_ptr(), &mut t), UtStatus::InvalidUtf8);

        let good = parse("(S (A a) (B b))");
        let mut yes = false;
        assert_eq!(ut_tree_dominates(good, 0, 99, &mut yes), UtStatus::UnknownNode);
        assert!(last_error().contains("99"));
        assert_eq!(ut_tree_dominates(good, 0, 1, ptr::null_mut()), UtStatus::NullPointer);
        assert_eq!(ut_tree_dominates(ptr::null(), 0, 1, &mut yes), UtStatus::NullPointer);
        // A successful call clears the message.
        assert_eq!(ut_tree_dominates(good, 0, 1, &mut yes), UtStatus::Ok);
        assert!(ut_last_error_message().is_null());
        ut_tree_free(good);

        let json = CString::new(r#"{"labels":["A"],"rows":[[0,1]]}"#).unwrap();
        let mut m = ptr::null_mut();
        assert_eq!(ut_matrix_from_json(json.as_ptr(), &mut m), UtStatus::ParseError);

        let mut det = 1i64;
        assert_eq!(ut_feature_determinant(-1, &mut det), UtStatus::Ok);
        assert_eq!(det, 0);
        assert_eq!(ut_feature_determinant(0, &mut det), UtStatus::InvalidArgument);

        ut_tree_free(ptr::null_mut());
        ut_matrix_free(ptr::null_mut());
        ut_string_free(ptr::null_mut());
    }
    assert_eq!(unsafe { CStr::from_ptr(ut_version()) }.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
