//! C ABI over `ultratree`.
//!
//! Every fallible function returns a [`UtStatus`] and writes its result
//! through an out-pointer. On failure a message for the calling thread is
//! available from [`ut_last_error_message`]. Handles are opaque and must be
//! released with their matching `_free` function; strings returned by the
//! library are released with [`ut_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ultratree::command::{c_command, cu_domain, governs, theorem_check, GovernorPolicy, NodeScope};
use ultratree::features::{build_feature_matrix, determinant, FeatureTable, Sign};
use ultratree::ultrametric::{check_metric, check_ultrametric, leaf_matrix, xbar_template};
use ultratree::{assign_heights, parse_tree, DistanceMatrix, Error, HeightAssignment, NodeId, PhraseTree};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    UnknownNode = 4,
    OutOfRange = 5,
    InvalidArgument = 6,
    AnalysisError = 7,
    Panic = 8,
}

/// A parsed phrase tree together with its node heights.
pub struct UtTree {
    tree: PhraseTree,
    heights: HeightAssignment,
}

/// A labeled square matrix of non-negative integer distances.
pub struct UtMatrix {
    matrix: DistanceMatrix,
}

struct Failure {
    status: UtStatus,
    message: String,
}

impl Failure {
    fn new(status: UtStatus, message: impl Into<String>) -> Self {
        Failure { status, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::UnbalancedBrackets { .. }
            | Error::EmptyNode { .. }
            | Error::MixedNode { .. }
            | Error::TrailingInput { .. }
            | Error::EmptyInput
            | Error::NonSquare { .. } => UtStatus::ParseError,
            Error::UnknownNode(_) => UtStatus::UnknownNode,
            Error::EmptyPolicy | Error::BadAritySpec(_) => UtStatus::InvalidArgument,
            _ => UtStatus::AnalysisError,
        };
        Failure::new(status, e.to_string())
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> UtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            UtStatus::Ok
        }
        Ok(Err(fail)) => {
            set_last_error(&fail.message);
            fail.status
        }
        Err(_) => {
            set_last_error("internal panic");
            UtStatus::Panic
        }
    }
}

unsafe fn c_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(UtStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::new(UtStatus::InvalidUtf8, "string is not UTF-8"))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure::new(UtStatus::NullPointer, "null handle"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(UtStatus::NullPointer, "null output pointer"));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("interior NULs removed").into_raw()
}

/// Message for the most recent failed call on this thread, or NULL. The
/// pointer stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn ut_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ut_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ut_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse one bracketed tree such as `(S (A a) (B b))`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ut_tree_parse(text: *const c_char, out: *mut *mut UtTree) -> UtStatus {
    guard(|| {
        let tree = parse_tree(c_str(text)?)?;
        let heights = assign_heights(&tree);
        write(out, Box::into_raw(Box::new(UtTree { tree, heights })))
    })
}

/// # Safety
/// `tree` must be NULL or a handle from [`ut_tree_parse`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ut_tree_free(tree: *mut UtTree) {
    if !tree.is_null() {
        drop(Box::from_raw(tree));
    }
}

/// Nodes are numbered 0..count in preorder; the root is 0.
///
/// # Safety
/// `tree` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ut_tree_node_count(tree: *const UtTree, out: *mut usize) -> UtStatus {
    guard(|| write(out, handle(tree)?.tree.len()))
}

/// # Safety
/// `tree` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ut_tree_leaf_count(tree: *const UtTree, out: *mut usize) -> UtStatus {
    guard(|| write(out, handle(tree)?.tree.leaves().len()))
}

/// Preorder id of the `index`-th leaf, left to right.
///
/// # Safety
/// `tree` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ut_tree_leaf(tree: *const UtTree, index: usize, out: *mut usize) -> UtStatus {
    guard(|| {
        let t = handle(tree)?;
        let leaf = t
            .tree
            .leaves()
            .get(index)
            .ok_or_else(|| Failure::new(UtStatus::OutOfRange, format!("leaf {index} out of range")))?;
        write(out, leaf.0)
    })
}

/// Category label of a node, as a new string.
///
/// # Safety
/// `tree` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ut_tree_label(tree: *const UtTree, node: usize, out: *mut *mut c_char) -> UtStatus {
    guard(|| {
        let label = handle(tree)?.tree.label(NodeId(node))?.to_string();
        write(out, owned_string(label))
    })
}

/// # Safety
/// `tree` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ut_tree_height(tree: *const UtTree, node: usize, out: *mut u32) -> UtStatus {
    guard(|| write(out, handle(tree)?.heights.get(NodeId(node))?))
}

/// # Safety
/// `tree` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ut_tree_root_height(tree: *const UtTree, out: *mut u32) -> UtStatus {
    guard(|| write(out, handle(tree)?.heights.root()))
}

/// Serialize back to bracketed text.
///
/// # Safety
/// `tree` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ut_tree_to_string(tree: *const UtTree, out: *mut *mut c_char) -> UtStatus {
    guard(|| write(out, owned_string(handle(tree)?.tree.to_string())))
}

/// Leaf-to-leaf distance matrix, labeled by leaf category.
///
/// # Safety
/// `tree` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ut_tree_leaf_matrix(tree: *const UtTree, out: *mut *mut UtMatrix) -> UtStatus {
    guard(|| {
        let t = handle(tree)?;
        let matrix = leaf_matrix(&t.tree, &t.heights)?;
        write(out, Box::into_raw(Box::new(UtMatrix { matrix })))
    })
}

/// Reflexive dominance.
///
/// # Safety
/// `tree` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ut_tree_dominates(tree: *const UtTree, a: usize, b: usize, out: *mut bool) -> UtStatus {
    guard(|| write(out, handle(tree)?.tree.dominates(NodeId(a), NodeId(b))?))
}

/// # Safety
/// `tree` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ut_tree_c_commands(tree: *const UtTree, a: usize, b: usize, out: *mut bool) -> UtStatus {
    guard(|| {
        let t = handle(tree)?;
        write(out, c_command(&t.tree, &t.heights, NodeId(a), NodeId(b))?)
    })
}

/// True when `b` lies in the cu-domain of `a`.
///
/// # Safety
/// `tree` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ut_tree_cu_commands(tree: *const UtTree, a: usize, b: usize, out: *mut bool) -> UtStatus {
    guard(|| {
        let t = handle(tree)?;
        t.tree.node(NodeId(b))?;
        write(out, cu_domain(&t.tree, &t.heights, NodeId(a))?.contains(NodeId(b)))
    })
}

/// `governors` is a comma-separated category list, or NULL for the default
/// policy (`V,P`).
///
/// # Safety
/// `tree` must be a live handle; `governors` NULL or NUL-terminated; `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn ut_tree_governs(
    tree: *const UtTree,
    governors: *const c_char,
    a: usize,
    b: usize,
    out: *mut bool,
) -> UtStatus {
    guard(|| {
        let t = handle(tree)?;
        let policy = if governors.is_null() {
            GovernorPolicy::default()
        } else {
            GovernorPolicy::new(c_str(governors)?.split(',').map(str::trim).filter(|s| !s.is_empty()))
        };
        write(out, governs(&t.tree, &t.heights, &policy, NodeId(a), NodeId(b))?)
    })
}

/// Number of ordered pairs on which c-command and cu-command disagree, over
/// leaves only or over every node.
///
/// # Safety
/// `tree` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ut_tree_theorem_disagreements(
    tree: *const UtTree,
    all_nodes: bool,
    out: *mut usize,
) -> UtStatus {
    guard(|| {
        let t = handle(tree)?;
        let scope = if all_nodes { NodeScope::AllNodes } else { NodeScope::Leaves };
        write(out, theorem_check(&t.tree, &t.heights, scope).len())
    })
}

/// Parse `{"labels": [...], "rows": [[...], ...]}`.
///
/// # Safety
/// `json` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ut_matrix_from_json(json: *const c_char, out: *mut *mut UtMatrix) -> UtStatus {
    guard(|| {
        let matrix = DistanceMatrix::from_json_str(c_str(json)?)
            .map_err(|e| Failure::new(UtStatus::ParseError, e.to_string()))?;
        write(out, Box::into_raw(Box::new(UtMatrix { matrix })))
    })
}

/// The three-label phrase template at level `i`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ut_matrix_xbar_template(i: u64, out: *mut *mut UtMatrix) -> UtStatus {
    guard(|| {
        if i > u64::MAX - 2 {
            return Err(Failure::new(UtStatus::OutOfRange, "level too large"));
        }
        write(out, Box::into_raw(Box::new(UtMatrix { matrix: xbar_template(i) })))
    })
}

/// # Safety
/// `m` must be NULL or a matrix handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ut_matrix_free(m: *mut UtMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ut_matrix_size(m: *const UtMatrix, out: *mut usize) -> UtStatus {
    guard(|| write(out, handle(m)?.matrix.size()))
}

fn in_range(m: &UtMatrix, i: usize) -> Result<(), Failure> {
    if i < m.matrix.size() {
        Ok(())
    } else {
        Err(Failure::new(UtStatus::OutOfRange, format!("index {i} out of range")))
    }
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ut_matrix_get(m: *const UtMatrix, row: usize, col: usize, out: *mut u64) -> UtStatus {
    guard(|| {
        let m = handle(m)?;
        in_range(m, row)?;
        in_range(m, col)?;
        write(out, m.matrix.get(row, col))
    })
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ut_matrix_label(m: *const UtMatrix, index: usize, out: *mut *mut c_char) -> UtStatus {
    guard(|| {
        let m = handle(m)?;
        in_range(m, index)?;
        write(out, owned_string(m.matrix.labels()[index].clone()))
    })
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ut_matrix_to_json(m: *const UtMatrix, out: *mut *mut c_char) -> UtStatus {
    guard(|| write(out, owned_string(handle(m)?.matrix.to_json().to_string())))
}

/// Number of metric-axiom violations.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ut_matrix_metric_violations(m: *const UtMatrix, out: *mut usize) -> UtStatus {
    guard(|| write(out, check_metric(&handle(m)?.matrix).metric_violations.len()))
}

/// Number of unordered label triples breaking the ultrametric inequality.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ut_matrix_ultrametric_triples(m: *const UtMatrix, out: *mut usize) -> UtStatus {
    guard(|| write(out, check_ultrametric(&handle(m)?.matrix).violating_triples().len()))
}

/// Determinant of the category feature matrix with the given A-P entry
/// (`1` or `-1`).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ut_feature_determinant(f_ap: i32, out: *mut i64) -> UtStatus {
    guard(|| {
        let sign = Sign::from_value(i64::from(f_ap))
            .ok_or_else(|| Failure::new(UtStatus::InvalidArgument, "f_ap must be 1 or -1"))?;
        let f = build_feature_matrix(&FeatureTable::default(), sign)?;
        write(out, determinant(&f))
    })
}
