//! C ABI over the multimono library.
//!
//! Handles are opaque and owned by the caller once returned; release them
//! with the matching `*_free`. Every fallible call returns an [`MmStatus`];
//! on failure [`mm_last_error`] describes what went wrong on this thread.
//! Strings returned through out-parameters are NUL-terminated UTF-8 and must
//! be released with [`mm_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use multimono::poly::{witness_monomial, FactoredPolynomial, Witness};
use multimono::reduce::{find_kpath, normalize_3sat, sat3_to_poly, KpathConfig};
use multimono::textio::{parse_dimacs, parse_graph, parse_polynomial, render_monomial, render_polynomial};
use multimono::{solve, Algorithm, Error, Solution, SolveConfig};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MmStatus {
    Ok = 0,
    ParseError = 1,
    ShapeError = 2,
    InvalidArgument = 3,
    InvalidWitness = 4,
    BudgetExceeded = 5,
    NullPointer = 6,
    InvalidUtf8 = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MmAlgorithm {
    Auto = 0,
    Matcher = 1,
    Purger = 2,
    Scc = 3,
    Hybrid = 4,
    Clique = 5,
    Oracle = 6,
}

fn algorithm_from_code(code: u32) -> Option<Algorithm> {
    Some(match code {
        0 => Algorithm::Auto,
        1 => Algorithm::Matcher,
        2 => Algorithm::Purger,
        3 => Algorithm::Scc,
        4 => Algorithm::Hybrid,
        5 => Algorithm::Clique,
        6 => Algorithm::Oracle,
        _ => return None,
    })
}

impl From<Algorithm> for MmAlgorithm {
    fn from(a: Algorithm) -> Self {
        match a {
            Algorithm::Auto => MmAlgorithm::Auto,
            Algorithm::Matcher => MmAlgorithm::Matcher,
            Algorithm::Purger => MmAlgorithm::Purger,
            Algorithm::Scc => MmAlgorithm::Scc,
            Algorithm::Hybrid => MmAlgorithm::Hybrid,
            Algorithm::Clique => MmAlgorithm::Clique,
            Algorithm::Oracle => MmAlgorithm::Oracle,
        }
    }
}

/// A parsed polynomial.
pub struct MmPoly {
    inner: FactoredPolynomial,
}

/// Outcome of [`mm_solve`].
pub struct MmSolution {
    inner: Solution,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(text).expect("NULs removed")));
}

fn status_of(e: &Error) -> MmStatus {
    match e {
        Error::Parse(_) => MmStatus::ParseError,
        Error::Shape(_) => MmStatus::ShapeError,
        Error::InvalidWitness(_) => MmStatus::InvalidWitness,
        Error::InvalidArgument(_) => MmStatus::InvalidArgument,
        Error::BudgetExceeded { .. } => MmStatus::BudgetExceeded,
    }
}

/// Runs `f`, converting errors and panics into a status plus last-error text.
fn guard(f: impl FnOnce() -> Result<(), MmStatus>) -> MmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MmStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("internal panic");
            MmStatus::Panic
        }
    }
}

fn fail(e: Error) -> MmStatus {
    set_error(e.to_string());
    status_of(&e)
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, MmStatus> {
    if text.is_null() {
        set_error("null string argument");
        return Err(MmStatus::NullPointer);
    }
    CStr::from_ptr(text).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        MmStatus::InvalidUtf8
    })
}

unsafe fn check_out<T>(out: *mut T) -> Result<(), MmStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(MmStatus::NullPointer);
    }
    Ok(())
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, MmStatus> {
    p.as_ref().ok_or_else(|| {
        set_error("null handle");
        MmStatus::NullPointer
    })
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("NULs removed").into_raw()
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next failing call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn mm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn mm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses polynomial text into a new handle stored in `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mm_poly_parse(text: *const c_char, out: *mut *mut MmPoly) -> MmStatus {
    guard(|| {
        check_out(out)?;
        let poly = parse_polynomial(read_str(text)?).map_err(|e| fail(e.into()))?;
        *out = Box::into_raw(Box::new(MmPoly { inner: poly }));
        Ok(())
    })
}

/// # Safety
/// `poly` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mm_poly_free(poly: *mut MmPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Number of clauses, or 0 for NULL.
///
/// # Safety
/// `poly` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mm_poly_num_clauses(poly: *const MmPoly) -> usize {
    poly.as_ref().map_or(0, |p| p.inner.num_clauses())
}

/// Canonical text of `poly` into `*out`.
///
/// # Safety
/// `poly` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mm_poly_render(poly: *const MmPoly, out: *mut *mut c_char) -> MmStatus {
    guard(|| {
        check_out(out)?;
        *out = to_c_string(render_polynomial(&deref(poly)?.inner));
        Ok(())
    })
}

/// Sets the split point (front = clauses before `index`); a negative index
/// removes it.
///
/// # Safety
/// `poly` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn mm_poly_set_split(poly: *mut MmPoly, index: i64) -> MmStatus {
    guard(|| {
        let p = poly.as_mut().ok_or_else(|| {
            set_error("null handle");
            MmStatus::NullPointer
        })?;
        let split = usize::try_from(index).ok();
        p.inner = p.inner.clone().with_split(split).map_err(fail)?;
        Ok(())
    })
}

/// Decides whether `poly` has a `c`-monomial. `algorithm` is an
/// [`MmAlgorithm`] value; `budget` caps enumerating algorithms, 0 keeps the
/// defaults. The new solution is stored in `*out`.
///
/// # Safety
/// `poly` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mm_solve(
    poly: *const MmPoly,
    c: u32,
    algorithm: u32,
    budget: u64,
    out: *mut *mut MmSolution,
) -> MmStatus {
    guard(|| {
        check_out(out)?;
        let poly = deref(poly)?;
        let Some(algorithm) = algorithm_from_code(algorithm) else {
            set_error(format!("unknown algorithm code {algorithm}"));
            return Err(MmStatus::InvalidArgument);
        };
        let mut config = SolveConfig {
            c,
            algorithm,
            ..SolveConfig::default()
        };
        if budget > 0 {
            config = config.with_budget(budget).map_err(fail)?;
        }
        let solution = solve(&poly.inner, &config).map_err(fail)?;
        *out = Box::into_raw(Box::new(MmSolution { inner: solution }));
        Ok(())
    })
}

/// # Safety
/// `solution` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mm_solution_free(solution: *mut MmSolution) {
    if !solution.is_null() {
        drop(Box::from_raw(solution));
    }
}

/// 1 if a monomial was found, 0 if not or for NULL.
///
/// # Safety
/// `solution` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mm_solution_found(solution: *const MmSolution) -> i32 {
    solution.as_ref().map_or(0, |s| i32::from(s.inner.found()))
}

/// The algorithm that ran (never `Auto` for a live handle).
///
/// # Safety
/// `solution` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn mm_solution_algorithm(solution: *const MmSolution) -> MmAlgorithm {
    solution
        .as_ref()
        .map_or(MmAlgorithm::Auto, |s| s.inner.algorithm.into())
}

/// Witness length (one entry per clause), or 0 when none was found.
///
/// # Safety
/// `solution` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mm_solution_len(solution: *const MmSolution) -> usize {
    solution
        .as_ref()
        .and_then(|s| s.inner.witness.as_ref())
        .map_or(0, Witness::len)
}

/// Copies the zero-based term choices into `buf`, which must hold
/// [`mm_solution_len`] entries.
///
/// # Safety
/// `solution` must be a live handle and `buf` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn mm_solution_choices(solution: *const MmSolution, buf: *mut usize, len: usize) -> MmStatus {
    guard(|| {
        let s = deref(solution)?;
        let Some(w) = &s.inner.witness else {
            set_error("no witness: no monomial was found");
            return Err(MmStatus::InvalidArgument);
        };
        if len < w.len() {
            set_error(format!("buffer holds {len} entries, witness needs {}", w.len()));
            return Err(MmStatus::InvalidArgument);
        }
        check_out(buf)?;
        ptr::copy_nonoverlapping(w.choices.as_ptr(), buf, w.len());
        Ok(())
    })
}

/// Text of the witness monomial, over `poly`'s variable names, into `*out`.
///
/// # Safety
/// `poly` and `solution` must be live handles, the solution obtained from
/// `poly`, and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mm_solution_monomial(
    poly: *const MmPoly,
    solution: *const MmSolution,
    out: *mut *mut c_char,
) -> MmStatus {
    guard(|| {
        check_out(out)?;
        let (p, s) = (deref(poly)?, deref(solution)?);
        let Some(w) = &s.inner.witness else {
            set_error("no witness: no monomial was found");
            return Err(MmStatus::InvalidArgument);
        };
        let m = witness_monomial(&p.inner, w).map_err(fail)?;
        *out = to_c_string(render_monomial(p.inner.vars(), &m));
        Ok(())
    })
}

/// Checks a zero-based witness against `poly`: writes 1 to `*is_c_monomial`
/// when the chosen terms multiply to a `c`-monomial, else 0.
///
/// # Safety
/// `poly` must be a live handle, `choices` valid for `len` reads, and
/// `is_c_monomial` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mm_check_witness(
    poly: *const MmPoly,
    choices: *const usize,
    len: usize,
    c: u32,
    is_c_monomial: *mut i32,
) -> MmStatus {
    guard(|| {
        check_out(is_c_monomial)?;
        let p = deref(poly)?;
        let choices = if len == 0 {
            Vec::new()
        } else {
            check_out(choices.cast_mut())?;
            std::slice::from_raw_parts(choices, len).to_vec()
        };
        let m = witness_monomial(&p.inner, &Witness::new(choices)).map_err(fail)?;
        *is_c_monomial = i32::from(m.is_c_monomial(c).map_err(fail)?);
        Ok(())
    })
}

/// Normalises a DIMACS formula and encodes it as a polynomial that has a
/// multilinear monomial iff the formula is satisfiable.
///
/// # Safety
/// `dimacs` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mm_reduce_sat3(dimacs: *const c_char, out: *mut *mut MmPoly) -> MmStatus {
    guard(|| {
        check_out(out)?;
        let formula = parse_dimacs(read_str(dimacs)?).map_err(|e| fail(e.into()))?;
        let (poly, _) = sat3_to_poly(&normalize_3sat(&formula)).map_err(fail)?;
        *out = Box::into_raw(Box::new(MmPoly { inner: poly }));
        Ok(())
    })
}

/// Writes 1 to `*found` when the edge-list graph has a simple path on `k`
/// vertices, else 0. `budget` caps the walks visited; 0 keeps the default.
///
/// # Safety
/// `graph` must be a NUL-terminated string and `found` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mm_kpath(graph: *const c_char, k: usize, c: u32, budget: u64, found: *mut i32) -> MmStatus {
    guard(|| {
        check_out(found)?;
        let g = parse_graph(read_str(graph)?).map_err(|e| fail(e.into()))?;
        let config = if budget > 0 {
            KpathConfig { max_walks: budget }
        } else {
            KpathConfig::default()
        };
        *found = i32::from(find_kpath(&g, k, c, &config).map_err(fail)?.is_some());
        Ok(())
    })
}
