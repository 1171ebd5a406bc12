//! C ABI over `filtered_nakayama`.
//!
//! Every object crosses the boundary as an opaque pointer created by a
//! `fnk_*` constructor and released by the matching `*_free`. Functions return
//! an [`FnkStatus`]; on failure [`fnk_last_error`] describes the problem.
//! Strings handed out by the library are freed with [`fnk_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use filtered_nakayama::groebner::{buchberger, GroebnerBasis, Status};
use filtered_nakayama::hopf::{classify, classify_family, HopfFlags};
use filtered_nakayama::nakayama::{is_calabi_yau, lift_nakayama, AffineFamily, NakayamaError};
use filtered_nakayama::parser::{parse_matrix, parse_poly, parse_presentation, render_poly, PresentationSource};
use filtered_nakayama::{AffineMap, Presentation};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FnkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    /// Definite negative answer, e.g. no rational lift exists.
    Negative = 5,
    /// Truncated or underdetermined computation.
    Inconclusive = 6,
    Internal = 7,
}

/// Parsed `.alg` presentation.
pub struct FnkPresentation {
    source: PresentationSource,
    presentation: Presentation,
}

pub struct FnkGroebnerBasis {
    basis: GroebnerBasis,
}

/// A filtered Nakayama lift, or a whole affine family of them.
pub struct FnkLift {
    map: AffineMap,
    family: Option<AffineFamily>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn fail(status: FnkStatus, msg: impl Into<String>) -> FnkStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> FnkStatus) -> FnkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(FnkStatus::Internal, "internal panic"),
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, FnkStatus> {
    if p.is_null() {
        return Err(fail(FnkStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(FnkStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> FnkStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            FnkStatus::Ok
        }
        Err(_) => fail(FnkStatus::Internal, "string contains NUL"),
    }
}

macro_rules! try_ffi {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return fail(FnkStatus::NullPointer, concat!("`", stringify!($p), "` is null"));
        })+
    };
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn fnk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

#[no_mangle]
pub unsafe extern "C" fn fnk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn fnk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

#[no_mangle]
pub unsafe extern "C" fn fnk_presentation_parse(text: *const c_char, out: *mut *mut FnkPresentation) -> FnkStatus {
    guard(|| {
        non_null!(out);
        let text = try_ffi!(read_str(text));
        match parse_presentation(text) {
            Ok(source) => {
                let presentation = source.presentation();
                *out = Box::into_raw(Box::new(FnkPresentation { source, presentation }));
                FnkStatus::Ok
            }
            Err(e) => fail(FnkStatus::ParseError, e.to_string()),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn fnk_presentation_free(p: *mut FnkPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of generators, or 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn fnk_presentation_num_generators(p: *const FnkPresentation) -> usize {
    p.as_ref().map_or(0, |p| p.presentation.num_generators())
}

/// Number of relations, or 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn fnk_presentation_num_relations(p: *const FnkPresentation) -> usize {
    p.as_ref().map_or(0, |p| p.presentation.relations.len())
}

/// `2·maxdeg + 2`, or the file's `degree_bound` when present.
#[no_mangle]
pub unsafe extern "C" fn fnk_presentation_default_bound(p: *const FnkPresentation) -> usize {
    p.as_ref().map_or(0, |p| {
        p.source
            .degree_bound()
            .unwrap_or_else(|| p.presentation.default_degree_bound())
    })
}

/// Truncated Gröbner basis. `*complete` receives whether completion finished.
#[no_mangle]
pub unsafe extern "C" fn fnk_groebner(
    p: *const FnkPresentation,
    degree_bound: usize,
    out: *mut *mut FnkGroebnerBasis,
    complete: *mut bool,
) -> FnkStatus {
    guard(|| {
        non_null!(p, out, complete);
        match buchberger(&(*p).presentation.relations, degree_bound) {
            Ok(basis) => {
                *complete = basis.status() == Status::Complete;
                *out = Box::into_raw(Box::new(FnkGroebnerBasis { basis }));
                FnkStatus::Ok
            }
            Err(e) => fail(FnkStatus::InvalidArgument, e.to_string()),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn fnk_groebner_free(g: *mut FnkGroebnerBasis) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

#[no_mangle]
pub unsafe extern "C" fn fnk_groebner_len(g: *const FnkGroebnerBasis) -> usize {
    g.as_ref().map_or(0, |g| g.basis.len())
}

/// Element `index`, rendered over the presentation's generators.
#[no_mangle]
pub unsafe extern "C" fn fnk_groebner_element(
    g: *const FnkGroebnerBasis,
    p: *const FnkPresentation,
    index: usize,
    out: *mut *mut c_char,
) -> FnkStatus {
    guard(|| {
        non_null!(g, p, out);
        match (*g).basis.elements().get(index) {
            Some(e) => write_string(out, render_poly(e, &(*p).presentation.alphabet)),
            None => fail(FnkStatus::InvalidArgument, format!("index {index} out of range")),
        }
    })
}

/// Normal form of `poly` (text over the presentation's generators).
#[no_mangle]
pub unsafe extern "C" fn fnk_normal_form(
    g: *const FnkGroebnerBasis,
    p: *const FnkPresentation,
    poly: *const c_char,
    out: *mut *mut c_char,
) -> FnkStatus {
    guard(|| {
        non_null!(g, p, out);
        let text = try_ffi!(read_str(poly));
        let alphabet = &(*p).presentation.alphabet;
        match parse_poly(text, alphabet) {
            Ok(f) => write_string(out, render_poly(&(*g).basis.normal_form(&f), alphabet)),
            Err(e) => fail(FnkStatus::ParseError, e.to_string()),
        }
    })
}

/// Lifts a graded Nakayama matrix (`[a,b;c,d]` text, or NULL to use the
/// file's `graded_nakayama`). A positive-dimensional solution set still yields
/// a lift handle for its particular solution, with status `Inconclusive`.
#[no_mangle]
pub unsafe extern "C" fn fnk_lift_nakayama(
    p: *const FnkPresentation,
    matrix: *const c_char,
    degree_bound: usize,
    out: *mut *mut FnkLift,
) -> FnkStatus {
    guard(|| {
        non_null!(p, out);
        let p = &*p;
        let m = if matrix.is_null() {
            match &p.source.graded_nakayama {
                Some(m) => m.clone(),
                None => return fail(FnkStatus::InvalidArgument, "no graded_nakayama block and no matrix given"),
            }
        } else {
            match parse_matrix(try_ffi!(read_str(matrix))) {
                Ok(m) => m,
                Err(e) => return fail(FnkStatus::ParseError, e.to_string()),
            }
        };
        match lift_nakayama(&p.presentation, &m, degree_bound) {
            Ok(r) => {
                if r.solutions.len() != 1 {
                    set_error(format!("{} lifts found; returning the first", r.solutions.len()));
                }
                let map = r.solutions.into_iter().next().expect("solver returns at least one point");
                *out = Box::into_raw(Box::new(FnkLift { map, family: None }));
                FnkStatus::Ok
            }
            Err(NakayamaError::PositiveDimensional {
                family: Some(family), ..
            }) => match AffineMap::new(m, family.particular.clone()) {
                Ok(map) => {
                    *out = Box::into_raw(Box::new(FnkLift {
                        map,
                        family: Some(family),
                    }));
                    fail(FnkStatus::Inconclusive, "solution set is positive-dimensional")
                }
                Err(e) => fail(FnkStatus::InvalidArgument, e.to_string()),
            },
            Err(e @ (NakayamaError::NotGradedAutomorphism | NakayamaError::NoRationalSolution { .. })) => {
                fail(FnkStatus::Negative, e.to_string())
            }
            Err(e @ (NakayamaError::Truncated { .. }
            | NakayamaError::PositiveDimensional { .. }
            | NakayamaError::VerificationFailed)) => fail(FnkStatus::Inconclusive, e.to_string()),
            Err(e) => fail(FnkStatus::InvalidArgument, e.to_string()),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn fnk_lift_free(l: *mut FnkLift) {
    if !l.is_null() {
        drop(Box::from_raw(l));
    }
}

#[no_mangle]
pub unsafe extern "C" fn fnk_lift_dim(l: *const FnkLift) -> usize {
    l.as_ref().map_or(0, |l| l.map.dim())
}

/// Number of free directions in the shift (0 for a unique lift).
#[no_mangle]
pub unsafe extern "C" fn fnk_lift_free_directions(l: *const FnkLift) -> usize {
    l.as_ref()
        .and_then(|l| l.family.as_ref())
        .map_or(0, |f| f.directions.len())
}

/// Matrix entry `a_ij` as an exact rational string.
#[no_mangle]
pub unsafe extern "C" fn fnk_lift_matrix_entry(l: *const FnkLift, i: usize, j: usize, out: *mut *mut c_char) -> FnkStatus {
    guard(|| {
        non_null!(l, out);
        let m = (*l).map.matrix();
        if i >= m.rows() || j >= m.cols() {
            return fail(FnkStatus::InvalidArgument, "index out of range");
        }
        write_string(out, m.get(i, j).to_string())
    })
}

/// Shift entry `b_i` as an exact rational string.
#[no_mangle]
pub unsafe extern "C" fn fnk_lift_shift_entry(l: *const FnkLift, i: usize, out: *mut *mut c_char) -> FnkStatus {
    guard(|| {
        non_null!(l, out);
        match (*l).map.shift().get(i) {
            Some(b) => write_string(out, b.to_string()),
            None => fail(FnkStatus::InvalidArgument, "index out of range"),
        }
    })
}

/// Image of every generator, one `x -> …` line each.
#[no_mangle]
pub unsafe extern "C" fn fnk_lift_render(l: *const FnkLift, p: *const FnkPresentation, out: *mut *mut c_char) -> FnkStatus {
    guard(|| {
        non_null!(l, p, out);
        let alphabet = &(*p).presentation.alphabet;
        let map = &(*l).map;
        if alphabet.len() != map.dim() {
            return fail(FnkStatus::InvalidArgument, "generator count differs from lift dimension");
        }
        let lines: Vec<String> = (0..map.dim())
            .map(|i| format!("{} -> {}", alphabet.name(i as u32), render_poly(&map.image_of(i, 0), alphabet)))
            .collect();
        write_string(out, lines.join("\n"))
    })
}

#[no_mangle]
pub unsafe extern "C" fn fnk_lift_is_calabi_yau(l: *const FnkLift) -> bool {
    l.as_ref().is_some_and(|l| l.family.is_none() && is_calabi_yau(&l.map))
}

/// Hopf classification as a JSON report. `*has_conclusions` is false when
/// the result is inconclusive.
#[no_mangle]
pub unsafe extern "C" fn fnk_classify_hopf(
    p: *const FnkPresentation,
    l: *const FnkLift,
    assume_semisimple: bool,
    assume_trivial_hdet: bool,
    json_out: *mut *mut c_char,
    has_conclusions: *mut bool,
) -> FnkStatus {
    guard(|| {
        non_null!(p, l, json_out, has_conclusions);
        let u = &(*p).presentation;
        let lift = &*l;
        if u.num_generators() != lift.map.dim() {
            return fail(FnkStatus::InvalidArgument, "generator count differs from lift dimension");
        }
        let flags = HopfFlags {
            assume_semisimple,
            assume_trivial_hdet,
        };
        let report = match &lift.family {
            Some(f) => classify_family(u, lift.map.matrix(), f, flags),
            None => classify(u, &lift.map, flags),
        };
        *has_conclusions = !report.conclusions.is_empty();
        match serde_json::to_string(&report) {
            Ok(s) => write_string(json_out, s),
            Err(e) => fail(FnkStatus::Internal, e.to_string()),
        }
    })
}
