//! C interface to the polyprod engine.
//!
//! Results come back as JSON strings owned by the caller (release them with
//! `pp_string_free`). Every function returns a `PpStatus`; on failure the
//! message is available from `pp_last_error` on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use polyprod::abelian::Coefficients;
use polyprod::bbcg::zk_homology;
use polyprod::classifier::{classify, ClassTag, FibreDescriptor, Hypothesis};
use polyprod::formats::{parse_cards, parse_complex, parse_graph, parse_space, parse_spaces};
use polyprod::graph_products::kernel_homology;
use polyprod::homology::reduced_homology;
use polyprod::poly_product::oracle_homology;
use polyprod::simplicial::SimplicialComplex;
use polyprod::Error;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PpStatus {
    Ok = 0,
    /// A null pointer or a string that is not UTF-8.
    InvalidArgument = 1,
    /// Malformed text or JSON.
    Parse = 2,
    /// Well-formed input that violates a precondition.
    Validation = 3,
    /// A size cap was exceeded.
    SizeLimit = 4,
    /// The class tag needs a fibre hypothesis that was neither given nor derivable.
    HypothesisMissing = 5,
    /// An abstract space lacks the data the computation needs.
    InsufficientData = 6,
    /// An internal invariant failed.
    Internal = 7,
}

/// A simplicial complex.
pub struct PpComplex(SimplicialComplex);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(PpStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse(_) => PpStatus::Parse,
            Error::SizeLimit { .. } => PpStatus::SizeLimit,
            Error::HypothesisMissing(_) => PpStatus::HypothesisMissing,
            Error::InsufficientData(_) => PpStatus::InsufficientData,
            _ => PpStatus::Validation,
        };
        Failure(status, e.to_string())
    }
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PpStatus {
    set_last_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PpStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal error");
            PpStatus::Internal
        }
    }
}

/// # Safety
/// `p` is null or a nul-terminated string.
unsafe fn utf8<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(PpStatus::InvalidArgument, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(PpStatus::InvalidArgument, format!("{name} is not UTF-8")))
}

/// # Safety
/// `p` is null or points to a live `PpComplex`.
unsafe fn complex<'a>(p: *const PpComplex) -> Result<&'a SimplicialComplex, Failure> {
    p.as_ref()
        .map(|c| &c.0)
        .ok_or_else(|| Failure(PpStatus::InvalidArgument, "complex is null".into()))
}

fn coefficients(s: &str) -> Result<Coefficients, Failure> {
    Ok(s.parse::<Coefficients>()?.validate()?)
}

/// # Safety
/// `out` is null or writable.
unsafe fn emit(out: *mut *mut c_char, value: &impl serde::Serialize) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(PpStatus::InvalidArgument, "out is null".into()));
    }
    let json = serde_json::to_string(value).map_err(|e| Failure(PpStatus::Internal, e.to_string()))?;
    *out = CString::new(json).expect("JSON has no nul bytes").into_raw();
    Ok(())
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn pp_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Parses a complex in the text or JSON format.
///
/// # Safety
/// `text` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pp_complex_parse(text: *const c_char, out: *mut *mut PpComplex) -> PpStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure(PpStatus::InvalidArgument, "out is null".into()));
        }
        let k = parse_complex(utf8(text, "text")?)?;
        *out = Box::into_raw(Box::new(PpComplex(k)));
        Ok(())
    })
}

/// # Safety
/// `k` is null or was returned by `pp_complex_parse` and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pp_complex_free(k: *mut PpComplex) {
    if !k.is_null() {
        drop(Box::from_raw(k));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `k` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pp_complex_vertex_count(k: *const PpComplex) -> usize {
    k.as_ref().map_or(0, |c| c.0.m())
}

/// Minimal non-faces as a JSON array of vertex arrays.
///
/// # Safety
/// `k` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pp_minimal_nonfaces_json(k: *const PpComplex, out: *mut *mut c_char) -> PpStatus {
    guard(|| emit(out, &complex(k)?.minimal_nonfaces()))
}

/// Reduced homology of the complex.
///
/// # Safety
/// `k` is a live handle; `coeff` a nul-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pp_reduced_homology_json(
    k: *const PpComplex,
    coeff: *const c_char,
    out: *mut *mut c_char,
) -> PpStatus {
    guard(|| {
        let c = coefficients(utf8(coeff, "coeff")?)?;
        emit(out, &reduced_homology(complex(k)?, c))
    })
}

/// `H̃(Z_K(CX, X))` from the wedge decomposition, with its summands.
/// `spaces` is a comma-separated list of space shorthands or files.
///
/// # Safety
/// `k` is a live handle; the strings are nul-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pp_zk_homology_json(
    k: *const PpComplex,
    spaces: *const c_char,
    coeff: *const c_char,
    out: *mut *mut c_char,
) -> PpStatus {
    guard(|| {
        let k = complex(k)?;
        let xs = parse_spaces(utf8(spaces, "spaces")?, k.m())?;
        let c = coefficients(utf8(coeff, "coeff")?)?;
        emit(out, &zk_homology(k, &xs, c)?)
    })
}

/// `H̃(Z_K(CX, X))` from the cellular model.
///
/// # Safety
/// As for `pp_zk_homology_json`.
#[no_mangle]
pub unsafe extern "C" fn pp_oracle_homology_json(
    k: *const PpComplex,
    spaces: *const c_char,
    coeff: *const c_char,
    out: *mut *mut c_char,
) -> PpStatus {
    guard(|| {
        let k = complex(k)?;
        let xs = parse_spaces(utf8(spaces, "spaces")?, k.m())?;
        let c = coefficients(utf8(coeff, "coeff")?)?;
        emit(out, &oracle_homology(k, &xs, c)?)
    })
}

/// Reduced homology of the graph-product kernel for the given graph (text or
/// JSON) and comma-separated cardinalities.
///
/// # Safety
/// The strings are nul-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pp_kernel_homology_json(
    graph: *const c_char,
    cards: *const c_char,
    coeff: *const c_char,
    out: *mut *mut c_char,
) -> PpStatus {
    guard(|| {
        let g = parse_graph(utf8(graph, "graph")?)?;
        let cards = parse_cards(utf8(cards, "cards")?)?;
        let c = coefficients(utf8(coeff, "coeff")?)?;
        emit(out, &kernel_homology(&g, &cards, c)?)
    })
}

/// Classifies `Z_K(X, A)` for a class tag such as `P`, `F_3` or `E_0`.
/// `fibre` is fibre JSON or a space shorthand; `hypotheses` is null or a
/// comma-separated list added to the fibre.
///
/// # Safety
/// `k` is a live handle; the strings are nul-terminated or (for
/// `hypotheses`) null; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pp_classify_json(
    k: *const PpComplex,
    tag: *const c_char,
    fibre: *const c_char,
    hypotheses: *const c_char,
    x_in_class: bool,
    out: *mut *mut c_char,
) -> PpStatus {
    guard(|| {
        let k = complex(k)?;
        let tag: ClassTag = utf8(tag, "tag")?.parse()?;
        let extra: Vec<Hypothesis> = if hypotheses.is_null() {
            Vec::new()
        } else {
            utf8(hypotheses, "hypotheses")?
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(str::parse)
                .collect::<Result<_, _>>()?
        };
        let spec = utf8(fibre, "fibre")?;
        let f = if spec.trim_start().starts_with('{') {
            let f: FibreDescriptor =
                serde_json::from_str(spec).map_err(|e| Error::Parse(format!("JSON: {e}")))?;
            let all = f.hypotheses().iter().copied().chain(extra);
            FibreDescriptor::new(f.components().to_vec(), all)?
        } else {
            FibreDescriptor::from_space(&parse_space(spec)?, extra)?
        };
        emit(out, &classify(tag, k, &f, x_in_class)?)
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` is null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
