//! C interface to `motivic-steenrod`.
//!
//! Every function returns an [`MsStatus`]. Results come back through out
//! pointers; strings are allocated here and released with
//! [`ms_string_free`], handles with their matching `_free` function. After a
//! failure, [`ms_last_error`] describes it until the next call on the same
//! thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use motivic_steenrod::algebra::{
    format_element, make_algebra, parse_element, AlgebraError, AlgebraKind, Presentation, TriDegree,
};
use motivic_steenrod::anss::{motivic_assemble, AnssError, Chart};
use motivic_steenrod::dual::{DualError, SteenrodAlgebra};
use motivic_steenrod::hopf::coproduct;
use motivic_steenrod::quotient::{ko_ladder, tmf_ladder};
use motivic_steenrod::resolution::{ext_chart, write_checkpoint, ExtChart, Resolution};

/// Result codes shared by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MsStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    UnknownAlgebra = 4,
    /// A well-formed request with no answer in range, such as an
    /// unsupported algebra or a degree beyond the generator bound.
    DomainError = 5,
    Panic = 6,
}

/// A presented algebra, from [`ms_algebra_new`].
pub struct MsAlgebra {
    presentation: Presentation,
}

/// A resolution in progress, from [`ms_resolution_new`].
pub struct MsResolution {
    resolution: Resolution,
    chart: Option<ExtChart>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

struct Failure(MsStatus, String);

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        let status = match e {
            AlgebraError::UnknownAlgebra(_) => MsStatus::UnknownAlgebra,
            AlgebraError::IndexBound { .. } => MsStatus::DomainError,
            _ => MsStatus::ParseError,
        };
        Failure(status, e.to_string())
    }
}

impl From<DualError> for Failure {
    fn from(e: DualError) -> Self {
        let status = match e {
            DualError::Parse(_) | DualError::UnknownName(_) | DualError::Inhomogeneous => MsStatus::ParseError,
            DualError::Algebra(inner) => return inner.into(),
            _ => MsStatus::DomainError,
        };
        Failure(status, e.to_string())
    }
}

impl From<AnssError> for Failure {
    fn from(e: AnssError) -> Self {
        let status = match e {
            AnssError::Parse { .. } | AnssError::Malformed(_) => MsStatus::ParseError,
            _ => MsStatus::DomainError,
        };
        Failure(status, e.to_string())
    }
}

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure(MsStatus::DomainError, e.to_string())
}

/// Runs `body`, turning errors and panics into a status.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> MsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            MsStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            MsStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(MsStatus::NullArgument, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(MsStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(MsStatus::NullArgument, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> Result<(), Failure> {
    let s = CString::new(text).map_err(domain)?;
    write_out(out, s.into_raw())
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(MsStatus::NullArgument, "null handle".into()))
}

fn parse_kind(name: &str) -> Result<AlgebraKind, Failure> {
    Ok(name.parse::<AlgebraKind>()?)
}

/// Message for the last failure on this thread; empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn ms_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ms_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the algebra named `name` (`A`, `A2`, `E1`, `F`, `G`, `H_BP`, ...).
/// `stem_limit` bounds the generators of infinite algebras.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ms_algebra_new(name: *const c_char, stem_limit: i32, out: *mut *mut MsAlgebra) -> MsStatus {
    guard(|| {
        let kind = parse_kind(read_str(name)?)?;
        let boxed = Box::new(MsAlgebra {
            presentation: make_algebra(kind, stem_limit),
        });
        write_out(out, Box::into_raw(boxed))
    })
}

/// # Safety
/// `a` must come from [`ms_algebra_new`] and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ms_algebra_free(a: *mut MsAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Normal form of `lhs * rhs`, e.g. `t0`, `t0` gives `t*x1`.
///
/// # Safety
/// Pointers must be valid; `out` receives a string for [`ms_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ms_algebra_multiply(
    a: *const MsAlgebra,
    lhs: *const c_char,
    rhs: *const c_char,
    out: *mut *mut c_char,
) -> MsStatus {
    guard(|| {
        let p = &handle(a)?.presentation;
        let x = parse_element(read_str(lhs)?, p)?;
        let y = parse_element(read_str(rhs)?, p)?;
        write_string(out, format_element(&p.multiply(&x, &y), p))
    })
}

/// Coproduct of `element` as `left|right` terms.
///
/// # Safety
/// Pointers must be valid; `out` receives a string for [`ms_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ms_algebra_coproduct(
    a: *const MsAlgebra,
    element: *const c_char,
    out: *mut *mut c_char,
) -> MsStatus {
    guard(|| {
        let p = &handle(a)?.presentation;
        let x = parse_element(read_str(element)?, p)?;
        if !p.is_homogeneous(&x) {
            return Err(Failure(MsStatus::ParseError, "element is not homogeneous".into()));
        }
        let delta = coproduct(&p.normalize_element(&x), p).map_err(domain)?;
        write_string(out, delta.format(p))
    })
}

/// Product in the Steenrod algebra of two elements written with named
/// generators or `dual(...)`, e.g. `Sq2` and `Sq2`.
///
/// # Safety
/// Pointers must be valid; `out` receives a string for [`ms_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ms_dual_product(lhs: *const c_char, rhs: *const c_char, out: *mut *mut c_char) -> MsStatus {
    guard(|| {
        let a = SteenrodAlgebra::new(64);
        let x = a.parse(read_str(lhs)?)?;
        let y = a.parse(read_str(rhs)?)?;
        write_string(out, a.format(&a.product(&x, &y)?))
    })
}

/// Starts a resolution over the finite quotient `algebra`.
///
/// # Safety
/// `algebra` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ms_resolution_new(
    algebra: *const c_char,
    stem_max: i32,
    f_max: u32,
    out: *mut *mut MsResolution,
) -> MsStatus {
    guard(|| {
        let kind = parse_kind(read_str(algebra)?)?;
        let resolution = Resolution::new(kind, stem_max, f_max).map_err(domain)?;
        write_out(
            out,
            Box::into_raw(Box::new(MsResolution {
                resolution,
                chart: None,
            })),
        )
    })
}

/// # Safety
/// `r` must come from [`ms_resolution_new`] and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ms_resolution_free(r: *mut MsResolution) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Builds one more map; `done` is set once Ext through `f_max` is available.
///
/// # Safety
/// `r` must be a live handle; `done` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ms_resolution_step(r: *mut MsResolution, done: *mut bool) -> MsStatus {
    guard(|| {
        let r = r
            .as_mut()
            .ok_or_else(|| Failure(MsStatus::NullArgument, "null handle".into()))?;
        if !r.resolution.is_complete() {
            r.resolution.step();
            r.chart = None;
        }
        write_out(done, r.resolution.is_complete())
    })
}

fn chart_of(r: &mut MsResolution) -> Result<&ExtChart, Failure> {
    if !r.resolution.is_complete() {
        return Err(domain("resolution is not complete"));
    }
    Ok(r.chart.get_or_insert_with(|| ext_chart(&r.resolution)))
}

/// Dimension of Ext at `(s, f, w)`. The resolution must be complete.
///
/// # Safety
/// `r` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ms_resolution_ext_dim(
    r: *mut MsResolution,
    s: i32,
    f: u32,
    w: i32,
    out: *mut usize,
) -> MsStatus {
    guard(|| {
        let r = r
            .as_mut()
            .ok_or_else(|| Failure(MsStatus::NullArgument, "null handle".into()))?;
        let dim = chart_of(r)?.dim(TriDegree::new(s, f, w));
        write_out(out, dim)
    })
}

/// The chart as TSV with columns `s f w dim`.
///
/// # Safety
/// `r` must be a live handle; `out` receives a string for [`ms_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ms_resolution_chart_tsv(r: *mut MsResolution, out: *mut *mut c_char) -> MsStatus {
    guard(|| {
        let r = r
            .as_mut()
            .ok_or_else(|| Failure(MsStatus::NullArgument, "null handle".into()))?;
        let tsv = chart_of(r)?.to_tsv();
        write_string(out, tsv)
    })
}

/// The resolution so far in checkpoint text form.
///
/// # Safety
/// `r` must be a live handle; `out` receives a string for [`ms_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ms_resolution_checkpoint(r: *const MsResolution, out: *mut *mut c_char) -> MsStatus {
    guard(|| {
        let r = handle(r)?;
        write_string(out, write_checkpoint(&r.resolution))
    })
}

/// Runs the `A//A(2)` ladder (or the `A//A(1)` one when `ko` is set) through
/// `max_stem` and reports whether every step passed.
///
/// # Safety
/// `certified` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ms_ladder_certify(max_stem: i32, ko: bool, certified: *mut bool) -> MsStatus {
    guard(|| {
        let reports = if ko { ko_ladder(max_stem) } else { tmf_ladder(max_stem) }.map_err(domain)?;
        write_out(certified, reports.iter().all(|r| r.ok()))
    })
}

/// Motivic TSV (`s f w dim tau_rank`) for a chart in the text format
/// `class <id> s=<int> f=<int>` / `d <r> <source> <target>`.
///
/// # Safety
/// `chart` must be a NUL-terminated string; `out` receives a string for
/// [`ms_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ms_motivic_tsv(
    chart: *const c_char,
    w_min: i32,
    w_max: i32,
    out: *mut *mut c_char,
) -> MsStatus {
    guard(|| {
        let c = Chart::parse(read_str(chart)?)?;
        write_string(out, motivic_assemble(&c, w_min, w_max)?.to_tsv())
    })
}
