//! C ABI over the moonfill engine.
//!
//! Handles are opaque pointers created and released through the paired
//! `_parse`/`_free` calls. Every function returns a [`MoonfillStatus`];
//! on anything but `Ok` the thread-local message from
//! [`moonfill_last_error`] describes the failure. Strings returned through
//! out-parameters are NUL-terminated, UTF-8, and owned by the caller, who
//! releases them with [`moonfill_string_free`]. Polynomials cross the
//! boundary in the JSON term-list format.

use moonfill::bijections;
use moonfill::encoding;
use moonfill::error::Error;
use moonfill::filling::{self, ColSubset, Filling, RowSubset, StatKind};
use moonfill::io;
use moonfill::poly;
use moonfill::shape::MoonPolyomino;
use moonfill::verify::{self, Config, Theorem};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

/// Result codes. Everything except `Ok` leaves a message in
/// `moonfill_last_error`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoonfillStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidShape = 4,
    InvalidFilling = 5,
    BadIndex = 6,
    InfeasibleSums = 7,
    MalformedInput = 8,
    DomainError = 9,
    InternalError = 10,
    Panicked = 11,
}

/// Which mixed statistic anchors a chain.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoonfillStat {
    Top = 0,
    Bottom = 1,
    Left = 2,
    Right = 3,
}

impl MoonfillStat {
    fn kind(self) -> StatKind {
        match self {
            MoonfillStat::Top => StatKind::Top,
            MoonfillStat::Bottom => StatKind::Bottom,
            MoonfillStat::Left => StatKind::Left,
            MoonfillStat::Right => StatKind::Right,
        }
    }
}

/// Opaque handle to a validated shape.
pub struct MoonfillShape {
    inner: Arc<MoonPolyomino>,
}

/// Opaque handle to a filling of a shape.
pub struct MoonfillFilling {
    inner: Filling,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> MoonfillStatus {
    match err {
        Error::Parse(_) => MoonfillStatus::ParseError,
        Error::EmptyShape
        | Error::NotComparable(..)
        | Error::NotColumnConvex(_)
        | Error::EmptyColumn(_) => MoonfillStatus::InvalidShape,
        Error::CellOutsideShape { .. } | Error::MultipleOnesInRow(_) => {
            MoonfillStatus::InvalidFilling
        }
        Error::IndexOutOfRange { .. }
        | Error::LengthMismatch { .. }
        | Error::LetterOutOfRange { .. } => MoonfillStatus::BadIndex,
        Error::InfeasibleSums(_) => MoonfillStatus::InfeasibleSums,
        Error::MalformedComposition(_) => MoonfillStatus::MalformedInput,
        Error::NotARectangle
        | Error::NoPivotFound
        | Error::ShapeMismatch
        | Error::InvalidEndpointSets(_) => MoonfillStatus::DomainError,
        Error::InexactDivision => MoonfillStatus::InternalError,
    }
}

fn fail(err: Error) -> MoonfillStatus {
    let status = status_of(&err);
    set_error(&err.to_string());
    status
}

fn guarded(body: impl FnOnce() -> MoonfillStatus) -> MoonfillStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            MoonfillStatus::Panicked
        }
    }
}

unsafe fn text_arg<'a>(ptr: *const c_char) -> Result<&'a str, MoonfillStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(MoonfillStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        MoonfillStatus::InvalidUtf8
    })
}

unsafe fn slice_arg<'a>(ptr: *const usize, len: usize) -> Result<&'a [usize], MoonfillStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        set_error("null array argument with nonzero length");
        return Err(MoonfillStatus::NullArgument);
    }
    Ok(std::slice::from_raw_parts(ptr, len))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> MoonfillStatus {
    if out.is_null() {
        set_error("null out-parameter");
        return MoonfillStatus::NullArgument;
    }
    out.write(value);
    MoonfillStatus::Ok
}

unsafe fn write_string(out: *mut *mut c_char, value: String) -> MoonfillStatus {
    match CString::new(value) {
        Ok(cstring) => write_out(out, cstring.into_raw()),
        Err(_) => {
            set_error("output contained an interior NUL byte");
            MoonfillStatus::InternalError
        }
    }
}

unsafe fn shape_arg<'a>(ptr: *const MoonfillShape) -> Result<&'a MoonfillShape, MoonfillStatus> {
    if ptr.is_null() {
        set_error("null shape handle");
        return Err(MoonfillStatus::NullArgument);
    }
    Ok(&*ptr)
}

unsafe fn filling_arg<'a>(
    ptr: *const MoonfillFilling,
) -> Result<&'a MoonfillFilling, MoonfillStatus> {
    if ptr.is_null() {
        set_error("null filling handle");
        return Err(MoonfillStatus::NullArgument);
    }
    Ok(&*ptr)
}

/// Message describing the most recent failure on this thread. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn moonfill_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `ptr` must come from a moonfill call and not have been freed before.
#[no_mangle]
pub unsafe extern "C" fn moonfill_string_free(ptr: *mut c_char) {
    if !ptr.is_null() {
        drop(CString::from_raw(ptr));
    }
}

/// Parses a shape from its text format (one `left right` interval per
/// line) and validates it.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn moonfill_shape_parse(
    text: *const c_char,
    out: *mut *mut MoonfillShape,
) -> MoonfillStatus {
    guarded(|| {
        let text = match text_arg(text) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match io::parse_shape(text) {
            Ok(shape) => write_out(
                out,
                Box::into_raw(Box::new(MoonfillShape { inner: Arc::new(shape) })),
            ),
            Err(err) => fail(err),
        }
    })
}

/// Releases a shape handle.
///
/// # Safety
/// `shape` must come from `moonfill_shape_parse` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn moonfill_shape_free(shape: *mut MoonfillShape) {
    if !shape.is_null() {
        drop(Box::from_raw(shape));
    }
}

/// Row count, column count, and the pivot column of the length split.
///
/// # Safety
/// All pointers must be valid; see the crate docs.
#[no_mangle]
pub unsafe extern "C" fn moonfill_shape_info(
    shape: *const MoonfillShape,
    rows: *mut usize,
    cols: *mut usize,
    pivot: *mut usize,
) -> MoonfillStatus {
    guarded(|| {
        let shape = match shape_arg(shape) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let class = shape.inner.classify_columns();
        for (ptr, value) in [(rows, shape.inner.n()), (cols, shape.inner.m()), (pivot, class.pivot)]
        {
            let status = write_out(ptr, value);
            if status != MoonfillStatus::Ok {
                return status;
            }
        }
        MoonfillStatus::Ok
    })
}

/// The shape in its text format.
///
/// # Safety
/// All pointers must be valid; see the crate docs.
#[no_mangle]
pub unsafe extern "C" fn moonfill_shape_format(
    shape: *const MoonfillShape,
    out: *mut *mut c_char,
) -> MoonfillStatus {
    guarded(|| {
        let shape = match shape_arg(shape) {
            Ok(s) => s,
            Err(status) => return status,
        };
        write_string(out, io::format_shape(&shape.inner))
    })
}

/// Parses a filling (one `row col` 1-cell per line) against a shape.
///
/// # Safety
/// All pointers must be valid; see the crate docs.
#[no_mangle]
pub unsafe extern "C" fn moonfill_filling_parse(
    shape: *const MoonfillShape,
    text: *const c_char,
    out: *mut *mut MoonfillFilling,
) -> MoonfillStatus {
    guarded(|| {
        let shape = match shape_arg(shape) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let text = match text_arg(text) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match io::parse_filling(text, &shape.inner) {
            Ok(f) => write_out(out, Box::into_raw(Box::new(MoonfillFilling { inner: f }))),
            Err(err) => fail(err),
        }
    })
}

/// Releases a filling handle.
///
/// # Safety
/// `filling` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn moonfill_filling_free(filling: *mut MoonfillFilling) {
    if !filling.is_null() {
        drop(Box::from_raw(filling));
    }
}

/// The filling in its text format (cells sorted by row).
///
/// # Safety
/// All pointers must be valid; see the crate docs.
#[no_mangle]
pub unsafe extern "C" fn moonfill_filling_format(
    filling: *const MoonfillFilling,
    out: *mut *mut c_char,
) -> MoonfillStatus {
    guarded(|| {
        let filling = match filling_arg(filling) {
            Ok(f) => f,
            Err(status) => return status,
        };
        write_string(out, io::format_filling(&filling.inner))
    })
}

/// Northeast and southeast chain counts.
///
/// # Safety
/// All pointers must be valid; see the crate docs.
#[no_mangle]
pub unsafe extern "C" fn moonfill_chain_counts(
    filling: *const MoonfillFilling,
    ne: *mut usize,
    se: *mut usize,
) -> MoonfillStatus {
    guarded(|| {
        let filling = match filling_arg(filling) {
            Ok(f) => f,
            Err(status) => return status,
        };
        let (got_ne, got_se) = filling.inner.ne_se();
        let status = write_out(ne, got_ne);
        if status != MoonfillStatus::Ok {
            return status;
        }
        write_out(se, got_se)
    })
}

/// A mixed statistic and its complement-subset companion.
///
/// # Safety
/// All pointers must be valid; see the crate docs.
#[no_mangle]
pub unsafe extern "C" fn moonfill_mixed_pair(
    filling: *const MoonfillFilling,
    stat: MoonfillStat,
    subset: *const usize,
    subset_len: usize,
    value: *mut usize,
    complement: *mut usize,
) -> MoonfillStatus {
    guarded(|| {
        let filling = match filling_arg(filling) {
            Ok(f) => f,
            Err(status) => return status,
        };
        let subset = match slice_arg(subset, subset_len) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match filling.inner.mixed_pair(stat.kind(), subset) {
            Ok((a, b)) => {
                let status = write_out(value, a);
                if status != MoonfillStatus::Ok {
                    return status;
                }
                write_out(complement, b)
            }
            Err(err) => fail(err),
        }
    })
}

/// The exact joint distribution of a mixed statistic over all fillings
/// with the given sums, as a JSON list of `{i, j, coeff}` terms.
///
/// # Safety
/// All pointers must be valid; see the crate docs.
#[no_mangle]
pub unsafe extern "C" fn moonfill_distribution_json(
    shape: *const MoonfillShape,
    row_sums: *const usize,
    row_len: usize,
    col_sums: *const usize,
    col_len: usize,
    stat: MoonfillStat,
    subset: *const usize,
    subset_len: usize,
    out: *mut *mut c_char,
) -> MoonfillStatus {
    guarded(|| {
        let shape = match shape_arg(shape) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let (e, s, subset) =
            match (slice_arg(row_sums, row_len), slice_arg(col_sums, col_len), slice_arg(subset, subset_len)) {
                (Ok(e), Ok(s), Ok(subset)) => (e, s, subset),
                (Err(status), ..) | (_, Err(status), _) | (.., Err(status)) => return status,
            };
        match filling::distribution(&shape.inner, e, s, stat.kind(), subset) {
            Ok(dist) => write_string(out, dist.to_json().to_string()),
            Err(err) => fail(err),
        }
    })
}

/// The closed-form product of Gaussian binomials for the same data, as a
/// JSON term list.
///
/// # Safety
/// All pointers must be valid; see the crate docs.
#[no_mangle]
pub unsafe extern "C" fn moonfill_product_formula_json(
    shape: *const MoonfillShape,
    row_sums: *const usize,
    row_len: usize,
    col_sums: *const usize,
    col_len: usize,
    out: *mut *mut c_char,
) -> MoonfillStatus {
    guarded(|| {
        let shape = match shape_arg(shape) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let (e, s) = match (slice_arg(row_sums, row_len), slice_arg(col_sums, col_len)) {
            (Ok(e), Ok(s)) => (e, s),
            (Err(status), _) | (_, Err(status)) => return status,
        };
        match poly::product_formula(&shape.inner, e, s) {
            Ok(product) => write_string(out, product.to_json().to_string()),
            Err(err) => fail(err),
        }
    })
}

/// Encodes a filling as its composition sequence, in the text format
/// `col: parts...`, one line per column.
///
/// # Safety
/// All pointers must be valid; see the crate docs.
#[no_mangle]
pub unsafe extern "C" fn moonfill_compositions_format(
    filling: *const MoonfillFilling,
    out: *mut *mut c_char,
) -> MoonfillStatus {
    guarded(|| {
        let filling = match filling_arg(filling) {
            Ok(f) => f,
            Err(status) => return status,
        };
        write_string(out, io::format_compositions(&encoding::psi(&filling.inner)))
    })
}

/// Decodes a composition sequence back to its unique filling.
///
/// # Safety
/// All pointers must be valid; see the crate docs.
#[no_mangle]
pub unsafe extern "C" fn moonfill_compositions_parse(
    shape: *const MoonfillShape,
    row_sums: *const usize,
    row_len: usize,
    col_sums: *const usize,
    col_len: usize,
    text: *const c_char,
    out: *mut *mut MoonfillFilling,
) -> MoonfillStatus {
    guarded(|| {
        let shape = match shape_arg(shape) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let (e, s) = match (slice_arg(row_sums, row_len), slice_arg(col_sums, col_len)) {
            (Ok(e), Ok(s)) => (e, s),
            (Err(status), _) | (_, Err(status)) => return status,
        };
        let text = match text_arg(text) {
            Ok(t) => t,
            Err(status) => return status,
        };
        let parsed = match io::parse_compositions(text, shape.inner.m()) {
            Ok(cs) => cs,
            Err(err) => return fail(err),
        };
        match encoding::psi_inv(&shape.inner, e, s, &parsed) {
            Ok(f) => write_out(out, Box::into_raw(Box::new(MoonfillFilling { inner: f }))),
            Err(err) => fail(err),
        }
    })
}

/// Applies one statistic-transporting bijection. `map` is one of
/// `phi-alpha`, `phi-alpha-inv`, `theta`, `Theta`, `Theta-inv`, `rho`,
/// `phi-gamma`, `xi`, `Sigma`, `Sigma-inv`, `h`, `h-inv`, `lambda`.
/// `index` carries the row for `theta` and the column for `xi`; `subset`
/// feeds the composite maps; `target` is required for `lambda` (a row
/// permutation of the filling's shape) and for `h-inv` (the original
/// shape).
///
/// # Safety
/// All pointers must be valid; see the crate docs.
#[no_mangle]
pub unsafe extern "C" fn moonfill_bijection(
    filling: *const MoonfillFilling,
    map: *const c_char,
    subset: *const usize,
    subset_len: usize,
    index: usize,
    target: *const MoonfillShape,
    out: *mut *mut MoonfillFilling,
) -> MoonfillStatus {
    guarded(|| {
        let filling = match filling_arg(filling) {
            Ok(f) => f,
            Err(status) => return status,
        };
        let map = match text_arg(map) {
            Ok(m) => m,
            Err(status) => return status,
        };
        let subset = match slice_arg(subset, subset_len) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let f = &filling.inner;
        let shape = f.shape();
        let result = match map {
            "phi-alpha" => Ok(bijections::phi_alpha(f)),
            "phi-alpha-inv" => bijections::phi_alpha_inv(f),
            "theta" => bijections::theta_r(f, index),
            "Theta" => RowSubset::new(shape.n(), subset)
                .and_then(|s| bijections::theta_alpha(f, &s)),
            "Theta-inv" => RowSubset::new(shape.n(), subset)
                .and_then(|s| bijections::theta_alpha_inv(f, &s)),
            "rho" => bijections::rho(f),
            "phi-gamma" => Ok(bijections::phi_gamma(f)),
            "xi" => bijections::xi_c(f, index),
            "Sigma" => ColSubset::new(shape.m(), subset)
                .and_then(|t| bijections::sigma_gamma(f, &t)),
            "Sigma-inv" => ColSubset::new(shape.m(), subset)
                .and_then(|t| bijections::sigma_gamma_inv(f, &t)),
            "h" => Ok(bijections::h_transport(f)),
            "h-inv" => match shape_arg(target) {
                Ok(target) => bijections::h_transport_inv(f, &target.inner),
                Err(status) => return status,
            },
            "lambda" => match shape_arg(target) {
                Ok(target) => RowSubset::new(shape.n(), subset)
                    .and_then(|s| bijections::lambda_alpha(f, &s, &target.inner)),
                Err(status) => return status,
            },
            unknown => Err(Error::Parse(format!("unknown map `{unknown}`"))),
        };
        match result {
            Ok(image) => {
                write_out(out, Box::into_raw(Box::new(MoonfillFilling { inner: image })))
            }
            Err(err) => fail(err),
        }
    })
}

/// Runs one verification suite; writes a JSON report and whether every
/// check passed.
///
/// # Safety
/// All pointers must be valid; see the crate docs.
#[no_mangle]
pub unsafe extern "C" fn moonfill_verify_json(
    theorem: *const c_char,
    seed: u64,
    shapes: usize,
    max_rows: usize,
    max_cols: usize,
    out: *mut *mut c_char,
    passed: *mut bool,
) -> MoonfillStatus {
    guarded(|| {
        let name = match text_arg(theorem) {
            Ok(t) => t,
            Err(status) => return status,
        };
        let Some(theorem) = Theorem::parse(name) else {
            set_error(&format!("unknown theorem `{name}`"));
            return MoonfillStatus::ParseError;
        };
        let config = Config { seed, shapes, max_rows, max_cols, threads: 1 };
        let suite = verify::run(theorem, &config);
        let checks: Vec<serde_json::Value> = suite
            .checks
            .iter()
            .map(|c| {
                serde_json::json!({ "name": c.name, "pass": c.pass, "detail": c.detail })
            })
            .collect();
        let report = serde_json::json!({
            "theorem": suite.theorem,
            "seed": suite.seed,
            "checks": checks,
        });
        let status = write_out(passed, suite.passed());
        if status != MoonfillStatus::Ok {
            return status;
        }
        write_string(out, report.to_string())
    })
}
