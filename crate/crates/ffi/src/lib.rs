//! C ABI over `iwasawa-core`.
//!
//! Every fallible function returns an [`IwStatus`] and writes its result
//! through an out-pointer. On failure the message is kept per thread and can
//! be read with [`iw_last_error`]. Handles are opaque and owned by the caller
//! until passed to the matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use iwasawa_core::criterion::{check_condition, parse_records};
use iwasawa_core::iwasawa::{fit_invariants, ClassNumberSeries};
use iwasawa_core::lemma31::{self, Branch, Dim, DimResult, IAlphaInstance};
use iwasawa_core::series::{Mu, PadicPowerSeries, WeierstrassData};
use iwasawa_core::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    NotOddPrime = 4,
    PrecisionOverflow = 5,
    NotInMaximalIdeal = 6,
    UncertifiedInput = 7,
    Uncertified = 8,
    Unstable = 9,
    InsufficientData = 10,
    NoFit = 11,
    InvalidRecord = 12,
    OutOfRange = 13,
    Failed = 14,
    Panic = 15,
}

impl From<&Error> for IwStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::NotOddPrime(_) => IwStatus::NotOddPrime,
            Error::PrecisionOverflow { .. } => IwStatus::PrecisionOverflow,
            Error::NotInMaximalIdeal => IwStatus::NotInMaximalIdeal,
            Error::UncertifiedInput => IwStatus::UncertifiedInput,
            Error::Uncertified => IwStatus::Uncertified,
            Error::Unstable(_) => IwStatus::Unstable,
            Error::InsufficientData(_) => IwStatus::InsufficientData,
            Error::InvalidRecord(_) => IwStatus::InvalidRecord,
            Error::Parse(_) | Error::InvalidArgument(_) | Error::MismatchedPrime(..) => IwStatus::InvalidArgument,
            _ => IwStatus::Failed,
        }
    }
}

/// Branch of the `dim I_alpha` case analysis; `None` when `mu/lambda` could
/// not be certified.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IwBranch {
    None = 0,
    MuPositive = 1,
    UnitF = 2,
    UGe1 = 3,
    LambdaGt1 = 4,
    LambdaEq1Generic = 5,
    LambdaEq1Residual = 6,
}

impl From<Option<Branch>> for IwBranch {
    fn from(b: Option<Branch>) -> Self {
        match b {
            None => IwBranch::None,
            Some(Branch::MuPositive) => IwBranch::MuPositive,
            Some(Branch::UnitF) => IwBranch::UnitF,
            Some(Branch::UGe1) => IwBranch::UGe1,
            Some(Branch::LambdaGt1) => IwBranch::LambdaGt1,
            Some(Branch::LambdaEq1Generic) => IwBranch::LambdaEq1Generic,
            Some(Branch::LambdaEq1Residual) => IwBranch::LambdaEq1Residual,
        }
    }
}

/// `mu_infinite` is set when every stored coefficient vanishes; `lambda` is
/// meaningful only when `has_lambda`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IwMuLambda {
    pub mu: u32,
    pub mu_infinite: bool,
    pub lambda: usize,
    pub has_lambda: bool,
    pub certified: bool,
}

/// A quotient dimension. With `lower_bound` set, `value` is only a lower bound.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IwDim {
    pub value: usize,
    pub lower_bound: bool,
    pub certified: bool,
    pub branch: IwBranch,
}

impl From<&DimResult> for IwDim {
    fn from(r: &DimResult) -> Self {
        let (value, lower_bound) = match r.dim {
            Dim::Exact(v) => (v, false),
            Dim::LowerBound(v) => (v, true),
        };
        IwDim { value, lower_bound, certified: r.certified, branch: r.branch.into() }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IwFit {
    pub lambda: u64,
    pub mu: u64,
    pub nu: i64,
    pub n0: u32,
}

/// Opaque truncated power series.
pub struct IwSeries(PadicPowerSeries);

/// Opaque Weierstrass factorisation `p^mu g U`.
pub struct IwWeierstrass(WeierstrassData);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<Vec<u8>>) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("error message contained NUL").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: IwStatus, msg: impl Into<Vec<u8>>) -> IwStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> Result<(), IwStatus>) -> IwStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => IwStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(IwStatus::Panic, "internal panic"),
    }
}

fn core<T>(r: iwasawa_core::Result<T>) -> Result<T, IwStatus> {
    r.map_err(|e| fail(IwStatus::from(&e), e.to_string()))
}

unsafe fn str_arg<'a>(s: *const c_char) -> Result<&'a str, IwStatus> {
    if s.is_null() {
        return Err(fail(IwStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(IwStatus::InvalidUtf8, "string argument is not UTF-8"))
}

unsafe fn out_arg<'a, T>(p: *mut T) -> Result<&'a mut T, IwStatus> {
    p.as_mut().ok_or_else(|| fail(IwStatus::NullPointer, "null output pointer"))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, IwStatus> {
    p.as_ref().ok_or_else(|| fail(IwStatus::NullPointer, "null handle"))
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn iw_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parse `coeff*T^k` terms into an exact series at precision `p^precision`
/// with `window` stored coefficients.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn iw_series_parse(
    p: u64,
    precision: u32,
    window: usize,
    text: *const c_char,
    out: *mut *mut IwSeries,
) -> IwStatus {
    guard(|| {
        let out = out_arg(out)?;
        let s = core(PadicPowerSeries::parse(p, precision, window, str_arg(text)?))?;
        *out = Box::into_raw(Box::new(IwSeries(s)));
        Ok(())
    })
}

/// Series from `len` signed coefficients, lowest degree first. With `exact`
/// unset the coefficients are a truncation of an unknown series.
///
/// # Safety
/// `coeffs` must point to `len` readable values and `out` be valid.
#[no_mangle]
pub unsafe extern "C" fn iw_series_from_coeffs(
    p: u64,
    precision: u32,
    window: usize,
    coeffs: *const i64,
    len: usize,
    exact: bool,
    out: *mut *mut IwSeries,
) -> IwStatus {
    guard(|| {
        let out = out_arg(out)?;
        if coeffs.is_null() && len > 0 {
            return Err(fail(IwStatus::NullPointer, "null coefficient array"));
        }
        let c = if len == 0 { &[][..] } else { std::slice::from_raw_parts(coeffs, len) };
        let s = core(PadicPowerSeries::from_i64(p, precision, window, c, exact))?;
        *out = Box::into_raw(Box::new(IwSeries(s)));
        Ok(())
    })
}

/// # Safety
/// `s` must be NULL or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn iw_series_free(s: *mut IwSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of stored coefficients, or 0 for NULL.
///
/// # Safety
/// `s` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn iw_series_window(s: *const IwSeries) -> usize {
    s.as_ref().map_or(0, |s| s.0.window())
}

/// Coefficient `i` as a residue in `[0, p^precision)`.
///
/// # Safety
/// `s` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn iw_series_coeff(s: *const IwSeries, i: usize, out: *mut u64) -> IwStatus {
    guard(|| {
        let (s, out) = (handle(s)?, out_arg(out)?);
        if i >= s.0.window() {
            return Err(fail(IwStatus::OutOfRange, format!("index {i} outside window {}", s.0.window())));
        }
        *out = s.0.coeff(i);
        Ok(())
    })
}

/// # Safety
/// `s` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn iw_mu_lambda(s: *const IwSeries, out: *mut IwMuLambda) -> IwStatus {
    guard(|| {
        let (s, out) = (handle(s)?, out_arg(out)?);
        let ml = s.0.mu_lambda();
        let (mu, mu_infinite) = match ml.mu {
            Mu::Finite(m) => (m, false),
            Mu::InfinityWithinWindow => (0, true),
        };
        *out = IwMuLambda {
            mu,
            mu_infinite,
            lambda: ml.lambda.unwrap_or(0),
            has_lambda: ml.lambda.is_some(),
            certified: ml.certified,
        };
        Ok(())
    })
}

/// Weierstrass preparation. Fails with `UncertifiedInput` when `mu/lambda`
/// cannot be certified.
///
/// # Safety
/// `s` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn iw_weierstrass_prep(s: *const IwSeries, out: *mut *mut IwWeierstrass) -> IwStatus {
    guard(|| {
        let (s, out) = (handle(s)?, out_arg(out)?);
        let w = core(s.0.weierstrass_prep())?;
        *out = Box::into_raw(Box::new(IwWeierstrass(w)));
        Ok(())
    })
}

/// # Safety
/// `w` must be NULL or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn iw_weierstrass_free(w: *mut IwWeierstrass) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// # Safety
/// `w` must be a live handle; the out-pointers may be NULL.
#[no_mangle]
pub unsafe extern "C" fn iw_weierstrass_invariants(
    w: *const IwWeierstrass,
    mu: *mut u32,
    lambda: *mut usize,
    certified: *mut bool,
) -> IwStatus {
    guard(|| {
        let w = &handle(w)?.0;
        if let Some(m) = mu.as_mut() {
            *m = w.mu;
        }
        if let Some(l) = lambda.as_mut() {
            *l = w.lambda;
        }
        if let Some(c) = certified.as_mut() {
            *c = w.certified;
        }
        Ok(())
    })
}

/// Coefficient `i <= lambda` of the distinguished polynomial, modulo
/// `p^(precision - mu)`.
///
/// # Safety
/// `w` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn iw_weierstrass_distinguished_coeff(
    w: *const IwWeierstrass,
    i: usize,
    out: *mut u64,
) -> IwStatus {
    guard(|| {
        let (w, out) = (&handle(w)?.0, out_arg(out)?);
        *out = *w
            .distinguished
            .get(i)
            .ok_or_else(|| fail(IwStatus::OutOfRange, format!("index {i} above lambda = {}", w.lambda)))?;
        Ok(())
    })
}

/// A copy of the unit factor `U` as a new series handle.
///
/// # Safety
/// `w` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn iw_weierstrass_unit(w: *const IwWeierstrass, out: *mut *mut IwSeries) -> IwStatus {
    guard(|| {
        let (w, out) = (&handle(w)?.0, out_arg(out)?);
        *out = Box::into_raw(Box::new(IwSeries(w.unit.clone())));
        Ok(())
    })
}

unsafe fn instance(s: *const IwSeries, num: i64, den: i64) -> Result<IAlphaInstance, IwStatus> {
    let f = handle(s)?.0.clone();
    if den == 0 {
        return Err(fail(IwStatus::InvalidArgument, "alpha denominator is zero"));
    }
    core(IAlphaInstance::with_ratio(f, num, den))
}

/// `dim Z_p[[S,T]]/I_alpha` for `alpha = num/den`, `p` not dividing `den`.
///
/// # Safety
/// `s` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn iw_dim_ialpha(s: *const IwSeries, num: i64, den: i64, out: *mut IwDim) -> IwStatus {
    guard(|| {
        let out = out_arg(out)?;
        let r = core(lemma31::dim_ialpha(&instance(s, num, den)?))?;
        *out = IwDim::from(&r);
        Ok(())
    })
}

/// Dimensions for `alpha` and `-alpha`, and whether one is at most 1.
///
/// # Safety
/// `s` must be a live handle and the out-pointers valid.
#[no_mangle]
pub unsafe extern "C" fn iw_lemma31_min(
    s: *const IwSeries,
    num: i64,
    den: i64,
    plus: *mut IwDim,
    minus: *mut IwDim,
    min_le_1: *mut bool,
) -> IwStatus {
    guard(|| {
        let (plus, minus, min_le_1) = (out_arg(plus)?, out_arg(minus)?, out_arg(min_le_1)?);
        let r = core(lemma31::lemma31_min(&instance(s, num, den)?))?;
        *plus = IwDim::from(&r.plus);
        *minus = IwDim::from(&r.minus);
        *min_le_1 = r.min_le_1;
        Ok(())
    })
}

/// Fit `e_n = lambda n + mu p^n + nu` to `len` observations `(layers[i],
/// exponents[i])`. Returns `NoFit` when no suffix admits integer invariants.
///
/// # Safety
/// `layers` and `exponents` must point to `len` readable values and `out` be
/// valid.
#[no_mangle]
pub unsafe extern "C" fn iw_fit(
    p: u64,
    layers: *const u32,
    exponents: *const u64,
    len: usize,
    out: *mut IwFit,
) -> IwStatus {
    guard(|| {
        let out = out_arg(out)?;
        if len > 0 && (layers.is_null() || exponents.is_null()) {
            return Err(fail(IwStatus::NullPointer, "null data array"));
        }
        let points: Vec<(u32, u64)> = if len == 0 {
            Vec::new()
        } else {
            let n = std::slice::from_raw_parts(layers, len);
            let e = std::slice::from_raw_parts(exponents, len);
            n.iter().copied().zip(e.iter().copied()).collect()
        };
        let series = core(ClassNumberSeries::new(p, points))?;
        match core(fit_invariants(&series))? {
            Some(f) => {
                *out = IwFit { lambda: f.lambda, mu: f.mu, nu: f.nu, n0: f.n0 };
                Ok(())
            }
            None => Err(fail(IwStatus::NoFit, "no suffix admits integer invariants")),
        }
    })
}

/// Evaluate the criterion on a JSON array (or sequence) of schema-1 field
/// records. `out` receives a JSON array of reports, to be released with
/// [`iw_string_free`].
///
/// # Safety
/// `records_json` must be a NUL-terminated string and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn iw_check_records_json(records_json: *const c_char, out: *mut *mut c_char) -> IwStatus {
    guard(|| {
        let out = out_arg(out)?;
        let records = core(parse_records(str_arg(records_json)?))?;
        let reports: Vec<_> = records.iter().map(check_condition).collect();
        let json = serde_json::to_string(&reports).map_err(|e| fail(IwStatus::Failed, e.to_string()))?;
        *out = CString::new(json).map_err(|_| fail(IwStatus::Failed, "report contained NUL"))?.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn iw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn iw_status_name(status: IwStatus) -> *const c_char {
    let name: &'static CStr = match status {
        IwStatus::Ok => c"OK",
        IwStatus::NullPointer => c"NULL_POINTER",
        IwStatus::InvalidUtf8 => c"INVALID_UTF8",
        IwStatus::InvalidArgument => c"INVALID_ARGUMENT",
        IwStatus::NotOddPrime => c"NOT_ODD_PRIME",
        IwStatus::PrecisionOverflow => c"PRECISION_OVERFLOW",
        IwStatus::NotInMaximalIdeal => c"NOT_IN_MAXIMAL_IDEAL",
        IwStatus::UncertifiedInput => c"UNCERTIFIED_INPUT",
        IwStatus::Uncertified => c"UNCERTIFIED",
        IwStatus::Unstable => c"UNSTABLE",
        IwStatus::InsufficientData => c"INSUFFICIENT_DATA",
        IwStatus::NoFit => c"NO_FIT",
        IwStatus::InvalidRecord => c"INVALID_RECORD",
        IwStatus::OutOfRange => c"OUT_OF_RANGE",
        IwStatus::Failed => c"FAILED",
        IwStatus::Panic => c"PANIC",
    };
    name.as_ptr()
}
