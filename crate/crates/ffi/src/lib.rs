//! C ABI over `tensorcalc`.
//!
//! Objects are opaque heap handles released with the matching `*_free`.
//! Every fallible call returns a [`TcStatus`]; on failure the message is
//! available from [`tc_last_error`] on the same thread until the next call.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tensorcalc::determinants::matrix_determinant;
use tensorcalc::document::{parse_frame, parse_tensor, tensor_to_string};
use tensorcalc::einsum::{evaluate, EinsumError, Mode};
use tensorcalc::metric::{cross, inner, inner_covariant, metric_from_basis, triple};
use tensorcalc::minkowski::{boost, rapidity};
use tensorcalc::symbols::{kronecker, levi_civita_symbol, DeltaKind, EpsilonVariance};
use tensorcalc::{DocumentError, Frame, Metric, TensorError, TensorObject, Variance};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TcStatus {
    Ok = 0,
    NullPointer = 1,
    /// Slot out of range, non-UTF-8 text or a buffer of the wrong size.
    InvalidArgument = 2,
    /// Malformed JSON document.
    Parse = 3,
    /// Shape, index or convention violation.
    Shape = 4,
    /// Singular, indefinite or superluminal input.
    Numeric = 5,
    /// Index expression rejected by the einsum engine.
    Einsum = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TcVariance {
    Up = 0,
    Down = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TcDeltaKind {
    LowerLower = 0,
    UpperUpper = 1,
    Mixed = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TcMode {
    Strict = 0,
    Orthogonal = 1,
}

pub struct TcTensor(TensorObject);

pub struct TcFrame(Frame);

pub struct TcMetric(Metric);

/// Name-to-tensor table for [`tc_einsum`].
pub struct TcBindings(BTreeMap<String, TensorObject>);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(TcStatus, String);

impl Failure {
    fn new(status: TcStatus, msg: impl Into<String>) -> Self {
        Failure(status, msg.into())
    }
}

impl From<TensorError> for Failure {
    fn from(e: TensorError) -> Self {
        let status = if e.is_numeric() {
            TcStatus::Numeric
        } else {
            TcStatus::Shape
        };
        Failure(status, e.to_string())
    }
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        match e {
            DocumentError::Tensor(t) => t.into(),
            other => Failure(TcStatus::Parse, other.to_string()),
        }
    }
}

impl From<EinsumError> for Failure {
    fn from(e: EinsumError) -> Self {
        match e {
            EinsumError::Tensor(t) => t.into(),
            other => Failure(TcStatus::Einsum, other.to_string()),
        }
    }
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> TcStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TcStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            TcStatus::Panic
        }
    }
}

unsafe fn href<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure::new(TcStatus::NullPointer, format!("{what} is null")))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(TcStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::new(TcStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn doubles<'a>(p: *const f64, len: usize, what: &str) -> Result<&'a [f64], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Failure::new(TcStatus::NullPointer, format!("{what} is null")));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(TcStatus::NullPointer, "output pointer is null"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_value<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(TcStatus::NullPointer, "output pointer is null"));
    }
    *out = value;
    Ok(())
}

fn variance(v: TcVariance) -> Variance {
    match v {
        TcVariance::Up => Variance::Up,
        TcVariance::Down => Variance::Down,
    }
}

fn square_rows(dim: usize, flat: &[f64]) -> Vec<Vec<f64>> {
    flat.chunks(dim).map(|r| r.to_vec()).collect()
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn tc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn tc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a tensor from `dim^rank` components in row-major order, slot 0
/// outermost. `slots` may be null when `rank` is 0.
///
/// # Safety
/// `slots` must point to `rank` values and `components` to `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn tc_tensor_new(
    dim: usize,
    slots: *const TcVariance,
    rank: usize,
    weight: i32,
    components: *const f64,
    len: usize,
    out: *mut *mut TcTensor,
) -> TcStatus {
    guard(|| {
        let slots: Vec<Variance> = if rank == 0 {
            Vec::new()
        } else {
            if slots.is_null() {
                return Err(Failure::new(TcStatus::NullPointer, "slots is null"));
            }
            std::slice::from_raw_parts(slots, rank)
                .iter()
                .map(|&v| variance(v))
                .collect()
        };
        let comps = doubles(components, len, "components")?.to_vec();
        let t = TensorObject::new(dim, slots, weight, comps)?;
        put(out, TcTensor(t))
    })
}

/// # Safety
/// `json` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn tc_tensor_from_json(json: *const c_char, out: *mut *mut TcTensor) -> TcStatus {
    guard(|| {
        let t = parse_tensor(text(json, "json")?)?;
        put(out, TcTensor(t))
    })
}

/// Writes a newly allocated JSON document; release it with [`tc_string_free`].
///
/// # Safety
/// `t` must be a live tensor handle.
#[no_mangle]
pub unsafe extern "C" fn tc_tensor_to_json(t: *const TcTensor, out: *mut *mut c_char) -> TcStatus {
    guard(|| {
        let t = href(t, "tensor")?;
        let s =
            CString::new(tensor_to_string(&t.0)).map_err(|e| Failure::new(TcStatus::Panic, e.to_string()))?;
        put_value(out, s.into_raw())
    })
}

/// # Safety
/// `t` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tc_tensor_free(t: *mut TcTensor) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// `t` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tc_tensor_dim(t: *const TcTensor) -> usize {
    t.as_ref().map_or(0, |t| t.0.dim())
}

/// # Safety
/// `t` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tc_tensor_rank(t: *const TcTensor) -> usize {
    t.as_ref().map_or(0, |t| t.0.rank())
}

/// # Safety
/// `t` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tc_tensor_weight(t: *const TcTensor) -> i32 {
    t.as_ref().map_or(0, |t| t.0.weight())
}

/// Number of stored components, `dim^rank`.
///
/// # Safety
/// `t` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tc_tensor_len(t: *const TcTensor) -> usize {
    t.as_ref().map_or(0, |t| t.0.components().len())
}

/// # Safety
/// `t` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tc_tensor_slot(t: *const TcTensor, slot: usize, out: *mut TcVariance) -> TcStatus {
    guard(|| {
        let t = href(t, "tensor")?;
        let v =
            t.0.slots().get(slot).ok_or_else(|| {
                Failure::new(TcStatus::InvalidArgument, format!("slot {slot} out of range"))
            })?;
        let v = match v {
            Variance::Up => TcVariance::Up,
            Variance::Down => TcVariance::Down,
        };
        put_value(out, v)
    })
}

/// Copies the components into `buf`, which must hold exactly
/// [`tc_tensor_len`] doubles.
///
/// # Safety
/// `buf` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn tc_tensor_copy_components(
    t: *const TcTensor,
    buf: *mut f64,
    len: usize,
) -> TcStatus {
    guard(|| {
        let t = href(t, "tensor")?;
        let c = t.0.components();
        if len != c.len() {
            return Err(Failure::new(
                TcStatus::InvalidArgument,
                format!("buffer holds {len} values, tensor has {}", c.len()),
            ));
        }
        if buf.is_null() && len > 0 {
            return Err(Failure::new(TcStatus::NullPointer, "buffer is null"));
        }
        if len > 0 {
            ptr::copy_nonoverlapping(c.as_ptr(), buf, len);
        }
        Ok(())
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_kronecker(dim: usize, kind: TcDeltaKind, out: *mut *mut TcTensor) -> TcStatus {
    guard(|| {
        let kind = match kind {
            TcDeltaKind::LowerLower => DeltaKind::LowerLower,
            TcDeltaKind::UpperUpper => DeltaKind::UpperUpper,
            TcDeltaKind::Mixed => DeltaKind::Mixed,
        };
        put(out, TcTensor(kronecker(dim, kind)?))
    })
}

/// Permutation symbol with all slots `variance`; weight +1 upper, -1 lower.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_levi_civita(
    dim: usize,
    variance: TcVariance,
    out: *mut *mut TcTensor,
) -> TcStatus {
    guard(|| {
        let v = match variance {
            TcVariance::Up => EpsilonVariance::AllUp,
            TcVariance::Down => EpsilonVariance::AllDown,
        };
        put(out, TcTensor(levi_civita_symbol(dim, v)?))
    })
}

/// Determinant of any rank-2 object.
///
/// # Safety
/// `t` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tc_determinant(t: *const TcTensor, out: *mut f64) -> TcStatus {
    guard(|| {
        let t = href(t, "tensor")?;
        put_value(out, matrix_determinant(&t.0)?)
    })
}

#[no_mangle]
pub extern "C" fn tc_bindings_new() -> *mut TcBindings {
    Box::into_raw(Box::new(TcBindings(BTreeMap::new())))
}

/// Stores a copy of `t` under `name`, replacing any earlier entry.
///
/// # Safety
/// `b` and `t` must be live handles and `name` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn tc_bindings_insert(
    b: *mut TcBindings,
    name: *const c_char,
    t: *const TcTensor,
) -> TcStatus {
    guard(|| {
        let b = b
            .as_mut()
            .ok_or_else(|| Failure::new(TcStatus::NullPointer, "bindings is null"))?;
        let name = text(name, "name")?;
        let t = href(t, "tensor")?;
        b.0.insert(name.to_string(), t.0.clone());
        Ok(())
    })
}

/// # Safety
/// `b` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tc_bindings_free(b: *mut TcBindings) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Evaluates an index expression such as `y^r = a^r_s x^s`.
///
/// # Safety
/// `expr` must be NUL-terminated, `b` a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tc_einsum(
    expr: *const c_char,
    b: *const TcBindings,
    mode: TcMode,
    out: *mut *mut TcTensor,
) -> TcStatus {
    guard(|| {
        let expr = text(expr, "expression")?;
        let b = href(b, "bindings")?;
        let mode = match mode {
            TcMode::Strict => Mode::Strict,
            TcMode::Orthogonal => Mode::Orthogonal,
        };
        put(out, TcTensor(evaluate(expr, &b.0, mode)?))
    })
}

/// Frame from `c^r_s` given as `dim * dim` doubles, row `r` first.
///
/// # Safety
/// `c` must point to `dim * dim` doubles and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_frame_new(dim: usize, c: *const f64, out: *mut *mut TcFrame) -> TcStatus {
    guard(|| {
        if dim == 0 {
            return Err(TensorError::ZeroDimension.into());
        }
        let flat = doubles(c, dim * dim, "c")?;
        put(out, TcFrame(Frame::from_rows(&square_rows(dim, flat))?))
    })
}

/// # Safety
/// `json` must be NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tc_frame_from_json(json: *const c_char, out: *mut *mut TcFrame) -> TcStatus {
    guard(|| {
        let f = parse_frame(text(json, "json")?)?;
        put(out, TcFrame(f))
    })
}

/// # Safety
/// `f` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tc_frame_free(f: *mut TcFrame) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Components of `t` in the new frame, using the weight stored in `t`.
///
/// # Safety
/// `t` and `f` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tc_transform(
    t: *const TcTensor,
    f: *const TcFrame,
    out: *mut *mut TcTensor,
) -> TcStatus {
    guard(|| {
        let t = href(t, "tensor")?;
        let f = href(f, "frame")?;
        put(out, TcTensor(tensorcalc::transform(&t.0, &f.0)?))
    })
}

/// Metric from a symmetric positive-definite covariant tensor.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tc_metric_new(g: *const TcTensor, out: *mut *mut TcMetric) -> TcStatus {
    guard(|| {
        let g = href(g, "metric tensor")?;
        put(out, TcMetric(Metric::new(g.0.clone())?))
    })
}

/// Metric `g_rs = e_r . e_s` of `dim` basis vectors stored row by row.
///
/// # Safety
/// `vectors` must point to `dim * dim` doubles and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_metric_from_basis(
    dim: usize,
    vectors: *const f64,
    out: *mut *mut TcMetric,
) -> TcStatus {
    guard(|| {
        if dim == 0 {
            return Err(TensorError::ZeroDimension.into());
        }
        let flat = doubles(vectors, dim * dim, "vectors")?;
        let basis = square_rows(dim, flat)
            .iter()
            .map(|r| TensorObject::vector(Variance::Up, r))
            .collect::<Result<Vec<_>, _>>()?;
        put(out, TcMetric(metric_from_basis(&basis)?))
    })
}

/// # Safety
/// `m` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tc_metric_free(m: *mut TcMetric) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Scalar product of two contravariant or two covariant vectors.
///
/// # Safety
/// All handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tc_inner(
    x: *const TcTensor,
    y: *const TcTensor,
    m: *const TcMetric,
    out: *mut f64,
) -> TcStatus {
    guard(|| {
        let (x, y, m) = (href(x, "x")?, href(y, "y")?, href(m, "metric")?);
        let v = if x.0.slots() == [Variance::Down] {
            inner_covariant(&x.0, &y.0, &m.0)?
        } else {
            inner(&x.0, &y.0, &m.0)?
        };
        put_value(out, v)
    })
}

/// Contravariant cross product in three dimensions.
///
/// # Safety
/// All handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tc_cross(
    x: *const TcTensor,
    y: *const TcTensor,
    m: *const TcMetric,
    out: *mut *mut TcTensor,
) -> TcStatus {
    guard(|| {
        let (x, y, m) = (href(x, "x")?, href(y, "y")?, href(m, "metric")?);
        put(out, TcTensor(cross(&x.0, &y.0, &m.0)?))
    })
}

/// # Safety
/// All handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tc_triple(
    x: *const TcTensor,
    y: *const TcTensor,
    z: *const TcTensor,
    m: *const TcMetric,
    out: *mut f64,
) -> TcStatus {
    guard(|| {
        let (x, y, z, m) = (href(x, "x")?, href(y, "y")?, href(z, "z")?, href(m, "metric")?);
        put_value(out, triple(&x.0, &y.0, &z.0, &m.0)?)
    })
}

/// Writes the 4x4 boost matrix for velocity `beta` (units of c) row by row.
///
/// # Safety
/// `out` must point to 16 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn tc_boost(beta: f64, out: *mut f64) -> TcStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::new(TcStatus::NullPointer, "output buffer is null"));
        }
        let m = boost(beta)?;
        let flat: Vec<f64> = m.matrix().iter().flatten().copied().collect();
        ptr::copy_nonoverlapping(flat.as_ptr(), out, 16);
        Ok(())
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_rapidity(beta: f64, out: *mut f64) -> TcStatus {
    guard(|| put_value(out, rapidity(beta)?.psi))
}
