//! C interface to `abelcs`.
//!
//! Objects are opaque heap handles released with the matching `*_free`.
//! Every fallible call returns an [`AbelcsStatus`]; on failure the message is
//! kept per thread and can be read with [`abelcs_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use abelcs::heisenberg::{egorov_residual_of, fourier_matrix, Lagrangian};
use abelcs::tangle::{evaluate, linking_oracle, parse_diagram, trace_strands, SliceDiagram};
use abelcs::theta::ThetaOperator;
use abelcs::{qgroup, skein, CycloScalar, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbelcsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Algebra = 4,
    OutOfRange = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// A validated slice diagram.
pub struct AbelcsDiagram(SliceDiagram);

/// An element of the cyclotomic field, possibly with a factor `N^{-1/2}`.
pub struct AbelcsScalar(CycloScalar);

/// A linear operator on the theta space.
pub struct AbelcsOperator(ThetaOperator);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn fail(status: AbelcsStatus, msg: impl Into<String>) -> AbelcsStatus {
    set_error(msg);
    status
}

fn status_of(e: &Error) -> AbelcsStatus {
    match e {
        Error::Tangle(_) | Error::Json(_) | Error::Usage(_) => AbelcsStatus::Parse,
        _ => AbelcsStatus::Algebra,
    }
}

fn guard(f: impl FnOnce() -> Result<(), AbelcsStatus>) -> AbelcsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            AbelcsStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => fail(AbelcsStatus::Panic, "internal panic"),
    }
}

fn lift<T>(r: Result<T, impl Into<Error>>) -> Result<T, AbelcsStatus> {
    r.map_err(|e| {
        let e = e.into();
        fail(status_of(&e), e.to_string())
    })
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, AbelcsStatus> {
    if p.is_null() {
        return Err(fail(AbelcsStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(AbelcsStatus::InvalidUtf8, "string is not UTF-8"))
}

unsafe fn ref_arg<'a, T>(p: *const T) -> Result<&'a T, AbelcsStatus> {
    p.as_ref().ok_or_else(|| fail(AbelcsStatus::NullPointer, "null handle"))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), AbelcsStatus> {
    if out.is_null() {
        return Err(fail(AbelcsStatus::NullPointer, "null output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

/// Copies `text` NUL-terminated into `buf` when it fits. `needed` (if not
/// null) receives the size including the terminator.
unsafe fn write_str(text: &str, buf: *mut c_char, len: usize, needed: *mut usize) -> Result<(), AbelcsStatus> {
    let size = text.len() + 1;
    if !needed.is_null() {
        *needed = size;
    }
    if buf.is_null() || len < size {
        return Err(AbelcsStatus::BufferTooSmall);
    }
    ptr::copy_nonoverlapping(text.as_ptr(), buf.cast::<u8>(), text.len());
    *buf.add(text.len()) = 0;
    Ok(())
}

/// Message of the last failed call on this thread; empty after a success.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes; `needed` null or writable.
#[no_mangle]
pub unsafe extern "C" fn abelcs_last_error(buf: *mut c_char, len: usize, needed: *mut usize) -> AbelcsStatus {
    let msg = LAST_ERROR.with(|e| e.borrow().clone());
    match write_str(&msg, buf, len, needed) {
        Ok(()) => AbelcsStatus::Ok,
        Err(s) => s,
    }
}

/// Parses `.slc` text.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn abelcs_diagram_parse(text: *const c_char, out: *mut *mut AbelcsDiagram) -> AbelcsStatus {
    guard(|| {
        let d = lift(parse_diagram(str_arg(text)?))?;
        put(out, AbelcsDiagram(d))
    })
}

/// # Safety
/// `d` must be null or a handle from `abelcs_diagram_parse` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn abelcs_diagram_free(d: *mut AbelcsDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Level `N` of the diagram, or 0 for a null handle.
///
/// # Safety
/// `d` must be null or a live diagram handle.
#[no_mangle]
pub unsafe extern "C" fn abelcs_diagram_level(d: *const AbelcsDiagram) -> u32 {
    d.as_ref().map_or(0, |d| d.0.n())
}

/// The invariant of the diagram computed slice by slice.
///
/// # Safety
/// `d` must be a live diagram handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn abelcs_diagram_evaluate(d: *const AbelcsDiagram, out: *mut *mut AbelcsScalar) -> AbelcsStatus {
    guard(|| put(out, AbelcsScalar(evaluate(&ref_arg(d)?.0))))
}

/// The invariant from colours, framings and linking numbers.
///
/// # Safety
/// `d` must be a live diagram handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn abelcs_diagram_oracle(d: *const AbelcsDiagram, out: *mut *mut AbelcsScalar) -> AbelcsStatus {
    guard(|| {
        let d = &ref_arg(d)?.0;
        put(out, AbelcsScalar(linking_oracle(&trace_strands(d), d.n())))
    })
}

/// `t^e` at level `n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn abelcs_scalar_t_power(n: u32, e: i64, out: *mut *mut AbelcsScalar) -> AbelcsStatus {
    guard(|| {
        if n == 0 || n % 2 != 0 {
            return Err(fail(AbelcsStatus::Algebra, format!("N must be a positive even integer, got {n}")));
        }
        put(out, AbelcsScalar(CycloScalar::t_power(n, e)))
    })
}

/// # Safety
/// `s` must be null or a live scalar handle.
#[no_mangle]
pub unsafe extern "C" fn abelcs_scalar_free(s: *mut AbelcsScalar) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Writes 1 to `out` when the scalars are equal, else 0.
///
/// # Safety
/// `a`, `b` must be live scalar handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn abelcs_scalar_equal(
    a: *const AbelcsScalar,
    b: *const AbelcsScalar,
    out: *mut i32,
) -> AbelcsStatus {
    guard(|| {
        let (a, b) = (&ref_arg(a)?.0, &ref_arg(b)?.0);
        if out.is_null() {
            return Err(fail(AbelcsStatus::NullPointer, "null output pointer"));
        }
        *out = i32::from(a == b);
        Ok(())
    })
}

/// # Safety
/// `s` must be a live scalar handle; `re` and `im` writable.
#[no_mangle]
pub unsafe extern "C" fn abelcs_scalar_to_complex(s: *const AbelcsScalar, re: *mut f64, im: *mut f64) -> AbelcsStatus {
    guard(|| {
        let z = ref_arg(s)?.0.to_complex();
        if re.is_null() || im.is_null() {
            return Err(fail(AbelcsStatus::NullPointer, "null output pointer"));
        }
        *re = z.re;
        *im = z.im;
        Ok(())
    })
}

/// Canonical text form, e.g. `N^{0} * (-1 t^2)`. Call with a null buffer to
/// learn the size.
///
/// # Safety
/// `s` must be a live scalar handle; `buf` null or valid for `len` bytes;
/// `needed` null or writable.
#[no_mangle]
pub unsafe extern "C" fn abelcs_scalar_to_string(
    s: *const AbelcsScalar,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> AbelcsStatus {
    guard(|| {
        let text = ref_arg(s)?.0.to_string();
        write_str(&text, buf, len, needed).map_err(|st| fail(st, format!("need {} bytes", text.len() + 1)))
    })
}

/// Checks the Hopf, quasitriangular and ribbon identities at level `n`;
/// `passed` receives 1 when all hold.
///
/// # Safety
/// `passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn abelcs_qgroup_check(n: u32, passed: *mut i32) -> AbelcsStatus {
    guard(|| {
        if passed.is_null() {
            return Err(fail(AbelcsStatus::NullPointer, "null output pointer"));
        }
        let mut ok = true;
        for verify in [
            qgroup::verify_hopf,
            qgroup::verify_quasitriangular,
            qgroup::verify_ribbon,
            qgroup::verify_representation_scalars,
        ] {
            ok &= lift(verify(n))?.all_passed();
        }
        *passed = i32::from(ok);
        Ok(())
    })
}

/// `ρ(h)` for a twist word such as `T[a1]+ T[b1]-`, built by the coset sum.
///
/// # Safety
/// `word` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn abelcs_fourier(
    n: u32,
    g: usize,
    word: *const c_char,
    out: *mut *mut AbelcsOperator,
) -> AbelcsStatus {
    guard(|| {
        let w = lift(skein::TwistWord::parse(str_arg(word)?, g))?;
        let h = lift(w.symplectic())?;
        let ft = lift(fourier_matrix(&h, &Lagrangian::standard(g), n))?;
        put(out, AbelcsOperator(ft.forward))
    })
}

/// `ρ(h)` for the same word built from the skein `Ω`.
///
/// # Safety
/// `word` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn abelcs_fourier_omega(
    n: u32,
    g: usize,
    word: *const c_char,
    out: *mut *mut AbelcsOperator,
) -> AbelcsStatus {
    guard(|| {
        let w = lift(skein::TwistWord::parse(str_arg(word)?, g))?;
        put(out, AbelcsOperator(lift(skein::rho_via_omega(&w, n))?))
    })
}

/// Number of entries violating the Egorov identity for `op` as `ρ(h)` of `word`.
///
/// # Safety
/// `op` must be a live operator handle, `word` a NUL-terminated string and
/// `residual` writable.
#[no_mangle]
pub unsafe extern "C" fn abelcs_egorov_residual(
    op: *const AbelcsOperator,
    word: *const c_char,
    residual: *mut usize,
) -> AbelcsStatus {
    guard(|| {
        let op = &ref_arg(op)?.0;
        let w = lift(skein::TwistWord::parse(str_arg(word)?, op.space().g))?;
        let bad = lift(egorov_residual_of(&lift(w.symplectic())?, op))?;
        if residual.is_null() {
            return Err(fail(AbelcsStatus::NullPointer, "null output pointer"));
        }
        *residual = bad;
        Ok(())
    })
}

/// # Safety
/// `op` must be null or a live operator handle.
#[no_mangle]
pub unsafe extern "C" fn abelcs_operator_free(op: *mut AbelcsOperator) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}

/// Dimension `N^g` of the space the operator acts on, or 0 for null.
///
/// # Safety
/// `op` must be null or a live operator handle.
#[no_mangle]
pub unsafe extern "C" fn abelcs_operator_dim(op: *const AbelcsOperator) -> usize {
    op.as_ref().map_or(0, |op| op.0.space().dim())
}

/// Entry in row `row`, column `col` (the image of basis vector `col`).
///
/// # Safety
/// `op` must be a live operator handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn abelcs_operator_entry(
    op: *const AbelcsOperator,
    row: usize,
    col: usize,
    out: *mut *mut AbelcsScalar,
) -> AbelcsStatus {
    guard(|| {
        let m = ref_arg(op)?.0.matrix();
        if row >= m.rows() || col >= m.cols() {
            return Err(fail(
                AbelcsStatus::OutOfRange,
                format!("entry ({row}, {col}) outside {}x{}", m.rows(), m.cols()),
            ));
        }
        put(out, AbelcsScalar(m.get(row, col).clone()))
    })
}

/// Writes 1 when the operators agree up to a nonzero scalar.
///
/// # Safety
/// `a`, `b` must be live operator handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn abelcs_operator_projectively_equal(
    a: *const AbelcsOperator,
    b: *const AbelcsOperator,
    out: *mut i32,
) -> AbelcsStatus {
    guard(|| {
        let (a, b) = (&ref_arg(a)?.0, &ref_arg(b)?.0);
        if out.is_null() {
            return Err(fail(AbelcsStatus::NullPointer, "null output pointer"));
        }
        *out = i32::from(a.projectively_equal(b));
        Ok(())
    })
}
