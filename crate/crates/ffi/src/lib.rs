//! C interface to `pathideal`.
//!
//! Every function returns a [`PiStatus`]. Results go through out-pointers,
//! which are left untouched on failure. After a non-`OK` status,
//! [`pi_last_error_message`] describes the failure on the calling thread.
//! Handles are opaque and must be released with their `_free` function.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pathideal::oracle::{self, BettiTable};
use pathideal::{formulas, Error, FieldSpec, Limits, Monomial, MonomialIdeal, PathIdealSpec};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PiStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    CapExceeded = 3,
    Overflow = 4,
    UnitIdeal = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// A monomial ideal in a fixed number of variables.
pub struct PiIdeal {
    inner: MonomialIdeal,
}

/// Multigraded Betti numbers of an ideal over a prime field.
pub struct PiBettiTable {
    ideal: MonomialIdeal,
    table: BettiTable,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> PiStatus {
    match e {
        Error::CapExceeded { .. } => PiStatus::CapExceeded,
        Error::Overflow(_) | Error::ExponentOverflow { .. } => PiStatus::Overflow,
        Error::UnitIdeal => PiStatus::UnitIdeal,
        _ => PiStatus::InvalidArgument,
    }
}

fn fail(status: PiStatus, msg: impl Into<String>) -> PiStatus {
    set_error(msg.into());
    status
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), PiStatus>) -> PiStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            PiStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => fail(PiStatus::Panic, "internal panic"),
    }
}

fn lift<T>(r: pathideal::Result<T>) -> Result<T, PiStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, PiStatus> {
    p.as_ref()
        .ok_or_else(|| fail(PiStatus::NullPointer, format!("{what} is NULL")))
}

fn out<T>(p: *mut T, what: &str) -> Result<*mut T, PiStatus> {
    if p.is_null() {
        Err(fail(PiStatus::NullPointer, format!("{what} is NULL")))
    } else {
        Ok(p)
    }
}

fn field(characteristic: u32) -> Result<FieldSpec, PiStatus> {
    lift(FieldSpec::new(characteristic))
}

/// `I_t(L_n)`: the ideal of paths on `t` consecutive vertices of the line
/// graph on `n` vertices. It is the zero ideal when `n < t`.
#[no_mangle]
pub unsafe extern "C" fn pi_path_ideal_new(
    n: usize,
    t: usize,
    result: *mut *mut PiIdeal,
) -> PiStatus {
    guard(|| {
        let result = out(result, "result")?;
        let spec = lift(PathIdealSpec::new(n, t))?;
        *result = Box::into_raw(Box::new(PiIdeal {
            inner: spec.ideal(),
        }));
        Ok(())
    })
}

/// Ideal generated by `count` monomials whose exponent vectors are stored
/// row after row in `exponents` (`count * ambient` entries).
#[no_mangle]
pub unsafe extern "C" fn pi_ideal_from_exponents(
    ambient: usize,
    count: usize,
    exponents: *const u32,
    result: *mut *mut PiIdeal,
) -> PiStatus {
    guard(|| {
        let result = out(result, "result")?;
        let total = count
            .checked_mul(ambient)
            .ok_or_else(|| fail(PiStatus::Overflow, "count * ambient overflows"))?;
        let data: &[u32] = if total == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(deref(exponents, "exponents")?, total)
        };
        let gens = data
            .chunks(ambient.max(1))
            .take(count)
            .map(|row| Monomial::new(row.to_vec()))
            .collect::<pathideal::Result<Vec<_>>>();
        let inner = lift(MonomialIdeal::new(ambient, lift(gens)?))?;
        *result = Box::into_raw(Box::new(PiIdeal { inner }));
        Ok(())
    })
}

/// Minimal generators of `ideal^s`, refusing to build more than
/// `max_generators` candidate products (0 selects the default cap).
#[no_mangle]
pub unsafe extern "C" fn pi_ideal_power(
    ideal: *const PiIdeal,
    s: u32,
    max_generators: usize,
    result: *mut *mut PiIdeal,
) -> PiStatus {
    guard(|| {
        let result = out(result, "result")?;
        let ideal = deref(ideal, "ideal")?;
        let cap = if max_generators == 0 {
            Limits::default().max_generators
        } else {
            max_generators
        };
        let inner = lift(ideal.inner.power(s, cap))?;
        *result = Box::into_raw(Box::new(PiIdeal { inner }));
        Ok(())
    })
}

/// Releases an ideal. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn pi_ideal_free(ideal: *mut PiIdeal) {
    if !ideal.is_null() {
        drop(Box::from_raw(ideal));
    }
}

#[no_mangle]
pub unsafe extern "C" fn pi_ideal_ambient(ideal: *const PiIdeal, result: *mut usize) -> PiStatus {
    guard(|| {
        let result = out(result, "result")?;
        *result = deref(ideal, "ideal")?.inner.ambient();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn pi_ideal_generator_count(
    ideal: *const PiIdeal,
    result: *mut usize,
) -> PiStatus {
    guard(|| {
        let result = out(result, "result")?;
        *result = deref(ideal, "ideal")?.inner.len();
        Ok(())
    })
}

/// Copies the exponent vector of generator `index` (0-based, lex order)
/// into `buf`, which must hold at least the ambient number of entries.
#[no_mangle]
pub unsafe extern "C" fn pi_ideal_generator(
    ideal: *const PiIdeal,
    index: usize,
    buf: *mut u32,
    len: usize,
) -> PiStatus {
    guard(|| {
        let ideal = &deref(ideal, "ideal")?.inner;
        let g = ideal.generators().get(index).ok_or_else(|| {
            fail(
                PiStatus::InvalidArgument,
                format!("generator index {index} out of range 0..{}", ideal.len()),
            )
        })?;
        let e = g.exponents();
        if len < e.len() {
            return Err(fail(
                PiStatus::BufferTooSmall,
                format!("buffer holds {len} entries, {} needed", e.len()),
            ));
        }
        if !e.is_empty() {
            ptr::copy_nonoverlapping(e.as_ptr(), out(buf, "buf")?, e.len());
        }
        Ok(())
    })
}

/// Writes the ideal as NUL-terminated text, e.g. `(x1*x2, x2*x3)`.
/// `needed` receives the buffer size including the terminator, also when
/// the status is `BUFFER_TOO_SMALL`.
#[no_mangle]
pub unsafe extern "C" fn pi_ideal_to_string(
    ideal: *const PiIdeal,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> PiStatus {
    guard(|| {
        let text = deref(ideal, "ideal")?.inner.to_string();
        copy_text(&text, buf, len, needed)
    })
}

unsafe fn copy_text(
    text: &str,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> Result<(), PiStatus> {
    let size = text.len() + 1;
    if !needed.is_null() {
        *needed = size;
    }
    if len < size {
        return Err(fail(
            PiStatus::BufferTooSmall,
            format!("buffer holds {len} bytes, {size} needed"),
        ));
    }
    let buf = out(buf, "buf")?;
    ptr::copy_nonoverlapping(text.as_ptr().cast::<c_char>(), buf, text.len());
    *buf.add(text.len()) = 0;
    Ok(())
}

/// Computes every multigraded Betti number of `ideal` over GF(p).
#[no_mangle]
pub unsafe extern "C" fn pi_betti_table_new(
    ideal: *const PiIdeal,
    characteristic: u32,
    result: *mut *mut PiBettiTable,
) -> PiStatus {
    guard(|| {
        let result = out(result, "result")?;
        let ideal = deref(ideal, "ideal")?.inner.clone();
        let table = lift(oracle::betti_table(
            &ideal,
            field(characteristic)?,
            &Limits::default(),
        ))?;
        *result = Box::into_raw(Box::new(PiBettiTable { ideal, table }));
        Ok(())
    })
}

/// Releases a table. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn pi_betti_table_free(table: *mut PiBettiTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// `β_i` of the ideal.
#[no_mangle]
pub unsafe extern "C" fn pi_betti_total(
    table: *const PiBettiTable,
    i: usize,
    result: *mut u64,
) -> PiStatus {
    guard(|| {
        let result = out(result, "result")?;
        *result = deref(table, "table")?.table.total(i);
        Ok(())
    })
}

/// `β_{i,j}` of the ideal.
#[no_mangle]
pub unsafe extern "C" fn pi_betti_graded(
    table: *const PiBettiTable,
    i: usize,
    j: u64,
    result: *mut u64,
) -> PiStatus {
    guard(|| {
        let result = out(result, "result")?;
        *result = deref(table, "table")?.table.graded(i, j);
        Ok(())
    })
}

/// `reg R/I`. Fails with `UNIT_IDEAL` for the unit ideal.
#[no_mangle]
pub unsafe extern "C" fn pi_regularity(table: *const PiBettiTable, result: *mut i64) -> PiStatus {
    guard(|| {
        let result = out(result, "result")?;
        let t = deref(table, "table")?;
        *result = lift(oracle::quotient_regularity(&t.ideal, &t.table))?;
        Ok(())
    })
}

/// `pd R/I`.
#[no_mangle]
pub unsafe extern "C" fn pi_projective_dimension(
    table: *const PiBettiTable,
    result: *mut usize,
) -> PiStatus {
    guard(|| {
        let result = out(result, "result")?;
        let t = deref(table, "table")?;
        *result = lift(oracle::quotient_projective_dimension(&t.ideal, &t.table))?;
        Ok(())
    })
}

/// Whether the ideal has a linear resolution. Ideals with generators of
/// several degrees never do.
#[no_mangle]
pub unsafe extern "C" fn pi_has_linear_resolution(
    table: *const PiBettiTable,
    result: *mut bool,
) -> PiStatus {
    guard(|| {
        let result = out(result, "result")?;
        let t = deref(table, "table")?;
        *result = oracle::linear_status(&t.ideal, &t.table).is_linear();
        Ok(())
    })
}

/// `Γ(n, t)`, the regularity of `R/I_t(L_n)`.
#[no_mangle]
pub unsafe extern "C" fn pi_gamma(n: u64, t: u64, result: *mut u64) -> PiStatus {
    guard(|| {
        let result = out(result, "result")?;
        *result = lift(formulas::gamma(n, t))?;
        Ok(())
    })
}

/// Closed-form `reg R/I_t(L_n)^s`.
#[no_mangle]
pub unsafe extern "C" fn pi_reg_power(n: u64, t: u64, s: u64, result: *mut u64) -> PiStatus {
    guard(|| {
        let result = out(result, "result")?;
        *result = lift(formulas::reg_power(n, t, s))?;
        Ok(())
    })
}

/// Closed-form `β_i(I_t(L_n)^s)` for `t <= n <= 2t`.
#[no_mangle]
pub unsafe extern "C" fn pi_betti_closed_form(
    n: u64,
    t: u64,
    s: u64,
    i: u64,
    result: *mut u64,
) -> PiStatus {
    guard(|| {
        let result = out(result, "result")?;
        *result = lift(formulas::betti_closed_form(n, t, s, i))?;
        Ok(())
    })
}

/// Closed-form `pd R/I_t(L_n)^s` for `t <= n <= 2t`.
#[no_mangle]
pub unsafe extern "C" fn pi_pd_closed_form(n: u64, t: u64, s: u64, result: *mut u64) -> PiStatus {
    guard(|| {
        let result = out(result, "result")?;
        *result = lift(formulas::pd_closed_form(n, t, s))?;
        Ok(())
    })
}

/// Copies the calling thread's last error message into `buf` as
/// NUL-terminated UTF-8 and returns the size it needs (0 when there is no
/// message). Nothing is written if `buf` is NULL or too small.
#[no_mangle]
pub unsafe extern "C" fn pi_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes_with_nul();
        if !buf.is_null() && len >= bytes.len() {
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, bytes.len());
        }
        bytes.len()
    })
}
