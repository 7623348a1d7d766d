//! C ABI over the `agc` contract algebra.
//!
//! Handles are opaque and owned by the caller, who releases them with the
//! matching `*_free` function. Every fallible call returns an [`AgcStatus`];
//! on failure, [`agc_last_error_message`] describes the error for the calling
//! thread. Strings returned through `char **` out-parameters are released
//! with [`agc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use agc::dsl::{eval, parse_contract, parse_spec};
use agc::laws::{run_laws, LawsConfig, Suite};
use agc::{Algebra, AlgebraError, Backend, Contract, ContractOp};

/// A finite Boolean algebra over named atoms.
pub struct AgcAlgebra {
    inner: Algebra,
}

/// A canonical contract over one algebra.
pub struct AgcContract {
    inner: Contract,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AgcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    MixedAlgebra = 5,
    NotCanonical = 6,
    /// A law report was produced and some law missed its expected outcome.
    LawsFailed = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AgcOp {
    Conj = 0,
    Disj = 1,
    Compose = 2,
    Merge = 3,
    Quotient = 4,
    Separate = 5,
    /// `lhs` is the antecedent.
    Implication = 6,
    /// `lhs` is the antecedent.
    Coimplication = 7,
}

impl From<AgcOp> for ContractOp {
    fn from(op: AgcOp) -> Self {
        match op {
            AgcOp::Conj => ContractOp::Conj,
            AgcOp::Disj => ContractOp::Disj,
            AgcOp::Compose => ContractOp::Compose,
            AgcOp::Merge => ContractOp::Merge,
            AgcOp::Quotient => ContractOp::Quotient,
            AgcOp::Separate => ContractOp::Separate,
            AgcOp::Implication => ContractOp::Implication,
            AgcOp::Coimplication => ContractOp::Coimplication,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AgcFormat {
    Text = 0,
    Json = 1,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(AgcStatus, String);

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        let status = match e {
            AlgebraError::MixedAlgebra => AgcStatus::MixedAlgebra,
            AlgebraError::NotCanonical { .. } => AgcStatus::NotCanonical,
            AlgebraError::Parse(_) | AlgebraError::UnknownAtom { .. } => AgcStatus::ParseError,
            _ => AgcStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<AgcStatus, Failure>) -> AgcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".to_owned());
            AgcStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(AgcStatus::NullPointer, format!("{what} is null")))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(AgcStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(AgcStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn out<T>(p: *mut T, value: T, what: &str) -> Result<AgcStatus, Failure> {
    if p.is_null() {
        return Err(Failure(AgcStatus::NullPointer, format!("{what} is null")));
    }
    p.write(value);
    Ok(AgcStatus::Ok)
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

fn boxed_contract(c: Contract) -> *mut AgcContract {
    Box::into_raw(Box::new(AgcContract { inner: c }))
}

/// The message of the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn agc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn agc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds an algebra from whitespace-separated atom names.
///
/// # Safety
/// `atoms` must be a nul-terminated string; `out_algebra` must be writable.
#[no_mangle]
pub unsafe extern "C" fn agc_algebra_new(atoms: *const c_char, out_algebra: *mut *mut AgcAlgebra) -> AgcStatus {
    guard(|| {
        let names: Vec<&str> = text(atoms, "atoms")?.split_whitespace().collect();
        let inner = Algebra::new(names, Backend::Bitset)?;
        out(out_algebra, Box::into_raw(Box::new(AgcAlgebra { inner })), "out_algebra")
    })
}

/// # Safety
/// `algebra` must be null or a handle from [`agc_algebra_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn agc_algebra_free(algebra: *mut AgcAlgebra) {
    if !algebra.is_null() {
        drop(Box::from_raw(algebra));
    }
}

/// Number of atoms, or 0 for a null handle.
///
/// # Safety
/// `algebra` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn agc_algebra_atom_count(algebra: *const AgcAlgebra) -> usize {
    algebra.as_ref().map_or(0, |a| a.inner.atom_count())
}

/// The canonical contract `(assume, guarantee ∨ ¬assume)` from two formulas.
///
/// # Safety
/// Pointers must be valid; strings nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn agc_contract_new(
    algebra: *const AgcAlgebra,
    assume: *const c_char,
    guarantee: *const c_char,
    out_contract: *mut *mut AgcContract,
) -> AgcStatus {
    guard(|| {
        let alg = &borrow(algebra, "algebra")?.inner;
        let a = alg.parse(text(assume, "assume")?)?;
        let g = alg.parse(text(guarantee, "guarantee")?)?;
        out(out_contract, boxed_contract(Contract::new(a, g)?), "out_contract")
    })
}

/// A contract from assumption and guarantee bitmasks; fails with
/// `NotCanonical` unless `assume | guarantee` covers every atom.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn agc_contract_from_masks(
    algebra: *const AgcAlgebra,
    assume: u64,
    guarantee: u64,
    out_contract: *mut *mut AgcContract,
) -> AgcStatus {
    guard(|| {
        let alg = &borrow(algebra, "algebra")?.inner;
        out(out_contract, boxed_contract(Contract::from_masks(alg, assume, guarantee)?), "out_contract")
    })
}

/// Parses `contract(assume = <formula>, guarantee = <formula>)`.
///
/// # Safety
/// Pointers must be valid; `source` nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn agc_contract_parse(
    algebra: *const AgcAlgebra,
    source: *const c_char,
    out_contract: *mut *mut AgcContract,
) -> AgcStatus {
    guard(|| {
        let alg = &borrow(algebra, "algebra")?.inner;
        let c = parse_contract(text(source, "source")?, alg).map_err(|e| Failure(AgcStatus::ParseError, e.to_string()))?;
        out(out_contract, boxed_contract(c), "out_contract")
    })
}

/// # Safety
/// `contract` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn agc_contract_free(contract: *mut AgcContract) {
    if !contract.is_null() {
        drop(Box::from_raw(contract));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn agc_contract_masks(
    contract: *const AgcContract,
    out_assume: *mut u64,
    out_guarantee: *mut u64,
) -> AgcStatus {
    guard(|| {
        let (a, g) = borrow(contract, "contract")?.inner.masks();
        if out_assume.is_null() || out_guarantee.is_null() {
            return Err(Failure(AgcStatus::NullPointer, "mask output is null".into()));
        }
        out_assume.write(a);
        out_guarantee.write(g);
        Ok(AgcStatus::Ok)
    })
}

/// Applies a binary operation. Operands must share an algebra.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn agc_contract_op(
    op: AgcOp,
    lhs: *const AgcContract,
    rhs: *const AgcContract,
    out_contract: *mut *mut AgcContract,
) -> AgcStatus {
    guard(|| {
        let (l, r) = (&borrow(lhs, "lhs")?.inner, &borrow(rhs, "rhs")?.inner);
        let c = ContractOp::from(op).apply(l, r)?;
        out(out_contract, boxed_contract(c), "out_contract")
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn agc_contract_reciprocal(
    contract: *const AgcContract,
    out_contract: *mut *mut AgcContract,
) -> AgcStatus {
    guard(|| {
        let c = borrow(contract, "contract")?.inner.reciprocal();
        out(out_contract, boxed_contract(c), "out_contract")
    })
}

/// Writes whether `lhs` refines `rhs`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn agc_contract_refines(
    lhs: *const AgcContract,
    rhs: *const AgcContract,
    out_result: *mut bool,
) -> AgcStatus {
    guard(|| {
        let holds = borrow(lhs, "lhs")?.inner.refines(&borrow(rhs, "rhs")?.inner)?;
        out(out_result, holds, "out_result")
    })
}

/// Writes whether both contracts are equal (same algebra, same pair).
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn agc_contract_equal(
    lhs: *const AgcContract,
    rhs: *const AgcContract,
    out_result: *mut bool,
) -> AgcStatus {
    guard(|| {
        let equal = borrow(lhs, "lhs")?.inner == borrow(rhs, "rhs")?.inner;
        out(out_result, equal, "out_result")
    })
}

/// Canonical text form of a contract.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn agc_contract_render(contract: *const AgcContract, out_text: *mut *mut c_char) -> AgcStatus {
    guard(|| {
        let s = borrow(contract, "contract")?.inner.render();
        out(out_text, owned_string(s), "out_text")
    })
}

/// Evaluates a specification file's source text. Parse errors fail with
/// `ParseError` and a `line:col: message` error string.
///
/// # Safety
/// Pointers must be valid; `source` nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn agc_eval(source: *const c_char, format: AgcFormat, out_text: *mut *mut c_char) -> AgcStatus {
    guard(|| {
        let spec = parse_spec(text(source, "source")?).map_err(|e| Failure(AgcStatus::ParseError, e.to_string()))?;
        let ev = eval(&spec);
        let rendered = match format {
            AgcFormat::Text => ev.to_text(),
            AgcFormat::Json => serde_json::to_string_pretty(&ev).expect("evaluations serialize"),
        };
        out(out_text, owned_string(rendered), "out_text")
    })
}

/// Runs law suites. `suites` is a comma-separated list or `all` (null means
/// `all`). The report is written even when the result is `LawsFailed`.
///
/// # Safety
/// Pointers must be valid; `suites` null or nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn agc_laws(
    atoms: usize,
    suites: *const c_char,
    seed: u64,
    format: AgcFormat,
    out_text: *mut *mut c_char,
) -> AgcStatus {
    guard(|| {
        let list = if suites.is_null() { "all" } else { text(suites, "suites")? };
        let suites = if list == "all" {
            Suite::ALL.to_vec()
        } else {
            list.split(',')
                .map(|s| s.trim().parse::<Suite>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure(AgcStatus::InvalidArgument, e))?
        };
        let config = LawsConfig {
            suites,
            seed,
            ..LawsConfig::new(atoms)
        };
        let report = run_laws(&config).map_err(|e| Failure(AgcStatus::InvalidArgument, e.to_string()))?;
        let rendered = match format {
            AgcFormat::Text => report.to_text(),
            AgcFormat::Json => serde_json::to_string_pretty(&report).expect("reports serialize"),
        };
        out(out_text, owned_string(rendered), "out_text")?;
        if report.ok {
            Ok(AgcStatus::Ok)
        } else {
            Err(Failure(AgcStatus::LawsFailed, "some laws missed their expected outcome".into()))
        }
    })
}
