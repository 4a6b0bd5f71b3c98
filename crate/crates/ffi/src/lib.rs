//! C interface to `cayley2`.
//!
//! Fallible functions return a [`C2Status`]; on failure the message is kept
//! per thread and read with [`c2_last_error_message`]. Digraphs are opaque
//! handles released with [`c2_digraph_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cayley2::{CayleyDigraph2, Error, LShape};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum C2Status {
    Ok = 0,
    NullPointer = 1,
    InvalidLShape = 2,
    NotAdmissible = 3,
    Divisibility = 4,
    InvalidGroup = 5,
    NotGenerating = 6,
    CapExceeded = 7,
    InfiniteCoefficient = 8,
    OutOfRange = 9,
    NoDiagram = 10,
    Overflow = 11,
    Parse = 12,
    BufferTooSmall = 13,
    Panic = 14,
}

impl From<&Error> for C2Status {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidLShape { .. } => C2Status::InvalidLShape,
            Error::NotAdmissible(_) => C2Status::NotAdmissible,
            Error::Divisibility { .. } | Error::ZeroScale => C2Status::Divisibility,
            Error::SingularMatrix | Error::InvalidGroup { .. } => C2Status::InvalidGroup,
            Error::DegenerateGenerators(_) | Error::NotGenerating { .. } => C2Status::NotGenerating,
            Error::OrderCapExceeded { .. } => C2Status::CapExceeded,
            Error::InfiniteCoefficient { .. } => C2Status::InfiniteCoefficient,
            Error::OutOfRange(_) => C2Status::OutOfRange,
            Error::NoDiagram(_) => C2Status::NoDiagram,
            Error::Overflow(_) => C2Status::Overflow,
            Error::Parse(_) => C2Status::Parse,
        }
    }
}

/// Opaque 2-Cayley digraph.
pub struct C2Digraph(CayleyDigraph2);

/// L-shape `L(l, h, w, y)`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct C2LShape {
    pub l: u64,
    pub h: u64,
    pub w: u64,
    pub y: u64,
}

/// `U * M * V = diag(s1, s2)`, matrices row-major.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct C2Snf {
    pub s1: u64,
    pub s2: u64,
    pub u: [i64; 4],
    pub v: [i64; 4],
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), C2Status>) -> C2Status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => C2Status::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            C2Status::Panic
        }
    }
}

fn fail(e: Error) -> C2Status {
    let s = C2Status::from(&e);
    set_error(e.to_string());
    s
}

fn null(what: &str) -> C2Status {
    set_error(format!("{what} is null"));
    C2Status::NullPointer
}

unsafe fn shape_in(p: *const C2LShape) -> Result<LShape, C2Status> {
    let s = p.as_ref().ok_or_else(|| null("shape"))?;
    LShape::new(s.l, s.h, s.w, s.y).map_err(fail)
}

unsafe fn digraph_in<'a>(p: *const C2Digraph) -> Result<&'a CayleyDigraph2, C2Status> {
    p.as_ref().map(|d| &d.0).ok_or_else(|| null("digraph"))
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), C2Status> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(v);
    Ok(())
}

unsafe fn write_digraph(out: *mut *mut C2Digraph, d: CayleyDigraph2) -> Result<(), C2Status> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(Box::into_raw(Box::new(C2Digraph(d))));
    Ok(())
}

fn to_c(s: &LShape) -> C2LShape {
    let [l, h, w, y] = s.sides();
    C2LShape { l, h, w, y }
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn c2_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// `ceil(sqrt(3N)) - 2`, or 0 for `N <= 1`.
#[no_mangle]
pub extern "C" fn c2_lower_bound(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    cayley2::intmath::lower_bound_diameter(n)
}

/// Diameter `l + h - min(w, y) - 2` of a valid L-shape.
///
/// # Safety
/// `shape` and `out` must be valid pointers or null.
#[no_mangle]
pub unsafe extern "C" fn c2_lshape_diameter(shape: *const C2LShape, out: *mut u64) -> C2Status {
    guard(|| {
        let s = shape_in(shape)?;
        write(out, s.diameter().map_err(fail)?)
    })
}

/// Smith normal form of the L-shape matrix `[[l, -w], [-y, h]]`.
///
/// # Safety
/// `shape` and `out` must be valid pointers or null.
#[no_mangle]
pub unsafe extern "C" fn c2_smith_normal_form(shape: *const C2LShape, out: *mut C2Snf) -> C2Status {
    guard(|| {
        let s = shape_in(shape)?;
        let snf = cayley2::smith_normal_form(&cayley2::matrix_of(&s)).map_err(fail)?;
        let [u, v] = [snf.u.0, snf.v.0].map(|m| [m[0][0], m[0][1], m[1][0], m[1][1]]);
        write(
            out,
            C2Snf {
                s1: snf.s1,
                s2: snf.s2,
                u,
                v,
            },
        )
    })
}

/// `Cay(Z_s1 + Z_s2, {(a1, a2), (b1, b2)})`; the group is canonicalized and
/// negative coordinates are reduced.
///
/// # Safety
/// `out` must be a valid pointer or null.
#[no_mangle]
pub unsafe extern "C" fn c2_digraph_new(
    s1: u64,
    s2: u64,
    a1: i64,
    a2: i64,
    b1: i64,
    b2: i64,
    out: *mut *mut C2Digraph,
) -> C2Status {
    guard(|| {
        let canon = cayley2::canonicalize_group(s1, s2).map_err(fail)?;
        let a = canon.convert(a1 as i128, a2 as i128);
        let b = canon.convert(b1 as i128, b2 as i128);
        let d = CayleyDigraph2::new(canon.group, a, b).map_err(fail)?;
        write_digraph(out, d)
    })
}

/// Parses `"s1,s2;a1,a2;b1,b2"` or `"N;a;b"`.
///
/// # Safety
/// `spec` must be a NUL-terminated string or null; `out` a valid pointer or null.
#[no_mangle]
pub unsafe extern "C" fn c2_digraph_parse(spec: *const c_char, out: *mut *mut C2Digraph) -> C2Status {
    guard(|| {
        if spec.is_null() {
            return Err(null("spec"));
        }
        let s = CStr::from_ptr(spec)
            .to_str()
            .map_err(|e| fail(Error::Parse(e.to_string())))?;
        let d: CayleyDigraph2 = s.parse().map_err(fail)?;
        write_digraph(out, d)
    })
}

/// Digraph whose minimum distance diagram is `shape`.
///
/// # Safety
/// `shape` and `out` must be valid pointers or null.
#[no_mangle]
pub unsafe extern "C" fn c2_digraph_of(shape: *const C2LShape, out: *mut *mut C2Digraph) -> C2Status {
    guard(|| {
        let s = shape_in(shape)?;
        write_digraph(out, cayley2::digraph_of(&s).map_err(fail)?)
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `d` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn c2_digraph_free(d: *mut C2Digraph) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Order of the group, or 0 for a null handle.
///
/// # Safety
/// `d` must be a valid handle or null.
#[no_mangle]
pub unsafe extern "C" fn c2_digraph_order(d: *const C2Digraph) -> u64 {
    d.as_ref().map_or(0, |d| d.0.order())
}

/// Invariant factors `s1 | s2` and generators `a = (a1, a2)`, `b = (b1, b2)`.
///
/// # Safety
/// `d` must be a valid handle; `group` must hold 2 values and `gens` 4, or be null.
#[no_mangle]
pub unsafe extern "C" fn c2_digraph_components(
    d: *const C2Digraph,
    group: *mut u64,
    gens: *mut u64,
) -> C2Status {
    guard(|| {
        let d = digraph_in(d)?;
        if group.is_null() || gens.is_null() {
            return Err(null("output pointer"));
        }
        let g = d.group();
        ptr::copy_nonoverlapping([g.s1(), g.s2()].as_ptr(), group, 2);
        let (a, b) = (d.a(), d.b());
        ptr::copy_nonoverlapping([a.x, a.y, b.x, b.y].as_ptr(), gens, 4);
        Ok(())
    })
}

/// BFS diameter. `max_order = 0` uses the default cap.
///
/// # Safety
/// `d` must be a valid handle or null; `out` a valid pointer or null.
#[no_mangle]
pub unsafe extern "C" fn c2_digraph_diameter(d: *const C2Digraph, max_order: u64, out: *mut u64) -> C2Status {
    guard(|| {
        let d = digraph_in(d)?;
        let cap = if max_order == 0 {
            cayley2::digraph::DEFAULT_BFS_CAP
        } else {
            max_order
        };
        write(out, d.diameter_capped(cap).map_err(fail)?)
    })
}

/// Extension over `Z_{m s1} + Z_{m s2}`.
///
/// # Safety
/// `d` must be a valid handle or null; `out` a valid pointer or null.
#[no_mangle]
pub unsafe extern "C" fn c2_digraph_extend(d: *const C2Digraph, m: u64, out: *mut *mut C2Digraph) -> C2Status {
    guard(|| {
        let d = digraph_in(d)?;
        write_digraph(out, cayley2::extend(d, m).map_err(fail)?)
    })
}

/// Quotient by `m`, which must divide `s1`.
///
/// # Safety
/// `d` must be a valid handle or null; `out` a valid pointer or null.
#[no_mangle]
pub unsafe extern "C" fn c2_digraph_quotient(d: *const C2Digraph, m: u64, out: *mut *mut C2Digraph) -> C2Status {
    guard(|| {
        let d = digraph_in(d)?;
        write_digraph(out, cayley2::quotient(d, m).map_err(fail)?)
    })
}

/// Minimum distance diagrams in lexicographic order. Writes the total count to
/// `count`; returns `BufferTooSmall` when it exceeds `capacity`, after filling
/// the first `capacity` entries. `buf` may be null when `capacity` is 0.
///
/// # Safety
/// `d` must be a valid handle; `buf` must hold `capacity` entries; `count` valid.
#[no_mangle]
pub unsafe extern "C" fn c2_find_mdds(
    d: *const C2Digraph,
    buf: *mut C2LShape,
    capacity: usize,
    count: *mut usize,
) -> C2Status {
    guard(|| {
        let d = digraph_in(d)?;
        let shapes = cayley2::find_mdds(d).map_err(fail)?;
        write(count, shapes.len())?;
        if capacity > 0 && buf.is_null() {
            return Err(null("buffer"));
        }
        for (i, s) in shapes.iter().take(capacity).enumerate() {
            buf.add(i).write(to_c(s));
        }
        if shapes.len() > capacity {
            set_error(format!("{} diagrams, buffer holds {capacity}", shapes.len()));
            return Err(C2Status::BufferTooSmall);
        }
        Ok(())
    })
}

/// Extension coefficient `c(N)`; `InfiniteCoefficient` when `N = 3t^2`.
///
/// # Safety
/// `out` must be a valid pointer or null.
#[no_mangle]
pub unsafe extern "C" fn c2_extension_coefficient(n: u64, out: *mut u64) -> C2Status {
    guard(|| write(out, cayley2::extension_coefficient(n).map_err(fail)?))
}

/// True when a tight digraph of order `n` stays tight after an `m`-extension.
#[no_mangle]
pub extern "C" fn c2_is_tight_extension(n: u64, m: u64) -> bool {
    catch_unwind(|| cayley2::is_tight_extension(n, m)).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_mapping_is_total() {
        let cases = [
            (Error::ZeroScale, C2Status::Divisibility),
            (Error::Parse("x".into()), C2Status::Parse),
            (Error::InfiniteCoefficient { t: 2 }, C2Status::InfiniteCoefficient),
            (Error::OrderCapExceeded { order: 9, cap: 1 }, C2Status::CapExceeded),
        ];
        for (e, s) in cases {
            assert_eq!(C2Status::from(&e), s);
        }
    }

    #[test]
    fn panic_is_contained() {
        let s = guard(|| panic!("boom"));
        assert_eq!(s, C2Status::Panic);
    }
}
