// SPDX-License-Identifier: Apache-2.0
//! C ABI over the wallcrys engine.
//!
//! Every function returns a [`WallcrysStatus`]. Objects are opaque handles
//! released with their `_free` function; strings returned through `char**`
//! out-parameters are released with [`wallcrys_string_free`]. After a
//! failure, [`wallcrys_last_error`] describes it on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use wallcrys::correspondence::{verify_isomorphism, Correspondence, Status};
use wallcrys::crystal::{generate_graph, Crystal, Limits};
use wallcrys::path::LambdaPath;
use wallcrys::wall::YoungWall;
use wallcrys::Error;

/// Result codes of every exported function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WallcrysStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8 or could not be parsed.
    Parse = 2,
    /// Unknown type, weight outside level 1, or an invalid wall.
    Invalid = 3,
    /// The wall is not reduced, so it has no path.
    NotReduced = 4,
    /// The operator is undefined on this element.
    Undefined = 5,
    /// Verification found a counterexample.
    Counterexample = 6,
    /// The node budget was exceeded.
    Truncated = 7,
    /// An internal error; the library state is unaffected.
    Internal = 8,
}

/// A type and ground weight with both crystal models and the reading map.
pub struct WallcrysModel {
    inner: Correspondence,
}

/// A reduced proper Young wall of one model.
pub struct WallcrysWall {
    inner: YoungWall,
}

/// Which crystal model to generate; passed as `uint32_t`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WallcrysGraphModel {
    Path = 0,
    Wall = 1,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn status_of(e: &Error) -> WallcrysStatus {
    match e {
        Error::Parse(_) => WallcrysStatus::Parse,
        Error::NotReduced(_) => WallcrysStatus::NotReduced,
        _ => WallcrysStatus::Invalid,
    }
}

/// Runs `body`, recording the message of any failure.
fn guard(body: impl FnOnce() -> Result<(), (WallcrysStatus, String)>) -> WallcrysStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => WallcrysStatus::Ok,
        Ok(Err((status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            WallcrysStatus::Internal
        }
    }
}

fn fail(e: Error) -> (WallcrysStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(name: &str) -> (WallcrysStatus, String) {
    (WallcrysStatus::NullArgument, format!("{name} is null"))
}

/// Borrows a C string as UTF-8.
///
/// # Safety
/// `s` must be null or point to a NUL-terminated string.
unsafe fn text<'a>(s: *const c_char, name: &str) -> Result<&'a str, (WallcrysStatus, String)> {
    if s.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (WallcrysStatus::Parse, format!("{name} is not valid UTF-8")))
}

/// Moves a string to the caller.
///
/// # Safety
/// `out` must be a valid pointer to write to.
unsafe fn give_string(out: *mut *mut c_char, s: String) -> Result<(), (WallcrysStatus, String)> {
    let c = CString::new(s).map_err(|_| (WallcrysStatus::Internal, "string contains NUL".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

/// # Safety
/// `p` must be null or a handle returned by this library.
unsafe fn borrow<'a, T>(p: *const T, name: &str) -> Result<&'a T, (WallcrysStatus, String)> {
    p.as_ref().ok_or_else(|| null(name))
}

fn check_out<T>(out: *mut T, name: &str) -> Result<(), (WallcrysStatus, String)> {
    if out.is_null() {
        Err(null(name))
    } else {
        Ok(())
    }
}

/// Message describing the last failure on this thread, or an empty string.
/// The pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn wallcrys_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn wallcrys_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wallcrys_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates a model for an affine type such as `"B3~1"` and the level-1
/// weight `Lambda_lambda`.
///
/// # Safety
/// `ty` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wallcrys_model_new(
    ty: *const c_char,
    lambda: u32,
    out: *mut *mut WallcrysModel,
) -> WallcrysStatus {
    guard(|| {
        check_out(out, "out")?;
        let ty = text(ty, "type")?.parse().map_err(fail)?;
        let inner = Correspondence::new(ty, lambda as usize).map_err(fail)?;
        *out = Box::into_raw(Box::new(WallcrysModel { inner }));
        Ok(())
    })
}

/// Releases a model.
///
/// # Safety
/// `model` must be null or a model handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wallcrys_model_free(model: *mut WallcrysModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Size of the index set `{0, .., n}`.
///
/// # Safety
/// `model` must be a valid model handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wallcrys_model_num_indices(model: *const WallcrysModel, out: *mut u32) -> WallcrysStatus {
    guard(|| {
        let model = borrow(model, "model")?;
        check_out(out, "out")?;
        *out = model.inner.walls.num_indices() as u32;
        Ok(())
    })
}

/// The ground-state wall of a model.
///
/// # Safety
/// `model` must be a valid model handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wallcrys_wall_ground(
    model: *const WallcrysModel,
    out: *mut *mut WallcrysWall,
) -> WallcrysStatus {
    guard(|| {
        let model = borrow(model, "model")?;
        check_out(out, "out")?;
        *out = Box::into_raw(Box::new(WallcrysWall { inner: model.inner.walls.ground_wall() }));
        Ok(())
    })
}

/// Parses a wall literal such as `"L0;counts=3,2f,1"` or `"3,2f,1"`.
///
/// # Safety
/// `model` must be a valid model handle, `literal` a NUL-terminated string
/// and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wallcrys_wall_parse(
    model: *const WallcrysModel,
    literal: *const c_char,
    out: *mut *mut WallcrysWall,
) -> WallcrysStatus {
    guard(|| {
        let model = borrow(model, "model")?;
        check_out(out, "out")?;
        let w = model.inner.walls.parse_literal(text(literal, "literal")?).map_err(fail)?;
        *out = Box::into_raw(Box::new(WallcrysWall { inner: w }));
        Ok(())
    })
}

/// Releases a wall.
///
/// # Safety
/// `wall` must be null or a wall handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wallcrys_wall_free(wall: *mut WallcrysWall) {
    if !wall.is_null() {
        drop(Box::from_raw(wall));
    }
}

/// Applies `e_i` when `raise` is true and `f_i` otherwise. Returns
/// `Undefined` when the operator gives no wall.
///
/// # Safety
/// `model` and `wall` must be valid handles of the same model and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wallcrys_wall_apply(
    model: *const WallcrysModel,
    wall: *const WallcrysWall,
    i: u32,
    raise: bool,
    out: *mut *mut WallcrysWall,
) -> WallcrysStatus {
    guard(|| {
        let model = borrow(model, "model")?;
        let wall = borrow(wall, "wall")?;
        check_out(out, "out")?;
        let walls = &model.inner.walls;
        let i = i as usize;
        if i >= walls.num_indices() {
            return Err((WallcrysStatus::Invalid, format!("index {i} is outside the index set")));
        }
        let next = if raise { walls.e(&wall.inner, i) } else { walls.f(&wall.inner, i) };
        let next = next.ok_or_else(|| (WallcrysStatus::Undefined, format!("operator {i} gives no wall")))?;
        *out = Box::into_raw(Box::new(WallcrysWall { inner: next }));
        Ok(())
    })
}

/// `eps_i` and `phi_i` of a wall.
///
/// # Safety
/// `model` and `wall` must be valid handles of the same model; `eps` and
/// `phi` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn wallcrys_wall_eps_phi(
    model: *const WallcrysModel,
    wall: *const WallcrysWall,
    i: u32,
    eps: *mut u32,
    phi: *mut u32,
) -> WallcrysStatus {
    guard(|| {
        let model = borrow(model, "model")?;
        let wall = borrow(wall, "wall")?;
        check_out(eps, "eps")?;
        check_out(phi, "phi")?;
        let walls = &model.inner.walls;
        let i = i as usize;
        if i >= walls.num_indices() {
            return Err((WallcrysStatus::Invalid, format!("index {i} is outside the index set")));
        }
        *eps = walls.eps(&wall.inner, i) as u32;
        *phi = walls.phi(&wall.inner, i) as u32;
        Ok(())
    })
}

/// Whether the wall has no removable delta column.
///
/// # Safety
/// `model` and `wall` must be valid handles of the same model and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wallcrys_wall_is_reduced(
    model: *const WallcrysModel,
    wall: *const WallcrysWall,
    out: *mut bool,
) -> WallcrysStatus {
    guard(|| {
        let model = borrow(model, "model")?;
        let wall = borrow(wall, "wall")?;
        check_out(out, "out")?;
        *out = model.inner.walls.is_reduced(&wall.inner);
        Ok(())
    })
}

/// The wall literal, e.g. `"L0;counts=3,2f,1"`.
///
/// # Safety
/// `model` and `wall` must be valid handles of the same model and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wallcrys_wall_literal(
    model: *const WallcrysModel,
    wall: *const WallcrysWall,
    out: *mut *mut c_char,
) -> WallcrysStatus {
    guard(|| {
        let model = borrow(model, "model")?;
        let wall = borrow(wall, "wall")?;
        check_out(out, "out")?;
        give_string(out, model.inner.walls.literal(&wall.inner))
    })
}

/// Text diagram of the wall.
///
/// # Safety
/// `model` and `wall` must be valid handles of the same model and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wallcrys_wall_ascii(
    model: *const WallcrysModel,
    wall: *const WallcrysWall,
    out: *mut *mut c_char,
) -> WallcrysStatus {
    guard(|| {
        let model = borrow(model, "model")?;
        let wall = borrow(wall, "wall")?;
        check_out(out, "out")?;
        give_string(out, model.inner.walls.render_ascii(&wall.inner))
    })
}

/// The path read from the wall, as entries `p(N-1) .. p(0)` separated by
/// spaces; the ground path is the empty string.
///
/// # Safety
/// `model` and `wall` must be valid handles of the same model and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wallcrys_wall_read_path(
    model: *const WallcrysModel,
    wall: *const WallcrysWall,
    out: *mut *mut c_char,
) -> WallcrysStatus {
    guard(|| {
        let model = borrow(model, "model")?;
        let wall = borrow(wall, "wall")?;
        check_out(out, "out")?;
        let p = model.inner.psi(&wall.inner).map_err(fail)?;
        give_string(out, model.inner.paths.key(&p))
    })
}

/// JSON crystal graph of one model (a [`WallcrysGraphModel`] value) to `depth`, capped at `max_nodes` nodes.
/// Returns `Truncated` together with the partial graph when the cap is hit.
///
/// # Safety
/// `model` must be a valid model handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wallcrys_graph_json(
    model: *const WallcrysModel,
    kind: u32,
    depth: u32,
    max_nodes: u64,
    out: *mut *mut c_char,
) -> WallcrysStatus {
    guard(|| {
        let model = borrow(model, "model")?;
        check_out(out, "out")?;
        let limits = Limits { max_depth: depth as usize, max_nodes: max_nodes as usize };
        let graph = match kind {
            k if k == WallcrysGraphModel::Path as u32 => {
                generate_graph(&model.inner.paths, LambdaPath::ground(), limits).graph
            }
            k if k == WallcrysGraphModel::Wall as u32 => {
                generate_graph(&model.inner.walls, model.inner.walls.ground_wall(), limits).graph
            }
            k => return Err((WallcrysStatus::Invalid, format!("unknown graph model {k}"))),
        };
        give_string(out, graph.to_json())?;
        if graph.truncated {
            return Err((WallcrysStatus::Truncated, "node budget exceeded".into()));
        }
        Ok(())
    })
}

/// Verifies the wall-to-path correspondence to `depth` and writes the JSON
/// report. Returns `Counterexample` or `Truncated` when it does not pass;
/// the report is written in every case.
///
/// # Safety
/// `model` must be a valid model handle and `report` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wallcrys_verify(
    model: *const WallcrysModel,
    depth: u32,
    max_nodes: u64,
    report: *mut *mut c_char,
) -> WallcrysStatus {
    guard(|| {
        let model = borrow(model, "model")?;
        check_out(report, "report")?;
        let r = verify_isomorphism(&model.inner, depth as usize, max_nodes as usize);
        give_string(report, r.to_json())?;
        match r.status {
            Status::Pass => Ok(()),
            Status::Fail => Err((WallcrysStatus::Counterexample, r.reason.unwrap_or_default())),
            Status::Truncated => Err((WallcrysStatus::Truncated, "node budget exceeded".into())),
        }
    })
}
