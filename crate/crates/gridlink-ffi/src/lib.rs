//! C ABI for the gridlink engine.
//!
//! Conventions:
//! - Grids are opaque handles created by `gridlink_grid_parse` or
//!   `gridlink_grid_from_arrays` and released with `gridlink_grid_free`.
//! - Every computation returns an `int32_t` status code (see the
//!   `GRIDLINK_*` constants) and writes its result through an
//!   out-parameter only on status 0 — except `gridlink_check_json`,
//!   which also writes its report on status 1 (checks computed, some
//!   failed).
//! - Returned strings are NUL-terminated, UTF-8, owned by the caller,
//!   and must be released with `gridlink_string_free`.
//! - On any nonzero status, `gridlink_last_error_message` returns a
//!   human-readable description of the most recent error on the
//!   calling thread (also caller-owned).

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gridlink::conway::conway;
use gridlink::floer::{
    euler_from_poincare, euler_hat_via_det, hat_from_tilde, poincare_from_dims, tilde_homology,
};
use gridlink::grid::GridDiagram;
use gridlink::verify::{check_grid, euler_hat_via_gamma};
use gridlink::Error;

/// Success.
pub const GRIDLINK_OK: i32 = 0;
/// A verification check computed but did not hold.
pub const GRIDLINK_ERR_CHECK: i32 = 1;
/// Malformed input: parse failure, marking constraint violation,
/// illegal move, or unknown option value.
pub const GRIDLINK_ERR_INPUT: i32 = 2;
/// The computation would exceed the configured size cap.
pub const GRIDLINK_ERR_RESOURCE: i32 = 3;
/// A required pointer argument was NULL.
pub const GRIDLINK_ERR_NULL: i32 = 4;
/// An internal invariant failed; the library state is still sound.
pub const GRIDLINK_ERR_INTERNAL: i32 = 5;

/// An oriented-link grid diagram (opaque).
pub struct GridlinkGrid {
    inner: GridDiagram,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn code_of(e: &Error) -> i32 {
    e.exit_code()
}

/// Runs `f` with panics contained; maps errors to status codes.
fn guarded<F: FnOnce() -> Result<i32, Error>>(f: F) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(code)) => code,
        Ok(Err(e)) => {
            set_error(&e.to_string());
            code_of(&e)
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "internal panic".to_string());
            set_error(&msg);
            GRIDLINK_ERR_INTERNAL
        }
    }
}

/// Writes a Rust string through a `char**` out-parameter.
///
/// # Safety
/// `out` must be a valid pointer to writable `char*` storage.
unsafe fn write_string(out: *mut *mut c_char, s: &str) {
    let c = CString::new(s.replace('\0', " ")).unwrap_or_default();
    *out = c.into_raw();
}

/// Parses a grid from its text or JSON form.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must point to
/// writable `GridlinkGrid*` storage.
#[no_mangle]
pub unsafe extern "C" fn gridlink_grid_parse(
    text: *const c_char,
    out: *mut *mut GridlinkGrid,
) -> i32 {
    if text.is_null() || out.is_null() {
        set_error("gridlink_grid_parse: NULL argument");
        return GRIDLINK_ERR_NULL;
    }
    *out = ptr::null_mut();
    let input = match CStr::from_ptr(text).to_str() {
        Ok(s) => s.to_owned(),
        Err(_) => {
            set_error("gridlink_grid_parse: text is not valid UTF-8");
            return GRIDLINK_ERR_INPUT;
        }
    };
    guarded(|| {
        let g = GridDiagram::parse(&input)?;
        *out = Box::into_raw(Box::new(GridlinkGrid { inner: g }));
        Ok(GRIDLINK_OK)
    })
}

/// Builds a grid from 1-based column arrays `xs[i]`, `os[i]` of
/// length `n` (row i hosts its X in column `xs[i]` and its O in
/// column `os[i]`).
///
/// # Safety
/// `xs` and `os` must point to `n` readable elements; `out` must
/// point to writable `GridlinkGrid*` storage.
#[no_mangle]
pub unsafe extern "C" fn gridlink_grid_from_arrays(
    n: usize,
    xs: *const usize,
    os: *const usize,
    out: *mut *mut GridlinkGrid,
) -> i32 {
    if xs.is_null() || os.is_null() || out.is_null() {
        set_error("gridlink_grid_from_arrays: NULL argument");
        return GRIDLINK_ERR_NULL;
    }
    *out = ptr::null_mut();
    let xs = std::slice::from_raw_parts(xs, n).to_vec();
    let os = std::slice::from_raw_parts(os, n).to_vec();
    guarded(|| {
        let g = GridDiagram::validate(xs, os)?;
        *out = Box::into_raw(Box::new(GridlinkGrid { inner: g }));
        Ok(GRIDLINK_OK)
    })
}

/// Releases a grid handle. NULL is a no-op.
///
/// # Safety
/// `g` must be NULL or a pointer returned by a `gridlink_grid_*`
/// constructor that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn gridlink_grid_free(g: *mut GridlinkGrid) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

unsafe fn grid_arg<'a>(g: *const GridlinkGrid, fn_name: &str) -> Option<&'a GridDiagram> {
    if g.is_null() {
        set_error(&format!("{fn_name}: NULL grid"));
        None
    } else {
        Some(&(*g).inner)
    }
}

/// Writes grid data (size, components, orientation counts, curvature,
/// base permutation) as a JSON object.
///
/// # Safety
/// `g` must be a live grid handle; `out_json` must point to writable
/// `char*` storage.
#[no_mangle]
pub unsafe extern "C" fn gridlink_info_json(
    g: *const GridlinkGrid,
    out_json: *mut *mut c_char,
) -> i32 {
    if out_json.is_null() {
        set_error("gridlink_info_json: NULL out-parameter");
        return GRIDLINK_ERR_NULL;
    }
    let Some(grid) = grid_arg(g, "gridlink_info_json") else {
        return GRIDLINK_ERR_NULL;
    };
    guarded(|| {
        let comps = grid.components();
        let (u_total, u_per) = grid.upward_counts(&comps);
        let (x0, sign) = grid.base_permutation();
        let obj = serde_json::json!({
            "n": grid.n(),
            "mu": comps.mu,
            "nk": comps.nk,
            "u_total": u_total,
            "u_per": u_per,
            "kappa": grid.curvatures(&comps),
            "x0": x0,
            "sign_x0": sign,
        });
        write_string(out_json, &obj.to_string());
        Ok(GRIDLINK_OK)
    })
}

/// Writes the normalized Conway function Γ in canonical fraction text
/// (variables t1..tμ, half-integer exponents in lowest terms).
///
/// # Safety
/// `g` must be a live grid handle; `out_text` must point to writable
/// `char*` storage.
#[no_mangle]
pub unsafe extern "C" fn gridlink_conway(
    g: *const GridlinkGrid,
    out_text: *mut *mut c_char,
) -> i32 {
    if out_text.is_null() {
        set_error("gridlink_conway: NULL out-parameter");
        return GRIDLINK_ERR_NULL;
    }
    let Some(grid) = grid_arg(g, "gridlink_conway") else {
        return GRIDLINK_ERR_NULL;
    };
    guarded(|| {
        let data = conway(grid)?;
        write_string(out_text, &data.gamma.to_string());
        Ok(GRIDLINK_OK)
    })
}

/// Writes the graded Euler characteristic of the hat homology.
/// `route` selects the computation: "homology", "det", or "gamma";
/// all routes return identical text on every valid input. `max_n`
/// caps the homology route's grid size (pass 0 for the default).
///
/// # Safety
/// `g` must be a live grid handle; `route` NULL or NUL-terminated;
/// `out_text` must point to writable `char*` storage.
#[no_mangle]
pub unsafe extern "C" fn gridlink_euler(
    g: *const GridlinkGrid,
    route: *const c_char,
    max_n: usize,
    out_text: *mut *mut c_char,
) -> i32 {
    if out_text.is_null() {
        set_error("gridlink_euler: NULL out-parameter");
        return GRIDLINK_ERR_NULL;
    }
    let Some(grid) = grid_arg(g, "gridlink_euler") else {
        return GRIDLINK_ERR_NULL;
    };
    let route = if route.is_null() {
        "det".to_string()
    } else {
        match CStr::from_ptr(route).to_str() {
            Ok(s) => s.to_owned(),
            Err(_) => {
                set_error("gridlink_euler: route is not valid UTF-8");
                return GRIDLINK_ERR_INPUT;
            }
        }
    };
    let cap = if max_n == 0 {
        gridlink::verify::DEFAULT_MAX_HOMOLOGY_N
    } else {
        max_n
    };
    guarded(|| {
        let chi = match route.as_str() {
            "homology" => {
                let h = tilde_homology(grid, cap)?;
                let hat = hat_from_tilde(&poincare_from_dims(h.mu, &h.dims), &h.nk)?;
                euler_from_poincare(&hat)
            }
            "det" => euler_hat_via_det(grid)?,
            "gamma" => euler_hat_via_gamma(&conway(grid)?)?,
            other => {
                return Err(Error::Parse(format!(
                    "unknown route {other:?} (expected homology, det, or gamma)"
                )))
            }
        };
        write_string(out_text, &chi.to_string());
        Ok(GRIDLINK_OK)
    })
}

/// Writes the bigraded tilde homology dimensions as JSON:
/// `{"total_rank", "tilde": [{"maslov", "alexander", "dim"}, ...]}`,
/// plus `"hat"` when `with_hat` is nonzero. Alexander entries are
/// exact-fraction strings. `max_n` caps the grid size (0 = default).
///
/// # Safety
/// `g` must be a live grid handle; `out_json` must point to writable
/// `char*` storage.
#[no_mangle]
pub unsafe extern "C" fn gridlink_hfk_json(
    g: *const GridlinkGrid,
    max_n: usize,
    with_hat: i32,
    out_json: *mut *mut c_char,
) -> i32 {
    if out_json.is_null() {
        set_error("gridlink_hfk_json: NULL out-parameter");
        return GRIDLINK_ERR_NULL;
    }
    let Some(grid) = grid_arg(g, "gridlink_hfk_json") else {
        return GRIDLINK_ERR_NULL;
    };
    let cap = if max_n == 0 {
        gridlink::verify::DEFAULT_MAX_HOMOLOGY_N
    } else {
        max_n
    };
    guarded(|| {
        let h = tilde_homology(grid, cap)?;
        let half = |two: i32| {
            if two % 2 == 0 {
                (two / 2).to_string()
            } else {
                format!("{two}/2")
            }
        };
        let triples = |items: Vec<(Vec<i32>, i32, usize)>| -> serde_json::Value {
            items
                .into_iter()
                .map(|(a2, m, dim)| {
                    serde_json::json!({
                        "maslov": m,
                        "alexander": a2.iter().map(|&a| half(a)).collect::<Vec<_>>(),
                        "dim": dim,
                    })
                })
                .collect()
        };
        let tilde: Vec<(Vec<i32>, i32, usize)> = h
            .dims
            .iter()
            .map(|((a2, m), &d)| (a2.clone(), *m, d))
            .collect();
        let mut obj = serde_json::json!({
            "n": grid.n(),
            "mu": h.mu,
            "total_rank": h.total_rank(),
            "tilde": triples(tilde),
        });
        if with_hat != 0 {
            let hat = hat_from_tilde(&poincare_from_dims(h.mu, &h.dims), &h.nk)?;
            let items: Vec<(Vec<i32>, i32, usize)> = hat
                .terms()
                .map(|(e, c)| (e.0[1..].to_vec(), e.0[0] / 2, c as usize))
                .collect();
            obj["hat"] = triples(items);
        }
        write_string(out_json, &obj.to_string());
        Ok(GRIDLINK_OK)
    })
}

/// Runs the full cross-verification battery (route agreement, the
/// determinant bridge, symmetries, deconvolution) and writes the
/// report as JSON. Returns 0 when every check passed, 1 when the
/// report contains a failed check (JSON is written in both cases).
/// `max_homology_n` / `max_statesum_n` cap the routes (0 = defaults).
///
/// # Safety
/// `g` must be a live grid handle; `out_json` must point to writable
/// `char*` storage.
#[no_mangle]
pub unsafe extern "C" fn gridlink_check_json(
    g: *const GridlinkGrid,
    max_homology_n: usize,
    max_statesum_n: usize,
    out_json: *mut *mut c_char,
) -> i32 {
    if out_json.is_null() {
        set_error("gridlink_check_json: NULL out-parameter");
        return GRIDLINK_ERR_NULL;
    }
    let Some(grid) = grid_arg(g, "gridlink_check_json") else {
        return GRIDLINK_ERR_NULL;
    };
    let max_hom = if max_homology_n == 0 {
        gridlink::verify::DEFAULT_MAX_HOMOLOGY_N
    } else {
        max_homology_n
    };
    let max_sum = if max_statesum_n == 0 {
        gridlink::verify::DEFAULT_MAX_STATESUM_N
    } else {
        max_statesum_n
    };
    guarded(|| {
        let report = check_grid(grid, "ffi", max_hom, max_sum);
        write_string(out_json, &serde_json::to_string(&report).unwrap());
        if report.pass {
            Ok(GRIDLINK_OK)
        } else {
            set_error("one or more verification checks failed; see the JSON report");
            Ok(GRIDLINK_ERR_CHECK)
        }
    })
}

/// Returns the most recent error message on the calling thread, or
/// NULL if none. The caller owns the string.
#[no_mangle]
pub extern "C" fn gridlink_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| match &*e.borrow() {
        Some(c) => c.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// Releases a string returned by this library. NULL is a no-op.
///
/// # Safety
/// `s` must be NULL or a string returned by this library that has not
/// been freed.
#[no_mangle]
pub unsafe extern "C" fn gridlink_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
