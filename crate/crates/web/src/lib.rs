//! Browser bindings. Every export takes plain strings and numbers and
//! returns a JSON document; errors surface as JS exceptions carrying the
//! engine's message.
//!
//! The `*_json` functions without the `js_` prefix are ordinary Rust and are
//! what the native tests exercise.

use bggcoh::bwb::bgg_complex;
use bggcoh::cech::{local_cohomology, tilde_h, FormBundle, Window};
use bggcoh::steinberg::cohomology_table;
use bggcoh::weights::Weight;
use wasm_bindgen::prelude::*;

/// Largest `d` accepted by the weight-only operations.
pub const MAX_D: usize = 6;
/// Čech computations grow quickly; keep page responses interactive.
pub const MAX_D_LOCAL: usize = 3;
pub const MAX_WINDOW: i64 = 6;

fn parse_weight(s: &str) -> Result<Weight, String> {
    let w: Weight = s.parse().map_err(|e: bggcoh::Error| e.to_string())?;
    if w.rank() < 2 || w.d() > MAX_D {
        return Err(format!("weights need 2..={} entries", MAX_D + 1));
    }
    Ok(w)
}

pub fn bgg_complex_json(lambda: &str) -> Result<String, String> {
    let data = bgg_complex(&parse_weight(lambda)?).map_err(|e| e.to_string())?;
    serde_json::to_string(&data).map_err(|e| e.to_string())
}

pub fn steinberg_table_json(lambda: &str) -> Result<String, String> {
    let table = cohomology_table(&parse_weight(lambda)?).map_err(|e| e.to_string())?;
    table.to_json().map_err(|e| e.to_string())
}

/// `H^*_Z(P^d, Omega^p(k))` for `Z = P^j`, or the reduced module when
/// `reduced` is set, over the window `|m_i| <= window`.
pub fn local_cohomology_json(
    d: usize,
    j: usize,
    p: usize,
    k: i64,
    window: i64,
    reduced: bool,
) -> Result<String, String> {
    if !(1..=MAX_D_LOCAL).contains(&d) {
        return Err(format!("d must lie in 1..={MAX_D_LOCAL}"));
    }
    if j >= d || p > d {
        return Err(format!("need j < d and p <= d, got j = {j}, p = {p}"));
    }
    if !(1..=MAX_WINDOW).contains(&window) {
        return Err(format!("window must lie in 1..={MAX_WINDOW}"));
    }
    let w = Window::new(window).map_err(|e| e.to_string())?;
    let bundle = FormBundle::new(p, k);
    let table = if reduced {
        tilde_h(j, bundle, d, w)
    } else {
        local_cohomology(j, bundle, d, w)
    };
    table.and_then(|t| t.to_json()).map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = bggComplex)]
pub fn js_bgg_complex(lambda: &str) -> Result<String, JsError> {
    bgg_complex_json(lambda).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = steinbergTable)]
pub fn js_steinberg_table(lambda: &str) -> Result<String, JsError> {
    steinberg_table_json(lambda).map_err(|e| JsError::new(&e))
}

// i32 rather than i64: JS numbers, not BigInts, on the page side.
#[wasm_bindgen(js_name = localCohomology)]
pub fn js_local_cohomology(
    d: usize,
    j: usize,
    p: usize,
    k: i32,
    window: i32,
    reduced: bool,
) -> Result<String, JsError> {
    local_cohomology_json(d, j, p, k.into(), window.into(), reduced).map_err(|e| JsError::new(&e))
}
