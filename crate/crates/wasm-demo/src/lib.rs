//! Browser bindings. Every entry point takes module text in the input
//! grammar and returns a JSON string; failures come back as `{"error": ...}`.

use edepth::cohomology::{lc_table, socle_table};
use edepth::cone::{self, export_window};
use edepth::parse::parse_document;
use edepth::resolution::GradedPresentation;
use edepth::Error;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn load(text: &str) -> Result<GradedPresentation, Error> {
    let doc = parse_document(text)?;
    let u = doc.first().cloned().ok_or_else(|| Error::Parse { line: 0, msg: "no submodule block".into() })?;
    GradedPresentation::new(u)
}

fn finish(r: Result<Value, Error>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({"error": e.to_string()}).to_string(),
    }
}

/// Local cohomology, Δ and socle tables. `lo > hi` selects the default window.
#[wasm_bindgen]
pub fn tables(text: &str, lo: i32, hi: i32) -> String {
    finish(load(text).map(|m| {
        let lc = lc_table(&m);
        let d = cone::delta(&lc);
        let w = if lo <= hi { (lo, hi) } else { export_window(&d) };
        json!({"n": lc.n, "lc": lc.to_json(w), "delta": d.to_json(w), "socle": socle_table(&m).to_json()})
    }))
}

/// E-depth, depth, dimension and the sequential Cohen-Macaulay verdict.
#[wasm_bindgen]
pub fn edepth(text: &str) -> String {
    finish(load(text).map(|m| {
        let ext: Vec<Value> = m.all_ext().iter().enumerate().filter(|(_, e)| !e.is_zero()).map(|(i, e)| json!({"i": i, "dim": e.krull_dim(), "depth": e.depth()})).collect();
        json!({"n": m.nvars(), "krull_dim": m.krull_dim(), "depth": m.depth(), "edepth": m.edepth(), "sequentially_cm": m.is_sequentially_cm(), "ext": ext})
    }))
}

/// Ray decomposition of the Δ table.
#[wasm_bindgen]
pub fn decompose(text: &str, seed: u32) -> String {
    finish(load(text).and_then(|m| {
        let d = cone::decompose(&m, u64::from(seed))?;
        let exact = cone::reconstruct(&d.coefficients) == d.delta;
        Ok(json!({"edepth": d.edepth, "sequentially_cm": d.sequentially_cm, "coefficients": d.coefficients.to_json(), "delta": d.delta.to_json(export_window(&d.delta)), "exact": exact}))
    }))
}
