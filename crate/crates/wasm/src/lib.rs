//! Browser bindings used by `www/index.html`.
//!
//! Each export has a plain Rust twin returning `Result<_, String>` so the
//! logic is testable off the browser.

use mathplay::figures::Figure;
use mathplay::games::{analyze_nim, Heaps};
use mathplay::lsystem::{self, presets, RenderSpec};
use wasm_bindgen::prelude::*;

pub const MAX_POINTS: u32 = 2000;
pub const MAX_ORDER: u32 = 8;

pub fn chords(n: u32, k: u32) -> Result<String, String> {
    if n > MAX_POINTS {
        return Err(format!("n must be at most {MAX_POINTS}"));
    }
    Figure::ModularChords { n, k }.svg().map_err(|e| e.to_string())
}

pub fn lsystem(rules: &str, order: u32, angle: Option<f64>) -> Result<String, String> {
    if order > MAX_ORDER {
        return Err(format!("order must be at most {MAX_ORDER}"));
    }
    let system = lsystem::parse(rules).map_err(|e| e.to_string())?;
    let spec = RenderSpec {
        angle,
        ..RenderSpec::with_order(order)
    };
    Figure::Lsystem { system, spec }.svg().map_err(|e| e.to_string())
}

/// Same JSON shape as the service's game analysis.
pub fn nim(heaps: &[u32]) -> String {
    let a = analyze_nim(&Heaps::new(heaps.iter().map(|&h| u64::from(h)).collect::<Vec<_>>()));
    let moves: Vec<_> = a
        .optimal_moves
        .iter()
        .map(|m| serde_json::json!({ "heap": m.heap, "take": m.take }))
        .collect();
    serde_json::json!({
        "outcome": a.outcome.to_string(),
        "grundy": a.grundy,
        "optimalMoves": moves,
    })
    .to_string()
}

#[wasm_bindgen(js_name = chordsSvg)]
pub fn chords_svg(n: u32, k: u32) -> Result<String, JsError> {
    chords(n, k).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = lsystemSvg)]
pub fn lsystem_svg(rules: &str, order: u32, angle: Option<f64>) -> Result<String, JsError> {
    lsystem(rules, order, angle).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = presetNames)]
pub fn preset_names() -> Vec<String> {
    presets::ALL.iter().map(|(name, _)| name.to_string()).collect()
}

#[wasm_bindgen(js_name = presetRules)]
pub fn preset_rules(name: &str) -> Option<String> {
    presets::by_name(name).map(str::to_owned)
}

/// JSON text: `outcome`, `grundy`, `optimalMoves`.
#[wasm_bindgen(js_name = nimAnalysis)]
pub fn nim_analysis(heaps: Vec<u32>) -> String {
    nim(&heaps)
}
