//! wasm-bindgen surface for the browser demo. All logic lives in [`demo`];
//! these wrappers only translate strings and errors across the boundary.

pub mod demo;

use wasm_bindgen::prelude::*;

use demo::Highlight;

fn family(name: &str) -> Result<resolve_kit::Family, JsValue> {
    demo::parse_family(name).map_err(|e| JsValue::from_str(&e))
}

/// SVG drawing of a family instance. `highlight` is one of
/// "none", "forced", "basis", "mstar".
#[wasm_bindgen]
pub fn family_svg(family_name: &str, n: usize, highlight: &str) -> Result<String, JsValue> {
    let family = family(family_name)?;
    let highlight = Highlight::parse(highlight).map_err(|e| JsValue::from_str(&e))?;
    demo::render_svg(family, n, highlight).map_err(|e| JsValue::from_str(&e))
}

/// JSON dimension analysis: counts, forced leaves, certificate, exact
/// dimensions (budget-limited), theorem verdict, chain triple.
#[wasm_bindgen]
pub fn analyze_family(family_name: &str, n: usize) -> Result<String, JsValue> {
    let family = family(family_name)?;
    demo::analyze_json(family, n).map_err(|e| JsValue::from_str(&e))
}

/// JSON closed-form vs oracle code table with the collision census
/// (prism_allied and web, n >= 6).
#[wasm_bindgen]
pub fn codes_table(family_name: &str, n: usize) -> Result<String, JsValue> {
    let family = family(family_name)?;
    demo::codes_json(family, n).map_err(|e| JsValue::from_str(&e))
}
