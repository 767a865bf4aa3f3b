//! Browser bindings: lattice points, constants for one configuration, and a
//! two-square survey. Every export returns a JSON string.
//!
//! The plain functions are ordinary Rust and are tested natively; the
//! `wasm_bindgen` wrappers only convert errors.

use ingham_core::catalog;
use ingham_core::lattice::{realize_points, BBox};
use ingham_core::search::{classify_all, summarize};
use ingham_core::spectral::{ingham_constants, DEFAULT_A2_TOL};
use ingham_core::{LatticeSpec, TranslationConfig};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest grid a survey may use, to keep the page responsive.
pub const MAX_GRID: i64 = 3;

#[derive(Serialize)]
struct Point {
    j: usize,
    m: [i64; 2],
    x: f64,
    y: f64,
}

#[derive(Serialize)]
struct Constants {
    tiling: String,
    config: String,
    a2: bool,
    kappa1: f64,
    kappa2: f64,
    c1_full: f64,
    c2_full: f64,
    cells: Vec<[[f64; 2]; 4]>,
}

fn spec(tiling: &str) -> Result<LatticeSpec, String> {
    catalog::get(tiling).map(|e| e.spec).map_err(|e| e.to_string())
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

/// Lattice points of `tiling` inside `[x0, x1] × [y0, y1]`.
pub fn points_json(tiling: &str, x0: f64, y0: f64, x1: f64, y1: f64) -> Result<String, String> {
    let spec = spec(tiling)?;
    let pts: Vec<Point> = realize_points(&spec, BBox::new(x0, y0, x1, y1))
        .into_iter()
        .map(|p| Point { j: p.point.j + 1, m: p.point.m, x: p.xy[0], y: p.xy[1] })
        .collect();
    Ok(to_json(&pts))
}

/// `κ₁`, `κ₂`, the full constants and the domain cells; an empty `config`
/// selects the tiling's first reference configuration.
pub fn constants_json(tiling: &str, config: &str) -> Result<String, String> {
    let entry = catalog::get(tiling).map_err(|e| e.to_string())?;
    let c: TranslationConfig = if config.trim().is_empty() {
        entry.default_config().clone()
    } else {
        config.parse().map_err(|e: ingham_core::spectral::SpectralError| e.to_string())?
    };
    let k = ingham_constants(&entry.spec, &c, DEFAULT_A2_TOL).map_err(|e| e.to_string())?;
    Ok(to_json(&Constants {
        tiling: entry.spec.name.clone(),
        config: c.to_string(),
        a2: k.satisfies_a2,
        kappa1: k.kappa1,
        kappa2: k.kappa2,
        c1_full: k.c1_full,
        c2_full: k.c2_full,
        cells: ingham_core::geometry::omega_cells(&entry.spec, &c).cells,
    }))
}

/// Survey summary for the two-square tiling with sides `r < R` on `{0..grid}²`.
pub fn two_square_survey_json(r: &str, big_r: &str, grid: i64) -> Result<String, String> {
    if !(1..=MAX_GRID).contains(&grid) {
        return Err(format!("grid must be between 1 and {MAX_GRID}"));
    }
    let name = format!("two_square_r{}_R{}", r.trim(), big_r.trim());
    let spec = spec(&name)?;
    let result = classify_all(&spec, grid, DEFAULT_A2_TOL).map_err(|e| e.to_string())?;
    Ok(to_json(&summarize(&result)))
}

#[wasm_bindgen]
pub fn points(tiling: &str, x0: f64, y0: f64, x1: f64, y1: f64) -> Result<String, JsError> {
    points_json(tiling, x0, y0, x1, y1).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn constants(tiling: &str, config: &str) -> Result<String, JsError> {
    constants_json(tiling, config).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn two_square_survey(r: &str, big_r: &str, grid: u32) -> Result<String, JsError> {
    two_square_survey_json(r, big_r, i64::from(grid)).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn tilings() -> String {
    to_json(&catalog::NAMES)
}
