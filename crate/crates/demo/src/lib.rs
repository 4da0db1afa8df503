//! Three operations for the static page in `www/`. Each returns a JSON
//! string; the `wasm_bindgen` wrappers only translate errors.

use owf_core::cli::factor_demo;
use owf_core::free_group::ball;
use owf_core::ow_tower::{ow_map, tower_map};
use owf_core::{Alphabet, Pattern, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest ball the page accepts; `ball(5)` has 485 cells.
pub const MAX_DEMO_RADIUS: usize = 5;

/// Parses one bit per cell of `ball(radius)` in canonical order, ignoring
/// whitespace. An empty string draws the bits from `seed`.
pub fn parse_bits(radius: usize, bits: &str, seed: u64) -> Result<Pattern, String> {
    if radius > MAX_DEMO_RADIUS {
        return Err(format!("radius {radius} is above the demo limit {MAX_DEMO_RADIUS}"));
    }
    let cells = ball(radius);
    let digits: Vec<char> = bits.chars().filter(|c| !c.is_whitespace()).collect();
    let values: Vec<u32> = if digits.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        cells.iter().map(|_| rng.gen_range(0..2)).collect()
    } else {
        if digits.len() != cells.len() {
            return Err(format!("ball({radius}) has {} cells, got {} bits", cells.len(), digits.len()));
        }
        digits
            .iter()
            .map(|c| c.to_digit(2).ok_or_else(|| format!("'{c}' is not a bit")))
            .collect::<Result<_, _>>()?
    };
    Pattern::from_cells(Alphabet::Bits, cells.into_iter().zip(values)).map_err(|e| e.to_string())
}

fn cell(x: &Pattern, w: &Word) -> Value {
    x.get(w).map_or(Value::Null, Value::from)
}

/// `x ↦ (x(f) + x(fa), x(f) + x(fb))` on every cell of the ball; `null`
/// where the window does not determine the output.
pub fn ow_map_json(radius: usize, bits: &str, seed: u64) -> Result<String, String> {
    let x = parse_bits(radius, bits, seed)?;
    let y = ow_map(&x).map_err(|e| e.to_string())?;
    let rows: Vec<Value> = ball(radius)
        .iter()
        .map(|w| json!({ "cell": w, "x": cell(&x, w), "p": cell(&y.p, w), "q": cell(&y.q, w) }))
        .collect();
    Ok(json!({ "radius": radius, "rows": rows }).to_string())
}

/// The first `levels` tower bits on every cell of the ball.
pub fn tower_json(radius: usize, levels: usize, bits: &str, seed: u64) -> Result<String, String> {
    if levels == 0 || levels > radius + 1 {
        return Err(format!("levels must be between 1 and {}", radius + 1));
    }
    let x = parse_bits(radius, bits, seed)?;
    let t = tower_map(&x, levels);
    let rows: Vec<Value> = ball(radius)
        .iter()
        .map(|w| json!({ "cell": w, "x": cell(&x, w), "levels": t.levels().iter().map(|l| cell(l, w)).collect::<Vec<_>>() }))
        .collect();
    Ok(json!({ "radius": radius, "levels": levels, "rows": rows }).to_string())
}

/// Histogram of the output symbol at `1_F` for i.i.d. inputs with `P(1) = p_one`,
/// with the chi-square and entropy summaries.
pub fn factor_json(samples: usize, seed: u64, p_one: f64) -> Result<String, String> {
    let s = factor_demo(samples, seed, p_one).map_err(|e| e.to_string())?;
    serde_json::to_string(&s).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn ow_map_ball(radius: u32, bits: &str, seed: u32) -> Result<String, JsValue> {
    ow_map_json(radius as usize, bits, seed.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn tower_levels(radius: u32, levels: u32, bits: &str, seed: u32) -> Result<String, JsValue> {
    tower_json(radius as usize, levels as usize, bits, seed.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn factor_histogram(samples: u32, seed: u32, p_one: f64) -> Result<String, JsValue> {
    factor_json(samples as usize, seed.into(), p_one).map_err(|e| JsValue::from_str(&e))
}
