//! Browser bindings. Each call takes the polynomial as text and returns the
//! same JSON document the command line prints with `--format json`.

use wasm_bindgen::prelude::*;

use modpk::parse::parse_poly;
use modpk::report::{factor_report, lifts_report, roots_report};
use modpk::PrimePower;

/// Lifts listed by the page.
const EXPAND: usize = 64;

fn to_json<T: serde::Serialize>(r: &T) -> String {
    serde_json::to_string(r).expect("serializable")
}

pub fn factor_json(f: &str, p: u64, k: u32, seed: u64) -> Result<String, String> {
    let pp = PrimePower::new(p, k).map_err(|e| e.to_string())?;
    let f = parse_poly(f, pp.modulus()).map_err(|e| e.to_string())?;
    factor_report(&f, &pp, seed).map(|r| to_json(&r)).map_err(|e| e.to_string())
}

pub fn lifts_json(f: &str, g: &str, p: u64, k: u32, seed: u64) -> Result<String, String> {
    let pp = PrimePower::new(p, k).map_err(|e| e.to_string())?;
    let f = parse_poly(f, pp.modulus()).map_err(|e| e.to_string())?;
    let g = parse_poly(g, p as u128).map_err(|e| e.to_string())?;
    lifts_report(&f, &g, &pp, EXPAND, seed).map(|r| to_json(&r)).map_err(|e| e.to_string())
}

/// `phi` empty means roots in `Z/p^k`.
pub fn roots_json(g: &str, phi: &str, p: u64, k: u32, seed: u64) -> Result<String, String> {
    let phi = Some(phi.trim()).filter(|s| !s.is_empty());
    roots_report(g, p, k, phi, EXPAND, seed).map(|r| to_json(&r)).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn factor(f: &str, p: u32, k: u32, seed: u32) -> Result<String, JsValue> {
    factor_json(f, p as u64, k, seed as u64).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn lifts(f: &str, g: &str, p: u32, k: u32, seed: u32) -> Result<String, JsValue> {
    lifts_json(f, g, p as u64, k, seed as u64).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn roots(g: &str, phi: &str, p: u32, k: u32, seed: u32) -> Result<String, JsValue> {
    roots_json(g, phi, p as u64, k, seed as u64).map_err(|e| JsValue::from_str(&e))
}
