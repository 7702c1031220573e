//! WebAssembly bindings for the in-browser demo (`www/index.html`).

mod demo;

use wasm_bindgen::prelude::*;

fn to_js(result: Result<serde_json::Value, String>) -> Result<String, JsError> {
    result.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

/// JSON trace of the key derivation.
#[wasm_bindgen]
pub fn derive(key: &str) -> Result<String, JsError> {
    to_js(demo::derive(key))
}

/// Encrypts `plaintext` and returns JSON with the ciphertext (hex) and
/// histograms of both sides. Nonzero `code` and `power_ex` override the key.
#[wasm_bindgen(js_name = encryptAndAnalyze)]
pub fn encrypt_and_analyze(
    plaintext: &str,
    key: &str,
    code: u32,
    power_ex: u32,
) -> Result<String, JsError> {
    to_js(demo::encrypt_and_analyze(plaintext, key, code, power_ex))
}

/// JSON list of the first `count` shift terms (at most 4096).
#[wasm_bindgen(js_name = shiftTerms)]
pub fn shift_terms(key: &str, code: u32, power_ex: u32, count: usize) -> Result<String, JsError> {
    to_js(demo::shift_terms(key, code, power_ex, count))
}
