//! Plain-Rust side of the browser demo. Everything here returns JSON so the
//! page can render it directly; the `wasm_bindgen` layer only converts errors.

use sdree::analysis::{analyze, AnalysisReport};
use sdree::{derive_key, encrypt, CipherParams, Key, ShiftStream};
use serde_json::{json, Value};

/// Upper bound on how many shift terms the page may request at once.
pub const MAX_TERMS: usize = 4096;

fn key_from(text: &str) -> Result<Key, String> {
    Key::try_from(text).map_err(|e| e.to_string())
}

/// Parameters from explicit overrides when both are nonzero, otherwise
/// derived from `key`.
pub fn resolve_params(key: &str, code: u32, power_ex: u32) -> Result<CipherParams, String> {
    if code != 0 && power_ex != 0 {
        return CipherParams::new(code.into(), power_ex.into()).map_err(|e| e.to_string());
    }
    sdree::params_for_key(&key_from(key)?).map_err(|e| e.to_string())
}

fn params_json(p: &CipherParams) -> Value {
    json!({
        "code": p.code(),
        "power_ex": p.power_ex(),
        "prime_index": p.prime_index(),
        "modulus": p.modulus(),
        "weak": p.is_weak(),
    })
}

fn report_json(r: &AnalysisReport) -> Value {
    json!({
        "counts": r.histogram.counts().to_vec(),
        "total": r.histogram.total(),
        "distinct": r.distinct_bytes,
        "max_run": r.max_run_length,
        "ic": r.index_of_coincidence,
        "chi2": r.chi_square_uniform,
    })
}

/// Key-derivation trace plus the resulting cipher parameters.
pub fn derive(key: &str) -> Result<Value, String> {
    let trace = derive_key(&key_from(key)?).map_err(|e| e.to_string())?;
    let params = CipherParams::new(trace.code, trace.power_ex).map_err(|e| e.to_string())?;
    Ok(json!({
        // Exceeds f64 precision for long keys; ship it as a string.
        "csum": trace.csum.to_string(),
        "pseudo_code": trace.pseudo_code,
        "temporary_power_ex": trace.temporary_power_ex,
        "params": params_json(&params),
    }))
}

/// Encrypts UTF-8 `plaintext`, returning the ciphertext as hex together
/// with byte histograms and repetition metrics for both sides.
pub fn encrypt_and_analyze(
    plaintext: &str,
    key: &str,
    code: u32,
    power_ex: u32,
) -> Result<Value, String> {
    let params = resolve_params(key, code, power_ex)?;
    let plain = plaintext.as_bytes();
    let cipher = encrypt(&params, plain);
    let hex: String = cipher.iter().map(|b| format!("{b:02x}")).collect();
    Ok(json!({
        "params": params_json(&params),
        "ciphertext_hex": hex,
        "plaintext": report_json(&analyze(plain)),
        "ciphertext": report_json(&analyze(&cipher)),
    }))
}

/// The first `count` shift terms and the per-byte shift mod 256.
pub fn shift_terms(key: &str, code: u32, power_ex: u32, count: usize) -> Result<Value, String> {
    let params = resolve_params(key, code, power_ex)?;
    let count = count.min(MAX_TERMS);
    let terms: Vec<u64> = ShiftStream::new(&params).take(count).collect();
    let byte_shifts: Vec<u64> = terms.iter().map(|t| (params.code() + t) % 256).collect();
    Ok(json!({
        "params": params_json(&params),
        "terms": terms,
        "byte_shifts": byte_shifts,
    }))
}
