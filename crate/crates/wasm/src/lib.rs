//! Browser demo bindings: a minimal hand-rolled wasm ABI over the core lab.
//!
//! Three JSON-in/JSON-out entry points back the static demo page:
//!
//! - [`api_bound_table`]: the lower/upper competitive-ratio curves on a
//!   capacity grid (the curve explorer),
//! - [`api_simulate`]: one algorithm run with the full per-round buffer
//!   trace (the instance playground),
//! - [`api_duel`]: an adversary duel with the realized instance and trace
//!   (the adversary theatre).
//!
//! The exported `extern "C"` surface passes UTF-8 JSON through linear
//! memory: the host calls [`bk_alloc`], writes the request, calls an entry
//! point, reads the response at the returned packed pointer/length, then
//! frees both buffers with [`bk_free`]. No tooling beyond a wasm32 target
//! is needed to build or consume it; the same functions compile natively,
//! which is how the test suite drives them.

use bufferknap::adversary::{duel, AdversaryConfig, AdversaryKind};
use bufferknap::algorithms::AlgorithmId;
use bufferknap::exact::{parse_rat, to_decimal, Rat};
use bufferknap::harness::{
    duel_report, ratio_table, run_selected, run_simulation, RunOutcome, Variant,
};
use bufferknap::model::Instance;
use serde_json::{json, Value};

fn parse_rat_field(v: &Value, field: &str) -> Result<Rat, String> {
    let s = v
        .get(field)
        .and_then(Value::as_str)
        .ok_or_else(|| format!("missing field {field:?}"))?;
    parse_rat(s)
}

fn err_json(message: impl std::fmt::Display) -> String {
    json!({ "error": message.to_string() }).to_string()
}

/// `{"variant": "...", "r_min": "p/q", "r_max": "p/q", "steps": N}` →
/// `{"rows": [{"r", "lower", "upper", "algorithm"}...]}` with 12-digit
/// decimals (plenty for a plot, still exact underneath).
pub fn api_bound_table(request: &str) -> String {
    let run = || -> Result<String, String> {
        let req: Value = serde_json::from_str(request).map_err(|e| e.to_string())?;
        let variant: Variant = req
            .get("variant")
            .and_then(Value::as_str)
            .ok_or("missing field \"variant\"")?
            .parse()?;
        let r_min = parse_rat_field(&req, "r_min")?;
        let r_max = parse_rat_field(&req, "r_max")?;
        let steps = req.get("steps").and_then(Value::as_u64).unwrap_or(60).clamp(1, 2000);
        let rows = ratio_table(variant.mode, variant.removability, &r_min, &r_max, steps as u32);
        let rows: Vec<Value> = rows
            .iter()
            .map(|row| {
                json!({
                    "r": to_decimal(&row.r, 12),
                    "lower": row.lower.to_decimal(12),
                    "upper": row.upper.to_decimal(12),
                    "algorithm": row.algorithm.map(|a| a.to_string()),
                })
            })
            .collect();
        Ok(json!({ "rows": rows }).to_string())
    };
    run().unwrap_or_else(err_json)
}

fn outcome_json(instance: &Instance, outcome: &RunOutcome) -> Value {
    json!({
        "report": serde_json::to_value(&outcome.report).unwrap(),
        "rounds": outcome.trace.rounds.iter().map(|r| r.to_vec()).collect::<Vec<_>>(),
        "items": instance
            .items
            .iter()
            .map(|e| json!({
                "size": to_decimal(&e.size, 6),
                "value": to_decimal(&e.value, 6),
            }))
            .collect::<Vec<_>>(),
    })
}

/// `{"instance": {...}, "alg": "auto" | "algN"}` → report + rounds + items.
pub fn api_simulate(request: &str) -> String {
    let run = || -> Result<String, String> {
        let req: Value = serde_json::from_str(request).map_err(|e| e.to_string())?;
        let instance_value =
            req.get("instance").ok_or("missing field \"instance\"")?.to_string();
        let instance = Instance::from_json(&instance_value).map_err(|e| e.to_string())?;
        let alg = req.get("alg").and_then(Value::as_str).unwrap_or("auto");
        let outcome = if alg.eq_ignore_ascii_case("auto") {
            run_selected(&instance)
        } else {
            let id: AlgorithmId = alg.parse()?;
            run_simulation(id, &instance)
        }
        .map_err(|e| e.to_string())?;
        Ok(outcome_json(&instance, &outcome).to_string())
    };
    run().unwrap_or_else(err_json)
}

/// `{"kind": "...", "r": "p/q", "eps": "p/q", "alg": "algN", "c": "p/q"?}` →
/// duel report + rounds + items of the realized instance.
pub fn api_duel(request: &str) -> String {
    let run = || -> Result<String, String> {
        let req: Value = serde_json::from_str(request).map_err(|e| e.to_string())?;
        let kind: AdversaryKind = req
            .get("kind")
            .and_then(Value::as_str)
            .ok_or("missing field \"kind\"")?
            .parse()?;
        let r = parse_rat_field(&req, "r")?;
        let eps = parse_rat_field(&req, "eps")?;
        let alg: AlgorithmId = req
            .get("alg")
            .and_then(Value::as_str)
            .ok_or("missing field \"alg\"")?
            .parse()?;
        let mut config = AdversaryConfig::new(kind, r, eps);
        if req.get("c").is_some() {
            config.growth_c = parse_rat_field(&req, "c")?;
        }
        let result = duel(&config, alg).map_err(|e| e.to_string())?;
        Ok(json!({
            "report": serde_json::to_value(duel_report(&result)).unwrap(),
            "rounds": result.trace.rounds.iter().map(|r| r.to_vec()).collect::<Vec<_>>(),
            "items": result
                .instance
                .items
                .iter()
                .map(|e| json!({
                    "size": to_decimal(&e.size, 6),
                    "value": to_decimal(&e.value, 6),
                }))
                .collect::<Vec<_>>(),
        })
        .to_string())
    };
    run().unwrap_or_else(err_json)
}

// ---------------------------------------------------------------------------
// linear-memory ABI
// ---------------------------------------------------------------------------

/// Allocates `len` bytes the host may write a request into.
#[no_mangle]
pub extern "C" fn bk_alloc(len: usize) -> *mut u8 {
    let mut buf = Vec::<u8>::with_capacity(len.max(1));
    let ptr = buf.as_mut_ptr();
    std::mem::forget(buf);
    ptr
}

/// Frees a buffer produced by [`bk_alloc`] or returned by an entry point.
///
/// # Safety
/// `ptr` must come from this module with the exact `len` it was created
/// with, and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bk_free(ptr: *mut u8, len: usize) {
    if !ptr.is_null() {
        drop(Vec::from_raw_parts(ptr, 0, len.max(1)));
    }
}

/// Response handoff cell: the entry points write the response buffer's
/// pointer and length here. On wasm32 this is two little-endian u32 words.
#[repr(C)]
pub struct ResponseSlot {
    pub ptr: *mut u8,
    pub len: usize,
}

fn write_response(s: String, out: *mut ResponseSlot) {
    let bytes = s.into_bytes();
    let len = bytes.len();
    let ptr = bk_alloc(len);
    unsafe {
        std::ptr::copy_nonoverlapping(bytes.as_ptr(), ptr, len);
        (*out).ptr = ptr;
        (*out).len = len;
    }
}

unsafe fn read_request<'a>(ptr: *const u8, len: usize) -> &'a str {
    let slice = std::slice::from_raw_parts(ptr, len);
    std::str::from_utf8(slice).unwrap_or("")
}

/// # Safety
/// `ptr..ptr+len` must hold a UTF-8 request written by the host, and `out`
/// must point at a writable [`ResponseSlot`].
#[no_mangle]
pub unsafe extern "C" fn bk_bound_table(ptr: *const u8, len: usize, out: *mut ResponseSlot) {
    write_response(api_bound_table(read_request(ptr, len)), out);
}

/// # Safety
/// See [`bk_bound_table`].
#[no_mangle]
pub unsafe extern "C" fn bk_simulate(ptr: *const u8, len: usize, out: *mut ResponseSlot) {
    write_response(api_simulate(read_request(ptr, len)), out);
}

/// # Safety
/// See [`bk_bound_table`].
#[no_mangle]
pub unsafe extern "C" fn bk_duel(ptr: *const u8, len: usize, out: *mut ResponseSlot) {
    write_response(api_duel(read_request(ptr, len)), out);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_table_shape() {
        let response = api_bound_table(
            r#"{"variant":"prop-removable","r_min":"1","r_max":"3/2","steps":11}"#,
        );
        let value: Value = serde_json::from_str(&response).unwrap();
        let rows = value["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 11);
        assert!(rows[0]["upper"].as_str().unwrap().starts_with("1.6180339887"));
        assert_eq!(rows[10]["algorithm"], "alg8");
    }

    #[test]
    fn simulate_round_trip() {
        let request = r#"{"alg":"alg1","instance":{"R":"3/2","mode":"proportional","removability":"non-removable","items":[{"size":"3/5","value":"3/5"},{"size":"4/5","value":"4/5"},{"size":"2/5","value":"2/5"}]}}"#;
        let response = api_simulate(request);
        let value: Value = serde_json::from_str(&response).unwrap();
        assert_eq!(value["report"]["alg_value"], "4/5");
        assert_eq!(value["rounds"].as_array().unwrap().len(), 4);
        assert_eq!(value["rounds"][3], json!([1, 2]));
    }

    #[test]
    fn duel_round_trip() {
        let request = r#"{"kind":"prop-rem-iii","r":"3/2","eps":"1/100","alg":"alg8"}"#;
        let response = api_duel(request);
        let value: Value = serde_json::from_str(&response).unwrap();
        assert_eq!(value["report"]["achieved"], json!(true));
        assert!(value["report"]["ratio"].as_str().unwrap().starts_with("1.3333"));
    }

    #[test]
    fn errors_are_reported_as_json() {
        let value: Value =
            serde_json::from_str(&api_simulate(r#"{"alg":"alg1"}"#)).unwrap();
        assert!(value["error"].as_str().unwrap().contains("instance"));
        let value: Value = serde_json::from_str(&api_bound_table("not json")).unwrap();
        assert!(value.get("error").is_some());
    }

    #[test]
    fn abi_buffers_round_trip() {
        let request = r#"{"variant":"gen-removable","r_min":"3/2","r_max":"3/2","steps":1}"#;
        let bytes = request.as_bytes();
        let ptr = bk_alloc(bytes.len());
        let mut slot = ResponseSlot { ptr: std::ptr::null_mut(), len: 0 };
        let response = unsafe {
            std::ptr::copy_nonoverlapping(bytes.as_ptr(), ptr, bytes.len());
            bk_bound_table(ptr, bytes.len(), &mut slot);
            bk_free(ptr, bytes.len());
            let r = std::slice::from_raw_parts(slot.ptr, slot.len).to_vec();
            bk_free(slot.ptr, slot.len);
            r
        };
        let value: Value = serde_json::from_str(std::str::from_utf8(&response).unwrap()).unwrap();
        assert_eq!(value["rows"][0]["algorithm"], "alg4");
    }
}
