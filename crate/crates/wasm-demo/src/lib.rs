//! wasm-bindgen bindings for the static demo page in `www/`.
//!
//! Each export has a plain Rust twin returning `Result<String, String>` so it
//! can be tested without a JS host.

use serde_json::json;
use spinoza_core::explain;
use spinoza_core::generator::{gen_instance, GenConfig};
use spinoza_core::instance::{format_witness, parse_instance, parse_witness, serialize_instance, Instance};
use spinoza_core::solver::{solve, MAX_ENUMERABLE_N};
use spinoza_core::verify::Verifier;
use spinoza_core::SignVector;
use wasm_bindgen::prelude::*;

/// Largest n for which the page plots every assignment.
pub const PLOT_MAX_N: usize = 12;
/// Largest n the page will solve; the browser tab has one thread.
pub const SOLVE_MAX_N: usize = 20;

fn instance(letters: &str, magnitudes: &str) -> Result<Instance, String> {
    parse_instance(&format!("{}\n{}", letters.trim(), magnitudes.trim())).map_err(|e| e.to_string())
}

pub fn explain_text(letters: &str, magnitudes: &str, delta: &str) -> Result<String, String> {
    let inst = instance(letters, magnitudes)?;
    let delta = parse_witness(delta, &inst.c).map_err(|e| e.to_string())?;
    explain::explain(&inst, &delta).map_err(|e| e.to_string())
}

/// Solves the instance and, for small n, lists (S, P) for every assignment.
pub fn solve_json(letters: &str, magnitudes: &str) -> Result<String, String> {
    let inst = instance(letters, magnitudes)?;
    let n = inst.n();
    if n > SOLVE_MAX_N.min(MAX_ENUMERABLE_N) {
        return Err(format!("n = {n} is too large for the browser demo (max {SOLVE_MAX_N})"));
    }
    let verdict = solve(&inst, 1);
    let points: Vec<serde_json::Value> = if n <= PLOT_MAX_N {
        let mut verifier = Verifier::new(&inst);
        (0..1u64 << n)
            .map(|rank| {
                let delta = SignVector::from_rank(n, rank);
                let check = verifier.check(&delta);
                json!({
                    "rank": rank,
                    "signs": delta.sign_string(),
                    "s": check.s_value as f64,
                    "p": check.p_value as f64,
                    "satisfied": check.satisfied,
                })
            })
            .collect()
    } else {
        Vec::new()
    };
    let out = json!({
        "answer": verdict.answer.to_string(),
        "witness": verdict.witness.as_ref().map(|w| format_witness(w, &inst.c)),
        "assignments_tried": verdict.assignments_tried,
        "space": 1u64 << n,
        "mod_ops": verdict.total_counters.modulo,
        "points": points,
    });
    Ok(out.to_string())
}

/// Two-line canonical instance text for a seeded configuration.
pub fn generate_text(n: usize, psi_len: usize, c_max: u64, seed: u64) -> Result<String, String> {
    let inst = gen_instance(&GenConfig::new(n, psi_len, c_max, seed)).map_err(|e| e.to_string())?;
    Ok(serialize_instance(&inst))
}

#[wasm_bindgen]
pub fn explain_trace(letters: &str, magnitudes: &str, delta: &str) -> Result<String, JsError> {
    explain_text(letters, magnitudes, delta).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn solve_instance(letters: &str, magnitudes: &str) -> Result<String, JsError> {
    solve_json(letters, magnitudes).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn generate_instance(n: usize, psi_len: usize, c_max: u32, seed: u32) -> Result<String, JsError> {
    generate_text(n, psi_len, c_max as u64, seed as u64).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use spinoza_core::fixtures::EXAMPLE1_LETTERS;

    #[test]
    fn explain_example_one() {
        let text = explain_text(EXAMPLE1_LETTERS, "10,14,16", "10,14,16").unwrap();
        assert!(text.contains("Λ = o0k0u0"));
        assert!(explain_text(EXAMPLE1_LETTERS, "10,14,16", "11,14,16").is_err());
    }

    #[test]
    fn solve_lists_every_assignment() {
        let v: serde_json::Value = serde_json::from_str(&solve_json(EXAMPLE1_LETTERS, "10,14,16").unwrap()).unwrap();
        assert_eq!(v["answer"], "yes");
        assert_eq!(v["witness"], "10,14,16");
        assert_eq!(v["points"].as_array().unwrap().len(), 8);
        assert_eq!(v["points"][0]["s"], 40.0);
    }

    #[test]
    fn generate_is_seeded() {
        let a = generate_text(4, 20, 500, 3).unwrap();
        assert_eq!(a, generate_text(4, 20, 500, 3).unwrap());
        assert!(instance(a.lines().next().unwrap(), a.lines().nth(1).unwrap()).is_ok());
        assert!(generate_text(0, 20, 500, 3).is_err());
    }
}
