//! wasm-bindgen entry points for the static demo page in `www/`.
//!
//! Each export returns a JSON string; the page parses it and renders tables.

use girard_lab::digraph::build_gamma_rc;
use girard_lab::newton::{verify_theorem2, verify_theorem3, NewtonCase};
use girard_lab::powersum::{
    goodword_count, goodwords_oracle, powersum_bernoulli, powersum_direct, powersum_stirling,
    powersum_stirling_prefactored, theorem1_lhs, theorem1_rhs, PowerSumInstance,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const MAX_M: u32 = 6;
const MAX_R: u32 = 4;

pub fn power_sum_identity_json(m: u32, r: u32) -> Result<Value, String> {
    if !(1..=MAX_M).contains(&m) || !(1..=MAX_R).contains(&r) {
        return Err(format!("m must be in 1..={MAX_M} and r in 1..={MAX_R}"));
    }
    let inst = PowerSumInstance::new(m, r).expect("bounds checked");
    let lhs = theorem1_lhs(inst);
    let rhs = theorem1_rhs(inst);
    let words = goodwords_oracle(inst);
    Ok(json!({
        "lhs": lhs.to_string(),
        "rhs": rhs.to_string(),
        "terms": lhs.num_terms(),
        "good_words": goodword_count(inst).to_string(),
        "lhs_equals_rhs": lhs == rhs,
        "lhs_equals_good_words": lhs == words,
    }))
}

pub fn power_sums_json(m: u32, n: u32) -> Result<Value, String> {
    if m == 0 || n == 0 || m > 60 || n > 10_000 {
        return Err("m must be in 1..=60 and n in 1..=10000".into());
    }
    let stirling = powersum_stirling(m, n).map_err(|e| e.to_string())?;
    let bernoulli = powersum_bernoulli(m, n) + BigRational::from_integer(pow_u32(n, m));
    let prefactored = powersum_stirling_prefactored(m, n).map_err(|e| e.to_string())?;
    Ok(json!({
        "direct": powersum_direct(m, n).to_string(),
        "stirling": stirling.to_string(),
        "bernoulli": bernoulli.to_string(),
        "stirling_with_prefactor": prefactored.to_string(),
    }))
}

fn pow_u32(n: u32, m: u32) -> BigInt {
    (0..m).fold(BigInt::from(1), |acc, _| acc * n)
}

pub fn colored_newton_json(r: usize, n: usize) -> Result<Value, String> {
    if !(1..=4).contains(&r) || !(1..=4).contains(&n) {
        return Err("r and n must be in 1..=4".into());
    }
    let symbolic = verify_theorem3(r, n);
    let graph = verify_theorem2(&build_gamma_rc(n, r), r);
    let terms: Vec<Value> = symbolic
        .breakdown
        .iter()
        .map(|((s, t), v)| json!({"walk_colors": t.to_string(), "subdigraph_colors": s.to_string(), "value": v.to_string()}))
        .collect();
    Ok(json!({
        "case": match symbolic.case {
            NewtonCase::RExceedsN => "r > n",
            NewtonCase::RAtMostN => "r <= n",
        },
        "terms": terms,
        "residual": symbolic.residual.to_string(),
        "unsigned_y_residual": symbolic.alternate_residual.to_string(),
        "matches_self_loop_graph": symbolic.breakdown == graph.breakdown,
    }))
}

fn to_js(result: Result<Value, String>) -> Result<String, JsValue> {
    result
        .map(|v| v.to_string())
        .map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn power_sum_identity(m: u32, r: u32) -> Result<String, JsValue> {
    to_js(power_sum_identity_json(m, r))
}

#[wasm_bindgen]
pub fn power_sums(m: u32, n: u32) -> Result<String, JsValue> {
    to_js(power_sums_json(m, n))
}

#[wasm_bindgen]
pub fn colored_newton(r: usize, n: usize) -> Result<String, JsValue> {
    to_js(colored_newton_json(r, n))
}
