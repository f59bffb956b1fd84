//! Browser bindings. Every exported function takes and returns plain strings:
//! instance text in, a JSON object out (`{"error": ...}` on failure).

use edgekernel::coloring::vizing_color;
use edgekernel::format::{parse_instance, serialize_instance};
use edgekernel::harness::random_instance;
use edgekernel::kernel::kernelize;
use edgekernel::solver::min_weak;
use edgekernel::{Graph, Kind, Labeling, Param};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

/// Largest instance the demo hands to the exact solver.
pub const SOLVE_LIMIT: usize = 40;

fn graph_json(g: &Graph) -> Value {
    json!({
        "n": g.n(),
        "edges": g.edges().iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
    })
}

fn labeling_json(g: &Graph, l: &Labeling) -> Value {
    Value::from(g.edges().iter().zip(&l.colors).map(|(&(a, b), &x)| json!([a, b, x])).collect::<Vec<_>>())
}

fn wrap(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

pub fn generate_value(kind: &str, n: usize, p: f64, c: u32, k: u64, seed: u64) -> Result<Value, String> {
    let kind: Kind = kind.parse().map_err(|e: edgekernel::Error| e.to_string())?;
    if !(0.0..=1.0).contains(&p) || !(1..=63).contains(&c) {
        return Err("need 0 ≤ p ≤ 1 and 1 ≤ c ≤ 63".into());
    }
    let inst = random_instance(kind, n, p, c, k, seed, true);
    Ok(json!({ "text": serialize_instance(&inst), "graph": graph_json(&inst.graph) }))
}

pub fn kernelize_value(text: &str, param: &str) -> Result<Value, String> {
    let inst = parse_instance(text).map_err(|e| e.to_string())?;
    let param: Param = param.parse().map_err(|e: edgekernel::Error| e.to_string())?;
    let out = kernelize(&inst, param).map_err(|e| e.to_string())?;
    let kept: Vec<usize> = out.origin.iter().flatten().copied().collect();
    Ok(json!({
        "input": graph_json(&inst.graph),
        "reduced": graph_json(&out.reduced.graph),
        "reduced_text": serialize_instance(&out.reduced),
        "kept": kept,
        "origin": out.origin,
        "stats": out.stats,
        "trace": out.trace,
    }))
}

pub fn solve_value(text: &str) -> Result<Value, String> {
    let inst = parse_instance(text).map_err(|e| e.to_string())?;
    let sol = min_weak(&inst, SOLVE_LIMIT).map_err(|e| e.to_string())?;
    Ok(json!({
        "graph": graph_json(&inst.graph),
        "min_weak": sol.weak,
        "answer": if sol.weak as u64 <= inst.k { "yes" } else { "no" },
        "labeling": labeling_json(&inst.graph, &sol.witness),
    }))
}

pub fn edge_color_value(text: &str) -> Result<Value, String> {
    let inst = parse_instance(text).map_err(|e| e.to_string())?;
    let g = &inst.graph;
    let colors = g.max_degree() as u32 + 1;
    let l = vizing_color(g, colors).map_err(|e| e.to_string())?;
    Ok(json!({
        "graph": graph_json(g),
        "colors": colors,
        "used": l.strong_colors_used(),
        "labeling": labeling_json(g, &l),
    }))
}

/// Random instance with edge lists for the list kinds.
#[wasm_bindgen]
pub fn generate(kind: &str, n: usize, p: f64, c: u32, k: u64, seed: u64) -> String {
    wrap(generate_value(kind, n, p, c, k, seed))
}

/// Kernel of the instance, with statistics, trace and the kept input vertices.
#[wasm_bindgen(js_name = kernelize)]
pub fn kernelize_js(text: &str, param: &str) -> String {
    wrap(kernelize_value(text, param))
}

/// Optimal labeling by the exact solver.
#[wasm_bindgen]
pub fn solve(text: &str) -> String {
    wrap(solve_value(text))
}

/// Proper Δ+1 edge coloring of the instance's graph.
#[wasm_bindgen(js_name = edgeColor)]
pub fn edge_color(text: &str) -> String {
    wrap(edge_color_value(text))
}
