//! Browser bindings: path-completeness check, counterexample synthesis and
//! JSR bounds, each taking and returning JSON text.

use serde_json::json;
use wasm_bindgen::prelude::*;

use pathcomplete::jsr::{jsr_bounds, JsrConfig};
use pathcomplete::synth::{synthesize_conic, synthesize_ellipsoidal};
use pathcomplete::{check_path_complete, CounterexampleBundle, LabeledGraph, MatrixSet};

/// Largest depth the page may request; keeps the enumeration interactive.
pub const MAX_DEPTH: usize = 10;

pub fn check_json(graph: &str) -> Result<String, String> {
    let g = LabeledGraph::from_json(graph).map_err(|e| e.to_string())?;
    let verdict = check_path_complete(&g).map_err(|e| e.to_string())?;
    Ok(serde_json::to_string(&verdict).expect("verdict serialises"))
}

pub fn synthesize_json(graph: &str, family: &str) -> Result<String, String> {
    let g = LabeledGraph::from_json(graph).map_err(|e| e.to_string())?;
    let bundle = match family {
        "conic" => synthesize_conic(&g).map(|c| CounterexampleBundle::from_conic(&g, &c)),
        "ellipsoidal" => synthesize_ellipsoidal(&g).map(|c| CounterexampleBundle::from_ellipsoidal(&g, &c)),
        other => return Err(format!("unknown family {other:?}")),
    }
    .map_err(|e| e.to_string())?;
    Ok(bundle.to_json())
}

pub fn jsr_json(matrices: &str, depth: usize, graph: Option<&str>) -> Result<String, String> {
    if depth > MAX_DEPTH {
        return Err(format!("depth is limited to {MAX_DEPTH} here"));
    }
    let s: MatrixSet = serde_json::from_str(matrices).map_err(|e| e.to_string())?;
    let g = graph
        .filter(|text| !text.trim().is_empty())
        .map(LabeledGraph::from_json)
        .transpose()
        .map_err(|e| e.to_string())?;
    let bounds = jsr_bounds(&s, depth, g.as_ref(), &JsrConfig::default()).map_err(|e| e.to_string())?;
    Ok(bounds.to_json())
}

fn wrap(r: Result<String, String>) -> String {
    match r {
        Ok(text) => text,
        Err(message) => json!({ "error": message }).to_string(),
    }
}

#[wasm_bindgen]
pub fn check_graph(graph: &str) -> String {
    wrap(check_json(graph))
}

#[wasm_bindgen]
pub fn synthesize(graph: &str, family: &str) -> String {
    wrap(synthesize_json(graph, family))
}

#[wasm_bindgen]
pub fn bounds(matrices: &str, depth: usize, graph: &str) -> String {
    wrap(jsr_json(matrices, depth, Some(graph)))
}
