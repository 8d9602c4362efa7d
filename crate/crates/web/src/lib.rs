//! Browser bindings. Every export takes strings and returns a JSON string
//! holding either `{"ok": ...}` or `{"error": {"kind", "message"}}`.

use std::sync::Arc;

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use raagpal::factor::{factor_centralizer_iota, factor_palindromic, factor_pure_palindromic};
use raagpal::graph::fixtures;
use raagpal::matrix::{basis_names, phi};
use raagpal::{Automorphism, Error, GroupWord, SimplicialGraph};

fn respond(r: Result<Value, Error>) -> String {
    match r {
        Ok(v) => json!({ "ok": v }),
        Err(e) => json!({ "error": { "kind": e.kind(), "message": e.to_string() } }),
    }
    .to_string()
}

fn graph(spec: &str) -> Result<Arc<SimplicialGraph>, Error> {
    let spec = spec.trim();
    if spec.starts_with('{') {
        return SimplicialGraph::from_json_str(spec).map(Arc::new);
    }
    fixtures::by_name(spec)
        .map(Arc::new)
        .ok_or_else(|| Error::InvalidGraph(format!("no fixture named `{spec}`")))
}

fn automorphism(g: &Arc<SimplicialGraph>, spec: &str) -> Result<Automorphism, Error> {
    let spec = spec.trim();
    if spec.starts_with('{') {
        Automorphism::from_json_str(g, spec)
    } else {
        Automorphism::parse_generators(g, spec)
    }
}

/// Names of the built-in graphs with their JSON.
#[wasm_bindgen]
pub fn fixture_graphs() -> String {
    let all: Vec<Value> = fixtures::all()
        .into_iter()
        .map(|(name, g)| json!({ "name": name, "graph": g.to_json() }))
        .collect();
    respond(Ok(Value::Array(all)))
}

/// Reduced form, reverse, palindrome decision and clique-palindromic form.
#[wasm_bindgen]
pub fn analyze_word(graph_spec: &str, word: &str) -> String {
    respond((|| {
        let g = graph(graph_spec)?;
        let w = GroupWord::parse(&g, word)?;
        let cpnf = w
            .clique_palindromic_form()
            .ok()
            .map(|f| f.pieces.iter().map(ToString::to_string).collect::<Vec<_>>());
        let rank = w.rank().ok();
        Ok(json!({
            "reduced": w.to_string(),
            "length": w.len(),
            "reverse": w.reverse().to_string(),
            "reverseInvariant": w.is_reverse_invariant(),
            "palindrome": w.is_palindrome(),
            "cpnf": cpnf,
            "rank": rank,
        }))
    })())
}

/// Vertex images, predicates and the abelianisation matrix.
#[wasm_bindgen]
pub fn analyze_automorphism(graph_spec: &str, aut: &str) -> String {
    respond((|| {
        let g = graph(graph_spec)?;
        let a = automorphism(&g, aut)?;
        let images: Vec<Value> = (0..g.len())
            .map(|v| json!({ "vertex": g.name(v), "image": a.image(v).to_string() }))
            .collect();
        Ok(json!({
            "images": images,
            "predicates": a.predicates(),
            "phi": phi(&a).to_json(&basis_names(&g)),
        }))
    })())
}

/// Factorization into standard generators, picking the pipeline from the
/// predicates.
#[wasm_bindgen]
pub fn factor_automorphism(graph_spec: &str, aut: &str) -> String {
    respond((|| {
        let g = graph(graph_spec)?;
        let a = automorphism(&g, aut)?;
        let p = a.predicates();
        let (pipeline, res) = if p.is_pure {
            ("pure", factor_pure_palindromic(&a)?)
        } else if p.is_palindromic {
            ("palindromic", factor_palindromic(&a)?)
        } else {
            ("centralizer", factor_centralizer_iota(&a)?)
        };
        Ok(json!({ "pipeline": pipeline, "factorization": res.to_json(&g) }))
    })())
}
