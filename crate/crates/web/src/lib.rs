//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every entry point takes arrangement text and returns a JSON string; errors
//! come back as `{"error": "..."}` so the page needs no exception handling.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use freearr::arrangement::{intersection_lattice, Arrangement};
use freearr::catalog::{self, FamilySpec};
use freearr::expr::parse_scalar;
use freearr::logderiv::is_free;

fn parse(text: &str) -> Result<Arrangement, String> {
    catalog::parse_arrangement_text(text)
        .map(|p| p.arrangement)
        .map_err(|e| e.to_string())
}

fn respond(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

/// Arrangement text for a family: `braid` uses `a` as n, `coxeterB` and
/// `coxeterD` use `a` as ℓ, `monomial` is G(a, b, c).
#[wasm_bindgen]
pub fn catalog_text(family: &str, a: u32, b: u32, c: u32) -> String {
    let spec = match family {
        "braid" => FamilySpec::Braid { n: a as usize },
        "coxeterB" => FamilySpec::CoxeterB { l: a as usize },
        "coxeterD" => FamilySpec::CoxeterD { l: a as usize },
        "monomial" => FamilySpec::Monomial { r: a, p: b, l: c as usize },
        other => return respond(Err(format!("unknown family `{other}`"))),
    };
    respond(
        spec.build()
            .map(|arr| json!({ "text": format!("# {spec}\n{}", arr.to_text()) }))
            .map_err(|e| e.to_string()),
    )
}

/// Flats per rank with Möbius values, and the Poincaré polynomial.
#[wasm_bindgen]
pub fn lattice(text: &str) -> String {
    respond(parse(text).map(|a| {
        let lat = intersection_lattice(&a);
        let pi = lat.poincare();
        let ranks: Vec<Value> = (0..=lat.top_rank())
            .map(|r| {
                let mut flats: Vec<Value> = lat
                    .nodes_of_rank(r)
                    .iter()
                    .map(|&i| json!({ "subspace": lat.node(i).key(), "mobius": lat.mobius(i) }))
                    .collect();
                flats.sort_by_key(|f| f["subspace"].as_str().unwrap_or_default().to_string());
                json!({ "rank": r, "flats": flats })
            })
            .collect();
        json!({
            "hyperplanes": a.len(),
            "rank": a.rank(),
            "poincare": pi.to_string(),
            "roots": pi.factor_linear(),
            "ranks": ranks,
        })
    }))
}

/// Freeness verdict with exponents and a Saito-certified basis.
#[wasm_bindgen]
pub fn freeness(text: &str) -> String {
    respond(parse(text).and_then(|a| {
        let r = is_free(&a).map_err(|e| e.to_string())?;
        let pi = intersection_lattice(&a).poincare();
        Ok(json!({
            "free": r.free,
            "exponents": r.exponents,
            "generator_degrees": r.generator_degrees,
            "saito_constant": r.saito_constant.as_ref().map(ToString::to_string),
            "basis": r.basis.as_ref().map(|b| b.iter().map(ToString::to_string).collect::<Vec<_>>()),
            "poincare": pi.to_string(),
        }))
    }))
}

/// Restriction to the flat cut out by `forms` (rows separated by `;`).
#[wasm_bindgen]
pub fn restrict(text: &str, forms: &str) -> String {
    respond(parse(text).and_then(|a| {
        let rows = forms
            .split(';')
            .filter(|r| !r.trim().is_empty())
            .map(|row| {
                row.split_whitespace()
                    .map(|t| parse_scalar(t, a.field()).map_err(|e| format!("`{t}`: {e}")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        if rows.iter().any(|r| r.len() != a.dim()) {
            return Err(format!("every form needs {} entries", a.dim()));
        }
        let (res, map) = a.restrict(&a.subspace(rows)).map_err(|e| e.to_string())?;
        Ok(json!({
            "text": res.to_text(),
            "hyperplanes": res.len(),
            "coordinates": map.describe(),
            "poincare": intersection_lattice(&res).poincare().to_string(),
        }))
    }))
}
