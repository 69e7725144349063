//! Browser bindings: classify one weight, inspect a catalog module, build the BD model.
//! Every function returns a JSON string.

use colour_loop::gmodule::{closure_dimension, is_graded_irreducible, Verdict};
use colour_loop::workbench::{block_shape, classify_lambda, make_bd_model, make_sl2_graded, Sl2Variant, BD_ASSUMPTION};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn js(e: colour_loop::Error) -> JsError {
    JsError::new(&e.to_string())
}

fn rows(m: &colour_loop::linalg::Matrix) -> Vec<Vec<String>> {
    m.row_vectors().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

/// Names of the catalog variants that exist for `lambda`.
#[wasm_bindgen]
pub fn catalog(lambda: u32) -> String {
    let names: Vec<String> = Sl2Variant::catalog(lambda).iter().map(|v| v.to_string()).collect();
    json!(names).to_string()
}

/// The classification report for one weight.
#[wasm_bindgen]
pub fn classify(lambda: u32) -> Result<String, JsError> {
    if lambda > 8 {
        return Err(JsError::new("lambda is capped at 8 in the browser"));
    }
    let r = classify_lambda(lambda).map_err(js)?;
    serde_json::to_string(&r).map_err(|e| JsError::new(&e.to_string()))
}

/// Grading, irreducibility verdict and action matrices of a catalog module.
#[wasm_bindgen]
pub fn inspect(lambda: u32, variant: &str) -> Result<String, JsError> {
    if lambda > 8 {
        return Err(JsError::new("lambda is capped at 8 in the browser"));
    }
    let v: Sl2Variant = variant.parse().map_err(js)?;
    let m = make_sl2_graded(lambda, &v).map_err(js)?;
    let verdict = is_graded_irreducible(&m).map_err(js)?;
    let witness = match &verdict {
        Verdict::Irreducible { .. } => None,
        Verdict::Reducible { witness } => Some(witness.dim()),
    };
    let names: Vec<String> = m.algebra().basis().iter().map(|b| b.name.clone()).collect();
    Ok(json!({
        "name": v.to_string(),
        "lambda": lambda,
        "dim": m.dim(),
        "grading": m.subgroup().to_string(),
        "degrees": m.degrees().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "sector_dims": m.sector_dims(),
        "sector_reps": m.quotient().reps().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "irreducible": verdict.is_irreducible(),
        "witness_dim": witness,
        "closure_dimension": closure_dimension(&m).map_err(js)?,
        "action": names.iter().zip(m.action()).map(|(n, a)| json!({"element": n, "matrix": rows(a)})).collect::<Vec<_>>(),
    })
    .to_string())
}

/// The BD loop module with the block shape of each generator.
#[wasm_bindgen]
pub fn bd_model() -> Result<String, JsError> {
    let bd = make_bd_model().map_err(js)?;
    let l = &bd.loop_module.module;
    let blocks: Vec<_> = bd
        .algebra
        .basis()
        .iter()
        .zip(l.action())
        .map(|(b, a)| json!({"element": b.name, "shape": block_shape(a), "matrix": rows(a)}))
        .collect();
    Ok(json!({
        "assumption": BD_ASSUMPTION,
        "sector_order": l.degrees().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "blocks": blocks,
    })
    .to_string())
}
