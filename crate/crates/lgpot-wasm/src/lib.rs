// SPDX-License-Identifier: MIT
//! Browser entry points. Each export returns plain text for the page to show.

use lgpot::moves::generate_move_poset;
use lgpot::render;
use lgpot::toric::{verify_model, VerifyOptions};
use lgpot::{CominusculeDatum, MinusculePoset, Model};
use wasm_bindgen::prelude::*;

fn datum(family: &str, rank: usize, node: usize) -> Result<CominusculeDatum, String> {
    let family = family.parse().map_err(|e: lgpot::Error| e.to_string())?;
    CominusculeDatum::new(family, rank, node).map_err(|e| e.to_string())
}

pub fn potential_text(family: &str, rank: usize, node: usize, latex: bool) -> Result<String, String> {
    let model = Model::build(datum(family, rank, node)?).map_err(|e| e.to_string())?;
    Ok(if latex { render::model_latex(&model) } else { render::model_text(&model, None) })
}

pub fn verify_text(family: &str, rank: usize, node: usize) -> Result<String, String> {
    let model = Model::build(datum(family, rank, node)?).map_err(|e| e.to_string())?;
    let report = verify_model(&model, VerifyOptions { with_oracle: true, with_quantum_derivation: true });
    let verdict = if report.passed() { "all checks pass" } else { "some checks fail" };
    Ok(format!("{}: {verdict}\n{}", model.datum, render::checks_text(&report)))
}

pub fn move_poset_text(family: &str, rank: usize, node: usize, istar: usize) -> Result<String, String> {
    let poset = MinusculePoset::build(&datum(family, rank, node)?).map_err(|e| e.to_string())?;
    let moves = generate_move_poset(&poset, istar).map_err(|e| e.to_string())?;
    Ok(render::move_poset_text(&poset, &moves))
}

/// Every datum up to rank `max_rank` as `family rank node` lines.
#[wasm_bindgen(js_name = listData)]
pub fn list_data(max_rank: usize) -> String {
    CominusculeDatum::all_up_to(max_rank).iter().map(|d| format!("{} {} {}\n", d.family, d.rank, d.node)).collect()
}

#[wasm_bindgen]
pub fn potential(family: &str, rank: usize, node: usize, latex: bool) -> Result<String, JsError> {
    potential_text(family, rank, node, latex).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn verify(family: &str, rank: usize, node: usize) -> Result<String, JsError> {
    verify_text(family, rank, node).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = movePoset)]
pub fn move_poset(family: &str, rank: usize, node: usize, istar: usize) -> Result<String, JsError> {
    move_poset_text(family, rank, node, istar).map_err(|e| JsError::new(&e))
}
