//! Text and JSON output.

use serde::Serialize;
use serde_json::{json, Value};

use ramond_core::base::{BaseModule, BaseVector};
use ramond_core::induced::{InducedModule, ModuleVector, Reduction};
use ramond_core::rational::to_fraction_string;
use ramond_core::{AlgebraElement, Error, Generator, PbwMonomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// One factor as `[name, index, exponent]`.
pub type FactorJson = (&'static str, i64, u32);

#[derive(Serialize)]
pub struct TermJson {
    pub coeff: String,
    pub monomial: Vec<FactorJson>,
    #[serde(rename = "cExp")]
    pub c_exp: u32,
}

#[derive(Serialize)]
pub struct ElementJson {
    pub terms: Vec<TermJson>,
}

pub fn monomial_json(m: &PbwMonomial) -> Vec<FactorJson> {
    m.factors()
        .iter()
        .map(|&(g, e)| match g {
            Generator::L(n) => ("L", n, e),
            Generator::G(n) => ("G", n, e),
            Generator::C => ("c", 0, e),
        })
        .collect()
}

pub fn element_json(e: &AlgebraElement) -> Value {
    let terms = e
        .terms()
        .map(|(m, c)| TermJson {
            coeff: to_fraction_string(c),
            monomial: monomial_json(m),
            c_exp: m.c_exp(),
        })
        .collect();
    serde_json::to_value(ElementJson { terms }).expect("serializable")
}

pub fn element(e: &AlgebraElement, format: Format) -> String {
    match format {
        Format::Text => e.to_string(),
        Format::Json => element_json(e).to_string(),
    }
}

pub fn base_vector_json(module: &dyn BaseModule, v: &BaseVector) -> Value {
    let terms: Vec<Value> = v
        .iter()
        .map(|(b, c)| json!({"coeff": to_fraction_string(c), "basis": module.basis_label(b)}))
        .collect();
    json!({ "terms": terms })
}

pub fn vector_json(m: &InducedModule, v: &ModuleVector) -> Value {
    let mut terms = Vec::new();
    for (p, x) in v.terms() {
        for (b, c) in x.iter() {
            terms.push(json!({
                "coeff": to_fraction_string(c),
                "monomial": monomial_json(&p.monomial()),
                "basis": m.base().basis_label(b),
            }));
        }
    }
    json!({ "terms": terms })
}

pub fn reduction_json(m: &InducedModule, r: &Reduction) -> Value {
    let steps: Vec<Value> = r
        .transcript
        .iter()
        .map(|s| {
            json!({
                "kind": s.kind.to_string(),
                "generator": s.generator.to_string(),
                "before": s.before.to_string(),
                "after": s.after.to_string(),
                "lowered": s.lowered,
                "baseCaseChecked": s.base_case_checked,
            })
        })
        .collect();
    json!({
        "t": r.t,
        "steps": steps,
        "result": base_vector_json(m.base().as_ref(), &r.result),
    })
}

/// One line per applied generator, then the base element reached.
pub fn reduction_text(m: &InducedModule, r: &Reduction) -> String {
    let mut lines = vec![format!("t = {}", r.t)];
    lines.extend(r.transcript.iter().map(|s| s.to_string()));
    lines.push(format!("result: {}", r.result.display_with(m.base().as_ref())));
    lines.join("\n")
}

pub fn error_json(e: &Error) -> Value {
    let mut inner = json!({ "kind": e.kind(), "detail": e.to_string() });
    if let Some(w) = e.witness() {
        inner["witness"] = Value::String(w.to_string());
    }
    json!({ "error": inner })
}

pub fn error(e: &Error, format: Format) -> String {
    match format {
        Format::Text => match e.witness() {
            Some(w) => format!("error: {e}\nwitness: {w}"),
            None => format!("error: {e}"),
        },
        Format::Json => error_json(e).to_string(),
    }
}
