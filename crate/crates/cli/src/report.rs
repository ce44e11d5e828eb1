//! Versioned JSON reports. Maps are ordered by key and nothing depends on time or
//! environment, so identical inputs give byte-identical reports.

use nakayama_core::{
    Category, Dimension, GorensteinDimension, GpDimension, Hypothesis, Matrix, Verdict, WindowRecord,
};
use serde_json::{json, Value};

use crate::format::InputRecord;

pub const SCHEMA: &str = "nakayama-report/1";

pub fn matrix(m: &Matrix) -> Value {
    json!(m.to_strings())
}

pub fn dimension(d: Dimension) -> Value {
    match d {
        Dimension::Finite(n) => json!({ "value": n }),
        Dimension::AtLeast(n) => json!({ "at_least": n }),
    }
}

pub fn gorenstein_dimension(g: GorensteinDimension) -> Value {
    match g {
        GorensteinDimension::Finite(n) => json!({ "value": n }),
        GorensteinDimension::AtLeast(n) => json!({ "at_least": n }),
        GorensteinDimension::NotIwanagaGorenstein { left, right } => json!({
            "not_iwanaga_gorenstein": { "left": dimension(left), "right": dimension(right) }
        }),
    }
}

pub fn gp_dimension(d: GpDimension) -> Value {
    match d {
        GpDimension::Exact(n) => json!({ "value": n }),
        GpDimension::AtMost(n) => json!({ "at_most": n }),
        GpDimension::AtLeast(n) => json!({ "at_least": n }),
    }
}

pub fn hypothesis(h: &Hypothesis) -> Value {
    match h {
        Hypothesis::IwanagaGorenstein(g) => json!({ "kind": "iwanaga_gorenstein", "dimension": g }),
        Hypothesis::NotIwanagaGorenstein(why) => json!({ "kind": "not_iwanaga_gorenstein", "detail": why }),
        Hypothesis::DegreeBound { part, source, value } => {
            json!({ "kind": "degree_bound", "part": part, "source": source, "value": value })
        }
        Hypothesis::Unbounded { part, cutoff } => json!({ "kind": "unbounded", "part": part, "cutoff": cutoff }),
        Hypothesis::BaseSelfInjective { dimension, declared } => {
            json!({ "kind": "base_self_injective", "dimension": dimension, "declared": declared })
        }
        Hypothesis::BaseProfileUnknown => json!({ "kind": "base_profile_unknown" }),
        Hypothesis::LiftedClassOnly => json!({ "kind": "lifted_class_only" }),
        Hypothesis::SufficiencyLicensed(why) => json!({ "kind": "sufficiency", "detail": why }),
        Hypothesis::Cutoff(c) => json!({ "kind": "cutoff", "value": c }),
    }
}

pub fn window(w: &WindowRecord) -> Value {
    json!({ "ranks": w.ranks, "position": w.position, "exact": w.exact, "hom_exact": w.hom_exact })
}

/// A verdict with its certificate; `objects` names the object indices of the top level.
pub fn verdict(v: &Verdict, objects: Option<&Category>) -> Value {
    let name = |x: usize| -> Value {
        match objects {
            Some(c) if x < c.num_objects() => json!(c.object_name(x)),
            _ => Value::Null,
        }
    };
    let table: Vec<Value> = v
        .table
        .iter()
        .map(|t| json!({ "quantity": t.quantity, "degree": t.degree, "dims": t.dims }))
        .collect();
    let witness = v.witness.as_ref().map(|w| {
        json!({
            "object": w.object,
            "object_name": name(w.object),
            "label": w.label,
            "vector": matrix(&w.vector),
            "note": w.note,
        })
    });
    let iso = v.iso_failure.as_ref().map(|f| {
        json!({
            "object": f.object,
            "object_name": name(f.object),
            "source_dim": f.source_dim,
            "target_dim": f.target_dim,
            "rank": f.rank,
        })
    });
    let parts: Vec<Value> = v
        .parts
        .iter()
        .map(|(n, p)| json!({ "name": n, "verdict": verdict(p, None) }))
        .collect();
    json!({
        "member": v.member.as_str(),
        "route": v.route,
        "table": table,
        "witness": witness,
        "iso_failure": iso,
        "window": v.window.as_ref().map(window),
        "hypotheses": v.hypotheses.iter().map(hypothesis).collect::<Vec<_>>(),
        "blocking_cutoff": v.blocking_cutoff,
        "parts": parts,
    })
}

/// Whether the outcome of a command was definite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Definite,
    Inconclusive,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Definite => "definite",
            Status::Inconclusive => "inconclusive",
            Status::Error => "error",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Definite => 0,
            Status::Inconclusive => 2,
            Status::Error => 1,
        }
    }
}

pub struct Header<'a> {
    pub command: &'a str,
    pub arguments: &'a [String],
    pub inputs: &'a [InputRecord],
    pub cutoff: usize,
    pub enumeration_limit: u64,
    pub field: Option<String>,
}

pub fn render(header: &Header, status: Status, result: Value) -> String {
    let inputs: Vec<Value> = header
        .inputs
        .iter()
        .map(|r| json!({ "origin": r.origin, "kind": r.kind, "sha256": r.sha256 }))
        .collect();
    let report = json!({
        "schema": SCHEMA,
        "command": header.command,
        "arguments": header.arguments,
        "inputs": inputs,
        "cutoffs": { "resolution": header.cutoff, "enumeration_limit": header.enumeration_limit },
        "field_override": header.field,
        "status": status.as_str(),
        "result": result,
    });
    let mut text = serde_json::to_string_pretty(&report).expect("reports serialize");
    text.push('\n');
    text
}
