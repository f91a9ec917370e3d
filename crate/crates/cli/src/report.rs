//! Run reports: one structured object per command, rendered as JSON or text.

use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use cornering::algebra::AlgebraPresentation;
use cornering::corner::{CorneringData, MembershipCertificate, ModulePresentation};
use cornering::linalg::{format_scalar, Matrix};
use cornering::rep::{DimensionVector, QuotientCertificate, Representation};

/// Exit status: success, input error, or a mathematical negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Negative,
}

impl Outcome {
    pub fn code(self) -> i32 {
        match self {
            Outcome::Success => 0,
            Outcome::Negative => 2,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn new(name: &str, text: &str) -> Self {
        InputDigest {
            name: name.to_string(),
            sha256: hex::encode(Sha256::digest(text.as_bytes())),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub result: Value,
    pub exactness: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let value = serde_json::to_value(self).expect("reports serialize");
        let mut out = String::new();
        render(&value, 0, &mut out);
        out
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if is_scalar(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", scalar_text(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render(x, indent + 1, out);
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if is_scalar(x) {
                    out.push_str(&format!("{pad}- {}\n", scalar_text(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render(x, indent + 1, out);
                }
            }
        }
        x => out.push_str(&format!("{pad}{}\n", scalar_text(x))),
    }
}

fn is_scalar(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|x| !x.is_array() && !x.is_object()) && items.len() <= 12,
        Value::Object(_) => false,
        _ => true,
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar_text).collect();
            format!("[{}]", parts.join(", "))
        }
        x => x.to_string(),
    }
}

pub fn dims(d: &DimensionVector) -> Value {
    json!(d.0)
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|x| Value::String(format_scalar(x))).collect()))
            .collect(),
    )
}

/// Dimension vector and the nonzero arrow matrices, keyed by arrow name.
pub fn module(m: &Representation) -> Value {
    let q = m.algebra().quiver();
    let mut arrows = Map::new();
    for (a, arr) in q.arrows().iter().enumerate() {
        let mat = m.matrix(a);
        if !mat.is_zero() {
            let v = match m.scalar_values() {
                Some(values) => Value::String(format_scalar(&values[a])),
                None => matrix(mat),
            };
            arrows.insert(arr.name.clone(), v);
        }
    }
    json!({ "dims": dims(m.dims()), "nonzero_arrows": arrows })
}

pub fn quotient_certificate(c: &QuotientCertificate, q: &cornering::algebra::Quiver) -> Value {
    match c {
        QuotientCertificate::DimensionTooSmall {
            vertex,
            available,
            required,
        } => json!({
            "kind": "dimension-too-small",
            "vertex": q.vertex_name(*vertex),
            "available": available,
            "required": required,
        }),
        QuotientCertificate::SubmoduleTooSmall {
            vertex,
            needed,
            available,
            avoided,
        } => json!({
            "kind": "submodule-too-small",
            "vertex": q.vertex_name(*vertex),
            "needed_submodule_dims": dims(needed),
            "largest_submodule_dims": dims(available),
            "avoided_vertices": avoided.iter().map(|&v| q.vertex_name(v)).collect::<Vec<_>>(),
        }),
    }
}

pub fn membership_certificate(c: &MembershipCertificate, q: &cornering::algebra::Quiver) -> Value {
    match c {
        MembershipCertificate::DimensionDeficit {
            vertex,
            induced,
            required,
        } => json!({
            "kind": "dimension-deficit",
            "vertex": q.vertex_name(*vertex),
            "induced": induced,
            "required": required,
        }),
        MembershipCertificate::NoQuotient(qc) => quotient_certificate(qc, q),
    }
}

pub fn presentation(p: &ModulePresentation, cd: &CorneringData) -> Value {
    let pq = cd.parent().quiver();
    json!({
        "vertex": pq.vertex_name(p.vertex()),
        "generators": p.generators().iter().map(|g| g.display(pq)).collect::<Vec<_>>(),
        "matrix": p.display_matrix(cd),
    })
}

pub fn cornered_algebra(cd: &CorneringData) -> Value {
    let cq = cd.cornered().quiver();
    let pq = cd.parent().quiver();
    let arrows: Vec<Value> = cq
        .arrows()
        .iter()
        .zip(cd.dictionary())
        .map(|(a, path)| {
            json!({
                "name": a.name,
                "tail": cq.vertex_name(a.tail),
                "head": cq.vertex_name(a.head),
                "path": path.display(pq),
            })
        })
        .collect();
    let relations: Vec<String> = cd.cornered().relations().iter().map(|r| r.display(cq)).collect();
    json!({ "keep": cd.keep_names(), "arrows": arrows, "relations": relations })
}

pub fn algebra_summary(a: &AlgebraPresentation) -> Value {
    let q = a.quiver();
    json!({
        "vertices": q.num_vertices(),
        "arrows": q.num_arrows(),
        "relations": a.relations().len(),
        "binomial": a.is_binomial(),
    })
}
