//! DOT and JSON renderings of graphs and verdicts. All integers in JSON
//! output are decimal strings so arbitrary precision survives the trip.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::arith;
use crate::decision::{EqualityVerdict, NfNjdSummary, NjdValue, VerdictStatus};
use crate::dold::sequence_to_json;
use crate::fund_group::GroupElement;
use crate::reid_graph::{
    Attachment, ReidemeisterGraph, ValidatorReport, VerificationReport, Vertex,
};
use crate::smooth_real::{RealizabilityVerdict, RestrictionCase};

fn element_label(e: &GroupElement) -> String {
    let parts: Vec<String> = e.residues().iter().map(|r| r.to_string()).collect();
    format!("({})", parts.join(","))
}

fn vertex_id(v: &Vertex) -> String {
    let parts: Vec<String> = v.cls.residues().iter().map(|r| r.to_string()).collect();
    format!("v_{}_{}", v.level, parts.join("_"))
}

/// Edges are the prime steps i_{pk,k}; longer boosts are their composites.
pub fn prime_step_edges(graph: &ReidemeisterGraph) -> Vec<(Vertex, Vertex)> {
    let mut edges = Vec::new();
    for v in graph.vertices() {
        for &p in &arith::prime_divisors(graph.horizon() / v.level) {
            let target = graph.boost(&v, v.level * p);
            edges.push((v.clone(), target));
        }
    }
    edges.sort();
    edges.dedup();
    edges
}

pub fn graph_to_dot(graph: &ReidemeisterGraph) -> String {
    let classification = graph.classify();
    let name = graph
        .model()
        .label
        .clone()
        .unwrap_or_else(|| "reidemeister".into());
    let mut out = String::new();
    out.push_str(&format!("digraph \"{name}\" {{\n"));
    out.push_str("  rankdir=LR;\n  node [shape=circle];\n");
    for &k in graph.levels() {
        out.push_str(&format!("  subgraph cluster_{k} {{\n"));
        out.push_str(&format!("    label=\"level {k}\";\n"));
        for e in graph.elements() {
            let v = Vertex {
                level: k,
                cls: e.clone(),
            };
            let mut attrs = vec![format!(
                "label=\"{k}:{} idx={}\"",
                element_label(e),
                graph.index(&v)
            )];
            if classification.essential_levels.contains(&k) {
                attrs.push("shape=doublecircle".into());
            }
            if classification.irreducible.contains(&v) {
                attrs.push("style=bold".into());
            }
            out.push_str(&format!("    {} [{}];\n", vertex_id(&v), attrs.join(", ")));
        }
        out.push_str("  }\n");
    }
    for (from, to) in prime_step_edges(graph) {
        out.push_str(&format!("  {} -> {};\n", vertex_id(&from), vertex_id(&to)));
    }
    out.push_str("}\n");
    out
}

fn big(v: &BigInt) -> Value {
    Value::String(v.to_string())
}

fn vertex_json(v: &Vertex) -> Value {
    json!({
        "level": v.level,
        "class": v.cls.residues(),
    })
}

pub fn graph_to_json(graph: &ReidemeisterGraph) -> Value {
    let classification = graph.classify();
    let vertices: Vec<Value> = graph
        .vertices()
        .iter()
        .map(|v| {
            json!({
                "level": v.level,
                "class": v.cls.residues(),
                "index": big(&graph.index(v)),
                "essential": classification.essential_levels.contains(&v.level),
                "irreducible": classification.irreducible.contains(v),
                "ieor": classification.ieor.contains(v),
            })
        })
        .collect();
    let edges: Vec<Value> = prime_step_edges(graph)
        .iter()
        .map(|(a, b)| json!({ "from": vertex_json(a), "to": vertex_json(b) }))
        .collect();
    json!({
        "horizon": graph.horizon(),
        "group": graph.model().group.factors(),
        "dimension": graph.model().dimension,
        "lefschetz": sequence_to_json(graph.lefschetz()),
        "vertices": vertices,
        "edges": edges,
    })
}

fn restriction_case_str(c: RestrictionCase) -> &'static str {
    match c {
        RestrictionCase::Unrestricted => "unrestricted",
        RestrictionCase::MEq2s => "m=2s",
        RestrictionCase::MEq2sPlus1 => "m=2s+1",
        RestrictionCase::MEq2sPlus2 => "m=2s+2",
    }
}

pub fn realizability_to_json(v: &RealizabilityVerdict) -> Value {
    let mut m = Map::new();
    m.insert("realizable".into(), json!(v.realizable));
    if let Some(w) = &v.witness {
        m.insert(
            "witness".into(),
            json!({
                "s": w.s,
                "d_set": w.d_set.iter().collect::<Vec<_>>(),
                "restriction_case": restriction_case_str(w.restriction_case),
                "used_plain_lcm": w.used_plain_lcm,
            }),
        );
    }
    if let Some(r) = &v.failure_reason {
        m.insert("failure_reason".into(), json!(r));
    }
    Value::Object(m)
}

fn attachment_json(a: &Attachment) -> Value {
    let coeffs: Map<String, Value> = a
        .coefficients
        .iter()
        .map(|(l, c)| (l.to_string(), big(c)))
        .collect();
    json!({
        "base": vertex_json(&a.base),
        "coefficients": coeffs,
    })
}

pub fn verification_to_json(r: &VerificationReport) -> Value {
    let residuals: Vec<Value> = r
        .residuals
        .iter()
        .map(|(v, res)| json!({ "vertex": vertex_json(v), "residual": big(res) }))
        .collect();
    let verdicts: Vec<Value> = r
        .attachment_verdicts
        .iter()
        .map(|(v, verdict)| {
            json!({ "vertex": vertex_json(v), "verdict": realizability_to_json(verdict) })
        })
        .collect();
    json!({
        "ok": r.ok,
        "residuals": residuals,
        "attachment_verdicts": verdicts,
    })
}

pub fn validators_to_json(r: &ValidatorReport) -> Value {
    json!({
        "v1_prime_periods": r.v1_prime_periods,
        "v2_reduction_bijective": r.v2_reduction_bijective,
        "v3_ieor_levels_divide_d": r.v3_ieor_levels_divide_d,
        "v4_lefschetz_gcd": r.v4_lefschetz_gcd,
        "all_pass": r.all_pass(),
        "messages": r.messages,
    })
}

pub fn status_str(s: VerdictStatus) -> &'static str {
    match s {
        VerdictStatus::TriviallyEqual => "trivially_equal",
        VerdictStatus::Equal => "equal",
        VerdictStatus::Unequal => "unequal",
    }
}

pub fn verdict_to_json(v: &EqualityVerdict) -> Value {
    let mut m = Map::new();
    m.insert("status".into(), json!(status_str(v.status)));
    if let Some(c) = &v.equality_certificate {
        let attachments: Vec<Value> = c.attachments.iter().map(attachment_json).collect();
        m.insert(
            "equality_certificate".into(),
            json!({
                "horizon": c.horizon,
                "attachments": attachments,
                "verification": verification_to_json(&c.verification),
            }),
        );
    }
    if let Some(c) = &v.inequality_certificate {
        let values: Vec<Value> = c.values.iter().map(big).collect();
        m.insert(
            "inequality_certificate".into(),
            json!({
                "exponents": c.exponents,
                "values": values,
                "distinct_count": c.distinct_count,
                "bound": c.bound,
                "witness_horizon": big(&c.witness_horizon),
                "complete": c.complete,
                "max_exponent": c.max_exponent,
            }),
        );
    }
    if let Some(d) = &v.diagnostics {
        m.insert("diagnostics".into(), validators_to_json(d));
    }
    Value::Object(m)
}

pub fn summary_to_json(s: &NfNjdSummary) -> Value {
    let njd = match &s.njd {
        NjdValue::Exact(v) => json!({ "kind": "exact", "value": v.to_string() }),
        NjdValue::LowerBound {
            at_least,
            witness_horizon,
        } => json!({
            "kind": "lower_bound",
            "at_least": at_least.to_string(),
            "witness_horizon": big(witness_horizon),
        }),
    };
    json!({
        "horizon": s.horizon,
        "nf": s.nf.to_string(),
        "njd": njd,
        "status": status_str(s.status),
    })
}
