//! JSON views of library results.

use planecode::analyze::{Extraction, WordAnalysis};
use planecode::search::{Embedding, SearchOutcome};
use planecode::{CodeWord, SubplaneResult};
use serde_json::{json, Map, Value};

use crate::formats::WordJson;

pub fn word(w: &CodeWord) -> Value {
    serde_json::to_value(WordJson::from(w)).expect("serializable")
}

pub fn subplane(s: &SubplaneResult) -> Value {
    json!({ "order": s.order, "points": s.points, "lines": s.lines })
}

pub fn embedding(e: &Embedding) -> Value {
    json!({ "point_map": e.point_map, "line_map": e.line_map })
}

pub fn search_outcome(o: &SearchOutcome) -> Value {
    let p = &o.stats.prunes;
    json!({
        "status": o.status.as_str(),
        "embeddings": o.embeddings.iter().map(embedding).collect::<Vec<_>>(),
        "seed": o.seed,
        "stats": {
            "nodes": o.stats.nodes,
            "branches": o.stats.branches,
            "complete": o.stats.complete,
            "prunes": {
                "point_used": p.point_used,
                "incidence": p.incidence,
                "non_incidence": p.non_incidence,
                "line_used": p.line_used,
                "forced_line": p.forced_line,
                "forward": p.forward,
                "leaf": p.leaf,
            },
        },
    })
}

pub fn analysis(a: &WordAnalysis) -> Value {
    let colours: Map<String, Value> = a.colours.iter().map(|&(c, n)| (c.to_string(), json!(n))).collect();
    let checks: Vec<Value> = a
        .checks
        .iter()
        .map(|c| {
            let mut o = json!({ "name": c.name, "status": c.status.as_str() });
            if !c.detail.is_empty() {
                o["witness"] = json!(c.detail);
            }
            o
        })
        .collect();
    let mut out = json!({
        "weight": a.weight,
        "epsilon": a.epsilon,
        "applicable": a.in_band,
        "dual": a.dual,
        "p": a.p,
        "order": a.order,
        "scale": a.scale,
        "colours": colours,
        "tangents": a.tangents,
        "mu": a.mu,
        "mu_neg": a.mu_neg,
        "min_x": a.profiles.iter().map(|pr| pr.x).min(),
        "colour_graph": { "components": a.colour_graph.components },
        "checks": checks,
        "classification": a.classification.to_string(),
    });
    if let Some(e) = &a.extraction {
        out["extraction"] = match e {
            Extraction::Baer(b) => json!({
                "kind": "baer",
                "subplane": subplane(&b.subplane),
                "secant": b.secant,
                "scalar": b.scalar,
            }),
            Extraction::Antipodal(classes) => json!({
                "kind": "antipodal",
                "classes": classes.iter().map(|c| json!({
                    "colour": c.colour,
                    "order": c.structure.order(),
                    "embedding": embedding(&c.embedding),
                })).collect::<Vec<_>>(),
            }),
            Extraction::Failed(err) => json!({ "kind": "failed", "error": err.to_string() }),
        };
    }
    out
}
