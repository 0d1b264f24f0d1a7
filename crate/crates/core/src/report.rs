//! JSON renderings of every result type. Keys are sorted, ids are 1-based, colors are 1-based
//! and an unbounded chromatic number is the string `"unbounded"`.

use serde_json::{json, Value};

use crate::bounds::{AltResult, BoundReport, DefectResult};
use crate::coloring::{ChromaticResult, ChromaticValue, LocalResult};
use crate::fan::FanReport;
use crate::hardness::ReductionVerdict;
use crate::hypercore::Coloring;
use crate::kneser::KneserStructure;
use crate::rainbow::SweepReport;
use crate::vertex_set::VertexSet;

/// Pretty-printed JSON with a trailing newline. `serde_json` maps keep keys sorted, so equal
/// values always produce equal text.
pub fn emit(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values always serialize");
    s.push('\n');
    s
}

fn one_based(ids: &[usize]) -> Vec<usize> {
    ids.iter().map(|&i| i + 1).collect()
}

pub fn vertex_set(s: &VertexSet) -> Value {
    json!(s.to_one_based())
}

pub fn coloring(c: &Coloring) -> Value {
    serde_json::to_value(c.to_file()).expect("coloring files serialize")
}

pub fn chromatic_value(v: &ChromaticValue) -> Value {
    match *v {
        ChromaticValue::Exact(x) => json!(x),
        ChromaticValue::Unbounded => json!("unbounded"),
        ChromaticValue::Bounds { lower, upper } => json!({ "lower": lower, "upper": upper }),
    }
}

/// `.hg` sidecar: kg vertex `i` (1-based) is `vertex_map[i-1]`.
pub fn kneser_sidecar(k: &KneserStructure) -> Value {
    let map: Vec<Vec<usize>> = (0..k.kg().vertex_count()).map(|i| one_based(k.base_edge(i))).collect();
    json!({
        "q": k.q(),
        "base_vertices": k.base().vertex_count(),
        "base_edges": k.base().edge_count(),
        "kg_vertices": k.kg().vertex_count(),
        "kg_edges": k.kg().edge_count(),
        "vertex_map": map,
    })
}

pub fn chromatic(r: &ChromaticResult) -> Value {
    json!({
        "value": chromatic_value(&r.value),
        "exact": r.value.exact().is_some() || r.value == ChromaticValue::Unbounded,
        "witness": r.witness.as_ref().map(coloring),
    })
}

pub fn local(r: &LocalResult) -> Value {
    json!({
        "value": r.value,
        "witness": coloring(&r.witness),
        "witness_t": r.witness_t,
        "max_t": r.max_t,
        "complete": r.complete,
    })
}

pub fn defect(r: &DefectResult) -> Value {
    json!({
        "value": r.value,
        "lower": r.lower,
        "witness": vertex_set(&r.witness),
        "complete": r.complete,
    })
}

pub fn alt(r: &AltResult) -> Value {
    json!({
        "value": r.value,
        "permutation": one_based(&r.permutation),
        "vector": r.vector.entries(),
        "mode": r.mode,
        "complete": r.complete,
    })
}

pub fn bounds(r: &BoundReport) -> Value {
    json!({
        "n": r.n,
        "q": r.q,
        "kg_vertices": r.kg_vertices,
        "kg_edges": r.kg_edges,
        "cd": defect(&r.cd),
        "alt": r.alt.as_ref().map(alt),
        "alt_error": r.alt_error,
        "chi": r.chi.as_ref().map(chromatic_value),
        "local_chi": r.local.as_ref().map(local),
        "local_error": r.local_error,
        "bounds": r.bounds,
        "violations": r.violations,
        "consistent": r.consistent(),
    })
}

pub fn sweep(r: &SweepReport) -> Value {
    let t = &r.tally;
    json!({
        "p": r.p,
        "r": r.r,
        "mode": r.r_mode,
        "r_exact": r.r_exact,
        "max_t": r.max_t,
        "exhaustive": r.exhaustive,
        "seed": r.seed,
        "samples": r.samples,
        "exploratory": r.exploratory,
        "colorings_checked": t.colorings_checked,
        "improper_skipped": t.improper_skipped,
        "witnesses_found": t.witnesses_found,
        "kriz_violations": t.kriz_violations,
        "invalid_witnesses": t.invalid_witnesses,
        "counterexamples": t.counterexamples.iter().map(coloring).collect::<Vec<_>>(),
        "passed": r.passed(),
    })
}

pub fn fan(r: &FanReport) -> Value {
    serde_json::to_value(r).expect("fan reports serialize")
}

pub fn hardness(v: &ReductionVerdict) -> Value {
    let j = &v.join;
    json!({
        "alpha": v.alpha.value,
        "max_alt_id": v.max_alt_id(),
        "equal": v.equal,
        "joined_vertices": j.joined().vertex_count(),
        "joined_edges": j.joined().edge_count(),
        "rho": one_based(j.rho()),
        "witnesses": {
            "independent_set": vertex_set(&v.alpha.witness),
            "vector": v.alt.vector.entries(),
        },
    })
}
