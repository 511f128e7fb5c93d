//! Report envelope and the JSON schema of the machine-readable results.

use serde::Serialize;
use serde_json::{json, Value};

use resolve_kit::{
    CensusReport, ChainReport, DimensionResult, Graph, GraphElement, LandmarkSet, TheoremReport,
    ValidationReport,
};

/// Envelope wrapping every report: tool identity, input description,
/// payload, and wall-clock duration. Two runs with the same config produce
/// identical JSON apart from `duration_millis`.
#[derive(Debug, Serialize)]
pub struct Envelope {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub input: Value,
    pub result: Value,
    pub duration_millis: u64,
}

impl Envelope {
    pub fn new(command: &str, input: Value, result: Value, duration_millis: u64) -> Self {
        Envelope {
            tool: "resolve-kit",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            input,
            result,
            duration_millis,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("envelope serializes")
    }
}

fn element_json(g: &Graph, el: GraphElement) -> Value {
    let mut v = serde_json::to_value(el).expect("element serializes");
    v["label"] = Value::String(g.element_name(el));
    v
}

fn witness_json(g: &Graph, witness: &Option<(GraphElement, GraphElement)>) -> Value {
    match witness {
        Some((a, b)) => json!([element_json(g, *a), element_json(g, *b)]),
        None => Value::Null,
    }
}

pub fn basis_labels(g: &Graph, set: &LandmarkSet) -> Value {
    if !g.is_labeled() {
        return Value::Null;
    }
    json!(set.ids().iter().map(|&id| g.vertex_name(id)).collect::<Vec<_>>())
}

/// Schema: {"mode","dimension","basis","basis_labels",
///          "certificate":{"forced","bound","witness"},
///          "stats":{"subsets","millis"}}.
pub fn dimension_json(g: &Graph, r: &DimensionResult) -> Value {
    let certificate = match &r.certificate {
        Some(c) => json!({
            "forced": c.forced_ids(),
            "bound": c.bound,
            "witness": witness_json(g, &c.failure_witness),
        }),
        None => Value::Null,
    };
    let mut out = json!({
        "mode": r.mode,
        "dimension": r.dimension,
        "basis": r.basis.ids(),
        "basis_labels": basis_labels(g, &r.basis),
        "certificate": certificate,
        "stats": {"subsets": r.stats.subsets_examined, "millis": r.stats.millis},
    });
    if let Some(all) = &r.all_bases {
        out["all_bases"] = json!(all.iter().map(|b| b.ids().to_vec()).collect::<Vec<_>>());
    }
    out
}

pub fn dimension_text(g: &Graph, r: &DimensionResult) -> String {
    let mut out = String::new();
    out.push_str(&format!("mode: {}\n", r.mode));
    out.push_str(&format!("dimension: {}\n", r.dimension));
    out.push_str(&format!(
        "basis: {}\n",
        r.basis.ids().iter().map(|&id| g.vertex_name(id)).collect::<Vec<_>>().join(" ")
    ));
    out.push_str(&format!("basis ids: {:?}\n", r.basis.ids()));
    if let Some(c) = &r.certificate {
        out.push_str(&format!(
            "certificate: forced {} leaves, lower bound {}",
            c.forced.len(),
            c.bound
        ));
        if let Some((a, b)) = &c.failure_witness {
            out.push_str(&format!(
                " (forced set alone collides: {} vs {})",
                g.element_name(*a),
                g.element_name(*b)
            ));
        }
        out.push('\n');
    }
    if let Some(all) = &r.all_bases {
        out.push_str(&format!("minimal bases: {}\n", all.len()));
        for b in all {
            out.push_str(&format!(
                "  {}\n",
                b.ids().iter().map(|&id| g.vertex_name(id)).collect::<Vec<_>>().join(" ")
            ));
        }
    }
    out.push_str(&format!(
        "stats: {} subsets examined in {} ms\n",
        r.stats.subsets_examined, r.stats.millis
    ));
    out
}

pub fn theorem_json(g: &Graph, r: &TheoremReport) -> Value {
    json!({
        "family": r.family,
        "n": r.n,
        "mixed_dimension": r.mixed_dimension,
        "basis": r.basis.ids(),
        "basis_labels": basis_labels(g, &r.basis),
        "certificate": {
            "forced": r.certificate.forced_ids(),
            "bound": r.certificate.bound,
            "witness": witness_json(g, &r.certificate.failure_witness),
        },
        "basis_is_generator": r.basis_is_generator,
        "basis_is_independent": r.basis_is_independent,
        "proven": true,
    })
}

pub fn theorem_text(r: &TheoremReport) -> String {
    format!(
        "{} n={}: proven mdim = {} (forced {} leaves, certified bound {}, \
         paper basis generates and is independent)\n",
        r.family,
        r.n,
        r.mixed_dimension,
        r.certificate.forced.len(),
        r.certificate.bound
    )
}

pub fn chain_json(r: &ChainReport) -> Value {
    serde_json::to_value(r).expect("chain report serializes")
}

pub fn chain_text(r: &ChainReport) -> String {
    let rel = |lt: bool| if lt { "<" } else { "=" };
    let mut out = format!(
        "{} n={}: beta {} beta_E {} beta_M  ({} {} {} {} {})\n",
        r.family,
        r.n,
        rel(r.vertex_lt_edge),
        rel(r.edge_lt_mixed),
        r.vertex_dimension,
        rel(r.vertex_lt_edge),
        r.edge_dimension,
        rel(r.edge_lt_mixed),
        r.mixed_dimension,
    );
    if r.strict_chain_holds {
        out.push_str("strict chain holds\n");
    } else {
        out.push_str("strict chain does NOT hold for this instance\n");
    }
    out
}

fn census_json(report: &CensusReport) -> Value {
    serde_json::to_value(report).expect("census serializes")
}

pub fn validation_json(r: &ValidationReport) -> Value {
    json!({
        "family": r.family,
        "n": r.n,
        "aleph": r.aleph,
        "parity": r.parity,
        "elements_checked": r.elements_checked,
        "mismatches": r.mismatches,
        "missing_rows": r.missing_rows,
        "tables_clean": r.tables_clean(),
        "census": census_json(&r.census),
    })
}

pub fn validation_text(r: &ValidationReport) -> String {
    let mut out = format!(
        "{} n={} ({} case, aleph={}): {} elements checked\n",
        r.family, r.n, r.parity, r.aleph, r.elements_checked
    );
    if r.tables_clean() {
        out.push_str("closed forms: all rows match the BFS oracle\n");
    } else {
        for m in &r.mismatches {
            out.push_str(&format!(
                "mismatch {}: table {:?} vs oracle {:?}\n",
                m.element_label, m.formula, m.oracle
            ));
        }
        for m in &r.missing_rows {
            out.push_str(&format!(
                "missing row {}: oracle {:?}\n",
                m.element_label, m.oracle
            ));
        }
    }
    out.push_str(&format!(
        "census: {} collisions, prediction {} (separation {})\n",
        r.census.actual.len(),
        if r.census.matches { "matches" } else { "DIFFERS" },
        if r.census.separation_ok { "ok" } else { "FAILS" },
    ));
    out
}

