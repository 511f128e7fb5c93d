//! Demo logic behind the wasm bindings: SVG rendering of the plane graph
//! families and JSON summaries of the dimension analysis. Everything here is
//! plain Rust so the host test suite can drive it.

use std::f64::consts::PI;

use serde_json::{json, Value};

use resolve_kit::{
    chain_check, exact_dimension, families, greedy_upper_bound, lower_bound_certificate,
    reference_set, validate_tables, verify_family_theorem, ClassTag, Family, Graph, LandmarkSet,
    PaperFamily, ResolutionMode, ResolveError, SearchOptions, VertexId,
};

/// Budget for the interactive exact searches; large instances report
/// "skipped" instead of stalling the page.
const DEMO_BUDGET: u64 = 200_000;

pub fn parse_family(name: &str) -> Result<Family, String> {
    name.parse::<Family>().map_err(|_| format!("unknown family {name:?}"))
}

fn build(family: Family, n: usize) -> Result<Graph, String> {
    families::generate(family, n).map_err(|e| e.to_string())
}

fn class_color(tag: Option<ClassTag>) -> &'static str {
    match tag {
        Some(ClassTag::P) => "#4c78a8",
        Some(ClassTag::Q) => "#f58518",
        Some(ClassTag::R) => "#54a24b",
        Some(ClassTag::S) => "#b279a2",
        None => "#888888",
    }
}

/// Vertex positions on concentric rings (or a line for paths), centered in a
/// 640 x 640 view box.
fn layout(family: Family, n: usize, g: &Graph) -> Vec<(f64, f64)> {
    let cx = 320.0;
    let cy = 320.0;
    let v = g.vertex_count();
    let ring = |radius: f64, index: usize, count: usize, offset: f64| {
        let angle = 2.0 * PI * index as f64 / count as f64 - PI / 2.0 + offset;
        (cx + radius * angle.cos(), cy + radius * angle.sin())
    };
    match family {
        Family::Cycle => (0..v).map(|i| ring(250.0, i, v, 0.0)).collect(),
        Family::Path => {
            let step = 560.0 / (v.max(2) - 1) as f64;
            (0..v).map(|i| (40.0 + step * i as f64, cy)).collect()
        }
        Family::Star => {
            let mut pos = vec![(cx, cy)];
            pos.extend((0..v - 1).map(|i| ring(250.0, i, v - 1, 0.0)));
            pos
        }
        Family::Prism => (0..v)
            .map(|i| if i < n { ring(140.0, i, n, 0.0) } else { ring(250.0, i - n, n, 0.0) })
            .collect(),
        Family::Web => (0..v)
            .map(|i| {
                if i < n {
                    ring(110.0, i, n, 0.0)
                } else if i < 2 * n {
                    ring(190.0, i - n, n, 0.0)
                } else {
                    ring(270.0, i - 2 * n, n, 0.0)
                }
            })
            .collect(),
        Family::PrismAllied => {
            let half = PI / n as f64;
            (0..v)
                .map(|i| {
                    if i < n {
                        ring(90.0, i, n, 0.0)
                    } else if i < 2 * n {
                        ring(160.0, i - n, n, 0.0)
                    } else if i < 3 * n {
                        // r sits between q_i and q_{i+1}
                        ring(225.0, i - 2 * n, n, half)
                    } else {
                        ring(290.0, i - 3 * n, n, half)
                    }
                })
                .collect()
        }
    }
}

/// Landmark highlight selection for the rendering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Highlight {
    None,
    /// Degree-1 vertices (members of every mixed generator).
    Forced,
    /// A mixed basis: the certified one for the paper families, an exact or
    /// greedy one otherwise.
    Basis,
    /// The five-landmark reference set (paper families, n >= 6).
    ReferenceSet,
}

impl Highlight {
    pub fn parse(s: &str) -> Result<Self, String> {
        match s {
            "none" => Ok(Highlight::None),
            "forced" => Ok(Highlight::Forced),
            "basis" => Ok(Highlight::Basis),
            "mstar" | "reference" => Ok(Highlight::ReferenceSet),
            other => Err(format!(
                "unknown highlight {other:?} (expected none, forced, basis, or mstar)"
            )),
        }
    }
}

fn paper_family(family: Family) -> Option<PaperFamily> {
    match family {
        Family::PrismAllied => Some(PaperFamily::PrismAllied),
        Family::Web => Some(PaperFamily::Web),
        _ => None,
    }
}

fn highlight_ids(family: Family, n: usize, g: &Graph, highlight: Highlight) -> Result<Vec<VertexId>, String> {
    let d = g.distances().map_err(|e| e.to_string())?;
    match highlight {
        Highlight::None => Ok(Vec::new()),
        Highlight::Forced => Ok(g.vertices().filter(|&v| g.degree(v) == 1).collect()),
        Highlight::Basis => {
            if let Some(pf) = paper_family(family) {
                let mut ids = vec![0];
                ids.extend(g.vertices().filter(|&v| {
                    g.label_of(v).map(|l| l.tag) == Ok(pf.pendant_tag())
                }));
                return Ok(ids);
            }
            let opts = SearchOptions { budget: DEMO_BUDGET, ..SearchOptions::default() };
            match exact_dimension(g, &d, ResolutionMode::Mixed, &opts) {
                Ok(result) => Ok(result.basis.ids().to_vec()),
                Err(ResolveError::BudgetExceeded { .. }) => Ok(greedy_upper_bound(
                    g,
                    &d,
                    ResolutionMode::Mixed,
                )
                .map_err(|e| e.to_string())?
                .ids()
                .to_vec()),
                Err(e) => Err(e.to_string()),
            }
        }
        Highlight::ReferenceSet => {
            let pf = paper_family(family)
                .ok_or_else(|| "reference set exists only for prism_allied and web".to_string())?;
            let r = reference_set(pf, n).map_err(|e| e.to_string())?;
            Ok(r.landmarks.ids().to_vec())
        }
    }
}

/// Renders the family instance as a standalone SVG document.
pub fn render_svg(family: Family, n: usize, highlight: Highlight) -> Result<String, String> {
    let g = build(family, n)?;
    let pos = layout(family, n, &g);
    let marked = highlight_ids(family, n, &g, highlight)?;
    let show_labels = g.vertex_count() <= 48;

    let mut svg = String::with_capacity(4096);
    svg.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 640 640\" \
         font-family=\"sans-serif\">\n",
    );
    svg.push_str("<rect width=\"640\" height=\"640\" fill=\"#fdfdfd\"/>\n");
    for e in g.edges() {
        let (x1, y1) = pos[e.u() as usize];
        let (x2, y2) = pos[e.v() as usize];
        svg.push_str(&format!(
            "<line x1=\"{x1:.1}\" y1=\"{y1:.1}\" x2=\"{x2:.1}\" y2=\"{y2:.1}\" \
             stroke=\"#b0b0b0\" stroke-width=\"1.4\"/>\n"
        ));
    }
    for v in g.vertices() {
        let (x, y) = pos[v as usize];
        let tag = g.label_of(v).ok().map(|l| l.tag);
        let fill = class_color(tag);
        if marked.contains(&v) {
            svg.push_str(&format!(
                "<circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"12\" fill=\"#ffd700\" \
                 fill-opacity=\"0.55\" stroke=\"#c9a400\" stroke-width=\"2\"/>\n"
            ));
        }
        svg.push_str(&format!(
            "<circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"6.5\" fill=\"{fill}\" \
             stroke=\"#333\" stroke-width=\"1\"/>\n"
        ));
        if show_labels {
            svg.push_str(&format!(
                "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\" fill=\"#222\">{}</text>\n",
                x + 8.0,
                y - 7.0,
                g.vertex_name(v)
            ));
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn dimension_entry(
    g: &Graph,
    d: &resolve_kit::DistanceMatrix,
    mode: ResolutionMode,
) -> Value {
    let opts = SearchOptions { budget: DEMO_BUDGET, ..SearchOptions::default() };
    match exact_dimension(g, d, mode, &opts) {
        Ok(r) => json!({
            "dimension": r.dimension,
            "basis": r.basis.ids().iter().map(|&v| g.vertex_name(v)).collect::<Vec<_>>(),
            "subsets": r.stats.subsets_examined,
        }),
        Err(ResolveError::BudgetExceeded { lower_bound, upper_bound, .. }) => json!({
            "skipped": "budget",
            "lower_bound": lower_bound,
            "upper_bound": upper_bound,
        }),
        Err(e) => json!({"error": e.to_string()}),
    }
}

/// Dimension analysis of one family instance as a JSON document: counts,
/// forced leaves, the lower-bound certificate, exact dimensions within an
/// interactive budget, the certified theorem verdict, and the chain triple.
pub fn analyze_json(family: Family, n: usize) -> Result<String, String> {
    let g = build(family, n)?;
    let d = g.distances().map_err(|e| e.to_string())?;

    let cert = lower_bound_certificate(&g, &d).map_err(|e| e.to_string())?;
    let forced: Vec<String> = cert.forced.iter().map(|e| g.vertex_name(e.leaf)).collect();
    let witness = cert
        .failure_witness
        .map(|(a, b)| json!([g.element_name(a), g.element_name(b)]));

    let vertex = dimension_entry(&g, &d, ResolutionMode::Vertex);
    let edge = dimension_entry(&g, &d, ResolutionMode::Edge);
    let mixed = dimension_entry(&g, &d, ResolutionMode::Mixed);

    let theorem = match paper_family(family) {
        Some(pf) if n >= 4 => match verify_family_theorem(pf, n) {
            Ok(r) => json!({
                "proven": true,
                "mixed_dimension": r.mixed_dimension,
                "basis": r.basis.ids().iter().map(|&v| g.vertex_name(v)).collect::<Vec<_>>(),
                "independent": r.basis_is_independent,
            }),
            Err(e) => json!({"proven": false, "error": e.to_string()}),
        },
        _ => Value::Null,
    };

    let chain = match paper_family(family) {
        Some(pf) => match chain_check(pf, n, DEMO_BUDGET) {
            Ok(r) => json!({
                "vertex": r.vertex_dimension,
                "edge": r.edge_dimension,
                "mixed": r.mixed_dimension,
                "strict": r.strict_chain_holds,
                "relation": format!(
                    "{} {} {} {} {}",
                    r.vertex_dimension,
                    if r.vertex_lt_edge { "<" } else { "=" },
                    r.edge_dimension,
                    if r.edge_lt_mixed { "<" } else { "=" },
                    r.mixed_dimension
                ),
            }),
            Err(_) => Value::Null,
        },
        None => Value::Null,
    };

    let out = json!({
        "family": family.to_string(),
        "n": n,
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "forced_leaves": forced,
        "certificate": {"bound": cert.bound, "witness": witness},
        "exact": {"vertex": vertex, "edge": edge, "mixed": mixed},
        "theorem": theorem,
        "chain": chain,
    });
    Ok(out.to_string())
}

/// Closed-form vs oracle code table plus the collision census, as JSON.
/// Only the two paper families have tables, and only for n >= 6.
pub fn codes_json(family: Family, n: usize) -> Result<String, String> {
    let pf = paper_family(family)
        .ok_or_else(|| "code tables exist only for prism_allied and web".to_string())?;
    let report = validate_tables(pf, n).map_err(|e| e.to_string())?;
    let reference = reference_set(pf, n).map_err(|e| e.to_string())?;
    let g = pf.generate(n).map_err(|e| e.to_string())?;
    let d = g.distances().map_err(|e| e.to_string())?;

    let mut rows = Vec::new();
    for &class in resolve_kit::ElementClass::all_for(pf) {
        for l in 1..=n as u32 {
            let fe = resolve_kit::FamilyElement::new(class, l);
            let ge = fe.to_graph_element(pf, n);
            let oracle = resolve_kit::mixed_code(&d, ge, &reference.landmarks);
            let closed = resolve_kit::closed_form_code(pf, n, fe).ok();
            rows.push(json!({
                "label": fe.to_string(),
                "kind": if fe.class.is_vertex() { "vertex" } else { "edge" },
                "closed_form": closed.as_ref().map(|c| c.entries().to_vec()),
                "oracle": oracle.entries().to_vec(),
                "match": closed.as_ref().map(|c| *c == oracle),
            }));
        }
    }

    let census = &report.census;
    let out = json!({
        "family": pf,
        "n": n,
        "aleph": report.aleph,
        "parity": report.parity,
        "landmarks": census.landmarks,
        "rows": rows,
        "mismatches": report.mismatches.len(),
        "missing_rows": report.missing_rows.len(),
        "census": {
            "collisions": census.actual.len(),
            "predicted_base": census.predicted_base.len(),
            "predicted_with_closure": census.predicted.len(),
            "matches": census.matches,
            "separation_ok": census.separation_ok,
            "pairs": census.actual.iter().map(|p| json!([
                g.element_name(p.first),
                g.element_name(p.second),
            ])).collect::<Vec<_>>(),
        },
    });
    Ok(out.to_string())
}

/// True when the basis highlight would fall back to greedy (informational
/// for the page).
pub fn landmark_legend(family: Family) -> &'static str {
    match family {
        Family::PrismAllied | Family::Web => "certified basis {p1} + pendants",
        _ => "minimal mixed basis (exact, greedy beyond budget)",
    }
}
