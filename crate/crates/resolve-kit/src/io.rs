//! Edge-list text format and the optional label sidecar.
//!
//! Format: first line `n m`, then `m` lines `u v` with 0-based vertex ids.
//! Lines starting with `#` are comments and blank lines are ignored. A
//! labeled graph written to `<path>` gets a sidecar `<path>.labels.json`
//! mapping each class letter to its vertex ids in index order, e.g.
//! `{"p": [0, 1], "q": [2, 3]}`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::{ClassTag, VertexClass};
use crate::graph::{Graph, GraphError, VertexId};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}:{line}: {message}")]
    Parse { path: String, line: usize, message: String },
    #[error("{path}: {source}")]
    Graph {
        path: String,
        #[source]
        source: GraphError,
    },
    #[error("failed to read {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("failed to write {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: invalid label sidecar: {message}")]
    Sidecar { path: String, message: String },
}

/// Sidecar path for a graph file: `<path>.labels.json`.
pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_os_string();
    name.push(".labels.json");
    PathBuf::from(name)
}

/// Parses edge-list text into `(vertex_count, edges)`.
pub fn parse_edge_list(text: &str, origin: &str) -> Result<(usize, Vec<(VertexId, VertexId)>), IoError> {
    let err = |line: usize, message: String| IoError::Parse {
        path: origin.to_string(),
        line,
        message,
    };
    let mut rows = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line_no, header) = rows.next().ok_or_else(|| err(1, "missing header line".into()))?;
    let mut parts = header.split_whitespace();
    let parse_usize = |tok: Option<&str>, what: &str, line_no: usize| {
        tok.ok_or_else(|| err(line_no, format!("missing {what}")))?
            .parse::<usize>()
            .map_err(|_| err(line_no, format!("invalid {what}")))
    };
    let n = parse_usize(parts.next(), "vertex count", line_no)?;
    let m = parse_usize(parts.next(), "edge count", line_no)?;
    if parts.next().is_some() {
        return Err(err(line_no, "header has trailing tokens".into()));
    }

    let mut edges = Vec::with_capacity(m);
    for (line_no, row) in rows {
        let mut parts = row.split_whitespace();
        let u = parse_usize(parts.next(), "endpoint", line_no)? as VertexId;
        let v = parse_usize(parts.next(), "endpoint", line_no)? as VertexId;
        if parts.next().is_some() {
            return Err(err(line_no, "edge line has trailing tokens".into()));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(err(
            text.lines().count(),
            format!("header declares {m} edges but {} were given", edges.len()),
        ));
    }
    Ok((n, edges))
}

/// Renders a graph in edge-list format with canonically sorted edges.
pub fn render_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", g.vertex_count(), g.edge_count()));
    for e in g.edges() {
        out.push_str(&format!("{} {}\n", e.u(), e.v()));
    }
    out
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct LabelSidecar(BTreeMap<char, Vec<VertexId>>);

/// Serializes the labels of a graph as the sidecar JSON document.
pub fn render_label_sidecar(g: &Graph) -> Option<String> {
    if !g.is_labeled() {
        return None;
    }
    let mut map: BTreeMap<char, Vec<(u32, VertexId)>> = BTreeMap::new();
    for id in g.vertices() {
        if let Ok(label) = g.label_of(id) {
            map.entry(label.tag.letter()).or_default().push((label.index, id));
        }
    }
    let ordered: BTreeMap<char, Vec<VertexId>> = map
        .into_iter()
        .map(|(c, mut v)| {
            v.sort_unstable();
            (c, v.into_iter().map(|(_, id)| id).collect())
        })
        .collect();
    Some(serde_json::to_string_pretty(&LabelSidecar(ordered)).expect("sidecar serializes"))
}

fn labels_from_sidecar(
    text: &str,
    vertex_count: usize,
    origin: &str,
) -> Result<Vec<Option<VertexClass>>, IoError> {
    let sidecar: LabelSidecar = serde_json::from_str(text).map_err(|e| IoError::Sidecar {
        path: origin.to_string(),
        message: e.to_string(),
    })?;
    let mut labels: Vec<Option<VertexClass>> = vec![None; vertex_count];
    for (letter, ids) in &sidecar.0 {
        let tag = match letter {
            'p' => ClassTag::P,
            'q' => ClassTag::Q,
            'r' => ClassTag::R,
            's' => ClassTag::S,
            other => {
                return Err(IoError::Sidecar {
                    path: origin.to_string(),
                    message: format!("unknown class {other:?}"),
                })
            }
        };
        for (i, &id) in ids.iter().enumerate() {
            let slot = labels.get_mut(id as usize).ok_or_else(|| IoError::Sidecar {
                path: origin.to_string(),
                message: format!("vertex {id} out of range"),
            })?;
            if slot.is_some() {
                return Err(IoError::Sidecar {
                    path: origin.to_string(),
                    message: format!("vertex {id} labeled twice"),
                });
            }
            *slot = Some(VertexClass::new(tag, i as u32 + 1));
        }
    }
    Ok(labels)
}

/// Reads a graph from an edge-list file, attaching labels from the sidecar
/// when one sits next to the file.
pub fn parse_graph_file(path: &Path) -> Result<Graph, IoError> {
    let origin = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| IoError::Read {
        path: origin.clone(),
        source,
    })?;
    let (n, edges) = parse_edge_list(&text, &origin)?;
    let g = Graph::new(n, &edges).map_err(|source| IoError::Graph {
        path: origin.clone(),
        source,
    })?;
    let sidecar = sidecar_path(path);
    if sidecar.exists() {
        let text = fs::read_to_string(&sidecar).map_err(|source| IoError::Read {
            path: sidecar.display().to_string(),
            source,
        })?;
        let labels = labels_from_sidecar(&text, n, &sidecar.display().to_string())?;
        return Ok(g.with_labels(labels));
    }
    Ok(g)
}

/// Writes a graph (and its label sidecar, when labeled) to `path`.
pub fn write_graph_file(path: &Path, g: &Graph) -> Result<(), IoError> {
    let write = |p: &Path, contents: &str| {
        fs::write(p, contents).map_err(|source| IoError::Write {
            path: p.display().to_string(),
            source,
        })
    };
    write(path, &render_edge_list(g))?;
    if let Some(sidecar) = render_label_sidecar(g) {
        write(&sidecar_path(path), &sidecar)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn parse_triangle() {
        let (n, edges) = parse_edge_list("3 3\n0 1\n1 2\n2 0\n", "test").unwrap();
        assert_eq!(n, 3);
        let g = Graph::new(n, &edges).unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn comments_and_blanks_ignored() {
        let text = "# a triangle\n\n3 3\n0 1\n# middle comment\n1 2\n2 0\n";
        let (n, edges) = parse_edge_list(text, "test").unwrap();
        assert_eq!((n, edges.len()), (3, 3));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_edge_list("2 1\n1 x\n", "f").unwrap_err();
        assert!(matches!(err, IoError::Parse { line: 2, .. }), "{err}");
        let err = parse_edge_list("2 2\n0 1\n", "f").unwrap_err();
        assert!(matches!(err, IoError::Parse { .. }));
    }

    #[test]
    fn self_loop_propagates_with_path() {
        let dir = std::env::temp_dir().join("resolve_kit_io_test_loop");
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("loop.edges");
        fs::write(&path, "2 1\n1 1\n").unwrap();
        let err = parse_graph_file(&path).unwrap_err();
        match err {
            IoError::Graph { source: GraphError::SelfLoop(1), .. } => {}
            other => panic!("expected SelfLoop, got {other:?}"),
        }
        fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn round_trip_with_labels() {
        let dir = std::env::temp_dir().join("resolve_kit_io_test_rt");
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("w6.edges");
        let g = families::web(6).unwrap();
        write_graph_file(&path, &g).unwrap();
        assert!(sidecar_path(&path).exists());

        let parsed = parse_graph_file(&path).unwrap();
        assert_eq!(parsed.vertex_count(), 18);
        assert_eq!(parsed.edge_count(), 24);
        assert_eq!(parsed.edges(), g.edges());
        for id in g.vertices() {
            assert_eq!(parsed.label_of(id).unwrap(), g.label_of(id).unwrap());
        }
        // byte-equal render after a round trip
        assert_eq!(render_edge_list(&parsed), render_edge_list(&g));
        fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn unlabeled_round_trip_has_no_sidecar() {
        let dir = std::env::temp_dir().join("resolve_kit_io_test_plain");
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("c5.edges");
        let g = families::cycle(5).unwrap();
        write_graph_file(&path, &g).unwrap();
        assert!(!sidecar_path(&path).exists());
        let parsed = parse_graph_file(&path).unwrap();
        assert!(!parsed.is_labeled());
        fs::remove_dir_all(&dir).ok();
    }
}
