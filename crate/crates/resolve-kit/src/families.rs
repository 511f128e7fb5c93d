//! Deterministic generators for the plane graph families under study and for
//! the small oracle families used by the test suites.
//!
//! Family graphs carry class labels (`p`, `q`, `r`, `s`) with 1-based indices
//! and a fixed contiguous id layout by class block, so that codes, bases, and
//! reports are byte-stable across runs:
//!
//! | class | ids            | present in            |
//! |-------|----------------|-----------------------|
//! | p_£   | £ − 1          | prism, prism-allied, web |
//! | q_£   | n + £ − 1      | prism, prism-allied, web |
//! | r_£   | 2n + £ − 1     | prism-allied, web     |
//! | s_£   | 3n + £ − 1     | prism-allied          |

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("invalid n = {n} for {family}: need n >= {min}")]
    InvalidN { family: Family, n: usize, min: usize },
    #[error("graph carries no labels")]
    UnlabeledGraph,
    #[error("unknown label {0}")]
    UnknownLabel(String),
}

/// Vertex class tag for the family layouts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassTag {
    P,
    Q,
    R,
    S,
}

impl ClassTag {
    pub const ALL: [ClassTag; 4] = [ClassTag::P, ClassTag::Q, ClassTag::R, ClassTag::S];

    pub fn letter(self) -> char {
        match self {
            ClassTag::P => 'p',
            ClassTag::Q => 'q',
            ClassTag::R => 'r',
            ClassTag::S => 's',
        }
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Class-plus-index label of a family vertex, e.g. `q3`.
///
/// Indices are 1-based; arithmetic on them is modulo n with representative
/// in 1..=n, so `q_{n+1}` names the same vertex as `q_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexClass {
    pub tag: ClassTag,
    pub index: u32,
}

impl VertexClass {
    pub fn new(tag: ClassTag, index: u32) -> Self {
        VertexClass { tag, index }
    }

    /// Wraps the index into 1..=n.
    pub fn reduced(self, n: usize) -> Self {
        let n = n as u32;
        VertexClass { tag: self.tag, index: (self.index + n - 1) % n + 1 }
    }
}

impl fmt::Display for VertexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.tag, self.index)
    }
}

impl FromStr for VertexClass {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FamilyError::UnknownLabel(s.to_string());
        let mut chars = s.chars();
        let tag = match chars.next() {
            Some('p') => ClassTag::P,
            Some('q') => ClassTag::Q,
            Some('r') => ClassTag::R,
            Some('s') => ClassTag::S,
            _ => return Err(bad()),
        };
        let index: u32 = chars.as_str().parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        Ok(VertexClass { tag, index })
    }
}

/// Generated graph families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Prism,
    PrismAllied,
    Web,
    Cycle,
    Path,
    Star,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Family::Prism => "prism",
            Family::PrismAllied => "prism_allied",
            Family::Web => "web",
            Family::Cycle => "cycle",
            Family::Path => "path",
            Family::Star => "star",
        };
        write!(f, "{name}")
    }
}

impl FromStr for Family {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "prism" => Ok(Family::Prism),
            "prism_allied" | "prism-allied" => Ok(Family::PrismAllied),
            "web" => Ok(Family::Web),
            "cycle" => Ok(Family::Cycle),
            "path" => Ok(Family::Path),
            "star" => Ok(Family::Star),
            _ => Err(FamilyError::UnknownLabel(s.to_string())),
        }
    }
}

/// The two families whose mixed metric dimension the certified checks cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PaperFamily {
    PrismAllied,
    Web,
}

impl PaperFamily {
    pub fn family(self) -> Family {
        match self {
            PaperFamily::PrismAllied => Family::PrismAllied,
            PaperFamily::Web => Family::Web,
        }
    }

    pub fn generate(self, n: usize) -> Result<Graph, FamilyError> {
        match self {
            PaperFamily::PrismAllied => prism_allied(n),
            PaperFamily::Web => web(n),
        }
    }

    /// Pendant class: `s` in the prism-allied graph, `r` in the web graph.
    pub fn pendant_tag(self) -> ClassTag {
        match self {
            PaperFamily::PrismAllied => ClassTag::S,
            PaperFamily::Web => ClassTag::R,
        }
    }
}

impl fmt::Display for PaperFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family())
    }
}

impl FromStr for PaperFamily {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match Family::from_str(s)? {
            Family::PrismAllied => Ok(PaperFamily::PrismAllied),
            Family::Web => Ok(PaperFamily::Web),
            _ => Err(FamilyError::UnknownLabel(s.to_string())),
        }
    }
}

fn check_n(family: Family, n: usize, min: usize) -> Result<(), FamilyError> {
    if n < min {
        return Err(FamilyError::InvalidN { family, n, min });
    }
    Ok(())
}

fn block_labels(n: usize, tags: &[ClassTag]) -> Vec<Option<VertexClass>> {
    let mut labels = Vec::with_capacity(n * tags.len());
    for &tag in tags {
        for index in 1..=n as u32 {
            labels.push(Some(VertexClass { tag, index }));
        }
    }
    labels
}

/// Prism-allied graph: the prism plus outer vertices r_£ adjacent to q_£ and
/// q_{£+1}, each carrying a pendant s_£. 4n vertices, 6n edges.
pub fn prism_allied(n: usize) -> Result<Graph, FamilyError> {
    check_n(Family::PrismAllied, n, 3)?;
    let p = |i: usize| ((i - 1) % n) as VertexId;
    let q = |i: usize| (n + (i - 1) % n) as VertexId;
    let r = |i: usize| (2 * n + (i - 1) % n) as VertexId;
    let s = |i: usize| (3 * n + (i - 1) % n) as VertexId;
    let mut edges = Vec::with_capacity(6 * n);
    for i in 1..=n {
        edges.push((p(i), q(i)));
        edges.push((p(i), p(i + 1)));
        edges.push((q(i), q(i + 1)));
        edges.push((r(i), q(i)));
        edges.push((r(i), q(i + 1)));
        edges.push((r(i), s(i)));
    }
    let g = Graph::new(4 * n, &edges).expect("family construction is simple");
    Ok(g.with_labels(block_labels(n, &[ClassTag::P, ClassTag::Q, ClassTag::R, ClassTag::S])))
}

/// Web graph: the prism plus one pendant r_£ on each outer-cycle vertex q_£.
/// 3n vertices, 4n edges.
pub fn web(n: usize) -> Result<Graph, FamilyError> {
    check_n(Family::Web, n, 3)?;
    let p = |i: usize| ((i - 1) % n) as VertexId;
    let q = |i: usize| (n + (i - 1) % n) as VertexId;
    let r = |i: usize| (2 * n + (i - 1) % n) as VertexId;
    let mut edges = Vec::with_capacity(4 * n);
    for i in 1..=n {
        edges.push((p(i), q(i)));
        edges.push((p(i), p(i + 1)));
        edges.push((q(i), q(i + 1)));
        edges.push((r(i), q(i)));
    }
    let g = Graph::new(3 * n, &edges).expect("family construction is simple");
    Ok(g.with_labels(block_labels(n, &[ClassTag::P, ClassTag::Q, ClassTag::R])))
}

/// Prism graph: two n-cycles joined by the rungs p_£ q_£.
pub fn prism(n: usize) -> Result<Graph, FamilyError> {
    check_n(Family::Prism, n, 3)?;
    let p = |i: usize| ((i - 1) % n) as VertexId;
    let q = |i: usize| (n + (i - 1) % n) as VertexId;
    let mut edges = Vec::with_capacity(3 * n);
    for i in 1..=n {
        edges.push((p(i), q(i)));
        edges.push((p(i), p(i + 1)));
        edges.push((q(i), q(i + 1)));
    }
    let g = Graph::new(2 * n, &edges).expect("family construction is simple");
    Ok(g.with_labels(block_labels(n, &[ClassTag::P, ClassTag::Q])))
}

pub fn cycle(n: usize) -> Result<Graph, FamilyError> {
    check_n(Family::Cycle, n, 3)?;
    let edges: Vec<_> =
        (0..n).map(|i| (i as VertexId, ((i + 1) % n) as VertexId)).collect();
    Ok(Graph::new(n, &edges).expect("family construction is simple"))
}

/// Path on k vertices (k - 1 edges).
pub fn path(k: usize) -> Result<Graph, FamilyError> {
    check_n(Family::Path, k, 1)?;
    let edges: Vec<_> = (0..k.saturating_sub(1))
        .map(|i| (i as VertexId, (i + 1) as VertexId))
        .collect();
    Ok(Graph::new(k, &edges).expect("family construction is simple"))
}

/// Star with k leaves around center 0 (k + 1 vertices).
pub fn star(k: usize) -> Result<Graph, FamilyError> {
    check_n(Family::Star, k, 1)?;
    let edges: Vec<_> = (1..=k).map(|i| (0 as VertexId, i as VertexId)).collect();
    Ok(Graph::new(k + 1, &edges).expect("family construction is simple"))
}

/// Generates a family instance by name.
pub fn generate(family: Family, n: usize) -> Result<Graph, FamilyError> {
    match family {
        Family::Prism => prism(n),
        Family::PrismAllied => prism_allied(n),
        Family::Web => web(n),
        Family::Cycle => cycle(n),
        Family::Path => path(n),
        Family::Star => star(n),
    }
}

impl Graph {
    /// Label of a vertex in a labeled graph.
    pub fn label_of(&self, id: VertexId) -> Result<VertexClass, FamilyError> {
        let labels = self.labels().ok_or(FamilyError::UnlabeledGraph)?;
        labels
            .get(id as usize)
            .copied()
            .flatten()
            .ok_or_else(|| FamilyError::UnknownLabel(format!("v{id}")))
    }

    /// Vertex id carrying the given label; the index is reduced modulo the
    /// class block size, so `q_{n+1}` resolves to `q_1`.
    pub fn id_of(&self, class: VertexClass) -> Result<VertexId, FamilyError> {
        let labels = self.labels().ok_or(FamilyError::UnlabeledGraph)?;
        let block: Vec<VertexId> = labels
            .iter()
            .enumerate()
            .filter_map(|(id, l)| {
                l.filter(|l| l.tag == class.tag).map(|_| id as VertexId)
            })
            .collect();
        if block.is_empty() {
            return Err(FamilyError::UnknownLabel(class.to_string()));
        }
        let wrapped = class.reduced(block.len());
        for &id in &block {
            if labels[id as usize] == Some(wrapped) {
                return Ok(id);
            }
        }
        Err(FamilyError::UnknownLabel(class.to_string()))
    }

    /// Renders a vertex as its label when available, else as `v<id>`.
    pub fn vertex_name(&self, id: VertexId) -> String {
        match self.label_of(id) {
            Ok(label) => label.to_string(),
            Err(_) => format!("v{id}"),
        }
    }

    /// Renders an element with labels when available, e.g. `q3r3`.
    pub fn element_name(&self, element: crate::graph::GraphElement) -> String {
        match element {
            crate::graph::GraphElement::Vertex { id } => self.vertex_name(id),
            crate::graph::GraphElement::Edge { u, v } => {
                format!("{}{}", self.vertex_name(u), self.vertex_name(v))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prism_allied_counts() {
        for (n, v, e) in [(3, 12, 18), (6, 24, 36), (10, 40, 60)] {
            let g = prism_allied(n).unwrap();
            assert_eq!(g.vertex_count(), v);
            assert_eq!(g.edge_count(), e);
            assert!(g.is_connected());
        }
    }

    #[test]
    fn web_counts() {
        for (n, v, e) in [(3, 9, 12), (5, 15, 20)] {
            let g = web(n).unwrap();
            assert_eq!(g.vertex_count(), v);
            assert_eq!(g.edge_count(), e);
            assert!(g.is_connected());
        }
    }

    #[test]
    fn small_family_counts() {
        let g = prism(4).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (8, 12));
        let g = star(3).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 3));
        let g = cycle(5).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (5, 5));
    }

    #[test]
    fn invalid_n_rejected() {
        assert!(matches!(prism_allied(2), Err(FamilyError::InvalidN { .. })));
        assert!(matches!(web(0), Err(FamilyError::InvalidN { .. })));
        assert!(matches!(cycle(2), Err(FamilyError::InvalidN { .. })));
        assert!(path(1).is_ok());
    }

    #[test]
    fn degree_census_prism_allied() {
        // p: 3, q: 5, r: 3, s: 1 for every n.
        for n in [3, 4, 7] {
            let g = prism_allied(n).unwrap();
            for id in g.vertices() {
                let expected = match g.label_of(id).unwrap().tag {
                    ClassTag::P => 3,
                    ClassTag::Q => 5,
                    ClassTag::R => 3,
                    ClassTag::S => 1,
                };
                assert_eq!(g.degree(id), expected, "vertex {id} in n={n}");
            }
        }
    }

    #[test]
    fn degree_census_web() {
        // p: 3, q: 4, r: 1 for every n.
        for n in [3, 5, 8] {
            let g = web(n).unwrap();
            for id in g.vertices() {
                let expected = match g.label_of(id).unwrap().tag {
                    ClassTag::P => 3,
                    ClassTag::Q => 4,
                    ClassTag::R => 1,
                    ClassTag::S => unreachable!(),
                };
                assert_eq!(g.degree(id), expected, "vertex {id} in n={n}");
            }
        }
    }

    #[test]
    fn label_layout() {
        let g = prism_allied(6).unwrap();
        assert_eq!(g.id_of("s1".parse().unwrap()).unwrap(), 18);
        let g = web(5).unwrap();
        assert_eq!(g.id_of("r3".parse().unwrap()).unwrap(), 12);
    }

    #[test]
    fn label_round_trip() {
        let g = prism_allied(5).unwrap();
        for id in g.vertices() {
            let label = g.label_of(id).unwrap();
            assert_eq!(g.id_of(label).unwrap(), id);
        }
    }

    #[test]
    fn index_wraps_modulo_n() {
        let g = web(5).unwrap();
        let r6: VertexClass = "r6".parse().unwrap();
        assert_eq!(g.id_of(r6).unwrap(), g.id_of("r1".parse().unwrap()).unwrap());
        // edge r_n q_{n+1} equals r_n q_1
        let g = prism_allied(4).unwrap();
        let rn = g.id_of("r4".parse().unwrap()).unwrap();
        let q1 = g.id_of("q5".parse().unwrap()).unwrap();
        assert_eq!(q1, g.id_of("q1".parse().unwrap()).unwrap());
        assert!(g.has_edge(rn, q1));
    }

    #[test]
    fn unlabeled_graph_errors() {
        let g = cycle(4).unwrap();
        assert!(matches!(g.label_of(0), Err(FamilyError::UnlabeledGraph)));
        assert!(matches!(
            g.id_of("p1".parse().unwrap()),
            Err(FamilyError::UnlabeledGraph)
        ));
    }

    #[test]
    fn unknown_label_errors() {
        let g = web(4).unwrap();
        // no s class in the web graph
        assert!(matches!(
            g.id_of("s2".parse().unwrap()),
            Err(FamilyError::UnknownLabel(_))
        ));
    }

    #[test]
    fn label_parsing() {
        assert_eq!("q12".parse::<VertexClass>().unwrap(), VertexClass::new(ClassTag::Q, 12));
        assert!("x3".parse::<VertexClass>().is_err());
        assert!("p0".parse::<VertexClass>().is_err());
        assert!("p".parse::<VertexClass>().is_err());
        assert_eq!("prism_allied".parse::<Family>().unwrap(), Family::PrismAllied);
        assert!("grid".parse::<Family>().is_err());
        assert!("cycle".parse::<PaperFamily>().is_err());
    }
}
