//! Immutable simple undirected graphs, BFS all-pairs distances, and the
//! vertex-to-edge distance rule.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::VertexClass;

/// Vertex identifier, always `< vertex_count` of its graph.
pub type VertexId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(VertexId, VertexId),
    #[error("vertex {vertex} out of range (vertex count {vertex_count})")]
    VertexOutOfRange { vertex: VertexId, vertex_count: usize },
    #[error("graph is disconnected: no path between {0} and {1}")]
    Disconnected(VertexId, VertexId),
    #[error("graph has no vertices")]
    Empty,
}

/// Undirected edge, stored as the sorted endpoint pair.
///
/// The sorted-pair representation is the edge's identity: `Edge::new(2, 1)`
/// equals `Edge::new(1, 2)`, and the derived `Ord` gives the lexicographic
/// enumeration order used for deterministic codes and witnesses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(VertexId, VertexId);

impl Edge {
    pub fn new(a: VertexId, b: VertexId) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn u(&self) -> VertexId {
        self.0
    }

    pub fn v(&self) -> VertexId {
        self.1
    }

    pub fn has_endpoint(&self, x: VertexId) -> bool {
        self.0 == x || self.1 == x
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

/// An element of the mixed universe V ∪ E: either a vertex or an edge.
///
/// The derived `Ord` places all vertices (by id) before all edges (by sorted
/// pair); collision witnesses are reported as the lexicographically first
/// pair under this order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GraphElement {
    Vertex { id: VertexId },
    Edge { u: VertexId, v: VertexId },
}

impl GraphElement {
    pub fn vertex(id: VertexId) -> Self {
        GraphElement::Vertex { id }
    }

    pub fn edge(e: Edge) -> Self {
        GraphElement::Edge { u: e.u(), v: e.v() }
    }
}

impl fmt::Display for GraphElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphElement::Vertex { id } => write!(f, "v{id}"),
            GraphElement::Edge { u, v } => write!(f, "e({u},{v})"),
        }
    }
}

/// Immutable simple undirected graph with optional class labels on vertices.
///
/// Construction validates everything up front (no self-loops, no duplicate
/// edges, endpoints in range); afterwards all queries are read-only.
#[derive(Debug, Clone)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<VertexId>>,
    labels: Option<Vec<Option<VertexClass>>>,
}

impl Graph {
    /// Builds a validated graph. The edge list is canonicalized: endpoints
    /// sorted within each pair, pairs sorted lexicographically. A repeated
    /// unordered pair is rejected as [`GraphError::DuplicateEdge`].
    pub fn new(vertex_count: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        if vertex_count == 0 {
            return Err(GraphError::Empty);
        }
        let mut canonical = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            for x in [a, b] {
                if x as usize >= vertex_count {
                    return Err(GraphError::VertexOutOfRange { vertex: x, vertex_count });
                }
            }
            canonical.push(Edge::new(a, b));
        }
        canonical.sort_unstable();
        if let Some(w) = canonical.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].u(), w[0].v()));
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        for e in &canonical {
            adjacency[e.u() as usize].push(e.v());
            adjacency[e.v() as usize].push(e.u());
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        Ok(Graph { vertex_count, edges: canonical, adjacency, labels: None })
    }

    pub(crate) fn with_labels(mut self, labels: Vec<Option<VertexClass>>) -> Self {
        debug_assert_eq!(labels.len(), self.vertex_count);
        self.labels = Some(labels);
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order of their sorted endpoint pairs.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        0..self.vertex_count as VertexId
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v as usize]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.edges.binary_search(&Edge::new(a, b)).is_ok()
    }

    pub(crate) fn labels(&self) -> Option<&[Option<VertexClass>]> {
        self.labels.as_deref()
    }

    pub fn is_labeled(&self) -> bool {
        self.labels.is_some()
    }

    /// True iff one breadth-first sweep from vertex 0 reaches every vertex.
    pub fn is_connected(&self) -> bool {
        self.bfs_from(0).iter().all(|d| d.is_some())
    }

    fn bfs_from(&self, source: VertexId) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.vertex_count];
        dist[source as usize] = Some(0);
        let mut queue = VecDeque::with_capacity(self.vertex_count);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize].unwrap();
            for &v in self.neighbors(u) {
                if dist[v as usize].is_none() {
                    dist[v as usize] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Breadth-first hop counts for every ordered vertex pair.
    ///
    /// Fails with [`GraphError::Disconnected`] naming one unreachable pair;
    /// no infinite-distance sentinel ever leaks into codes.
    pub fn distances(&self) -> Result<DistanceMatrix, GraphError> {
        let n = self.vertex_count;
        let mut dist = vec![0u32; n * n];
        for s in 0..n as VertexId {
            let row = self.bfs_from(s);
            for (t, d) in row.iter().enumerate() {
                match d {
                    Some(d) => dist[s as usize * n + t] = *d,
                    None => return Err(GraphError::Disconnected(s, t as VertexId)),
                }
            }
        }
        Ok(DistanceMatrix { n, dist })
    }
}

/// All-pairs hop-count table; the single source of truth for distances.
///
/// Symmetric with zero diagonal; all entries finite (construction fails on
/// disconnected input).
#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceMatrix {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertex_distance(&self, a: VertexId, b: VertexId) -> u32 {
        self.dist[a as usize * self.n + b as usize]
    }

    /// d(x, uv) = min(d(x, u), d(x, v)).
    #[inline]
    pub fn vertex_edge_distance(&self, x: VertexId, e: Edge) -> u32 {
        self.vertex_distance(x, e.u()).min(self.vertex_distance(x, e.v()))
    }

    /// Distance from a vertex to a mixed element.
    #[inline]
    pub fn element_distance(&self, x: VertexId, element: GraphElement) -> u32 {
        match element {
            GraphElement::Vertex { id } => self.vertex_distance(x, id),
            GraphElement::Edge { u, v } => {
                self.vertex_distance(x, u).min(self.vertex_distance(x, v))
            }
        }
    }

    pub fn diameter(&self) -> u32 {
        self.dist.iter().copied().max().unwrap_or(0)
    }
}
