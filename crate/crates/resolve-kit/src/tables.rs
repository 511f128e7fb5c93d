//! Closed-form code tables for the two plane graph families (both parity
//! cases), a BFS cross-validation harness, and the collision census for the
//! 5-landmark reference set.
//!
//! BFS distances are ground truth here; the tabulated closed forms are
//! claims under test. Mismatches and rows absent from the source tables are
//! reported verbatim, never corrected.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::families::{ClassTag, PaperFamily, VertexClass};
use crate::graph::{Edge, GraphElement};
use crate::resolve::{code_classes, element_universe, mixed_code, LandmarkSet, MixedCode, ResolutionMode};

/// Smallest n for which the closed-form tables are stated (ℵ ≥ 3).
pub const MIN_TABLE_N: usize = 6;

#[derive(Debug, Error)]
pub enum TableError {
    #[error("closed-form tables are stated for n >= {MIN_TABLE_N}, got n = {0}")]
    NBelowTableRange(usize),
    #[error("no table row covers {element} in {family} with n = {n}")]
    UnknownRow { family: PaperFamily, n: usize, element: FamilyElement },
    #[error("collision census does not match the predicted pattern for {} n={}: {} extra, {} missing",
        .0.family, .0.n, .0.extra.len(), .0.missing.len())]
    CensusMismatch(Box<CensusReport>),
    #[error(transparent)]
    Family(#[from] crate::families::FamilyError),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
    #[error(transparent)]
    Resolve(#[from] crate::resolve::ResolveError),
}

/// Row family of the tables: a vertex class or an edge class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementClass {
    VertexP,
    VertexQ,
    VertexR,
    VertexS,
    EdgePp,
    EdgePq,
    EdgeQq,
    EdgeQr,
    EdgeRqNext,
    EdgeRs,
}

impl ElementClass {
    pub fn is_vertex(self) -> bool {
        matches!(
            self,
            ElementClass::VertexP
                | ElementClass::VertexQ
                | ElementClass::VertexR
                | ElementClass::VertexS
        )
    }

    /// Classes present in a family, vertex classes first, in table order.
    pub fn all_for(family: PaperFamily) -> &'static [ElementClass] {
        match family {
            PaperFamily::PrismAllied => &[
                ElementClass::VertexP,
                ElementClass::VertexQ,
                ElementClass::VertexR,
                ElementClass::VertexS,
                ElementClass::EdgePp,
                ElementClass::EdgePq,
                ElementClass::EdgeQq,
                ElementClass::EdgeQr,
                ElementClass::EdgeRqNext,
                ElementClass::EdgeRs,
            ],
            PaperFamily::Web => &[
                ElementClass::VertexP,
                ElementClass::VertexQ,
                ElementClass::VertexR,
                ElementClass::EdgePp,
                ElementClass::EdgePq,
                ElementClass::EdgeQq,
                ElementClass::EdgeQr,
            ],
        }
    }
}

/// One tabulated element: a class plus its index £ in 1..=n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FamilyElement {
    pub class: ElementClass,
    pub index: u32,
}

impl FamilyElement {
    pub fn new(class: ElementClass, index: u32) -> Self {
        FamilyElement { class, index }
    }

    /// The underlying graph element under the canonical family id layout.
    pub fn to_graph_element(self, family: PaperFamily, n: usize) -> GraphElement {
        let n32 = n as u32;
        let wrap = |i: u32| (i - 1) % n32;
        let p = |i: u32| wrap(i);
        let q = |i: u32| n32 + wrap(i);
        let r = |i: u32| 2 * n32 + wrap(i);
        let s = |i: u32| 3 * n32 + wrap(i);
        debug_assert!(family == PaperFamily::PrismAllied || !matches!(self.class, ElementClass::VertexS | ElementClass::EdgeRqNext | ElementClass::EdgeRs));
        let i = self.index;
        match self.class {
            ElementClass::VertexP => GraphElement::vertex(p(i)),
            ElementClass::VertexQ => GraphElement::vertex(q(i)),
            ElementClass::VertexR => GraphElement::vertex(r(i)),
            ElementClass::VertexS => GraphElement::vertex(s(i)),
            ElementClass::EdgePp => GraphElement::edge(Edge::new(p(i), p(i + 1))),
            ElementClass::EdgePq => GraphElement::edge(Edge::new(p(i), q(i))),
            ElementClass::EdgeQq => GraphElement::edge(Edge::new(q(i), q(i + 1))),
            ElementClass::EdgeQr => GraphElement::edge(Edge::new(q(i), r(i))),
            ElementClass::EdgeRqNext => GraphElement::edge(Edge::new(r(i), q(i + 1))),
            ElementClass::EdgeRs => GraphElement::edge(Edge::new(r(i), s(i))),
        }
    }
}

impl fmt::Display for FamilyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = self.index;
        match self.class {
            ElementClass::VertexP => write!(f, "p{i}"),
            ElementClass::VertexQ => write!(f, "q{i}"),
            ElementClass::VertexR => write!(f, "r{i}"),
            ElementClass::VertexS => write!(f, "s{i}"),
            ElementClass::EdgePp => write!(f, "p{i}p{}", i + 1),
            ElementClass::EdgePq => write!(f, "p{i}q{i}"),
            ElementClass::EdgeQq => write!(f, "q{i}q{}", i + 1),
            ElementClass::EdgeQr => write!(f, "q{i}r{i}"),
            ElementClass::EdgeRqNext => write!(f, "r{i}q{}", i + 1),
            ElementClass::EdgeRs => write!(f, "r{i}s{i}"),
        }
    }
}

/// The five-landmark reference set M*: {p_1, s_1, s_2, s_{ℵ+1}, s_{ℵ+2}}
/// for the prism-allied graph, {p_1, r_1, r_2, r_{ℵ+1}, r_{ℵ+2}} for the
/// web graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReferenceSet {
    pub family: PaperFamily,
    pub n: usize,
    pub aleph: usize,
    pub landmarks: LandmarkSet,
    pub labels: Vec<VertexClass>,
}

/// ℵ from n: n = 2ℵ (even) or n = 2ℵ + 1 (odd).
pub fn aleph_of(n: usize) -> usize {
    n / 2
}

pub fn reference_set(family: PaperFamily, n: usize) -> Result<ReferenceSet, TableError> {
    if n < MIN_TABLE_N {
        return Err(TableError::NBelowTableRange(n));
    }
    let aleph = aleph_of(n);
    let tag = family.pendant_tag();
    let labels: Vec<VertexClass> = [
        VertexClass::new(ClassTag::P, 1),
        VertexClass::new(tag, 1),
        VertexClass::new(tag, 2),
        VertexClass::new(tag, aleph as u32 + 1),
        VertexClass::new(tag, aleph as u32 + 2),
    ]
    .into_iter()
    .map(|c| c.reduced(n))
    .collect();
    let g = family.generate(n)?;
    let ids = labels.iter().map(|&c| g.id_of(c).unwrap()).collect();
    Ok(ReferenceSet { family, n, aleph, landmarks: LandmarkSet::new(ids, &g)?, labels })
}

/// Evaluates the matching table row at (£, ℵ) in exact signed arithmetic.
/// `None` when the source tables contain no row for this element.
fn formula(family: PaperFamily, even: bool, class: ElementClass, l: i64, a: i64) -> Option<[i64; 5]> {
    use ElementClass::*;
    let in_range = |lo: i64, hi: i64| lo <= l && l <= hi;
    let row = match (family, even, class) {
        (PaperFamily::PrismAllied, true, VertexP) => match l {
            1 => [l - 1, 3, 4, a + 2, a + 1],
            2 => [l - 1, l + 1, 3, a - l + 4, a + 2],
            _ if in_range(3, a + 1) => [l - 1, l + 1, l, a - l + 4, a - l + 5],
            _ if l == a + 2 => [2 * a - l + 1, 2 * a - l + 4, l, l - a + 1, a - l + 5],
            _ if in_range(a + 3, 2 * a) => {
                [2 * a - l + 1, 2 * a - l + 4, 2 * a - l + 5, l - a + 1, l - a]
            }
            _ => return None,
        },
        (PaperFamily::PrismAllied, true, VertexQ) => match l {
            1 => [l, 2, 3, a + 1, a],
            2 => [l, l, 2, a - l + 3, a + 1],
            _ if in_range(3, a + 1) => [l, l, l - 1, a - l + 3, a - l + 4],
            _ if l == a + 2 => [2 * a - l + 2, 2 * a - l + 3, l - 1, l - a, a - l + 4],
            _ if in_range(a + 3, 2 * a) => {
                [2 * a - l + 2, 2 * a - l + 3, 2 * a - l + 4, l - a, l - a - 1]
            }
            _ => return None,
        },
        (PaperFamily::PrismAllied, true, VertexR) => match l {
            1 => [l + 1, 1, 3, a - l + 3, a + 1],
            2 => [l + 1, l + 1, 1, a - l + 3, a - l + 4],
            _ if in_range(3, a) => [l + 1, l + 1, l, a - l + 3, a - l + 4],
            _ if l == a + 1 => [2 * a - l + 2, l + 1, l, 1, a - l + 4],
            _ if l == a + 2 => [2 * a - l + 2, 2 * a - l + 3, l, l - a + 1, 1],
            _ if in_range(a + 3, 2 * a) => {
                [2 * a - l + 2, 2 * a - l + 3, 2 * a - l + 4, l - a + 1, l - a]
            }
            _ => return None,
        },
        (PaperFamily::PrismAllied, true, VertexS) => match l {
            1 => [l + 2, 0, 4, a - l + 4, a + 2],
            2 => [l + 2, l + 2, 0, a - l + 4, a - l + 5],
            _ if in_range(3, a) => [l + 2, l + 2, l + 1, a - l + 4, a - l + 5],
            _ if l == a + 1 => [2 * a - l + 3, 2 * a - l + 4, l + 1, 0, a - l + 5],
            _ if l == a + 2 => [2 * a - l + 3, 2 * a - l + 4, 2 * a - l + 5, l - a + 2, 0],
            _ if in_range(a + 3, 2 * a) => {
                [2 * a - l + 3, 2 * a - l + 4, 2 * a - l + 5, l - a + 2, l - a + 1]
            }
            _ => return None,
        },
        (PaperFamily::PrismAllied, true, EdgePp) => match l {
            1 => [l - 1, 3, 3, a - l + 3, a + 1],
            2 => [l - 1, l + 1, 3, a - l + 3, a - l + 4],
            _ if in_range(3, a) => [l - 1, l + 1, l, a - l + 3, a - l + 4],
            _ if l == a + 1 => [2 * a - l, 2 * a - l + 3, l, 3, a - l + 4],
            _ if l == a + 2 => [2 * a - l, 2 * a - l + 3, 2 * a - l + 4, l - a + 1, 3],
            _ if in_range(a + 3, 2 * a) => {
                [2 * a - l, 2 * a - l + 3, 2 * a - l + 4, l - a + 1, l - a]
            }
            _ => return None,
        },
        (PaperFamily::PrismAllied, true, EdgePq) => match l {
            1 => [l - 1, 2, 3, a + 1, a],
            2 => [l - 1, l, 2, a - l + 3, a + 1],
            _ if in_range(3, a + 1) => [l - 1, l, l - 1, a - l + 3, a - l + 4],
            _ if l == a + 2 => [2 * a - l + 1, 2 * a - l + 3, l - 1, l - a, a - l + 4],
            _ if in_range(a + 3, 2 * a) => {
                [2 * a - l + 1, 2 * a - l + 3, 2 * a - l + 4, l - a, l - a - 1]
            }
            _ => return None,
        },
        (PaperFamily::PrismAllied, true, EdgeQq) => match l {
            1 => [l, 2, 2, a - l + 2, a],
            2 => [l, l, 2, a - l + 2, a - l + 3],
            _ if in_range(3, a) => [l, l, l - 1, a - l + 2, a - l + 3],
            _ if l == a + 1 => [2 * a - l + 1, 2 * a - l + 2, l - 1, 2, a - l + 3],
            _ if l == a + 2 => [2 * a - l + 1, 2 * a - l + 2, 2 * a - l + 3, l - a, 2],
            _ if in_range(a + 3, 2 * a) => {
                [2 * a - l + 1, 2 * a - l + 2, 2 * a - l + 3, l - a, l - a - 1]
            }
            _ => return None,
        },
        (PaperFamily::PrismAllied, true, EdgeQr) => match l {
            1 => [l, 1, 3, a + 1, a],
            2 => [l, l, 3, a - l + 2, a - l + 4],
            _ if in_range(3, a) => [l, l, l - 1, a - l + 3, a - l + 4],
            _ if l == a + 1 => [l, l, l - 1, 1, a - l + 4],
            _ if l == a + 2 => [2 * a - l + 2, 2 * a - l + 3, l - 1, l - a, 1],
            _ if in_range(a + 3, 2 * a) => {
                [2 * a - l + 2, 2 * a - l + 3, 2 * a - l + 4, l - a, l - a - 1]
            }
            _ => return None,
        },
        (PaperFamily::PrismAllied, true, EdgeRqNext) => match l {
            1 => [l + 1, 1, 2, a - l + 2, a + 1],
            2 => [l + 1, l + 1, 1, a - l + 2, a - l + 3],
            _ if in_range(3, a) => [l + 1, l + 1, l, a - l + 2, a - l + 3],
            _ if l == a + 1 => [2 * a - l + 1, 2 * a - l + 2, l, 1, a - l + 3],
            _ if l == a + 2 => [2 * a - l + 1, 2 * a - l + 2, 2 * a - l + 3, l - a + 1, 1],
            _ if in_range(a + 3, 2 * a) => {
                [2 * a - l + 1, 2 * a - l + 2, 2 * a - l + 3, l - a + 1, l - a]
            }
            _ => return None,
        },
        (PaperFamily::PrismAllied, true, EdgeRs) => match l {
            1 => [l + 1, 0, 3, a - l + 3, a + 1],
            2 => [l + 1, l + 1, 0, a - l + 3, a - l + 4],
            _ if in_range(3, a) => [l + 1, l + 1, l, a - l + 3, a - l + 4],
            _ if l == a + 1 => [2 * a - l + 2, 2 * a - l + 3, l, 0, a - l + 4],
            _ if l == a + 2 => [2 * a - l + 2, 2 * a - l + 3, 2 * a - l + 4, l - a + 1, 0],
            _ if in_range(a + 3, 2 * a) => {
                [2 * a - l + 2, 2 * a - l + 3, 2 * a - l + 4, l - a + 1, l - a]
            }
            _ => return None,
        },
        (PaperFamily::PrismAllied, false, VertexP) => match l {
            1 => [l - 1, 3, 4, a - l + 4, a + 2],
            2 => [l - 1, l + 1, 3, a - l + 4, a - l + 5],
            _ if in_range(3, a + 1) => [l - 1, l + 1, l, a - l + 4, a - l + 5],
            _ if l == a + 2 => [2 * a - l + 2, 2 * a - l + 5, l, l - a + 1, a - l + 5],
            _ if in_range(a + 3, 2 * a + 1) => {
                [2 * a - l + 2, 2 * a - l + 5, 2 * a - l + 6, l - a + 1, l - a]
            }
            _ => return None,
        },
        (PaperFamily::PrismAllied, false, VertexQ) => match l {
            1 => [l, 2, 3, a - l + 3, a + 1],
            2 => [l, l, 2, a - l + 3, a - l + 4],
            _ if in_range(3, a + 1) => [l, l, l - 1, a - l + 3, a - l + 4],
            _ if l == a + 2 => [2 * a - l + 3, 2 * a - l + 4, l - 1, l - a, a - l + 4],
            _ if in_range(a + 3, 2 * a + 1) => {
                [2 * a - l + 3, 2 * a - l + 4, 2 * a - l + 5, l - a, l - a - 1]
            }
            _ => return None,
        },
        (PaperFamily::PrismAllied, false, VertexR) => match l {
            1 => [l + 1, 1, 3, a - l + 3, a + 2],
            2 => [l + 1, l + 1, 1, a - l + 3, a - l + 4],
            _ if in_range(3, a) => [l + 1, l + 1, l, a - l + 3, a - l + 4],
            _ if l == a + 1 => [l + 1, l + 1, l, 1, a - l + 4],
            _ if l == a + 2 => [2 * a - l + 3, 2 * a - l + 4, l, l - a + 1, 1],
            _ if in_range(a + 3, 2 * a + 1) => {
                [2 * a - l + 3, 2 * a - l + 4, 2 * a - l + 5, l - a + 1, l - a]
            }
            _ => return None,
        },
        (PaperFamily::PrismAllied, false, VertexS) => match l {
            1 => [l + 2, 0, 4, a - l + 4, a + 3],
            2 => [l + 2, l + 2, 0, a - l + 4, a - l + 5],
            _ if in_range(3, a) => [l + 2, l + 2, l + 1, a - l + 4, a - l + 5],
            _ if l == a + 1 => [l + 2, l + 2, l + 1, 0, a - l + 5],
            _ if l == a + 2 => [2 * a - l + 4, 2 * a - l + 5, l + 1, l - a + 2, 0],
            _ if in_range(a + 3, 2 * a + 1) => {
                [2 * a - l + 4, 2 * a - l + 5, 2 * a - l + 6, l - a + 2, l - a + 1]
            }
            _ => return None,
        },
        (PaperFamily::PrismAllied, false, EdgePp) => match l {
            1 => [l - 1, 3, 3, a - l + 3, a + 2],
            2 => [l - 1, l + 1, 3, a - l + 3, a - l + 4],
            _ if in_range(3, a) => [l - 1, l + 1, l, a - l + 3, a - l + 4],
            _ if l == a + 1 => [2 * a - l + 1, l + 1, l, 3, a - l + 4],
            _ if l == a + 2 => [2 * a - l + 1, 2 * a - l + 4, l, l - a + 1, 3],
            _ if in_range(a + 3, 2 * a + 1) => {
                [2 * a - l + 1, 2 * a - l + 4, 2 * a - l + 5, l - a + 1, l - a]
            }
            _ => return None,
        },
        (PaperFamily::PrismAllied, false, EdgePq) => match l {
            1 => [l - 1, 2, 3, a - l + 3, a + 1],
            2 => [l - 1, l, 2, a - l + 3, a - l + 4],
            _ if in_range(3, a + 1) => [l - 1, l, l - 1, a - l + 3, a - l + 4],
            _ if l == a + 2 => [2 * a - l + 2, 2 * a - l + 4, l - 1, l - a, a - l + 4],
            _ if in_range(a + 3, 2 * a + 1) => {
                [2 * a - l + 2, 2 * a - l + 4, 2 * a - l + 5, l - a, l - a - 1]
            }
            _ => return None,
        },
        (PaperFamily::PrismAllied, false, EdgeQq) => match l {
            1 => [l, 2, 2, a - l + 2, a + 1],
            2 => [l, l, 2, a - l + 2, a - l + 3],
            _ if in_range(3, a) => [l, l, l - 1, a - l + 2, a - l + 3],
            _ if l == a + 1 => [2 * a - l + 2, l, l - 1, 2, a - l + 3],
            _ if l == a + 2 => [2 * a - l + 2, 2 * a - l + 3, l - 1, l - a, 2],
            _ if in_range(a + 3, 2 * a + 1) => {
                [2 * a - l + 2, 2 * a - l + 3, 2 * a - l + 4, l - a, l - a - 1]
            }
            _ => return None,
        },
        (PaperFamily::PrismAllied, false, EdgeQr) => match l {
            1 => [l, 1, 3, a - l + 3, a + 1],
            2 => [l, l, 1, a - l + 3, a - l + 4],
            _ if in_range(3, a) => [l, l, l - 1, a - l + 3, a - l + 4],
            _ if l == a + 1 => [l, l, l - 1, 1, a - l + 4],
            _ if l == a + 2 => [2 * a - l + 3, 2 * a - l + 4, l - 1, l - a, 1],
            _ if in_range(a + 3, 2 * a + 1) => {
                [2 * a - l + 3, 2 * a - l + 4, 2 * a - l + 5, l - a, l - a - 1]
            }
            _ => return None,
        },
        (PaperFamily::PrismAllied, false, EdgeRqNext) => match l {
            1 => [l + 1, 1, 2, a - l + 2, a - l + 3],
            2 => [l + 1, l + 1, 1, a - l + 2, a - l + 3],
            _ if in_range(3, a) => [l + 1, l + 1, l, a - l + 2, a - l + 3],
            _ if l == a + 1 => [2 * a - l + 2, 2 * a - l + 3, l, 1, a - l + 3],
            _ if l == a + 2 => [2 * a - l + 2, 2 * a - l + 3, 2 * a - l + 4, l - a + 1, 1],
            _ if in_range(a + 3, 2 * a + 1) => {
                [2 * a - l + 2, 2 * a - l + 3, 2 * a - l + 4, l - a + 1, l - a]
            }
            _ => return None,
        },
        (PaperFamily::PrismAllied, false, EdgeRs) => match l {
            1 => [l + 1, 0, 3, a - l + 3, a + 2],
            2 => [l + 1, l + 1, 0, a - l + 3, a - l + 4],
            _ if in_range(3, a) => [l + 1, l + 1, l, a - l + 3, a - l + 4],
            _ if l == a + 1 => [l + 1, l + 1, l, 0, a - l + 4],
            _ if l == a + 2 => [2 * a - l + 3, 2 * a - l + 4, l, l - a + 1, 0],
            _ if in_range(a + 3, 2 * a + 1) => {
                [2 * a - l + 3, 2 * a - l + 4, 2 * a - l + 5, l - a + 1, l - a]
            }
            _ => return None,
        },
        (PaperFamily::Web, true, VertexP) => match l {
            1 => [l - 1, l + 1, 3, a - l + 3, a + 1],
            _ if in_range(2, a + 1) => [l - 1, l + 1, l, a - l + 3, a - l + 4],
            _ if l == a + 2 => [2 * a - l + 1, 2 * a - l + 3, l, l - a + 1, a - l + 4],
            _ if in_range(a + 3, 2 * a) => {
                [2 * a - l + 1, 2 * a - l + 3, 2 * a - l + 4, l - a + 1, l - a]
            }
            _ => return None,
        },
        (PaperFamily::Web, true, VertexQ) => match l {
            1 => [l, l, 2, a - l + 2, a],
            _ if in_range(2, a + 1) => [l, l, l - 1, a - l + 2, a - l + 3],
            _ if l == a + 2 => [2 * a - l + 2, 2 * a - l + 2, l - 1, l - a, a - l + 3],
            _ if in_range(a + 3, 2 * a) => {
                [2 * a - l + 2, 2 * a - l + 2, 2 * a - l + 3, l - a, l - a - 1]
            }
            _ => return None,
        },
        (PaperFamily::Web, true, VertexR) => match l {
            1 => [l + 1, 0, 3, a - l + 3, a + 1],
            2 => [l + 1, l + 1, 0, a - l + 3, a - l + 4],
            _ if in_range(3, a) => [l + 1, l + 1, l, a - l + 3, a - l + 4],
            _ if l == a + 1 => [l + 1, l + 1, l, 0, a - l + 4],
            _ if l == a + 2 => [2 * a - l + 3, 2 * a - l + 3, l, l - a + 1, 0],
            _ if in_range(a + 3, 2 * a) => {
                [2 * a - l + 3, 2 * a - l + 3, 2 * a - l + 4, l - a + 1, l - a]
            }
            _ => return None,
        },
        (PaperFamily::Web, true, EdgePp) => match l {
            1 => [l - 1, l + 1, 2, a - l + 2, a + 1],
            _ if in_range(2, a) => [l - 1, l + 1, l, a - l + 2, a - l + 3],
            _ if l == a + 1 => [2 * a - l, 2 * a - l + 2, l, l - a + 1, a - l + 3],
            _ if in_range(a + 2, 2 * a) => {
                [2 * a - l, 2 * a - l + 2, 2 * a - l + 3, l - a + 1, l - a]
            }
            _ => return None,
        },
        // The source table for p_£ q_£ in the even case skips £ = 2.
        (PaperFamily::Web, true, EdgePq) => match l {
            1 => [l - 1, l, 2, a - l + 2, a],
            _ if in_range(3, a + 1) => [l - 1, l, l - 1, a - l + 2, a - l + 3],
            _ if l == a + 2 => [2 * a - l + 1, 2 * a - l + 2, l - 1, l - a, a - l + 3],
            _ if in_range(a + 3, 2 * a) => {
                [2 * a - l + 1, 2 * a - l + 2, 2 * a - l + 3, l - a, l - a - 1]
            }
            _ => return None,
        },
        (PaperFamily::Web, true, EdgeQq) => match l {
            1 => [l, l, 1, a - l + 1, a],
            _ if in_range(2, a) => [l, l, l - 1, a - l + 1, a - l + 2],
            _ if l == a + 1 => [2 * a - l + 1, 2 * a - l + 1, l - 1, l - a, a - l + 2],
            _ if in_range(a + 2, 2 * a) => {
                [2 * a - l + 1, 2 * a - l + 1, 2 * a - l + 2, l - a, l - a - 1]
            }
            _ => return None,
        },
        (PaperFamily::Web, true, EdgeQr) => match l {
            1 => [l, 0, 2, a - l + 2, a],
            2 => [l, l, 0, a - l + 2, a - l + 3],
            _ if in_range(3, a) => [l, l, l - 1, a - l + 2, a - l + 3],
            _ if l == a + 1 => [l, l, l - 1, 0, a - l + 3],
            _ if l == a + 2 => [2 * a - l + 2, 2 * a - l + 2, l - 1, l - a, 0],
            _ if in_range(a + 3, 2 * a) => {
                [2 * a - l + 2, 2 * a - l + 2, 2 * a - l + 3, l - a, l - a - 1]
            }
            _ => return None,
        },
        (PaperFamily::Web, false, VertexP) => match l {
            1 => [l - 1, l + 1, 3, a - l + 3, a + 2],
            _ if in_range(2, a + 1) => [l - 1, l + 1, l, a - l + 3, a - l + 4],
            _ if l == a + 2 => [2 * a - l + 2, 2 * a - l + 4, l, l - a + 1, a - l + 4],
            _ if in_range(a + 3, 2 * a + 1) => {
                [2 * a - l + 2, 2 * a - l + 4, 2 * a - l + 5, l - a + 1, l - a]
            }
            _ => return None,
        },
        (PaperFamily::Web, false, VertexQ) => match l {
            1 => [l, l, 2, a - l + 2, a + 1],
            _ if in_range(2, a + 1) => [l, l, l - 1, a - l + 2, a - l + 3],
            _ if l == a + 2 => [2 * a - l + 3, 2 * a - l + 3, l - 1, l - a, a - l + 3],
            _ if in_range(a + 3, 2 * a + 1) => {
                [2 * a - l + 3, 2 * a - l + 3, 2 * a - l + 4, l - a, l - a - 1]
            }
            _ => return None,
        },
        (PaperFamily::Web, false, VertexR) => match l {
            1 => [l + 1, 0, 3, a - l + 3, a + 2],
            2 => [l + 1, l + 1, 0, a - l + 3, a - l + 4],
            _ if in_range(3, a) => [l + 1, l + 1, l, a - l + 3, a - l + 4],
            _ if l == a + 1 => [l + 1, l + 1, l, 0, a - l + 4],
            _ if l == a + 2 => [2 * a - l + 4, 2 * a - l + 4, l, l - a + 1, 0],
            _ if in_range(a + 3, 2 * a + 1) => {
                [2 * a - l + 4, 2 * a - l + 4, 2 * a - l + 5, l - a + 1, l - a]
            }
            _ => return None,
        },
        (PaperFamily::Web, false, EdgePp) => match l {
            1 => [l - 1, l + 1, 2, a - l + 2, a - l + 3],
            _ if in_range(2, a) => [l - 1, l + 1, l, a - l + 2, a - l + 3],
            _ if l == a + 1 => [l - 1, l + 1, l, l - a + 1, a - l + 3],
            _ if l == a + 2 => [2 * a - l + 1, 2 * a - l + 3, l, l - a + 1, l - a],
            _ if in_range(a + 3, 2 * a + 1) => {
                [2 * a - l + 1, 2 * a - l + 3, 2 * a - l + 4, l - a + 1, l - a]
            }
            _ => return None,
        },
        (PaperFamily::Web, false, EdgePq) => match l {
            1 => [l - 1, l, 2, a - l + 2, a + 1],
            _ if in_range(2, a + 1) => [l - 1, l, l - 1, a - l + 2, a - l + 3],
            _ if l == a + 2 => [2 * a - l + 2, 2 * a - l + 3, l - 1, l - a, a - l + 3],
            _ if in_range(a + 3, 2 * a + 1) => {
                [2 * a - l + 2, 2 * a - l + 3, 2 * a - l + 4, l - a, l - a - 1]
            }
            _ => return None,
        },
        (PaperFamily::Web, false, EdgeQq) => match l {
            1 => [l, l, 1, a - l + 1, a - l + 2],
            _ if in_range(2, a) => [l, l, l - 1, a - l + 1, a - l + 2],
            _ if l == a + 1 => [l, l, l - 1, l - a, a - l + 2],
            _ if l == a + 2 => [2 * a - l + 2, 2 * a - l + 2, l - 1, l - a, l - a - 1],
            _ if in_range(a + 3, 2 * a + 1) => {
                [2 * a - l + 2, 2 * a - l + 2, 2 * a - l + 3, l - a, l - a - 1]
            }
            _ => return None,
        },
        (PaperFamily::Web, false, EdgeQr) => match l {
            1 => [l, 0, 2, a - l + 2, a + 1],
            2 => [l, l, 0, a - l + 2, a - l + 3],
            _ if in_range(3, a) => [l, l, l - 1, a - l + 2, a - l + 3],
            _ if l == a + 1 => [l, l, l - 1, 0, a - l + 3],
            _ if l == a + 2 => [2 * a - l + 3, 2 * a - l + 3, l - 1, l - a, 0],
            _ if in_range(a + 3, 2 * a + 1) => {
                [2 * a - l + 3, 2 * a - l + 3, 2 * a - l + 4, l - a, l - a - 1]
            }
            _ => return None,
        },
        _ => return None, // class not present in this family
    };
    Some(row)
}

/// Closed-form code of one tabulated element, selected by parity of n.
pub fn closed_form_code(
    family: PaperFamily,
    n: usize,
    element: FamilyElement,
) -> Result<MixedCode, TableError> {
    let raw = closed_form_raw(family, n, element)?
        .ok_or(TableError::UnknownRow { family, n, element })?;
    // valid rows of the source tables never go negative in range
    Ok(MixedCode(raw.iter().map(|&x| u32::try_from(x).unwrap_or(u32::MAX)).collect()))
}

/// Raw signed evaluation; `Ok(None)` marks a gap in the source tables.
fn closed_form_raw(
    family: PaperFamily,
    n: usize,
    element: FamilyElement,
) -> Result<Option<[i64; 5]>, TableError> {
    if n < MIN_TABLE_N {
        return Err(TableError::NBelowTableRange(n));
    }
    if !ElementClass::all_for(family).contains(&element.class)
        || element.index == 0
        || element.index as usize > n
    {
        return Err(TableError::UnknownRow { family, n, element });
    }
    let even = n % 2 == 0;
    Ok(formula(family, even, element.class, element.index as i64, aleph_of(n) as i64))
}

/// One disagreement between a table row and the BFS oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowMismatch {
    pub element: FamilyElement,
    pub element_label: String,
    pub formula: Vec<i64>,
    pub oracle: Vec<u32>,
}

/// An element whose £ falls in no row of its table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MissingRow {
    pub element: FamilyElement,
    pub element_label: String,
    pub oracle: Vec<u32>,
}

/// A pair of distinct elements sharing a code under some landmark set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CollisionPair {
    pub first: GraphElement,
    pub second: GraphElement,
}

impl CollisionPair {
    fn new(a: GraphElement, b: GraphElement) -> Self {
        if a <= b {
            CollisionPair { first: a, second: b }
        } else {
            CollisionPair { first: b, second: a }
        }
    }
}

/// Collision census of the mixed universe under the reference set M*,
/// diffed against the pattern the proofs predict.
///
/// The predicted pattern is the transitive closure of the per-£ identities:
/// for the prism-allied graph q_£ ~ q_£ r_£, q_{£+1} ~ r_£ q_{£+1}, and
/// r_£ ~ r_£ s_£; for the web graph q_£ ~ q_£ r_£; in each case for every
/// £ outside {1, 2, ℵ+1, ℵ+2}. Where two surviving £ share a q-vertex the
/// closure also pairs the two flanking edges with each other.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub family: PaperFamily,
    pub n: usize,
    pub aleph: usize,
    /// The reference landmarks M*.
    pub landmarks: Vec<String>,
    /// Every collision pair the oracle finds, sorted.
    pub actual: Vec<CollisionPair>,
    /// The paper's per-£ identities, sorted.
    pub predicted_base: Vec<CollisionPair>,
    /// Closure of the predicted identities, sorted.
    pub predicted: Vec<CollisionPair>,
    /// Oracle collisions outside the prediction.
    pub extra: Vec<CollisionPair>,
    /// Predicted collisions the oracle does not confirm.
    pub missing: Vec<CollisionPair>,
    pub matches: bool,
    /// Base pairs at £ that adding the £-th pendant fails to separate.
    pub separation_failures: Vec<CollisionPair>,
    pub separation_ok: bool,
}

fn predicted_identities(
    family: PaperFamily,
    n: usize,
) -> Vec<(u32, [FamilyElement; 2])> {
    let aleph = aleph_of(n) as u32;
    let excluded = [1, 2, aleph + 1, aleph + 2];
    let mut base = Vec::new();
    for l in 1..=n as u32 {
        if excluded.contains(&l) {
            continue;
        }
        let q = FamilyElement::new(ElementClass::VertexQ, l);
        let qr = FamilyElement::new(ElementClass::EdgeQr, l);
        base.push((l, [q, qr]));
        if family == PaperFamily::PrismAllied {
            let l_next = if l == n as u32 { 1 } else { l + 1 };
            let q_next = FamilyElement::new(ElementClass::VertexQ, l_next);
            let rq = FamilyElement::new(ElementClass::EdgeRqNext, l);
            base.push((l, [q_next, rq]));
            let r = FamilyElement::new(ElementClass::VertexR, l);
            let rs = FamilyElement::new(ElementClass::EdgeRs, l);
            base.push((l, [r, rs]));
        }
    }
    base
}

fn closure_pairs(base: &[(GraphElement, GraphElement)]) -> Vec<CollisionPair> {
    // union-find over the elements mentioned in the base identities
    let mut nodes: Vec<GraphElement> = Vec::new();
    let index = |nodes: &mut Vec<GraphElement>, el: GraphElement| {
        match nodes.iter().position(|&x| x == el) {
            Some(i) => i,
            None => {
                nodes.push(el);
                nodes.len() - 1
            }
        }
    };
    let mut edges = Vec::new();
    for &(a, b) in base {
        let ia = index(&mut nodes, a);
        let ib = index(&mut nodes, b);
        edges.push((ia, ib));
    }
    let mut parent: Vec<usize> = (0..nodes.len()).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for (a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    }
    let mut classes: std::collections::BTreeMap<usize, Vec<GraphElement>> = Default::default();
    for i in 0..nodes.len() {
        let root = find(&mut parent, i);
        classes.entry(root).or_default().push(nodes[i]);
    }
    let mut pairs = Vec::new();
    for class in classes.values() {
        let mut sorted = class.clone();
        sorted.sort();
        for i in 0..sorted.len() {
            for j in i + 1..sorted.len() {
                pairs.push(CollisionPair::new(sorted[i], sorted[j]));
            }
        }
    }
    pairs.sort();
    pairs
}

fn census_comparison(family: PaperFamily, n: usize) -> Result<CensusReport, TableError> {
    let reference = reference_set(family, n)?;
    let g = family.generate(n)?;
    let d = g.distances()?;

    let universe = element_universe(&g, ResolutionMode::Mixed);
    let classes = code_classes(&d, &universe, reference.landmarks.ids());
    let mut actual = Vec::new();
    for class in &classes {
        for i in 0..class.len() {
            for j in i + 1..class.len() {
                actual.push(CollisionPair::new(class[i], class[j]));
            }
        }
    }
    actual.sort();

    let identities = predicted_identities(family, n);
    let base_graph: Vec<(GraphElement, GraphElement)> = identities
        .iter()
        .map(|(_, [a, b])| (a.to_graph_element(family, n), b.to_graph_element(family, n)))
        .collect();
    let mut predicted_base: Vec<CollisionPair> =
        base_graph.iter().map(|&(a, b)| CollisionPair::new(a, b)).collect();
    predicted_base.sort();
    let predicted = closure_pairs(&base_graph);

    let extra: Vec<_> =
        actual.iter().filter(|p| !predicted.contains(p)).copied().collect();
    let missing: Vec<_> =
        predicted.iter().filter(|p| !actual.contains(p)).copied().collect();

    // the paper's separation step: the £-th pendant splits the £-th pairs
    let pendant_tag = family.pendant_tag();
    let mut separation_failures = Vec::new();
    for (l, [a, b]) in &identities {
        let pendant = g.id_of(VertexClass::new(pendant_tag, *l))?;
        let mut ids = reference.landmarks.ids().to_vec();
        ids.push(pendant);
        let extended = LandmarkSet::new(ids, &g)?;
        let (ga, gb) = (a.to_graph_element(family, n), b.to_graph_element(family, n));
        if mixed_code(&d, ga, &extended) == mixed_code(&d, gb, &extended) {
            separation_failures.push(CollisionPair::new(ga, gb));
        }
    }

    Ok(CensusReport {
        family,
        n,
        aleph: reference.aleph,
        landmarks: reference.labels.iter().map(|c| c.to_string()).collect(),
        matches: extra.is_empty() && missing.is_empty(),
        separation_ok: separation_failures.is_empty(),
        actual,
        predicted_base,
        predicted,
        extra,
        missing,
        separation_failures,
    })
}

/// Computes all code collisions under M* and checks them against the
/// predicted pattern. A differing collision set is an error carrying the
/// full diff.
pub fn collision_census(family: PaperFamily, n: usize) -> Result<CensusReport, TableError> {
    let report = census_comparison(family, n)?;
    if !report.matches {
        return Err(TableError::CensusMismatch(Box::new(report)));
    }
    Ok(report)
}

/// Full comparison of every tabulated closed form against the BFS oracle,
/// plus the collision census. Mismatches are data, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub family: PaperFamily,
    pub n: usize,
    pub aleph: usize,
    /// "even" (n = 2ℵ) or "odd" (n = 2ℵ + 1).
    pub parity: String,
    pub elements_checked: usize,
    pub mismatches: Vec<RowMismatch>,
    pub missing_rows: Vec<MissingRow>,
    pub census: CensusReport,
}

impl ValidationReport {
    pub fn tables_clean(&self) -> bool {
        self.mismatches.is_empty() && self.missing_rows.is_empty()
    }
}

/// Compares `closed_form_code` against BFS codes for every vertex and edge
/// of the family instance, in element order.
pub fn validate_tables(family: PaperFamily, n: usize) -> Result<ValidationReport, TableError> {
    let reference = reference_set(family, n)?;
    let g = family.generate(n)?;
    let d = g.distances()?;

    let mut items: Vec<(FamilyElement, GraphElement)> = Vec::new();
    for &class in ElementClass::all_for(family) {
        for l in 1..=n as u32 {
            let fe = FamilyElement::new(class, l);
            items.push((fe, fe.to_graph_element(family, n)));
        }
    }
    items.sort_by_key(|&(_, ge)| ge);

    let mut mismatches = Vec::new();
    let mut missing_rows = Vec::new();
    for (fe, ge) in &items {
        let oracle = mixed_code(&d, *ge, &reference.landmarks).0;
        match closed_form_raw(family, n, *fe)? {
            None => missing_rows.push(MissingRow {
                element: *fe,
                element_label: fe.to_string(),
                oracle,
            }),
            Some(raw) => {
                let agrees = raw.iter().zip(&oracle).all(|(&f, &o)| f == o as i64);
                if !agrees {
                    mismatches.push(RowMismatch {
                        element: *fe,
                        element_label: fe.to_string(),
                        formula: raw.to_vec(),
                        oracle,
                    });
                }
            }
        }
    }

    Ok(ValidationReport {
        family,
        n,
        aleph: reference.aleph,
        parity: if n % 2 == 0 { "even".into() } else { "odd".into() },
        elements_checked: items.len(),
        mismatches,
        missing_rows,
        census: census_comparison(family, n)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexId;
    use crate::resolve::is_generator;

    #[test]
    fn reference_sets() {
        let r = reference_set(PaperFamily::PrismAllied, 6).unwrap();
        assert_eq!(
            r.labels.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            ["p1", "s1", "s2", "s4", "s5"]
        );
        let r = reference_set(PaperFamily::Web, 7).unwrap();
        assert_eq!(
            r.labels.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            ["p1", "r1", "r2", "r4", "r5"]
        );
        let r = reference_set(PaperFamily::Web, 8).unwrap();
        assert_eq!(
            r.labels.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            ["p1", "r1", "r2", "r5", "r6"]
        );
        assert!(matches!(
            reference_set(PaperFamily::Web, 5),
            Err(TableError::NBelowTableRange(5))
        ));
    }

    #[test]
    fn closed_form_reference_values() {
        // s_1 in D^t_6
        let code = closed_form_code(
            PaperFamily::PrismAllied,
            6,
            FamilyElement::new(ElementClass::VertexS, 1),
        )
        .unwrap();
        assert_eq!(code.entries(), &[3, 0, 4, 6, 5]);
        // r_5 in W_8 (row £ = ℵ + 1)
        let code = closed_form_code(
            PaperFamily::Web,
            8,
            FamilyElement::new(ElementClass::VertexR, 5),
        )
        .unwrap();
        assert_eq!(code.entries(), &[6, 6, 5, 0, 3]);
        // q_2 q_3 in W_8 (row 2 <= £ <= ℵ)
        let code = closed_form_code(
            PaperFamily::Web,
            8,
            FamilyElement::new(ElementClass::EdgeQq, 2),
        )
        .unwrap();
        assert_eq!(code.entries(), &[2, 2, 1, 3, 4]);
    }

    #[test]
    fn landmark_rows_have_zero_at_own_position() {
        for (family, n) in [(PaperFamily::PrismAllied, 8), (PaperFamily::Web, 9)] {
            let aleph = aleph_of(n) as u32;
            let pend = match family {
                PaperFamily::PrismAllied => ElementClass::VertexS,
                PaperFamily::Web => ElementClass::VertexR,
            };
            for (pos, l) in [(1usize, 1u32), (2, 2), (3, aleph + 1), (4, aleph + 2)] {
                let code =
                    closed_form_code(family, n, FamilyElement::new(pend, l)).unwrap();
                assert_eq!(code.entries()[pos], 0, "{family} n={n} index {l}");
            }
        }
    }

    #[test]
    fn missing_row_is_unknown() {
        // the even-case table for p_£ q_£ has no row at £ = 2
        let err = closed_form_code(
            PaperFamily::Web,
            8,
            FamilyElement::new(ElementClass::EdgePq, 2),
        )
        .unwrap_err();
        assert!(matches!(err, TableError::UnknownRow { .. }));
        // s-class rows do not exist for the web graph
        let err = closed_form_code(
            PaperFamily::Web,
            8,
            FamilyElement::new(ElementClass::VertexS, 1),
        )
        .unwrap_err();
        assert!(matches!(err, TableError::UnknownRow { .. }));
    }

    #[test]
    fn validation_flags_known_rows_only() {
        // Even-case prism-allied tables carry exactly one transcription slip
        // (q_£ r_£ at £ = 2); even-case web tables lack the p_£ q_£ row at
        // £ = 2; odd-case tables agree with the oracle everywhere.
        for n in [6, 8, 10] {
            let report = validate_tables(PaperFamily::PrismAllied, n).unwrap();
            assert_eq!(report.elements_checked, 10 * n);
            let labels: Vec<_> =
                report.mismatches.iter().map(|m| m.element_label.clone()).collect();
            assert_eq!(labels, vec![format!("q2r2")], "n={n}");
            assert!(report.missing_rows.is_empty());

            let report = validate_tables(PaperFamily::Web, n).unwrap();
            assert_eq!(report.elements_checked, 7 * n);
            assert!(report.mismatches.is_empty(), "n={n}: {:?}", report.mismatches);
            let gaps: Vec<_> =
                report.missing_rows.iter().map(|m| m.element_label.clone()).collect();
            assert_eq!(gaps, vec![format!("p2q2")], "n={n}");
        }
        for n in [7, 9, 11] {
            for family in [PaperFamily::PrismAllied, PaperFamily::Web] {
                let report = validate_tables(family, n).unwrap();
                assert!(report.tables_clean(), "{family} n={n}");
            }
        }
    }

    #[test]
    fn prism_allied_qr2_mismatch_content() {
        let report = validate_tables(PaperFamily::PrismAllied, 6).unwrap();
        let m = &report.mismatches[0];
        assert_eq!(m.formula, vec![2, 2, 3, 3, 5]);
        assert_eq!(m.oracle, vec![2, 2, 1, 4, 4]);
    }

    #[test]
    fn census_matches_prediction() {
        // web: exactly one pair per surviving £
        let report = collision_census(PaperFamily::Web, 8).unwrap();
        assert_eq!(report.actual.len(), 4);
        assert_eq!(report.predicted_base.len(), 4);
        assert!(report.separation_ok);

        // prism-allied n=6: three pairs per surviving £ in {3, 6}, no closure extras
        let report = collision_census(PaperFamily::PrismAllied, 6).unwrap();
        assert_eq!(report.actual.len(), 6);
        assert_eq!(report.predicted_base.len(), 6);
        assert_eq!(report.predicted.len(), 6);
        assert!(report.separation_ok);

        // prism-allied n=8: surviving £ = {3, 4, 7, 8}; consecutive £ share a
        // q-vertex, so the closure adds one edge-edge pair per adjacency
        let report = collision_census(PaperFamily::PrismAllied, 8).unwrap();
        assert_eq!(report.predicted_base.len(), 12);
        assert_eq!(report.predicted.len(), 14);
        assert_eq!(report.actual.len(), 14);
        assert!(report.separation_ok);
    }

    #[test]
    fn census_holds_for_all_table_sizes() {
        for family in [PaperFamily::PrismAllied, PaperFamily::Web] {
            for n in 6..=11 {
                let report = collision_census(family, n).unwrap();
                assert!(report.matches && report.separation_ok, "{family} n={n}");
            }
        }
    }

    #[test]
    fn census_under_full_basis_is_empty() {
        // restates: the paper basis {p_1} ∪ pendants leaves no collisions
        for (family, n) in [(PaperFamily::PrismAllied, 9), (PaperFamily::Web, 12)] {
            let g = family.generate(n).unwrap();
            let d = g.distances().unwrap();
            let mut ids: Vec<VertexId> = vec![0];
            ids.extend(g.vertices().filter(|&v| {
                g.label_of(v).map(|l| l.tag) == Ok(family.pendant_tag())
            }));
            let basis = LandmarkSet::new(ids, &g).unwrap();
            let universe = element_universe(&g, ResolutionMode::Mixed);
            assert!(code_classes(&d, &universe, basis.ids()).is_empty());
            assert!(is_generator(&g, &d, &basis, ResolutionMode::Mixed)
                .unwrap()
                .is_generator);
        }
    }
}
