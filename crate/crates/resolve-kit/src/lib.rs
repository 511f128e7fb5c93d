//! Computation and certification of metric, edge metric, and mixed metric
//! dimensions of simple connected graphs.
//!
//! The library combines three routes to a dimension value and keeps them
//! honest against each other:
//!
//! - exact exhaustive subset search (optionally pruned by an
//!   evidence-verified forced set of pendant vertices),
//! - certified bounds: every degree-1 vertex belongs to every mixed metric
//!   generator, which yields machine-checkable lower-bound certificates and
//!   a polynomial-time verification that `mdim = n + 1` for the web graph
//!   and the prism-allied graph,
//! - closed-form code tables for those two families, cross-validated
//!   coordinate by coordinate against BFS distances.

pub mod families;
pub mod graph;
pub mod io;
pub mod resolve;
pub mod tables;

pub use families::{ClassTag, Family, FamilyError, PaperFamily, VertexClass};
pub use graph::{DistanceMatrix, Edge, Graph, GraphElement, GraphError, VertexId};
pub use resolve::{
    chain_check, element_universe, exact_dimension, forced_pendant_landmarks, greedy_upper_bound,
    is_generator, is_independent_set, lower_bound_certificate, mixed_code, verify_family_theorem,
    ChainReport, DimensionResult, GeneratorCheck, LandmarkSet, LeafEvidence,
    LowerBoundCertificate, MixedCode, ResolutionMode, ResolveError, SearchOptions, SearchStats,
    TheoremReport, DEFAULT_BUDGET,
};
pub use tables::{
    closed_form_code, collision_census, reference_set, validate_tables, CensusReport,
    ElementClass, FamilyElement, ReferenceSet, TableError, ValidationReport,
};
