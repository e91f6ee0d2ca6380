//! Combinatorial curve configurations on closed oriented surfaces.
//!
//! A [`Scene`] is a rotation system: every vertex lists its half-edges in
//! counterclockwise order, every edge pairs two half-edges and belongs to
//! a curve. Crossings are 4-valent with alternating curve labels; plain
//! points on a curve are 2-valent.

mod build;
mod canon;
mod census;
pub mod corpus;
mod error;
pub mod io;
mod model;
mod ops;
mod topology;

pub use build::{flat_torus_scene, torus_grid_scene, torus_line_scene, FlatCurve};
pub use canon::{canonical_form, isomorphic, CanonicalForm};
pub use census::{
    components, crossing_count, torus_class_of_component, trivial_components,
    trivial_components_among, Component, ComponentCensus,
};
pub use error::{Result, SceneError};
pub use model::{CurveId, CurveRecord, Edge, EdgeId, HalfEdgeId, Scene, Smoothing, Vertex, VertexId};
pub use ops::{
    check_region_condition, corner_patterns, find_bigons, parallel_copies, resolve, resolve_with,
    CornerPattern, SmoothingConvention,
};
pub use topology::{
    euler_genus, regions, trace_faces, validate, validate_structure, Diagnostics, Face, Region,
};

#[cfg(test)]
mod tests;
