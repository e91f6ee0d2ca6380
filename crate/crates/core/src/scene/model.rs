use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfEdgeId(pub u32);

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CurveId(pub String);

impl CurveId {
    pub fn new(s: impl Into<String>) -> Self {
        CurveId(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CurveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<String> for CurveId {
    fn from(s: String) -> Self {
        CurveId(s)
    }
}

impl From<&str> for CurveId {
    fn from(s: &str) -> Self {
        CurveId(s.to_string())
    }
}

macro_rules! display_id {
    ($($t:ty),*) => {$(
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0)
            }
        }
    )*};
}
display_id!(VertexId, EdgeId, HalfEdgeId);

/// A point of the configuration: a transverse crossing (4 half-edges) or a
/// plain point on one curve (2 half-edges).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: VertexId,
    pub halfedges_ccw: Vec<HalfEdgeId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    pub half: [HalfEdgeId; 2],
    pub curve: CurveId,
    /// Homology displacement from `half[0]`'s end to `half[1]`'s end
    /// (torus scenes only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marker: Option<[i64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub id: CurveId,
    /// Expected number of closed components, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<usize>,
}

/// A resolved crossing. `ccw` is the rotation the crossing had before it
/// was smoothed; the strands now join `ccw[0]`–`ccw[1]` and
/// `ccw[2]`–`ccw[3]`, each pair sitting on its own degree-2 vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Smoothing {
    pub ccw: [HalfEdgeId; 4],
}

/// A transverse multicurve on a closed oriented surface, stored as a
/// rotation system whose edges carry curve labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scene {
    pub name: String,
    /// Genus of the surface the configuration is meant to live on.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<u32>,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub curves: Vec<CurveRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub smoothings: Vec<Smoothing>,
}

impl Scene {
    pub fn has_curve(&self, id: &CurveId) -> bool {
        self.curves.iter().any(|c| &c.id == id)
    }

    pub fn curve_ids(&self) -> impl Iterator<Item = &CurveId> {
        self.curves.iter().map(|c| &c.id)
    }

    pub fn has_markers(&self) -> bool {
        !self.edges.is_empty() && self.edges.iter().all(|e| e.marker.is_some())
    }

    pub(crate) fn next_vertex_id(&self) -> u32 {
        self.vertices.iter().map(|v| v.id.0 + 1).max().unwrap_or(0)
    }

    pub(crate) fn next_edge_id(&self) -> u32 {
        self.edges.iter().map(|e| e.id.0 + 1).max().unwrap_or(0)
    }

    pub(crate) fn next_half_edge_id(&self) -> u32 {
        self.vertices
            .iter()
            .flat_map(|v| v.halfedges_ccw.iter())
            .chain(self.edges.iter().flat_map(|e| e.half.iter()))
            .map(|h| h.0 + 1)
            .max()
            .unwrap_or(0)
    }
}
