use thiserror::Error;

use super::model::{CurveId, EdgeId, HalfEdgeId, VertexId};
use crate::torus::TorusError;

#[derive(Debug, Error)]
pub enum SceneError {
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(VertexId),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(EdgeId),
    #[error("half-edge {0} is listed more than once")]
    DuplicateHalfEdge(HalfEdgeId),
    #[error("half-edge {0} is not attached to both a vertex and an edge")]
    DanglingHalfEdge(HalfEdgeId),
    #[error("duplicate curve id {0}")]
    DuplicateCurve(CurveId),
    #[error("unknown curve {0}")]
    UnknownCurve(CurveId),
    #[error("vertex {vertex} has degree {degree}; expected 2 or 4")]
    InvalidDegree { vertex: VertexId, degree: usize },
    #[error("crossing {0} does not alternate between two distinct curves")]
    NonAlternatingCrossing(VertexId),
    #[error("curve changes label at plain vertex {0}: curves must be closed")]
    OpenCurve(VertexId),
    #[error("curve {curve} has {found} components, expected {expected}")]
    ComponentCountMismatch {
        curve: CurveId,
        expected: usize,
        found: usize,
    },
    #[error("malformed smoothing record: {0}")]
    BadSmoothing(String),
    #[error("configuration is not cellular: {0}")]
    NonCellular(String),
    #[error("rotation system is corrupt: {0}")]
    NonOrientableOrCorrupt(String),
    #[error("curves {from} and {to} bound a bigon; they are not in minimal position")]
    BigonPresent { from: CurveId, to: CurveId },
    #[error("a curve cannot be resolved against itself ({0})")]
    SameCurve(CurveId),
    #[error("slopes ({0},{1}) and ({2},{3}) are parallel")]
    ParallelSlopes(i64, i64, i64, i64),
    #[error("degenerate flat configuration: {0}")]
    DegenerateConfiguration(String),
    #[error("component {0} passes through crossings")]
    ComponentHasCrossings(usize),
    #[error("scene has no homology markers")]
    MissingMarkers,
    #[error("component {0} is null-homologous")]
    NullHomologous(usize),
    #[error("no component with index {0}")]
    UnknownComponent(usize),
    #[error("copy count must be positive, got {0}")]
    InvalidCount(i64),
    #[error("curve {0} has {1} components; expected a single loop")]
    NotSingleComponent(CurveId, usize),
    #[error("curve {0} runs through a smoothed crossing")]
    SmoothedCurve(CurveId),
    #[error(transparent)]
    Torus(#[from] TorusError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed scene file: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, SceneError>;
