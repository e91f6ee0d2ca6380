use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use super::error::{Result, SceneError};
use super::model::{CurveId, EdgeId, Scene};
use super::topology::{check_structure, layout, Darts};
use crate::torus::{normalize, TorusClass};

/// One closed component of a curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub curve: CurveId,
    /// Edges in traversal order.
    pub edges: Vec<EdgeId>,
    /// Crossings passed through.
    pub crossings: usize,
    /// Sum of oriented edge markers, when the scene carries them.
    pub homology: Option<[i64; 2]>,
}

impl Component {
    pub fn class(&self) -> Option<TorusClass> {
        self.homology.and_then(|[x, y]| normalize(x, y).ok())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentCensus {
    pub components: Vec<Component>,
}

impl ComponentCensus {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn of_curve<'a>(&'a self, curve: &'a CurveId) -> impl Iterator<Item = &'a Component> + 'a {
        self.components.iter().filter(move |c| &c.curve == curve)
    }

    /// Multiset of component classes, `None` for null-homologous ones.
    pub fn class_counts(&self) -> BTreeMap<Option<TorusClass>, usize> {
        let mut out = BTreeMap::new();
        for c in &self.components {
            *out.entry(c.class()).or_insert(0) += 1;
        }
        out
    }

    pub(crate) fn check_counts(&self, scene: &Scene) -> Result<()> {
        for record in &scene.curves {
            if let Some(expected) = record.components {
                let found = self.of_curve(&record.id).count();
                if found != expected {
                    return Err(SceneError::ComponentCountMismatch {
                        curve: record.id.clone(),
                        expected,
                        found,
                    });
                }
            }
        }
        Ok(())
    }
}

/// Dart through which a strand leaves the vertex it entered via `arrival`.
pub(crate) fn continue_through(darts: &Darts, scene: &Scene, arrival: usize) -> usize {
    let next = darts.sigma[arrival];
    if darts.degree(scene, arrival) == 4 {
        darts.sigma[next]
    } else {
        next
    }
}

/// Closed components as dart sequences (each dart is the departure end of
/// the traversed edge).
pub(crate) fn component_walks(darts: &Darts, scene: &Scene) -> Vec<Vec<usize>> {
    let mut used = vec![false; scene.edges.len()];
    let mut out = Vec::new();
    for (ei, e) in scene.edges.iter().enumerate() {
        if used[ei] {
            continue;
        }
        let start = darts.index(e.half[0]);
        let mut walk = Vec::new();
        let mut d = start;
        loop {
            used[darts.edge[d]] = true;
            walk.push(d);
            d = continue_through(darts, scene, darts.alpha[d]);
            if d == start {
                break;
            }
        }
        out.push(walk);
    }
    out
}

/// Partitions every curve into closed components.
pub fn components(scene: &Scene) -> Result<ComponentCensus> {
    let darts = check_structure(scene)?;
    let markers = scene.has_markers();
    let components = component_walks(&darts, scene)
        .into_iter()
        .map(|walk| {
            let mut homology = [0i64; 2];
            let mut crossings = 0;
            let mut edges = Vec::with_capacity(walk.len());
            for &d in &walk {
                let e = &scene.edges[darts.edge[d]];
                edges.push(e.id);
                if let Some(m) = e.marker {
                    let sign = if e.half[0] == darts.ids[d] { 1 } else { -1 };
                    homology[0] += sign * m[0];
                    homology[1] += sign * m[1];
                }
                if darts.degree(scene, darts.alpha[d]) == 4 {
                    crossings += 1;
                }
            }
            Component {
                curve: darts.curve(scene, walk[0]).clone(),
                edges,
                crossings,
                homology: markers.then_some(homology),
            }
        })
        .collect();
    Ok(ComponentCensus { components })
}

/// Homology class of a component, from its edge markers.
pub fn torus_class_of_component(scene: &Scene, component: usize) -> Result<TorusClass> {
    if !scene.has_markers() {
        return Err(SceneError::MissingMarkers);
    }
    let census = components(scene)?;
    let c = census
        .components
        .get(component)
        .ok_or(SceneError::UnknownComponent(component))?;
    c.class().ok_or(SceneError::NullHomologous(component))
}

/// Crossing-free components that bound a disk region on their own.
///
/// For crossing-free resolutions an innermost null-homotopic component
/// always bounds such a region, so an empty result certifies that no
/// component is trivial.
pub fn trivial_components(scene: &Scene) -> Result<Vec<usize>> {
    let census = components(scene)?;
    let queried: Vec<usize> = (0..census.len())
        .filter(|&i| census.components[i].crossings == 0)
        .collect();
    trivial_among(scene, &census, &queried)
}

/// Like [`trivial_components`], restricted to the given components, each of
/// which must be crossing-free.
pub fn trivial_components_among(scene: &Scene, query: &[usize]) -> Result<Vec<usize>> {
    let census = components(scene)?;
    for &i in query {
        let c = census
            .components
            .get(i)
            .ok_or(SceneError::UnknownComponent(i))?;
        if c.crossings > 0 {
            return Err(SceneError::ComponentHasCrossings(i));
        }
    }
    trivial_among(scene, &census, query)
}

fn trivial_among(scene: &Scene, census: &ComponentCensus, query: &[usize]) -> Result<Vec<usize>> {
    let layout = layout(scene)?;
    let disk_boundaries: Vec<Vec<EdgeId>> = layout
        .disk_walks()
        .map(|w| {
            layout.walks[w]
                .iter()
                .map(|&d| scene.edges[layout.darts.edge[d]].id)
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for &i in query {
        let edges = &census.components[i].edges;
        let mine: HashSet<EdgeId> = edges.iter().copied().collect();
        let bounds_disk = disk_boundaries.iter().any(|walk| {
            walk.len() == edges.len()
                && walk.iter().copied().collect::<HashSet<_>>() == mine
        });
        if bounds_disk {
            out.push(i);
        }
    }
    Ok(out)
}

/// Number of crossings between curves `a` and `b`.
pub fn crossing_count(scene: &Scene, a: &CurveId, b: &CurveId) -> Result<usize> {
    for c in [a, b] {
        if !scene.has_curve(c) {
            return Err(SceneError::UnknownCurve(c.clone()));
        }
    }
    let darts = check_structure(scene)?;
    Ok(scene
        .vertices
        .iter()
        .filter(|v| v.halfedges_ccw.len() == 4)
        .filter(|v| {
            let x = darts.curve(scene, darts.index(v.halfedges_ccw[0]));
            let y = darts.curve(scene, darts.index(v.halfedges_ccw[1]));
            (x == a && y == b) || (x == b && y == a)
        })
        .count())
}
