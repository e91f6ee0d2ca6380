//! Dart index, face tracing and complementary-region analysis.
//!
//! Half-edges ("darts") are indexed densely in increasing id order. The
//! rotation `sigma` maps a dart to the counterclockwise-next dart at its
//! vertex, `alpha` to the other end of its edge. Faces are the orbits of
//! `sigma ∘ alpha`.
//!
//! Smoothed crossings make the rotation system describe a different
//! surface than the one the curves live on. The true complementary regions
//! are recovered from the ambient system (every smoothing undone): each
//! smoothing opens a gap that tubes together the two ambient faces holding
//! the corners in front of its strands, lowering the Euler characteristic
//! of the merged region by one.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::error::{Result, SceneError};
use super::model::{CurveId, HalfEdgeId, Scene};

pub(crate) struct Darts {
    /// Sorted; a dart is its position here.
    pub ids: Vec<HalfEdgeId>,
    pub sigma: Vec<usize>,
    pub alpha: Vec<usize>,
    pub vertex: Vec<usize>,
    pub edge: Vec<usize>,
}

impl Darts {
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn degree(&self, scene: &Scene, d: usize) -> usize {
        scene.vertices[self.vertex[d]].halfedges_ccw.len()
    }

    pub fn curve<'s>(&self, scene: &'s Scene, d: usize) -> &'s CurveId {
        &scene.edges[self.edge[d]].curve
    }

    pub fn dart(&self, h: HalfEdgeId) -> Option<usize> {
        self.ids.binary_search(&h).ok()
    }

    /// Dart of a half-edge known to be present.
    pub fn index(&self, h: HalfEdgeId) -> usize {
        self.dart(h).expect("half-edge was indexed")
    }

    pub fn sigma_inv(&self, d: usize) -> usize {
        let mut x = d;
        loop {
            let n = self.sigma[x];
            if n == d {
                return x;
            }
            x = n;
        }
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = x;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Checks every combinatorial invariant except cellularity and returns the
/// dart index.
pub(crate) fn check_structure(scene: &Scene) -> Result<Darts> {
    let mut curve_ids = HashSet::new();
    for c in &scene.curves {
        if !curve_ids.insert(&c.id) {
            return Err(SceneError::DuplicateCurve(c.id.clone()));
        }
    }
    let mut seen_vertices = HashSet::new();
    // (half-edge, vertex or edge index, position)
    let mut at_vertex: Vec<(HalfEdgeId, usize, usize)> = Vec::new();
    for (vi, v) in scene.vertices.iter().enumerate() {
        if !seen_vertices.insert(v.id) {
            return Err(SceneError::DuplicateVertex(v.id));
        }
        let degree = v.halfedges_ccw.len();
        if degree != 2 && degree != 4 {
            return Err(SceneError::InvalidDegree {
                vertex: v.id,
                degree,
            });
        }
        at_vertex.extend(v.halfedges_ccw.iter().enumerate().map(|(pos, &h)| (h, vi, pos)));
    }
    let mut seen_edges = HashSet::new();
    let mut on_edge: Vec<(HalfEdgeId, usize, usize)> = Vec::new();
    for (ei, e) in scene.edges.iter().enumerate() {
        if !seen_edges.insert(e.id) {
            return Err(SceneError::DuplicateEdge(e.id));
        }
        if !curve_ids.contains(&e.curve) {
            return Err(SceneError::UnknownCurve(e.curve.clone()));
        }
        on_edge.extend(e.half.iter().enumerate().map(|(side, &h)| (h, ei, side)));
    }
    for list in [&mut at_vertex, &mut on_edge] {
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(SceneError::DuplicateHalfEdge(w[0].0));
        }
    }
    if let Some(h) = at_vertex
        .iter()
        .zip(&on_edge)
        .find(|(a, b)| a.0 != b.0)
        .map(|(a, b)| a.0.min(b.0))
        .or_else(|| at_vertex.get(on_edge.len()).map(|x| x.0))
        .or_else(|| on_edge.get(at_vertex.len()).map(|x| x.0))
    {
        return Err(SceneError::DanglingHalfEdge(h));
    }

    let ids: Vec<HalfEdgeId> = at_vertex.iter().map(|x| x.0).collect();
    let find = |h: &HalfEdgeId| ids.binary_search(h).expect("paired half-edge");
    let n = ids.len();
    let mut sigma = vec![0; n];
    let mut alpha = vec![0; n];
    let mut vertex = vec![0; n];
    let mut edge = vec![0; n];
    for d in 0..n {
        let (_, vi, pos) = at_vertex[d];
        let cycle = &scene.vertices[vi].halfedges_ccw;
        sigma[d] = find(&cycle[(pos + 1) % cycle.len()]);
        vertex[d] = vi;
        let (_, ei, side) = on_edge[d];
        alpha[d] = find(&scene.edges[ei].half[1 - side]);
        edge[d] = ei;
    }
    let darts = Darts {
        ids,
        sigma,
        alpha,
        vertex,
        edge,
    };

    for v in &scene.vertices {
        let labels: Vec<&CurveId> = v
            .halfedges_ccw
            .iter()
            .map(|h| darts.curve(scene, darts.index(*h)))
            .collect();
        match labels.len() {
            4 => {
                let alternating = labels[0] == labels[2]
                    && labels[1] == labels[3]
                    && labels[0] != labels[1];
                if !alternating {
                    return Err(SceneError::NonAlternatingCrossing(v.id));
                }
            }
            _ => {
                if labels[0] != labels[1] {
                    return Err(SceneError::OpenCurve(v.id));
                }
            }
        }
    }

    let mut smoothed = HashSet::new();
    for s in &scene.smoothings {
        let mut ds = [0usize; 4];
        for (i, h) in s.ccw.iter().enumerate() {
            ds[i] = darts
                .dart(*h)
                .ok_or_else(|| SceneError::BadSmoothing(format!("unknown half-edge {h}")))?;
            if !smoothed.insert(ds[i]) {
                return Err(SceneError::BadSmoothing(format!(
                    "half-edge {h} appears in two smoothings"
                )));
            }
        }
        for pair in [(ds[0], ds[1]), (ds[2], ds[3])] {
            if darts.degree(scene, pair.0) != 2 || darts.vertex[pair.0] != darts.vertex[pair.1] {
                return Err(SceneError::BadSmoothing(format!(
                    "half-edges {} and {} do not share a plain vertex",
                    darts.ids[pair.0], darts.ids[pair.1]
                )));
            }
        }
        if darts.vertex[ds[0]] == darts.vertex[ds[2]] {
            return Err(SceneError::BadSmoothing(
                "both strands sit on the same vertex".to_string(),
            ));
        }
    }
    Ok(darts)
}

/// Orbits of `next`, each started from the smallest unvisited dart.
pub(crate) fn orbits(next: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; next.len()];
    let mut out = Vec::new();
    for start in 0..next.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            orbit.push(x);
            x = next[x];
        }
        out.push(orbit);
    }
    out
}

/// One boundary walk of the rotation system, with side labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Face {
    /// Traversed half-edges and the curve each belongs to.
    pub half_edges: Vec<(HalfEdgeId, CurveId)>,
    /// Curve of each side, in cyclic order; a side runs between crossings.
    pub sides: Vec<CurveId>,
    /// Number of corners (crossings met along the walk).
    pub degree: usize,
}

/// A connected component of the complement of the curves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Region {
    /// Indices into the face list of boundary walks of this region.
    pub faces: Vec<usize>,
    /// Euler characteristic of the open region.
    pub euler: i64,
}

impl Region {
    pub fn is_disk(&self) -> bool {
        self.euler == 1 && self.faces.len() == 1
    }
}

pub(crate) struct Layout {
    pub darts: Darts,
    pub walks: Vec<Vec<usize>>,
    pub regions: Vec<Region>,
    pub connected: bool,
    pub surface_euler: i64,
}

impl Layout {
    pub fn face(&self, scene: &Scene, w: usize) -> Face {
        let walk = &self.walks[w];
        let darts = &self.darts;
        let half_edges: Vec<(HalfEdgeId, CurveId)> = walk
            .iter()
            .map(|&d| (darts.ids[d], darts.curve(scene, d).clone()))
            .collect();
        let sides: Vec<CurveId> = walk
            .iter()
            .filter(|&&d| darts.degree(scene, d) == 4)
            .map(|&d| darts.curve(scene, d).clone())
            .collect();
        let degree = sides.len();
        let sides = if sides.is_empty() {
            vec![darts.curve(scene, walk[0]).clone()]
        } else {
            sides
        };
        Face {
            half_edges,
            sides,
            degree,
        }
    }

    /// Walks bounding disk regions.
    pub fn disk_walks(&self) -> impl Iterator<Item = usize> + '_ {
        self.regions
            .iter()
            .filter(|r| r.is_disk())
            .map(|r| r.faces[0])
    }
}

pub(crate) fn layout(scene: &Scene) -> Result<Layout> {
    let darts = check_structure(scene)?;
    let n = darts.len();

    let mut ambient_sigma = darts.sigma.clone();
    let mut records = Vec::with_capacity(scene.smoothings.len());
    for s in &scene.smoothings {
        let ds: Vec<usize> = s.ccw.iter().map(|h| darts.index(*h)).collect();
        for i in 0..4 {
            ambient_sigma[ds[i]] = ds[(i + 1) % 4];
        }
        records.push([ds[0], ds[2]]);
    }

    let mut pieces = UnionFind::new(n);
    for (d, &s) in ambient_sigma.iter().enumerate() {
        pieces.union(d, s);
        pieces.union(d, darts.alpha[d]);
    }
    let connected = (0..n).all(|d| pieces.find(d) == pieces.find(0));

    let ambient_next: Vec<usize> = (0..n).map(|d| ambient_sigma[darts.alpha[d]]).collect();
    let ambient_faces = orbits(&ambient_next);
    let mut face_of = vec![0usize; n];
    for (f, orbit) in ambient_faces.iter().enumerate() {
        for &d in orbit {
            face_of[d] = f;
        }
    }
    let ambient_vertices = scene.vertices.len() as i64 - scene.smoothings.len() as i64;
    let surface_euler = ambient_vertices - scene.edges.len() as i64 + ambient_faces.len() as i64;

    let mut merged = UnionFind::new(ambient_faces.len());
    for &[a, c] in &records {
        merged.union(face_of[a], face_of[c]);
    }
    let mut euler_by_root: HashMap<usize, i64> = HashMap::new();
    for f in 0..ambient_faces.len() {
        *euler_by_root.entry(merged.find(f)).or_default() += 1;
    }
    for &[a, _] in &records {
        *euler_by_root.entry(merged.find(face_of[a])).or_default() -= 1;
    }

    let next: Vec<usize> = (0..n).map(|d| darts.sigma[darts.alpha[d]]).collect();
    let walks = orbits(&next);
    let mut region_index: HashMap<usize, usize> = HashMap::new();
    let mut regions: Vec<Region> = Vec::new();
    for (w, walk) in walks.iter().enumerate() {
        let root = merged.find(face_of[walk[0]]);
        let idx = *region_index.entry(root).or_insert_with(|| {
            regions.push(Region {
                faces: Vec::new(),
                euler: euler_by_root[&root],
            });
            regions.len() - 1
        });
        regions[idx].faces.push(w);
    }
    for r in &regions {
        let twice_genus = 2 - r.euler - r.faces.len() as i64;
        if twice_genus < 0 || twice_genus % 2 != 0 {
            return Err(SceneError::NonOrientableOrCorrupt(format!(
                "region with Euler characteristic {} and {} boundary walks",
                r.euler,
                r.faces.len()
            )));
        }
    }

    Ok(Layout {
        darts,
        walks,
        regions,
        connected,
        surface_euler,
    })
}

/// Summary returned by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub crossings: usize,
    pub euler: i64,
    pub genus: u32,
}

fn genus_of(scene: &Scene, layout: &Layout) -> Result<(i64, u32)> {
    if !layout.connected {
        return Err(SceneError::NonCellular(
            "the curves do not form a connected graph".to_string(),
        ));
    }
    let chi = layout.surface_euler;
    if chi % 2 != 0 {
        return Err(SceneError::NonOrientableOrCorrupt(format!(
            "odd Euler characteristic {chi}"
        )));
    }
    if chi > 2 {
        return Err(SceneError::NonCellular(format!(
            "Euler characteristic {chi} exceeds 2"
        )));
    }
    if let Some(bad) = layout.regions.iter().find(|r| !r.is_disk()) {
        return Err(SceneError::NonCellular(format!(
            "a complementary region has Euler characteristic {} and {} boundary walks",
            bad.euler,
            bad.faces.len()
        )));
    }
    let genus = ((2 - chi) / 2) as u32;
    if let Some(declared) = scene.genus {
        if declared != genus {
            return Err(SceneError::NonCellular(format!(
                "curves fill a genus-{genus} surface, scene is declared on genus {declared}"
            )));
        }
    }
    Ok((chi, genus))
}

/// Confirms every scene invariant, including cellularity.
pub fn validate(scene: &Scene) -> Result<Diagnostics> {
    let layout = layout(scene)?;
    let (euler, genus) = genus_of(scene, &layout)?;
    super::census::components(scene)?.check_counts(scene)?;
    Ok(Diagnostics {
        vertices: scene.vertices.len(),
        edges: scene.edges.len(),
        faces: layout.walks.len(),
        crossings: scene
            .vertices
            .iter()
            .filter(|v| v.halfedges_ccw.len() == 4)
            .count(),
        euler,
        genus,
    })
}

/// Checks everything but cellularity; resolved scenes are usually not
/// cellular since the product rarely fills the surface.
pub fn validate_structure(scene: &Scene) -> Result<()> {
    layout(scene)?;
    super::census::components(scene)?.check_counts(scene)
}

/// `(χ, genus)` of the surface filled by a cellular scene.
pub fn euler_genus(scene: &Scene) -> Result<(i64, u32)> {
    let layout = layout(scene)?;
    genus_of(scene, &layout)
}

/// Boundary walks of the rotation system, under the fixed tracing rule:
/// the successor of `h` is the counterclockwise-next half-edge after the
/// partner of `h`; walks start from the smallest unvisited half-edge id.
pub fn trace_faces(scene: &Scene) -> Result<Vec<Face>> {
    let layout = layout(scene)?;
    Ok((0..layout.walks.len()).map(|w| layout.face(scene, w)).collect())
}

/// Complementary regions of the curves in the surface they live on.
pub fn regions(scene: &Scene) -> Result<Vec<Region>> {
    Ok(layout(scene)?.regions)
}
