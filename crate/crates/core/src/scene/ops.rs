use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::census::component_walks;
use super::error::{Result, SceneError};
use super::model::{CurveId, CurveRecord, Edge, EdgeId, HalfEdgeId, Scene, Smoothing, Vertex, VertexId};
use super::topology::{check_structure, layout, validate_structure, Darts, Face};

fn require_curve(scene: &Scene, c: &CurveId) -> Result<()> {
    if scene.has_curve(c) {
        Ok(())
    } else {
        Err(SceneError::UnknownCurve(c.clone()))
    }
}

/// Disk faces with exactly two sides, one on `a` and one on `b`.
pub fn find_bigons(scene: &Scene, a: &CurveId, b: &CurveId) -> Result<Vec<Face>> {
    require_curve(scene, a)?;
    require_curve(scene, b)?;
    let layout = layout(scene)?;
    Ok(layout
        .disk_walks()
        .map(|w| layout.face(scene, w))
        .filter(|f| {
            f.degree == 2
                && ((&f.sides[0] == a && &f.sides[1] == b) || (&f.sides[0] == b && &f.sides[1] == a))
        })
        .collect())
}

/// True iff no disk face is a triangle with one side on each of the three
/// curves. The companion quadrilateral clause needs a boundary side, and
/// scenes are closed, so it never applies.
pub fn check_region_condition(scene: &Scene, c1: &CurveId, c2: &CurveId, c3: &CurveId) -> Result<bool> {
    for c in [c1, c2, c3] {
        require_curve(scene, c)?;
    }
    let layout = layout(scene)?;
    let wanted: HashSet<&CurveId> = [c1, c2, c3].into_iter().collect();
    let triangle = layout.disk_walks().any(|w| {
        let f = layout.face(scene, w);
        f.degree == 3 && f.sides.iter().collect::<HashSet<_>>() == wanted
    });
    Ok(!triangle)
}

/// Which of the two smoothings of a crossing [`resolve`] performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SmoothingConvention {
    /// Each half-edge of the target curve joins the half-edge of the source
    /// curve immediately following it counterclockwise.
    #[default]
    Standard,
    /// The mirror choice (clockwise neighbour). Exists to check that the
    /// torus oracle detects a chirality error.
    Flipped,
}

fn fresh_curve_id(scene: &Scene, from: &CurveId, to: &CurveId) -> CurveId {
    let mut id = CurveId(format!("({from}*{to})"));
    while scene.has_curve(&id) {
        id = CurveId(format!("{}'", id.0));
    }
    id
}

/// Replaces crossing vertices by pairs of plain vertices according to the
/// given rotations (`ccw[0]`–`ccw[1]` and `ccw[2]`–`ccw[3]` join), merging the
/// listed curves under `merged`.
pub(crate) fn smooth(
    scene: &Scene,
    records: &[[HalfEdgeId; 4]],
    merge: &[&CurveId],
    merged: CurveId,
) -> Result<Scene> {
    let darts = check_structure(scene)?;
    let mut out = scene.clone();
    let mut next_vertex = scene.next_vertex_id();
    let mut by_vertex: HashMap<usize, [HalfEdgeId; 4]> = HashMap::new();
    for r in records {
        let d = darts
            .dart(r[0])
            .ok_or_else(|| SceneError::BadSmoothing(format!("unknown half-edge {}", r[0])))?;
        by_vertex.insert(darts.vertex[d], *r);
    }
    let mut vertices = Vec::with_capacity(scene.vertices.len() + records.len());
    for (vi, v) in scene.vertices.iter().enumerate() {
        match by_vertex.get(&vi) {
            Some(r) => {
                let mut cycle = v.halfedges_ccw.clone();
                let start = cycle.iter().position(|h| *h == r[0]).unwrap_or(0);
                cycle.rotate_left(start);
                if cycle[..] != r[..] {
                    return Err(SceneError::BadSmoothing(format!(
                        "record does not match the rotation at vertex {}",
                        v.id
                    )));
                }
                vertices.push(Vertex {
                    id: v.id,
                    halfedges_ccw: vec![r[0], r[1]],
                });
                vertices.push(Vertex {
                    id: VertexId(next_vertex),
                    halfedges_ccw: vec![r[2], r[3]],
                });
                next_vertex += 1;
            }
            None => vertices.push(v.clone()),
        }
    }
    out.vertices = vertices;
    out.smoothings
        .extend(records.iter().map(|r| Smoothing { ccw: *r }));
    if !merge.is_empty() {
        for e in &mut out.edges {
            if merge.contains(&&e.curve) {
                e.curve = merged.clone();
            }
        }
        out.curves.retain(|c| !merge.contains(&&c.id));
        out.curves.push(CurveRecord {
            id: merged,
            components: None,
        });
    }
    Ok(out)
}

/// Smoothing records for every `from`/`to` crossing.
fn resolution_records(
    scene: &Scene,
    darts: &Darts,
    from: &CurveId,
    to: &CurveId,
    convention: SmoothingConvention,
) -> Vec<[HalfEdgeId; 4]> {
    let mut out = Vec::new();
    for v in &scene.vertices {
        if v.halfedges_ccw.len() != 4 {
            continue;
        }
        let labels: Vec<&CurveId> = v
            .halfedges_ccw
            .iter()
            .map(|h| darts.curve(scene, darts.index(*h)))
            .collect();
        if !labels.contains(&from) || !labels.contains(&to) {
            continue;
        }
        let t = labels.iter().position(|c| *c == to).expect("checked above");
        let start = match convention {
            SmoothingConvention::Standard => t,
            SmoothingConvention::Flipped => (t + 3) % 4,
        };
        let h = &v.halfedges_ccw;
        out.push([h[start], h[(start + 1) % 4], h[(start + 2) % 4], h[(start + 3) % 4]]);
    }
    out
}

/// Resolves every crossing of `from` with `to`, from `from` to `to`.
pub fn resolve(scene: &Scene, from: &CurveId, to: &CurveId) -> Result<Scene> {
    resolve_with(scene, from, to, SmoothingConvention::Standard)
}

pub fn resolve_with(
    scene: &Scene,
    from: &CurveId,
    to: &CurveId,
    convention: SmoothingConvention,
) -> Result<Scene> {
    require_curve(scene, from)?;
    require_curve(scene, to)?;
    if from == to {
        return Err(SceneError::SameCurve(from.clone()));
    }
    if !find_bigons(scene, from, to)?.is_empty() {
        return Err(SceneError::BigonPresent {
            from: from.clone(),
            to: to.clone(),
        });
    }
    let darts = check_structure(scene)?;
    let records = resolution_records(scene, &darts, from, to, convention);
    let mut out = smooth(scene, &records, &[from, to], fresh_curve_id(scene, from, to))?;
    out.name = format!("{}|{}>{}", scene.name, from, to);
    validate_structure(&out)?;
    Ok(out)
}

/// Corner pattern of a resolution around one face of the input scene.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CornerPattern {
    pub face: usize,
    /// Per corner in walk order: true when the resolution opens the corner
    /// (merges it with the region across the crossing).
    pub opened: Vec<bool>,
}

impl CornerPattern {
    pub fn alternates(&self) -> bool {
        self.opened.len().is_multiple_of(2)
            && (0..self.opened.len()).all(|i| self.opened[i] != self.opened[(i + 1) % self.opened.len()])
    }
}

/// Open/closed status of every resolved corner, face by face, for the
/// resolution of `from` to `to`. In a bigon-free two-curve scene the
/// pattern alternates around every face.
pub fn corner_patterns(
    scene: &Scene,
    from: &CurveId,
    to: &CurveId,
    convention: SmoothingConvention,
) -> Result<Vec<CornerPattern>> {
    require_curve(scene, from)?;
    require_curve(scene, to)?;
    let layout = layout(scene)?;
    let darts = &layout.darts;
    let records = resolution_records(scene, darts, from, to, convention);
    // A corner x→σ(x) stays closed when x and σ(x) end up on the same strand.
    let mut kept: HashSet<(usize, usize)> = HashSet::new();
    let mut resolved: HashSet<usize> = HashSet::new();
    for r in &records {
        let d: Vec<usize> = r.iter().map(|h| darts.index(*h)).collect();
        kept.insert((d[0], d[1]));
        kept.insert((d[2], d[3]));
        resolved.insert(darts.vertex[d[0]]);
    }
    let mut out = Vec::new();
    for (w, walk) in layout.walks.iter().enumerate() {
        let opened: Vec<bool> = walk
            .iter()
            .filter(|&&d| resolved.contains(&darts.vertex[d]))
            .map(|&d| !kept.contains(&(darts.sigma_inv(d), d)))
            .collect();
        if !opened.is_empty() {
            out.push(CornerPattern { face: w, opened });
        }
    }
    Ok(out)
}

/// Replaces the single loop `curve` by `n` parallel copies running through
/// an annular neighbourhood; each crossing with another curve becomes `n`
/// consecutive crossings along that curve.
pub fn parallel_copies(scene: &Scene, curve: &CurveId, n: i64) -> Result<Scene> {
    require_curve(scene, curve)?;
    if n <= 0 {
        return Err(SceneError::InvalidCount(n));
    }
    let n = n as usize;
    let darts = check_structure(scene)?;
    let walks: Vec<Vec<usize>> = component_walks(&darts, scene)
        .into_iter()
        .filter(|w| darts.curve(scene, w[0]) == curve)
        .collect();
    if walks.len() != 1 {
        return Err(SceneError::NotSingleComponent(curve.clone(), walks.len()));
    }
    let walk = &walks[0];
    let smoothed: HashSet<HalfEdgeId> = scene.smoothings.iter().flat_map(|s| s.ccw).collect();
    if walk
        .iter()
        .any(|&d| smoothed.contains(&darts.ids[d]) || smoothed.contains(&darts.ids[darts.alpha[d]]))
    {
        return Err(SceneError::SmoothedCurve(curve.clone()));
    }

    let mut next_half = scene.next_half_edge_id();
    let mut next_edge = scene.next_edge_id();
    let mut next_vertex = scene.next_vertex_id();
    let mut fresh_half = || {
        next_half += 1;
        HalfEdgeId(next_half - 1)
    };

    // Copy k of a dart of the curve; copy 0 keeps the original id.
    let mut copy_of: HashMap<(usize, usize), HalfEdgeId> = HashMap::new();
    for &d in walk {
        for dd in [d, darts.alpha[d]] {
            copy_of.insert((dd, 0), darts.ids[dd]);
            for k in 1..n {
                copy_of.insert((dd, k), fresh_half());
            }
        }
    }

    let mut replaced: HashMap<usize, Vec<Vertex>> = HashMap::new();
    let mut extra_edges = Vec::new();
    for &out in walk {
        // `out` leaves vertex v; the strand arrived through `arrive`.
        let vi = darts.vertex[out];
        let cycle = &scene.vertices[vi].halfedges_ccw;
        let arrive = if cycle.len() == 4 {
            darts.sigma[darts.sigma[out]]
        } else {
            darts.sigma[out]
        };
        let mut copies = Vec::with_capacity(n);
        if cycle.len() == 2 {
            for k in 0..n {
                copies.push(vec![copy_of[&(out, k)], copy_of[&(arrive, k)]]);
            }
        } else {
            // Copy 0 runs on the left of the direction of travel.
            let left = darts.sigma[out];
            let right = darts.sigma_inv(out);
            let other = scene.edges[darts.edge[left]].clone();
            let mut toward_left = darts.ids[left];
            for k in 0..n {
                let toward_right = if k + 1 == n {
                    darts.ids[right]
                } else {
                    fresh_half()
                };
                copies.push(vec![
                    copy_of[&(out, k)],
                    toward_left,
                    copy_of[&(arrive, k)],
                    toward_right,
                ]);
                if k + 1 < n {
                    let next_left = fresh_half();
                    extra_edges.push(Edge {
                        id: EdgeId(0),
                        half: [toward_right, next_left],
                        curve: other.curve.clone(),
                        marker: other.marker.map(|_| [0, 0]),
                    });
                    toward_left = next_left;
                }
            }
        }
        let vertices = copies
            .into_iter()
            .enumerate()
            .map(|(k, halfedges_ccw)| Vertex {
                id: if k == 0 {
                    scene.vertices[vi].id
                } else {
                    next_vertex += 1;
                    VertexId(next_vertex - 1)
                },
                halfedges_ccw,
            })
            .collect();
        replaced.insert(vi, vertices);
    }

    let mut out = scene.clone();
    out.vertices = Vec::with_capacity(scene.vertices.len() + (n - 1) * walk.len());
    for (vi, v) in scene.vertices.iter().enumerate() {
        match replaced.remove(&vi) {
            Some(vs) => out.vertices.extend(vs),
            None => out.vertices.push(v.clone()),
        }
    }
    let on_curve: HashSet<usize> = walk.iter().map(|&d| darts.edge[d]).collect();
    let mut edges = Vec::with_capacity(scene.edges.len() + (n - 1) * walk.len() + extra_edges.len());
    for (ei, e) in scene.edges.iter().enumerate() {
        edges.push(e.clone());
        if on_curve.contains(&ei) {
            let (h0, h1) = (darts.index(e.half[0]), darts.index(e.half[1]));
            for k in 1..n {
                edges.push(Edge {
                    id: EdgeId(next_edge),
                    half: [copy_of[&(h0, k)], copy_of[&(h1, k)]],
                    curve: e.curve.clone(),
                    marker: e.marker,
                });
                next_edge += 1;
            }
        }
    }
    for mut e in extra_edges {
        e.id = EdgeId(next_edge);
        next_edge += 1;
        edges.push(e);
    }
    out.edges = edges;
    for c in &mut out.curves {
        if &c.id == curve {
            c.components = Some(n);
        }
    }
    out.name = format!("{}|{}^{}", scene.name, curve, n);
    validate_structure(&out)?;
    Ok(out)
}
