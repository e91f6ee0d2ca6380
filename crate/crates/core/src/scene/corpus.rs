//! Built-in scenes, and the on-disk corpus generated from them.

use std::fs;
use std::path::Path;

use super::build::{flat_torus_scene, torus_grid_scene};
use super::error::Result;
use super::io::{save, save_bundle};
use super::model::{CurveId, CurveRecord, Edge, EdgeId, HalfEdgeId, Scene, Vertex, VertexId};
use super::ops::smooth;
use crate::torus::{classes_within, det, TorusClass};

pub const GRID_BUNDLE: &str = "torus_grids.jsonl";
pub const FILLING_PAIR: &str = "genus2_filling_pair.json";
pub const BIGON: &str = "bigon_control.json";
pub const TRIVIAL_COMPONENT: &str = "trivial_component_control.json";
pub const FLAT_TRIPLE: &str = "flat_triple.json";
pub const ALPHA_BETA_ALPHA: &str = "alpha_beta_alpha.json";
pub const DISJOINT_PAIR: &str = "disjoint_pair.json";

/// Two single-loop curves crossing at every vertex, `A` visiting vertices
/// in index order and `B` in `order`. `flips[v]` selects the rotation
/// `(A+, B−, A−, B+)` instead of `(A+, B+, A−, B−)`.
fn two_loop_scene(name: &str, genus: u32, order: &[usize], flips: &[bool]) -> Scene {
    let n = order.len();
    let h = |v: usize, slot: usize| HalfEdgeId((4 * v + slot) as u32);
    let vertices = (0..n)
        .map(|v| Vertex {
            id: VertexId(v as u32),
            halfedges_ccw: if flips[v] {
                vec![h(v, 0), h(v, 3), h(v, 2), h(v, 1)]
            } else {
                vec![h(v, 0), h(v, 1), h(v, 2), h(v, 3)]
            },
        })
        .collect();
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push(Edge {
            id: EdgeId(edges.len() as u32),
            half: [h(i, 0), h((i + 1) % n, 2)],
            curve: CurveId::new("A"),
            marker: None,
        });
    }
    for i in 0..n {
        edges.push(Edge {
            id: EdgeId(edges.len() as u32),
            half: [h(order[i], 1), h(order[(i + 1) % n], 3)],
            curve: CurveId::new("B"),
            marker: None,
        });
    }
    Scene {
        name: name.to_string(),
        genus: Some(genus),
        vertices,
        edges,
        curves: ["A", "B"]
            .iter()
            .map(|c| CurveRecord {
                id: CurveId::new(*c),
                components: Some(1),
            })
            .collect(),
        smoothings: Vec::new(),
    }
}

/// A bigon-free pair of simple loops filling the closed genus-2 surface:
/// four crossings, two octagonal faces.
pub fn genus2_filling_pair() -> Scene {
    two_loop_scene("genus2_filling_pair", 2, &[0, 1, 3, 2], &[false, false, true, true])
}

/// Two loops on the torus crossing three times and bounding bigons; not
/// in minimal position.
pub fn bigon_control() -> Scene {
    two_loop_scene("bigon_control", 1, &[0, 1, 2], &[false, false, true])
}

/// Meridian `A`, longitude `B`, and a small circle `C` around a point of
/// `A`, with both `A`–`C` crossings smoothed so that the upper half of the
/// circle and the enclosed arc of `A` close up into a null-homotopic loop.
pub fn trivial_component_control() -> Scene {
    let h = HalfEdgeId;
    // Rotations list east, north, west, south.
    let ambient = Scene {
        name: "trivial_component_control".to_string(),
        genus: Some(1),
        vertices: vec![
            Vertex {
                id: VertexId(0),
                halfedges_ccw: vec![h(0), h(1), h(2), h(3)],
            },
            Vertex {
                id: VertexId(1),
                halfedges_ccw: vec![h(4), h(5), h(6), h(7)],
            },
            Vertex {
                id: VertexId(2),
                halfedges_ccw: vec![h(8), h(9), h(10), h(11)],
            },
        ],
        edges: [
            ([0, 6], "A"),
            ([4, 10], "A"),
            ([8, 2], "A"),
            ([1, 3], "B"),
            ([5, 9], "C"),
            ([11, 7], "C"),
        ]
        .iter()
        .enumerate()
        .map(|(i, (half, curve))| Edge {
            id: EdgeId(i as u32),
            half: [h(half[0]), h(half[1])],
            curve: CurveId::new(*curve),
            marker: None,
        })
        .collect(),
        curves: ["A", "B", "C"]
            .iter()
            .map(|c| CurveRecord {
                id: CurveId::new(*c),
                components: None,
            })
            .collect(),
        smoothings: Vec::new(),
    };
    let (a, c) = (CurveId::new("A"), CurveId::new("C"));
    let mut out = smooth(
        &ambient,
        &[[h(4), h(5), h(6), h(7)], [h(9), h(10), h(11), h(8)]],
        &[&a, &c],
        CurveId::new("AC"),
    )
    .expect("hand-built scene is well formed");
    out.name = "trivial_component_control".to_string();
    out
}

fn class(x: i64, y: i64) -> TorusClass {
    TorusClass::new(x, y).expect("nonzero")
}

/// Straight `(1,0)`, `(0,1)`, `(1,1)`: complementary triangles appear.
pub fn flat_triple() -> Scene {
    flat_torus_scene(
        "flat_triple",
        &[("c1", class(1, 0)), ("c2", class(0, 1)), ("c3", class(1, 1))],
    )
    .expect("generic offsets")
}

/// `a`, `b` and a parallel copy of `a`.
pub fn alpha_beta_alpha() -> Scene {
    flat_torus_scene(
        "alpha_beta_alpha",
        &[("c1", class(1, 0)), ("c2", class(0, 1)), ("c3", class(1, 0))],
    )
    .expect("generic offsets")
}

/// Disjoint parallel loops `A` and `A2`, embedded cellularly by a
/// transverse loop `C`.
pub fn disjoint_pair() -> Scene {
    flat_torus_scene(
        "disjoint_pair",
        &[("A", class(1, 0)), ("A2", class(1, 0)), ("C", class(0, 1))],
    )
    .expect("generic offsets")
}

/// Every grid with canonical slopes in `|coords| ≤ bound`, non-parallel.
pub fn grid_scenes(bound: i64) -> Vec<Scene> {
    let classes = classes_within(bound);
    let mut out = Vec::new();
    for &a in &classes {
        for &b in &classes {
            if det(a, b).map(|d| d != 0).unwrap_or(false) {
                out.push(torus_grid_scene(a.x(), a.y(), b.x(), b.y()).expect("non-parallel"));
            }
        }
    }
    out
}

/// The named control and fixture scenes.
pub fn named_scenes() -> Vec<(&'static str, Scene)> {
    vec![
        (FILLING_PAIR, genus2_filling_pair()),
        (BIGON, bigon_control()),
        (TRIVIAL_COMPONENT, trivial_component_control()),
        (FLAT_TRIPLE, flat_triple()),
        (ALPHA_BETA_ALPHA, alpha_beta_alpha()),
        (DISJOINT_PAIR, disjoint_pair()),
    ]
}

/// Writes the scene corpus (named scenes plus the grid bundle) into `dir`.
pub fn write_corpus(dir: impl AsRef<Path>, grid_bound: i64) -> Result<()> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir)?;
    for (file, scene) in named_scenes() {
        save(dir.join(file), &scene)?;
    }
    save_bundle(dir.join(GRID_BUNDLE), &grid_scenes(grid_bound))
}
