//! Scenes of straight closed geodesics on the square flat torus `R²/Z²`.
//!
//! A component of slope `u` (primitive) at offset `c` is the circle
//! `{x : det(u, x) ≡ c mod 1}`, parametrized as `x(τ) = c·v + τ·u` for
//! `τ ∈ [0, 1)`, where `det(u, v) = 1`. Straight components meet
//! transversally and minimally, so these scenes are bigon-free.

use std::collections::HashMap;

use num_rational::Ratio;

use super::error::{Result, SceneError};
use super::model::{CurveId, CurveRecord, Edge, EdgeId, HalfEdgeId, Scene, Vertex, VertexId};
use crate::torus::{normalize, TorusClass};

type Q = Ratio<i64>;

/// One curve of a flat scene: `offsets.len()` parallel copies of the
/// primitive slope of `class`.
#[derive(Debug, Clone)]
pub struct FlatCurve {
    pub id: CurveId,
    pub slope: TorusClass,
    pub offsets: Vec<Q>,
}

impl FlatCurve {
    /// All copies of `class`, evenly spaced and shifted by `phase / copies`.
    pub fn new(id: impl Into<CurveId>, class: TorusClass, phase: Q) -> Self {
        let copies = class.multiplicity();
        let offsets = (0..copies)
            .map(|j| (Q::from_integer(j) + phase) / copies)
            .collect();
        FlatCurve {
            id: id.into(),
            slope: class.primitive(),
            offsets,
        }
    }
}

fn det(a: (i64, i64), b: (i64, i64)) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

/// `v` with `det(u, v) = 1` for primitive `u`.
fn complement(u: (i64, i64)) -> (i64, i64) {
    // Extended Euclid on (u.0, u.1): s·u.0 + t·u.1 = 1, then v = (−t, s).
    let (mut r0, mut r1) = (u.0, u.1);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        s0 = -s0;
        t0 = -t0;
    }
    let v = (-t0, s0);
    debug_assert_eq!(det(u, v), 1);
    v
}

fn frac(q: Q) -> Q {
    q - q.floor()
}

struct Line {
    curve: usize,
    u: (i64, i64),
    v: (i64, i64),
    offset: Q,
}

impl Line {
    fn point(&self, tau: Q) -> (Q, Q) {
        (
            self.offset * self.v.0 + tau * self.u.0,
            self.offset * self.v.1 + tau * self.u.1,
        )
    }
}

struct Hit {
    tau: Q,
    vertex: usize,
    /// Dart leaving toward increasing τ; the opposite dart is `out + 1`.
    out: usize,
}

/// Builds the scene of the given straight curves on the flat torus.
pub fn torus_line_scene(name: &str, curves: &[FlatCurve]) -> Result<Scene> {
    let mut lines = Vec::new();
    for (ci, c) in curves.iter().enumerate() {
        if c.offsets.is_empty() {
            return Err(SceneError::DegenerateConfiguration(format!(
                "curve {} has no components",
                c.id
            )));
        }
        let u = c.slope.primitive().coords();
        for &offset in &c.offsets {
            lines.push(Line {
                curve: ci,
                u,
                v: complement(u),
                offset: frac(offset),
            });
        }
    }

    // Crossing points keyed by position in [0,1)².
    let mut point_vertex: HashMap<(Q, Q), usize> = HashMap::new();
    // Per vertex: the two lines through it, in discovery order.
    let mut vertex_lines: Vec<Vec<usize>> = Vec::new();
    let mut hits: Vec<Vec<(Q, usize)>> = vec![Vec::new(); lines.len()];
    for i in 0..lines.len() {
        for j in 0..lines.len() {
            if i == j {
                continue;
            }
            let (a, b) = (&lines[i], &lines[j]);
            let d = det(a.u, b.u);
            if d == 0 {
                if a.u == b.u && frac(a.offset - b.offset) == Q::from_integer(0) {
                    return Err(SceneError::DegenerateConfiguration(format!(
                        "two components of slope {:?} coincide",
                        a.u
                    )));
                }
                continue;
            }
            // det(b.u, x(τ)) = offset_a·det(b.u, v_a) − τ·d ≡ offset_b (mod 1).
            let base = a.offset * det(b.u, a.v) - b.offset;
            for k in 0..d.abs() {
                let tau = frac((base + k) / d);
                let p = a.point(tau);
                let key = (frac(p.0), frac(p.1));
                let next = vertex_lines.len();
                let vi = *point_vertex.entry(key).or_insert(next);
                if vi == next {
                    vertex_lines.push(Vec::new());
                }
                if !vertex_lines[vi].contains(&i) {
                    vertex_lines[vi].push(i);
                }
                if vertex_lines[vi].len() > 2 {
                    return Err(SceneError::DegenerateConfiguration(format!(
                        "three components meet at ({}, {})",
                        key.0, key.1
                    )));
                }
                hits[i].push((tau, vi));
            }
        }
    }
    for h in &mut hits {
        h.sort();
        h.dedup();
    }

    // Plain vertices for lines meeting nothing.
    let crossing_count = vertex_lines.len();
    let mut plain_vertex = vec![None; lines.len()];
    for (li, h) in hits.iter().enumerate() {
        if h.is_empty() {
            plain_vertex[li] = Some(vertex_lines.len());
            vertex_lines.push(vec![li]);
        }
    }

    // Dart numbering: each (vertex, line) pair owns two consecutive ids,
    // `+u` then `−u`.
    let mut dart_base: HashMap<(usize, usize), usize> = HashMap::new();
    let mut next_dart = 0usize;
    for (vi, ls) in vertex_lines.iter().enumerate() {
        for &li in ls {
            dart_base.insert((vi, li), next_dart);
            next_dart += 2;
        }
    }

    let mut vertices = Vec::with_capacity(vertex_lines.len());
    for (vi, ls) in vertex_lines.iter().enumerate() {
        let h = |li: usize, back: usize| HalfEdgeId((dart_base[&(vi, li)] + back) as u32);
        let cycle = if vi < crossing_count {
            let (a, b) = (ls[0], ls[1]);
            if det(lines[a].u, lines[b].u) > 0 {
                vec![h(a, 0), h(b, 0), h(a, 1), h(b, 1)]
            } else {
                vec![h(a, 0), h(b, 1), h(a, 1), h(b, 0)]
            }
        } else {
            vec![h(ls[0], 0), h(ls[0], 1)]
        };
        vertices.push(Vertex {
            id: VertexId(vi as u32),
            halfedges_ccw: cycle,
        });
    }

    let mut edges = Vec::new();
    for (li, line) in lines.iter().enumerate() {
        let stops: Vec<Hit> = match plain_vertex[li] {
            Some(vi) => vec![Hit {
                tau: Q::from_integer(0),
                vertex: vi,
                out: dart_base[&(vi, li)],
            }],
            None => hits[li]
                .iter()
                .map(|&(tau, vi)| Hit {
                    tau,
                    vertex: vi,
                    out: dart_base[&(vi, li)],
                })
                .collect(),
        };
        for (k, stop) in stops.iter().enumerate() {
            let (next, wrap) = match stops.get(k + 1) {
                Some(n) => (n, Q::from_integer(0)),
                None => (&stops[0], Q::from_integer(1)),
            };
            debug_assert!(next.vertex < vertex_lines.len());
            let p0 = line.point(stop.tau);
            let p1 = line.point(next.tau + wrap);
            let marker = [
                (p1.0.floor() - p0.0.floor()).to_integer(),
                (p1.1.floor() - p0.1.floor()).to_integer(),
            ];
            edges.push(Edge {
                id: EdgeId(edges.len() as u32),
                half: [
                    HalfEdgeId(stop.out as u32),
                    HalfEdgeId((next.out + 1) as u32),
                ],
                curve: curves[line.curve].id.clone(),
                marker: Some(marker),
            });
        }
    }

    Ok(Scene {
        name: name.to_string(),
        genus: Some(1),
        vertices,
        edges,
        curves: curves
            .iter()
            .map(|c| CurveRecord {
                id: c.id.clone(),
                components: Some(c.offsets.len()),
            })
            .collect(),
        smoothings: Vec::new(),
    })
}

/// Straight curves of the given classes with default, generic offsets.
pub fn flat_torus_scene(name: &str, curves: &[(&str, TorusClass)]) -> Result<Scene> {
    const PHASES: [(i64, i64); 6] = [(1, 2), (1, 3), (1, 5), (2, 7), (3, 11), (5, 13)];
    let flat: Vec<FlatCurve> = curves
        .iter()
        .enumerate()
        .map(|(i, (id, class))| {
            let (n, d) = PHASES[i % PHASES.len()];
            FlatCurve::new(*id, *class, Q::new(n, d))
        })
        .collect();
    torus_line_scene(name, &flat)
}

/// Curve `A` of class `±(p, q)` and curve `B` of class `±(r, s)`, each
/// split into parallel copies of its primitive slope.
pub fn torus_grid_scene(p: i64, q: i64, r: i64, s: i64) -> Result<Scene> {
    let a = normalize(p, q)?;
    let b = normalize(r, s)?;
    let d = p
        .checked_mul(s)
        .zip(q.checked_mul(r))
        .and_then(|(x, y)| x.checked_sub(y))
        .ok_or(crate::torus::TorusError::Overflow)?;
    if d == 0 {
        return Err(SceneError::ParallelSlopes(p, q, r, s));
    }
    let half = Q::new(1, 2);
    torus_line_scene(
        &format!("grid_{p}_{q}_{r}_{s}"),
        &[FlatCurve::new("A", a, half), FlatCurve::new("B", b, half)],
    )
}
