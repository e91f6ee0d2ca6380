//! Isomorphism of labeled rotation systems.
//!
//! Each connected piece of the dart graph is relabeled breadth-first from
//! every possible starting dart; the lexicographically least code wins.
//! Two scenes are isomorphic iff their sorted piece codes, curve records,
//! declared genus and smoothing records agree.

use std::collections::VecDeque;

use super::error::Result;
use super::model::{CurveRecord, Scene};
use super::topology::{check_structure, Darts};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct DartCode {
    sigma: usize,
    alpha: usize,
    curve: String,
    marker: Option<[i64; 2]>,
    /// Position within a smoothing record, and that record's first dart.
    smoothing: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct PieceCode(Vec<DartCode>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    genus: Option<u32>,
    curves: Vec<(String, Option<usize>)>,
    pieces: Vec<PieceCode>,
}

fn oriented_marker(scene: &Scene, darts: &Darts, d: usize) -> Option<[i64; 2]> {
    let e = &scene.edges[darts.edge[d]];
    e.marker.map(|m| {
        if e.half[0] == darts.ids[d] {
            m
        } else {
            [-m[0], -m[1]]
        }
    })
}

fn code_from(
    scene: &Scene,
    darts: &Darts,
    record_of: &[Option<(usize, [usize; 4])>],
    start: usize,
) -> (PieceCode, Vec<usize>) {
    let n = darts.len();
    let mut label = vec![usize::MAX; n];
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    label[start] = 0;
    order.push(start);
    queue.push_back(start);
    while let Some(d) = queue.pop_front() {
        for next in [darts.sigma[d], darts.alpha[d]] {
            if label[next] == usize::MAX {
                label[next] = order.len();
                order.push(next);
                queue.push_back(next);
            }
        }
    }
    let code = order
        .iter()
        .map(|&d| DartCode {
            sigma: label[darts.sigma[d]],
            alpha: label[darts.alpha[d]],
            curve: darts.curve(scene, d).0.clone(),
            marker: oriented_marker(scene, darts, d),
            smoothing: record_of[d].map(|(pos, r)| {
                // The two halves of a record are interchangeable.
                let first = label[r[0]].min(label[r[2]]);
                let pos = if label[r[0]] <= label[r[2]] { pos } else { (pos + 2) % 4 };
                (pos, first)
            }),
        })
        .collect();
    (PieceCode(code), order)
}

pub fn canonical_form(scene: &Scene) -> Result<CanonicalForm> {
    let darts = check_structure(scene)?;
    let n = darts.len();
    let mut record_of = vec![None; n];
    for s in &scene.smoothings {
        let r = [
            darts.index(s.ccw[0]),
            darts.index(s.ccw[1]),
            darts.index(s.ccw[2]),
            darts.index(s.ccw[3]),
        ];
        for (pos, &d) in r.iter().enumerate() {
            record_of[d] = Some((pos, r));
        }
    }
    let mut assigned = vec![false; n];
    let mut pieces = Vec::new();
    for seed in 0..n {
        if assigned[seed] {
            continue;
        }
        let (_, members) = code_from(scene, &darts, &record_of, seed);
        for &d in &members {
            assigned[d] = true;
        }
        let best = members
            .iter()
            .map(|&d| code_from(scene, &darts, &record_of, d).0)
            .min()
            .expect("piece has at least one dart");
        pieces.push(best);
    }
    pieces.sort();
    let mut curves: Vec<(String, Option<usize>)> = scene
        .curves
        .iter()
        .map(|CurveRecord { id, components }| (id.0.clone(), *components))
        .collect();
    curves.sort();
    Ok(CanonicalForm {
        genus: scene.genus,
        curves,
        pieces,
    })
}

/// Isomorphism of labeled rotation systems; names and ids are ignored.
pub fn isomorphic(a: &Scene, b: &Scene) -> Result<bool> {
    Ok(canonical_form(a)? == canonical_form(b)?)
}
