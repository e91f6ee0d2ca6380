use proptest::prelude::*;

use super::corpus::*;
use super::io::{from_json, load_bundle, save_bundle, to_json};
use super::*;
use crate::torus::{multiply, normalize, power, TorusClass};

fn c(s: &str) -> CurveId {
    CurveId::new(s)
}

fn class(x: i64, y: i64) -> TorusClass {
    TorusClass::new(x, y).unwrap()
}

fn grid(p: i64, q: i64, r: i64, s: i64) -> Scene {
    torus_grid_scene(p, q, r, s).unwrap()
}

fn classes(scene: &Scene) -> Vec<TorusClass> {
    components(scene)
        .unwrap()
        .components
        .iter()
        .map(|c| c.class().expect("essential"))
        .collect()
}

#[test]
fn single_crossing_grid_validates() {
    let d = validate(&grid(1, 0, 0, 1)).unwrap();
    assert_eq!((d.vertices, d.edges, d.faces, d.crossings), (1, 2, 1, 1));
    assert_eq!((d.euler, d.genus), (0, 1));
}

#[test]
fn non_alternating_crossing_rejected() {
    let mut s = grid(1, 0, 0, 1);
    let h = s.vertices[0].halfedges_ccw.clone();
    s.vertices[0].halfedges_ccw = vec![h[0], h[2], h[1], h[3]];
    assert!(matches!(
        validate(&s),
        Err(SceneError::NonAlternatingCrossing(_))
    ));
}

#[test]
fn lone_loop_is_not_cellular() {
    let s = flat_torus_scene("loop", &[("A", class(1, 0))]).unwrap();
    validate_structure(&s).unwrap();
    assert!(matches!(validate(&s), Err(SceneError::NonCellular(_))));
}

#[test]
fn structural_errors() {
    let base = grid(1, 0, 0, 1);

    let mut s = base.clone();
    s.vertices.push(s.vertices[0].clone());
    assert!(matches!(validate(&s), Err(SceneError::DuplicateVertex(_))));

    let mut s = base.clone();
    s.edges[1].id = s.edges[0].id;
    assert!(matches!(validate(&s), Err(SceneError::DuplicateEdge(_))));

    let mut s = base.clone();
    s.edges[0].curve = c("Z");
    assert!(matches!(validate(&s), Err(SceneError::UnknownCurve(_))));

    let mut s = base.clone();
    s.edges[0].half[1] = HalfEdgeId(99);
    assert!(matches!(validate(&s), Err(SceneError::DanglingHalfEdge(_))));

    let mut s = base.clone();
    s.edges[1].half[0] = s.edges[0].half[0];
    assert!(matches!(validate(&s), Err(SceneError::DuplicateHalfEdge(_))));

    let mut s = base.clone();
    s.vertices[0].halfedges_ccw.pop();
    assert!(validate(&s).is_err());

    let mut s = base.clone();
    s.curves[0].components = Some(2);
    assert!(matches!(
        validate(&s),
        Err(SceneError::ComponentCountMismatch { expected: 2, found: 1, .. })
    ));

    let mut s = base;
    s.genus = Some(2);
    assert!(matches!(validate(&s), Err(SceneError::NonCellular(_))));
}

#[test]
fn face_tracing() {
    let faces = trace_faces(&grid(1, 0, 0, 1)).unwrap();
    assert_eq!(faces.len(), 1);
    assert_eq!(faces[0].degree, 4);
    assert_eq!(faces[0].half_edges.len(), 4);

    let faces = trace_faces(&grid(2, 0, 0, 1)).unwrap();
    assert_eq!(faces.len(), 2);
    assert!(faces.iter().all(|f| f.degree == 4));

    // Every half-edge appears in exactly one walk.
    let s = genus2_filling_pair();
    let faces = trace_faces(&s).unwrap();
    let mut seen: Vec<HalfEdgeId> = faces
        .iter()
        .flat_map(|f| f.half_edges.iter().map(|(h, _)| *h))
        .collect();
    seen.sort();
    seen.dedup();
    assert_eq!(seen.len(), 4 * s.vertices.len());
}

#[test]
fn euler_and_genus() {
    assert_eq!(euler_genus(&genus2_filling_pair()).unwrap(), (-2, 2));
    assert_eq!(euler_genus(&grid(3, 1, 1, 1)).unwrap(), (0, 1));
    assert_eq!(euler_genus(&flat_triple()).unwrap(), (0, 1));
    let faces = trace_faces(&genus2_filling_pair()).unwrap();
    assert_eq!(faces.iter().map(|f| f.degree).collect::<Vec<_>>(), vec![8, 8]);
}

#[test]
fn bigons() {
    for (p, q, r, s) in [(1, 0, 0, 1), (2, 1, 1, 1), (3, 1, 1, 2), (2, 0, 0, 3)] {
        assert!(find_bigons(&grid(p, q, r, s), &c("A"), &c("B")).unwrap().is_empty());
    }
    assert!(find_bigons(&genus2_filling_pair(), &c("A"), &c("B")).unwrap().is_empty());
    let b = bigon_control();
    assert_eq!(find_bigons(&b, &c("A"), &c("B")).unwrap().len(), 2);
    assert!(matches!(
        resolve(&b, &c("A"), &c("B")),
        Err(SceneError::BigonPresent { .. })
    ));
}

#[test]
fn region_condition() {
    let (c1, c2, c3) = (c("c1"), c("c2"), c("c3"));
    assert!(!check_region_condition(&flat_triple(), &c1, &c2, &c3).unwrap());
    assert!(check_region_condition(&alpha_beta_alpha(), &c1, &c2, &c3).unwrap());
    assert!(matches!(
        check_region_condition(&flat_triple(), &c1, &c2, &c("c4")),
        Err(SceneError::UnknownCurve(_))
    ));
}

#[test]
fn resolution_matches_torus_product() {
    let s = grid(1, 0, 0, 1);
    let ab = resolve(&s, &c("A"), &c("B")).unwrap();
    assert_eq!(classes(&ab), vec![class(1, 1)]);
    let ba = resolve(&s, &c("B"), &c("A")).unwrap();
    assert_eq!(classes(&ba), vec![class(1, -1)]);
    let flipped = resolve_with(&s, &c("A"), &c("B"), SmoothingConvention::Flipped).unwrap();
    assert_eq!(classes(&flipped), vec![class(1, -1)]);
    assert!(ab.smoothings.len() == 1 && ab.curves.len() == 1);
    assert!(matches!(
        resolve(&s, &c("A"), &c("A")),
        Err(SceneError::SameCurve(_))
    ));
    assert!(matches!(
        resolve(&s, &c("A"), &c("Q")),
        Err(SceneError::UnknownCurve(_))
    ));
}

#[test]
fn resolution_of_grids_against_oracle() {
    for s in grid_scenes(2) {
        let census = components(&s).unwrap();
        let total = |curve: &str| {
            let cs: Vec<TorusClass> = census.of_curve(&c(curve)).map(|k| k.class().unwrap()).collect();
            power(cs[0], cs.len() as i64).unwrap()
        };
        let want = multiply(total("A"), total("B")).unwrap();
        let r = resolve(&s, &c("A"), &c("B")).unwrap();
        let got = classes(&r);
        assert_eq!(got.len() as i64, want.multiplicity(), "{}", s.name);
        assert!(got.iter().all(|&k| k == want.primitive()), "{}", s.name);
        assert!(trivial_components(&r).unwrap().is_empty());
    }
}

#[test]
fn disjoint_pair_is_only_relabeled() {
    let s = disjoint_pair();
    let r = resolve(&s, &c("A"), &c("A2")).unwrap();
    assert!(r.smoothings.is_empty());
    assert_eq!(r.vertices, s.vertices);
    assert!(r.has_curve(&c("(A*A2)")) && !r.has_curve(&c("A")));
    assert_eq!(components(&r).unwrap().len(), 3);
}

#[test]
fn census() {
    let r = resolve(&grid(2, 0, 0, 2), &c("A"), &c("B")).unwrap();
    let census = components(&r).unwrap();
    assert_eq!(census.len(), 2);
    assert_eq!(census.class_counts().get(&Some(class(1, 1))), Some(&2));

    let s = grid(2, 1, 1, 1);
    assert_eq!(components(&s).unwrap().len(), 2);
    assert_eq!(crossing_count(&s, &c("A"), &c("B")).unwrap(), 1);
    assert_eq!(crossing_count(&grid(2, 0, 0, 3), &c("A"), &c("B")).unwrap(), 6);
    assert_eq!(torus_class_of_component(&s, 0).unwrap(), class(2, 1));
    assert!(matches!(
        torus_class_of_component(&s, 9),
        Err(SceneError::UnknownComponent(9))
    ));
    assert!(matches!(
        torus_class_of_component(&genus2_filling_pair(), 0),
        Err(SceneError::MissingMarkers)
    ));
}

#[test]
fn trivial_component_detection() {
    // The region outside the trivial loop is an annulus.
    let s = trivial_component_control();
    validate_structure(&s).unwrap();
    assert!(matches!(validate(&s), Err(SceneError::NonCellular(_))));
    let found = trivial_components(&s).unwrap();
    assert_eq!(found.len(), 1);
    let census = components(&s).unwrap();
    let mut edges = census.components[found[0]].edges.clone();
    edges.sort();
    assert_eq!(edges, vec![EdgeId(1), EdgeId(4)]);

    let r = resolve(&grid(3, 1, 1, 2), &c("A"), &c("B")).unwrap();
    assert!(trivial_components(&r).unwrap().is_empty());
    assert!(trivial_components(&disjoint_pair()).unwrap().is_empty());
    let crossing = census
        .components
        .iter()
        .position(|c| c.crossings > 0)
        .unwrap();
    assert!(matches!(
        trivial_components_among(&s, &[crossing]),
        Err(SceneError::ComponentHasCrossings(_))
    ));
}

#[test]
fn parallel_copy_construction() {
    let s = grid(1, 0, 0, 1);
    let one = parallel_copies(&s, &c("A"), 1).unwrap();
    assert!(isomorphic(&one, &s).unwrap());

    let two = parallel_copies(&s, &c("A"), 2).unwrap();
    validate(&two).unwrap();
    assert_eq!(crossing_count(&two, &c("A"), &c("B")).unwrap(), 2);
    assert!(isomorphic(&two, &grid(2, 0, 0, 1)).unwrap());
    let r = resolve(&two, &c("A"), &c("B")).unwrap();
    assert_eq!(classes(&r), vec![class(2, 1)]);

    let g2 = genus2_filling_pair();
    let three = parallel_copies(&g2, &c("B"), 3).unwrap();
    assert_eq!(euler_genus(&three).unwrap(), (-2, 2));
    assert_eq!(crossing_count(&three, &c("A"), &c("B")).unwrap(), 12);
    assert!(find_bigons(&three, &c("A"), &c("B")).unwrap().is_empty());

    for n in [0, -1] {
        assert!(matches!(
            parallel_copies(&s, &c("A"), n),
            Err(SceneError::InvalidCount(_))
        ));
    }
    assert!(matches!(
        parallel_copies(&grid(2, 0, 0, 1), &c("A"), 2),
        Err(SceneError::NotSingleComponent(_, 2))
    ));
}

#[test]
fn corner_patterns_alternate() {
    for s in [grid(1, 0, 0, 1), grid(3, 1, 1, 2), genus2_filling_pair()] {
        for conv in [SmoothingConvention::Standard, SmoothingConvention::Flipped] {
            let pats = corner_patterns(&s, &c("A"), &c("B"), conv).unwrap();
            assert!(!pats.is_empty());
            assert!(pats.iter().all(CornerPattern::alternates), "{}", s.name);
        }
    }
}

#[test]
fn isomorphism_ignores_ids() {
    let s = genus2_filling_pair();
    let mut t = s.clone();
    for v in &mut t.vertices {
        v.id.0 += 100;
        v.halfedges_ccw.rotate_left(2);
        for h in &mut v.halfedges_ccw {
            h.0 += 7;
        }
    }
    t.vertices.reverse();
    for e in &mut t.edges {
        e.id.0 += 3;
        for h in &mut e.half {
            h.0 += 7;
        }
        e.half.swap(0, 1);
    }
    t.name = "renamed".to_string();
    assert!(isomorphic(&s, &t).unwrap());
    assert!(!isomorphic(&s, &bigon_control()).unwrap());
}

#[test]
fn bundle_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.jsonl");
    let scenes = grid_scenes(1);
    save_bundle(&path, &scenes).unwrap();
    assert_eq!(load_bundle(&path).unwrap(), scenes);
}

proptest! {
    #[test]
    fn json_round_trip(p in -3i64..=3, q in -3i64..=3, r in -3i64..=3, s in -3i64..=3) {
        prop_assume!(p * s - q * r != 0);
        let scene = grid(p, q, r, s);
        prop_assert_eq!(from_json(&to_json(&scene).unwrap()).unwrap(), scene.clone());
        let resolved = resolve(&scene, &c("A"), &c("B")).unwrap();
        prop_assert_eq!(from_json(&to_json(&resolved).unwrap()).unwrap(), resolved);
    }

    #[test]
    fn grid_invariants(p in -3i64..=3, q in -3i64..=3, r in -3i64..=3, s in -3i64..=3) {
        prop_assume!(p * s - q * r != 0);
        let scene = grid(p, q, r, s);
        let d = validate(&scene).unwrap();
        let crossings = (p * s - q * r).unsigned_abs() as usize;
        prop_assert_eq!(d.crossings, crossings);
        prop_assert_eq!(d.genus, 1);
        prop_assert_eq!(d.faces, crossings);
        let resolved = resolve(&scene, &c("A"), &c("B")).unwrap();
        validate_structure(&resolved).unwrap();
        let census = components(&resolved).unwrap();
        let a = normalize(p, q).unwrap();
        let b = normalize(r, s).unwrap();
        let product = multiply(a, b).unwrap();
        for comp in &census.components {
            prop_assert_eq!(comp.class(), Some(product.primitive()));
        }
        prop_assert_eq!(census.len() as i64, product.multiplicity());
    }
}
