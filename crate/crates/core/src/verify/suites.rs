use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::report::{outcome, to_value, Checker, SuiteReport};
use super::{Result, VerifyError};
use crate::dt::{self, DtCoords, DtError, PantsDecomposition};
use crate::scene::{self, corpus, CurveId, SceneError, SmoothingConvention};
use crate::torus::{
    self, classes_within, convexity_profile, dehn_twist, intersection, multiply, normalize, power,
    signed_power_multiply, TorusClass, TwistDirection,
};

use TwistDirection::{Negative, Positive};

type R<T> = std::result::Result<T, String>;

fn r<T>(x: torus::Result<T>) -> R<T> {
    x.map_err(|e| e.to_string())
}

fn require_bound(bound: i64) -> Result<()> {
    if bound < 1 {
        Err(VerifyError::InvalidBound(bound))
    } else {
        Ok(())
    }
}

fn run_parallel<T: Sync>(inputs: &[T], f: impl Fn(&T, &mut Checker) + Sync) -> Checker {
    let parts: Vec<Checker> = inputs
        .par_iter()
        .map(|x| {
            let mut ck = Checker::default();
            f(x, &mut ck);
            ck
        })
        .collect();
    let mut out = Checker::default();
    for p in parts {
        out.merge(p);
    }
    out
}

fn elapsed(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

fn pairs(classes: &[TorusClass]) -> Vec<(TorusClass, TorusClass)> {
    classes
        .iter()
        .flat_map(|&a| classes.iter().map(move |&b| (a, b)))
        .collect()
}

/// `b + det(a, b)·a`, canonicalized by hand.
fn transvection(a: TorusClass, b: TorusClass) -> R<TorusClass> {
    let d = a.x() * b.y() - a.y() * b.x();
    let (x, y) = (b.x() + d * a.x(), b.y() + d * a.y());
    let (x, y) = if x < 0 || (x == 0 && y < 0) { (-x, -y) } else { (x, y) };
    r(TorusClass::new(x, y))
}

fn twist_times(a: TorusClass, b: TorusClass, n: i64) -> R<TorusClass> {
    let dir = if n >= 0 { Positive } else { Negative };
    (0..n.unsigned_abs()).try_fold(b, |acc, _| r(dehn_twist(a, acc, dir)))
}

fn midpoint_convex(values: &[u64]) -> bool {
    values.windows(3).all(|w| 2 * w[1] <= w[0] + w[2])
}

/// Commutation, cancellation, powers, twists, triangle inequalities and
/// exponent laws over every class with coordinates bounded by `bound`.
pub fn product_laws(bound: i64) -> Result<SuiteReport> {
    require_bound(bound)?;
    let start = Instant::now();
    let classes = classes_within(bound);
    let ck = run_parallel(&pairs(&classes), |&(a, b), ck| {
        let inputs = || json!({ "a": a, "b": b });
        let i = intersection(a, b).unwrap_or(u64::MAX);
        let ab = r(multiply(a, b));
        let ba = r(multiply(b, a));
        if i == 0 {
            ck.check_eq("disjoint_commute", &ab, &ba, inputs);
            if let Ok(ab) = ab {
                for &c in &classes {
                    let lhs = r(intersection(ab, c));
                    let rhs = r(intersection(a, c)).and_then(|x| Ok(x + r(intersection(b, c))?));
                    ck.check_eq("disjoint_additive", lhs, rhs, || json!({ "a": a, "b": b, "c": c }));
                }
            }
        } else {
            ck.check("crossing_noncommute", ab != ba, || {
                (inputs(), outcome(&ab), outcome(&ba))
            });
            let left = ba.clone().and_then(|ba| r(multiply(a, ba)));
            ck.check_eq("cancel_left", &left, &Ok(b), inputs);
            let right = ab.clone().and_then(|ab| r(multiply(ab, a)));
            ck.check_eq("cancel_right", &right, &Ok(b), inputs);
            let kept = [&ab, &ba].map(|p| p.clone().and_then(|p| r(intersection(a, p))));
            ck.check_eq("intersection_kept", kept.to_vec(), vec![Ok(i), Ok(i)], inputs);
            for n in -3..=3 {
                for m in -3..=3 {
                    let lhs = r(signed_power_multiply(a, m, b))
                        .and_then(|x| r(signed_power_multiply(a, n, x)));
                    let rhs = r(signed_power_multiply(a, n + m, b));
                    ck.check_eq("exponent_law", lhs, rhs, || {
                        json!({ "a": a, "b": b, "n": n, "m": m })
                    });
                }
            }
        }
        for k in 1..=5 {
            let lhs = r(power(a, k)).and_then(|ak| r(multiply(ak, r(power(b, k))?)));
            let rhs = ab.clone().and_then(|ab| r(power(ab, k)));
            ck.check_eq("powers", lhs, rhs, || json!({ "a": a, "b": b, "k": k }));
        }
        if a.is_primitive() {
            let tw = r(dehn_twist(a, b, Positive));
            ck.check_eq("twist_transvection", &tw, &transvection(a, b), inputs);
            let iterated = (0..i).try_fold(b, |acc, _| r(multiply(a, acc)));
            ck.check_eq("twist_iterated", &tw, &iterated, inputs);
            let back = tw.clone().and_then(|t| r(dehn_twist(a, t, Negative)));
            ck.check_eq("twist_inverse", back, Ok(b), inputs);
        }
        if let Ok(ab) = ab {
            for &c in &classes {
                let x = [intersection(a, c), intersection(b, c), intersection(ab, c)];
                let ok = match x {
                    [Ok(x), Ok(y), Ok(z)] => x <= y + z && y <= x + z && z <= x + y,
                    _ => false,
                };
                ck.check("triangle", ok, || {
                    (
                        json!({ "a": a, "b": b, "c": c }),
                        Value::Array(x.iter().map(outcome).collect()),
                        json!("each at most the sum of the other two"),
                    )
                });
            }
        }
    });
    Ok(ck.finish(
        "product_laws",
        json!({ "bound": bound, "classes": classes.len() }),
        elapsed(start),
    ))
}

/// Midpoint convexity of `n ↦ I(a^n b, c)` and of `n ↦ I(D_a^n b, c)`.
pub fn convexity(bound: i64, n_min: i64, n_max: i64) -> Result<SuiteReport> {
    require_bound(bound)?;
    if n_min > n_max {
        return Err(VerifyError::EmptyRange(n_min, n_max));
    }
    let start = Instant::now();
    let classes = classes_within(bound);
    let ck = run_parallel(&pairs(&classes), |&(a, b), ck| {
        let products: Vec<R<TorusClass>> =
            (n_min..=n_max).map(|n| r(signed_power_multiply(a, n, b))).collect();
        let low: Vec<R<TorusClass>> = (0..=2).map(|n| r(signed_power_multiply(a, n, b))).collect();
        let twisted: Option<Vec<R<TorusClass>>> = a.is_primitive().then(|| {
            let k = intersection(a, b).unwrap_or(0) as i64;
            (n_min..=n_max)
                .map(|n| {
                    let t = twist_times(a, b, n);
                    let p = r(signed_power_multiply(a, k * n, b));
                    ck.check_eq("twist_is_power", &t, &p, || json!({ "a": a, "b": b, "n": n }));
                    t
                })
                .collect()
        });
        let profile_of = |seq: &[R<TorusClass>], c: TorusClass| -> R<Vec<u64>> {
            seq.iter()
                .map(|p| p.clone().and_then(|p| r(intersection(p, c))))
                .collect()
        };
        for &c in &classes {
            let inputs = || json!({ "a": a, "b": b, "c": c, "range": [n_min, n_max] });
            let values = profile_of(&products, c);
            let convex = values.as_ref().map(|v| midpoint_convex(v)).unwrap_or(false);
            ck.check("midpoint", convex, || (inputs(), outcome(&values), json!("convex")));
            let engine = r(convexity_profile(a, b, c, n_min, n_max)).map(|p| p.values);
            ck.check_eq("profile_matches", &engine, &values, inputs);
            let f = profile_of(&low, c);
            let ok = matches!(&f, Ok(f) if 2 * f[1] <= f[0] + f[2]);
            ck.check("square_step", ok, || (inputs(), outcome(&f), json!("2f(1) <= f(0) + f(2)")));
            if let Some(tw) = &twisted {
                let values = profile_of(tw, c);
                let convex = values.as_ref().map(|v| midpoint_convex(v)).unwrap_or(false);
                ck.check("twist_midpoint", convex, || (inputs(), outcome(&values), json!("convex")));
            }
        }
    });
    let mut ck = ck;
    let spot = spot_profile();
    ck.check_eq("spot_profile", spot, Ok(vec![5, 3, 1, 1, 3]), || {
        json!({ "a": [1, 0], "b": [0, 1], "c": [1, 2], "range": [-2, 2] })
    });
    Ok(ck.finish(
        "convexity",
        json!({ "bound": bound, "n_min": n_min, "n_max": n_max }),
        elapsed(start),
    ))
}

fn spot_profile() -> R<Vec<u64>> {
    let a = r(TorusClass::new(1, 0))?;
    let b = r(TorusClass::new(0, 1))?;
    let c = r(TorusClass::new(1, 2))?;
    r(convexity_profile(a, b, c, -2, 2)).map(|p| p.values)
}

/// Twists along crossing simple loops do not commute, and
/// `D_a^{-1} D_b` fixes no class in a bounded window.
pub fn twist_dynamics(bound: i64, gamma_bound: i64) -> Result<SuiteReport> {
    require_bound(bound)?;
    require_bound(gamma_bound)?;
    let start = Instant::now();
    let simple: Vec<TorusClass> = classes_within(bound)
        .into_iter()
        .filter(|c| c.is_primitive())
        .collect();
    let gammas = classes_within(gamma_bound);
    let all = pairs(&simple);
    let crossing: Vec<_> = all
        .iter()
        .copied()
        .filter(|&(a, b)| intersection(a, b).map(|i| i > 0).unwrap_or(false))
        .collect();
    let ck = run_parallel(&crossing, |&(a, b), ck| {
        let lhs = r(dehn_twist(b, a, Positive)).and_then(|x| r(dehn_twist(a, x, Positive)));
        let rhs = r(dehn_twist(a, a, Positive)).and_then(|x| r(dehn_twist(b, x, Positive)));
        ck.check("noncommuting", lhs.is_ok() && lhs != rhs, || {
            (json!({ "a": a, "b": b }), outcome(&lhs), outcome(&rhs))
        });
        for &g in &gammas {
            let image = r(dehn_twist(b, g, Positive)).and_then(|x| r(dehn_twist(a, x, Negative)));
            ck.check("fixed_point_free", image.is_ok() && image != Ok(g), || {
                (json!({ "a": a, "b": b, "gamma": g }), outcome(&image), to_value(&g))
            });
        }
    });
    Ok(ck.finish(
        "twist_dynamics",
        json!({
            "bound": bound,
            "gamma_bound": gamma_bound,
            "pairs": crossing.len(),
            "skipped_disjoint": all.len() - crossing.len(),
            "evidence": "bounded window",
        }),
        elapsed(start),
    ))
}

/// `Σ I(a_i,b) I(a_i,c) − I(b,c) ≤ I(D_{a_1}⋯D_{a_m} b, c) ≤ Σ … + I(b,c)`
/// for `m` parallel copies of one simple loop.
pub fn twist_bounds(bound: i64, m_max: i64) -> Result<SuiteReport> {
    require_bound(bound)?;
    require_bound(m_max)?;
    let start = Instant::now();
    let classes = classes_within(bound);
    let simple: Vec<TorusClass> = classes.iter().copied().filter(|c| c.is_primitive()).collect();
    let inputs: Vec<(TorusClass, TorusClass)> = simple
        .iter()
        .flat_map(|&a| classes.iter().map(move |&b| (a, b)))
        .collect();
    let mut ck = run_parallel(&inputs, |&(a, b), ck| {
        let mut image = Ok(b);
        for m in 0..=m_max {
            if m > 0 {
                image = image.and_then(|x| r(dehn_twist(a, x, Positive)));
            }
            for &c in &classes {
                let (mid, sum, e) = match twist_bound_terms(a, b, c, m, &image) {
                    Ok(t) => t,
                    Err(err) => {
                        ck.check("terms", false, || {
                            (json!({ "a": a, "b": b, "c": c, "m": m }), json!(err), Value::Null)
                        });
                        continue;
                    }
                };
                let inputs = || json!({ "a": a, "b": b, "c": c, "m": m });
                ck.check("lower", sum - e <= mid, || (inputs(), json!(sum - e), json!(mid)));
                ck.check("upper", mid <= sum + e, || (inputs(), json!(mid), json!(sum + e)));
            }
        }
    });
    let spot = (|| {
        let a = r(TorusClass::new(1, 0))?;
        let b = r(TorusClass::new(0, 1))?;
        let c = r(TorusClass::new(1, 2))?;
        let image = twist_times(a, b, 2);
        let (mid, sum, e) = twist_bound_terms(a, b, c, 2, &image)?;
        Ok::<_, String>([mid, sum - e, sum + e])
    })();
    ck.check_eq("spot_value", spot, Ok([3, 3, 5]), || {
        json!({ "a": [1, 0], "b": [0, 1], "c": [1, 2], "m": 2 })
    });
    Ok(ck.finish(
        "twist_bounds",
        json!({ "bound": bound, "m_max": m_max }),
        elapsed(start),
    ))
}

fn twist_bound_terms(
    a: TorusClass,
    b: TorusClass,
    c: TorusClass,
    m: i64,
    image: &R<TorusClass>,
) -> R<(i128, i128, i128)> {
    let image = image.clone()?;
    let mid = r(intersection(image, c))? as i128;
    let sum = m as i128 * r(intersection(a, b))? as i128 * r(intersection(a, c))? as i128;
    let e = r(intersection(b, c))? as i128;
    Ok((mid, sum, e))
}

/// Grid scenes resolved combinatorially, compared against the closed
/// formula for the product, plus positive and negative control scenes.
pub fn resolution_oracle(bound: i64, convention: SmoothingConvention) -> Result<SuiteReport> {
    require_bound(bound)?;
    let start = Instant::now();
    let range = -bound..=bound;
    let mut grids: Vec<[i64; 4]> = Vec::new();
    for p in range.clone() {
        for q in range.clone() {
            for r in range.clone() {
                for s in range.clone() {
                    if p * s - q * r != 0 {
                        grids.push([p, q, r, s]);
                    }
                }
            }
        }
    }
    // Smallest witnesses first.
    grids.sort_by_key(|g| (g.iter().map(|x| x.abs()).sum::<i64>(), *g));
    let (a_id, b_id) = (CurveId::new("A"), CurveId::new("B"));
    let mut ck = run_parallel(&grids, |&[p, q, rr, s], ck| {
        let (a, b) = match (normalize(p, q), normalize(rr, s)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return,
        };
        let inputs = || json!({ "grid": [p, q, rr, s], "a": a, "b": b });
        let grid = match scene::torus_grid_scene(p, q, rr, s) {
            Ok(g) => g,
            Err(e) => {
                ck.check("build", false, || (inputs(), json!(e.to_string()), Value::Null));
                return;
            }
        };
        let bigons = scene::find_bigons(&grid, &a_id, &b_id).map(|f| f.len());
        ck.check_eq("bigon_free", outcome(&bigons), json!(0), inputs);
        let crossings = scene::crossing_count(&grid, &a_id, &b_id).map(|n| n as u64);
        let det = (p * s - q * rr).unsigned_abs();
        ck.check_eq(
            "crossings",
            vec![outcome(&crossings), outcome(&intersection(a, b))],
            vec![json!(det), json!(det)],
            inputs,
        );
        let patterns = scene::corner_patterns(&grid, &a_id, &b_id, convention)
            .map(|ps| ps.iter().all(|p| p.alternates()));
        ck.check_eq("corner_alternation", outcome(&patterns), json!(true), inputs);
        let resolved = match scene::resolve_with(&grid, &a_id, &b_id, convention) {
            Ok(s) => s,
            Err(e) => {
                ck.check("resolve", false, || (inputs(), json!(e.to_string()), Value::Null));
                return;
            }
        };
        let trivial = scene::trivial_components(&resolved);
        ck.check_eq("no_trivial", outcome(&trivial), json!([]), inputs);
        let census: std::result::Result<Vec<(Option<TorusClass>, usize)>, SceneError> =
            scene::components(&resolved).map(|c| c.class_counts().into_iter().collect());
        let predicted: R<Vec<(Option<TorusClass>, usize)>> = r(multiply(a, b))
            .map(|ab| vec![(Some(ab.primitive()), ab.multiplicity() as usize)]);
        ck.check_eq("census", outcome(&census), outcome(&predicted), inputs);
    });

    let bigon = corpus::bigon_control();
    let found = scene::find_bigons(&bigon, &a_id, &b_id).map(|f| f.len());
    let refused = matches!(
        scene::resolve_with(&bigon, &a_id, &b_id, convention),
        Err(SceneError::BigonPresent { .. })
    );
    ck.check("control_bigon", matches!(found, Ok(n) if n > 0) && refused, || {
        (json!(bigon.name), outcome(&found), json!({ "resolve_refused": refused }))
    });
    let trivial = corpus::trivial_component_control();
    let found = scene::trivial_components(&trivial);
    ck.check("control_trivial", matches!(&found, Ok(v) if !v.is_empty()), || {
        (json!(trivial.name), outcome(&found), json!("nonempty"))
    });
    let (c1, c2, c3) = (CurveId::new("c1"), CurveId::new("c2"), CurveId::new("c3"));
    let triple = scene::check_region_condition(&corpus::flat_triple(), &c1, &c2, &c3);
    let parallel = scene::check_region_condition(&corpus::alpha_beta_alpha(), &c1, &c2, &c3);
    ck.check_eq(
        "control_region_condition",
        vec![outcome(&triple), outcome(&parallel)],
        vec![json!(false), json!(true)],
        || json!(["flat_triple", "alpha_beta_alpha"]),
    );
    let pair = corpus::genus2_filling_pair();
    let outcome_pair = scene::resolve_with(&pair, &a_id, &b_id, convention)
        .and_then(|s| scene::trivial_components(&s));
    ck.check_eq("control_filling_pair", outcome(&outcome_pair), json!([]), || {
        json!(pair.name)
    });

    Ok(ck.finish(
        "resolution_oracle",
        json!({ "bound": bound, "convention": convention, "grids": grids.len() }),
        elapsed(start),
    ))
}

fn random_coords(d: &PantsDecomposition, rng: &mut ChaCha8Rng) -> DtCoords {
    let curves = d.curve_count();
    let boundary = d.boundary_slots().len();
    loop {
        let m: Vec<u64> = (0..curves).map(|_| rng.gen_range(0..=6)).collect();
        let b: Vec<u64> = (0..boundary).map(|_| rng.gen_range(0..=6)).collect();
        let t = m
            .iter()
            .map(|&mi| {
                if mi == 0 {
                    rng.gen_range(0..=4)
                } else {
                    rng.gen_range(-10..=10)
                }
            })
            .collect();
        let x = DtCoords { m, t, b };
        if dt::validate_coords(d, &x).is_ok() {
            return x;
        }
    }
}

fn random_exponents(x: &DtCoords, rng: &mut ChaCha8Rng) -> Vec<i64> {
    x.m.iter()
        .map(|&mi| if mi == 0 { 0 } else { rng.gen_range(-5..=5) })
        .collect()
}

fn d<T>(x: dt::Result<T>) -> R<T> {
    x.map_err(|e| e.to_string())
}

/// Seeded round trips of twist coordinates on the shipped decompositions.
pub fn twist_coordinates(trials: u64, seed: u64) -> Result<SuiteReport> {
    if trials == 0 {
        return Err(VerifyError::InvalidTrials);
    }
    let start = Instant::now();
    let files = dt::builtin_files();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ck = Checker::default();
    let mut per_file: BTreeMap<&str, u64> = BTreeMap::new();
    for trial in 0..trials {
        let (name, file) = &files[(trial % files.len() as u64) as usize];
        let dec = &file.decomposition;
        *per_file.entry(name).or_default() += 1;
        let x = random_coords(dec, &mut rng);
        let k = random_exponents(&x, &mut rng);
        let k2 = random_exponents(&x, &mut rng);
        let inputs = || json!({ "decomposition": name, "x": x, "k": k, "k2": k2, "trial": trial });

        let y = d(dt::twist_multiply(&x, &k));
        let solved = y.clone().and_then(|y| d(dt::solve_twists(&y, &x)));
        ck.check_eq("round_trip", &solved, &Ok(k.clone()), inputs);
        let same = y.as_ref().map(|y| (y.m == x.m, y.b == x.b));
        ck.check_eq("intersections_fixed", &same, &Ok((true, true)), inputs);
        let valid = y.clone().and_then(|y| d(dt::validate_coords(dec, &y)));
        ck.check_eq("still_valid", valid, Ok(()), inputs);
        let stepwise = y.clone().and_then(|y| d(dt::twist_multiply(&y, &k2)));
        let sum: Vec<i64> = k.iter().zip(&k2).map(|(a, b)| a + b).collect();
        let at_once = d(dt::twist_multiply(&x, &sum));
        ck.check_eq("commutation", stepwise, at_once, inputs);
        if !x.m.is_empty() {
            let i = rng.gen_range(1..=x.m.len());
            let twisted = d(dt::dehn_twist(&x, i, TwistDirection::Positive));
            let mut e = vec![0i64; x.m.len()];
            e[i - 1] = x.m[i - 1] as i64;
            let via_k = d(dt::twist_multiply(&x, &e));
            ck.check_eq("dehn_twist_is_multiply", twisted, via_k, || {
                json!({ "decomposition": name, "x": x, "i": i })
            });
        }
        if let Some(i) = x.m.iter().position(|&mi| mi == 0) {
            let mut bad = vec![0i64; x.m.len()];
            bad[i] = 1;
            let refused = matches!(dt::twist_multiply(&x, &bad), Err(DtError::TwistOnMissedCurve(j)) if j == i + 1);
            ck.check("refuse_missed_twist", refused, || (inputs(), json!(bad), json!("refused")));
        }
    }
    let (_, g2) = &files[0];
    let (_, torus) = &files[1];
    let mismatch = dt::solve_twists(&g2.coords, &torus.coords);
    ck.check(
        "expected_mismatch",
        matches!(mismatch, Err(DtError::IntersectionMismatch)),
        || (json!("closed genus 2 vs one-holed torus"), outcome(&mismatch), json!("IntersectionMismatch")),
    );
    Ok(ck.finish(
        "twist_coordinates",
        json!({ "trials": trials, "seed": seed, "per_decomposition": per_file }),
        elapsed(start),
    ))
}
