use proptest::prelude::*;

use loopmul::dt::{self, DtCoords, PantsDecomposition};
use loopmul::torus::{
    convexity_profile, dehn_twist, intersection, multiply, normalize, power, signed_power_multiply,
    TorusClass, TwistDirection,
};

fn any_class(bound: i64) -> impl Strategy<Value = TorusClass> {
    (-bound..=bound, -bound..=bound)
        .prop_filter("nonzero", |&(x, y)| (x, y) != (0, 0))
        .prop_map(|(x, y)| normalize(x, y).unwrap())
}

fn simple_class(bound: i64) -> impl Strategy<Value = TorusClass> {
    any_class(bound).prop_map(TorusClass::primitive)
}

fn i(a: TorusClass, b: TorusClass) -> u64 {
    intersection(a, b).unwrap()
}

fn mul(a: TorusClass, b: TorusClass) -> TorusClass {
    multiply(a, b).unwrap()
}

proptest! {
    #[test]
    fn disjoint_classes_commute(a in any_class(6), k in 1i64..4, c in any_class(6)) {
        let b = power(a.primitive(), k).unwrap();
        prop_assert_eq!(mul(a, b), mul(b, a));
        prop_assert_eq!(i(mul(a, b), c), i(a, c) + i(b, c));
    }

    #[test]
    fn crossing_classes_do_not_commute(a in any_class(6), b in any_class(6)) {
        prop_assume!(i(a, b) > 0);
        prop_assert_ne!(mul(a, b), mul(b, a));
    }

    #[test]
    fn cancellation(a in any_class(6), b in any_class(6)) {
        prop_assume!(i(a, b) > 0);
        prop_assert_eq!(mul(a, mul(b, a)), b);
        prop_assert_eq!(mul(mul(a, b), a), b);
        prop_assert_eq!(i(a, mul(a, b)), i(a, b));
        prop_assert_eq!(i(a, mul(b, a)), i(a, b));
    }

    #[test]
    fn powers_distribute(a in any_class(6), b in any_class(6), k in 1i64..=5) {
        let lhs = mul(power(a, k).unwrap(), power(b, k).unwrap());
        prop_assert_eq!(lhs, power(mul(a, b), k).unwrap());
    }

    #[test]
    fn triangle_inequalities(a in any_class(6), b in any_class(6), c in any_class(6)) {
        let (x, y, z) = (i(a, c), i(b, c), i(mul(a, b), c));
        prop_assert!(x <= y + z && y <= x + z && z <= x + y);
    }

    #[test]
    fn exponent_law(a in any_class(5), b in any_class(5), n in -6i64..=6, m in -6i64..=6) {
        prop_assume!(i(a, b) > 0);
        let inner = signed_power_multiply(a, m, b).unwrap();
        prop_assert_eq!(
            signed_power_multiply(a, n, inner).unwrap(),
            signed_power_multiply(a, n + m, b).unwrap()
        );
    }

    #[test]
    fn profiles_are_convex(
        a in any_class(5),
        b in any_class(5),
        c in any_class(5),
        lo in -8i64..=0,
        len in 0i64..=10,
    ) {
        let p = convexity_profile(a, b, c, lo, lo + len).unwrap();
        prop_assert_eq!(p.values.len() as i64, len + 1);
        for w in p.values.windows(3) {
            prop_assert!(2 * w[1] <= w[0] + w[2]);
        }
    }

    #[test]
    fn twists_invert_and_keep_intersection(a in simple_class(6), b in any_class(6)) {
        let there = dehn_twist(a, b, TwistDirection::Positive).unwrap();
        prop_assert_eq!(dehn_twist(a, there, TwistDirection::Negative).unwrap(), b);
        prop_assert_eq!(i(a, there), i(a, b));
        let k = i(a, b) as i64;
        prop_assert_eq!(there, signed_power_multiply(a, k, b).unwrap());
    }
}

fn decomposition() -> impl Strategy<Value = PantsDecomposition> {
    prop_oneof![
        Just(dt::closed_genus_two()),
        Just(dt::one_holed_torus()),
        Just(dt::pair_of_pants()),
    ]
}

fn coords_on(d: PantsDecomposition) -> impl Strategy<Value = (PantsDecomposition, DtCoords)> {
    let c = d.curve_count();
    let b = d.boundary_slots().len();
    (
        prop::collection::vec(0u64..8, c),
        prop::collection::vec(-20i64..20, c),
        prop::collection::vec(0u64..8, b),
    )
        .prop_map(move |(m, t, b)| {
            let t = m
                .iter()
                .zip(t)
                .map(|(&mi, ti)| if mi == 0 { ti.abs() } else { ti })
                .collect();
            (d.clone(), DtCoords { m, t, b })
        })
        .prop_filter("parity", |(d, x)| dt::validate_coords(d, x).is_ok())
}

fn exponents(x: &DtCoords, raw: &[i64]) -> Vec<i64> {
    x.m.iter()
        .zip(raw.iter().cycle())
        .map(|(&m, &k)| if m == 0 { 0 } else { k })
        .collect()
}

proptest! {
    #[test]
    fn twist_round_trip(
        (d, x) in decomposition().prop_flat_map(coords_on),
        raw in prop::collection::vec(-9i64..9, 3),
        raw2 in prop::collection::vec(-9i64..9, 3),
    ) {
        let k = exponents(&x, &raw);
        let k2 = exponents(&x, &raw2);
        let y = dt::twist_multiply(&x, &k).unwrap();
        prop_assert_eq!(&dt::solve_twists(&y, &x).unwrap(), &k);
        prop_assert_eq!(&y.m, &x.m);
        prop_assert_eq!(&y.b, &x.b);
        prop_assert!(dt::validate_coords(&d, &y).is_ok());
        let sum: Vec<i64> = k.iter().zip(&k2).map(|(a, b)| a + b).collect();
        prop_assert_eq!(
            dt::twist_multiply(&y, &k2).unwrap(),
            dt::twist_multiply(&x, &sum).unwrap()
        );
    }

    #[test]
    fn dehn_twist_is_a_power(
        (_d, x) in decomposition().prop_flat_map(coords_on),
        pick in 0usize..3,
    ) {
        prop_assume!(!x.m.is_empty());
        let i = pick % x.m.len() + 1;
        let mut e = vec![0; x.m.len()];
        e[i - 1] = x.m[i - 1] as i64;
        prop_assert_eq!(
            dt::dehn_twist(&x, i, TwistDirection::Positive).unwrap(),
            dt::twist_multiply(&x, &e).unwrap()
        );
    }
}
