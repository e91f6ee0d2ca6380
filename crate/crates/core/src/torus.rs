//! Exact model of curve systems on the closed torus.
//!
//! An isotopy class of (closed) curve systems on the torus is a nonzero
//! integer homology vector up to global sign. A non-primitive vector
//! `d·(x, y)` with `gcd(x, y) = 1` stands for `d` parallel copies of the
//! simple loop `(x, y)`.
//!
//! The product resolves every crossing of two minimally intersecting
//! representatives. On the torus it has the closed form
//! `±(x, y) * ±(x', y') = ±((x, y) + δ(x', y'))`, where `δ` is the sign of
//! `xy' − x'y`, or the sign of `k` when `(x, y) = k(x', y')`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TorusError {
    #[error("the zero vector is not a curve system class")]
    InvalidClass,
    #[error("exponent must be positive, got {0}")]
    InvalidExponent(i64),
    #[error("({0}, {1}) is not primitive; Dehn twists need a simple loop")]
    NotSimpleLoop(i64, i64),
    #[error("integer overflow in torus arithmetic")]
    Overflow,
    #[error("cannot parse torus class from {0:?}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, TorusError>;

/// Canonical representative of `±(x, y)`: `x > 0`, or `x = 0` and `y > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[i64; 2]", into = "[i64; 2]")]
pub struct TorusClass {
    x: i64,
    y: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TwistDirection {
    Positive,
    Negative,
}

impl TwistDirection {
    fn sign(self) -> i64 {
        match self {
            TwistDirection::Positive => 1,
            TwistDirection::Negative => -1,
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(TorusError::Overflow)
}

fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(TorusError::Overflow)
}

/// Oriented area `x·y' − x'·y` of two representatives.
pub fn det(a: TorusClass, b: TorusClass) -> Result<i64> {
    mul(a.x, b.y)?
        .checked_sub(mul(b.x, a.y)?)
        .ok_or(TorusError::Overflow)
}

impl TorusClass {
    /// Canonical representative of `±(x, y)`.
    pub fn new(x: i64, y: i64) -> Result<Self> {
        normalize(x, y)
    }

    pub fn x(self) -> i64 {
        self.x
    }

    pub fn y(self) -> i64 {
        self.y
    }

    pub fn coords(self) -> (i64, i64) {
        (self.x, self.y)
    }

    /// Number of parallel copies, `gcd(|x|, |y|)`.
    pub fn multiplicity(self) -> i64 {
        gcd(self.x, self.y)
    }

    pub fn is_primitive(self) -> bool {
        self.multiplicity() == 1
    }

    /// The simple loop of which this class is a number of parallel copies.
    pub fn primitive(self) -> TorusClass {
        let d = self.multiplicity();
        TorusClass {
            x: self.x / d,
            y: self.y / d,
        }
    }
}

impl fmt::Display for TorusClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.x, self.y)
    }
}

impl FromStr for TorusClass {
    type Err = TorusError;

    /// Accepts `x,y` and `(x,y)`, with optional whitespace.
    fn from_str(s: &str) -> Result<Self> {
        let err = || TorusError::Parse(s.to_string());
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (x, y) = trimmed.split_once(',').ok_or_else(err)?;
        let x = x.trim().parse::<i64>().map_err(|_| err())?;
        let y = y.trim().parse::<i64>().map_err(|_| err())?;
        normalize(x, y)
    }
}

impl TryFrom<[i64; 2]> for TorusClass {
    type Error = TorusError;

    fn try_from(v: [i64; 2]) -> Result<Self> {
        normalize(v[0], v[1])
    }
}

impl From<TorusClass> for [i64; 2] {
    fn from(c: TorusClass) -> Self {
        [c.x, c.y]
    }
}

pub fn normalize(x: i64, y: i64) -> Result<TorusClass> {
    if x == 0 && y == 0 {
        return Err(TorusError::InvalidClass);
    }
    if x > 0 || (x == 0 && y > 0) {
        Ok(TorusClass { x, y })
    } else {
        let x = x.checked_neg().ok_or(TorusError::Overflow)?;
        let y = y.checked_neg().ok_or(TorusError::Overflow)?;
        Ok(TorusClass { x, y })
    }
}

/// Geometric intersection number `|x·y' − x'·y|`.
pub fn intersection(a: TorusClass, b: TorusClass) -> Result<u64> {
    Ok(det(a, b)?.unsigned_abs())
}

/// The resolution product `a * b`.
pub fn multiply(a: TorusClass, b: TorusClass) -> Result<TorusClass> {
    let d = det(a, b)?;
    // Canonical representatives of parallel classes are positive multiples
    // of each other, so k > 0 and δ = +1 (including a = b).
    let delta = if d != 0 { d.signum() } else { 1 };
    normalize(add(a.x, delta * b.x)?, add(a.y, delta * b.y)?)
}

/// `k` parallel copies of `a`.
pub fn power(a: TorusClass, k: i64) -> Result<TorusClass> {
    if k <= 0 {
        return Err(TorusError::InvalidExponent(k));
    }
    normalize(mul(a.x, k)?, mul(a.y, k)?)
}

/// `a^n b`, with `a^n b = b a^{-n}` for negative `n` and `a^0 b = b`.
pub fn signed_power_multiply(a: TorusClass, n: i64, b: TorusClass) -> Result<TorusClass> {
    match n.signum() {
        0 => Ok(b),
        1 => multiply(power(a, n)?, b),
        _ => multiply(b, power(a, n.checked_neg().ok_or(TorusError::Overflow)?)?),
    }
}

/// Dehn twist along the simple loop `a`, acting by `b ↦ a^{±I(a,b)} b`.
pub fn dehn_twist(a: TorusClass, b: TorusClass, direction: TwistDirection) -> Result<TorusClass> {
    if !a.is_primitive() {
        return Err(TorusError::NotSimpleLoop(a.x, a.y));
    }
    let k = i64::try_from(intersection(a, b)?).map_err(|_| TorusError::Overflow)?;
    signed_power_multiply(a, direction.sign() * k, b)
}

/// Values `n ↦ I(a^n b, g)` over an inclusive window of exponents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvexityProfile {
    pub alpha: TorusClass,
    pub beta: TorusClass,
    pub gamma: TorusClass,
    pub n_min: i64,
    pub n_max: i64,
    pub values: Vec<u64>,
}

impl ConvexityProfile {
    /// Interior indices `i` where `2·f(i) > f(i−1) + f(i+1)`.
    pub fn convexity_violations(&self) -> Vec<i64> {
        midpoint_violations(&self.values)
            .into_iter()
            .map(|i| self.n_min + i as i64)
            .collect()
    }

    pub fn is_convex(&self) -> bool {
        midpoint_violations(&self.values).is_empty()
    }

    pub fn exponents(&self) -> impl Iterator<Item = i64> {
        self.n_min..=self.n_max
    }
}

/// Interior positions failing midpoint convexity.
pub fn midpoint_violations(values: &[u64]) -> Vec<usize> {
    values
        .windows(3)
        .enumerate()
        .filter(|(_, w)| 2 * u128::from(w[1]) > u128::from(w[0]) + u128::from(w[2]))
        .map(|(i, _)| i + 1)
        .collect()
}

/// Intersection profile `I(a^n b, g)` for `n` in `n_min..=n_max`.
pub fn convexity_profile(
    a: TorusClass,
    b: TorusClass,
    g: TorusClass,
    n_min: i64,
    n_max: i64,
) -> Result<ConvexityProfile> {
    let values = (n_min..=n_max)
        .map(|n| intersection(signed_power_multiply(a, n, b)?, g))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvexityProfile {
        alpha: a,
        beta: b,
        gamma: g,
        n_min,
        n_max,
        values,
    })
}

/// All canonical classes with `|x|, |y| ≤ bound`, in lexicographic order.
pub fn classes_within(bound: i64) -> Vec<TorusClass> {
    let mut out = Vec::new();
    for x in 0..=bound {
        for y in -bound..=bound {
            if let Ok(c) = normalize(x, y) {
                if c.x == x && c.y == y {
                    out.push(c);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: i64, y: i64) -> TorusClass {
        TorusClass::new(x, y).unwrap()
    }

    // Oracle: a^n b by repeated single products, never via the closed form.
    fn iterated_power(a: TorusClass, n: i64, b: TorusClass) -> TorusClass {
        let mut acc = b;
        for _ in 0..n.unsigned_abs() {
            acc = if n > 0 {
                multiply(a, acc).unwrap()
            } else {
                multiply(acc, a).unwrap()
            };
        }
        acc
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(-1, 2).unwrap().coords(), (1, -2));
        assert_eq!(normalize(0, -3).unwrap().coords(), (0, 3));
        assert_eq!(normalize(2, 4).unwrap().coords(), (2, 4));
        assert_eq!(normalize(0, 0), Err(TorusError::InvalidClass));
        assert_eq!(normalize(i64::MIN, 1), Err(TorusError::Overflow));
    }

    #[test]
    fn intersection_examples() {
        assert_eq!(intersection(c(1, 0), c(0, 1)).unwrap(), 1);
        assert_eq!(intersection(c(2, 1), c(1, 1)).unwrap(), 1);
        assert_eq!(intersection(c(2, 0), c(0, 3)).unwrap(), 6);
        assert_eq!(intersection(c(3, 6), c(1, 2)).unwrap(), 0);
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(multiply(c(1, 0), c(0, 1)).unwrap(), c(1, 1));
        assert_eq!(multiply(c(0, 1), c(1, 0)).unwrap().coords(), (1, -1));
        assert_eq!(multiply(c(1, 0), c(2, 0)).unwrap(), c(3, 0));
        assert_eq!(multiply(c(1, 1), c(1, 1)).unwrap(), c(2, 2));
    }

    #[test]
    fn multiply_is_sign_independent() {
        // δ flips with the representative of b, so the class is unchanged.
        for a in classes_within(3) {
            for b in classes_within(3) {
                let d = det(a, b).unwrap();
                let flipped = if d != 0 { -d.signum() } else { -1 };
                let alt = normalize(a.x - flipped * b.x, a.y - flipped * b.y).unwrap();
                assert_eq!(multiply(a, b).unwrap(), alt);
            }
        }
    }

    #[test]
    fn power_examples() {
        assert_eq!(power(c(1, 1), 3).unwrap(), c(3, 3));
        assert_eq!(power(c(2, 0), 1).unwrap(), c(2, 0));
        assert_eq!(power(c(1, -2), 2).unwrap().coords(), (2, -4));
        assert_eq!(power(c(1, 0), 0), Err(TorusError::InvalidExponent(0)));
        assert_eq!(power(c(1, 0), -2), Err(TorusError::InvalidExponent(-2)));
        assert_eq!(power(c(i64::MAX, 1), 2), Err(TorusError::Overflow));
    }

    #[test]
    fn signed_power_examples() {
        assert_eq!(signed_power_multiply(c(1, 0), 2, c(0, 1)).unwrap(), c(2, 1));
        assert_eq!(
            signed_power_multiply(c(1, 0), -1, c(0, 1)).unwrap().coords(),
            (1, -1)
        );
        assert_eq!(signed_power_multiply(c(1, 0), 0, c(0, 1)).unwrap(), c(0, 1));
    }

    #[test]
    fn signed_power_matches_iterated_and_closed_form() {
        for a in classes_within(3) {
            for b in classes_within(3) {
                let d = det(a, b).unwrap();
                if d == 0 {
                    continue;
                }
                for n in -5..=5 {
                    let direct = signed_power_multiply(a, n, b).unwrap();
                    assert_eq!(direct, iterated_power(a, n, b), "a={a} n={n} b={b}");
                    let s = d.signum();
                    let closed = normalize(s * n * a.x + b.x, s * n * a.y + b.y).unwrap();
                    assert_eq!(direct, closed, "a={a} n={n} b={b}");
                }
            }
        }
    }

    #[test]
    fn dehn_twist_examples() {
        use TwistDirection::*;
        assert_eq!(dehn_twist(c(1, 0), c(0, 1), Positive).unwrap(), c(1, 1));
        assert_eq!(dehn_twist(c(1, 0), c(0, 1), Negative).unwrap().coords(), (1, -1));
        assert_eq!(dehn_twist(c(1, 0), c(3, 0), Positive).unwrap(), c(3, 0));
        let back = dehn_twist(c(1, 0), c(1, 1), Negative).unwrap();
        assert_eq!(back, c(0, 1));
        assert_eq!(
            dehn_twist(c(2, 2), c(0, 1), Positive),
            Err(TorusError::NotSimpleLoop(2, 2))
        );
    }

    #[test]
    fn dehn_twist_is_the_transvection() {
        // Independent route: D_a(v) = v + det(a, v)·a on representatives.
        for a in classes_within(3).into_iter().filter(|a| a.is_primitive()) {
            for b in classes_within(4) {
                let d = det(a, b).unwrap();
                let expected = normalize(b.x + d * a.x, b.y + d * a.y).unwrap();
                assert_eq!(dehn_twist(a, b, TwistDirection::Positive).unwrap(), expected);
            }
        }
    }

    #[test]
    fn profile_examples() {
        let p = convexity_profile(c(1, 0), c(0, 1), c(1, 2), -2, 2).unwrap();
        assert_eq!(p.values, vec![5, 3, 1, 1, 3]);
        assert!(p.is_convex());
        let p = convexity_profile(c(1, 0), c(0, 1), c(1, 0), 0, 2).unwrap();
        assert_eq!(p.values, vec![1, 1, 1]);
        let p = convexity_profile(c(1, 1), c(1, 1), c(0, 1), 1, 3).unwrap();
        assert_eq!(p.values, vec![2, 3, 4]);
        assert_eq!(p.exponents().collect::<Vec<_>>(), vec![1, 2, 3]);
    }

    #[test]
    fn violations_are_reported_by_exponent() {
        let p = ConvexityProfile {
            alpha: c(1, 0),
            beta: c(0, 1),
            gamma: c(1, 0),
            n_min: -1,
            n_max: 2,
            values: vec![1, 3, 1, 1],
        };
        assert_eq!(p.convexity_violations(), vec![0]);
        assert!(!p.is_convex());
    }

    #[test]
    fn non_associativity_witness() {
        let (a, b, g) = (c(1, 0), c(0, 1), c(1, 1));
        let left = multiply(multiply(a, b).unwrap(), g).unwrap();
        let right = multiply(a, multiply(b, g).unwrap()).unwrap();
        assert_eq!(left, c(2, 2));
        assert_eq!(right, c(2, 0));
        let assoc_l = multiply(a, multiply(b, a).unwrap()).unwrap();
        let assoc_r = multiply(multiply(a, b).unwrap(), a).unwrap();
        assert_eq!(assoc_l, c(0, 1));
        assert_eq!(assoc_r, c(0, 1));
    }

    #[test]
    fn class_enumeration_and_parsing() {
        let one = classes_within(1);
        assert_eq!(one.len(), 4);
        assert_eq!(classes_within(4).len(), 40);
        assert_eq!("(-1, 2)".parse::<TorusClass>().unwrap().coords(), (1, -2));
        assert_eq!("3,0".parse::<TorusClass>().unwrap(), c(3, 0));
        assert!("3".parse::<TorusClass>().is_err());
        assert!("0,0".parse::<TorusClass>().is_err());
        let json = serde_json::to_string(&c(2, -1)).unwrap();
        assert_eq!(json, "[2,-1]");
        assert!(serde_json::from_str::<TorusClass>("[0,0]").is_err());
    }
}
