//! Twist coordinates of curve systems relative to a pants decomposition.
//!
//! A decomposition glues pairs of pants along slots; each glued pair is an
//! internal pants curve `α_i`, each unglued slot a boundary component
//! `c_j`. A curve system is recorded by its intersection number `m_i` and
//! twisting number `t_i` with every `α_i`, and its intersection number
//! `b_j` with every `c_j`.
//!
//! Curves are numbered from 1 in the order of the gluing list; boundary
//! slots are ordered by pants, then slot index.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::torus::TwistDirection;

#[derive(Debug, Error)]
pub enum DtError {
    #[error("slot {0} is glued more than once")]
    SlotReuse(SlotRef),
    #[error("unknown pants {0:?}")]
    UnknownPants(String),
    #[error("duplicate pants id {0:?}")]
    DuplicatePants(String),
    #[error("malformed slot reference {0:?}; expected pantsId.slotIndex with index 0, 1 or 2")]
    BadSlot(String),
    #[error("count mismatch: {0}")]
    CountMismatch(String),
    #[error("{field} has {found} entries, expected {expected}")]
    LengthMismatch {
        field: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("slot values around pants {0:?} have odd sum")]
    ParityViolation(String),
    #[error("curve {0} is missed (m = 0) but has negative twist")]
    NegativeTwistOnMissedCurve(usize),
    #[error("no pants curve with index {index} (decomposition has {count})")]
    UnknownCurveIndex { index: usize, count: usize },
    #[error("cannot twist along curve {0}: the system misses it")]
    TwistOnMissedCurve(usize),
    #[error("intersection coordinates differ")]
    IntersectionMismatch,
    #[error("curve {0} is missed by both systems but their twist counts differ")]
    MissedCurveTwistMismatch(usize),
    #[error("integer overflow in twist arithmetic")]
    Overflow,
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed coordinate file: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, DtError>;

/// Slot `slot` (0, 1 or 2) of pants `pants`, written `pants.slot`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SlotRef {
    pub pants: String,
    pub slot: u8,
}

impl fmt::Display for SlotRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.pants, self.slot)
    }
}

impl FromStr for SlotRef {
    type Err = DtError;

    fn from_str(s: &str) -> Result<Self> {
        let (pants, slot) = s.rsplit_once('.').ok_or_else(|| DtError::BadSlot(s.to_string()))?;
        let slot: u8 = slot.parse().map_err(|_| DtError::BadSlot(s.to_string()))?;
        if slot > 2 || pants.is_empty() {
            return Err(DtError::BadSlot(s.to_string()));
        }
        Ok(SlotRef {
            pants: pants.to_string(),
            slot,
        })
    }
}

impl TryFrom<String> for SlotRef {
    type Error = DtError;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SlotRef> for String {
    fn from(s: SlotRef) -> Self {
        s.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pants {
    pub id: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PantsDecomposition {
    pub pants: Vec<Pants>,
    pub gluing: Vec<[SlotRef; 2]>,
}

/// Surface type of a valid decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SurfaceType {
    pub genus: u32,
    pub boundary: usize,
    pub curves: usize,
}

/// Where a slot's value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SlotSource {
    Curve(usize),
    Boundary(usize),
}

impl PantsDecomposition {
    pub fn new(pants: &[&str], gluing: &[(&str, &str)]) -> Result<Self> {
        Ok(PantsDecomposition {
            pants: pants.iter().map(|p| Pants { id: p.to_string() }).collect(),
            gluing: gluing
                .iter()
                .map(|(a, b)| Ok([a.parse()?, b.parse()?]))
                .collect::<Result<_>>()?,
        })
    }

    pub fn curve_count(&self) -> usize {
        self.gluing.len()
    }

    /// Unglued slots, ordered by pants then slot index.
    pub fn boundary_slots(&self) -> Vec<SlotRef> {
        let glued: HashSet<&SlotRef> = self.gluing.iter().flatten().collect();
        self.pants
            .iter()
            .flat_map(|p| {
                (0..3u8).map(move |slot| SlotRef {
                    pants: p.id.clone(),
                    slot,
                })
            })
            .filter(|s| !glued.contains(s))
            .collect()
    }

    fn slot_sources(&self) -> Vec<[SlotSource; 3]> {
        let index: HashMap<&str, usize> = self
            .pants
            .iter()
            .enumerate()
            .map(|(i, p)| (p.id.as_str(), i))
            .collect();
        let mut out = vec![[SlotSource::Boundary(usize::MAX); 3]; self.pants.len()];
        for (ci, pair) in self.gluing.iter().enumerate() {
            for s in pair {
                out[index[s.pants.as_str()]][s.slot as usize] = SlotSource::Curve(ci);
            }
        }
        for (bi, s) in self.boundary_slots().iter().enumerate() {
            out[index[s.pants.as_str()]][s.slot as usize] = SlotSource::Boundary(bi);
        }
        out
    }
}

/// Checks slot pairing, connectivity and the pants/curve count identities.
pub fn validate_decomposition(d: &PantsDecomposition) -> Result<SurfaceType> {
    let mut index = HashMap::new();
    for (i, p) in d.pants.iter().enumerate() {
        if index.insert(p.id.as_str(), i).is_some() {
            return Err(DtError::DuplicatePants(p.id.clone()));
        }
    }
    let mut used = HashSet::new();
    let mut parent: Vec<usize> = (0..d.pants.len()).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for pair in &d.gluing {
        for s in pair {
            if !index.contains_key(s.pants.as_str()) {
                return Err(DtError::UnknownPants(s.pants.clone()));
            }
            if !used.insert(s.clone()) {
                return Err(DtError::SlotReuse(s.clone()));
            }
        }
        let a = root(&mut parent, index[pair[0].pants.as_str()]);
        let b = root(&mut parent, index[pair[1].pants.as_str()]);
        parent[a] = b;
    }
    if d.pants.is_empty() {
        return Err(DtError::CountMismatch("no pants".to_string()));
    }
    let first = root(&mut parent, 0);
    if (0..d.pants.len()).any(|i| root(&mut parent, i) != first) {
        return Err(DtError::CountMismatch("decomposition is disconnected".to_string()));
    }
    let p = d.pants.len() as i64;
    let c = d.gluing.len() as i64;
    let b = 3 * p - 2 * c;
    let twice_genus = 2 + p - b;
    if twice_genus < 0 || twice_genus % 2 != 0 {
        return Err(DtError::CountMismatch(format!(
            "{p} pants with {b} boundary slots give no integral genus"
        )));
    }
    let genus = twice_genus / 2;
    if c != 3 * genus + b - 3 {
        return Err(DtError::CountMismatch(format!(
            "{c} pants curves, expected {}",
            3 * genus + b - 3
        )));
    }
    Ok(SurfaceType {
        genus: genus as u32,
        boundary: b as usize,
        curves: c as usize,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DtCoords {
    /// Intersection with each pants curve.
    pub m: Vec<u64>,
    /// Twisting around each pants curve.
    pub t: Vec<i64>,
    /// Intersection with each boundary component.
    pub b: Vec<u64>,
}

fn check_len(field: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(DtError::LengthMismatch {
            field,
            expected,
            found,
        })
    }
}

pub fn validate_coords(d: &PantsDecomposition, x: &DtCoords) -> Result<()> {
    validate_decomposition(d)?;
    check_len("m", d.curve_count(), x.m.len())?;
    check_len("t", d.curve_count(), x.t.len())?;
    check_len("b", d.boundary_slots().len(), x.b.len())?;
    for (pants, sources) in d.pants.iter().zip(d.slot_sources()) {
        let sum: u128 = sources
            .iter()
            .map(|s| match *s {
                SlotSource::Curve(i) => u128::from(x.m[i]),
                SlotSource::Boundary(j) => u128::from(x.b[j]),
            })
            .sum();
        if !sum.is_multiple_of(2) {
            return Err(DtError::ParityViolation(pants.id.clone()));
        }
    }
    for (i, (&m, &t)) in x.m.iter().zip(&x.t).enumerate() {
        if m == 0 && t < 0 {
            return Err(DtError::NegativeTwistOnMissedCurve(i + 1));
        }
    }
    Ok(())
}

fn curve_slot(x: &DtCoords, i: usize) -> Result<usize> {
    if i == 0 || i > x.m.len() {
        return Err(DtError::UnknownCurveIndex {
            index: i,
            count: x.m.len(),
        });
    }
    Ok(i - 1)
}

/// Intersection number of the system with pants curve `i` (1-based).
pub fn pants_curve_intersection(x: &DtCoords, i: usize) -> Result<u64> {
    Ok(x.m[curve_slot(x, i)?])
}

/// The system `α_1^{k_1} ⋯ α_C^{k_C} β`: twists shift, nothing else moves.
pub fn twist_multiply(x: &DtCoords, k: &[i64]) -> Result<DtCoords> {
    check_len("k", x.t.len(), k.len())?;
    let mut out = x.clone();
    for (i, (&ki, &m)) in k.iter().zip(&x.m).enumerate() {
        if ki == 0 {
            continue;
        }
        if m == 0 {
            return Err(DtError::TwistOnMissedCurve(i + 1));
        }
        out.t[i] = out.t[i].checked_add(ki).ok_or(DtError::Overflow)?;
    }
    Ok(out)
}

/// Dehn twist along pants curve `i` (1-based): `t_i ← t_i ± m_i`.
pub fn dehn_twist(x: &DtCoords, i: usize, direction: TwistDirection) -> Result<DtCoords> {
    let slot = curve_slot(x, i)?;
    let m = i64::try_from(x.m[slot]).map_err(|_| DtError::Overflow)?;
    let step = match direction {
        TwistDirection::Positive => m,
        TwistDirection::Negative => -m,
    };
    let mut out = x.clone();
    out.t[slot] = out.t[slot].checked_add(step).ok_or(DtError::Overflow)?;
    Ok(out)
}

/// Exponents `k` with `twist_multiply(x2, k) = x1`.
pub fn solve_twists(x1: &DtCoords, x2: &DtCoords) -> Result<Vec<i64>> {
    if x1.m != x2.m || x1.b != x2.b || x1.t.len() != x2.t.len() {
        return Err(DtError::IntersectionMismatch);
    }
    x1.t
        .iter()
        .zip(&x2.t)
        .zip(&x1.m)
        .enumerate()
        .map(|(i, ((&t1, &t2), &m))| {
            if m == 0 && t1 != t2 {
                return Err(DtError::MissedCurveTwistMismatch(i + 1));
            }
            t1.checked_sub(t2).ok_or(DtError::Overflow)
        })
        .collect()
}

/// A decomposition together with one coordinate vector, as stored on disk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DtFile {
    #[serde(flatten)]
    pub decomposition: PantsDecomposition,
    #[serde(flatten)]
    pub coords: DtCoords,
}

impl DtFile {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        fs::write(path, text)?;
        Ok(())
    }
}

/// Two pants glued along all three slots.
pub fn closed_genus_two() -> PantsDecomposition {
    PantsDecomposition::new(&["P", "Q"], &[("P.0", "Q.0"), ("P.1", "Q.1"), ("P.2", "Q.2")])
        .expect("well-formed slots")
}

/// One pants with two slots glued together.
pub fn one_holed_torus() -> PantsDecomposition {
    PantsDecomposition::new(&["P"], &[("P.0", "P.1")]).expect("well-formed slots")
}

pub fn pair_of_pants() -> PantsDecomposition {
    PantsDecomposition::new(&["P"], &[]).expect("well-formed slots")
}

/// The shipped decompositions with one sample coordinate vector each.
pub fn builtin_files() -> Vec<(&'static str, DtFile)> {
    vec![
        (
            "genus2_closed.json",
            DtFile {
                decomposition: closed_genus_two(),
                coords: DtCoords {
                    m: vec![2, 0, 0],
                    t: vec![3, 0, 1],
                    b: vec![],
                },
            },
        ),
        (
            "one_holed_torus.json",
            DtFile {
                decomposition: one_holed_torus(),
                coords: DtCoords {
                    m: vec![1],
                    t: vec![-2],
                    b: vec![2],
                },
            },
        ),
        (
            "pair_of_pants.json",
            DtFile {
                decomposition: pair_of_pants(),
                coords: DtCoords {
                    m: vec![],
                    t: vec![],
                    b: vec![2, 1, 1],
                },
            },
        ),
    ]
}
