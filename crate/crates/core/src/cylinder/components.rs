//! Connected components of the complement of a configuration's support.
//! Faces are unit squares centered at integer points; two adjacent faces
//! communicate unless the edge segment between them carries positive
//! multiplicity. A breadth-first search over canonical faces carries an
//! unreduced plane lift; revisiting a face with a shifted lift means the
//! component wraps around the cylinder and is therefore not contractible.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::halfint::HalfInt;

use super::{Configuration, CylGeometry};

/// Identity of a complement component: the whole cylinder (zero
/// configuration), the two y-unbounded ends, or a y-bounded component named
/// by its minimal canonical face (by row, then column).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ComponentId {
    All,
    Top,
    Bottom,
    Bounded(i64, i64),
}

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentId::All => write!(f, "all"),
            ComponentId::Top => write!(f, "top"),
            ComponentId::Bottom => write!(f, "bottom"),
            ComponentId::Bounded(a, b) => write!(f, "face({a},{b})"),
        }
    }
}

/// One component: its identity, contractibility, and the canonical faces it
/// holds inside the analysis window (the full face set for bounded
/// components; a window cut for the unbounded ones).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Component {
    pub id: ComponentId,
    pub contractible: bool,
    pub faces: BTreeSet<(i64, i64)>,
    pub y_bounded: bool,
}

/// Precomputed component structure of one configuration's complement.
pub(crate) struct ComplementAnalysis {
    geom: CylGeometry,
    window_rows: Option<(i64, i64)>,
    comps: Vec<Component>,
    face_index: BTreeMap<(i64, i64), usize>,
    top_index: usize,
    bottom_index: usize,
}

impl ComplementAnalysis {
    pub(crate) fn components(&self) -> &[Component] {
        &self.comps
    }

    /// The component containing a face given in any coordinates.
    pub(crate) fn id_of_face(&self, a: i64, b: i64) -> ComponentId {
        let (a, b) = self.geom.canonical_face(a, b);
        match self.window_rows {
            None => ComponentId::All,
            Some((lo, hi)) => {
                if b > hi {
                    self.comps[self.top_index].id
                } else if b < lo {
                    self.comps[self.bottom_index].id
                } else {
                    self.comps[*self.face_index.get(&(a, b)).expect("face inside window")].id
                }
            }
        }
    }
}

pub(crate) fn analyze_complement(config: &Configuration) -> ComplementAnalysis {
    let geom = config.geom();
    let m = geom.m();
    let n = geom.n();

    let Some((row_lo, row_hi)) = config.support_rows() else {
        // Empty support: one component, everything, wraps.
        let faces: BTreeSet<(i64, i64)> = (0..m).flat_map(|a| (-1..=1).map(move |b| (a, b))).collect();
        let comp = Component { id: ComponentId::All, contractible: false, faces, y_bounded: false };
        return ComplementAnalysis {
            geom,
            window_rows: None,
            comps: vec![comp],
            face_index: BTreeMap::new(),
            top_index: 0,
            bottom_index: 0,
        };
    };

    // Margin of n + 2 rows: wide enough that every face beyond the window
    // belongs to the unbounded end on its side, and that the holonomy loop
    // around the cylinder fits inside the window for both ends.
    let lo = row_lo - n - 2;
    let hi = row_hi + n + 2;

    let mut face_index: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    let mut comps_raw: Vec<(BTreeSet<(i64, i64)>, bool)> = Vec::new();

    for start_a in 0..m {
        for start_b in lo..=hi {
            if face_index.contains_key(&(start_a, start_b)) {
                continue;
            }
            let idx = comps_raw.len();
            let mut faces = BTreeSet::new();
            let mut lifts: BTreeMap<(i64, i64), (i64, i64)> = BTreeMap::new();
            let mut wraps = false;
            let mut queue = VecDeque::new();
            face_index.insert((start_a, start_b), idx);
            lifts.insert((start_a, start_b), (start_a, start_b));
            faces.insert((start_a, start_b));
            queue.push_back((start_a, start_b));
            while let Some((a, b)) = queue.pop_front() {
                let (lx, ly) = lifts[&(a, b)];
                let blocked_east = config.e1_mult(HalfInt::int_plus_half(a), HalfInt::from_int(b)) > 0;
                let blocked_west = config.e1_mult(HalfInt::int_plus_half(a - 1), HalfInt::from_int(b)) > 0;
                let blocked_north = config.e2_mult(HalfInt::from_int(a), HalfInt::int_plus_half(b)) > 0;
                let blocked_south = config.e2_mult(HalfInt::from_int(a), HalfInt::int_plus_half(b - 1)) > 0;
                let moves = [
                    (blocked_east, (a + 1, b), (lx + 1, ly)),
                    (blocked_west, (a - 1, b), (lx - 1, ly)),
                    (blocked_north, (a, b + 1), (lx, ly + 1)),
                    (blocked_south, (a, b - 1), (lx, ly - 1)),
                ];
                for (blocked, raw, lift) in moves {
                    if blocked {
                        continue;
                    }
                    let (ca, cb) = geom.canonical_face(raw.0, raw.1);
                    if cb < lo || cb > hi {
                        continue;
                    }
                    match lifts.get(&(ca, cb)) {
                        Some(prev) => {
                            if *prev != lift {
                                debug_assert_eq!((prev.0 - lift.0) % m, 0, "lift offsets are period multiples");
                                wraps = true;
                            }
                        }
                        None => {
                            face_index.insert((ca, cb), idx);
                            lifts.insert((ca, cb), lift);
                            faces.insert((ca, cb));
                            queue.push_back((ca, cb));
                        }
                    }
                }
            }
            comps_raw.push((faces, wraps));
        }
    }

    let top_raw = face_index[&(0, hi)];
    let bottom_raw = face_index[&(0, lo)];
    debug_assert!(
        (0..m).all(|a| face_index[&(a, hi)] == top_raw && face_index[&(a, lo)] == bottom_raw),
        "margin rows belong to single components"
    );
    debug_assert_ne!(top_raw, bottom_raw, "a nonzero configuration separates the ends");
    debug_assert!(comps_raw[top_raw].1 && comps_raw[bottom_raw].1, "unbounded ends wrap");

    let mut comps: Vec<Component> = comps_raw
        .iter()
        .enumerate()
        .map(|(i, (faces, wraps))| {
            let y_bounded = i != top_raw && i != bottom_raw;
            let id = if i == top_raw {
                ComponentId::Top
            } else if i == bottom_raw {
                ComponentId::Bottom
            } else {
                let (a, b) = faces
                    .iter()
                    .map(|(a, b)| (*b, *a))
                    .min()
                    .map(|(b, a)| (a, b))
                    .expect("components are nonempty");
                ComponentId::Bounded(a, b)
            };
            Component { id, contractible: !wraps, faces: faces.clone(), y_bounded }
        })
        .collect();

    // Re-key the face index by sorted component order.
    let mut order: Vec<usize> = (0..comps.len()).collect();
    order.sort_by_key(|i| comps[*i].id);
    let rank: BTreeMap<usize, usize> = order.iter().enumerate().map(|(r, i)| (*i, r)).collect();
    let face_index = face_index.into_iter().map(|(f, i)| (f, rank[&i])).collect();
    comps.sort_by_key(|c| c.id);
    let top_index = comps.iter().position(|c| c.id == ComponentId::Top).unwrap();
    let bottom_index = comps.iter().position(|c| c.id == ComponentId::Bottom).unwrap();

    ComplementAnalysis {
        geom,
        window_rows: Some((lo, hi)),
        comps,
        face_index,
        top_index,
        bottom_index,
    }
}

/// Connected components of the configuration's complement, sorted by id.
pub fn complement_components(config: &Configuration) -> Vec<Component> {
    analyze_complement(config).components().to_vec()
}

/// Which component of the complement contains the given face.
pub fn face_component_id(config: &Configuration, a: i64, b: i64) -> ComponentId {
    analyze_complement(config).id_of_face(a, b)
}
