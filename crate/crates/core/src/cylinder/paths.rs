//! Monotone loops on the cylinder as quasi-periodic height profiles: the
//! east step in column `a` sits at height `p(a)`, with `p` nondecreasing and
//! `p(a + m) = p(a) + n`. Comparisons, the lattice of joins and meets, and
//! the unique chain decomposition of a configuration all reduce to
//! columnwise operations on profiles.

use std::collections::BTreeSet;
use std::fmt;

use crate::halfint::HalfInt;

use super::{Configuration, CylError, CylGeometry, EdgeKind};

/// An `(m, n)`-path as its canonical height vector `p(0) <= ... <= p(m-1)`
/// with `p(m-1) <= p(0) + n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathProfile {
    geom: CylGeometry,
    heights: Vec<HalfInt>,
}

impl PathProfile {
    pub fn new(geom: CylGeometry, heights: Vec<HalfInt>) -> Result<Self, CylError> {
        if heights.len() != geom.m() as usize {
            return Err(CylError::BadProfile(format!(
                "profile needs one height per column: expected {}, got {}",
                geom.m(),
                heights.len()
            )));
        }
        if let Some(bad) = heights.iter().find(|h| !h.is_proper()) {
            return Err(CylError::BadProfile(format!("height {bad} is not in Z+1/2")));
        }
        for w in heights.windows(2) {
            if w[0] > w[1] {
                return Err(CylError::BadProfile("heights must be nondecreasing".into()));
            }
        }
        let wrap = heights[0] + HalfInt::from_int(geom.n());
        if *heights.last().unwrap() > wrap {
            return Err(CylError::BadProfile(format!(
                "wrap condition fails: {} > {} + n",
                heights.last().unwrap(),
                heights[0]
            )));
        }
        Ok(PathProfile { geom, heights })
    }

    pub fn geom(&self) -> CylGeometry {
        self.geom
    }

    pub fn heights(&self) -> &[HalfInt] {
        &self.heights
    }

    /// Quasi-periodic extension to any column index.
    pub fn height_at(&self, a: i64) -> HalfInt {
        let m = self.geom.m();
        let k = a.div_euclid(m);
        self.heights[(a - k * m) as usize] + HalfInt::from_int(k * self.geom.n())
    }

    /// The indicator configuration: one east edge per column at the profile
    /// height, and the north edges filling each column gap.
    pub fn to_config(&self) -> Configuration {
        let mut edges = Vec::new();
        for a in 0..self.geom.m() {
            edges.push((EdgeKind::E2, HalfInt::from_int(a), self.height_at(a), 1u32));
            let lo = self.height_at(a);
            let hi = self.height_at(a + 1);
            let mut c = lo.plus_half();
            while c < hi {
                edges.push((EdgeKind::E1, HalfInt::int_plus_half(a), c, 1u32));
                c = c + HalfInt::from_int(1);
            }
        }
        Configuration::from_edges(self.geom, edges).expect("path indicators satisfy the ice rule")
    }

    /// Pointwise comparison: `self <= other` when every column height is.
    pub fn leq(&self, other: &PathProfile) -> bool {
        assert_eq!(self.geom, other.geom, "comparing paths requires one geometry");
        self.heights.iter().zip(&other.heights).all(|(a, b)| a <= b)
    }

    /// All canonical vertices on the path (used to decide whether two paths
    /// share a point).
    pub fn vertices(&self) -> BTreeSet<(HalfInt, HalfInt)> {
        let mut out = BTreeSet::new();
        for a in 0..self.geom.m() {
            let x = HalfInt::int_plus_half(a);
            let mut c = self.height_at(a);
            let top = self.height_at(a + 1);
            while c <= top {
                let (cx, cy) = self.geom.canonical_twice(x.twice(), c.twice());
                out.insert((HalfInt::from_twice(cx), HalfInt::from_twice(cy)));
                c = c + HalfInt::from_int(1);
            }
        }
        out
    }

    /// Whether the two paths share any point of the cylinder.
    pub fn intersects(&self, other: &PathProfile) -> bool {
        let mine = self.vertices();
        other.vertices().iter().any(|v| mine.contains(v))
    }
}

impl fmt::Display for PathProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, h) in self.heights.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{h}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PathProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Columnwise max and min: the smallest path above both and the largest
/// below both. Their indicator sum equals the sum of the inputs.
pub fn path_join_meet(a: &PathProfile, b: &PathProfile) -> (PathProfile, PathProfile) {
    assert_eq!(a.geom, b.geom, "join/meet requires one geometry");
    let join: Vec<HalfInt> = a.heights.iter().zip(&b.heights).map(|(x, y)| *x.max(y)).collect();
    let meet: Vec<HalfInt> = a.heights.iter().zip(&b.heights).map(|(x, y)| *x.min(y)).collect();
    (
        PathProfile::new(a.geom, join).expect("join of valid profiles is valid"),
        PathProfile::new(a.geom, meet).expect("meet of valid profiles is valid"),
    )
}

/// Decompose a configuration into the unique weakly decreasing chain of
/// paths summing to it: the j-th path takes the j-th largest east-edge
/// height in every column.
pub fn chain_decompose(config: &Configuration) -> Vec<PathProfile> {
    let m = config.geom().m() as usize;
    let mut columns: Vec<Vec<HalfInt>> = vec![Vec::new(); m];
    for ((s1, s2), w) in config.iter_e2() {
        let a = s1.as_integer().expect("second-lattice edges have integer column") as usize;
        for _ in 0..w {
            columns[a].push(s2);
        }
    }
    for col in &mut columns {
        col.sort();
        col.reverse();
    }
    let k = columns[0].len();
    assert!(
        columns.iter().all(|c| c.len() == k),
        "ice-rule configurations have equal east multiplicity in every column"
    );
    let mut paths = Vec::with_capacity(k);
    for j in 0..k {
        let heights: Vec<HalfInt> = columns.iter().map(|c| c[j]).collect();
        let p = PathProfile::new(config.geom(), heights)
            .expect("sorted column heights of an ice-rule configuration form a path");
        paths.push(p);
    }
    // The decomposition must reproduce the north edges as well.
    let mut sum = Configuration::zero(config.geom());
    for p in &paths {
        sum = sum.add(&p.to_config());
    }
    assert_eq!(&sum, config, "chain decomposition must re-sum to the configuration");
    paths
}

/// All path profiles with heights inside `[min_height, max_height]`.
pub fn enumerate_paths(
    geom: CylGeometry,
    min_height: HalfInt,
    max_height: HalfInt,
) -> Vec<PathProfile> {
    let mut out = Vec::new();
    let mut heights: Vec<HalfInt> = Vec::with_capacity(geom.m() as usize);
    fn rec(
        geom: CylGeometry,
        min_h: HalfInt,
        max_h: HalfInt,
        heights: &mut Vec<HalfInt>,
        out: &mut Vec<PathProfile>,
    ) {
        if heights.len() == geom.m() as usize {
            if let Ok(p) = PathProfile::new(geom, heights.clone()) {
                out.push(p);
            }
            return;
        }
        let start = heights.last().copied().unwrap_or(min_h);
        let mut c = start.max(min_h);
        while c <= max_h {
            // Wrap feasibility: final height must stay within first + n.
            if heights.first().map_or(true, |h0| c <= *h0 + HalfInt::from_int(geom.n())) {
                heights.push(c);
                rec(geom, min_h, max_h, heights, out);
                heights.pop();
            }
            c = c + HalfInt::from_int(1);
        }
    }
    rec(geom, min_height, max_height, &mut heights, &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    fn geom32() -> CylGeometry {
        CylGeometry::new(3, 2).unwrap()
    }

    fn p32(heights: &[i64]) -> PathProfile {
        PathProfile::new(geom32(), heights.iter().map(|t| h(*t)).collect()).unwrap()
    }

    #[test]
    fn profile_validation() {
        assert!(PathProfile::new(geom32(), vec![h(1), h(1)]).is_err());
        assert!(PathProfile::new(geom32(), vec![h(1), h(2), h(3)]).is_err());
        assert!(PathProfile::new(geom32(), vec![h(3), h(1), h(5)]).is_err());
        // Wrap violation: 1/2 + 2 = 5/2 < 7/2.
        assert!(PathProfile::new(geom32(), vec![h(1), h(1), h(7)]).is_err());
        assert!(PathProfile::new(geom32(), vec![h(1), h(1), h(5)]).is_ok());
    }

    #[test]
    fn indicator_edges() {
        let c = p32(&[3, 3, 5]).to_config();
        assert_eq!(c.e2_mult(HalfInt::from_int(0), h(3)), 1);
        assert_eq!(c.e2_mult(HalfInt::from_int(1), h(3)), 1);
        assert_eq!(c.e2_mult(HalfInt::from_int(2), h(5)), 1);
        assert_eq!(c.e1_mult(h(3), HalfInt::from_int(2)), 1);
        assert_eq!(c.e1_mult(h(5), HalfInt::from_int(3)), 1);
        assert_eq!(c.edge_count(), 5);
    }

    #[test]
    fn step_counts() {
        for p in enumerate_paths(geom32(), h(1), h(7)) {
            let c = p.to_config();
            let east: u32 = c.iter_e2().map(|(_, w)| w).sum();
            let north: u32 = c.iter_e1().map(|(_, w)| w).sum();
            assert_eq!(east, 3);
            assert_eq!(north, 2);
        }
    }

    #[test]
    fn indicator_map_is_injective() {
        let paths = enumerate_paths(geom32(), h(1), h(7));
        let configs: BTreeSet<Configuration> = paths.iter().map(|p| p.to_config()).collect();
        assert_eq!(configs.len(), paths.len());
    }

    #[test]
    fn pointwise_order() {
        assert!(p32(&[3, 3, 5]).leq(&p32(&[3, 5, 5])));
        let p = p32(&[3, 3, 5]);
        assert!(p.leq(&p));
        let q = p32(&[1, 5, 5]);
        assert!(!p.leq(&q) && !q.leq(&p));
    }

    #[test]
    fn join_meet_profiles() {
        let g = CylGeometry::new(3, 4).unwrap();
        let p1 = PathProfile::new(g, vec![h(3), h(3), h(9)]).unwrap();
        let p2 = PathProfile::new(g, vec![h(1), h(5), h(7)]).unwrap();
        let (join, meet) = path_join_meet(&p1, &p2);
        assert_eq!(join, PathProfile::new(g, vec![h(3), h(5), h(9)]).unwrap());
        assert_eq!(meet, PathProfile::new(g, vec![h(1), h(3), h(7)]).unwrap());
        let (jj, mm) = path_join_meet(&p1, &p1);
        assert_eq!(jj, p1);
        assert_eq!(mm, p1);
    }

    #[test]
    fn join_meet_configuration_identity_exhaustive() {
        let paths = enumerate_paths(geom32(), h(1), h(5));
        for p1 in &paths {
            for p2 in &paths {
                let (join, meet) = path_join_meet(p1, p2);
                let lhs = join.to_config().add(&meet.to_config());
                let rhs = p1.to_config().add(&p2.to_config());
                assert_eq!(lhs, rhs);
                // Lattice axioms on the exhaustive window.
                assert!(meet.leq(p1) && meet.leq(p2));
                assert!(p1.leq(&join) && p2.leq(&join));
                let (j2, m2) = path_join_meet(p2, p1);
                assert_eq!((j2, m2), (join.clone(), meet.clone()));
                let (abs1, _) = path_join_meet(p1, &meet);
                assert_eq!(abs1, *p1);
            }
        }
    }

    #[test]
    fn chain_decompose_single_path() {
        let p = p32(&[3, 3, 5]);
        assert_eq!(chain_decompose(&p.to_config()), vec![p]);
    }

    #[test]
    fn chain_decompose_orders_and_resums() {
        let p1 = p32(&[3, 3, 5]);
        let p2 = p32(&[1, 5, 5]);
        let cfg = p1.to_config().add(&p2.to_config());
        let chain = chain_decompose(&cfg);
        assert_eq!(chain.len(), 2);
        assert!(chain[1].leq(&chain[0]));
        // Crossing summands are rearranged into the comparable pair.
        assert_eq!(chain[0], p32(&[3, 5, 5]));
        assert_eq!(chain[1], p32(&[1, 3, 5]));
    }

    #[test]
    fn path_count_in_three_rows() {
        assert_eq!(enumerate_paths(geom32(), h(1), h(5)).len(), 10);
    }

    #[test]
    fn chain_round_trip_on_random_sums() {
        use rand::rngs::SmallRng;
        use rand::{Rng, SeedableRng};
        let mut rng = SmallRng::seed_from_u64(0xc4a1);
        let paths = enumerate_paths(geom32(), h(1), h(7));
        for _ in 0..1000 {
            let count = rng.random_range(1..=4usize);
            let mut summands: Vec<&PathProfile> =
                (0..count).map(|_| &paths[rng.random_range(0..paths.len())]).collect();
            let cfg = summands
                .iter()
                .fold(Configuration::zero(geom32()), |acc, p| acc.add(&p.to_config()));
            let chain = chain_decompose(&cfg);
            assert_eq!(chain.len(), count);
            let resum = chain
                .iter()
                .fold(Configuration::zero(geom32()), |acc, p| acc.add(&p.to_config()));
            assert_eq!(resum, cfg);
            for w in chain.windows(2) {
                assert!(w[1].leq(&w[0]));
            }
            // The chain does not depend on how the summand list was ordered.
            summands.reverse();
            let permuted = summands
                .iter()
                .fold(Configuration::zero(geom32()), |acc, p| acc.add(&p.to_config()));
            assert_eq!(chain_decompose(&permuted), chain);
        }
    }

    #[test]
    fn order_agrees_with_region_containment() {
        use crate::cylinder::{face_component_id, ComponentId};
        let paths = enumerate_paths(geom32(), h(1), h(5));
        let faces: Vec<(i64, i64)> = (0..3).flat_map(|a| (-2..6).map(move |b| (a, b))).collect();
        let above = |p: &PathProfile| -> Vec<bool> {
            let cfg = p.to_config();
            faces.iter().map(|(a, b)| face_component_id(&cfg, *a, *b) == ComponentId::Top).collect()
        };
        for nu in &paths {
            let above_nu = above(nu);
            for pi in &paths {
                let above_pi = above(pi);
                let contained = above_pi.iter().zip(&above_nu).all(|(p, n)| !p | n);
                assert_eq!(nu.leq(pi), contained, "order vs containment for {nu} and {pi}");
            }
        }
    }
}
