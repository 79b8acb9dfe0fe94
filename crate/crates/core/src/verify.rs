//! Exhaustive verification sweeps, shared between the test suite and the
//! command-line tool so both report identical results.
//!
//! The rank-1 sweep replays every tensor product of indecomposables through
//! the explicit-module simulator and compares the readout against the
//! combinatorial rules. The rank-2 sweep evaluates the presentation
//! relations of the cylinder ring over an exhaustive window of paths.

use std::fmt::Write as _;

use num_traits::One;

use crate::cylinder::{
    cyl_mul, path_join_meet, CylClass, CylGeometry, PathProfile,
};
use crate::halfint::HalfInt;
use crate::line::{mul_interval, IntervalClass};
use crate::modsim::{build_indecomposable, gwa_check, readout_directed_subset, tensor_explicit, window_covers, ExplicitModule};
use crate::ring::RingElement;
use crate::roots::RootMultiset;
use crate::split::{enumerate_indecomposables, mul_split, SplitClass};
use crate::Rational;

/// Outcome of a verification sweep: counts plus the first few mismatch
/// descriptions (sweeps are exhaustive, so any entry is a failure).
#[derive(Clone, Debug, Default)]
pub struct SweepReport {
    pub cases: u64,
    pub failures: u64,
    pub details: Vec<String>,
}

impl SweepReport {
    pub fn ok(&self) -> bool {
        self.failures == 0
    }

    fn fail(&mut self, msg: String) {
        self.failures += 1;
        if self.details.len() < 20 {
            self.details.push(msg);
        }
    }
}

/// All parameters with roots from the pool and multiplicities up to
/// `max_mult` (including the trivial parameter).
pub fn enumerate_parameters(roots: &[HalfInt], max_mult: u32) -> Vec<RootMultiset> {
    let mut out = vec![RootMultiset::one()];
    for &r in roots {
        let mut next = Vec::with_capacity(out.len() * (max_mult as usize + 1));
        for t in &out {
            for m in 0..=max_mult {
                let mut t2 = t.clone();
                if m > 0 {
                    t2.insert(r, m).expect("pool roots are proper half-integers");
                }
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

/// Every indecomposable class over every parameter from the pool.
pub fn enumerate_split_family(roots: &[HalfInt], max_mult: u32) -> Vec<SplitClass> {
    enumerate_parameters(roots, max_mult)
        .iter()
        .flat_map(|t| enumerate_indecomposables(t))
        .collect()
}

fn simple_to_interval(c: &SplitClass) -> Option<IntervalClass> {
    if !c.is_simple() {
        return None;
    }
    Some(
        IntervalClass::new(c.t().clone(), c.piece().lo(), c.piece().hi())
            .expect("simple split classes are interval classes"),
    )
}

/// The rank-1 oracle sweep: for every ordered pair of indecomposables from
/// the family, tensor the explicit modules, check the defining relations on
/// the result, read the directed subset back, and compare with the
/// intersection rule; on pairs of simples additionally compare with the
/// interval rule.
pub fn run_rank1_oracle(roots: &[HalfInt], max_mult: u32, window: (i64, i64)) -> SweepReport {
    let mut report = SweepReport::default();
    let family = enumerate_split_family(roots, max_mult);

    let modules: Vec<(SplitClass, ExplicitModule)> = family
        .into_iter()
        .map(|c| {
            assert!(
                window_covers(c.t(), window),
                "oracle window must cover every root with margin"
            );
            let m = build_indecomposable(c.t(), &c.subset(), window).expect("family classes are admissible");
            (c, m)
        })
        .collect();

    for (c1, m1) in &modules {
        for (c2, m2) in &modules {
            report.cases += 1;
            let tensor = match tensor_explicit(m1, m2) {
                Ok(t) => t,
                Err(e) => {
                    report.fail(format!("tensor {c1} * {c2}: {e}"));
                    continue;
                }
            };
            let violations = gwa_check(&tensor);
            if !violations.is_empty() {
                report.fail(format!("relations fail on {c1} * {c2}: {}", violations[0]));
                continue;
            }
            let readout = readout_directed_subset(&tensor);
            let expected = c1.subset().intersect(&c2.subset());
            if readout != expected {
                report.fail(format!("readout {c1} * {c2}: got {readout}, expected {expected}"));
                continue;
            }
            // Induced class equation against the split rule.
            let tt = c1.t().product(c2.t());
            let from_sim = RingElement::from_terms(
                readout.pieces().iter().map(|p| (SplitClass::new(tt.clone(), p.clone()).expect("readout pieces are admissible"), 1)),
            );
            let rule = mul_split(c1, c2);
            if from_sim != rule {
                report.fail(format!("class equation {c1} * {c2}: sim {from_sim}, rule {rule}"));
                continue;
            }
            // Simples: the interval rule must agree.
            if let (Some(i1), Some(i2)) = (simple_to_interval(c1), simple_to_interval(c2)) {
                let interval_rule = mul_interval(&i1, &i2);
                let from_sim_interval = RingElement::from_terms(readout.pieces().iter().map(|p| {
                    (
                        IntervalClass::new(tt.clone(), p.lo(), p.hi())
                            .expect("tensor of simples reads out as a simple"),
                        1,
                    )
                }));
                if interval_rule != from_sim_interval {
                    report.fail(format!(
                        "interval rule {i1} * {i2}: sim {from_sim_interval}, rule {interval_rule}"
                    ));
                }
            }
        }
    }
    report
}

/// Named sub-checks of the cylinder relation suite.
#[derive(Clone, Debug, Default)]
pub struct RelationSuiteReport {
    pub path_count: usize,
    pub checks: Vec<(String, SweepReport)>,
}

impl RelationSuiteReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|(_, r)| r.ok())
    }

    pub fn total_cases(&self) -> u64 {
        self.checks.iter().map(|(_, r)| r.cases).sum()
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "paths in window: {}", self.path_count);
        for (name, r) in &self.checks {
            let _ = writeln!(
                out,
                "{}: {} cases, {}",
                name,
                r.cases,
                if r.ok() { "ok".to_string() } else { format!("{} FAILED", r.failures) }
            );
            for d in &r.details {
                let _ = writeln!(out, "    {d}");
            }
        }
        out
    }
}

fn xplus(p: &PathProfile) -> RingElement<CylClass> {
    RingElement::from_label(CylClass::above_path(p))
}

fn xminus(p: &PathProfile) -> RingElement<CylClass> {
    RingElement::from_label(CylClass::below_path(p))
}

/// Evaluate the presentation relations of the rank-2 ring on every path
/// pair (and every relation-(v) quadruple) in an exhaustive height window
/// of `rows` face rows starting at row 0.
pub fn run_cylinder_relations(geom: CylGeometry, rows: i64) -> RelationSuiteReport {
    let min_h = HalfInt::int_plus_half(0);
    let max_h = HalfInt::int_plus_half(rows - 1);
    let paths = crate::cylinder::enumerate_paths(geom, min_h, max_h);
    let xi_samples = [Rational::new(2, 1), Rational::new(-1, 1), Rational::new(1, 3)];
    let mut suite = RelationSuiteReport { path_count: paths.len(), checks: Vec::new() };

    // (i) the trivial scale is the unit.
    let mut r1 = SweepReport::default();
    let unit = RingElement::from_label(CylClass::unit(geom));
    let gamma_one = RingElement::from_label(CylClass::gamma(geom, Rational::one()).unwrap());
    r1.cases += 1;
    if gamma_one != unit {
        r1.fail("gamma(1) != unit".into());
    }
    for p in &paths {
        for x in [xplus(p), xminus(p)] {
            r1.cases += 1;
            if gamma_one.mul_with(&x, cyl_mul) != x {
                r1.fail(format!("gamma(1) does not fix x[{p}]"));
            }
        }
    }
    suite.checks.push(("(i) unit scale".into(), r1));

    // (ii) scales multiply as a group.
    let mut r2 = SweepReport::default();
    for a in xi_samples {
        for b in xi_samples {
            r2.cases += 1;
            let lhs = cyl_mul(&CylClass::gamma(geom, a).unwrap(), &CylClass::gamma(geom, b).unwrap());
            let rhs = RingElement::from_label(CylClass::gamma(geom, a * b).unwrap());
            if lhs != rhs {
                r2.fail(format!("gamma({a}) * gamma({b})"));
            }
        }
    }
    suite.checks.push(("(ii) scale group".into(), r2));

    // Group ordered pairs by their configuration sum; these groups are
    // exactly the two-path decompositions of each sum.
    let mut by_sum: std::collections::BTreeMap<crate::cylinder::Configuration, Vec<(usize, usize)>> =
        std::collections::BTreeMap::new();
    for (i, p) in paths.iter().enumerate() {
        for (j, q) in paths.iter().enumerate() {
            by_sum.entry(p.to_config().add(&q.to_config())).or_default().push((i, j));
        }
    }

    // (iii) same-sign products depend only on the sum.
    let mut r3 = SweepReport::default();
    for decomps in by_sum.values() {
        let plus: Vec<RingElement<CylClass>> = decomps
            .iter()
            .map(|(i, j)| xplus(&paths[*i]).mul_with(&xplus(&paths[*j]), cyl_mul))
            .collect();
        let minus: Vec<RingElement<CylClass>> = decomps
            .iter()
            .map(|(i, j)| xminus(&paths[*i]).mul_with(&xminus(&paths[*j]), cyl_mul))
            .collect();
        for w in plus.windows(2) {
            r3.cases += 1;
            if w[0] != w[1] {
                r3.fail("x+ x+ differs across a resummation".into());
            }
        }
        for w in minus.windows(2) {
            r3.cases += 1;
            if w[0] != w[1] {
                r3.fail("x- x- differs across a resummation".into());
            }
        }
    }
    suite.checks.push(("(iii) sum invariance".into(), r3));

    // (iv) nested ordered pairs vanish.
    let mut r4 = SweepReport::default();
    for p in &paths {
        for q in &paths {
            if q.leq(p) {
                r4.cases += 1;
                let prod = xplus(p).mul_with(&xminus(q), cyl_mul);
                if !prod.is_zero() {
                    r4.fail(format!("x+[{p}] x-[{q}] should vanish"));
                }
            }
        }
    }
    suite.checks.push(("(iv) nested vanishing".into(), r4));

    // (v) pairs of decompositions with equal cross sums give equal two-term
    // sums.
    let mut r5 = SweepReport::default();
    for decomps in by_sum.values() {
        let mut by_cross: std::collections::BTreeMap<
            crate::cylinder::Configuration,
            RingElement<CylClass>,
        > = std::collections::BTreeMap::new();
        for (i1, j1) in decomps {
            for (i2, j2) in decomps {
                let cross = paths[*i1].to_config().add(&paths[*i2].to_config());
                let value = xplus(&paths[*i1])
                    .mul_with(&xminus(&paths[*j1]), cyl_mul)
                    .add(&xplus(&paths[*i2]).mul_with(&xminus(&paths[*j2]), cyl_mul));
                match by_cross.get(&cross) {
                    None => {
                        by_cross.insert(cross, value);
                    }
                    Some(prev) => {
                        r5.cases += 1;
                        if *prev != value {
                            r5.fail("two-term sums differ at equal cross sums".into());
                        }
                    }
                }
            }
        }
    }
    suite.checks.push(("(v) pair exchange".into(), r5));

    // (vi) scales are absorbed on intersecting pairs.
    let mut r6 = SweepReport::default();
    for p in &paths {
        for q in &paths {
            if p.intersects(q) {
                let prod = xplus(p).mul_with(&xminus(q), cyl_mul);
                for xi in xi_samples {
                    r6.cases += 1;
                    let scaled = RingElement::from_label(CylClass::gamma(geom, xi).unwrap())
                        .mul_with(&prod, cyl_mul);
                    if scaled != prod {
                        r6.fail(format!("gamma({xi}) not absorbed on x+[{p}] x-[{q}]"));
                    }
                }
            }
        }
    }
    suite.checks.push(("(vi) scale absorption".into(), r6));

    // (vii) the crossing resolution identity.
    let mut r7 = SweepReport::default();
    for p in &paths {
        for q in &paths {
            r7.cases += 1;
            let lhs = xplus(p)
                .mul_with(&xminus(q), cyl_mul)
                .add(&xplus(q).mul_with(&xminus(p), cyl_mul));
            let (join, meet) = path_join_meet(p, q);
            let rhs = xplus(&meet).mul_with(&xminus(&join), cyl_mul);
            if lhs != rhs {
                r7.fail(format!("crossing resolution fails for [{p}], [{q}]"));
            }
        }
    }
    suite.checks.push(("(vii) crossing resolution".into(), r7));

    // Every class produced above satisfies the scale/contractibility
    // invariant; spot-check by revalidating products through the public
    // constructor.
    let mut r8 = SweepReport::default();
    for p in &paths {
        for q in &paths {
            let prod = xplus(p).mul_with(&xminus(q), cyl_mul);
            for (label, _) in prod.terms() {
                r8.cases += 1;
                if CylClass::new(label.omega().clone(), label.component(), label.xi()).is_err() {
                    r8.fail(format!("invalid class emitted: {label}"));
                }
            }
        }
    }
    suite.checks.push(("class invariant".into(), r8));

    suite
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    #[test]
    fn family_sizes() {
        assert_eq!(enumerate_parameters(&[h(1)], 2).len(), 3);
        // One root, multiplicities {1,2}: 1 (trivial) + 2*4 classes.
        assert_eq!(enumerate_split_family(&[h(1)], 2).len(), 9);
    }

    #[test]
    fn small_oracle_sweep_passes() {
        let report = run_rank1_oracle(&[h(-1), h(1)], 1, (-6, 6));
        assert!(report.ok(), "failures: {:?}", report.details);
        // 1 + 2*4 + 11 classes per two-root pool at multiplicity 1... the
        // family has 1 + 4 + 4 + 11 = 20 classes, so 400 ordered pairs.
        assert_eq!(report.cases, 400);
    }

    #[test]
    fn tiny_cylinder_suite_passes() {
        let geom = CylGeometry::new(2, 1).unwrap();
        let suite = run_cylinder_relations(geom, 2);
        assert!(suite.ok(), "{}", suite.summary());
        assert!(suite.path_count > 0);
    }
}
