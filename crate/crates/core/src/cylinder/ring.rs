//! Basis classes and multiplication of the rank-2 ring: a class is a
//! configuration, a component of its complement, and a nonzero scale on
//! wrapping components (zero on contractible ones). A product restricts to
//! the common region: empty kills the product, a wrapping intersection keeps
//! a single class with multiplied scales, and contractible pieces each
//! contribute a scale-zero class.

use std::fmt;

use num_traits::{One, Zero};

use crate::ring::{Graded, RingElement};
use crate::Rational;

use super::components::{analyze_complement, Component, ComponentId};
use super::paths::PathProfile;
use super::{Configuration, CylError, CylGeometry};

/// Basis class of the rank-2 ring.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CylClass {
    omega: Configuration,
    component: ComponentId,
    xi: Rational,
}

impl CylClass {
    /// Validated constructor: the component must occur in the complement of
    /// the configuration, and `xi` must be zero exactly when it is
    /// contractible.
    pub fn new(omega: Configuration, component: ComponentId, xi: Rational) -> Result<Self, CylError> {
        let analysis = analyze_complement(&omega);
        let comp = analysis
            .components()
            .iter()
            .find(|c| c.id == component)
            .ok_or_else(|| CylError::UnknownComponent(component.to_string()))?;
        if comp.contractible != xi.is_zero() {
            return Err(CylError::XiMismatch);
        }
        Ok(CylClass { omega, component, xi })
    }

    /// The unit class: zero configuration, whole cylinder, scale one.
    pub fn unit(geom: CylGeometry) -> Self {
        CylClass {
            omega: Configuration::zero(geom),
            component: ComponentId::All,
            xi: Rational::one(),
        }
    }

    /// Scale class over the zero configuration; `xi` must be nonzero.
    pub fn gamma(geom: CylGeometry, xi: Rational) -> Result<Self, CylError> {
        CylClass::new(Configuration::zero(geom), ComponentId::All, xi)
    }

    /// Class of the region above a path.
    pub fn above_path(path: &PathProfile) -> Self {
        CylClass {
            omega: path.to_config(),
            component: ComponentId::Top,
            xi: Rational::one(),
        }
    }

    /// Class of the region below a path.
    pub fn below_path(path: &PathProfile) -> Self {
        CylClass {
            omega: path.to_config(),
            component: ComponentId::Bottom,
            xi: Rational::one(),
        }
    }

    pub fn omega(&self) -> &Configuration {
        &self.omega
    }

    pub fn component(&self) -> ComponentId {
        self.component
    }

    pub fn xi(&self) -> Rational {
        self.xi
    }
}

impl Graded for CylClass {
    type Grade = Configuration;

    fn grade(&self) -> Configuration {
        self.omega.clone()
    }

    fn mul_grade(a: &Configuration, b: &Configuration) -> Configuration {
        a.add(b)
    }
}

impl fmt::Display for CylClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "C[{},{};{};{};{}]",
            self.omega.geom().m(),
            self.omega.geom().n(),
            self.omega,
            self.component,
            self.xi
        )
    }
}

impl fmt::Debug for CylClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Components of the complement of `omega + omega'` lying inside both given
/// components. Every component of the intersection of the two regions shows
/// up here exactly once.
pub fn intersect_components(
    omega: &Configuration,
    d: ComponentId,
    omega2: &Configuration,
    d2: ComponentId,
) -> Vec<Component> {
    assert_eq!(omega.geom(), omega2.geom(), "intersection requires one geometry");
    let sum = omega.add(omega2);
    let sum_analysis = analyze_complement(&sum);
    let a1 = analyze_complement(omega);
    let a2 = analyze_complement(omega2);
    sum_analysis
        .components()
        .iter()
        .filter(|comp| {
            let (fa, fb) = *comp.faces.iter().next().expect("components are nonempty");
            a1.id_of_face(fa, fb) == d && a2.id_of_face(fa, fb) == d2
        })
        .cloned()
        .collect()
}

/// The three-case multiplication rule.
pub fn cyl_mul(a: &CylClass, b: &CylClass) -> RingElement<CylClass> {
    let pieces = intersect_components(&a.omega, a.component, &b.omega, b.component);
    if pieces.is_empty() {
        return RingElement::zero();
    }
    let sum = a.omega.add(&b.omega);
    let wrapping: Vec<&Component> = pieces.iter().filter(|c| !c.contractible).collect();
    if !wrapping.is_empty() {
        assert_eq!(
            pieces.len(),
            1,
            "a wrapping intersection is a single component"
        );
        let class = CylClass {
            omega: sum,
            component: wrapping[0].id,
            xi: a.xi * b.xi,
        };
        debug_assert!(!class.xi.is_zero(), "wrapping pieces require nonzero scales");
        return RingElement::from_label(class);
    }
    RingElement::from_terms(pieces.into_iter().map(|c| {
        (
            CylClass { omega: sum.clone(), component: c.id, xi: Rational::zero() },
            1,
        )
    }))
}

/// Generators of the rank-2 presentation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CylGen {
    Gamma(Rational),
    PathAbove(PathProfile),
    PathBelow(PathProfile),
}

impl fmt::Display for CylGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CylGen::Gamma(xi) => write!(f, "g({xi})"),
            CylGen::PathAbove(p) => write!(f, "xp+[{p}]"),
            CylGen::PathBelow(p) => write!(f, "xp-[{p}]"),
        }
    }
}

pub type CylWord = Vec<(CylGen, u32)>;

/// Evaluate a word in the generators to its canonical basis expansion.
pub fn eval_cyl_word(geom: CylGeometry, word: &[(CylGen, u32)]) -> Result<RingElement<CylClass>, CylError> {
    let mut acc = RingElement::from_label(CylClass::unit(geom));
    for (g, e) in word {
        let class = match g {
            CylGen::Gamma(xi) => CylClass::gamma(geom, *xi)?,
            CylGen::PathAbove(p) => {
                if p.geom() != geom {
                    return Err(CylError::GeometryMismatch(p.geom().m(), p.geom().n(), geom.m(), geom.n()));
                }
                CylClass::above_path(p)
            }
            CylGen::PathBelow(p) => {
                if p.geom() != geom {
                    return Err(CylError::GeometryMismatch(p.geom().m(), p.geom().n(), geom.m(), geom.n()));
                }
                CylClass::below_path(p)
            }
        };
        let ge = RingElement::from_label(class);
        for _ in 0..*e {
            acc = acc.mul_with(&ge, cyl_mul);
            if acc.is_zero() {
                break;
            }
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cylinder::paths::enumerate_paths;
    use crate::halfint::HalfInt;

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    fn geom32() -> CylGeometry {
        CylGeometry::new(3, 2).unwrap()
    }

    fn rat(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn gamma_classes_multiply_scales() {
        let g = geom32();
        let a = CylClass::gamma(g, rat(2, 1)).unwrap();
        let b = CylClass::gamma(g, rat(3, 1)).unwrap();
        let p = cyl_mul(&a, &b);
        assert_eq!(p, RingElement::from_label(CylClass::gamma(g, rat(6, 1)).unwrap()));
        assert!(CylClass::gamma(g, rat(0, 1)).is_err());
    }

    #[test]
    fn unit_acts_as_identity() {
        let g = geom32();
        let u = CylClass::unit(g);
        let paths = enumerate_paths(g, h(1), h(5));
        for p in paths.iter().take(4) {
            for class in [CylClass::above_path(p), CylClass::below_path(p)] {
                assert_eq!(cyl_mul(&class, &u), RingElement::from_label(class.clone()));
                assert_eq!(cyl_mul(&u, &class), RingElement::from_label(class.clone()));
            }
        }
    }

    #[test]
    fn opposite_sides_of_one_path_vanish() {
        let g = geom32();
        let p = PathProfile::new(g, vec![h(3), h(3), h(5)]).unwrap();
        let prod = cyl_mul(&CylClass::above_path(&p), &CylClass::below_path(&p));
        assert!(prod.is_zero());
    }

    #[test]
    fn crossing_paths_give_scale_zero_classes() {
        let g = geom32();
        let pa = PathProfile::new(g, vec![h(3), h(3), h(5)]).unwrap();
        let pb = PathProfile::new(g, vec![h(1), h(5), h(5)]).unwrap();
        let pieces = intersect_components(&pa.to_config(), ComponentId::Top, &pb.to_config(), ComponentId::Bottom);
        assert_eq!(pieces.len(), 1);
        assert!(pieces[0].contractible);
        assert_eq!(pieces[0].faces, std::collections::BTreeSet::from([(1, 2)]));

        let prod = cyl_mul(&CylClass::above_path(&pa), &CylClass::below_path(&pb));
        assert_eq!(prod.num_terms(), 1);
        let class = prod.as_single_class().unwrap();
        assert!(class.xi().is_zero());
        assert_eq!(class.component(), ComponentId::Bounded(1, 2));
    }

    #[test]
    fn whole_cylinder_is_identity_for_intersection() {
        let g = geom32();
        let p = PathProfile::new(g, vec![h(3), h(3), h(5)]).unwrap();
        let cfg = p.to_config();
        let pieces = intersect_components(&Configuration::zero(g), ComponentId::All, &cfg, ComponentId::Top);
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].id, ComponentId::Top);
        assert!(!pieces[0].contractible);
    }

    #[test]
    fn grading_law_on_products() {
        let g = geom32();
        let pa = PathProfile::new(g, vec![h(3), h(3), h(5)]).unwrap();
        let pb = PathProfile::new(g, vec![h(1), h(5), h(5)]).unwrap();
        let a = CylClass::above_path(&pa);
        let b = CylClass::below_path(&pb);
        let p = cyl_mul(&a, &b);
        assert!(RingElement::respects_grading(&p, &a, &b));
    }

    #[test]
    fn word_evaluation_matches_direct_products() {
        let g = geom32();
        let pa = PathProfile::new(g, vec![h(3), h(3), h(5)]).unwrap();
        let pb = PathProfile::new(g, vec![h(1), h(5), h(5)]).unwrap();
        let word: CylWord = vec![
            (CylGen::Gamma(rat(5, 3)), 1),
            (CylGen::PathAbove(pa.clone()), 1),
            (CylGen::PathBelow(pb.clone()), 1),
        ];
        let via_word = eval_cyl_word(g, &word).unwrap();
        let direct = cyl_mul(&CylClass::above_path(&pa), &CylClass::below_path(&pb));
        // The crossing product is contractible, so the scale is absorbed.
        assert_eq!(via_word, direct);
    }

    #[test]
    fn exhaustive_commutativity_associativity_small_window() {
        let g = geom32();
        let mut classes: Vec<CylClass> = Vec::new();
        for p in enumerate_paths(g, h(1), h(3)) {
            classes.push(CylClass::above_path(&p));
            classes.push(CylClass::below_path(&p));
        }
        classes.push(CylClass::unit(g));
        classes.push(CylClass::gamma(g, rat(2, 1)).unwrap());
        let elems: Vec<RingElement<CylClass>> =
            classes.into_iter().map(RingElement::from_label).collect();
        for a in &elems {
            for b in &elems {
                let ab = a.mul_with(b, cyl_mul);
                assert_eq!(ab, b.mul_with(a, cyl_mul));
                for c in &elems {
                    let bc = b.mul_with(c, cyl_mul);
                    assert_eq!(ab.mul_with(c, cyl_mul), a.mul_with(&bc, cyl_mul));
                }
            }
        }
    }

    #[test]
    fn class_constructor_validates() {
        let g = geom32();
        let p = PathProfile::new(g, vec![h(3), h(3), h(5)]).unwrap();
        let cfg = p.to_config();
        assert!(CylClass::new(cfg.clone(), ComponentId::All, rat(1, 1)).is_err());
        assert!(CylClass::new(cfg.clone(), ComponentId::Top, rat(0, 1)).is_err());
        assert!(CylClass::new(cfg.clone(), ComponentId::Bounded(0, 0), rat(0, 1)).is_err());
        assert!(CylClass::new(cfg, ComponentId::Top, rat(7, 2)).is_ok());
    }
}
