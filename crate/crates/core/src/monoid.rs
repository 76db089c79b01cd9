//! Affine monoids in three presentations and their canonical elements.
//!
//! * `Free(d)` is `N^d`.
//! * `Submonoid` is the submonoid of `N^d` generated by finitely many
//!   nonzero vectors; elements are identified by their ambient vector.
//! * `Glued` is `(L ⊕ R) / (rho1 ~ rho2)` for reducible `rho1 ∈ L`,
//!   `rho2 ∈ R`. Every element has a unique normal form
//!   `n·rho + hat1 + hat2` with `hat1 ≱ rho1` and `hat2 ≱ rho2`, and that
//!   triple is the stored representation.
//!
//! Every monoid carries a positive grading. Free and submonoid elements
//! have degree equal to their coordinate sum; a gluing of graded parts
//! with degrees `D1`, `D2` uses `D(x1, x2) = D2(rho2)·D1(x1) + D1(rho1)·D2(x2)`,
//! which agrees on `rho1` and `rho2`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use parking_lot::RwLock;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::FinitePoset;

/// A canonical-form monoid element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Element {
    /// Exponent vector (free) or ambient vector (submonoid).
    Vector(Vec<u64>),
    /// Normal form `n·rho + hat1 + hat2` of a glued monoid.
    Glued {
        n: u64,
        hat1: Box<Element>,
        hat2: Box<Element>,
    },
}

impl Element {
    pub fn vector(v: impl Into<Vec<u64>>) -> Self {
        Element::Vector(v.into())
    }

    pub fn glued(n: u64, hat1: Element, hat2: Element) -> Self {
        Element::Glued {
            n,
            hat1: Box::new(hat1),
            hat2: Box::new(hat2),
        }
    }

    pub fn as_vector(&self) -> Option<&[u64]> {
        match self {
            Element::Vector(v) => Some(v),
            Element::Glued { .. } => None,
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vector(v) if v.len() == 1 => write!(f, "{}", v[0]),
            Element::Vector(v) => {
                write!(f, "(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            Element::Glued { n, hat1, hat2 } => write!(f, "{{{n}|{hat1}|{hat2}}}"),
        }
    }
}

/// A presentation of an affine monoid.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum MonoidDescriptor {
    Free {
        rank: usize,
    },
    Submonoid {
        ambient_rank: usize,
        generators: Vec<Vec<u64>>,
    },
    Glued {
        left: Box<MonoidDescriptor>,
        right: Box<MonoidDescriptor>,
        rho1: Element,
        rho2: Element,
    },
}

impl MonoidDescriptor {
    pub fn free(rank: usize) -> Self {
        MonoidDescriptor::Free { rank }
    }

    pub fn submonoid(ambient_rank: usize, generators: Vec<Vec<u64>>) -> Self {
        MonoidDescriptor::Submonoid {
            ambient_rank,
            generators,
        }
    }

    /// The numerical semigroup generated by `gens` inside `N`.
    pub fn numerical(gens: &[u64]) -> Self {
        Self::submonoid(1, gens.iter().map(|&g| vec![g]).collect())
    }

    pub fn glued(left: MonoidDescriptor, right: MonoidDescriptor, rho1: Element, rho2: Element) -> Self {
        MonoidDescriptor::Glued {
            left: Box::new(left),
            right: Box::new(right),
            rho1,
            rho2,
        }
    }

    /// `base[rho/r]`: glue `N` to `base` identifying `r·1` with `rho`.
    pub fn adjoin_root(base: MonoidDescriptor, rho: Element, r: u64) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidArgument(format!(
                "adjoin_root needs r >= 2 (r·1 must be reducible in N), got {r}"
            )));
        }
        Ok(Self::glued(base, Self::free(1), rho, Element::vector([r])))
    }

    /// Direct sum of two vector-shaped monoids, as a submonoid of `N^(d1+d2)`.
    pub fn direct_sum(a: &MonoidDescriptor, b: &MonoidDescriptor) -> Result<Self> {
        let (da, ga) = a.vector_generators()?;
        let (db, gb) = b.vector_generators()?;
        let mut gens = Vec::new();
        for g in ga {
            let mut v = g.clone();
            v.resize(da + db, 0);
            gens.push(v);
        }
        for g in gb {
            let mut v = vec![0; da];
            v.extend_from_slice(&g);
            gens.push(v);
        }
        Ok(Self::submonoid(da + db, gens))
    }

    fn vector_generators(&self) -> Result<(usize, Vec<Vec<u64>>)> {
        match self {
            MonoidDescriptor::Free { rank } => Ok((
                *rank,
                (0..*rank)
                    .map(|i| {
                        let mut v = vec![0; *rank];
                        v[i] = 1;
                        v
                    })
                    .collect(),
            )),
            MonoidDescriptor::Submonoid {
                ambient_rank,
                generators,
            } => Ok((*ambient_rank, generators.clone())),
            MonoidDescriptor::Glued { .. } => Err(Error::InvalidArgument(
                "direct sums are only supported for free and submonoid descriptors".into(),
            )),
        }
    }
}

struct GluedParts {
    left: Monoid,
    right: Monoid,
    rho1: Element,
    rho2: Element,
    /// `D1(rho1)`
    w1: u64,
    /// `D2(rho2)`
    w2: u64,
}

enum Shape {
    Free {
        rank: usize,
    },
    Submonoid {
        rank: usize,
        generators: Vec<Vec<u64>>,
        members: RwLock<HashMap<Vec<u64>, bool>>,
    },
    Glued(Box<GluedParts>),
}

/// A validated affine monoid with memoized divisibility.
///
/// All methods take `&self`; memo tables are behind locks, so a `Monoid`
/// can be shared across threads.
pub struct Monoid {
    descriptor: MonoidDescriptor,
    shape: Shape,
    generators: Vec<Element>,
    zero: Element,
    differences: RwLock<HashMap<(Element, Element), Option<Element>>>,
}

impl fmt::Debug for Monoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Monoid").field("descriptor", &self.descriptor).finish()
    }
}

impl Monoid {
    pub fn new(descriptor: MonoidDescriptor) -> Result<Self> {
        Self::build(descriptor, "$")
    }

    pub fn free(rank: usize) -> Result<Self> {
        Self::new(MonoidDescriptor::free(rank))
    }

    pub fn numerical(gens: &[u64]) -> Result<Self> {
        Self::new(MonoidDescriptor::numerical(gens))
    }

    pub fn glued(left: MonoidDescriptor, right: MonoidDescriptor, rho1: Element, rho2: Element) -> Result<Self> {
        Self::new(MonoidDescriptor::glued(left, right, rho1, rho2))
    }

    pub fn adjoin_root(base: MonoidDescriptor, rho: Element, r: u64) -> Result<Self> {
        Self::new(MonoidDescriptor::adjoin_root(base, rho, r)?)
    }

    fn build(descriptor: MonoidDescriptor, path: &str) -> Result<Self> {
        let (shape, generators, zero) = match &descriptor {
            MonoidDescriptor::Free { rank } => {
                if *rank == 0 {
                    return Err(Error::invalid_monoid(path, "rank must be positive"));
                }
                let gens = (0..*rank)
                    .map(|i| {
                        let mut v = vec![0; *rank];
                        v[i] = 1;
                        Element::Vector(v)
                    })
                    .collect();
                (Shape::Free { rank: *rank }, gens, Element::Vector(vec![0; *rank]))
            }
            MonoidDescriptor::Submonoid {
                ambient_rank,
                generators,
            } => {
                if *ambient_rank == 0 {
                    return Err(Error::invalid_monoid(path, "ambient_rank must be positive"));
                }
                for (i, g) in generators.iter().enumerate() {
                    if g.len() != *ambient_rank {
                        return Err(Error::invalid_monoid(
                            format!("{path}.generators[{i}]"),
                            format!("expected {ambient_rank} coordinates, found {}", g.len()),
                        ));
                    }
                    if g.iter().all(|&x| x == 0) {
                        return Err(Error::invalid_monoid(
                            format!("{path}.generators[{i}]"),
                            "generators must be nonzero",
                        ));
                    }
                }
                let mut gens: Vec<Vec<u64>> = generators.clone();
                gens.sort();
                gens.dedup();
                let elems = gens.iter().cloned().map(Element::Vector).collect();
                (
                    Shape::Submonoid {
                        rank: *ambient_rank,
                        generators: gens,
                        members: RwLock::new(HashMap::new()),
                    },
                    elems,
                    Element::Vector(vec![0; *ambient_rank]),
                )
            }
            MonoidDescriptor::Glued {
                left,
                right,
                rho1,
                rho2,
            } => {
                let left = Self::build((**left).clone(), &format!("{path}.left"))?;
                let right = Self::build((**right).clone(), &format!("{path}.right"))?;
                for (side, m, rho) in [("rho1", &left, rho1), ("rho2", &right, rho2)] {
                    let at = format!("{path}.{side}");
                    m.validate(rho).map_err(|e| Error::invalid_monoid(&at, e.to_string()))?;
                    if !m.is_reducible(rho) {
                        return Err(Error::invalid_monoid(
                            &at,
                            format!("{rho} is not reducible (not a sum of two nonzero elements)"),
                        ));
                    }
                }
                let w1 = left.degree(rho1);
                let w2 = right.degree(rho2);
                let parts = GluedParts {
                    left,
                    right,
                    rho1: rho1.clone(),
                    rho2: rho2.clone(),
                    w1,
                    w2,
                };
                let zero = Element::glued(0, parts.left.zero().clone(), parts.right.zero().clone());
                let mut gens: Vec<Element> = Vec::new();
                for g in parts.left.generators() {
                    gens.push(parts.normalize(g.clone(), parts.right.zero().clone()));
                }
                for g in parts.right.generators() {
                    gens.push(parts.normalize(parts.left.zero().clone(), g.clone()));
                }
                gens.sort();
                gens.dedup();
                (Shape::Glued(Box::new(parts)), gens, zero)
            }
        };
        Ok(Monoid {
            descriptor,
            shape,
            generators,
            zero,
            differences: RwLock::new(HashMap::new()),
        })
    }

    pub fn descriptor(&self) -> &MonoidDescriptor {
        &self.descriptor
    }

    /// The generating set used for enumeration and divisibility.
    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn zero(&self) -> &Element {
        &self.zero
    }

    pub fn is_zero(&self, a: &Element) -> bool {
        *a == self.zero
    }

    pub fn is_glued(&self) -> bool {
        matches!(self.shape, Shape::Glued(_))
    }

    /// Left factor of a gluing.
    pub fn left(&self) -> Option<&Monoid> {
        self.parts().map(|p| &p.left)
    }

    pub fn right(&self) -> Option<&Monoid> {
        self.parts().map(|p| &p.right)
    }

    pub fn rho1(&self) -> Option<&Element> {
        self.parts().map(|p| &p.rho1)
    }

    pub fn rho2(&self) -> Option<&Element> {
        self.parts().map(|p| &p.rho2)
    }

    /// The class of `rho1 ~ rho2`, i.e. the normal form `(1, 0, 0)`.
    pub fn rho(&self) -> Option<Element> {
        self.parts()
            .map(|p| Element::glued(1, p.left.zero().clone(), p.right.zero().clone()))
    }

    fn parts(&self) -> Option<&GluedParts> {
        match &self.shape {
            Shape::Glued(p) => Some(p),
            _ => None,
        }
    }

    /// Canonical form of the class of `(x1, x2) ∈ L ⊕ R`.
    pub fn normalize_pair(&self, x1: Element, x2: Element) -> Result<Element> {
        let p = self
            .parts()
            .ok_or_else(|| Error::InvalidElement("not a glued monoid".into()))?;
        p.left.validate(&x1)?;
        p.right.validate(&x2)?;
        Ok(p.normalize(x1, x2))
    }

    /// Image of `x1 ∈ L` in the gluing.
    pub fn embed_left(&self, x1: &Element) -> Element {
        let p = self.parts().expect("embed_left on a non-glued monoid");
        p.normalize(x1.clone(), p.right.zero().clone())
    }

    pub fn embed_right(&self, x2: &Element) -> Element {
        let p = self.parts().expect("embed_right on a non-glued monoid");
        p.normalize(p.left.zero().clone(), x2.clone())
    }

    /// A representative `(n·rho1 + hat1, hat2)` in `L ⊕ R`.
    pub fn expand(&self, a: &Element) -> Option<(Element, Element)> {
        let p = self.parts()?;
        match a {
            Element::Glued { n, hat1, hat2 } => {
                let x1 = p.left.add(&p.left.scale(&p.rho1, *n), hat1);
                Some((x1, (**hat2).clone()))
            }
            Element::Vector(_) => None,
        }
    }

    /// Checks that `a` is a canonical element of this monoid.
    pub fn validate(&self, a: &Element) -> Result<()> {
        match (&self.shape, a) {
            (Shape::Free { rank }, Element::Vector(v)) => {
                if v.len() != *rank {
                    return Err(Error::InvalidElement(format!("{a}: expected {rank} coordinates")));
                }
                Ok(())
            }
            (Shape::Submonoid { rank, .. }, Element::Vector(v)) => {
                if v.len() != *rank {
                    return Err(Error::InvalidElement(format!("{a}: expected {rank} coordinates")));
                }
                if !self.is_member(v) {
                    return Err(Error::InvalidElement(format!("{a} is not in the submonoid")));
                }
                Ok(())
            }
            (Shape::Glued(p), Element::Glued { hat1, hat2, .. }) => {
                p.left.validate(hat1)?;
                p.right.validate(hat2)?;
                if p.left.divides(&p.rho1, hat1) {
                    return Err(Error::InvalidElement(format!(
                        "{a}: hat1 = {hat1} is not reduced (it is >= rho1 = {})",
                        p.rho1
                    )));
                }
                if p.right.divides(&p.rho2, hat2) {
                    return Err(Error::InvalidElement(format!(
                        "{a}: hat2 = {hat2} is not reduced (it is >= rho2 = {})",
                        p.rho2
                    )));
                }
                Ok(())
            }
            _ => Err(Error::InvalidElement(format!(
                "{a} does not have the shape of an element of this monoid"
            ))),
        }
    }

    pub fn degree(&self, a: &Element) -> u64 {
        match (&self.shape, a) {
            (Shape::Glued(p), Element::Glued { n, hat1, hat2 }) => {
                n * p.w1 * p.w2 + p.w2 * p.left.degree(hat1) + p.w1 * p.right.degree(hat2)
            }
            (_, Element::Vector(v)) => v.iter().sum(),
            _ => panic!("element {a} does not belong to {:?}", self.descriptor),
        }
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        match (&self.shape, a, b) {
            (
                Shape::Glued(p),
                Element::Glued {
                    n: n1,
                    hat1: a1,
                    hat2: a2,
                },
                Element::Glued {
                    n: n2,
                    hat1: b1,
                    hat2: b2,
                },
            ) => {
                let x1 = p.left.add(a1, b1);
                let x2 = p.right.add(a2, b2);
                match p.normalize(x1, x2) {
                    Element::Glued { n, hat1, hat2 } => Element::Glued {
                        n: n + n1 + n2,
                        hat1,
                        hat2,
                    },
                    Element::Vector(_) => unreachable!(),
                }
            }
            (_, Element::Vector(x), Element::Vector(y)) => {
                Element::Vector(x.iter().zip(y).map(|(a, b)| a + b).collect())
            }
            _ => panic!("cannot add {a} and {b} in {:?}", self.descriptor),
        }
    }

    pub fn scale(&self, a: &Element, k: u64) -> Element {
        match a {
            Element::Vector(v) => Element::Vector(v.iter().map(|x| x * k).collect()),
            Element::Glued { .. } => {
                let mut acc = self.zero.clone();
                for _ in 0..k {
                    acc = self.add(&acc, a);
                }
                acc
            }
        }
    }

    /// The unique `mu` with `a + mu = b`, if `a ≤ b`.
    pub fn subtract(&self, b: &Element, a: &Element) -> Option<Element> {
        match (&self.shape, b, a) {
            (Shape::Free { .. }, Element::Vector(x), Element::Vector(y)) => {
                vector_difference(x, y).map(Element::Vector)
            }
            (Shape::Submonoid { .. }, Element::Vector(x), Element::Vector(y)) => {
                let d = vector_difference(x, y)?;
                self.is_member(&d).then_some(Element::Vector(d))
            }
            (Shape::Glued(_), _, _) => self.subtract_by_descent(b, a),
            _ => None,
        }
    }

    /// Frobenius order: `a ≤ b` iff `b - a` exists in the monoid.
    pub fn divides(&self, a: &Element, b: &Element) -> bool {
        self.subtract(b, a).is_some()
    }

    /// Largest `l` with `l·rho ≤ x`, and the remainder `x - l·rho`.
    pub fn max_multiple(&self, x: &Element, rho: &Element) -> Result<(u64, Element)> {
        if self.is_zero(rho) {
            return Err(Error::InvalidArgument("max_multiple: rho must be nonzero".into()));
        }
        let mut l = 0;
        let mut rest = x.clone();
        while let Some(d) = self.subtract(&rest, rho) {
            l += 1;
            rest = d;
        }
        Ok((l, rest))
    }

    /// Generator descent: `a ≤ b` iff `a = b` or `a + g ≤ b` for some
    /// generator `g`. Terminates because degrees strictly increase.
    fn subtract_by_descent(&self, b: &Element, a: &Element) -> Option<Element> {
        if a == b {
            return Some(self.zero.clone());
        }
        let db = self.degree(b);
        if self.degree(a) >= db {
            return None;
        }
        let key = (b.clone(), a.clone());
        if let Some(hit) = self.differences.read().get(&key) {
            return hit.clone();
        }
        let mut found = None;
        for g in &self.generators {
            let c = self.add(a, g);
            if self.degree(&c) > db {
                continue;
            }
            if let Some(rest) = self.subtract_by_descent(b, &c) {
                found = Some(self.add(g, &rest));
                break;
            }
        }
        self.differences.write().insert(key, found.clone());
        found
    }

    fn is_member(&self, v: &[u64]) -> bool {
        let Shape::Submonoid {
            generators, members, ..
        } = &self.shape
        else {
            return true;
        };
        if v.iter().all(|&x| x == 0) {
            return true;
        }
        if let Some(&hit) = members.read().get(v) {
            return hit;
        }
        let found = generators
            .iter()
            .filter_map(|g| vector_difference(v, g))
            .any(|rest| self.is_member(&rest));
        members.write().insert(v.to_vec(), found);
        found
    }

    /// Every element of degree at most `bound`, sorted by `(degree, element)`.
    pub fn elements_up_to(&self, bound: u64) -> Vec<Element> {
        let mut seen: HashSet<Element> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(self.zero.clone());
        queue.push_back(self.zero.clone());
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = self.add(&x, g);
                if self.degree(&y) <= bound && seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        self.sorted(seen.into_iter().collect())
    }

    /// All `mu ≤ lam` (including `0` and `lam`), sorted by `(degree, element)`.
    pub fn down_set(&self, lam: &Element) -> Vec<Element> {
        let mut seen: HashSet<Element> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(lam.clone());
        queue.push_back(lam.clone());
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                if let Some(y) = self.subtract(&x, g) {
                    if seen.insert(y.clone()) {
                        queue.push_back(y);
                    }
                }
            }
        }
        self.sorted(seen.into_iter().collect())
    }

    pub(crate) fn sorted(&self, mut elems: Vec<Element>) -> Vec<Element> {
        elems.sort_by_cached_key(|e| (self.degree(e), e.clone()));
        elems
    }

    /// The open interval `(0, lam)` under the Frobenius order.
    pub fn open_interval(&self, lam: &Element) -> FinitePoset<Element> {
        let elems: Vec<Element> = self
            .down_set(lam)
            .into_iter()
            .filter(|m| !self.is_zero(m) && m != lam)
            .collect();
        let less = |i: usize, j: usize| {
            i != j && self.degree(&elems[i]) < self.degree(&elems[j]) && self.divides(&elems[i], &elems[j])
        };
        FinitePoset::from_relation(elems.clone(), less).expect("the Frobenius order is a partial order")
    }

    /// `rho` is a sum of two nonzero elements.
    pub fn is_reducible(&self, rho: &Element) -> bool {
        !self.is_zero(rho)
            && self
                .generators
                .iter()
                .any(|g| g != rho && self.subtract(rho, g).is_some_and(|d| !self.is_zero(&d)))
    }
}

impl GluedParts {
    fn normalize(&self, x1: Element, x2: Element) -> Element {
        let (l1, h1) = self.left.max_multiple(&x1, &self.rho1).expect("rho1 is nonzero");
        let (l2, h2) = self.right.max_multiple(&x2, &self.rho2).expect("rho2 is nonzero");
        Element::glued(l1 + l2, h1, h2)
    }
}

fn vector_difference(x: &[u64], y: &[u64]) -> Option<Vec<u64>> {
    if x.len() != y.len() {
        return None;
    }
    x.iter().zip(y).map(|(a, b)| a.checked_sub(*b)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(k: u64) -> Element {
        Element::vector([k])
    }

    fn gm() -> Monoid {
        Monoid::glued(MonoidDescriptor::free(1), MonoidDescriptor::free(1), u(3), u(2)).unwrap()
    }

    fn m23() -> Monoid {
        Monoid::numerical(&[2, 3]).unwrap()
    }

    #[test]
    fn zeros() {
        assert_eq!(Monoid::free(1).unwrap().zero(), &u(0));
        assert_eq!(gm().zero(), &Element::glued(0, u(0), u(0)));
        let m = Monoid::new(MonoidDescriptor::submonoid(2, vec![vec![1, 0], vec![0, 1]])).unwrap();
        assert_eq!(m.zero(), &Element::vector([0, 0]));
    }

    #[test]
    fn glued_addition() {
        let g = gm();
        let two = Element::glued(0, u(2), u(0));
        assert_eq!(g.add(&two, &two), Element::glued(1, u(1), u(0)));
        let a = Element::glued(0, u(1), u(1));
        let b = Element::glued(0, u(2), u(1));
        assert_eq!(g.add(&a, &b), Element::glued(2, u(0), u(0)));
        let f = Monoid::free(2).unwrap();
        assert_eq!(
            f.add(&Element::vector([1, 0]), &Element::vector([0, 3])),
            Element::vector([1, 3])
        );
    }

    #[test]
    fn max_multiples() {
        let n = Monoid::free(1).unwrap();
        assert_eq!(n.max_multiple(&u(7), &u(3)).unwrap(), (2, u(1)));
        assert_eq!(n.max_multiple(&u(2), &u(3)).unwrap(), (0, u(2)));
        assert_eq!(m23().max_multiple(&u(13), &u(6)).unwrap(), (1, u(7)));
        assert!(n.max_multiple(&u(2), &u(0)).is_err());
    }

    #[test]
    fn divisibility_and_differences() {
        let g = gm();
        assert!(g.divides(&Element::glued(0, u(1), u(0)), &Element::glued(0, u(1), u(1))));
        assert!(!m23().divides(&u(4), &u(5)));
        for b in m23().elements_up_to(12) {
            assert!(m23().divides(&u(0), &b));
        }
        assert_eq!(
            g.subtract(&Element::glued(1, u(0), u(0)), &Element::glued(0, u(1), u(0))),
            Some(Element::glued(0, u(2), u(0)))
        );
        let f = Monoid::free(2).unwrap();
        assert_eq!(
            f.subtract(&Element::vector([3, 1]), &Element::vector([1, 1])),
            Some(Element::vector([2, 0]))
        );
        assert_eq!(m23().subtract(&u(5), &u(4)), None);
    }

    #[test]
    fn bounded_elements() {
        assert_eq!(
            Monoid::free(1).unwrap().elements_up_to(3),
            (0..4).map(u).collect::<Vec<_>>()
        );
        assert_eq!(m23().elements_up_to(7), [0, 2, 3, 4, 5, 6, 7].map(u).to_vec());
        let g = gm();
        let degrees: Vec<u64> = g.elements_up_to(6).iter().map(|x| g.degree(x)).collect();
        assert_eq!(degrees, vec![0, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn open_intervals() {
        assert!(Monoid::free(1).unwrap().open_interval(&u(1)).is_empty());
        let p = m23().open_interval(&u(6));
        let elems: Vec<&Element> = p.elements().iter().collect();
        assert_eq!(elems, vec![&u(2), &u(3), &u(4)]);
        assert_eq!(p.relation_count(), 1);
        assert!(p.less(0, 2));
        let f = Monoid::free(2).unwrap();
        let q = f.open_interval(&Element::vector([1, 1]));
        assert_eq!(q.len(), 2);
        assert_eq!(q.relation_count(), 0);
    }

    #[test]
    fn reducibility() {
        assert!(Monoid::free(1).unwrap().is_reducible(&u(2)));
        assert!(!m23().is_reducible(&u(2)));
        assert!(Monoid::free(2).unwrap().is_reducible(&Element::vector([1, 1])));
    }

    #[test]
    fn roots() {
        let g = Monoid::adjoin_root(MonoidDescriptor::free(1), u(3), 2).unwrap();
        assert_eq!(g.descriptor(), gm().descriptor());
        assert!(Monoid::adjoin_root(MonoidDescriptor::free(1), u(1), 2).is_err());
        assert!(Monoid::adjoin_root(MonoidDescriptor::numerical(&[2, 3]), u(6), 1).is_err());
        let r = Monoid::adjoin_root(MonoidDescriptor::numerical(&[2, 3]), u(6), 2).unwrap();
        assert_eq!(r.degree(&r.rho().unwrap()), 12);
        assert_eq!(r.degree(&r.embed_left(&u(2))), 4);
    }

    #[test]
    fn gm_is_two_three() {
        let g = gm();
        let image: Vec<u64> = g.elements_up_to(40).iter().map(|x| g.degree(x)).collect();
        let expected: Vec<u64> = m23()
            .elements_up_to(40)
            .iter()
            .map(|x| x.as_vector().unwrap()[0])
            .collect();
        assert_eq!(image, expected);
    }
}
