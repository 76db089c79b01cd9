//! Compositions of an element: ordered sequences of at least two nonzero
//! parts summing to it, ordered by merging adjacent parts (coarser below).
//!
//! Parts are stored as indices into the down-set of `λ`. Compositions with
//! any number of parts (including the single part `[λ]`) are ranked in
//! lexicographic order of their part indices, which lets large posets be
//! traversed without materializing them.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldChoice;
use crate::homology::{collapsed_betti, BettiVector, CellComplex};
use crate::monoid::{Element, Monoid};
use crate::poset::FinitePoset;

const NONE: u32 = u32::MAX;
/// Longest composition the cellular route handles.
const MAX_CELL_PARTS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition {
    pub parts: Vec<Element>,
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompositionLimits {
    /// Longest composition allowed during enumeration.
    pub max_parts: usize,
    /// Largest poset built element by element.
    pub max_elements: usize,
}

impl Default for CompositionLimits {
    fn default() -> Self {
        CompositionLimits {
            max_parts: 64,
            max_elements: 4_000,
        }
    }
}

/// How the homology of `Δ(C(λ))` was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CompositionRoute {
    /// Chains of the explicit poset.
    OrderComplex,
    /// Every lower interval of `C(λ)` is boolean (subsets of the cut
    /// positions), so `Δ(C(λ))` subdivides the regular cell complex with one
    /// cell of dimension `k - 2` per `k`-part composition. That complex is
    /// collapsed and its survivors ranked.
    Cellular,
}

/// Tables for enumerating and ranking the compositions of one element.
pub struct Compositions<'m> {
    monoid: &'m Monoid,
    elems: Vec<Element>,
    index: HashMap<Element, u32>,
    top: u32,
    n: usize,
    diff: Vec<u32>,
    sum: Vec<u32>,
    count: Vec<u128>,
    prefix: Vec<u128>,
    longest: Vec<u32>,
    /// `(q, r)` with `q + r = p`, both nonzero, for each part `p`.
    splits: Vec<Vec<(u32, u32)>>,
}

impl<'m> Compositions<'m> {
    pub fn new(monoid: &'m Monoid, lam: &Element) -> Result<Self> {
        monoid.validate(lam)?;
        if monoid.is_zero(lam) {
            return Err(Error::InvalidArgument("zero has no compositions".into()));
        }
        let elems = monoid.down_set(lam);
        let n = elems.len();
        let index: HashMap<Element, u32> = elems.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
        let mut diff = vec![NONE; n * n];
        let mut sum = vec![NONE; n * n];
        for i in 0..n {
            for j in 0..=i {
                if let Some(d) = monoid.subtract(&elems[i], &elems[j]) {
                    let k = index[&d];
                    diff[i * n + j] = k;
                    sum[j * n + k as usize] = i as u32;
                }
            }
        }
        let mut count = vec![0u128; n];
        let mut longest = vec![0u32; n];
        count[0] = 1;
        for i in 1..n {
            for j in 1..=i {
                let k = diff[i * n + j];
                if k != NONE {
                    count[i] = count[i].saturating_add(count[k as usize]);
                    longest[i] = longest[i].max(longest[k as usize] + 1);
                }
            }
        }
        let mut prefix = vec![0u128; n * (n + 1)];
        for i in 0..n {
            let row = &mut prefix[i * (n + 1)..(i + 1) * (n + 1)];
            for p in 0..n {
                let k = diff[i * n + p];
                let add = if p != 0 && k != NONE { count[k as usize] } else { 0 };
                row[p + 1] = row[p].saturating_add(add);
            }
        }
        let splits = (0..n)
            .map(|p| {
                (1..p)
                    .filter_map(|q| {
                        let r = diff[p * n + q];
                        (r != NONE && r != 0).then_some((q as u32, r))
                    })
                    .collect()
            })
            .collect();
        Ok(Compositions {
            monoid,
            splits,
            top: (n - 1) as u32,
            elems,
            index,
            n,
            diff,
            sum,
            count,
            prefix,
            longest,
        })
    }

    pub fn lambda(&self) -> &Element {
        &self.elems[self.top as usize]
    }

    /// `|C(λ)|`, the compositions with at least two parts.
    pub fn len(&self) -> u128 {
        self.count[self.top as usize] - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Parts in the longest composition.
    pub fn max_parts(&self) -> usize {
        self.longest[self.top as usize] as usize
    }

    fn minus(&self, a: u32, b: u32) -> u32 {
        self.diff[a as usize * self.n + b as usize]
    }

    fn plus(&self, a: u32, b: u32) -> u32 {
        self.sum[a as usize * self.n + b as usize]
    }

    /// Position of a composition (given by part indices) in the ranking of
    /// all compositions, the single part `[λ]` included.
    pub fn rank(&self, parts: &[u32]) -> u64 {
        let mut rem = self.top;
        let mut id = 0u128;
        for &p in parts {
            id += self.prefix[rem as usize * (self.n + 1) + p as usize];
            rem = self.minus(rem, p);
        }
        debug_assert_eq!(rem, 0);
        id as u64
    }

    pub fn unrank(&self, mut id: u64, parts: &mut Vec<u32>) {
        parts.clear();
        let mut rem = self.top;
        loop {
            let row = &self.prefix[rem as usize * (self.n + 1)..(rem as usize + 1) * (self.n + 1)];
            // largest p with row[p] <= id and a nonzero step
            let p = row.partition_point(|&x| x <= id as u128) - 1;
            id -= row[p] as u64;
            parts.push(p as u32);
            if p as u32 == rem {
                debug_assert_eq!(id, 0);
                return;
            }
            rem = self.minus(rem, p as u32);
        }
    }

    pub fn composition(&self, parts: &[u32]) -> Composition {
        Composition {
            parts: parts.iter().map(|&p| self.elems[p as usize].clone()).collect(),
        }
    }

    /// Part indices of `c`, checking that it is a composition of `λ`.
    pub fn parts_of(&self, c: &Composition) -> Result<Vec<u32>> {
        let mut rem = self.top;
        let mut out = Vec::with_capacity(c.parts.len());
        for part in &c.parts {
            let p = *self
                .index
                .get(part)
                .ok_or_else(|| Error::InvalidElement(format!("part {part} is not below {}", self.lambda())))?;
            let next = self.minus(rem, p);
            if p == 0 || next == NONE {
                return Err(Error::InvalidElement(format!(
                    "{c} is not a composition of {}",
                    self.lambda()
                )));
            }
            out.push(p);
            rem = next;
        }
        if rem != 0 {
            return Err(Error::InvalidElement(format!(
                "parts of {c} do not sum to {}",
                self.lambda()
            )));
        }
        Ok(out)
    }

    /// All compositions with at least two parts, in rank order.
    pub fn enumerate(&self, limits: CompositionLimits) -> Result<Vec<Vec<u32>>> {
        if self.max_parts() > limits.max_parts {
            return Err(Error::resource(
                format!("composition with {} parts", self.max_parts()),
                limits.max_parts as u64,
            ));
        }
        if self.len() > limits.max_elements as u128 {
            return Err(Error::resource(
                format!("{} compositions", self.len()),
                limits.max_elements as u64,
            ));
        }
        let mut out = Vec::with_capacity(self.len() as usize);
        let mut stack = Vec::new();
        self.split(self.top, &mut stack, &mut out);
        Ok(out)
    }

    fn split(&self, rem: u32, stack: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        for p in 1..=rem {
            let next = self.minus(rem, p);
            if next == NONE {
                continue;
            }
            stack.push(p);
            if next == 0 {
                if stack.len() >= 2 {
                    out.push(stack.clone());
                }
            } else {
                self.split(next, stack, out);
            }
            stack.pop();
        }
    }

    /// The composition poset with merge covers.
    pub fn poset(&self, limits: CompositionLimits) -> Result<FinitePoset<Composition>> {
        let all = self.enumerate(limits)?;
        let position: HashMap<&[u32], usize> = all.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
        let mut covers = Vec::new();
        let mut merged = Vec::new();
        for (j, c) in all.iter().enumerate() {
            for i in 0..c.len().saturating_sub(1) {
                if c.len() == 2 {
                    break;
                }
                self.merge_into(c, i, &mut merged);
                covers.push((position[merged.as_slice()], j));
            }
        }
        let elements = all.iter().map(|c| self.composition(c)).collect();
        FinitePoset::from_covers(elements, &covers)
    }

    fn merge_into(&self, parts: &[u32], i: usize, out: &mut Vec<u32>) {
        out.clear();
        out.extend_from_slice(&parts[..i]);
        out.push(self.plus(parts[i], parts[i + 1]));
        out.extend_from_slice(&parts[i + 2..]);
    }

    /// Partial sums `ξ1 < ξ1+ξ2 < ...`, omitting `λ` itself.
    pub fn phi(&self, c: &Composition) -> Result<Vec<Element>> {
        let parts = self.parts_of(c)?;
        let mut acc = self.monoid.zero().clone();
        let mut chain = Vec::with_capacity(parts.len().saturating_sub(1));
        for &p in &parts[..parts.len() - 1] {
            acc = self.monoid.add(&acc, &self.elems[p as usize]);
            chain.push(acc.clone());
        }
        Ok(chain)
    }

    /// Consecutive differences of `0 < x1 < ... < xk < λ`.
    pub fn phi_inverse(&self, chain: &[Element]) -> Result<Composition> {
        let mut parts = Vec::with_capacity(chain.len() + 1);
        let mut prev = self.monoid.zero().clone();
        for x in chain.iter().chain(std::iter::once(self.lambda())) {
            let d = self
                .monoid
                .subtract(x, &prev)
                .filter(|d| !self.monoid.is_zero(d))
                .ok_or_else(|| Error::InvalidElement(format!("{prev} < {x} fails in the chain")))?;
            parts.push(d);
            prev = x.clone();
        }
        if chain.is_empty() {
            return Err(Error::InvalidElement("an empty chain has no composition".into()));
        }
        Ok(Composition { parts })
    }

    /// Homology of the order complex of `C(λ)`, in Tor grading.
    pub fn betti(
        &self,
        field: FieldChoice,
        limits: CompositionLimits,
        simplex_cap: usize,
    ) -> Result<(BettiVector, CompositionRoute)> {
        if self.max_parts() > limits.max_parts {
            return Err(Error::resource(
                format!("composition with {} parts", self.max_parts()),
                limits.max_parts as u64,
            ));
        }
        if self.len() <= limits.max_elements as u128 {
            let poset = self.poset(limits)?;
            if poset.chain_count() <= simplex_cap as u128 {
                let complex = poset.order_complex(simplex_cap)?;
                return Ok((complex.reduced_betti(field), CompositionRoute::OrderComplex));
            }
        }
        if self.max_parts() > MAX_CELL_PARTS {
            return Err(Error::resource(
                format!("composition with {} parts", self.max_parts()),
                MAX_CELL_PARTS as u64,
            ));
        }
        let cells = self.count[self.top as usize];
        if cells > u32::MAX as u128 {
            return Err(Error::resource(format!("{cells} cells"), u32::MAX as u64));
        }
        let betti = collapsed_betti(self, field, simplex_cap)?;
        Ok((betti, CompositionRoute::Cellular))
    }
}

/// A composition decoded from its rank, with the remainder before each part.
struct Decoded {
    k: usize,
    parts: [u32; MAX_CELL_PARTS],
    rems: [u32; MAX_CELL_PARTS],
}

impl Compositions<'_> {
    fn pre(&self, rem: u32, p: u32) -> u64 {
        self.prefix[rem as usize * (self.n + 1) + p as usize] as u64
    }

    fn decode(&self, mut id: u64) -> Decoded {
        let mut d = Decoded {
            k: 0,
            parts: [0; MAX_CELL_PARTS],
            rems: [0; MAX_CELL_PARTS],
        };
        let mut rem = self.top;
        loop {
            let row = &self.prefix[rem as usize * (self.n + 1)..(rem as usize + 1) * (self.n + 1)];
            let p = row.partition_point(|&x| x <= id as u128) - 1;
            id -= row[p] as u64;
            d.parts[d.k] = p as u32;
            d.rems[d.k] = rem;
            d.k += 1;
            if p as u32 == rem {
                return d;
            }
            rem = self.minus(rem, p as u32);
        }
    }
}

// A merge or split only changes the terms of the rank sum at the parts it
// touches, since the remainders after them are unchanged.
impl CellComplex for Compositions<'_> {
    fn len(&self) -> u64 {
        self.count[self.top as usize] as u64
    }

    fn dim(&self, cell: u64) -> i64 {
        self.decode(cell).k as i64 - 2
    }

    fn base_cells(&self) -> Vec<u64> {
        vec![self.rank(&[self.top])]
    }

    fn boundary(&self, cell: u64, out: &mut Vec<(u64, i64)>) {
        let d = self.decode(cell);
        for i in 0..d.k.saturating_sub(1) {
            let (a, b, r) = (d.parts[i], d.parts[i + 1], d.rems[i]);
            let merged = cell + self.pre(r, self.plus(a, b)) - self.pre(r, a) - self.pre(d.rems[i + 1], b);
            out.push((merged, if i % 2 == 0 { 1 } else { -1 }));
        }
    }

    fn coboundary(&self, cell: u64, out: &mut Vec<(u64, i64)>) {
        let d = self.decode(cell);
        for j in 0..d.k {
            let (p, r) = (d.parts[j], d.rems[j]);
            let base = cell - self.pre(r, p);
            let sign = if j % 2 == 0 { 1 } else { -1 };
            for &(q, s) in &self.splits[p as usize] {
                out.push((base + self.pre(r, q) + self.pre(self.minus(r, q), s), sign));
            }
        }
    }
}

/// `C(λ)` as an explicit poset.
pub fn composition_poset(
    monoid: &Monoid,
    lam: &Element,
    limits: CompositionLimits,
) -> Result<FinitePoset<Composition>> {
    Compositions::new(monoid, lam)?.poset(limits)
}

pub fn phi(monoid: &Monoid, lam: &Element, c: &Composition) -> Result<Vec<Element>> {
    Compositions::new(monoid, lam)?.phi(c)
}

pub fn phi_inverse(monoid: &Monoid, lam: &Element, chain: &[Element]) -> Result<Composition> {
    Compositions::new(monoid, lam)?.phi_inverse(chain)
}
