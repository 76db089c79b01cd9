//! Finite posets, their order complexes and homotopy-preserving cores.

use std::collections::VecDeque;
use std::fmt::Display;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::SimplicialComplex;

/// A finite poset with its transitive closure and Hasse diagram.
#[derive(Clone, Debug)]
pub struct FinitePoset<T> {
    elements: Vec<T>,
    /// `above[i]` holds every `j` with `i < j`.
    above: Vec<FixedBitSet>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    /// A linear extension.
    linear: Vec<usize>,
}

impl<T> FinitePoset<T> {
    /// Builds a poset from a strict order predicate, checking that it is
    /// irreflexive, antisymmetric and transitive.
    pub fn from_relation(elements: Vec<T>, less: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = elements.len();
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in above.iter_mut().enumerate() {
            for j in 0..n {
                if less(i, j) {
                    if i == j {
                        return Err(Error::InvalidArgument(format!(
                            "relation is not irreflexive at element {i}"
                        )));
                    }
                    row.insert(j);
                }
            }
        }
        for i in 0..n {
            for j in above[i].ones() {
                if above[j].contains(i) {
                    return Err(Error::InvalidArgument(format!(
                        "relation is not antisymmetric at ({i}, {j})"
                    )));
                }
                if !above[j].is_subset(&above[i]) {
                    return Err(Error::InvalidArgument(format!(
                        "relation is not transitive above ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self::from_closure(elements, above))
    }

    /// Builds a poset from (possibly redundant) cover pairs `(lower, upper)`.
    pub fn from_covers(elements: Vec<T>, covers: &[(usize, usize)]) -> Result<Self> {
        let n = elements.len();
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut indegree = vec![0usize; n];
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(Error::InvalidArgument(format!("cover ({a}, {b}) out of range")));
            }
            up[a].push(b);
            indegree[b] += 1;
        }
        let mut order = Vec::with_capacity(n);
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &y in &up[x] {
                indegree[y] -= 1;
                if indegree[y] == 0 {
                    queue.push_back(y);
                }
            }
        }
        if order.len() != n {
            return Err(Error::InvalidArgument("cover relation contains a cycle".into()));
        }
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for &x in order.iter().rev() {
            let mut bits = FixedBitSet::with_capacity(n);
            for &y in &up[x] {
                bits.insert(y);
                bits.union_with(&above[y]);
            }
            above[x] = bits;
        }
        Ok(Self::from_closure(elements, above))
    }

    fn from_closure(elements: Vec<T>, above: Vec<FixedBitSet>) -> Self {
        let n = elements.len();
        let mut upper = vec![Vec::new(); n];
        let mut lower = vec![Vec::new(); n];
        for i in 0..n {
            let mut shadow = FixedBitSet::with_capacity(n);
            for k in above[i].ones() {
                shadow.union_with(&above[k]);
            }
            for j in above[i].ones() {
                if !shadow.contains(j) {
                    upper[i].push(j);
                    lower[j].push(i);
                }
            }
        }
        // elements below x form a strict superset of those below any y < x
        let mut below_count = vec![0usize; n];
        for row in &above {
            for j in row.ones() {
                below_count[j] += 1;
            }
        }
        let mut linear: Vec<usize> = (0..n).collect();
        linear.sort_by_key(|&i| (below_count[i], i));
        FinitePoset {
            elements,
            above,
            upper,
            lower,
            linear,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &T {
        &self.elements[i]
    }

    /// Strict order `i < j`.
    pub fn less(&self, i: usize, j: usize) -> bool {
        self.above[i].contains(j)
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower[i]
    }

    /// All cover pairs `(lower, upper)`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .upper
            .iter()
            .enumerate()
            .flat_map(|(i, ups)| ups.iter().map(move |&j| (i, j)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Number of strict relations `i < j`.
    pub fn relation_count(&self) -> usize {
        self.above.iter().map(|b| b.count_ones(..)).sum()
    }

    /// Number of non-empty chains, i.e. simplices of the order complex.
    pub fn chain_count(&self) -> u128 {
        let n = self.len();
        let mut ending = vec![0u128; n];
        for &x in &self.linear {
            ending[x] = ending[x].saturating_add(1);
            for y in self.above[x].ones() {
                ending[y] = ending[y].saturating_add(ending[x]);
            }
        }
        ending.iter().fold(0u128, |a, &b| a.saturating_add(b))
    }

    /// Induced subposet on `keep` (indices into this poset).
    pub fn induced(&self, keep: &[usize]) -> FinitePoset<T>
    where
        T: Clone,
    {
        let elements = keep.iter().map(|&i| self.elements[i].clone()).collect();
        FinitePoset::from_relation(elements, |a, b| self.less(keep[a], keep[b]))
            .expect("restriction of a partial order")
    }

    /// A core: the subposet left after repeatedly deleting beat points.
    /// Its order complex is a strong deformation retract of this one.
    pub fn core(&self) -> FinitePoset<T>
    where
        T: Clone,
    {
        self.induced(&beat_point_core(self))
    }

    /// The order complex: simplices are the non-empty chains.
    ///
    /// Fails with a resource error if there are more than `cap` chains.
    pub fn order_complex(&self, cap: usize) -> Result<SimplicialComplex>
    where
        T: Display,
    {
        let total = self.chain_count();
        if total > cap as u128 {
            return Err(Error::resource(
                format!("order complex with {total} simplices"),
                cap as u64,
            ));
        }
        let mut simplices: Vec<Vec<u32>> = Vec::with_capacity(total as usize);
        let mut chain: Vec<usize> = Vec::new();
        for &x in &self.linear {
            chain.push(x);
            self.extend_chains(&mut chain, &mut simplices);
            chain.pop();
        }
        let labels = self.elements.iter().map(|e| e.to_string()).collect();
        Ok(SimplicialComplex::from_closed_family(labels, simplices))
    }

    fn extend_chains(&self, chain: &mut Vec<usize>, out: &mut Vec<Vec<u32>>) {
        let mut simplex: Vec<u32> = chain.iter().map(|&v| v as u32).collect();
        simplex.sort_unstable();
        out.push(simplex);
        let last = *chain.last().expect("non-empty chain");
        for y in self.above[last].ones() {
            chain.push(y);
            self.extend_chains(chain, out);
            chain.pop();
        }
    }

    pub fn map<U>(self, f: impl FnMut(T) -> U) -> FinitePoset<U> {
        FinitePoset {
            elements: self.elements.into_iter().map(f).collect(),
            above: self.above,
            upper: self.upper,
            lower: self.lower,
            linear: self.linear,
        }
    }
}

/// `{elements, covers}` with string labels and index pairs `(lower, upper)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetExport {
    pub elements: Vec<String>,
    pub covers: Vec<(usize, usize)>,
}

impl<T: Display> FinitePoset<T> {
    pub fn export(&self) -> PosetExport {
        PosetExport {
            elements: self.elements.iter().map(|e| e.to_string()).collect(),
            covers: self.covers(),
        }
    }
}

/// Read access to a (possibly implicit) Hasse diagram.
pub trait HasseDiagram {
    fn size(&self) -> usize;
    fn upper_covers_of(&self, i: usize) -> Vec<u32>;
    fn lower_covers_of(&self, i: usize) -> Vec<u32>;
    /// Strict order `i < j`.
    fn less_than(&self, i: usize, j: usize) -> bool;
}

impl<T> HasseDiagram for FinitePoset<T> {
    fn size(&self) -> usize {
        self.len()
    }

    fn upper_covers_of(&self, i: usize) -> Vec<u32> {
        self.upper[i].iter().map(|&j| j as u32).collect()
    }

    fn lower_covers_of(&self, i: usize) -> Vec<u32> {
        self.lower[i].iter().map(|&j| j as u32).collect()
    }

    fn less_than(&self, i: usize, j: usize) -> bool {
        self.less(i, j)
    }
}

/// Indices (ascending) of a core obtained by deleting beat points.
///
/// `x` is an up beat point if it has exactly one upper cover and a down
/// beat point if it has exactly one lower cover. Deleting one keeps the
/// homotopy type of the order complex. Covers are patched locally after
/// each deletion, so the diagram never needs an explicit closure.
pub fn beat_point_core<H: HasseDiagram + ?Sized>(h: &H) -> Vec<usize> {
    let n = h.size();
    let mut up: Vec<Vec<u32>> = (0..n).map(|i| h.upper_covers_of(i)).collect();
    let mut down: Vec<Vec<u32>> = (0..n).map(|i| h.lower_covers_of(i)).collect();
    let mut alive = vec![true; n];
    let mut queued = vec![true; n];
    let mut queue: VecDeque<u32> = (0..n as u32).collect();

    while let Some(x) = queue.pop_front() {
        let x = x as usize;
        queued[x] = false;
        if !alive[x] {
            continue;
        }
        let (unique, above) = if up[x].len() == 1 {
            (up[x][0] as usize, true)
        } else if down[x].len() == 1 {
            (down[x][0] as usize, false)
        } else {
            continue;
        };
        alive[x] = false;
        let mut touched = vec![unique];
        if above {
            // x < c uniquely; every lower cover w of x now sits below c
            let c = unique;
            down[c].retain(|&v| v as usize != x);
            for w in std::mem::take(&mut down[x]) {
                let w = w as usize;
                up[w].retain(|&v| v as usize != x);
                let shadowed = up[w].iter().any(|&v| v as usize == c || h.less_than(v as usize, c));
                if !shadowed {
                    up[w].push(c as u32);
                    down[c].push(w as u32);
                }
                touched.push(w);
            }
            up[x].clear();
        } else {
            let c = unique;
            up[c].retain(|&v| v as usize != x);
            for w in std::mem::take(&mut up[x]) {
                let w = w as usize;
                down[w].retain(|&v| v as usize != x);
                let shadowed = down[w].iter().any(|&v| v as usize == c || h.less_than(c, v as usize));
                if !shadowed {
                    down[w].push(c as u32);
                    up[c].push(w as u32);
                }
                touched.push(w);
            }
            down[x].clear();
        }
        for t in touched {
            if alive[t] && !queued[t] {
                queued[t] = true;
                queue.push_back(t as u32);
            }
        }
    }
    (0..n).filter(|&i| alive[i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boolean_lattice_minus_ends(k: usize) -> FinitePoset<String> {
        // proper non-empty subsets of {0..k}, ordered by inclusion
        let masks: Vec<u32> = (1..(1u32 << k) - 1).collect();
        let labels = masks.iter().map(|m| format!("{m:b}")).collect();
        FinitePoset::from_relation(labels, |i, j| masks[i] != masks[j] && masks[i] & masks[j] == masks[i]).unwrap()
    }

    #[test]
    fn rejects_non_orders() {
        assert!(FinitePoset::from_relation(vec![0, 1], |i, j| i != j).is_err());
        assert!(FinitePoset::from_relation(vec![0], |_, _| true).is_err());
        // 0<1, 1<2 without 0<2
        assert!(FinitePoset::from_relation(vec![0, 1, 2], |i, j| j == i + 1).is_err());
        assert!(FinitePoset::from_covers(vec![0, 1], &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn covers_and_closure_from_covers() {
        // diamond a < b, c < d
        let p = FinitePoset::from_covers(vec!['a', 'b', 'c', 'd'], &[(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)]).unwrap();
        assert!(p.less(0, 3));
        assert!(!p.less(1, 2));
        assert_eq!(p.covers(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(p.relation_count(), 5);
        // chains: 4 singletons, 5 pairs, 2 triples
        assert_eq!(p.chain_count(), 11);
        assert_eq!(p.order_complex(100).unwrap().simplex_count(), 11);
    }

    #[test]
    fn empty_and_antichain_complexes() {
        let empty: FinitePoset<u8> = FinitePoset::from_relation(vec![], |_, _| false).unwrap();
        assert!(empty.order_complex(10).unwrap().is_empty());
        let anti = FinitePoset::from_relation(vec!["a", "b"], |_, _| false).unwrap();
        let k = anti.order_complex(10).unwrap();
        assert_eq!(k.face_counts(), vec![1, 2]);
    }

    #[test]
    fn order_complex_cap() {
        let p = boolean_lattice_minus_ends(4);
        let err = p.order_complex(10).unwrap_err();
        assert!(err.is_resource());
    }

    #[test]
    fn core_of_contractible_poset_is_a_point() {
        // a poset with a maximum collapses completely
        let p = FinitePoset::from_relation((0..5).collect::<Vec<_>>(), |i, j| j == 4 && i != 4).unwrap();
        assert_eq!(p.core().len(), 1);
    }

    #[test]
    fn core_of_sphere_model_is_itself() {
        // the boundary of a simplex has no beat points
        let p = boolean_lattice_minus_ends(3);
        assert_eq!(p.core().len(), 6);
        // a four point model of S^1: two minima below two maxima
        let q = FinitePoset::from_relation(vec![0, 1, 2, 3], |i, j| i < 2 && j >= 2).unwrap();
        assert_eq!(q.core().len(), 4);
    }
}
