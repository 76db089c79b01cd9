//! Simplicial complexes and their reduced homology over an exact field.
//!
//! Betti vectors use Tor grading throughout: entry `i` is the reduced Betti
//! number in homological dimension `i - 2`. The empty complex (`S^-1`) has
//! a single class at index 1, and the formal `S^-2` is the vector with a
//! one at index 0.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{sparse_rank, FieldChoice};

/// Finitely supported Tor-graded Betti numbers `b_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "BTreeMap<usize, u64>", from = "BTreeMap<usize, u64>")]
pub struct BettiVector {
    entries: Vec<u64>,
}

impl BettiVector {
    pub fn zero() -> Self {
        BettiVector::default()
    }

    /// One at Tor degree `i`, zero elsewhere.
    pub fn delta(i: usize) -> Self {
        let mut entries = vec![0; i + 1];
        entries[i] = 1;
        BettiVector { entries }
    }

    pub fn from_vec(mut entries: Vec<u64>) -> Self {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        BettiVector { entries }
    }

    /// Builds a vector from reduced Betti numbers indexed from dimension -1.
    pub fn from_reduced(reduced_from_minus_one: &[u64]) -> Self {
        let mut entries = vec![0];
        entries.extend_from_slice(reduced_from_minus_one);
        Self::from_vec(entries)
    }

    pub fn get(&self, i: usize) -> u64 {
        self.entries.get(i).copied().unwrap_or(0)
    }

    /// Reduced Betti number in homological dimension `dim` (`dim >= -2`).
    pub fn reduced(&self, dim: i64) -> u64 {
        if dim < -2 {
            0
        } else {
            self.get((dim + 2) as usize)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.entries
    }

    /// `(i, b_i)` for every nonzero entry.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &b)| b != 0)
            .map(|(i, &b)| (i, b))
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().sum()
    }

    /// Betti vector of a suspended join: `(a ⋆ b)_i = Σ_{j+k=i} a_j b_k`.
    pub fn convolve(&self, other: &BettiVector) -> BettiVector {
        if self.is_zero() || other.is_zero() {
            return BettiVector::zero();
        }
        let mut out = vec![0u64; self.entries.len() + other.entries.len() - 1];
        for (j, &a) in self.entries.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (k, &b) in other.entries.iter().enumerate() {
                out[j + k] += a * b;
            }
        }
        BettiVector::from_vec(out)
    }

    /// `(shift b)_{i + by} = b_i`.
    pub fn shift(&self, by: usize) -> BettiVector {
        if self.is_zero() {
            return BettiVector::zero();
        }
        let mut entries = vec![0; by];
        entries.extend_from_slice(&self.entries);
        BettiVector { entries }
    }

    /// Entrywise sum (Betti vector of a wedge).
    pub fn add(&self, other: &BettiVector) -> BettiVector {
        let n = self.entries.len().max(other.entries.len());
        BettiVector::from_vec((0..n).map(|i| self.get(i) + other.get(i)).collect())
    }
}

impl From<BettiVector> for BTreeMap<usize, u64> {
    fn from(b: BettiVector) -> Self {
        b.nonzero().collect()
    }
}

impl From<BTreeMap<usize, u64>> for BettiVector {
    fn from(map: BTreeMap<usize, u64>) -> Self {
        let n = map.keys().next_back().map_or(0, |&k| k + 1);
        let mut entries = vec![0; n];
        for (i, b) in map {
            entries[i] = b;
        }
        BettiVector::from_vec(entries)
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, (i, b)) in self.nonzero().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}: {b}")?;
        }
        write!(f, "}}")
    }
}

/// A finite abstract simplicial complex on vertices `0..n`.
///
/// Simplices are sorted vertex lists grouped by dimension. A complex with
/// no vertices is the empty complex `S^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    faces: Vec<Vec<Vec<u32>>>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex {
            labels: Vec::new(),
            faces: Vec::new(),
        }
    }

    /// `n` isolated vertices.
    pub fn points(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::from_closed_family(labels, (0..n as u32).map(|v| vec![v]).collect())
    }

    /// The boundary of the `n`-simplex, a sphere of dimension `n - 1`.
    pub fn boundary_of_simplex(n: usize) -> Self {
        let k = n + 1;
        let labels = (0..k).map(|i| i.to_string()).collect();
        let simplices = (1u64..(1 << k) - 1)
            .map(|mask| (0..k as u32).filter(|v| mask >> v & 1 == 1).collect())
            .collect();
        Self::from_closed_family(labels, simplices)
    }

    /// Trusts that `simplices` is closed under non-empty subsets.
    pub(crate) fn from_closed_family(labels: Vec<String>, simplices: Vec<Vec<u32>>) -> Self {
        let k = Self::grouped(labels, simplices);
        debug_assert!(k.is_closed());
        k
    }

    fn grouped(labels: Vec<String>, simplices: Vec<Vec<u32>>) -> Self {
        let mut faces: Vec<Vec<Vec<u32>>> = Vec::new();
        for mut s in simplices {
            s.sort_unstable();
            let d = s.len() - 1;
            if faces.len() <= d {
                faces.resize(d + 1, Vec::new());
            }
            faces[d].push(s);
        }
        for level in &mut faces {
            level.sort_unstable();
            level.dedup();
        }
        SimplicialComplex { labels, faces }
    }

    /// The downward closure of `facets`, failing past `cap` simplices.
    pub fn from_facets(labels: Vec<String>, facets: &[Vec<u32>], cap: usize) -> Result<Self> {
        let n = labels.len() as u32;
        let mut all: std::collections::HashSet<Vec<u32>> = std::collections::HashSet::new();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            if f.is_empty() {
                continue;
            }
            if let Some(&v) = f.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidArgument(format!("facet vertex {v} out of range")));
            }
            if f.len() >= 40 {
                return Err(Error::resource(format!("facet of dimension {}", f.len() - 1), 39));
            }
            for mask in 1u64..(1 << f.len()) {
                let s: Vec<u32> = f
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                all.insert(s);
                if all.len() > cap {
                    return Err(Error::resource("complex closure", cap as u64));
                }
            }
        }
        Ok(Self::from_closed_family(labels, all.into_iter().collect()))
    }

    /// Validates downward closure of an explicit simplex list.
    pub fn from_simplices(labels: Vec<String>, simplices: Vec<Vec<u32>>) -> Result<Self> {
        let n = labels.len() as u32;
        if simplices.iter().any(|s| s.is_empty() || s.iter().any(|&v| v >= n)) {
            return Err(Error::InvalidArgument(
                "simplices must be non-empty and in range".into(),
            ));
        }
        let k = Self::grouped(labels, simplices);
        if !k.is_closed() {
            return Err(Error::InvalidArgument(
                "simplex family is not closed under faces".into(),
            ));
        }
        Ok(k)
    }

    fn is_closed(&self) -> bool {
        for d in 1..self.faces.len() {
            for s in &self.faces[d] {
                for skip in 0..s.len() {
                    let face: Vec<u32> = s
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &v)| v)
                        .collect();
                    if self.faces[d - 1].binary_search(&face).is_err() {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Dimension, `-1` for the empty complex.
    pub fn dimension(&self) -> i64 {
        self.faces.len() as i64 - 1
    }

    pub fn simplices(&self, dim: usize) -> &[Vec<u32>] {
        self.faces.get(dim).map_or(&[], |v| v.as_slice())
    }

    pub fn simplex_count(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    /// `[f_-1, f_0, f_1, ...]`, counting the empty face.
    pub fn face_counts(&self) -> Vec<u64> {
        let mut out = vec![1];
        out.extend(self.faces.iter().map(|l| l.len() as u64));
        out
    }

    /// Maximal simplices, sorted.
    pub fn facets(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for d in 0..self.faces.len() {
            let cofaces = self.faces.get(d + 1);
            let mut covered = std::collections::HashSet::new();
            if let Some(up) = cofaces {
                for s in up {
                    for skip in 0..s.len() {
                        let face: Vec<u32> = s
                            .iter()
                            .enumerate()
                            .filter(|&(i, _)| i != skip)
                            .map(|(_, &v)| v)
                            .collect();
                        covered.insert(face);
                    }
                }
            }
            out.extend(self.faces[d].iter().filter(|s| !covered.contains(*s)).cloned());
        }
        out.sort();
        out
    }

    /// Boundary matrix `∂_d` as rows over the `(d-1)`-faces. `∂_0` maps
    /// every vertex to the empty simplex (a single column).
    fn boundary_rows(&self, d: usize) -> Vec<Vec<(u32, i64)>> {
        if d == 0 {
            return self.simplices(0).iter().map(|_| vec![(0, 1)]).collect();
        }
        let index: HashMap<&[u32], u32> = self
            .simplices(d - 1)
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_slice(), i as u32))
            .collect();
        self.simplices(d)
            .iter()
            .map(|s| {
                let mut face = Vec::with_capacity(s.len() - 1);
                let mut row = Vec::with_capacity(s.len());
                for skip in 0..s.len() {
                    face.clear();
                    face.extend(s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
                    let sign = if skip % 2 == 0 { 1 } else { -1 };
                    row.push((index[face.as_slice()], sign));
                }
                row.sort_unstable_by_key(|e| e.0);
                row
            })
            .collect()
    }

    #[cfg(test)]
    fn column_count(&self, d: usize) -> usize {
        if d == 0 {
            1
        } else {
            self.simplices(d - 1).len()
        }
    }

    /// Checks `∂_{d} ∘ ∂_{d+1} = 0` by multiplying the integer matrices.
    pub fn boundary_squared_is_zero(&self) -> bool {
        for d in 0..self.faces.len().saturating_sub(1) {
            let lower = self.boundary_rows(d);
            let upper = self.boundary_rows(d + 1);
            for row in &upper {
                let mut acc: HashMap<u32, i64> = HashMap::new();
                for &(face, c) in row {
                    for &(col, e) in &lower[face as usize] {
                        *acc.entry(col).or_insert(0) += c * e;
                    }
                }
                if acc.values().any(|&v| v != 0) {
                    return false;
                }
            }
        }
        true
    }

    /// Reduced Betti numbers in Tor grading.
    pub fn reduced_betti(&self, field: FieldChoice) -> BettiVector {
        collapsed_betti(&IndexedComplex::new(self), field, usize::MAX).expect("no cap")
    }

    /// Ranks of the full boundary matrices, without collapsing first.
    #[cfg(test)]
    fn reduced_betti_by_rank(&self, field: FieldChoice) -> BettiVector {
        let top = self.faces.len();
        // ranks[d] = rank ∂_d for d in 0..=top (∂_top = 0)
        let mut ranks = vec![0usize; top + 1];
        for (d, rank) in ranks.iter_mut().enumerate().take(top) {
            *rank = sparse_rank(field, &self.boundary_rows(d), self.column_count(d));
        }
        let mut reduced = Vec::with_capacity(top + 1);
        reduced.push(1 - ranks[0] as u64);
        for d in 0..top {
            let f = self.faces[d].len();
            reduced.push((f - ranks[d] - ranks[d + 1]) as u64);
        }
        BettiVector::from_reduced(&reduced)
    }

    /// Betti numbers plus the data needed to audit them.
    pub fn homology_report(&self, field: FieldChoice, check_boundary: bool) -> HomologyReport {
        HomologyReport {
            betti: self.reduced_betti(field),
            face_counts: self.face_counts(),
            boundary_squared_zero: check_boundary.then(|| self.boundary_squared_is_zero()),
        }
    }

    /// The join `K * L`; vertices of `other` are shifted past ours.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let offset = self.labels.len() as u32;
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let left: Vec<&Vec<u32>> = self.faces.iter().flatten().collect();
        let right: Vec<Vec<u32>> = other
            .faces
            .iter()
            .flatten()
            .map(|s| s.iter().map(|v| v + offset).collect())
            .collect();
        let mut simplices: Vec<Vec<u32>> = Vec::with_capacity((left.len() + 1) * (right.len() + 1));
        simplices.extend(left.iter().map(|s| (*s).clone()));
        simplices.extend(right.iter().cloned());
        for s in &left {
            for t in &right {
                let mut u = (*s).clone();
                u.extend_from_slice(t);
                simplices.push(u);
            }
        }
        Self::from_closed_family(labels, simplices)
    }

    pub fn suspension(&self) -> SimplicialComplex {
        let mut poles = Self::points(2);
        poles.labels = vec!["N".into(), "S".into()];
        self.join(&poles)
    }
}

/// A simplicial complex with simplices numbered by dimension, the empty
/// simplex first, and incidences stored both ways.
struct IndexedComplex {
    /// First id of each dimension `-1, 0, 1, ...`, plus the total.
    starts: Vec<u64>,
    down: Csr,
    up: Csr,
}

#[derive(Default)]
struct Csr {
    offsets: Vec<usize>,
    cells: Vec<(u32, i8)>,
}

impl Csr {
    fn row(&self, i: u64) -> &[(u32, i8)] {
        &self.cells[self.offsets[i as usize]..self.offsets[i as usize + 1]]
    }
}

impl IndexedComplex {
    fn new(k: &SimplicialComplex) -> Self {
        let mut starts = vec![0u64, 1];
        for level in &k.faces {
            starts.push(starts.last().unwrap() + level.len() as u64);
        }
        let total = *starts.last().unwrap() as usize;
        let mut down = Csr {
            offsets: Vec::with_capacity(total + 1),
            cells: Vec::new(),
        };
        down.offsets.extend([0, 0]);
        let mut face = Vec::new();
        for (d, level) in k.faces.iter().enumerate() {
            for s in level {
                if d == 0 {
                    down.cells.push((0, 1));
                } else {
                    for skip in 0..s.len() {
                        face.clear();
                        face.extend(s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
                        let i = k.faces[d - 1].binary_search(&face).expect("closed family");
                        let sign = if skip % 2 == 0 { 1 } else { -1 };
                        down.cells.push(((starts[d] + i as u64) as u32, sign));
                    }
                }
                down.offsets.push(down.cells.len());
            }
        }
        let mut counts = vec![0usize; total + 1];
        for &(c, _) in &down.cells {
            counts[c as usize + 1] += 1;
        }
        for i in 0..total {
            counts[i + 1] += counts[i];
        }
        let mut up = Csr {
            offsets: counts.clone(),
            cells: vec![(0, 0); down.cells.len()],
        };
        for cell in 0..total {
            for &(f, sign) in down.row(cell as u64) {
                let slot = &mut counts[f as usize];
                up.cells[*slot] = (cell as u32, sign);
                *slot += 1;
            }
        }
        IndexedComplex { starts, down, up }
    }
}

impl CellComplex for IndexedComplex {
    fn len(&self) -> u64 {
        *self.starts.last().unwrap()
    }

    fn dim(&self, cell: u64) -> i64 {
        self.starts.partition_point(|&s| s <= cell) as i64 - 2
    }

    fn base_cells(&self) -> Vec<u64> {
        vec![0]
    }

    fn boundary(&self, cell: u64, out: &mut Vec<(u64, i64)>) {
        out.extend(self.down.row(cell).iter().map(|&(c, s)| (c as u64, s as i64)));
    }

    fn coboundary(&self, cell: u64, out: &mut Vec<(u64, i64)>) {
        out.extend(self.up.row(cell).iter().map(|&(c, s)| (c as u64, s as i64)));
    }
}

/// A finite based chain complex given implicitly by cell ids `0..len`.
///
/// Cells of dimension `-1` stand for the augmentation, so the homology of
/// the complex is reduced homology. Incidence coefficients must be `±1`.
pub(crate) trait CellComplex {
    fn len(&self) -> u64;
    fn dim(&self, cell: u64) -> i64;
    /// The cells of dimension `-1`.
    fn base_cells(&self) -> Vec<u64>;
    fn boundary(&self, cell: u64, out: &mut Vec<(u64, i64)>);
    fn coboundary(&self, cell: u64, out: &mut Vec<(u64, i64)>);
}

/// Reduced Betti numbers (Tor grading) of a [`CellComplex`].
///
/// Repeatedly removes pairs `(a, b)` where `b` is the only live face of
/// `a` or `a` is the only live coface of `b`. Each removal is a quotient
/// by (or the dual of) an acyclic two-cell subcomplex, so the surviving
/// cells with the restricted boundary have the same Betti numbers. Ranks
/// are then taken on the survivors, failing if more than `cap` remain.
pub(crate) fn collapsed_betti<C: CellComplex + ?Sized>(
    complex: &C,
    field: FieldChoice,
    cap: usize,
) -> Result<BettiVector> {
    let n = complex.len();
    let n_usize = usize::try_from(n).map_err(|_| Error::resource("cell count", u64::MAX))?;
    let mut alive = FixedBitSet::with_capacity(n_usize);
    alive.insert_range(..);
    let mut queued = FixedBitSet::with_capacity(n_usize);
    let mut queue: VecDeque<u64> = VecDeque::new();
    let mut buf = Vec::new();
    // coreductions starting from the vertices sweep upward
    for c in complex.base_cells() {
        buf.clear();
        complex.coboundary(c, &mut buf);
        for &(v, _) in &buf {
            if !queued.put(v as usize) {
                queue.push_back(v);
            }
        }
    }
    let live = |cell: u64, up: bool, alive: &FixedBitSet, buf: &mut Vec<(u64, i64)>| {
        buf.clear();
        if up {
            complex.coboundary(cell, buf);
        } else {
            complex.boundary(cell, buf);
        }
        buf.retain(|&(c, _)| alive.contains(c as usize));
    };
    let mut touched: Vec<u64> = Vec::new();
    let mut next_start = 0u64;
    loop {
        let cell = match queue.pop_front() {
            Some(c) => {
                queued.set(c as usize, false);
                c
            }
            None => {
                while next_start < n && !alive.contains(next_start as usize) {
                    next_start += 1;
                }
                if next_start == n {
                    break;
                }
                next_start += 1;
                next_start - 1
            }
        };
        if !alive.contains(cell as usize) {
            continue;
        }
        live(cell, false, &alive, &mut buf);
        let pair = if buf.len() == 1 {
            Some((cell, buf[0].0))
        } else {
            live(cell, true, &alive, &mut buf);
            (buf.len() == 1).then(|| (buf[0].0, cell))
        };
        let Some((a, b)) = pair else { continue };
        alive.set(a as usize, false);
        alive.set(b as usize, false);
        touched.clear();
        for c in [a, b] {
            for up in [false, true] {
                live(c, up, &alive, &mut buf);
                touched.extend(buf.iter().map(|e| e.0));
            }
        }
        for &t in &touched {
            if !queued.contains(t as usize) {
                queued.insert(t as usize);
                queue.push_back(t);
            }
        }
    }

    let survivors: Vec<u64> = alive.ones().map(|c| c as u64).collect();

    if survivors.len() > cap {
        return Err(Error::resource(
            format!("{} cells left after collapsing", survivors.len()),
            cap as u64,
        ));
    }
    let mut by_dim: BTreeMap<i64, Vec<u64>> = BTreeMap::new();
    for &c in &survivors {
        by_dim.entry(complex.dim(c)).or_default().push(c);
    }
    let index: HashMap<u64, u32> = by_dim
        .values()
        .flat_map(|cells| cells.iter().enumerate().map(|(i, &c)| (c, i as u32)))
        .collect();
    let rank_of = |d: i64| -> usize {
        let (Some(rows), Some(cols)) = (by_dim.get(&d), by_dim.get(&(d - 1))) else {
            return 0;
        };
        let mut buf = Vec::new();
        let matrix: Vec<Vec<(u32, i64)>> = rows
            .iter()
            .map(|&c| {
                buf.clear();
                complex.boundary(c, &mut buf);
                buf.iter()
                    .filter(|(f, _)| alive.contains(*f as usize))
                    .map(|&(f, s)| (index[&f], s))
                    .collect()
            })
            .collect();
        sparse_rank(field, &matrix, cols.len())
    };
    let mut entries = Vec::new();
    for (&d, cells) in &by_dim {
        let betti = cells.len() - rank_of(d) - rank_of(d + 1);
        let i = (d + 2) as usize;
        if entries.len() <= i {
            entries.resize(i + 1, 0);
        }
        entries[i] = betti as u64;
    }
    Ok(BettiVector::from_vec(entries))
}

/// Betti numbers of a complex with its face counts and an optional
/// `∂∘∂ = 0` audit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub betti: BettiVector,
    /// `[f_-1, f_0, ...]`
    pub face_counts: Vec<u64>,
    pub boundary_squared_zero: Option<bool>,
}

impl HomologyReport {
    /// Reduced Euler characteristic from faces equals the alternating
    /// sum of reduced Betti numbers.
    pub fn euler_identity_holds(&self) -> bool {
        let from_faces: i128 = self
            .face_counts
            .iter()
            .enumerate()
            .map(|(i, &f)| if i % 2 == 1 { f as i128 } else { -(f as i128) })
            .sum();
        // index i of face_counts is dimension i - 1; sign (-1)^(i-1)
        let from_betti: i128 = self
            .betti
            .nonzero()
            .map(|(i, b)| if i % 2 == 0 { b as i128 } else { -(b as i128) })
            .sum();
        // Tor index i is dimension i - 2; sign (-1)^(i-2) = (-1)^i
        from_faces == from_betti
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldChoice = FieldChoice::Rationals;
    const F2: FieldChoice = FieldChoice::PrimeField(2);

    fn circle() -> SimplicialComplex {
        SimplicialComplex::from_facets(
            vec!["a".into(), "b".into(), "c".into()],
            &[vec![0, 1], vec![1, 2], vec![0, 2]],
            100,
        )
        .unwrap()
    }

    #[test]
    fn triangle_boundary_is_a_circle() {
        assert_eq!(circle().reduced_betti(Q), BettiVector::delta(3));
    }

    #[test]
    fn empty_complex_is_minus_one_sphere() {
        let k = SimplicialComplex::empty();
        assert_eq!(k.reduced_betti(Q), BettiVector::delta(1));
        assert_eq!(k.dimension(), -1);
        assert_eq!(k.face_counts(), vec![1]);
    }

    #[test]
    fn simplex_boundaries_are_spheres() {
        for n in 1..=5 {
            let k = SimplicialComplex::boundary_of_simplex(n);
            let r = k.homology_report(Q, true);
            assert_eq!(r.betti, BettiVector::delta(n + 1), "n = {n}");
            assert_eq!(r.boundary_squared_zero, Some(true));
            assert!(r.euler_identity_holds());
        }
    }

    #[test]
    fn joins_and_suspensions() {
        let two = SimplicialComplex::points(2);
        let square = two.join(&two);
        assert_eq!(square.simplex_count(), 8);
        assert_eq!(square.reduced_betti(Q), BettiVector::delta(3));
        assert_eq!(
            SimplicialComplex::empty().join(&circle()).reduced_betti(Q),
            BettiVector::delta(3)
        );
        assert_eq!(SimplicialComplex::empty().suspension(), {
            let mut p = SimplicialComplex::points(2);
            p.labels = vec!["N".into(), "S".into()];
            p
        });
        assert_eq!(two.suspension().reduced_betti(Q), BettiVector::delta(3));
        assert_eq!(circle().suspension().reduced_betti(Q), BettiVector::delta(4));
        let cone = SimplicialComplex::points(1).join(&circle());
        assert!(cone.reduced_betti(F2).is_zero());
    }

    #[test]
    fn projective_plane_detects_characteristic_two() {
        // six vertex RP^2
        let facets: Vec<Vec<u32>> = [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 1, 5],
            [1, 2, 4],
            [2, 3, 5],
            [1, 3, 4],
            [1, 3, 5],
            [2, 4, 5],
        ]
        .iter()
        .map(|f| f.to_vec())
        .collect();
        let labels = (0..6).map(|i| i.to_string()).collect();
        let k = SimplicialComplex::from_facets(labels, &facets, 1000).unwrap();
        assert!(k.reduced_betti(Q).is_zero());
        assert_eq!(k.reduced_betti(F2), BettiVector::from_vec(vec![0, 0, 0, 1, 1]));
        assert!(k.homology_report(F2, true).euler_identity_holds());
    }

    #[test]
    fn collapsing_keeps_the_ranks() {
        let rp2 = SimplicialComplex::from_facets(
            (0..6).map(|i| i.to_string()).collect(),
            &[
                vec![0, 1, 2],
                vec![0, 2, 3],
                vec![0, 3, 4],
                vec![0, 4, 5],
                vec![0, 1, 5],
                vec![1, 2, 4],
                vec![2, 3, 5],
                vec![1, 3, 4],
                vec![1, 3, 5],
                vec![2, 4, 5],
            ],
            1000,
        )
        .unwrap();
        let cases = [
            SimplicialComplex::empty(),
            SimplicialComplex::points(4),
            circle().join(&SimplicialComplex::points(3)),
            SimplicialComplex::boundary_of_simplex(4).suspension(),
            rp2.clone(),
            rp2.join(&circle()),
        ];
        for k in &cases {
            for field in [Q, F2, FieldChoice::PrimeField(3)] {
                assert_eq!(k.reduced_betti(field), k.reduced_betti_by_rank(field));
            }
        }
    }

    #[test]
    fn convolve_and_shift() {
        let b = BettiVector::from_vec(vec![0, 2, 0, 1]);
        assert_eq!(BettiVector::delta(0).convolve(&b), b);
        assert_eq!(
            BettiVector::delta(1).convolve(&BettiVector::delta(1)),
            BettiVector::delta(2)
        );
        assert!(BettiVector::zero().convolve(&b).is_zero());
        assert_eq!(b.shift(0), b);
        assert_eq!(BettiVector::delta(0).shift(2), BettiVector::delta(2));
        assert_eq!(BettiVector::delta(2).shift(2), BettiVector::delta(4));
        assert_eq!(b.shift(2), BettiVector::delta(2).convolve(&b));
        assert_eq!(b.add(&BettiVector::delta(1)), BettiVector::from_vec(vec![0, 3, 0, 1]));
    }

    #[test]
    fn betti_vector_json_is_a_sparse_map() {
        let b = BettiVector::from_vec(vec![0, 2, 0, 1]);
        let s = serde_json::to_string(&b).unwrap();
        assert_eq!(s, r#"{"1":2,"3":1}"#);
        assert_eq!(serde_json::from_str::<BettiVector>(&s).unwrap(), b);
    }

    #[test]
    fn from_simplices_checks_closure() {
        let labels = vec!["a".into(), "b".into()];
        assert!(SimplicialComplex::from_simplices(labels.clone(), vec![vec![0, 1]]).is_err());
        assert!(SimplicialComplex::from_simplices(labels, vec![vec![0], vec![1], vec![0, 1]]).is_ok());
    }

    #[test]
    fn facets_of_a_cone() {
        let k = SimplicialComplex::points(1).join(&SimplicialComplex::points(2));
        assert_eq!(k.facets(), vec![vec![0, 1], vec![0, 2]]);
    }
}
