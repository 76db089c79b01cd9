//! Frobenius complexes `F(λ) = Δ((0, λ))`, their Tor-graded Betti vectors
//! and truncated Poincaré series.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldChoice;
use crate::homology::{BettiVector, SimplicialComplex};
use crate::monoid::{Element, Monoid, MonoidDescriptor};
use crate::poset::FinitePoset;
use crate::resolution::{tor_betti, tor_betti_at};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrobeniusComplex {
    /// `F(0)`, the formal `S^-2`.
    FormalS2,
    Complex(SimplicialComplex),
}

impl FrobeniusComplex {
    pub fn reduced_betti(&self, field: FieldChoice) -> BettiVector {
        match self {
            FrobeniusComplex::FormalS2 => BettiVector::delta(0),
            FrobeniusComplex::Complex(k) => k.reduced_betti(field),
        }
    }
}

/// The order complex of `(0, λ)`, or the formal `S^-2` at zero.
pub fn frobenius_complex(monoid: &Monoid, lam: &Element, simplex_cap: usize) -> Result<FrobeniusComplex> {
    monoid.validate(lam)?;
    if monoid.is_zero(lam) {
        return Ok(FrobeniusComplex::FormalS2);
    }
    Ok(FrobeniusComplex::Complex(
        monoid.open_interval(lam).order_complex(simplex_cap)?,
    ))
}

/// Which engine computes a Betti vector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Order complex when small, else the order complex of a core, else
    /// the resolution.
    #[default]
    Auto,
    /// Homology of the full order complex of `(0, λ)`.
    OrderComplex,
    /// Homology of the order complex of a beat-point core of `(0, λ)`.
    Core,
    /// `dim Tor_{i,λ}(K, K)` from a minimal free resolution.
    Resolution,
}

/// How a particular Betti vector was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// `λ = 0`.
    Formal,
    OrderComplex,
    Core,
    Resolution,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BettiConfig {
    pub field: FieldChoice,
    pub method: Method,
    /// Largest complex whose homology is computed.
    pub simplex_cap: usize,
    /// `Auto` takes the full order complex up to this many simplices.
    pub auto_limit: usize,
    /// Check `∂∘∂ = 0` (and `d∘d = 0` for resolutions).
    pub audit: bool,
}

impl Default for BettiConfig {
    fn default() -> Self {
        BettiConfig {
            field: FieldChoice::Rationals,
            method: Method::Auto,
            simplex_cap: 1_000_000,
            auto_limit: 20_000,
            audit: false,
        }
    }
}

impl BettiConfig {
    pub fn with_field(field: FieldChoice) -> Self {
        BettiConfig {
            field,
            ..Default::default()
        }
    }
}

/// A Betti vector with the facts needed to audit it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiRecord {
    pub element: Element,
    pub degree: u64,
    pub betti: BettiVector,
    pub route: Route,
    /// Simplices of `F(λ)` (non-empty chains of `(0, λ)`).
    pub simplices: u128,
    /// Face counts `[f_-1, f_0, ...]` of the complex whose homology was taken.
    pub face_counts: Option<Vec<u64>>,
    pub euler_ok: Option<bool>,
    pub boundary_ok: Option<bool>,
}

fn simplicial(poset: &FinitePoset<Element>, cfg: &BettiConfig) -> Result<(BettiVector, Vec<u64>, bool, Option<bool>)> {
    let complex = poset.order_complex(cfg.simplex_cap)?;
    let report = complex.homology_report(cfg.field, cfg.audit);
    let euler = report.euler_identity_holds();
    Ok((report.betti, report.face_counts, euler, report.boundary_squared_zero))
}

/// Betti vector of `λ` with the route taken.
pub fn betti_record(monoid: &Monoid, lam: &Element, cfg: &BettiConfig) -> Result<BettiRecord> {
    compute_record(monoid, lam, cfg, false)
}

/// With `defer_resolution`, a record routed to the resolution is returned
/// with an empty vector for the caller to fill in.
fn compute_record(monoid: &Monoid, lam: &Element, cfg: &BettiConfig, defer_resolution: bool) -> Result<BettiRecord> {
    monoid.validate(lam)?;
    let degree = monoid.degree(lam);
    let mut record = BettiRecord {
        element: lam.clone(),
        degree,
        betti: BettiVector::delta(0),
        route: Route::Formal,
        simplices: 0,
        face_counts: None,
        euler_ok: None,
        boundary_ok: None,
    };
    if monoid.is_zero(lam) {
        return Ok(record);
    }
    let interval = monoid.open_interval(lam);
    record.simplices = interval.chain_count();
    let mut core = None;
    let route = match cfg.method {
        Method::OrderComplex => Route::OrderComplex,
        Method::Core => Route::Core,
        Method::Resolution => Route::Resolution,
        Method::Auto if record.simplices <= cfg.auto_limit as u128 => Route::OrderComplex,
        Method::Auto => {
            let c = interval.core();
            let fits = c.chain_count() <= cfg.simplex_cap as u128;
            core = Some(c);
            if fits {
                Route::Core
            } else {
                Route::Resolution
            }
        }
    };
    record.route = route;
    match route {
        Route::OrderComplex | Route::Core => {
            let poset = match route {
                Route::Core => core.unwrap_or_else(|| interval.core()),
                _ => interval,
            };
            let (betti, faces, euler, boundary) = simplicial(&poset, cfg)?;
            record.betti = betti;
            record.face_counts = Some(faces);
            record.euler_ok = Some(euler);
            record.boundary_ok = boundary;
        }
        Route::Resolution if defer_resolution => record.betti = BettiVector::zero(),
        Route::Resolution => record.betti = tor_betti_at(monoid, lam, cfg.field, cfg.audit)?,
        Route::Formal => unreachable!("nonzero element"),
    }
    Ok(record)
}

/// `b_i(λ) = β̃_{i-2}(F(λ))` with default settings over `field`.
pub fn betti_vector(monoid: &Monoid, lam: &Element, field: FieldChoice) -> Result<BettiVector> {
    Ok(betti_record(monoid, lam, &BettiConfig::with_field(field))?.betti)
}

/// Records for every element of degree at most `bound`, in table order.
///
/// Elements the configuration routes to the resolution share one
/// resolution over the whole degree range.
pub fn poincare_records(monoid: &Monoid, bound: u64, cfg: &BettiConfig) -> Result<Vec<BettiRecord>> {
    let elements = monoid.elements_up_to(bound);
    let mut records: Vec<BettiRecord> = elements
        .par_iter()
        .map(|lam| compute_record(monoid, lam, cfg, true))
        .collect::<Result<_>>()?;
    if records.iter().any(|r| r.route == Route::Resolution) {
        let tor = tor_betti(monoid, &elements, cfg.field, cfg.audit)?;
        for (r, b) in records.iter_mut().zip(tor) {
            if r.route == Route::Resolution {
                r.betti = b;
            }
        }
    }
    Ok(records)
}

/// A truncation of `P_Λ(t, z)` keyed by `(degree, element)`; only nonzero
/// Betti vectors are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareTable {
    pub monoid: MonoidDescriptor,
    pub degree_bound: u64,
    pub field: FieldChoice,
    entries: BTreeMap<(u64, Element), BettiVector>,
}

#[derive(Serialize, Deserialize)]
struct TableEntry {
    degree: u64,
    element: Element,
    betti: BettiVector,
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    monoid: MonoidDescriptor,
    degree_bound: u64,
    field: String,
    entries: Vec<TableEntry>,
}

impl Serialize for PoincareTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TableFile {
            monoid: self.monoid.clone(),
            degree_bound: self.degree_bound,
            field: self.field.to_string(),
            entries: self
                .iter()
                .map(|(d, e, b)| TableEntry {
                    degree: d,
                    element: e.clone(),
                    betti: b.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PoincareTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let file = TableFile::deserialize(d)?;
        let field = file.field.parse().map_err(serde::de::Error::custom)?;
        let mut table = PoincareTable::new(file.monoid, file.degree_bound, field);
        for e in file.entries {
            table.insert(e.degree, e.element, e.betti);
        }
        Ok(table)
    }
}

impl PoincareTable {
    pub fn new(monoid: MonoidDescriptor, degree_bound: u64, field: FieldChoice) -> Self {
        PoincareTable {
            monoid,
            degree_bound,
            field,
            entries: BTreeMap::new(),
        }
    }

    /// Stores `betti` at `λ`, dropping zero vectors.
    pub fn insert(&mut self, degree: u64, lam: Element, betti: BettiVector) {
        if betti.is_zero() {
            self.entries.remove(&(degree, lam));
        } else {
            self.entries.insert((degree, lam), betti);
        }
    }

    /// Adds `betti` to the entry at `λ`.
    pub fn accumulate(&mut self, degree: u64, lam: Element, betti: &BettiVector) {
        if betti.is_zero() {
            return;
        }
        let slot = self.entries.entry((degree, lam)).or_default();
        *slot = slot.add(betti);
    }

    pub fn get(&self, degree: u64, lam: &Element) -> BettiVector {
        self.entries.get(&(degree, lam.clone())).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `(degree, λ, b)` in `(degree, λ)` order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &Element, &BettiVector)> {
        self.entries.iter().map(|((d, e), b)| (*d, e, b))
    }

    /// Keys where the two tables differ, in order.
    pub fn differences(&self, other: &PoincareTable) -> Vec<(u64, Element)> {
        let mut keys: Vec<&(u64, Element)> = self.entries.keys().chain(other.entries.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter(|k| self.entries.get(k) != other.entries.get(k))
            .cloned()
            .collect()
    }
}

pub fn table_from_records(
    monoid: &MonoidDescriptor,
    bound: u64,
    field: FieldChoice,
    records: &[BettiRecord],
) -> PoincareTable {
    let mut table = PoincareTable::new(monoid.clone(), bound, field);
    for r in records {
        table.insert(r.degree, r.element.clone(), r.betti.clone());
    }
    table
}

/// Betti vectors of every element of degree at most `bound`.
pub fn poincare_table(monoid: &Monoid, bound: u64, cfg: &BettiConfig) -> Result<PoincareTable> {
    let records = poincare_records(monoid, bound, cfg)?;
    Ok(table_from_records(monoid.descriptor(), bound, cfg.field, &records))
}

/// The product `T1 · T2` as a table of `Λ1 ⊕ Λ2` (vector-shaped factors),
/// truncated at `bound`.
pub fn dirsum_predicted_table(t1: &PoincareTable, t2: &PoincareTable, bound: u64) -> Result<PoincareTable> {
    if t1.field != t2.field {
        return Err(Error::InvalidArgument("tables over different fields".into()));
    }
    if t1.degree_bound < bound || t2.degree_bound < bound {
        return Err(Error::InvalidArgument(format!(
            "factor tables must reach degree {bound}"
        )));
    }
    let monoid = MonoidDescriptor::direct_sum(&t1.monoid, &t2.monoid)?;
    let mut out = PoincareTable::new(monoid, bound, t1.field);
    for (d1, e1, b1) in t1.iter() {
        for (d2, e2, b2) in t2.iter() {
            if d1 + d2 > bound {
                continue;
            }
            let (Some(v1), Some(v2)) = (e1.as_vector(), e2.as_vector()) else {
                return Err(Error::InvalidArgument("direct sums need vector-shaped factors".into()));
            };
            let mut v = v1.to_vec();
            v.extend_from_slice(v2);
            out.accumulate(d1 + d2, Element::Vector(v), &b1.convolve(b2));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldChoice = FieldChoice::Rationals;

    fn v(x: &[u64]) -> Element {
        Element::vector(x.to_vec())
    }

    #[test]
    fn frobenius_complexes_of_the_naturals() {
        let n = Monoid::free(1).unwrap();
        assert_eq!(
            frobenius_complex(&n, &v(&[0]), 100).unwrap(),
            FrobeniusComplex::FormalS2
        );
        match frobenius_complex(&n, &v(&[1]), 100).unwrap() {
            FrobeniusComplex::Complex(k) => assert!(k.is_empty()),
            other => panic!("{other:?}"),
        }
        let five = frobenius_complex(&n, &v(&[5]), 100).unwrap();
        assert!(five.reduced_betti(Q).is_zero());
    }

    #[test]
    fn routes_agree_on_two_three() {
        let m = Monoid::numerical(&[2, 3]).unwrap();
        for lam in m.elements_up_to(18).iter().skip(1) {
            let mut seen = Vec::new();
            for method in [Method::OrderComplex, Method::Core, Method::Resolution] {
                let cfg = BettiConfig {
                    method,
                    audit: true,
                    ..Default::default()
                };
                let r = betti_record(&m, lam, &cfg).unwrap();
                assert_ne!(r.boundary_ok, Some(false));
                assert_ne!(r.euler_ok, Some(false));
                seen.push(r.betti);
            }
            assert!(seen.windows(2).all(|w| w[0] == w[1]), "lambda = {lam}: {seen:?}");
        }
    }

    #[test]
    fn table_of_two_three() {
        let m = Monoid::numerical(&[2, 3]).unwrap();
        let t = poincare_table(&m, 9, &BettiConfig::default()).unwrap();
        let got: Vec<(u64, Vec<(usize, u64)>)> = t.iter().map(|(d, _, b)| (d, b.nonzero().collect())).collect();
        let expected = [(0, 0), (2, 1), (3, 1), (5, 2), (6, 2), (8, 3), (9, 3)];
        assert_eq!(got.len(), expected.len());
        for ((d, b), (ed, ei)) in got.iter().zip(expected) {
            assert_eq!((*d, b.as_slice()), (ed, &[(ei, 1)][..]));
        }
        let res = poincare_table(
            &m,
            9,
            &BettiConfig {
                method: Method::Resolution,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(res, t);
    }

    #[test]
    fn table_json_round_trip() {
        let m = Monoid::free(2).unwrap();
        let t = poincare_table(&m, 2, &BettiConfig::default()).unwrap();
        assert_eq!(t.len(), 4);
        let s = serde_json::to_string(&t).unwrap();
        let back: PoincareTable = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn dirsum_of_naturals() {
        let n = Monoid::free(1).unwrap();
        let t = poincare_table(&n, 3, &BettiConfig::default()).unwrap();
        let p = dirsum_predicted_table(&t, &t, 3).unwrap();
        assert_eq!(p.get(2, &v(&[1, 1])), BettiVector::delta(2));
        assert_eq!(p.len(), 4);
        let zero = MonoidDescriptor::submonoid(1, vec![]);
        let z = poincare_table(&Monoid::new(zero).unwrap(), 3, &BettiConfig::default()).unwrap();
        let q = dirsum_predicted_table(&t, &z, 3).unwrap();
        let pad: Vec<(u64, Element, BettiVector)> = t
            .iter()
            .map(|(d, e, b)| {
                let mut x = e.as_vector().unwrap().to_vec();
                x.push(0);
                (d, Element::Vector(x), b.clone())
            })
            .collect();
        let got: Vec<(u64, Element, BettiVector)> = q.iter().map(|(d, e, b)| (d, e.clone(), b.clone())).collect();
        assert_eq!(got, pad);
    }
}
