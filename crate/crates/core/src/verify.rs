//! Verification reports comparing directly computed Betti vectors with
//! predictions, plus the direct-sum and composition-poset checks.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::composition::{CompositionLimits, CompositionRoute, Compositions};
use crate::error::Result;
use crate::field::FieldChoice;
use crate::frobenius::{betti_record, dirsum_predicted_table, poincare_table, BettiConfig, Route};
use crate::homology::BettiVector;
use crate::monoid::{Element, Monoid, MonoidDescriptor};
use crate::poset::PosetExport;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationEntry {
    pub element: Element,
    pub degree: u64,
    pub direct: Option<BettiVector>,
    pub predicted: Option<BettiVector>,
    pub route: Option<Route>,
    pub matched: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl VerificationEntry {
    pub fn compare(element: Element, degree: u64, direct: BettiVector, predicted: BettiVector) -> Self {
        VerificationEntry {
            matched: direct == predicted,
            element,
            degree,
            direct: Some(direct),
            predicted: Some(predicted),
            route: None,
            note: None,
            error: None,
        }
    }

    pub fn failed(element: Element, degree: u64, error: String) -> Self {
        VerificationEntry {
            element,
            degree,
            direct: None,
            predicted: None,
            route: None,
            matched: false,
            note: None,
            error: Some(error),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub matched: usize,
    pub mismatched: usize,
    pub errors: usize,
}

/// The smallest failing element with its interval poset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MismatchDetail {
    pub element: Element,
    pub degree: u64,
    pub direct: BettiVector,
    pub predicted: BettiVector,
    pub interval: PosetExport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub monoid: MonoidDescriptor,
    pub degree_bound: u64,
    pub field: String,
    pub entries: Vec<VerificationEntry>,
    pub summary: Summary,
    pub first_mismatch: Option<MismatchDetail>,
}

impl VerificationReport {
    /// Assembles a report; `monoid` supplies the interval of the first
    /// mismatch.
    pub fn new(
        check: &str,
        monoid: &Monoid,
        degree_bound: u64,
        field: FieldChoice,
        entries: Vec<VerificationEntry>,
    ) -> Self {
        let mut summary = Summary {
            total: entries.len(),
            ..Default::default()
        };
        for e in &entries {
            if e.error.is_some() {
                summary.errors += 1;
            } else if e.matched {
                summary.matched += 1;
            } else {
                summary.mismatched += 1;
            }
        }
        let first_mismatch = entries
            .iter()
            .find(|e| e.error.is_none() && !e.matched)
            .map(|e| MismatchDetail {
                element: e.element.clone(),
                degree: e.degree,
                direct: e.direct.clone().unwrap_or_default(),
                predicted: e.predicted.clone().unwrap_or_default(),
                interval: if monoid.is_zero(&e.element) {
                    PosetExport::default()
                } else {
                    monoid.open_interval(&e.element).export()
                },
            });
        VerificationReport {
            check: check.to_string(),
            monoid: monoid.descriptor().clone(),
            degree_bound,
            field: field.to_string(),
            entries,
            summary,
            first_mismatch,
        }
    }

    /// `0` when everything matched, `1` on any mismatch, `2` when some
    /// element could not be computed.
    pub fn exit_code(&self) -> i32 {
        if self.summary.mismatched > 0 {
            1
        } else if self.summary.errors > 0 {
            2
        } else {
            0
        }
    }

    pub fn all_matched(&self) -> bool {
        self.exit_code() == 0
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "check: {}", self.check);
        let _ = writeln!(s, "degree bound: {}", self.degree_bound);
        let _ = writeln!(s, "field: {}", self.field);
        for e in &self.entries {
            let status = if e.error.is_some() {
                "ERROR"
            } else if e.matched {
                "ok"
            } else {
                "MISMATCH"
            };
            let show = |b: &Option<BettiVector>| b.as_ref().map_or("-".to_string(), |b| b.to_string());
            let _ = write!(
                s,
                "{:>4}  {:<16} {:<8} direct {} predicted {}",
                e.degree,
                e.element.to_string(),
                status,
                show(&e.direct),
                show(&e.predicted)
            );
            if let Some(n) = &e.note {
                let _ = write!(s, "  ({n})");
            }
            if let Some(err) = &e.error {
                let _ = write!(s, "  {err}");
            }
            s.push('\n');
        }
        let m = &self.summary;
        let _ = writeln!(
            s,
            "total {}  matched {}  mismatched {}  errors {}",
            m.total, m.matched, m.mismatched, m.errors
        );
        if let Some(d) = &self.first_mismatch {
            let _ = writeln!(s, "first mismatch at {} (degree {})", d.element, d.degree);
            let _ = writeln!(s, "  direct    {}", d.direct);
            let _ = writeln!(s, "  predicted {}", d.predicted);
            let _ = writeln!(s, "  interval elements: {}", d.interval.elements.join(" "));
            let covers: Vec<String> = d.interval.covers.iter().map(|(a, b)| format!("{a}<{b}")).collect();
            let _ = writeln!(s, "  interval covers: {}", covers.join(" "));
        }
        s
    }
}

/// Direct table of `Λ1 ⊕ Λ2` against the product of the factor tables.
pub fn verify_dirsum(
    first: &MonoidDescriptor,
    second: &MonoidDescriptor,
    bound: u64,
    cfg: &BettiConfig,
) -> Result<VerificationReport> {
    let m1 = Monoid::new(first.clone())?;
    let m2 = Monoid::new(second.clone())?;
    let sum = Monoid::new(MonoidDescriptor::direct_sum(first, second)?)?;
    let t1 = poincare_table(&m1, bound, cfg)?;
    let t2 = poincare_table(&m2, bound, cfg)?;
    let predicted = dirsum_predicted_table(&t1, &t2, bound)?;
    let entries: Vec<VerificationEntry> = sum
        .elements_up_to(bound)
        .par_iter()
        .map(|lam| {
            let degree = sum.degree(lam);
            match betti_record(&sum, lam, cfg) {
                Ok(r) => {
                    let mut e = VerificationEntry::compare(lam.clone(), degree, r.betti, predicted.get(degree, lam));
                    e.route = Some(r.route);
                    e
                }
                Err(err) => VerificationEntry::failed(lam.clone(), degree, err.to_string()),
            }
        })
        .collect();
    Ok(VerificationReport::new("direct sum", &sum, bound, cfg.field, entries))
}

/// For each nonzero `λ`: homology of `Δ(C(λ))` against `b(λ)`, and
/// `|C(λ)|` against the simplex count of `F(λ)`.
pub fn verify_compositions(
    monoid: &Monoid,
    bound: u64,
    cfg: &BettiConfig,
    limits: CompositionLimits,
) -> VerificationReport {
    let entries: Vec<VerificationEntry> = monoid
        .elements_up_to(bound)
        .into_iter()
        .skip(1)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|lam| {
            let degree = monoid.degree(lam);
            let run = || -> Result<VerificationEntry> {
                let direct = betti_record(monoid, lam, cfg)?;
                let comps = Compositions::new(monoid, lam)?;
                let (betti, route) = comps.betti(cfg.field, limits, cfg.simplex_cap)?;
                let count = comps.len();
                let mut e = VerificationEntry::compare(lam.clone(), degree, direct.betti, betti);
                e.matched &= count == direct.simplices;
                e.route = Some(direct.route);
                let via = match route {
                    CompositionRoute::OrderComplex => "order complex",
                    CompositionRoute::Cellular => "cells",
                };
                e.note = Some(format!(
                    "|C| = {count}, simplices of F = {}, compositions via {via}",
                    direct.simplices
                ));
                Ok(e)
            };
            run().unwrap_or_else(|err| VerificationEntry::failed(lam.clone(), degree, err.to_string()))
        })
        .collect();
    VerificationReport::new("composition poset", monoid, bound, cfg.field, entries)
}
