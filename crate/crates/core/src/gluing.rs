//! Predicted Betti vectors of glued monoids.
//!
//! For `Λ = (Λ1 ⊕ Λ2)/(ρ1 ~ ρ2)` and `λ ≠ 0`,
//! `F(λ) ≃ ⋁ S^{2ℓ-2} ⋄ F(λ1) ⋄ F(λ2)` over all `ℓρ + λ1 + λ2 = λ`, so
//! `b(λ) = Σ shift(b(λ1) ⋆ b(λ2), 2ℓ)`, and on series
//! `P_Λ = P_Λ1 · P_Λ2 / (1 - t² z^ρ)`.

use std::collections::HashMap;

use parking_lot::RwLock;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frobenius::{betti_record, poincare_table, BettiConfig, PoincareTable};
use crate::homology::BettiVector;
use crate::monoid::{Element, Monoid};
use crate::verify::{VerificationEntry, VerificationReport};

/// `ℓ·ρ + lam1 + lam2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Decomposition {
    pub ell: u64,
    pub lam1: Element,
    pub lam2: Element,
}

fn parts(g: &Monoid) -> Result<(&Monoid, &Monoid, &Element, &Element)> {
    match (g.left(), g.right(), g.rho1(), g.rho2()) {
        (Some(l), Some(r), Some(r1), Some(r2)) => Ok((l, r, r1, r2)),
        _ => Err(Error::InvalidArgument("expected a glued monoid".into())),
    }
}

/// Every `(ℓ, ℓ1ρ1 + hat1, ℓ2ρ2 + hat2)` with `ℓ + ℓ1 + ℓ2 = n`, where
/// `(n, hat1, hat2)` is the normal form of `λ`.
pub fn enumerate_decompositions(g: &Monoid, lam: &Element) -> Result<Vec<Decomposition>> {
    let (left, right, rho1, rho2) = parts(g)?;
    g.validate(lam)?;
    let Element::Glued { n, hat1, hat2 } = lam else {
        unreachable!("validated glued element");
    };
    let mut out = Vec::with_capacity(((n + 1) * (n + 2) / 2) as usize);
    for ell in 0..=*n {
        for l1 in 0..=(n - ell) {
            let l2 = n - ell - l1;
            out.push(Decomposition {
                ell,
                lam1: left.add(&left.scale(rho1, l1), hat1),
                lam2: right.add(&right.scale(rho2, l2), hat2),
            });
        }
    }
    Ok(out)
}

/// Predicts Betti vectors of a gluing from directly computed Betti
/// vectors of its factors, which are cached.
pub struct GluingPredictor<'g> {
    glued: &'g Monoid,
    cfg: BettiConfig,
    left: RwLock<HashMap<Element, BettiVector>>,
    right: RwLock<HashMap<Element, BettiVector>>,
}

impl<'g> GluingPredictor<'g> {
    pub fn new(glued: &'g Monoid, cfg: BettiConfig) -> Result<Self> {
        parts(glued)?;
        Ok(GluingPredictor {
            glued,
            cfg,
            left: RwLock::new(HashMap::new()),
            right: RwLock::new(HashMap::new()),
        })
    }

    fn factor(
        &self,
        monoid: &Monoid,
        cache: &RwLock<HashMap<Element, BettiVector>>,
        x: &Element,
    ) -> Result<BettiVector> {
        if let Some(b) = cache.read().get(x) {
            return Ok(b.clone());
        }
        let b = betti_record(monoid, x, &self.cfg)?.betti;
        cache.write().insert(x.clone(), b.clone());
        Ok(b)
    }

    pub fn predicted_betti(&self, lam: &Element) -> Result<BettiVector> {
        let (left, right, _, _) = parts(self.glued)?;
        let mut total = BettiVector::zero();
        for d in enumerate_decompositions(self.glued, lam)? {
            let b1 = self.factor(left, &self.left, &d.lam1)?;
            let b2 = self.factor(right, &self.right, &d.lam2)?;
            total = total.add(&b1.convolve(&b2).shift(2 * d.ell as usize));
        }
        Ok(total)
    }
}

pub fn predicted_betti(g: &Monoid, lam: &Element, cfg: &BettiConfig) -> Result<BettiVector> {
    GluingPredictor::new(g, *cfg)?.predicted_betti(lam)
}

/// The prediction at every element of degree at most `bound`.
pub fn predicted_table_pointwise(g: &Monoid, bound: u64, cfg: &BettiConfig) -> Result<PoincareTable> {
    let predictor = GluingPredictor::new(g, *cfg)?;
    let rows: Vec<(u64, Element, BettiVector)> = g
        .elements_up_to(bound)
        .par_iter()
        .map(|lam| Ok((g.degree(lam), lam.clone(), predictor.predicted_betti(lam)?)))
        .collect::<Result<_>>()?;
    let mut table = PoincareTable::new(g.descriptor().clone(), bound, cfg.field);
    for (d, lam, b) in rows {
        table.insert(d, lam, b);
    }
    Ok(table)
}

/// `P_Λ1 · P_Λ2 · Σ_ℓ t^{2ℓ} z^{ℓρ}`, truncated at `bound`.
pub fn predicted_poincare_table(g: &Monoid, bound: u64, cfg: &BettiConfig) -> Result<PoincareTable> {
    let (left, right, rho1, rho2) = parts(g)?;
    let w1 = left.degree(rho1);
    let w2 = right.degree(rho2);
    let rho_degree = w1 * w2;
    let t1 = poincare_table(left, bound / w2, cfg)?;
    let t2 = poincare_table(right, bound / w1, cfg)?;
    let rho = g.rho().expect("glued");
    let mut table = PoincareTable::new(g.descriptor().clone(), bound, cfg.field);
    for (d1, x1, b1) in t1.iter() {
        for (d2, x2, b2) in t2.iter() {
            let base = w2 * d1 + w1 * d2;
            if base > bound {
                continue;
            }
            let product = b1.convolve(b2);
            let mut at = g.normalize_pair(x1.clone(), x2.clone())?;
            let mut ell = 0u64;
            while base + ell * rho_degree <= bound {
                table.accumulate(base + ell * rho_degree, at.clone(), &product.shift(2 * ell as usize));
                at = g.add(&at, &rho);
                ell += 1;
            }
        }
    }
    Ok(table)
}

/// Direct against predicted Betti vectors for every element up to `bound`.
/// Failures to compute one element are recorded without stopping the rest.
pub fn verify_gluing(g: &Monoid, bound: u64, cfg: &BettiConfig) -> Result<VerificationReport> {
    let predictor = GluingPredictor::new(g, *cfg)?;
    let entries: Vec<VerificationEntry> = g
        .elements_up_to(bound)
        .par_iter()
        .map(|lam| {
            let degree = g.degree(lam);
            let direct = betti_record(g, lam, cfg);
            let predicted = predictor.predicted_betti(lam);
            match (direct, predicted) {
                (Ok(r), Ok(p)) => {
                    let mut e = VerificationEntry::compare(lam.clone(), degree, r.betti, p);
                    e.route = Some(r.route);
                    e
                }
                (Err(e), _) | (_, Err(e)) => VerificationEntry::failed(lam.clone(), degree, e.to_string()),
            }
        })
        .collect();
    Ok(VerificationReport::new("gluing", g, bound, cfg.field, entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::MonoidDescriptor;

    fn u(k: u64) -> Element {
        Element::vector(vec![k])
    }

    fn gm() -> Monoid {
        Monoid::glued(MonoidDescriptor::free(1), MonoidDescriptor::free(1), u(3), u(2)).unwrap()
    }

    /// All `(ℓ, λ1, λ2)` in a degree box with `ℓρ + λ1 + λ2 = λ`.
    fn brute_decompositions(g: &Monoid, lam: &Element) -> Vec<Decomposition> {
        let (left, right, rho1, rho2) = parts(g).unwrap();
        let (w1, w2) = (left.degree(rho1), right.degree(rho2));
        let d = g.degree(lam);
        let rho = g.rho().unwrap();
        let mut out = Vec::new();
        for ell in 0..=d / (w1 * w2) {
            for x1 in left.elements_up_to(d / w2) {
                for x2 in right.elements_up_to(d / w1) {
                    let sum = g.add(&g.scale(&rho, ell), &g.normalize_pair(x1.clone(), x2.clone()).unwrap());
                    if &sum == lam {
                        out.push(Decomposition {
                            ell,
                            lam1: x1.clone(),
                            lam2: x2,
                        });
                    }
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn decompositions_match_brute_force() {
        let g = gm();
        for lam in g.elements_up_to(24) {
            let mut ours = enumerate_decompositions(&g, &lam).unwrap();
            ours.sort();
            let Element::Glued { n, .. } = &lam else { panic!() };
            assert_eq!(ours.len() as u64, (n + 1) * (n + 2) / 2);
            assert_eq!(ours, brute_decompositions(&g, &lam), "lambda = {lam}");
        }
    }

    #[test]
    fn rho_has_three_decompositions() {
        let g = gm();
        let rho = g.rho().unwrap();
        let d = enumerate_decompositions(&g, &rho).unwrap();
        assert_eq!(d.len(), 3);
        assert!(d.contains(&Decomposition {
            ell: 1,
            lam1: u(0),
            lam2: u(0)
        }));
        assert!(d.contains(&Decomposition {
            ell: 0,
            lam1: u(3),
            lam2: u(0)
        }));
        assert!(d.contains(&Decomposition {
            ell: 0,
            lam1: u(0),
            lam2: u(2)
        }));
        let two_rho = g.add(&rho, &rho);
        assert_eq!(enumerate_decompositions(&g, &two_rho).unwrap().len(), 6);
    }

    #[test]
    fn predictions_for_gm() {
        let g = gm();
        let cfg = BettiConfig::default();
        let rho = g.rho().unwrap();
        assert_eq!(predicted_betti(&g, &rho, &cfg).unwrap(), BettiVector::delta(2));
        let two = Element::glued(0, u(1), u(0));
        assert_eq!(predicted_betti(&g, &two, &cfg).unwrap(), BettiVector::delta(1));
        let eight = Element::glued(1, u(1), u(0));
        assert_eq!(g.degree(&eight), 8);
        assert_eq!(predicted_betti(&g, &eight, &cfg).unwrap(), BettiVector::delta(3));
    }

    #[test]
    fn series_and_pointwise_tables_agree() {
        let g = gm();
        let cfg = BettiConfig::default();
        let a = predicted_poincare_table(&g, 20, &cfg).unwrap();
        let b = predicted_table_pointwise(&g, 20, &cfg).unwrap();
        assert_eq!(a, b);
        // below deg ρ only the factor product contributes
        let small = predicted_poincare_table(&g, 5, &cfg).unwrap();
        assert_eq!(small.iter().map(|(d, _, _)| d).collect::<Vec<_>>(), vec![0, 2, 3, 5]);
    }

    #[test]
    fn verify_small_bound() {
        let g = gm();
        let report = verify_gluing(&g, 0, &BettiConfig::default()).unwrap();
        assert_eq!(report.summary.total, 1);
        assert_eq!(report.exit_code(), 0);
        let report = verify_gluing(&g, 14, &BettiConfig::default()).unwrap();
        assert_eq!(report.summary.mismatched, 0);
        assert_eq!(report.summary.errors, 0);
    }
}
