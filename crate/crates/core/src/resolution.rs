//! Minimal multigraded free resolution of the residue field `K` over the
//! monoid algebra `K[Λ]`, restricted to a down-closed set of degrees.
//!
//! Every graded piece `K[Λ]_μ` is one-dimensional, so the differential of
//! a free module at degree `μ` is the coefficient matrix between the
//! generators whose degrees lie below `μ`.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::field::{kernel_basis, run_job, Arith, ArithResult, Echelon, FieldChoice, FieldJob};
use crate::homology::BettiVector;
use crate::monoid::{Element, Monoid};

struct Generator<E> {
    degree: usize,
    /// Coefficients on generators of the previous level.
    image: Vec<(usize, E)>,
}

struct Resolve<'a> {
    below: &'a [FixedBitSet],
    audit: bool,
}

struct Outcome {
    counts: Vec<Vec<u64>>,
    audit_passed: bool,
}

impl FieldJob for Resolve<'_> {
    type Output = Outcome;

    fn run<A: Arith>(&self, arith: &A) -> ArithResult<Outcome> {
        let n = self.below.len();
        let one = arith.from_i64(1);
        let mut levels: Vec<Vec<Generator<A::Elem>>> = vec![vec![Generator {
            degree: 0,
            image: Vec::new(),
        }]];
        let mut counts = vec![Vec::new(); n];
        if n > 0 {
            counts[0] = vec![1];
        }
        for mu in 1..n {
            let below = &self.below[mu];
            for i in 1.. {
                let prev: Vec<usize> = levels[i - 1]
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| below.contains(g.degree))
                    .map(|(k, _)| k)
                    .collect();
                if prev.is_empty() {
                    break;
                }
                let col_of = |k: usize| prev.binary_search(&k).expect("image lies below mu");
                let cycles: Vec<Vec<A::Elem>> = if i == 1 {
                    vec![vec![one.clone()]]
                } else {
                    let prev2: Vec<usize> = levels[i - 2]
                        .iter()
                        .enumerate()
                        .filter(|(_, g)| below.contains(g.degree))
                        .map(|(k, _)| k)
                        .collect();
                    // transpose: rows are level i-2 generators
                    let mut m = vec![vec![arith.zero(); prev.len()]; prev2.len()];
                    for (c, &k) in prev.iter().enumerate() {
                        for (q, coef) in &levels[i - 1][k].image {
                            let r = prev2.binary_search(q).expect("image lies below mu");
                            m[r][c] = coef.clone();
                        }
                    }
                    kernel_basis(arith, &m, prev.len())?
                };
                if levels.len() == i {
                    levels.push(Vec::new());
                }
                let mut span = Echelon::new();
                for g in levels[i].iter().filter(|g| below.contains(g.degree)) {
                    let mut row = vec![arith.zero(); prev.len()];
                    for (k, coef) in &g.image {
                        row[col_of(*k)] = coef.clone();
                    }
                    span.insert(arith, &row)?;
                }
                let mut fresh = 0u64;
                for z in cycles {
                    if span.insert(arith, &z)? {
                        let image = z
                            .iter()
                            .enumerate()
                            .filter(|(_, c)| !arith.is_zero(c))
                            .map(|(c, v)| (prev[c], v.clone()))
                            .collect();
                        levels[i].push(Generator { degree: mu, image });
                        fresh += 1;
                    }
                }
                if fresh > 0 {
                    let row = &mut counts[mu];
                    if row.len() <= i {
                        row.resize(i + 1, 0);
                    }
                    row[i] = fresh;
                }
            }
        }
        let mut audit_passed = true;
        if self.audit {
            // d∘d = 0: monomial factors compose, so only coefficients matter
            for i in 2..levels.len() {
                for g in &levels[i] {
                    let mut acc: Vec<A::Elem> = vec![arith.zero(); levels[i - 2].len()];
                    for (p, c) in &g.image {
                        for (q, e) in &levels[i - 1][*p].image {
                            let t = arith.mul(c, e)?;
                            acc[*q] = arith.sub_mul(&acc[*q], &arith.from_i64(-1), &t)?;
                        }
                    }
                    if acc.iter().any(|x| !arith.is_zero(x)) {
                        audit_passed = false;
                    }
                }
            }
        }
        Ok(Outcome { counts, audit_passed })
    }
}

/// Tor Betti vectors of `K` over `K[Λ]` for each element of `elements`.
///
/// `elements` must be closed under taking divisors and sorted by degree,
/// with zero first. With `audit`, also checks `d∘d = 0` and fails if not.
pub fn tor_betti(monoid: &Monoid, elements: &[Element], field: FieldChoice, audit: bool) -> Result<Vec<BettiVector>> {
    if elements.first().is_some_and(|z| !monoid.is_zero(z)) {
        return Err(Error::InvalidArgument("degree set must start at zero".into()));
    }
    let n = elements.len();
    let mut below = vec![FixedBitSet::with_capacity(n); n];
    for (j, row) in below.iter_mut().enumerate() {
        for i in 0..=j {
            if monoid.divides(&elements[i], &elements[j]) {
                row.insert(i);
            }
        }
    }
    let outcome = run_job(field, &Resolve { below: &below, audit });
    if !outcome.audit_passed {
        return Err(Error::InvalidArgument(
            "resolution differential does not square to zero".into(),
        ));
    }
    Ok(outcome.counts.into_iter().map(BettiVector::from_vec).collect())
}

/// Tor Betti vector at a single element, resolving over its down-set.
pub fn tor_betti_at(monoid: &Monoid, lam: &Element, field: FieldChoice, audit: bool) -> Result<BettiVector> {
    let down = monoid.down_set(lam);
    let mut all = tor_betti(monoid, &down, field, audit)?;
    Ok(all.pop().unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldChoice = FieldChoice::Rationals;

    #[test]
    fn polynomial_ring_in_one_variable() {
        let m = Monoid::free(1).unwrap();
        let elems = m.elements_up_to(4);
        let b = tor_betti(&m, &elems, Q, true).unwrap();
        assert_eq!(b[0], BettiVector::delta(0));
        assert_eq!(b[1], BettiVector::delta(1));
        assert!(b[2..].iter().all(BettiVector::is_zero));
    }

    #[test]
    fn koszul_complex_in_two_variables() {
        let m = Monoid::free(2).unwrap();
        let one_one = Element::vector(vec![1, 1]);
        assert_eq!(tor_betti_at(&m, &one_one, Q, true).unwrap(), BettiVector::delta(2));
        let two_one = Element::vector(vec![2, 1]);
        assert!(tor_betti_at(&m, &two_one, Q, true).unwrap().is_zero());
    }

    #[test]
    fn numerical_semigroup_two_three() {
        // the hypersurface K[t^2, t^3]: Tor is 1 + t z^2 + t z^3 over (1 - t^2 z^6)
        let m = Monoid::numerical(&[2, 3]).unwrap();
        let elems = m.elements_up_to(15);
        let b = tor_betti(&m, &elems, Q, true).unwrap();
        let got: Vec<(u64, Vec<(usize, u64)>)> = elems
            .iter()
            .zip(&b)
            .filter(|(_, v)| !v.is_zero())
            .map(|(e, v)| (m.degree(e), v.nonzero().collect()))
            .collect();
        let expected = vec![
            (0, vec![(0, 1)]),
            (2, vec![(1, 1)]),
            (3, vec![(1, 1)]),
            (5, vec![(2, 1)]),
            (6, vec![(2, 1)]),
            (8, vec![(3, 1)]),
            (9, vec![(3, 1)]),
            (11, vec![(4, 1)]),
            (12, vec![(4, 1)]),
            (14, vec![(5, 1)]),
            (15, vec![(5, 1)]),
        ];
        assert_eq!(got, expected);
    }

    #[test]
    fn prime_fields_work_too() {
        let m = Monoid::numerical(&[3, 4, 5]).unwrap();
        let lam = Element::vector(vec![12]);
        let q = tor_betti_at(&m, &lam, Q, true).unwrap();
        let f2 = tor_betti_at(&m, &lam, FieldChoice::PrimeField(2), true).unwrap();
        assert_eq!(q, f2);
    }
}
