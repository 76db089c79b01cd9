//! Coefficient fields and exact elimination.
//!
//! Rank and kernel computations run generically over an [`Arith`]
//! implementation. Rational arithmetic is first attempted with checked
//! `i128` fractions and transparently redone with big integers if any
//! intermediate value overflows, so results are always exact.

use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The coefficient field used for homology and Tor computations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldChoice {
    #[default]
    Rationals,
    PrimeField(u64),
}

impl FieldChoice {
    /// `GF(p)`; rejects non-primes and primes too large for `u64` products.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not a prime")));
        }
        if p >= 1 << 32 {
            return Err(Error::InvalidArgument(format!(
                "prime {p} too large (must be below 2^32)"
            )));
        }
        Ok(FieldChoice::PrimeField(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldChoice::Rationals => 0,
            FieldChoice::PrimeField(p) => *p,
        }
    }
}

impl fmt::Display for FieldChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldChoice::Rationals => write!(f, "QQ"),
            FieldChoice::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

impl std::str::FromStr for FieldChoice {
    type Err = Error;

    /// Accepts `QQ`, `GF(p)` or a bare prime `p`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("qq") || t.eq_ignore_ascii_case("q") {
            return Ok(FieldChoice::Rationals);
        }
        let digits = t.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')).unwrap_or(t);
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("unknown field {s:?}")))?;
        FieldChoice::prime(p)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Overflow;

pub(crate) type ArithResult<T> = std::result::Result<T, Overflow>;

pub(crate) trait Arith {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// `a - f * b`
    fn sub_mul(&self, a: &Self::Elem, f: &Self::Elem, b: &Self::Elem) -> ArithResult<Self::Elem>;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> ArithResult<Self::Elem>;
    /// Multiplicative inverse of a nonzero element.
    fn inv(&self, a: &Self::Elem) -> ArithResult<Self::Elem>;

    fn zero(&self) -> Self::Elem {
        self.from_i64(0)
    }
}

pub(crate) struct PrimeArith {
    p: u64,
}

impl Arith for PrimeArith {
    type Elem = u64;

    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn sub_mul(&self, a: &u64, f: &u64, b: &u64) -> ArithResult<u64> {
        let fb = (f * b) % self.p;
        Ok((a + self.p - fb) % self.p)
    }

    fn mul(&self, a: &u64, b: &u64) -> ArithResult<u64> {
        Ok((a * b) % self.p)
    }

    fn inv(&self, a: &u64) -> ArithResult<u64> {
        // Fermat: a^(p-2)
        let (mut base, mut exp, mut acc) = (*a % self.p, self.p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        Ok(acc)
    }
}

pub(crate) struct SmallRationals;

impl Arith for SmallRationals {
    type Elem = Ratio<i128>;

    fn from_i64(&self, v: i64) -> Ratio<i128> {
        Ratio::from_integer(v as i128)
    }

    fn is_zero(&self, a: &Ratio<i128>) -> bool {
        a.is_zero()
    }

    fn sub_mul(&self, a: &Ratio<i128>, f: &Ratio<i128>, b: &Ratio<i128>) -> ArithResult<Ratio<i128>> {
        let fb = f.checked_mul(b).ok_or(Overflow)?;
        a.checked_sub(&fb).ok_or(Overflow)
    }

    fn mul(&self, a: &Ratio<i128>, b: &Ratio<i128>) -> ArithResult<Ratio<i128>> {
        a.checked_mul(b).ok_or(Overflow)
    }

    fn inv(&self, a: &Ratio<i128>) -> ArithResult<Ratio<i128>> {
        if a.numer().abs() == i128::MAX || *a.numer() == i128::MIN {
            return Err(Overflow);
        }
        Ratio::one().checked_div(a).ok_or(Overflow)
    }
}

pub(crate) struct BigRationals;

impl Arith for BigRationals {
    type Elem = BigRational;

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn sub_mul(&self, a: &BigRational, f: &BigRational, b: &BigRational) -> ArithResult<BigRational> {
        Ok(a - f * b)
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> ArithResult<BigRational> {
        Ok(a * b)
    }

    fn inv(&self, a: &BigRational) -> ArithResult<BigRational> {
        Ok(a.recip())
    }
}

/// A computation that can run over any [`Arith`].
pub(crate) trait FieldJob {
    type Output;
    fn run<A: Arith>(&self, arith: &A) -> ArithResult<Self::Output>;
}

/// Runs `job` over the chosen field. Over the rationals an `i128`
/// overflow restarts the job with big-integer fractions.
pub(crate) fn run_job<J: FieldJob>(field: FieldChoice, job: &J) -> J::Output {
    match field {
        FieldChoice::PrimeField(p) => job
            .run(&PrimeArith { p })
            .expect("prime field arithmetic cannot overflow"),
        FieldChoice::Rationals => match job.run(&SmallRationals) {
            Ok(out) => out,
            Err(Overflow) => job.run(&BigRationals).expect("big rational arithmetic cannot overflow"),
        },
    }
}

type SparseVec<E> = Vec<(u32, E)>;

/// `row -= f * pivot` on sorted sparse vectors.
fn sparse_axpy<A: Arith>(
    arith: &A,
    row: &SparseVec<A::Elem>,
    f: &A::Elem,
    pivot: &SparseVec<A::Elem>,
) -> ArithResult<SparseVec<A::Elem>> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    let zero = arith.zero();
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map(|e| e.0).unwrap_or(u32::MAX);
        let cj = pivot.get(j).map(|e| e.0).unwrap_or(u32::MAX);
        if ci < cj {
            out.push(row[i].clone());
            i += 1;
        } else if cj < ci {
            let v = arith.sub_mul(&zero, f, &pivot[j].1)?;
            if !arith.is_zero(&v) {
                out.push((cj, v));
            }
            j += 1;
        } else {
            let v = arith.sub_mul(&row[i].1, f, &pivot[j].1)?;
            if !arith.is_zero(&v) {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(out)
}

/// Rank of a sparse integer matrix given as rows of `(column, value)`.
pub(crate) struct SparseRank<'a> {
    pub rows: &'a [Vec<(u32, i64)>],
    pub ncols: usize,
}

impl FieldJob for SparseRank<'_> {
    type Output = usize;

    fn run<A: Arith>(&self, arith: &A) -> ArithResult<usize> {
        let mut pivots: Vec<Option<SparseVec<A::Elem>>> = vec![None; self.ncols];
        let mut rank = 0;
        for input in self.rows {
            let mut row: SparseVec<A::Elem> = input
                .iter()
                .filter(|(_, v)| *v != 0)
                .map(|&(c, v)| (c, arith.from_i64(v)))
                .collect();
            row.sort_by_key(|e| e.0);
            row.retain(|(_, v)| !arith.is_zero(v));
            while let Some((lead, coef)) = row.first().cloned() {
                match &pivots[lead as usize] {
                    Some(p) => row = sparse_axpy(arith, &row, &coef, p)?,
                    None => {
                        let inv = arith.inv(&coef)?;
                        let mut normalized = Vec::with_capacity(row.len());
                        for (c, v) in &row {
                            normalized.push((*c, arith.mul(v, &inv)?));
                        }
                        pivots[lead as usize] = Some(normalized);
                        rank += 1;
                        break;
                    }
                }
            }
        }
        Ok(rank)
    }
}

/// Exact rank of a sparse integer matrix over `field`.
pub fn sparse_rank(field: FieldChoice, rows: &[Vec<(u32, i64)>], ncols: usize) -> usize {
    run_job(field, &SparseRank { rows, ncols })
}

/// Incrementally built row-echelon basis of a subspace of `K^n`.
pub(crate) struct Echelon<E> {
    rows: Vec<(usize, Vec<E>)>,
}

impl<E: Clone + PartialEq + fmt::Debug> Echelon<E> {
    pub fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    #[cfg(test)]
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; returns the residue.
    pub fn reduce<A: Arith<Elem = E>>(&self, arith: &A, v: &[E]) -> ArithResult<Vec<E>> {
        let mut v = v.to_vec();
        for (pc, row) in &self.rows {
            if arith.is_zero(&v[*pc]) {
                continue;
            }
            let f = v[*pc].clone();
            for (k, r) in row.iter().enumerate() {
                if !arith.is_zero(r) {
                    v[k] = arith.sub_mul(&v[k], &f, r)?;
                }
            }
        }
        Ok(v)
    }

    /// Adds `v` to the basis; returns `false` if it was already in the span.
    pub fn insert<A: Arith<Elem = E>>(&mut self, arith: &A, v: &[E]) -> ArithResult<bool> {
        let v = self.reduce(arith, v)?;
        let Some(pc) = v.iter().position(|x| !arith.is_zero(x)) else {
            return Ok(false);
        };
        let inv = arith.inv(&v[pc])?;
        let mut row = Vec::with_capacity(v.len());
        for x in &v {
            row.push(arith.mul(x, &inv)?);
        }
        // keep existing rows reduced at the new pivot column
        for (_, other) in &mut self.rows {
            if !arith.is_zero(&other[pc]) {
                let f = other[pc].clone();
                for (k, r) in row.iter().enumerate() {
                    other[k] = arith.sub_mul(&other[k], &f, r)?;
                }
            }
        }
        self.rows.push((pc, row));
        Ok(true)
    }
}

/// Basis of the kernel of a dense `rows x cols` matrix.
pub(crate) fn kernel_basis<A: Arith>(
    arith: &A,
    matrix: &[Vec<A::Elem>],
    cols: usize,
) -> ArithResult<Vec<Vec<A::Elem>>> {
    let mut m: Vec<Vec<A::Elem>> = matrix.to_vec();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !arith.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = arith.inv(&m[r][c])?;
        for k in 0..cols {
            m[r][k] = arith.mul(&m[r][k], &inv)?;
        }
        for i in 0..m.len() {
            if i != r && !arith.is_zero(&m[i][c]) {
                let f = m[i][c].clone();
                for k in 0..cols {
                    let updated = arith.sub_mul(&m[i][k], &f, &m[r][k])?;
                    m[i][k] = updated;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let zero = arith.zero();
    let one = arith.from_i64(1);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![zero.clone(); cols];
        v[free] = one.clone();
        for (row, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = arith.sub_mul(&zero, &m[row][free], &one)?;
        }
        basis.push(v);
    }
    Ok(basis)
}
