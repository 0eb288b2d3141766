//! Integer polynomial kernel for fraction-free elimination.
//!
//! Monomials are packed into a `u64`: the total degree in the top byte,
//! then one byte per variable starting with the first. Integer order on the
//! packed keys is then graded-lex order. Coefficients are `BigInt`, which
//! avoids the gcd normalization every rational operation pays for. Rows of
//! a rational matrix are scaled to integers on the way in.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactpoly::{Monomial, Polynomial, Rational, Ring};

const MAX_VARS: usize = 7;
const FIELD: u32 = 8;
const FIELD_MAX: u32 = 0xff;

/// Largest degree bound the kernel accepts; products inside an
/// elimination step reach twice the bound, which must fit a byte.
pub const MAX_BOUND: u32 = 127;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IPoly {
    /// Descending by key; no zero coefficients.
    terms: Vec<(u64, BigInt)>,
}

fn shift(var: usize) -> u32 {
    FIELD * (6 - var as u32)
}

fn pack(m: &Monomial) -> Option<u64> {
    if m.nvars() > MAX_VARS || m.total_degree() > FIELD_MAX {
        return None;
    }
    let mut key = u64::from(m.total_degree()) << (FIELD * 7);
    for (i, &e) in m.exps().iter().enumerate() {
        key |= u64::from(e) << shift(i);
    }
    Some(key)
}

fn unpack(key: u64, nvars: usize) -> Monomial {
    Monomial::new((0..nvars).map(|i| ((key >> shift(i)) & u64::from(FIELD_MAX)) as u32).collect())
}

fn divides(d: u64, n: u64) -> bool {
    (0..8).all(|f| {
        let s = FIELD * f;
        (d >> s) & 0xff <= (n >> s) & 0xff
    })
}

impl IPoly {
    fn zero() -> Self {
        IPoly { terms: Vec::new() }
    }

    fn one() -> Self {
        IPoly { terms: vec![(0, BigInt::one())] }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn len(&self) -> usize {
        self.terms.len()
    }

    /// `a*b - c*d`.
    fn cross(a: &IPoly, b: &IPoly, c: &IPoly, d: &IPoly) -> IPoly {
        let mut acc: HashMap<u64, BigInt> = HashMap::with_capacity(a.len() * b.len() + c.len() * d.len());
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                *acc.entry(ka + kb).or_default() += ca * cb;
            }
        }
        for (kc, cc) in &c.terms {
            for (kd, cd) in &d.terms {
                *acc.entry(kc + kd).or_default() -= cc * cd;
            }
        }
        let mut terms: Vec<(u64, BigInt)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
        IPoly { terms }
    }

    fn neg(&self) -> IPoly {
        IPoly { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }

    /// Exact quotient; `None` if `div` does not divide `self` over Z.
    fn exact_div(&self, div: &IPoly) -> Option<IPoly> {
        let (&(lk, ref lc), rest) = div.terms.split_first()?;
        if rest.is_empty() && lk == 0 {
            let mut terms = Vec::with_capacity(self.len());
            for (k, c) in &self.terms {
                let (q, r) = c.div_rem(lc);
                if !r.is_zero() {
                    return None;
                }
                terms.push((*k, q));
            }
            return Some(IPoly { terms });
        }
        let mut rem: BTreeMap<u64, BigInt> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((&k, c)) = rem.iter().next_back() {
            if !divides(lk, k) {
                return None;
            }
            let (q, r) = c.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            let qk = k - lk;
            rem.remove(&k);
            for (dk, dc) in rest {
                let key = qk + dk;
                let entry = rem.entry(key).or_default();
                *entry -= &q * dc;
                if entry.is_zero() {
                    rem.remove(&key);
                }
            }
            quot.push((qk, q));
        }
        Some(IPoly { terms: quot })
    }

    fn evaluate(&self, point: &[BigInt], nvars: usize) -> BigInt {
        let mut sum = BigInt::zero();
        for (k, c) in &self.terms {
            let mut v = c.clone();
            for (i, x) in point.iter().enumerate().take(nvars) {
                let e = ((k >> shift(i)) & 0xff) as u32;
                if e > 0 {
                    v *= x.pow(e);
                }
            }
            sum += v;
        }
        sum
    }

    fn to_poly(&self, ring: &Ring, scale: &Rational) -> Polynomial {
        Polynomial::from_terms(
            ring,
            self.terms.iter().map(|(k, c)| (unpack(*k, ring.len()), Rational::from_integer(c.clone()) * scale)),
        )
    }
}

/// A matrix of integer polynomials with the scale applied to each row.
pub(crate) struct IntMatrix {
    pub rows: Vec<Vec<IPoly>>,
    pub row_scales: Vec<BigInt>,
}

/// Scales each row to integer coefficients and packs it. Returns `None`
/// when the ring or the degree bound is out of the kernel's range.
pub(crate) fn to_int_rows(rows: &[&[Polynomial]], ring: &Ring) -> Option<IntMatrix> {
    if ring.len() > MAX_VARS {
        return None;
    }
    let bound: u32 = rows.iter().map(|r| r.iter().map(Polynomial::degree).max().unwrap_or(0)).sum();
    if bound > MAX_BOUND {
        return None;
    }
    let mut out = Vec::with_capacity(rows.len());
    let mut scales = Vec::with_capacity(rows.len());
    for row in rows {
        let mut l = BigInt::one();
        for e in row.iter() {
            for (_, c) in e.terms() {
                l = l.lcm(c.denom());
            }
        }
        let mut packed = Vec::with_capacity(row.len());
        for e in row.iter() {
            let mut terms = Vec::with_capacity(e.num_terms());
            for (m, c) in e.terms().rev() {
                let v = c.numer() * (&l / c.denom());
                terms.push((pack(m)?, v));
            }
            packed.push(IPoly { terms });
        }
        out.push(packed);
        scales.push(l);
    }
    Some(IntMatrix { rows: out, row_scales: scales })
}

/// Bareiss determinant of a square integer matrix. Pivot: fewest terms,
/// then smallest row index.
pub(crate) fn det(mut a: Vec<Vec<IPoly>>) -> Option<IPoly> {
    let n = a.len();
    if n == 0 {
        return Some(IPoly::one());
    }
    let mut prev = IPoly::one();
    let mut negate = false;
    for k in 0..n - 1 {
        let pivot = (k..n).filter(|&i| !a[i][k].is_zero()).min_by_key(|&i| (a[i][k].len(), i));
        let Some(p) = pivot else {
            return Some(IPoly::zero());
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        let (head, tail) = a.split_at_mut(k + 1);
        let pr = &head[k];
        for row in tail.iter_mut() {
            for j in k + 1..n {
                row[j] = IPoly::cross(&row[j], &pr[k], &row[k], &pr[j]).exact_div(&prev)?;
            }
            row[k] = IPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Some(if negate { d.neg() } else { d })
}

/// Kernel generator of an `r x (r+1)` integer matrix of rank `r`, by
/// fraction-free Gauss–Jordan elimination. Entry `j` of the result is, up to
/// one global sign, the `r x r` minor omitting column `j`. Returns an empty
/// vector when the rank is below `r`, and `None` on an inexact division,
/// which would indicate a bug.
pub(crate) fn kernel(mut a: Vec<Vec<IPoly>>) -> Option<Vec<IPoly>> {
    let r = a.len();
    let c = r + 1;
    let mut prev = IPoly::one();
    let mut pivot_cols: Vec<usize> = Vec::with_capacity(r);
    for k in 0..r {
        let mut best: Option<(usize, usize, usize)> = None;
        for j in (0..c).filter(|j| !pivot_cols.contains(j)) {
            for (i, row) in a.iter().enumerate().skip(k) {
                if !row[j].is_zero() {
                    let cand = (row[j].len(), j, i);
                    if best.as_ref().is_none_or(|b| cand < *b) {
                        best = Some(cand);
                    }
                }
            }
        }
        let Some((_, pc, pr)) = best else {
            return Some(Vec::new());
        };
        a.swap(pr, k);
        pivot_cols.push(pc);
        let pivot_row = a[k].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let factor = row[pc].clone();
            for j in 0..c {
                if j == pc {
                    continue;
                }
                row[j] = IPoly::cross(&pivot_row[pc], &row[j], &factor, &pivot_row[j]).exact_div(&prev)?;
            }
            row[pc] = IPoly::zero();
        }
        prev = pivot_row[pc].clone();
    }
    let free = (0..c).find(|j| !pivot_cols.contains(j)).expect("one free column");
    let mut v = vec![IPoly::zero(); c];
    v[free] = prev;
    for (k, &pc) in pivot_cols.iter().enumerate() {
        v[pc] = a[k][free].neg();
    }
    Some(v)
}

/// Rational determinant of a scalar matrix by Gaussian elimination.
pub(crate) fn scalar_det(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut det = Rational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let pivot = a[k][k].clone();
        det *= &pivot;
        let pivot_row = a[k].clone();
        for row in a.iter_mut().skip(k + 1) {
            if row[k].is_zero() {
                continue;
            }
            let f = &row[k] / &pivot;
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(k) {
                *x -= &f * y;
            }
        }
    }
    det
}

pub(crate) fn to_polys(v: &[IPoly], ring: &Ring, scales: &[Rational]) -> Vec<Polynomial> {
    v.iter().zip(scales).map(|(p, s)| p.to_poly(ring, s)).collect()
}

pub(crate) fn to_poly(p: &IPoly, ring: &Ring, scale: &Rational) -> Polynomial {
    p.to_poly(ring, scale)
}

pub(crate) fn evaluate(p: &IPoly, point: &[BigInt], nvars: usize) -> BigInt {
    p.evaluate(point, nvars)
}
