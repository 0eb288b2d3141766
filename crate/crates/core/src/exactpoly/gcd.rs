//! Multivariate gcd over Q.
//!
//! The recursion removes monomial content and variables occurring in only
//! one argument and dehomogenizes homogeneous pairs. It then tries a
//! heuristic gcd checked by exact division, and falls back to a primitive
//! pseudo-remainder sequence in the common variable of least degree. Before that, a cheap probe specializes
//! all but one variable at random points: if every univariate image gcd is
//! constant the inputs are coprime. The probe can only prove coprimality,
//! never claim a common factor, so its randomness does not affect results.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::monomial::Monomial;
use super::poly::{Polynomial, Rational};
use crate::error::{Error, Result};

const PROBE_SEED: u64 = 0x05ee_d9cd;
const PROBE_ATTEMPTS: usize = 8;
const HEURISTIC_ATTEMPTS: usize = 6;

/// Greatest common divisor, normalized (primitive integer coefficients,
/// positive leading coefficient). Fails with `Domain` if both are zero.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    if a.ring() != b.ring() {
        return Err(Error::Ring(format!("{} vs {}", a.ring(), b.ring())));
    }
    match (a.is_zero(), b.is_zero()) {
        (true, true) => Err(Error::Domain("gcd(0, 0) is undefined".into())),
        (true, false) => Ok(b.normalized()),
        (false, true) => Ok(a.normalized()),
        (false, false) => Ok(gcd_nonzero(a, b).normalized()),
    }
}

/// Gcd of a list; zeros are skipped. Fails with `Domain` if every entry is
/// zero or the list is empty.
pub fn gcd_all<'a, I>(polys: I) -> Result<Polynomial>
where
    I: IntoIterator<Item = &'a Polynomial>,
{
    let mut acc: Option<Polynomial> = None;
    for p in polys {
        if p.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => p.normalized(),
            // The running gcd usually divides the next input already.
            Some(g) if p.is_divisible_by(&g) => g,
            Some(g) => gcd(&g, p)?,
        });
        if acc.as_ref().is_some_and(Polynomial::is_unit) {
            break;
        }
    }
    acc.ok_or_else(|| Error::Domain("gcd of zero polynomials is undefined".into()))
}

/// Least common multiple, normalized.
pub fn lcm(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Domain("lcm with zero is undefined".into()));
    }
    let g = gcd(a, b)?;
    Ok((a * b).exact_divide(&g)?.normalized())
}

fn gcd_nonzero(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let ring = a.ring();
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(ring);
    }
    let (ma, a) = split_monomial_content(a);
    let (mb, b) = split_monomial_content(b);
    let m = Polynomial::monomial(ring, ma.gcd(&mb), Rational::one());
    if a.is_constant() || b.is_constant() {
        return m;
    }

    let va = a.vars_present();
    let vb = b.vars_present();
    if let Some(&v) = va.iter().find(|v| !vb.contains(v)) {
        return &m * &gcd_with_coefficients(&b, &a, v);
    }
    if let Some(&v) = vb.iter().find(|v| !va.contains(v)) {
        return &m * &gcd_with_coefficients(&a, &b, v);
    }
    if probe_coprime(&a, &b, &va) {
        return m;
    }
    if va.len() >= 2 && a.is_homogeneous() && b.is_homogeneous() {
        return &m * &homogeneous_gcd(&a, &b, *va.last().expect("nonempty"));
    }
    if let Some(g) = heuristic_gcd(&a, &b, &va) {
        return &m * &g;
    }

    let v = *va
        .iter()
        .min_by_key(|&&v| (a.degree_in(v).max(b.degree_in(v)), v))
        .expect("nonconstant polynomial has a variable");
    let ca = content_in(&a, v);
    let cb = content_in(&b, v);
    let content = gcd_nonzero(&ca, &cb).normalized();
    let mut p = a.exact_divide(&ca).expect("content divides").normalized();
    let mut q = b.exact_divide(&cb).expect("content divides").normalized();
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() {
        let r = pseudo_remainder(&p, &q, v);
        p = q;
        q = if r.is_zero() { r } else { primitive_part_in(&r, v) };
    }
    &m * &(&content * &p.normalized())
}

/// Gcd of homogeneous inputs without monomial content: set `X_h = 1`,
/// take the gcd, and homogenize again. Neither input is divisible by
/// `X_h`, so the factorizations correspond.
fn homogeneous_gcd(a: &Polynomial, b: &Polynomial, h: usize) -> Polynomial {
    let one = [(h, Rational::one())];
    let g = gcd_nonzero(&a.specialize(&one), &b.specialize(&one));
    let d = g.degree();
    Polynomial::from_terms(
        a.ring(),
        g.terms().map(|(k, c)| (k.with_exp(h, d - k.total_degree()), c.clone())),
    )
}

/// Integer gcd of the coefficients of an integer polynomial.
fn integer_content(p: &Polynomial) -> BigInt {
    p.terms().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c.numer()))
}

fn max_norm(p: &Polynomial) -> BigInt {
    p.terms().map(|(_, c)| c.numer().abs()).max().unwrap_or_default()
}

/// Heuristic gcd by evaluation at a large integer `ξ` and `ξ`-adic
/// reconstruction, recursing down to univariate images. A candidate is
/// returned only if it divides both inputs exactly, which makes it the
/// gcd since `ξ` exceeds twice the smaller coefficient norm. `None` means
/// every attempt failed and the caller must fall back.
fn heuristic_gcd(a: &Polynomial, b: &Polynomial, vars: &[usize]) -> Option<Polynomial> {
    let (a, b) = (a.normalized(), b.normalized());
    heuristic_gcd_z(&a, &b, vars).map(|g| g.normalized())
}

/// Gcd over `Z` of integer polynomials.
fn heuristic_gcd_z(a: &Polynomial, b: &Polynomial, vars: &[usize]) -> Option<Polynomial> {
    let ring = a.ring();
    let content = Rational::from_integer(integer_content(a).gcd(&integer_content(b)));
    if a.is_constant() || b.is_constant() {
        return Some(Polynomial::constant(ring, content));
    }
    let (&v, rest) = vars.split_last()?;
    if rest.is_empty() {
        return Some(univariate_gcd(a.clone(), b.clone(), v).scale(&content));
    }
    let (pa, pb) = (a.normalized(), b.normalized());
    let mut xi: BigInt = BigInt::from(2) * max_norm(a).min(max_norm(b)) + 29u32;
    for _ in 0..HEURISTIC_ATTEMPTS {
        let x = [(v, Rational::from_integer(xi.clone()))];
        let (ea, eb) = (a.specialize(&x), b.specialize(&x));
        if !ea.is_zero() && !eb.is_zero() {
            let mut sub: Vec<usize> = ea.vars_present();
            sub.extend(eb.vars_present());
            sub.sort_unstable();
            sub.dedup();
            if let Some(gamma) = heuristic_gcd_z(&ea, &eb, &sub) {
                let g = xi_adic(gamma, &xi, v).normalized();
                if !g.is_zero() && pa.is_divisible_by(&g) && pb.is_divisible_by(&g) {
                    return Some(g.scale(&content));
                }
            }
        }
        xi = xi * 73794u32 / 27011u32;
    }
    None
}

/// Reads the coefficients of `v` off the balanced base-`ξ` digits.
fn xi_adic(mut e: Polynomial, xi: &BigInt, v: usize) -> Polynomial {
    let ring = e.ring().clone();
    let half = xi / 2;
    let inv = Rational::new(BigInt::one(), xi.clone());
    let mut digits = Vec::new();
    while !e.is_zero() {
        let digit = Polynomial::from_terms(
            &ring,
            e.terms().map(|(k, c)| {
                let mut r = c.numer().mod_floor(xi);
                if r > half {
                    r -= xi;
                }
                (k.clone(), Rational::from_integer(r))
            }),
        );
        e = (&e - &digit).scale(&inv);
        digits.push(digit);
    }
    Polynomial::from_coefficients_in(&ring, v, &digits)
}

/// `gcd(other, f)` where `v` occurs in `f` but not in `other`: the answer
/// divides every coefficient of `f` in `v`.
fn gcd_with_coefficients(other: &Polynomial, f: &Polynomial, v: usize) -> Polynomial {
    let mut g = other.clone();
    for c in f.coefficients_in(v).iter().rev().filter(|c| !c.is_zero()) {
        g = gcd_nonzero(&g, c).normalized();
        if g.is_unit() {
            break;
        }
    }
    g
}

fn content_in(p: &Polynomial, v: usize) -> Polynomial {
    let coeffs: Vec<Polynomial> = p.coefficients_in(v).into_iter().filter(|c| !c.is_zero()).collect();
    let mut g = coeffs[0].normalized();
    for c in &coeffs[1..] {
        if g.is_unit() {
            break;
        }
        g = gcd_nonzero(&g, c).normalized();
    }
    g
}

fn primitive_part_in(p: &Polynomial, v: usize) -> Polynomial {
    let c = content_in(p, v);
    p.exact_divide(&c).expect("content divides").normalized()
}

fn split_monomial_content(p: &Polynomial) -> (Monomial, Polynomial) {
    let mut terms = p.terms();
    let first = terms.next().expect("nonzero").0.clone();
    let m = terms.fold(first, |acc, (k, _)| acc.gcd(k));
    if m.is_one() {
        return (m, p.clone());
    }
    let rest = Polynomial::from_terms(
        p.ring(),
        p.terms().map(|(k, c)| (k.div(&m).expect("monomial content divides"), c.clone())),
    );
    (m, rest)
}

fn leading_coefficient_in(p: &Polynomial, v: usize) -> Polynomial {
    p.coefficients_in(v).pop().expect("nonempty")
}

/// Pseudo-remainder of `a` by `b` in variable `v`, scaled to stay small.
fn pseudo_remainder(a: &Polynomial, b: &Polynomial, v: usize) -> Polynomial {
    let db = b.degree_in(v);
    let lb = leading_coefficient_in(b, v);
    let nv = a.ring().len();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let s = r.degree_in(v) - db;
        let lr = leading_coefficient_in(&r, v);
        let shift = Polynomial::monomial(a.ring(), Monomial::one(nv).with_exp(v, s), Rational::one());
        r = &(&lb * &r) - &(&(&lr * &shift) * b);
        r = r.normalized();
    }
    r
}

/// Sound coprimality test by univariate images. Returns `true` only when
/// the gcd is provably constant.
fn probe_coprime(a: &Polynomial, b: &Polynomial, vars: &[usize]) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED);
    vars.iter().all(|&v| image_gcd_is_constant(a, b, v, vars, &mut rng))
}

fn image_gcd_is_constant(
    a: &Polynomial,
    b: &Polynomial,
    v: usize,
    vars: &[usize],
    rng: &mut ChaCha8Rng,
) -> bool {
    let la = leading_coefficient_in(a, v);
    let lb = leading_coefficient_in(b, v);
    for _ in 0..PROBE_ATTEMPTS {
        let point: Vec<(usize, Rational)> = vars
            .iter()
            .filter(|&&w| w != v)
            .map(|&w| (w, Rational::from_integer(rng.gen_range(-97i64..=97).into())))
            .collect();
        if la.specialize(&point).is_zero() || lb.specialize(&point).is_zero() {
            continue;
        }
        let g = univariate_gcd(a.specialize(&point), b.specialize(&point), v);
        return g.degree_in(v) == 0;
    }
    false
}

fn univariate_gcd(mut a: Polynomial, mut b: Polynomial, v: usize) -> Polynomial {
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    let nv = a.ring().len();
    while !b.is_zero() {
        let db = b.degree_in(v);
        let lb = b.leading_coefficient();
        while !a.is_zero() && a.degree_in(v) >= db {
            let s = a.degree_in(v) - db;
            let c = a.leading_coefficient() / &lb;
            a = &a - &b.mul_monomial(&Monomial::one(nv).with_exp(v, s), &c);
        }
        std::mem::swap(&mut a, &mut b);
        if !b.is_zero() {
            b = b.normalized();
        }
    }
    if a.leading_coefficient().is_zero() {
        a
    } else {
        a.normalized()
    }
}

impl Polynomial {
    /// Convenience wrapper for [`gcd`].
    pub fn gcd(&self, other: &Polynomial) -> Result<Polynomial> {
        gcd(self, other)
    }

    /// True if the gcd with `other` is a nonzero constant.
    pub fn is_coprime_to(&self, other: &Polynomial) -> Result<bool> {
        Ok(gcd(self, other)?.is_unit())
    }
}
