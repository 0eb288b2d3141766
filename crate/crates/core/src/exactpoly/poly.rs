use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::ring::Ring;
use crate::error::{Error, Result};

/// Exact rational scalar. Always reduced with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are kept in a map ordered by graded-lex, so the last entry is the
/// leading term. Zero coefficients are never stored, which makes structural
/// equality coincide with polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        Self::monomial(ring, Monomial::one(ring.len()), c)
    }

    pub fn from_int(ring: &Ring, c: i64) -> Self {
        Self::constant(ring, rat(c))
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Rational) -> Self {
        debug_assert_eq!(m.nvars(), ring.len());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn var(ring: &Ring, name: &str) -> Result<Self> {
        let idx = ring
            .index_of(name)
            .ok_or_else(|| Error::Ring(format!("variable {name} not in {ring}")))?;
        Ok(Self::var_at(ring, idx))
    }

    pub fn var_at(ring: &Ring, index: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.len(), index), Rational::one())
    }

    pub fn from_terms<I>(ring: &Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Polynomial::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// A nonzero constant.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, Monomial::total_degree)
    }

    pub fn degree_in(&self, index: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(index)).max().unwrap_or(0)
    }

    /// Degree in the given subset of variables.
    pub fn degree_in_vars(&self, vars: &[usize]) -> u32 {
        self.terms.keys().map(|m| vars.iter().map(|&v| m.exp(v)).sum()).max().unwrap_or(0)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.leading_term().map_or_else(Rational::zero, |(_, c)| c.clone())
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_homogeneous(&self) -> bool {
        let d = self.degree();
        self.terms.keys().all(|m| m.total_degree() == d)
    }

    /// Homogeneous of degree `degree` in the given variables.
    pub fn is_homogeneous_in(&self, vars: &[usize], degree: u32) -> bool {
        self.terms.keys().all(|m| vars.iter().map(|&v| m.exp(v)).sum::<u32>() == degree)
    }

    /// Indices of the variables that occur with positive exponent.
    pub fn vars_present(&self) -> Vec<usize> {
        (0..self.ring.len()).filter(|&i| self.terms.keys().any(|m| m.exp(i) > 0)).collect()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::Ring(format!("{} vs {}", self.ring, other.ring)))
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.entry(m) {
                    Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    Entry::Occupied(mut e) => *e.get_mut() += c,
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Polynomial { ring: self.ring.clone(), terms: acc })
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect(),
        }
    }

    /// `self -= c * m * other`, in place.
    fn sub_scaled_shifted(&mut self, other: &Polynomial, m: &Monomial, c: &Rational) {
        for (k, x) in &other.terms {
            self.add_term(k.mul(m), -(x * c));
        }
    }

    /// Quotient of an exact division; fails with `Division` if `divisor`
    /// does not divide `self` in the polynomial ring.
    pub fn exact_divide(&self, divisor: &Polynomial) -> Result<Polynomial> {
        self.check_ring(divisor)?;
        let (lm_b, lc_b) = divisor
            .leading_term()
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or_else(|| Error::Division("division by zero".into()))?;
        if divisor.is_constant() {
            return Ok(self.scale(&lc_b.recip()));
        }
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.ring);
        while let Some((lm, lc)) = rem.leading_term() {
            let m = lm.div(&lm_b).ok_or_else(|| {
                Error::Division(format!("leading monomial not divisible ({} terms left)", rem.num_terms()))
            })?;
            let c = lc / &lc_b;
            rem.sub_scaled_shifted(divisor, &m, &c);
            quot.add_term(m, c);
        }
        Ok(quot)
    }

    pub fn is_divisible_by(&self, divisor: &Polynomial) -> bool {
        !divisor.is_zero() && self.exact_divide(divisor).is_ok()
    }

    /// Applies the ring homomorphism sending each bound variable to its
    /// image. Unbound variables must exist in `target` and map to themselves.
    pub fn substitute<'a, I>(&self, bindings: I, target: &Ring) -> Result<Polynomial>
    where
        I: IntoIterator<Item = (&'a str, &'a Polynomial)>,
    {
        let mut images: Vec<Option<Polynomial>> = vec![None; self.ring.len()];
        for (name, image) in bindings {
            if image.ring != *target {
                return Err(Error::Ring(format!(
                    "binding for {name} lives in {} but target is {target}",
                    image.ring
                )));
            }
            if let Some(i) = self.ring.index_of(name) {
                images[i] = Some(image.clone());
            }
        }
        for (i, slot) in images.iter_mut().enumerate() {
            if slot.is_none() {
                let name = &self.ring.vars()[i];
                if self.terms.keys().any(|m| m.exp(i) > 0) || target.contains(name) {
                    *slot = Some(Polynomial::var(target, name)?);
                }
            }
        }
        let mut powers: Vec<Vec<Polynomial>> = vec![Vec::new(); self.ring.len()];
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let base = images[i].as_ref().expect("image present for used variable");
                let cache = &mut powers[i];
                if cache.is_empty() {
                    cache.push(Polynomial::one(target));
                }
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * base;
                    cache.push(next);
                }
                term = &term * &cache[e as usize];
            }
            for (k, x) in term.terms {
                out.add_term(k, x);
            }
        }
        Ok(out)
    }

    /// Re-expresses the polynomial over `target`, matching variables by name.
    pub fn to_ring(&self, target: &Ring) -> Result<Polynomial> {
        if self.ring == *target {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.ring.len());
        for (i, name) in self.ring.vars().iter().enumerate() {
            let j = target.index_of(name);
            if j.is_none() && self.terms.keys().any(|m| m.exp(i) > 0) {
                return Err(Error::Ring(format!("variable {name} is not in {target}")));
            }
            map.push(j);
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps = vec![0; target.len()];
            for (i, &e) in m.exps().iter().enumerate() {
                if let Some(j) = map[i] {
                    exps[j] = e;
                }
            }
            (Monomial::new(exps), c.clone())
        });
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Evaluates at a full point.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.ring.len(), "point dimension");
        let mut sum = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            sum += v;
        }
        sum
    }

    /// Sets the listed variables to constants, staying in the same ring.
    pub fn specialize(&self, assignments: &[(usize, Rational)]) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut v = c.clone();
            let mut exps = m.exps().to_vec();
            for (i, x) in assignments {
                let e = exps[*i];
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                    exps[*i] = 0;
                }
            }
            out.add_term(Monomial::new(exps), v);
        }
        out
    }

    /// Dense coefficient list in variable `index`: entry `k` multiplies
    /// `var^k`. Coefficients stay in the same ring with that exponent zeroed.
    pub fn coefficients_in(&self, index: usize) -> Vec<Polynomial> {
        let mut out = vec![Polynomial::zero(&self.ring); self.degree_in(index) as usize + 1];
        for (m, c) in &self.terms {
            out[m.exp(index) as usize].add_term(m.with_exp(index, 0), c.clone());
        }
        out
    }

    pub fn from_coefficients_in(ring: &Ring, index: usize, coeffs: &[Polynomial]) -> Polynomial {
        let mut out = Polynomial::zero(ring);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, x) in &c.terms {
                debug_assert_eq!(m.exp(index), 0);
                out.add_term(m.with_exp(index, k as u32), x.clone());
            }
        }
        out
    }

    /// Groups terms by their exponents in `vars`. Each coefficient stays in
    /// the same ring with those exponents zeroed.
    pub fn split_by(&self, vars: &[usize]) -> BTreeMap<Vec<u32>, Polynomial> {
        let mut out: BTreeMap<Vec<u32>, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key: Vec<u32> = vars.iter().map(|&v| m.exp(v)).collect();
            let mut exps = m.exps().to_vec();
            for &v in vars {
                exps[v] = 0;
            }
            out.entry(key)
                .or_insert_with(|| Polynomial::zero(&self.ring))
                .add_term(Monomial::new(exps), c.clone());
        }
        out
    }

    /// Homogenizes with `var` to total degree `target_degree`. A variable not
    /// yet in the ring is appended to it.
    pub fn homogenize(&self, var: &str, target_degree: u32) -> Result<Polynomial> {
        let deg = self.degree();
        if !self.is_zero() && target_degree < deg {
            return Err(Error::Degree(format!(
                "cannot homogenize degree {deg} polynomial to degree {target_degree}"
            )));
        }
        let ring = self.ring.with_appended(var);
        let h = ring.index_of(var).expect("just appended");
        if h < self.ring.len() && self.degree_in(h) > 0 {
            return Err(Error::Ring(format!("{var} already occurs in the polynomial")));
        }
        let base = self.to_ring(&ring)?;
        let terms = base.terms.into_iter().map(|(m, c)| {
            let add = target_degree - m.total_degree();
            (m.with_exp(h, add), c)
        });
        Ok(Polynomial::from_terms(&ring, terms))
    }

    /// Sets `var = 1` and removes it from the ring.
    pub fn dehomogenize(&self, var: &str) -> Result<Polynomial> {
        let h = self
            .ring
            .index_of(var)
            .ok_or_else(|| Error::Ring(format!("{var} not in {}", self.ring)))?;
        let ring = self.ring.without(var);
        let set = self.specialize(&[(h, Rational::one())]);
        set.to_ring(&ring)
    }

    /// Rational content: the positive scalar `c` with `self / c` integral and
    /// primitive.
    pub fn rational_content(&self) -> Rational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            Rational::one()
        } else {
            Rational::new(num, den)
        }
    }

    /// Canonical associate: integer coefficients with gcd 1 and positive
    /// graded-lex leading coefficient.
    pub fn normalized(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.rational_content().recip();
        if self.leading_coefficient().is_negative() {
            c = -c;
        }
        self.scale(&c)
    }

    /// True if `self = c * other` for a nonzero rational `c`.
    pub fn is_associate_of(&self, other: &Polynomial) -> bool {
        self.ring == other.ring
            && self.is_zero() == other.is_zero()
            && self.normalized() == other.normalized()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::print(self))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", super::text::print(self), self.ring)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a> $tr<&'a Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &'a Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomials from different rings")
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$checked(&rhs).expect("polynomials from different rings")
            }
        }
        impl<'a> $tr<&'a Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &'a Polynomial) -> Polynomial {
                (&self).$checked(rhs).expect("polynomials from different rings")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::text::parse;

    fn p(ring: &Ring, s: &str) -> Polynomial {
        parse(s, ring).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = Ring::new(["x"]);
        assert_eq!(&p(&r, "x+1") * &p(&r, "x-1"), p(&r, "x^2-1"));
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let a = p(&Ring::new(["x"]), "x");
        let b = p(&Ring::new(["y"]), "y");
        assert!(matches!(a.checked_add(&b), Err(Error::Ring(_))));
    }

    #[test]
    fn exact_division() {
        let r = Ring::new(["x"]);
        assert_eq!(p(&r, "x^2-1").exact_divide(&p(&r, "x-1")).unwrap(), p(&r, "x+1"));
        assert!(matches!(p(&r, "x^2+1").exact_divide(&p(&r, "x-1")), Err(Error::Division(_))));
        assert!(matches!(p(&r, "x").exact_divide(&Polynomial::zero(&r)), Err(Error::Division(_))));
    }

    #[test]
    fn homogenize_and_back() {
        let r = Ring::new(["t1", "t2"]);
        let h = p(&r, "t1^2+t2^2+1").homogenize("t3", 2).unwrap();
        assert_eq!(h, p(&Ring::new(["t1", "t2", "t3"]), "t1^2+t2^2+t3^2"));
        assert_eq!(h.dehomogenize("t3").unwrap(), p(&r, "t1^2+t2^2+1"));
        let five = Polynomial::from_int(&r, 5).homogenize("t3", 0).unwrap();
        assert_eq!(five.as_constant(), Some(rat(5)));
        assert!(matches!(p(&r, "t1^3").homogenize("t3", 2), Err(Error::Degree(_))));
    }

    #[test]
    fn pythagorean_substitution() {
        let xy = Ring::new(["x", "y", "z"]);
        let t = Ring::new(["t"]);
        let f = p(&xy, "x^2+y^2-z^2");
        let (a, b, c) = (p(&t, "2*t"), p(&t, "1-t^2"), p(&t, "1+t^2"));
        let s = f.substitute([("x", &a), ("y", &b), ("z", &c)], &t).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn normalization() {
        let r = Ring::new(["x", "y"]);
        let q = p(&r, "-2/3*x^2 + 4/9*y");
        assert_eq!(q.normalized(), p(&r, "3*x^2 - 2*y"));
        assert!(q.is_associate_of(&p(&r, "3*x^2-2*y")));
    }
}
