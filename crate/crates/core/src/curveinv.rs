//! Plane curves: Sylvester matrix, properness by the gcd of signed minors,
//! and the inverse `t = Δ_i / Δ_{i+1}`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactpoly::{gcd, gcd_all, rings, Polynomial, Ring};
use crate::polymat::{PolyMatrix, SignedMinorVector};

/// `t ↦ (p1/q1, p2/q2)` with both fractions reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurveParam {
    original: [Polynomial; 4],
    p1: Polynomial,
    q1: Polynomial,
    p2: Polynomial,
    q2: Polynomial,
    m: u32,
    n: u32,
}

impl PlaneCurveParam {
    /// Reduces both fractions by their gcd. All four polynomials must live
    /// in the same univariate ring.
    pub fn new(p1: Polynomial, q1: Polynomial, p2: Polynomial, q2: Polynomial) -> Result<Self> {
        let ring = p1.ring().clone();
        if ring.len() != 1 {
            return Err(Error::Ring(format!("curve parameter ring must be univariate, got {ring}")));
        }
        for p in [&q1, &p2, &q2] {
            if p.ring() != &ring {
                return Err(Error::Ring(format!("{} vs {ring}", p.ring())));
            }
        }
        if q1.is_zero() || q2.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        let original = [p1.clone(), q1.clone(), p2.clone(), q2.clone()];
        let (p1, q1) = reduce(&p1, &q1)?;
        let (p2, q2) = reduce(&p2, &q2)?;
        let m = p1.degree().max(q1.degree());
        let n = p2.degree().max(q2.degree());
        if m == 0 || n == 0 {
            let which = if m == 0 { "x" } else { "y" };
            return Err(Error::LineCase(format!("{which} is constant along the parameterization")));
        }
        Ok(PlaneCurveParam { original, p1, q1, p2, q2, m, n })
    }

    pub fn ring(&self) -> &Ring {
        self.p1.ring()
    }

    /// The inputs as given, before reduction.
    pub fn original(&self) -> &[Polynomial; 4] {
        &self.original
    }

    pub fn p1(&self) -> &Polynomial {
        &self.p1
    }

    pub fn q1(&self) -> &Polynomial {
        &self.q1
    }

    pub fn p2(&self) -> &Polynomial {
        &self.p2
    }

    pub fn q2(&self) -> &Polynomial {
        &self.q2
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `q1^e * q2^f * P(p1/q1, p2/q2)` for `P` in `x, y` with
    /// `deg_x P <= e` and `deg_y P <= f`.
    pub fn substitute_cleared(&self, p: &Polynomial, e: u32, f: u32) -> Result<Polynomial> {
        let ring = self.ring();
        let xy = p.ring();
        let (ix, iy) = match (xy.index_of("x"), xy.index_of("y")) {
            (Some(ix), Some(iy)) if xy.len() == 2 => (ix, iy),
            _ => return Err(Error::Ring(format!("expected a polynomial in x, y; got {xy}"))),
        };
        if p.degree_in(ix) > e || p.degree_in(iy) > f {
            return Err(Error::Degree(format!("bidegree exceeds ({e}, {f})")));
        }
        let powers = |b: &Polynomial, k: u32| -> Vec<Polynomial> {
            let mut v = vec![Polynomial::one(ring)];
            for _ in 0..k {
                let next = v.last().expect("nonempty") * b;
                v.push(next);
            }
            v
        };
        let (pp1, pq1, pp2, pq2) = (powers(&self.p1, e), powers(&self.q1, e), powers(&self.p2, f), powers(&self.q2, f));
        let mut out = Polynomial::zero(ring);
        for (mono, c) in p.terms() {
            let a = mono.exp(ix) as usize;
            let b = mono.exp(iy) as usize;
            let term = &(&pp1[a] * &pq1[e as usize - a]) * &(&pp2[b] * &pq2[f as usize - b]);
            out = &out + &term.scale(c);
        }
        Ok(out)
    }
}

fn reduce(p: &Polynomial, q: &Polynomial) -> Result<(Polynomial, Polynomial)> {
    if p.is_zero() {
        return Ok((p.clone(), Polynomial::one(q.ring())));
    }
    let g = gcd(p, q)?;
    Ok((p.exact_divide(&g)?, q.exact_divide(&g)?))
}

/// Sylvester matrix of `f = p1 - x*q1` and `g = p2 - y*q2` over `Q[x, y]`.
///
/// Row `r` holds the coefficients of `t^(m+n-1-r)`. Columns are
/// `t^(n-1) f, ..., f, t^(m-1) g, ..., g`.
pub fn build_sylvester(param: &PlaneCurveParam) -> PolyMatrix {
    let xy = rings::curve_xy();
    let x = Polynomial::var_at(&xy, 0);
    let y = Polynomial::var_at(&xy, 1);
    let coeffs = |p: &Polynomial, q: &Polynomial, v: &Polynomial, deg: u32| -> Vec<Polynomial> {
        let pc = p.coefficients_in(0);
        let qc = q.coefficients_in(0);
        (0..=deg as usize)
            .map(|k| {
                let a = pc.get(k).and_then(Polynomial::as_constant).unwrap_or_else(Zero::zero);
                let b = qc.get(k).and_then(Polynomial::as_constant).unwrap_or_else(Zero::zero);
                &Polynomial::constant(&xy, a) - &v.scale(&b)
            })
            .collect()
    };
    let (m, n) = (param.m, param.n);
    let f = coeffs(&param.p1, &param.q1, &x, m);
    let g = coeffs(&param.p2, &param.q2, &y, n);
    let size = (m + n) as usize;
    let mut s = PolyMatrix::zeros(&xy, size, size);
    let mut place = |col: usize, shift: u32, c: &[Polynomial]| {
        for (k, entry) in c.iter().enumerate() {
            let power = k + shift as usize;
            let row = size - 1 - power;
            s.set(row, col, entry.clone()).expect("same ring");
        }
    };
    for j in 0..n {
        place(j as usize, n - 1 - j, &f);
    }
    for j in 0..m {
        place((n + j) as usize, m - 1 - j, &g);
    }
    s
}

/// Output of [`curve_properness`].
#[derive(Clone, Debug)]
pub struct CurveInversionResult {
    pub proper: bool,
    pub sylvester: PolyMatrix,
    /// Signed maximal minors of the Sylvester matrix without its last column.
    pub minors: SignedMinorVector,
    pub gcd_of_minors: Polynomial,
    /// `det(S)` as computed.
    pub resultant: Polynomial,
    /// `det(S)` normalized; only reported when proper, where it is the
    /// implicit equation.
    pub implicit_equation: Option<Polynomial>,
    /// 0-based `i` with `t = minors[i] / minors[i+1]`.
    pub chosen_index: Option<usize>,
    pub inverse: Option<(Polynomial, Polynomial)>,
    /// `det(S) = (-1)^(d-1) * sum(c_i * Δ_i)` over the erased last column.
    pub expansion_identity_holds: bool,
    pub gcd_divides_resultant: bool,
}

pub fn curve_properness(param: &PlaneCurveParam) -> Result<CurveInversionResult> {
    let s = build_sylvester(param);
    let d = s.rows();
    let erased = d - 1;
    let stripped = s.delete(&[], &[erased]);
    let minors = stripped.signed_maximal_minors()?;
    let resultant = s.det_fraction_free()?;
    let expansion_identity_holds = minors.expand_along(&s.column(erased), erased)? == resultant;
    let gcd_of_minors = gcd_all(minors.minors())?;
    let gcd_divides_resultant = resultant.is_divisible_by(&gcd_of_minors);
    let proper = gcd_of_minors.is_unit();
    let mut result = CurveInversionResult {
        proper,
        sylvester: s,
        minors,
        gcd_of_minors,
        resultant,
        implicit_equation: None,
        chosen_index: None,
        inverse: None,
        expansion_identity_holds,
        gcd_divides_resultant,
    };
    if proper {
        let implicit = result.resultant.normalized();
        let ms = result.minors.minors();
        let i = (0..d - 1).find(|&i| !ms[i + 1].is_divisible_by(&implicit));
        if let Some(i) = i {
            result.inverse = Some((ms[i].clone(), ms[i + 1].clone()));
            result.chosen_index = Some(i);
        }
        result.implicit_equation = Some(implicit);
    }
    Ok(result)
}

/// Checks `N(φ(t)) = t * D(φ(t))` with denominators cleared, and that the
/// cleared `D(φ(t))` is nonzero.
pub fn inverse_pair_holds(param: &PlaneCurveParam, num: &Polynomial, den: &Polynomial) -> Result<bool> {
    let (e, f) = joint_bidegree([num, den])?;
    let n = param.substitute_cleared(num, e, f)?;
    let d = param.substitute_cleared(den, e, f)?;
    if d.is_zero() {
        return Ok(false);
    }
    let t = Polynomial::var_at(param.ring(), 0);
    Ok((&n - &(&t * &d)).is_zero())
}

pub fn curve_inverse_check(param: &PlaneCurveParam, result: &CurveInversionResult) -> Result<bool> {
    match &result.inverse {
        Some((num, den)) if result.proper => inverse_pair_holds(param, num, den),
        _ => Ok(false),
    }
}

/// `Δ_i Δ_{i+2} - Δ_{i+1}^2` vanishes through `φ` for every `i`.
pub fn cross_equalities_hold(param: &PlaneCurveParam, minors: &SignedMinorVector) -> Result<bool> {
    let ms = minors.minors();
    for i in 0..ms.len().saturating_sub(2) {
        let expr = &(&ms[i] * &ms[i + 2]) - &(&ms[i + 1] * &ms[i + 1]);
        let (e, f) = joint_bidegree([&expr])?;
        if !param.substitute_cleared(&expr, e, f)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True if `F(p1/q1, p2/q2)` vanishes.
pub fn curve_implicit_vanishes(param: &PlaneCurveParam, f: &Polynomial) -> Result<bool> {
    let (e, g) = joint_bidegree([f])?;
    Ok(param.substitute_cleared(f, e, g)?.is_zero())
}

fn joint_bidegree<'a, I: IntoIterator<Item = &'a Polynomial>>(polys: I) -> Result<(u32, u32)> {
    let xy = rings::curve_xy();
    let mut e = 0;
    let mut f = 0;
    for p in polys {
        if p.ring() != &xy {
            return Err(Error::Ring(format!("expected {xy}, got {}", p.ring())));
        }
        e = e.max(p.degree_in(0));
        f = f.max(p.degree_in(1));
    }
    Ok((e, f))
}
