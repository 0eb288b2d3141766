//! Exact certification by substitution through the parameterization.
//!
//! Equalities in the function field of the image are decided by composing
//! with `φ` and testing the resulting polynomial in `t` for zero. A random
//! point evaluation runs first; it may reject early but never accepts.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::curveinv::{self, PlaneCurveParam};
use crate::error::{Error, Result};
use crate::exactpoly::{rings, BiHomogeneousPoly, Polynomial, Rational};
use crate::surfinv::{to_projective_x_degree, SurfaceParam};

/// Seed for the rejection-only pre-checks.
pub const DEFAULT_SEED: u64 = 20_240_601;

/// True iff `M(t; p(t)) = 0`.
pub fn follows_parameterization(m: &Polynomial, param: &SurfaceParam) -> Result<bool> {
    Ok(param.compose(m)?.is_zero())
}

pub fn bihomogeneous_follows(m: &BiHomogeneousPoly, param: &SurfaceParam) -> Result<bool> {
    follows_parameterization(m.poly(), param)
}

/// `ψ_i(φ) t_j - ψ_j(φ) t_i = 0` for all pairs, and some `ψ_i(φ) ≠ 0`.
///
/// Components over `X1, X2, X3` are first lifted to forms of one common
/// degree with `X4`.
pub fn verify_inverse(param: &SurfaceParam, psi: &[Polynomial; 3]) -> Result<bool> {
    verify_inverse_seeded(param, psi, DEFAULT_SEED)
}

pub fn verify_inverse_seeded(param: &SurfaceParam, psi: &[Polynomial; 3], seed: u64) -> Result<bool> {
    let psi = lift_common(psi)?;
    if psi.iter().all(Polynomial::is_zero) {
        return Ok(false);
    }
    if !point_check(param, &psi, seed) {
        return Ok(false);
    }
    let composed = psi.iter().map(|p| param.compose(p)).collect::<Result<Vec<_>>>()?;
    if composed.iter().all(Polynomial::is_zero) {
        return Ok(false);
    }
    let t = rings::t();
    let tv = |k: usize| Polynomial::var_at(&t, k);
    let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
    Ok(pairs.par_iter().all(|&(i, j)| (&(&composed[i] * &tv(j)) - &(&composed[j] * &tv(i))).is_zero()))
}

fn lift_common(psi: &[Polynomial; 3]) -> Result<[Polynomial; 3]> {
    let x = rings::x();
    if psi.iter().all(|p| p.ring() == &x) {
        return Ok(psi.clone());
    }
    let deg = psi.iter().map(Polynomial::degree).max().unwrap_or(0);
    let [a, b, c] = psi.each_ref().map(|p| to_projective_x_degree(p, deg));
    Ok([a?, b?, c?])
}

fn random_t(rng: &mut ChaCha8Rng) -> [Rational; 3] {
    [0, 1, 2].map(|_| Rational::new(rng.gen_range(-50i64..=50).into(), rng.gen_range(1i64..=7).into()))
}

/// Points tried before `ψ(φ)` is taken to vanish identically.
const VANISH_ATTEMPTS: usize = 4;

/// Rejects if the identity fails at a random point where `φ` is defined, or
/// if every `ψ_i(φ)` vanishes at several random points. The second case is
/// typical when the minors share the implicit equation as a factor; it
/// spares a large composition whose result would be zero. Rejection only
/// withholds certification, so a rare unlucky draw cannot produce a wrong
/// positive answer.
fn point_check(param: &SurfaceParam, psi: &[Polynomial; 3], seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
    for _ in 0..VANISH_ATTEMPTS {
        let t = random_t(&mut rng);
        let x = param.evaluate(&t);
        let v = psi.each_ref().map(|p| p.evaluate(&x));
        if !pairs.iter().all(|&(i, j)| &v[i] * &t[j] == &v[j] * &t[i]) {
            return false;
        }
        if v.iter().any(|c| !c.is_zero()) {
            return true;
        }
    }
    false
}

/// True iff `F(p(t)) = 0`. Affine `F` is lifted with `X4` first.
pub fn verify_implicit(f: &Polynomial, param: &SurfaceParam) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::Domain("the zero polynomial is not an implicit equation".into()));
    }
    let f = to_projective_x_degree(f, f.degree())?;
    Ok(param.compose(&f)?.is_zero())
}

/// `num1/den1 = num2/den2` as functions on the image, with both
/// denominators nonzero there. Each fraction is lifted to degree zero in
/// `X1..X4`, so affine and projective fractions compare directly.
pub fn ratios_equal_on_image(
    param: &SurfaceParam,
    (num1, den1): (&Polynomial, &Polynomial),
    (num2, den2): (&Polynomial, &Polynomial),
) -> Result<bool> {
    let (a, b) = lift_fraction(num1, den1)?;
    let (c, d) = lift_fraction(num2, den2)?;
    let cb = param.compose(&b)?;
    let cd = param.compose(&d)?;
    if cb.is_zero() || cd.is_zero() {
        return Ok(false);
    }
    let lhs = &param.compose(&a)? * &cd;
    let rhs = &param.compose(&c)? * &cb;
    Ok(lhs == rhs)
}

/// `num/den` composed with `φ` equals `t_k / t3` (`k` is 0 or 1).
pub fn ratio_composes_to(param: &SurfaceParam, num: &Polynomial, den: &Polynomial, k: usize) -> Result<bool> {
    let (a, b) = lift_fraction(num, den)?;
    let cb = param.compose(&b)?;
    if cb.is_zero() {
        return Ok(false);
    }
    let t = rings::t();
    let lhs = &param.compose(&a)? * &Polynomial::var_at(&t, 2);
    let rhs = &cb * &Polynomial::var_at(&t, k);
    Ok(lhs == rhs)
}

fn lift_fraction(num: &Polynomial, den: &Polynomial) -> Result<(Polynomial, Polynomial)> {
    let x = rings::x();
    if num.ring() == &x && den.ring() == &x {
        if !num.is_homogeneous() || !den.is_homogeneous() {
            return Err(Error::Degree("projective fractions need homogeneous parts".into()));
        }
        let (dn, dd) = (num.degree(), den.degree());
        if dn != dd && !num.is_zero() {
            return Err(Error::Degree(format!("fraction of degrees {dn} and {dd} is not a function")));
        }
        return Ok((num.clone(), den.clone()));
    }
    let deg = num.degree().max(den.degree());
    Ok((to_projective_x_degree(num, deg)?, to_projective_x_degree(den, deg)?))
}

/// `F(p1/q1, p2/q2) = 0` for a plane curve.
pub fn verify_implicit_curve(f: &Polynomial, param: &PlaneCurveParam) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::Domain("the zero polynomial is not an implicit equation".into()));
    }
    curveinv::curve_implicit_vanishes(param, f)
}

/// `num(φ)/den(φ) = t` for a plane curve.
pub fn verify_curve_inverse(param: &PlaneCurveParam, num: &Polynomial, den: &Polynomial) -> Result<bool> {
    curveinv::inverse_pair_holds(param, num, den)
}

/// Exact zero test for the composed polynomial, exposed for callers that
/// build their own expressions.
pub fn vanishes_on_image(f: &Polynomial, param: &SurfaceParam) -> Result<bool> {
    Ok(param.compose(f)?.is_zero())
}
