//! Preimage counting with test-local dense univariate arithmetic over Q:
//! Sylvester resultants by evaluation and interpolation, Euclidean gcds.

#![allow(dead_code)]

use num_traits::{One, Zero};
use ratinv::exactpoly::{parse, rings, Polynomial, Rational};
use ratinv::surfinv::SurfaceParam;

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

type Dense = Vec<Rational>;

fn trim(mut p: Dense) -> Dense {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Interpolates values at `xs` (distinct) into coefficients of length `xs.len()`.
fn interpolate(xs: &[Rational], ys: &[Rational]) -> Dense {
    let n = xs.len();
    let mut coef = vec![Rational::zero(); n];
    for i in 0..n {
        // Lagrange basis polynomial for node i
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for (j, xj) in xs.iter().enumerate() {
            if j == i {
                continue;
            }
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * xj;
            }
            basis = next;
            denom *= &xs[i] - xj;
        }
        let scale = &ys[i] / denom;
        for (c, b) in coef.iter_mut().zip(&basis) {
            *c += b * &scale;
        }
    }
    coef
}

fn rem(a: &[Rational], b: &[Rational]) -> Dense {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let lb = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap() / &lb;
        for (k, c) in b.iter().enumerate() {
            r[k + shift] -= &f * c;
        }
        r.pop();
        r = trim(r);
    }
    r
}

fn gcd(a: &[Rational], b: &[Rational]) -> Dense {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(l) = a.last().cloned() {
        for c in a.iter_mut() {
            *c /= &l;
        }
    }
    a
}

fn derivative(p: &[Rational]) -> Dense {
    p.iter().enumerate().skip(1).map(|(k, c)| c * int(k as i64)).collect()
}

fn degree(p: &[Rational]) -> usize {
    trim(p.to_vec()).len().saturating_sub(1)
}

/// Number of distinct complex roots.
fn distinct_roots(p: &[Rational]) -> usize {
    let p = trim(p.to_vec());
    degree(&p) - degree(&gcd(&p, &derivative(&p)))
}

fn scalar_det(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut det = Rational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else { return Rational::zero() };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= &a[k][k];
        let pivot = a[k].clone();
        for row in a.iter_mut().skip(k + 1) {
            let f = &row[k] / &pivot[k];
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x -= &f * y;
            }
        }
    }
    det
}

/// Sylvester resultant of `f`, `g` with their formal lengths kept.
fn sylvester_resultant(f: &[Rational], g: &[Rational]) -> Rational {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    let mut s = vec![vec![Rational::zero(); size]; size];
    for r in 0..n {
        for (k, c) in f.iter().rev().enumerate() {
            s[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in g.iter().rev().enumerate() {
            s[n + r][r + k] = c.clone();
        }
    }
    scalar_det(s)
}

fn nodes(n: usize) -> Vec<Rational> {
    (0..n as i64).map(|k| int(k - n as i64 / 2)).collect()
}

/// `Res_v(F(u, v), G(u, v))` as a polynomial in `u`, where both have total
/// degree at most `d`; computed by evaluation and interpolation.
fn resultant_in_v<F, G>(f: F, g: G, d: usize) -> Dense
where
    F: Fn(&Rational, &Rational) -> Rational,
    G: Fn(&Rational, &Rational) -> Rational,
{
    let vs = nodes(d + 1);
    let us = nodes(d * d + 1);
    let values: Vec<Rational> = us
        .iter()
        .map(|u| {
            let fv = interpolate(&vs, &vs.iter().map(|v| f(u, v)).collect::<Vec<_>>());
            let gv = interpolate(&vs, &vs.iter().map(|v| g(u, v)).collect::<Vec<_>>());
            sylvester_resultant(&fv, &gv)
        })
        .collect();
    trim(interpolate(&us, &values))
}

/// Preimages of `φ(t0)` in the chart `t3 = 1`, after the shear
/// `t1 = u + λ v`, `t2 = v`. Base points are common zeros of all `p_i`
/// and are discounted.
pub fn surface_preimage_count(param: &SurfaceParam, t0: [Rational; 2], lambda: &Rational) -> usize {
    let x0 = param.evaluate(&[t0[0].clone(), t0[1].clone(), Rational::one()]);
    let p = |i: usize, u: &Rational, v: &Rational| {
        param.coords()[i].evaluate(&[u + lambda * v, v.clone(), Rational::one()])
    };
    let g = |i: usize, u: &Rational, v: &Rational| &x0[3] * p(i, u, v) - &x0[i] * p(3, u, v);
    let d = param.degree() as usize;
    let r12 = resultant_in_v(|u, v| g(0, u, v), |u, v| g(1, u, v), d);
    let r13 = resultant_in_v(|u, v| g(0, u, v), |u, v| g(2, u, v), d);
    let h = gcd(&r12, &r13);
    let base = [1, 2, 3]
        .iter()
        .map(|&j| resultant_in_v(|u, v| p(0, u, v), move |u, v| p(j, u, v), d))
        .reduce(|a, b| gcd(&a, &b))
        .unwrap();
    let hs = squarefree(&h);
    let shared = if base.is_empty() { hs.clone() } else { gcd(&hs, &base) };
    degree(&hs) - degree(&shared)
}

fn squarefree(p: &[Rational]) -> Dense {
    let g = gcd(p, &derivative(p));
    exact_quotient(p, &g)
}

fn exact_quotient(a: &[Rational], b: &[Rational]) -> Dense {
    let (a, b) = (trim(a.to_vec()), trim(b.to_vec()));
    if b.len() > a.len() {
        return vec![];
    }
    let mut r = a.clone();
    let mut out = vec![Rational::zero(); a.len() - b.len() + 1];
    let lb = b.last().unwrap().clone();
    for s in (0..out.len()).rev() {
        let f = &r[s + b.len() - 1] / &lb;
        for (k, c) in b.iter().enumerate() {
            r[s + k] -= &f * c;
        }
        out[s] = f;
    }
    assert!(trim(r).is_empty(), "inexact division");
    out
}

/// Preimages of `φ(t0)` for a plane curve: common roots of
/// `p1 - x0 q1` and `p2 - y0 q2`, counted by the degree of their gcd.
pub fn curve_preimage_count(c: [&str; 4], t0: &Rational) -> usize {
    let r = rings::curve_param();
    let polys = c.map(|s| parse(s, &r).unwrap());
    let d = polys.iter().map(Polynomial::degree).max().unwrap() as usize;
    let at = |k: usize, t: &Rational| polys[k].evaluate(std::slice::from_ref(t));
    let x0 = at(0, t0) / at(1, t0);
    let y0 = at(2, t0) / at(3, t0);
    let ts = nodes(d + 1);
    let a = interpolate(&ts, &ts.iter().map(|t| at(0, t) - &x0 * at(1, t)).collect::<Vec<_>>());
    let b = interpolate(&ts, &ts.iter().map(|t| at(2, t) - &y0 * at(3, t)).collect::<Vec<_>>());
    distinct_roots(&gcd(&a, &b))
}
