//! Cayley–Dixon matrices for affine systems `F_i = q(t) X_i - p_i(t)`.
//!
//! The Cayley quotient is
//!
//! ```text
//!         | F1(t1,t2)  F2(t1,t2)  F3(t1,t2) |
//!     det | F1(a, t2)  F2(a, t2)  F3(a, t2) |  /  ((t1 - a)(t2 - b))
//!         | F1(a, b)   F2(a, b)   F3(a, b)  |
//! ```
//!
//! Its coefficients, indexed by `(a,b)`-monomials and `(t1,t2)`-monomials,
//! form the classical Dixon matrix. [`hybrid_matrix`] instead stacks the
//! coefficient rows of the `F_i` (shifted up to the top degree) on top of
//! enough Dixon rows to make a square matrix over the monomials
//! `1, t1, t2, t1^2, t1*t2, t2^2, ...`.

use crate::error::{Error, Result};
use crate::exactpoly::{monomials_up_to_degree, rings, Monomial, Polynomial, Rational, Ring};
use crate::polymat::PolyMatrix;
use crate::surfinv::{ElimMatrix, MatrixKind, SurfaceParam};

/// At most this many subsets of Dixon rows are tried for a nonsingular
/// hybrid matrix.
const MAX_SUBSETS: usize = 256;

fn system_ring() -> Ring {
    Ring::new(["t1", "t2", "X1", "X2", "X3"])
}

fn quotient_ring() -> Ring {
    Ring::new(["t1", "t2", "a", "b", "X1", "X2", "X3"])
}

/// Three polynomials `q X_i - p_i` over `t1, t2, X1, X2, X3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DixonSystem {
    f: [Polynomial; 3],
}

impl DixonSystem {
    pub fn new(f: [Polynomial; 3]) -> Result<Self> {
        let ring = system_ring();
        let [a, b, c] = f.map(|p| p.to_ring(&ring));
        let f = [a?, b?, c?];
        for (i, p) in f.iter().enumerate() {
            if p.degree_in_vars(&[0, 1]) == 0 {
                return Err(Error::DixonInapplicable(format!("F{} does not involve t1, t2", i + 1)));
            }
            for k in 0..3 {
                let want = u32::from(k == i);
                if p.degree_in(2 + k) != want {
                    return Err(Error::Degree(format!("F{} must have degree {want} in X{}", i + 1, k + 1)));
                }
            }
        }
        Ok(DixonSystem { f })
    }

    /// `F_i = q X_i - p_i` from the parameterization with `t3 = 1`.
    pub fn from_param(param: &SurfaceParam) -> Result<Self> {
        let (p, q) = param.affine_parts()?;
        let ring = system_ring();
        let q = q.to_ring(&ring)?;
        let make = |i: usize| -> Result<Polynomial> {
            let x = Polynomial::var_at(&ring, 2 + i);
            Ok(&(&q * &x) - &p[i].to_ring(&ring)?)
        };
        Self::new([make(0)?, make(1)?, make(2)?])
    }

    pub fn polys(&self) -> &[Polynomial; 3] {
        &self.f
    }

    /// Largest total degree of the `F_i` in `t1, t2`.
    pub fn t_degree(&self) -> u32 {
        self.f.iter().map(|p| p.degree_in_vars(&[0, 1])).max().unwrap_or(0)
    }
}

fn det3(m: &[[Polynomial; 3]; 3]) -> Polynomial {
    let minor = |a: usize, b: usize| &(&m[1][a] * &m[2][b]) - &(&m[1][b] * &m[2][a]);
    &(&(&m[0][0] * &minor(1, 2)) - &(&m[0][1] * &minor(0, 2))) + &(&m[0][2] * &minor(0, 1))
}

/// The Cayley determinant before division, over `t1, t2, a, b, X1..X3`.
pub fn cayley_determinant(sys: &DixonSystem) -> Result<Polynomial> {
    let r = quotient_ring();
    let a = Polynomial::var(&r, "a")?;
    let b = Polynomial::var(&r, "b")?;
    let lifted = sys.f.iter().map(|p| p.to_ring(&r)).collect::<Result<Vec<_>>>()?;
    let at = |p: &Polynomial, row: usize| -> Result<Polynomial> {
        match row {
            0 => Ok(p.clone()),
            1 => p.substitute([("t1", &a)], &r),
            _ => p.substitute([("t1", &a), ("t2", &b)], &r),
        }
    };
    let mut m: Vec<[Polynomial; 3]> = Vec::with_capacity(3);
    for row in 0..3 {
        m.push([at(&lifted[0], row)?, at(&lifted[1], row)?, at(&lifted[2], row)?]);
    }
    Ok(det3(&[m[0].clone(), m[1].clone(), m[2].clone()]))
}

/// `(t1 - a)(t2 - b)` over the quotient ring.
pub fn cayley_divisor() -> Polynomial {
    let r = quotient_ring();
    let v = |n: &str| Polynomial::var(&r, n).expect("known variable");
    &(&v("t1") - &v("a")) * &(&v("t2") - &v("b"))
}

/// The Cayley quotient. An inexact division means the construction does
/// not apply to this system.
pub fn cayley_quotient(sys: &DixonSystem) -> Result<Polynomial> {
    let det = cayley_determinant(sys)?;
    det.exact_divide(&cayley_divisor()).map_err(|e| match e {
        Error::Division(msg) => Error::DixonInapplicable(format!("Cayley quotient is not exact: {msg}")),
        other => other,
    })
}

/// `(a,b)`-monomial with its `(t1,t2)`-monomial coefficients.
type QuotientRow = (Monomial, Vec<(Monomial, Polynomial)>);

/// Coefficient table of the quotient: `(a,b)`-monomial → `(t1,t2)`-monomial
/// → polynomial in `X1, X2, X3`.
fn expand_quotient(q: &Polynomial) -> Result<Vec<QuotientRow>> {
    let xa = rings::x_affine();
    let mut table: Vec<(Monomial, Vec<(Monomial, Polynomial)>)> = Vec::new();
    for (key, coeff) in q.split_by(&[0, 1, 2, 3]) {
        let t = Monomial::new(vec![key[0], key[1]]);
        let ab = Monomial::new(vec![key[2], key[3]]);
        let c = coeff.to_ring(&xa)?;
        match table.iter_mut().find(|(m, _)| *m == ab) {
            Some((_, row)) => row.push((t, c)),
            None => table.push((ab, vec![(t, c)])),
        }
    }
    let order = |m: &Monomial| graded_position(m);
    table.sort_by_key(|(m, _)| order(m));
    Ok(table)
}

/// Position in `1, x, y, x^2, x*y, y^2, ...`.
fn graded_position(m: &Monomial) -> usize {
    monomials_up_to_degree(2, m.total_degree()).iter().position(|k| k == m).expect("listed")
}

/// The classical square Dixon matrix, rows by `(a,b)`-monomials and columns
/// by `(t1,t2)`-monomials, both in the order `1, x, y, x^2, ...`.
#[derive(Clone, Debug)]
pub struct DixonMatrix {
    pub matrix: PolyMatrix,
    pub row_monomials: Vec<Monomial>,
    pub col_monomials: Vec<Monomial>,
}

pub fn cayley_dixon_matrix(sys: &DixonSystem) -> Result<DixonMatrix> {
    let q = cayley_quotient(sys)?;
    let table = expand_quotient(&q)?;
    let mut cols: Vec<Monomial> = table.iter().flat_map(|(_, r)| r.iter().map(|(t, _)| t.clone())).collect();
    cols.sort_by_key(graded_position);
    cols.dedup();
    let rows: Vec<Monomial> = table.iter().map(|(m, _)| m.clone()).collect();
    if rows.len() != cols.len() {
        return Err(Error::DixonInapplicable(format!(
            "quotient support is {}x{}, not square",
            rows.len(),
            cols.len()
        )));
    }
    let xa = rings::x_affine();
    let mut mat = PolyMatrix::zeros(&xa, rows.len(), cols.len());
    for (i, (_, row)) in table.iter().enumerate() {
        for (t, c) in row {
            let j = cols.iter().position(|k| k == t).expect("collected");
            mat.set(i, j, c.clone())?;
        }
    }
    Ok(DixonMatrix { matrix: mat, row_monomials: rows, col_monomials: cols })
}

/// Label of a hybrid row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HybridRow {
    /// `t^shift * F_index` (0-based index).
    Shifted { index: usize, shift: Monomial },
    /// Coefficient of an `(a,b)`-monomial in the Cayley quotient.
    Dixon(Monomial),
}

/// Square matrix over `1, t1, t2, t1^2, ...` up to the top degree of the
/// system: shifted `F_i` rows, then Dixon rows.
#[derive(Clone, Debug)]
pub struct HybridMatrix {
    pub matrix: PolyMatrix,
    pub rows: Vec<HybridRow>,
    pub col_monomials: Vec<Monomial>,
}

pub fn hybrid_matrix(sys: &DixonSystem) -> Result<HybridMatrix> {
    let top = sys.t_degree();
    let cols = monomials_up_to_degree(2, top);
    let xa = rings::x_affine();

    let mut shifted: Vec<(HybridRow, Vec<Polynomial>)> = Vec::new();
    for (index, f) in sys.f.iter().enumerate() {
        let d = f.degree_in_vars(&[0, 1]);
        for shift in monomials_up_to_degree(2, top - d) {
            let mono = Monomial::new(vec![shift.exp(0), shift.exp(1), 0, 0, 0]);
            let g = f.mul_monomial(&mono, &Rational::from_integer(1.into()));
            let parts = g.split_by(&[0, 1]);
            let row = cols
                .iter()
                .map(|c| match parts.get(c.exps()) {
                    Some(p) => p.to_ring(&xa),
                    None => Ok(Polynomial::zero(&xa)),
                })
                .collect::<Result<Vec<_>>>()?;
            shifted.push((HybridRow::Shifted { index, shift }, row));
        }
    }
    if shifted.len() > cols.len() {
        return Err(Error::DixonInapplicable("more shifted rows than monomials".into()));
    }
    let need = cols.len() - shifted.len();

    let q = cayley_quotient(sys)?;
    let mut dixon_rows: Vec<(HybridRow, Vec<Polynomial>)> = Vec::new();
    for (ab, row) in expand_quotient(&q)? {
        if row.iter().any(|(t, _)| !cols.contains(t)) {
            continue;
        }
        let mut dense = vec![Polynomial::zero(&xa); cols.len()];
        for (t, c) in row {
            let j = cols.iter().position(|k| *k == t).expect("checked");
            dense[j] = c;
        }
        dixon_rows.push((HybridRow::Dixon(ab), dense));
    }
    if dixon_rows.len() < need {
        return Err(Error::DixonInapplicable(format!(
            "{} usable Dixon rows, {need} needed",
            dixon_rows.len()
        )));
    }

    for subset in combinations(dixon_rows.len(), need).take(MAX_SUBSETS) {
        let rows: Vec<&(HybridRow, Vec<Polynomial>)> =
            shifted.iter().chain(subset.iter().map(|&i| &dixon_rows[i])).collect();
        let entries = rows.iter().flat_map(|(_, r)| r.iter().cloned()).collect();
        let matrix = PolyMatrix::new(&xa, cols.len(), cols.len(), entries)?;
        if !matrix.det_fraction_free()?.is_zero() {
            return Ok(HybridMatrix {
                matrix,
                rows: rows.into_iter().map(|(l, _)| l.clone()).collect(),
                col_monomials: cols,
            });
        }
    }
    Err(Error::SingularMatrix("every hybrid Dixon matrix tried is singular".into()))
}

/// Lexicographic `k`-subsets of `0..n`.
fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                current = None;
                break;
            }
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                current = Some(next);
                break;
            }
        }
        Some(out)
    })
}

/// The transpose of the hybrid matrix as a certified implicitization
/// candidate, rows `1, t1, t2, ...` homogenized with `t3`. The last column
/// is marked unless `marked_column` says otherwise.
pub fn dixon_matrix(sys: &DixonSystem, marked_column: Option<usize>) -> Result<ElimMatrix> {
    let h = hybrid_matrix(sys)?;
    let n = h.col_monomials.len();
    let marked = marked_column.unwrap_or(n - 1);
    let e = ElimMatrix::from_affine(
        h.matrix.transpose(),
        h.col_monomials,
        MatrixKind::ImplicitizationCandidate,
        Some(marked),
    )?;
    Ok(e.certify(true))
}
