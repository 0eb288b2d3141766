//! Moving surfaces following a parameterization, found as the nullspace of
//! a scalar linear system, and square matrices assembled from them.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactpoly::{
    binomial, monomials_of_degree, rings, BiHomogeneousPoly, Monomial, Polynomial, Rational,
};
use crate::polymat::{nullspace_rational, PolyMatrix};
use crate::surfinv::{ElimMatrix, MatrixKind, SurfaceParam};
use crate::verify;

/// A bihomogeneous `M(t; X)` of bidegree `(m; n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MovingSurface {
    pub body: BiHomogeneousPoly,
    pub follows_phi: bool,
}

impl MovingSurface {
    /// Wraps a polynomial over `t1,t2,t3,X1..X4` and checks it against `φ`.
    pub fn new(poly: Polynomial, m: u32, n: u32, param: &SurfaceParam) -> Result<Self> {
        let body = BiHomogeneousPoly::new(poly.to_ring(&rings::tx())?, &rings::t(), &rings::x(), m, n)?;
        let follows_phi = verify::bihomogeneous_follows(&body, param)?;
        Ok(MovingSurface { body, follows_phi })
    }

    pub fn poly(&self) -> &Polynomial {
        self.body.poly()
    }

    pub fn m(&self) -> u32 {
        self.body.deg_t()
    }

    pub fn n(&self) -> u32 {
        self.body.deg_x()
    }

    /// Coefficient of each row monomial, as polynomials in `X1..X4`.
    pub fn coefficients(&self, rows: &[Monomial]) -> Result<Vec<Polynomial>> {
        let parts = self.poly().split_by(&[0, 1, 2]);
        let x = rings::x();
        rows.iter()
            .map(|alpha| match parts.get(alpha.exps()) {
                Some(c) => c.to_ring(&x),
                None => Ok(Polynomial::zero(&x)),
            })
            .collect()
    }
}

/// Basis of the moving surfaces of bidegree `(m; n)` following `φ`.
///
/// The unknowns are the coefficients of `t^α X^γ`, ordered with `γ` outer
/// and `α` inner, both graded-lex descending. Basis vectors come from the
/// reduced echelon form; the resulting surfaces are normalized and sorted
/// by descending leading term.
pub fn moving_surface_basis(param: &SurfaceParam, m: u32, n: u32) -> Result<Vec<MovingSurface>> {
    if m == 0 || n == 0 {
        return Err(Error::Degree("moving surfaces need m >= 1 and n >= 1".into()));
    }
    let t_mons = monomials_of_degree(3, m);
    let x_mons = monomials_of_degree(4, n);
    let t_ring = rings::t();
    let target_deg = m + n * param.degree();
    let rows = monomials_of_degree(3, target_deg);

    let mut x_images = Vec::with_capacity(x_mons.len());
    for g in &x_mons {
        let mut acc = Polynomial::one(&t_ring);
        for (i, &e) in g.exps().iter().enumerate() {
            acc = &acc * &param.coords()[i].pow(e);
        }
        x_images.push(acc);
    }
    let mut unknowns = Vec::new();
    let mut columns = Vec::new();
    for (gi, img) in x_images.iter().enumerate() {
        for (ai, a) in t_mons.iter().enumerate() {
            let prod = img.mul_monomial(a, &Rational::from_integer(1.into()));
            columns.push(rows.iter().map(|r| prod.coefficient(r)).collect::<Vec<_>>());
            unknowns.push((ai, gi));
        }
    }
    let matrix: Vec<Vec<Rational>> =
        (0..rows.len()).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
    let kernel = nullspace_rational(&matrix, unknowns.len());

    let tx = rings::tx();
    let mut out = Vec::with_capacity(kernel.len());
    for v in kernel {
        let terms = v.iter().zip(&unknowns).filter(|(c, _)| !c.is_zero()).map(|(c, &(ai, gi))| {
            let mut exps = t_mons[ai].exps().to_vec();
            exps.extend_from_slice(x_mons[gi].exps());
            (Monomial::new(exps), c.clone())
        });
        let poly = Polynomial::from_terms(&tx, terms).normalized();
        let s = MovingSurface::new(poly, m, n, param)?;
        if !s.follows_phi {
            return Err(Error::Domain("nullspace vector does not follow the parameterization".into()));
        }
        out.push(s);
    }
    out.sort_by(|a, b| {
        let la = a.poly().leading_term().map(|(k, _)| k.clone());
        let lb = b.poly().leading_term().map(|(k, _)| k.clone());
        lb.cmp(&la)
    });
    Ok(out)
}

/// Square matrix whose column `j` holds the coefficients of surface `j` on
/// the degree-`m` row monomials (graded-lex descending).
pub fn assemble_candidate(
    param: &SurfaceParam,
    surfaces: &[MovingSurface],
    marked_column: Option<usize>,
) -> Result<ElimMatrix> {
    let m = surfaces.first().map(MovingSurface::m).ok_or_else(|| Error::Shape("no surfaces".into()))?;
    let rows = monomials_of_degree(3, m);
    let d = rows.len();
    if surfaces.len() != d {
        return Err(Error::Shape(format!("{} surfaces for {d} row monomials", surfaces.len())));
    }
    let x = rings::x();
    let mut mat = PolyMatrix::zeros(&x, d, d);
    for (j, s) in surfaces.iter().enumerate() {
        if s.m() != m {
            return Err(Error::Degree(format!("surface {j} has t-degree {} instead of {m}", s.m())));
        }
        if !s.follows_phi && !verify::bihomogeneous_follows(&s.body, param)? {
            return Err(Error::NotFollowing { column: j });
        }
        for (i, c) in s.coefficients(&rows)?.into_iter().enumerate() {
            mat.set(i, j, c)?;
        }
    }
    // Full rank at one point proves the determinant nonzero.
    let mut rng = ChaCha8Rng::seed_from_u64(verify::DEFAULT_SEED);
    if mat.rank_at(&random_x(&mut rng)) < d && mat.det_fraction_free()?.is_zero() {
        return Err(Error::SingularMatrix("the moving surfaces are dependent".into()));
    }
    let marked = marked_column.unwrap_or_else(|| default_marked_column(surfaces));
    ElimMatrix::new(mat, rows, MatrixKind::ImplicitizationCandidate, Some(marked))
}

/// First column of largest X-degree.
pub fn default_marked_column(surfaces: &[MovingSurface]) -> usize {
    let top = surfaces.iter().map(MovingSurface::n).max().unwrap_or(0);
    surfaces.iter().position(|s| s.n() == top).unwrap_or(0)
}

/// Options for [`search_candidate`].
#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub m_max: u32,
    pub marked_column: Option<usize>,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { m_max: 3, marked_column: None, seed: verify::DEFAULT_SEED }
    }
}

/// Everything the search found, for reporting.
#[derive(Clone, Debug)]
pub struct SearchResult {
    pub matrix: ElimMatrix,
    pub surfaces: Vec<MovingSurface>,
    pub planes_found: usize,
    pub quadrics_found: usize,
}

const POINT_ATTEMPTS: usize = 4;

/// Smallest `m` for which moving planes, completed by moving quadrics,
/// give a nonsingular square matrix.
///
/// Columns are chosen greedily (planes first) by rank at a random point of
/// X-space; the exact determinant then confirms the choice. Points are
/// drawn from a fixed-seed generator, so the outcome is deterministic.
pub fn search_candidate(param: &SurfaceParam, opts: &SearchOptions) -> Result<SearchResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for m in 1..=opts.m_max {
        let d = binomial(u64::from(m) + 2, 2) as usize;
        let rows = monomials_of_degree(3, m);
        let planes = moving_surface_basis(param, m, 1)?;
        let mut pool = planes.clone();
        let mut quadrics_found = 0;
        if pool.len() < d || !spans_full(&pool, &rows, &mut rng)? {
            let quadrics = moving_surface_basis(param, m, 2)?;
            quadrics_found = quadrics.len();
            pool.extend(quadrics);
        }
        if pool.len() < d {
            continue;
        }
        for _ in 0..POINT_ATTEMPTS {
            let chosen = greedy_columns(&pool, &rows, &mut rng)?;
            if chosen.len() < d {
                break;
            }
            let surfaces: Vec<MovingSurface> = chosen.iter().map(|&i| pool[i].clone()).collect();
            match assemble_candidate(param, &surfaces, opts.marked_column) {
                Ok(matrix) => {
                    return Ok(SearchResult { matrix, surfaces, planes_found: planes.len(), quadrics_found })
                }
                Err(Error::SingularMatrix(_)) => continue,
                Err(e) => return Err(e),
            }
        }
    }
    Err(Error::SingularMatrix(format!(
        "no nonsingular moving-surface matrix with m <= {}; the image may not be a surface",
        opts.m_max
    )))
}

fn random_x(rng: &mut ChaCha8Rng) -> Vec<Rational> {
    (0..4).map(|_| Rational::from_integer(rng.gen_range(-1000i64..=1000).into())).collect()
}

fn spans_full(pool: &[MovingSurface], rows: &[Monomial], rng: &mut ChaCha8Rng) -> Result<bool> {
    Ok(greedy_columns(pool, rows, rng)?.len() == rows.len())
}

/// Indices of a maximal set of columns independent at one random point.
fn greedy_columns(pool: &[MovingSurface], rows: &[Monomial], rng: &mut ChaCha8Rng) -> Result<Vec<usize>> {
    let point = random_x(rng);
    let mut basis: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, s) in pool.iter().enumerate() {
        let mut v: Vec<Rational> = s.coefficients(rows)?.iter().map(|c| c.evaluate(&point)).collect();
        for (p, b) in &basis {
            if !v[*p].is_zero() {
                let f = &v[*p] / &b[*p];
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            basis.push((p, v));
            chosen.push(idx);
            if chosen.len() == rows.len() {
                break;
            }
        }
    }
    Ok(chosen)
}
