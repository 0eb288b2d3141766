//! Surfaces: parameterizations, elimination matrices over a row index of
//! t-monomials, inverse maps from signed minors, and the gcd-of-minors
//! properness test.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactpoly::{gcd_all, lcm, rings, Monomial, Polynomial, Rational};
use crate::polymat::{PolyMatrix, SignedMinorVector};
use crate::verify;

/// `(t1:t2:t3) ↦ (p1:p2:p3:p4)` with homogeneous `p_i` of one degree and
/// no common factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceParam {
    p: [Polynomial; 4],
    degree: u32,
    affine: bool,
}

impl SurfaceParam {
    /// Projective input. Polynomials may live in any ring whose variables
    /// are among `t1, t2, t3`.
    pub fn new(p: [Polynomial; 4]) -> Result<Self> {
        Self::build(p, false)
    }

    fn build(p: [Polynomial; 4], affine: bool) -> Result<Self> {
        let ring = rings::t();
        let p = p.map(|q| q.to_ring(&ring));
        let [a, b, c, d] = p;
        let p = [a?, b?, c?, d?];
        if p.iter().all(Polynomial::is_zero) {
            return Err(Error::Domain("all four coordinates are zero".into()));
        }
        let degree = p.iter().find(|q| !q.is_zero()).map(Polynomial::degree).expect("nonzero");
        for (i, q) in p.iter().enumerate() {
            if !q.is_zero() && (!q.is_homogeneous() || q.degree() != degree) {
                return Err(Error::Degree(format!(
                    "p{} is not homogeneous of degree {degree}",
                    i + 1
                )));
            }
        }
        let g = gcd_all(p.iter())?;
        let p = if g.is_unit() {
            p
        } else {
            let [a, b, c, d] = p.map(|q| q.exact_divide(&g));
            [a?, b?, c?, d?]
        };
        let degree = p.iter().find(|q| !q.is_zero()).map(Polynomial::degree).expect("nonzero");
        Ok(SurfaceParam { p, degree, affine })
    }

    /// Affine input `X_i = p_i / q` in `t1, t2`, homogenized with `t3`.
    pub fn from_affine_shared(p: [Polynomial; 3], q: Polynomial) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        let deg = p.iter().chain([&q]).map(Polynomial::degree).max().unwrap_or(0);
        let h = |x: &Polynomial| -> Result<Polynomial> {
            x.to_ring(&rings::t_affine())?.homogenize("t3", deg)
        };
        Self::build([h(&p[0])?, h(&p[1])?, h(&p[2])?, h(&q)?], true)
    }

    /// Affine input `X_i = p_i / q_i`, brought to a common denominator.
    pub fn from_affine(pairs: [(Polynomial, Polynomial); 3]) -> Result<Self> {
        if pairs.iter().any(|(_, q)| q.is_zero()) {
            return Err(Error::Domain("zero denominator".into()));
        }
        let l = lcm(&lcm(&pairs[0].1, &pairs[1].1)?, &pairs[2].1)?;
        let lift = |(p, q): &(Polynomial, Polynomial)| -> Result<Polynomial> {
            p.checked_mul(&l.exact_divide(q)?)
        };
        Self::from_affine_shared([lift(&pairs[0])?, lift(&pairs[1])?, lift(&pairs[2])?], l)
    }

    pub fn coords(&self) -> &[Polynomial; 4] {
        &self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_affine(&self) -> bool {
        self.affine
    }

    /// `(p1, p2, p3)` and `p4` with `t3 = 1`, over `t1, t2`.
    pub fn affine_parts(&self) -> Result<([Polynomial; 3], Polynomial)> {
        let ring = rings::t_affine();
        let d = |x: &Polynomial| -> Result<Polynomial> { x.dehomogenize("t3")?.to_ring(&ring) };
        Ok(([d(&self.p[0])?, d(&self.p[1])?, d(&self.p[2])?], d(&self.p[3])?))
    }

    /// `F(p1, p2, p3, p4)` for `F` in a ring whose variables are `X1..X4`
    /// plus possibly `t1..t3`; the result lives in `Q[t1, t2, t3]`.
    pub fn compose(&self, f: &Polynomial) -> Result<Polynomial> {
        let names = ["X1", "X2", "X3", "X4"];
        let bindings = names.iter().zip(self.p.iter()).map(|(n, p)| (*n, p));
        f.substitute(bindings, &rings::t())
    }

    /// Evaluates the four coordinates at a point of `t1, t2, t3`.
    pub fn evaluate(&self, t: &[Rational; 3]) -> [Rational; 4] {
        [0, 1, 2, 3].map(|i| self.p[i].evaluate(t))
    }
}

impl fmt::Display for SurfaceParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {} : {} : {})", self.p[0], self.p[1], self.p[2], self.p[3])
    }
}

/// Lifts a polynomial in `X1, X2, X3` to a form of its own degree in
/// `X1..X4`. Polynomials already over `X1..X4` are returned unchanged.
pub fn to_projective_x(f: &Polynomial) -> Result<Polynomial> {
    to_projective_x_degree(f, f.degree())
}

/// As [`to_projective_x`], homogenizing to the given degree.
pub fn to_projective_x_degree(f: &Polynomial, degree: u32) -> Result<Polynomial> {
    let x = rings::x();
    if f.ring() == &x {
        return Ok(f.clone());
    }
    f.to_ring(&rings::x_affine())?.homogenize("X4", degree)?.to_ring(&x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixKind {
    InversionCandidate,
    ImplicitizationCandidate,
}

impl MatrixKind {
    pub fn name(self) -> &'static str {
        match self {
            MatrixKind::InversionCandidate => "inversion_candidate",
            MatrixKind::ImplicitizationCandidate => "implicitization_candidate",
        }
    }
}

/// A matrix in `X1..X4` whose rows are indexed by degree-`m` monomials in
/// `t1, t2, t3`. Column `j` stands for the moving surface
/// `sum_i M[i][j] * row_monomials[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElimMatrix {
    matrix: PolyMatrix,
    row_monomials: Vec<Monomial>,
    m: u32,
    marked_column: Option<usize>,
    kind: MatrixKind,
    erased: Option<(usize, Vec<Polynomial>)>,
    certified: bool,
}

impl ElimMatrix {
    pub fn new(
        matrix: PolyMatrix,
        row_monomials: Vec<Monomial>,
        kind: MatrixKind,
        marked_column: Option<usize>,
    ) -> Result<Self> {
        let matrix = matrix.to_ring(&rings::x())?;
        let d = row_monomials.len();
        if d == 0 || matrix.rows() != d {
            return Err(Error::Shape(format!("{} rows but {d} row monomials", matrix.rows())));
        }
        let m = row_monomials[0].total_degree();
        if row_monomials.iter().any(|a| a.nvars() != 3 || a.total_degree() != m) {
            return Err(Error::Degree(format!("row monomials must all have degree {m} in t1, t2, t3")));
        }
        let want = match kind {
            MatrixKind::InversionCandidate => d - 1,
            MatrixKind::ImplicitizationCandidate => d,
        };
        if matrix.cols() != want {
            return Err(Error::Shape(format!(
                "{} needs {d}x{want}, got {}x{}",
                kind.name(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        if let Some(c) = marked_column {
            if c >= matrix.cols() {
                return Err(Error::Shape(format!("marked column {c} out of range")));
            }
        }
        Ok(ElimMatrix { matrix, row_monomials, m, marked_column, kind, erased: None, certified: false })
    }

    /// Affine input: entries in `X1, X2, X3` and row monomials in `t1, t2`
    /// of degree at most `m`. Each column is homogenized with `X4` to its
    /// own top degree and each row monomial with `t3` to degree `m`.
    pub fn from_affine(
        matrix: PolyMatrix,
        row_monomials: Vec<Monomial>,
        kind: MatrixKind,
        marked_column: Option<usize>,
    ) -> Result<Self> {
        let matrix = matrix.to_ring(&rings::x_affine())?;
        let m = row_monomials.iter().map(Monomial::total_degree).max().unwrap_or(0);
        let rows = row_monomials
            .iter()
            .map(|a| {
                if a.nvars() != 2 {
                    return Err(Error::Degree("affine row monomials are in t1, t2".into()));
                }
                Ok(Monomial::new(vec![a.exp(0), a.exp(1), m - a.total_degree()]))
            })
            .collect::<Result<Vec<_>>>()?;
        let x = rings::x();
        let mut out = PolyMatrix::zeros(&x, matrix.rows(), matrix.cols());
        for j in 0..matrix.cols() {
            let deg = (0..matrix.rows()).map(|i| matrix.get(i, j).degree()).max().unwrap_or(0);
            for i in 0..matrix.rows() {
                out.set(i, j, to_projective_x_degree(matrix.get(i, j), deg)?)?;
            }
        }
        Self::new(out, rows, kind, marked_column)
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn row_monomials(&self) -> &[Monomial] {
        &self.row_monomials
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn marked_column(&self) -> Option<usize> {
        self.marked_column
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    /// Records that the construction route guarantees the determinant is a
    /// power of the implicit equation up to a constant.
    pub fn certify(mut self, certified: bool) -> Self {
        self.certified = certified;
        self
    }

    pub fn with_marked_column(mut self, column: usize) -> Result<Self> {
        if column >= self.matrix.cols() {
            return Err(Error::Shape(format!("marked column {column} out of range")));
        }
        self.marked_column = Some(column);
        Ok(self)
    }

    /// Index and entries of the column removed by [`strip_marked_column`].
    pub fn erased_column(&self) -> Option<(usize, &[Polynomial])> {
        self.erased.as_ref().map(|(j, c)| (*j, c.as_slice()))
    }

    /// Column `j` as a polynomial over `t1,t2,t3,X1..X4`.
    pub fn column_surface(&self, j: usize) -> Polynomial {
        let tx = rings::tx();
        let mut acc = Polynomial::zero(&tx);
        for (i, alpha) in self.row_monomials.iter().enumerate() {
            let entry = self.matrix.get(i, j).to_ring(&tx).expect("X ring embeds");
            let mut exps = alpha.exps().to_vec();
            exps.extend([0; 4]);
            acc = &acc + &entry.mul_monomial(&Monomial::new(exps), &Rational::from_integer(1.into()));
        }
        acc
    }

    /// Indices of the columns that do not vanish through `φ`.
    pub fn columns_not_following(&self, param: &SurfaceParam) -> Result<Vec<usize>> {
        let mut bad = Vec::new();
        for j in 0..self.matrix.cols() {
            if !verify::follows_parameterization(&self.column_surface(j), param)? {
                bad.push(j);
            }
        }
        Ok(bad)
    }
}

/// Row indices `(i1, i2, i3)` with `t1 * V[i3] = t3 * V[i1]` and
/// `t2 * V[i3] = t3 * V[i2]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BetaTriple {
    pub i1: usize,
    pub i2: usize,
    pub i3: usize,
}

impl BetaTriple {
    pub fn indices(&self) -> [usize; 3] {
        [self.i1, self.i2, self.i3]
    }

    pub fn is_valid_for(&self, rows: &[Monomial]) -> bool {
        let get = |i: usize| rows.get(i);
        match (get(self.i1), get(self.i2), get(self.i3)) {
            (Some(b1), Some(b2), Some(b3)) => {
                let t = |k: usize| Monomial::var(3, k);
                b3.nvars() == 3 && t(0).mul(b3) == t(2).mul(b1) && t(1).mul(b3) == t(2).mul(b2)
            }
            _ => false,
        }
    }
}

/// Every β-triple of the row index, in lexicographic order.
pub fn all_beta_triples(rows: &[Monomial]) -> Vec<BetaTriple> {
    let mut out = Vec::new();
    for (i3, b3) in rows.iter().enumerate() {
        if b3.nvars() != 3 || b3.exp(2) == 0 {
            continue;
        }
        let b1 = b3.with_exp(2, b3.exp(2) - 1).mul(&Monomial::var(3, 0));
        let b2 = b3.with_exp(2, b3.exp(2) - 1).mul(&Monomial::var(3, 1));
        let i1 = rows.iter().position(|r| *r == b1);
        let i2 = rows.iter().position(|r| *r == b2);
        if let (Some(i1), Some(i2)) = (i1, i2) {
            out.push(BetaTriple { i1, i2, i3 });
        }
    }
    out.sort();
    out
}

/// The lexicographically first β-triple.
pub fn find_beta_triple(rows: &[Monomial]) -> Result<BetaTriple> {
    let triple = all_beta_triples(rows).into_iter().next().ok_or(Error::NoBetaTriple)?;
    debug_assert!(triple.is_valid_for(rows));
    Ok(triple)
}

/// `(ψ1 : ψ2 : ψ3)` with `t_k = ψ_k` projectively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseMap {
    pub psi: [Polynomial; 3],
    pub beta: BetaTriple,
    pub certified: bool,
}

/// Inverse from the signed minors at a β-triple. Falls back to the other
/// β-triples when all three selected minors vanish.
pub fn invert_from_inversion_matrix(mat: &ElimMatrix, beta: BetaTriple) -> Result<InverseMap> {
    let minors = inversion_minors(mat)?;
    invert_with_minors(mat, &minors, beta)
}

fn inversion_minors(mat: &ElimMatrix) -> Result<SignedMinorVector> {
    if mat.kind != MatrixKind::InversionCandidate {
        return Err(Error::Shape("inversion needs a d x (d-1) inversion candidate".into()));
    }
    mat.matrix.signed_maximal_minors()
}

fn invert_with_minors(mat: &ElimMatrix, minors: &SignedMinorVector, beta: BetaTriple) -> Result<InverseMap> {
    if !beta.is_valid_for(&mat.row_monomials) {
        return Err(Error::NoBetaTriple);
    }
    let rest = all_beta_triples(&mat.row_monomials).into_iter().filter(|b| *b != beta);
    for b in std::iter::once(beta).chain(rest) {
        let psi = b.indices().map(|i| minors.get(i).clone());
        if psi.iter().any(|p| !p.is_zero()) {
            return Ok(InverseMap { psi, beta: b, certified: false });
        }
    }
    Err(Error::DegenerateMinors)
}

/// Inverts and certifies by composition. Columns must follow `φ`.
pub fn invert_and_verify(mat: &ElimMatrix, param: &SurfaceParam) -> Result<InverseMap> {
    if let Some(&column) = mat.columns_not_following(param)?.first() {
        return Err(Error::NotFollowing { column });
    }
    let beta = find_beta_triple(&mat.row_monomials)?;
    let mut inv = invert_from_inversion_matrix(mat, beta)?;
    inv.certified = verify::verify_inverse(param, &inv.psi)?;
    Ok(inv)
}

/// Removes the marked column (default: the first), keeping its entries for
/// the expansion identity.
pub fn strip_marked_column(mat: &ElimMatrix) -> Result<ElimMatrix> {
    if mat.kind != MatrixKind::ImplicitizationCandidate {
        return Err(Error::Shape("only implicitization candidates have a marked column".into()));
    }
    let j = mat.marked_column.unwrap_or(0);
    Ok(ElimMatrix {
        matrix: mat.matrix.delete(&[], &[j]),
        row_monomials: mat.row_monomials.clone(),
        m: mat.m,
        marked_column: None,
        kind: MatrixKind::InversionCandidate,
        erased: Some((j, mat.matrix.column(j))),
        certified: mat.certified,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Proper,
    NotProper,
    Inconclusive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Proper => "proper",
            Verdict::NotProper => "not_proper",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Evidence {
    GcdConstantAndCertifiedMatrix,
    CompositionVerified,
    GcdNonconstantWithCertifiedMatrix,
    Uncertified,
}

impl Evidence {
    pub fn name(self) -> &'static str {
        match self {
            Evidence::GcdConstantAndCertifiedMatrix => "gcd_constant_and_certified_matrix",
            Evidence::CompositionVerified => "composition_verified",
            Evidence::GcdNonconstantWithCertifiedMatrix => "gcd_nonconstant_with_certified_matrix",
            Evidence::Uncertified => "uncertified",
        }
    }
}

#[derive(Clone, Debug)]
pub struct PropernessReport {
    pub verdict: Verdict,
    pub evidence: Evidence,
    pub gcd_of_minors: Polynomial,
    pub determinant: Polynomial,
    /// The stripped matrix whose minors were used.
    pub stripped: ElimMatrix,
    pub minors: SignedMinorVector,
    pub inverse: Option<InverseMap>,
    /// `det = (-1)^j * sum(c_i * Δ_i)` for the erased column `j`.
    pub expansion_identity_holds: bool,
    pub gcd_divides_determinant: bool,
    pub notes: Vec<String>,
}

const IMAGE_POINT_ATTEMPTS: usize = 2;

/// True if the matrix has full column rank at some random image point.
/// Minors vanishing on the whole image cannot give an inverse, so other
/// marks failing this test are skipped without computing their minors.
fn full_rank_on_image(m: &PolyMatrix, param: &SurfaceParam) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(verify::DEFAULT_SEED);
    (0..IMAGE_POINT_ATTEMPTS).any(|_| {
        let t = [0, 1, 2].map(|_| Rational::from_integer(rng.gen_range(-50i64..=50).into()));
        m.rank_at(&param.evaluate(&t)) == m.cols()
    })
}

/// Divides out the largest power of `X4` dividing `p`. Affine inputs are
/// lifted column by column with `X4`, which can leave such factors; they
/// lie on the chart boundary, which an affine image never fills.
pub fn without_x4_powers(p: &Polynomial) -> Polynomial {
    let k = p.terms().map(|(m, _)| m.exp(3)).min().unwrap_or(0);
    if k == 0 {
        return p.clone();
    }
    let mut exps = vec![0; p.ring().len()];
    exps[3] = k;
    p.exact_divide(&Polynomial::monomial(p.ring(), Monomial::new(exps), Rational::from_integer(1.into())))
        .expect("monomial factor divides")
}

/// Gcd-of-minors properness test on an implicitization candidate.
///
/// A verdict of `proper` needs a composition-verified inverse, or a unit
/// gcd on a certified matrix. `not_proper` needs a nonconstant gcd on a
/// certified matrix. Anything else is `inconclusive`. For affine inputs the
/// gcd is taken without powers of `X4`.
pub fn surface_properness(mat: &ElimMatrix, param: &SurfaceParam) -> Result<PropernessReport> {
    if mat.kind != MatrixKind::ImplicitizationCandidate {
        return Err(Error::Shape("properness needs a square implicitization candidate".into()));
    }
    let determinant = mat.matrix.det_fraction_free()?;
    if determinant.is_zero() {
        return Err(Error::SingularMatrix("determinant is identically zero".into()));
    }
    let marked = mat.marked_column.unwrap_or(0);
    let bad = mat.columns_not_following(param)?;
    if let Some(&column) = bad.iter().find(|&&c| c != marked) {
        return Err(Error::NotFollowing { column });
    }
    let stripped = strip_marked_column(mat)?;
    let minors = stripped.matrix.signed_maximal_minors()?;
    let (j, erased) = stripped.erased_column().expect("just stripped");
    let expansion_identity_holds = minors.expand_along(erased, j)? == determinant;
    let mut gcd_of_minors = gcd_all(minors.minors())?;
    if param.is_affine() {
        gcd_of_minors = without_x4_powers(&gcd_of_minors);
    }
    let gcd_divides_determinant = determinant.is_divisible_by(&gcd_of_minors);
    let mut notes = Vec::new();

    // Every column but the marked one follows φ; if the marked one does too,
    // any column may serve as the mark when the first choice degenerates.
    let mut marks = vec![marked];
    if bad.is_empty() {
        marks.extend((0..mat.matrix.cols()).filter(|&c| c != marked));
    }
    let mut inverse = None;
    for (k, &mark) in marks.iter().enumerate() {
        let (cand, cand_minors) = if k == 0 {
            (stripped.clone(), minors.clone())
        } else {
            let s = strip_marked_column(&mat.clone().with_marked_column(mark)?)?;
            if !full_rank_on_image(&s.matrix, param) {
                continue;
            }
            let ms = s.matrix.signed_maximal_minors()?;
            (s, ms)
        };
        let Ok(beta) = find_beta_triple(&cand.row_monomials) else {
            notes.push("no beta triple among the row monomials".into());
            break;
        };
        match invert_with_minors(&cand, &cand_minors, beta) {
            Ok(mut inv) => {
                inv.certified = verify::verify_inverse(param, &inv.psi)?;
                if inv.certified {
                    if k > 0 {
                        notes.push(format!("inverse taken with column {mark} marked"));
                    }
                    inverse = Some(inv);
                    break;
                }
                if k == 0 {
                    inverse = Some(inv);
                }
            }
            Err(Error::DegenerateMinors) => {
                notes.push(format!("all beta-triple minors vanish with column {mark} marked"));
            }
            Err(e) => return Err(e),
        }
    }

    let composed = inverse.as_ref().is_some_and(|i| i.certified);
    let unit = gcd_of_minors.is_unit();
    let (verdict, evidence) = if composed {
        (Verdict::Proper, Evidence::CompositionVerified)
    } else if unit && mat.certified {
        (Verdict::Proper, Evidence::GcdConstantAndCertifiedMatrix)
    } else if !unit && mat.certified {
        notes.push("determinant is c*F^delta with delta > 1".into());
        (Verdict::NotProper, Evidence::GcdNonconstantWithCertifiedMatrix)
    } else {
        if !unit {
            notes.push("gcd of minors is nonconstant but the matrix is not certified".into());
        }
        (Verdict::Inconclusive, Evidence::Uncertified)
    };
    if composed && !unit {
        notes.push("composition verified although the gcd of minors is nonconstant".into());
    }
    Ok(PropernessReport {
        verdict,
        evidence,
        gcd_of_minors,
        determinant,
        stripped,
        minors,
        inverse,
        expansion_identity_holds,
        gcd_divides_determinant,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{monomials_of_degree, parse};

    fn t(s: &str) -> Polynomial {
        parse(s, &rings::t()).unwrap()
    }

    fn x(s: &str) -> Polynomial {
        parse(s, &rings::x()).unwrap()
    }

    fn cubic() -> SurfaceParam {
        SurfaceParam::new([
            t("t1^2*t2+2*t2^3+t1^2*t3+4*t1*t2*t3+4*t2^2*t3+3*t1*t3^2+2*t2*t3^2+2*t3^3"),
            t("-t1^3-2*t1*t2^2-2*t1^2*t3-t1*t2*t3+t1*t3^2-2*t2*t3^2+2*t3^3"),
            t("-t1^3-2*t1^2*t2-3*t1*t2^2-3*t1^2*t3-3*t1*t2*t3+2*t2^2*t3-2*t1*t3^2-2*t2*t3^2"),
            t("t1^3+t1^2*t2+t2^3+t1^2*t3+t2^2*t3-t1*t3^2-t2*t3^2-t3^3"),
        ])
        .unwrap()
    }

    #[test]
    fn beta_triples() {
        let v = monomials_of_degree(3, 1);
        assert_eq!(find_beta_triple(&v).unwrap(), BetaTriple { i1: 0, i2: 1, i3: 2 });
        let v = vec![Monomial::new(vec![2, 0, 0]), Monomial::new(vec![1, 1, 0]), Monomial::new(vec![0, 2, 0])];
        assert_eq!(find_beta_triple(&v), Err(Error::NoBetaTriple));
    }

    #[test]
    fn affine_rows_pick_t1_t2_one() {
        let rows: Vec<Monomial> = crate::exactpoly::monomials_up_to_degree(2, 2);
        let mat = PolyMatrix::zeros(&rings::x_affine(), 6, 6);
        let e = ElimMatrix::from_affine(mat, rows, MatrixKind::ImplicitizationCandidate, None).unwrap();
        let b = find_beta_triple(e.row_monomials()).unwrap();
        assert_eq!(b, BetaTriple { i1: 1, i2: 2, i3: 0 });
    }

    #[test]
    fn parameterization_validation() {
        let err = SurfaceParam::new([t("t1^3"), t("t2^2"), t("t3^2"), t("t1*t2")]).unwrap_err();
        assert!(matches!(err, Error::Degree(_)));
        let p = SurfaceParam::new([t("t1^2"), t("t1*t2"), t("t1*t3"), t("t1^2+t1*t2")]).unwrap();
        assert_eq!(p.degree(), 1);
    }

    #[test]
    fn cubic_proper_through_moving_planes() {
        let param = cubic();
        let rows = monomials_of_degree(3, 1);
        // columns M1, M2, M3 over rows t1, t2, t3
        let cols = [
            ["X3-X2", "-X1+2*X4", "X1-X2"],
            ["-X2-X4", "X3-2*X2", "-X2-2*X4"],
            ["X1", "X2", "X3"],
        ];
        let mut m = PolyMatrix::zeros(&rings::x(), 3, 3);
        for (j, c) in cols.iter().enumerate() {
            for (i, e) in c.iter().enumerate() {
                m.set(i, j, x(e)).unwrap();
            }
        }
        let e = ElimMatrix::new(m, rows, MatrixKind::ImplicitizationCandidate, Some(0)).unwrap();
        let bad = e.columns_not_following(&param).unwrap();
        assert!(bad.is_empty(), "columns {bad:?} do not follow");
        let r = surface_properness(&e, &param).unwrap();
        assert_eq!(r.verdict, Verdict::Proper);
        assert_eq!(r.evidence, Evidence::CompositionVerified);
        assert!(r.expansion_identity_holds);
        assert!(r.gcd_divides_determinant);
        assert!(verify::verify_implicit(&r.determinant, &param).unwrap());
    }
}
