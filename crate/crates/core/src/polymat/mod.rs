//! Matrices of polynomials: determinants, minors and signed minor vectors,
//! plus rational nullspaces for the scalar systems behind moving surfaces.

mod fast;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactpoly::{Polynomial, Rational, Ring};

/// Dense row-major matrix over one polynomial ring.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(ring: &Ring, rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(e) = entries.iter().find(|e| e.ring() != ring) {
            return Err(Error::Ring(format!("entry in {} but matrix over {ring}", e.ring())));
        }
        Ok(PolyMatrix { ring: ring.clone(), rows, cols, entries })
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::new(ring, r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Self {
        PolyMatrix { ring: ring.clone(), rows, cols, entries: vec![Polynomial::zero(ring); rows * cols] }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.entries[i * n + i] = Polynomial::one(ring);
        }
        m
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Polynomial) -> Result<()> {
        if value.ring() != &self.ring {
            return Err(Error::Ring(format!("entry in {} but matrix over {}", value.ring(), self.ring)));
        }
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        self.entries[i * self.cols + j] = value;
        Ok(())
    }

    pub fn row(&self, i: usize) -> &[Polynomial] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Polynomial>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> PolyMatrix {
        let entries =
            (0..self.cols).flat_map(|j| (0..self.rows).map(move |i| (i, j))).map(|(i, j)| self.get(i, j).clone());
        PolyMatrix { ring: self.ring.clone(), rows: self.cols, cols: self.rows, entries: entries.collect() }
    }

    /// The submatrix on the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let entries = rows.iter().flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()));
        PolyMatrix { ring: self.ring.clone(), rows: rows.len(), cols: cols.len(), entries: entries.collect() }
    }

    /// The matrix with the listed rows and columns removed.
    pub fn delete(&self, delete_rows: &[usize], delete_cols: &[usize]) -> PolyMatrix {
        let rows: Vec<usize> = (0..self.rows).filter(|i| !delete_rows.contains(i)).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|j| !delete_cols.contains(j)).collect();
        self.submatrix(&rows, &cols)
    }

    /// Moves every entry into `target`, matching variables by name.
    pub fn to_ring(&self, target: &Ring) -> Result<PolyMatrix> {
        let entries = self.entries.iter().map(|e| e.to_ring(target)).collect::<Result<_>>()?;
        Ok(PolyMatrix { ring: target.clone(), rows: self.rows, cols: self.cols, entries })
    }

    /// Applies `f` to every entry; the result ring is taken from `ring`.
    pub fn map<F>(&self, ring: &Ring, f: F) -> Result<PolyMatrix>
    where
        F: Fn(&Polynomial) -> Result<Polynomial>,
    {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>>>()?;
        PolyMatrix::new(ring, self.rows, self.cols, entries)
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.ring != other.ring {
            return Err(Error::Ring(format!("{} vs {}", self.ring, other.ring)));
        }
        let mut out = PolyMatrix::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..self.cols {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
                out.entries[i * other.cols + j] = acc;
            }
        }
        Ok(out)
    }

    /// Entries evaluated at a point of the ring.
    pub fn evaluate(&self, point: &[Rational]) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|p| p.evaluate(point)).collect()).collect()
    }

    /// Rank of the scalar matrix obtained at `point`; a lower bound for the
    /// rank over the fraction field.
    pub fn rank_at(&self, point: &[Rational]) -> usize {
        self.cols - nullspace_rational(&self.evaluate(point), self.cols).len()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    ///
    /// Pivots are chosen among the remaining rows by fewest terms, then
    /// smallest index. A column without any nonzero pivot candidate means
    /// the determinant is zero, so no fallback expansion is needed.
    pub fn det_fraction_free(&self) -> Result<Polynomial> {
        if !self.is_square() {
            return Err(Error::Shape(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let rows: Vec<&[Polynomial]> = (0..self.rows).map(|i| self.row(i)).collect();
        if let Some(int) = fast::to_int_rows(&rows, &self.ring) {
            let scale: BigInt = int.row_scales.iter().product();
            if let Some(d) = fast::det(int.rows) {
                return Ok(fast::to_poly(&d, &self.ring, &Rational::new(BigInt::one(), scale)));
            }
        }
        self.det_generic()
    }

    fn det_generic(&self) -> Result<Polynomial> {
        let n = self.rows;
        if n == 0 {
            return Ok(Polynomial::one(&self.ring));
        }
        let mut a: Vec<Vec<Polynomial>> = self.to_rows();
        let mut prev = Polynomial::one(&self.ring);
        let mut negate = false;
        for k in 0..n - 1 {
            let pivot = (k..n)
                .filter(|&i| !a[i][k].is_zero())
                .min_by_key(|&i| (a[i][k].num_terms(), i));
            let Some(p) = pivot else {
                return Ok(Polynomial::zero(&self.ring));
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            let (head, tail) = a.split_at_mut(k + 1);
            let pivot_row = &head[k];
            tail.par_iter_mut().try_for_each(|row| -> Result<()> {
                for j in k + 1..n {
                    let num = &(&row[j] * &pivot_row[k]) - &(&row[k] * &pivot_row[j]);
                    row[j] = num.exact_divide(&prev)?;
                }
                row[k] = Polynomial::zero(&self.ring);
                Ok(())
            })?;
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }

    /// Unsigned determinant of the matrix with the given rows and columns
    /// removed.
    pub fn minor(&self, delete_rows: &[usize], delete_cols: &[usize]) -> Result<Polynomial> {
        let sub = self.delete(delete_rows, delete_cols);
        if !sub.is_square() {
            return Err(Error::Shape(format!(
                "deleting {} rows and {} columns of a {}x{} matrix leaves {}x{}",
                delete_rows.len(),
                delete_cols.len(),
                self.rows,
                self.cols,
                sub.rows,
                sub.cols
            )));
        }
        sub.det_fraction_free()
    }

    /// Signed maximal minors of a `d x (d-1)` matrix:
    /// `minors[i] = (-1)^i * det(self without row i)` with 0-based `i`.
    pub fn signed_maximal_minors(&self) -> Result<SignedMinorVector> {
        if self.rows < 2 || self.cols + 1 != self.rows {
            return Err(Error::Shape(format!(
                "signed maximal minors need a d x (d-1) matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        if let Some(minors) = self.minors_by_kernel() {
            return Ok(SignedMinorVector { minors });
        }
        let minors = (0..self.rows)
            .into_par_iter()
            .map(|i| {
                let d = self.delete(&[i], &[]).det_fraction_free()?;
                Ok(if i % 2 == 1 { -d } else { d })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SignedMinorVector { minors })
    }

    /// All signed maximal minors from one fraction-free Gauss–Jordan pass
    /// over the transpose. The kernel generator it yields differs from the
    /// minor vector by a nonzero constant, fixed by evaluating one minor at
    /// a random point. `None` sends the caller to the per-minor path.
    fn minors_by_kernel(&self) -> Option<Vec<Polynomial>> {
        let cols: Vec<Vec<Polynomial>> = (0..self.cols).map(|j| self.column(j)).collect();
        let refs: Vec<&[Polynomial]> = cols.iter().map(Vec::as_slice).collect();
        let int = fast::to_int_rows(&refs, &self.ring)?;
        let v = fast::kernel(int.rows)?;
        if v.is_empty() {
            return Some(vec![Polynomial::zero(&self.ring); self.rows]);
        }
        let anchor = v.iter().position(|p| !p.is_zero())?;
        let nvars = self.ring.len();
        let mut rng = ChaCha8Rng::seed_from_u64(KERNEL_SCALE_SEED);
        for _ in 0..KERNEL_SCALE_ATTEMPTS {
            let point: Vec<BigInt> = (0..nvars).map(|_| BigInt::from(rng.gen_range(-1000i64..=1000))).collect();
            let at_anchor = fast::evaluate(&v[anchor], &point, nvars);
            if at_anchor.is_zero() {
                continue;
            }
            let rpoint: Vec<Rational> = point.iter().cloned().map(Rational::from_integer).collect();
            let scalar: Vec<Vec<Rational>> = (0..self.rows)
                .filter(|&i| i != anchor)
                .map(|i| self.row(i).iter().map(|p| p.evaluate(&rpoint)).collect())
                .collect();
            let mut minor = fast::scalar_det(scalar);
            if anchor % 2 == 1 {
                minor = -minor;
            }
            if minor.is_zero() {
                return None;
            }
            let lambda = minor / Rational::from_integer(at_anchor);
            return Some(fast::to_polys(&v, &self.ring, &vec![lambda; v.len()]));
        }
        None
    }
}

const KERNEL_SCALE_SEED: u64 = 0x6b65_726e;
const KERNEL_SCALE_ATTEMPTS: usize = 16;

/// The kernel generator `(Δ_1, ..., Δ_d)` of the transpose of a
/// `d x (d-1)` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedMinorVector {
    minors: Vec<Polynomial>,
}

impl SignedMinorVector {
    pub fn minors(&self) -> &[Polynomial] {
        &self.minors
    }

    pub fn get(&self, i: usize) -> &Polynomial {
        &self.minors[i]
    }

    pub fn len(&self) -> usize {
        self.minors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.minors.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.minors.iter().all(Polynomial::is_zero)
    }

    /// `transpose(source) * minors == 0`, checked exactly.
    pub fn kernel_identity_holds(&self, source: &PolyMatrix) -> bool {
        if source.rows() != self.minors.len() {
            return false;
        }
        (0..source.cols()).all(|j| {
            let mut acc = Polynomial::zero(source.ring());
            for i in 0..source.rows() {
                acc = &acc + &(source.get(i, j) * &self.minors[i]);
            }
            acc.is_zero()
        })
    }

    /// Laplace expansion along an erased column: with `column` the entries
    /// removed at 0-based position `index` of a square matrix, returns
    /// `(-1)^index * sum(column[i] * minors[i])`, which is its determinant.
    pub fn expand_along(&self, column: &[Polynomial], index: usize) -> Result<Polynomial> {
        if column.len() != self.minors.len() {
            return Err(Error::Shape(format!(
                "column of length {} against {} minors",
                column.len(),
                self.minors.len()
            )));
        }
        let ring = self.minors[0].ring();
        let mut acc = Polynomial::zero(ring);
        for (c, d) in column.iter().zip(&self.minors) {
            acc = acc.checked_add(&c.checked_mul(d)?)?;
        }
        Ok(if index % 2 == 1 { -acc } else { acc })
    }

    pub fn into_vec(self) -> Vec<Polynomial> {
        self.minors
    }
}

/// True if `a` and `b` are equal up to one nonzero rational factor shared
/// by every entry.
pub fn equal_up_to_unit(a: &[Polynomial], b: &[Polynomial]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(k) = a.iter().position(|p| !p.is_zero()) else {
        return b.iter().all(Polynomial::is_zero);
    };
    if b[k].is_zero() {
        return false;
    }
    let factor = b[k].leading_coefficient() / a[k].leading_coefficient();
    a.iter().zip(b).all(|(x, y)| &x.scale(&factor) == y)
}

/// Basis of the right nullspace of a rational matrix with `ncols` columns.
///
/// The matrix is brought to reduced row echelon form, taking the leftmost
/// available pivot column and the first row holding a nonzero entry in it.
/// Each basis vector has a 1 at its free column and 0 at the other free
/// columns; vectors are listed by increasing free column.
pub fn nullspace_rational(matrix: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut a: Vec<Vec<Rational>> = matrix.to_vec();
    debug_assert!(a.iter().all(|r| r.len() == ncols));
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); ncols];
            v[free] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][free].clone();
            }
            v
        })
        .collect()
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        let widths: Vec<usize> = (0..self.cols)
            .map(|j| (0..self.rows).map(|i| cells[i * self.cols + j].chars().count()).max().unwrap_or(0))
            .collect();
        for i in 0..self.rows {
            f.write_str("[ ")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str("  ")?;
                }
                write!(f, "{:<w$}", cells[i * self.cols + j], w = widths[j])?;
            }
            f.write_str(" ]")?;
            if i + 1 < self.rows {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {}", self.rows, self.cols, self.ring)?;
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{parse, rat, ratio, rings};

    fn mat(ring: &Ring, rows: &[&[&str]]) -> PolyMatrix {
        let rows = rows.iter().map(|r| r.iter().map(|s| parse(s, ring).unwrap()).collect()).collect();
        PolyMatrix::from_rows(ring, rows).unwrap()
    }

    #[test]
    fn identity_det() {
        let r = Ring::new(["x"]);
        assert!(PolyMatrix::identity(&r, 4).det_fraction_free().unwrap().is_unit());
    }

    #[test]
    fn circle_sylvester_det() {
        let r = Ring::new(["x", "y"]);
        let s = mat(
            &r,
            &[
                &["-x", "0", "-1-y", "0"],
                &["2", "-x", "0", "-1-y"],
                &["-x", "2", "1-y", "0"],
                &["0", "-x", "0", "1-y"],
            ],
        );
        assert_eq!(s.det_fraction_free().unwrap(), parse("4*x^2+4*y^2-4", &r).unwrap());
    }

    #[test]
    fn zero_pivot_column_gives_zero() {
        let r = Ring::new(["x"]);
        let m = mat(&r, &[&["0", "x"], &["0", "1"]]);
        assert!(m.det_fraction_free().unwrap().is_zero());
        let m = mat(&r, &[&["0", "x"], &["1", "1"]]);
        assert_eq!(m.det_fraction_free().unwrap(), parse("-x", &r).unwrap());
    }

    #[test]
    fn shapes_are_checked() {
        let r = Ring::new(["x"]);
        let m = PolyMatrix::zeros(&r, 2, 3);
        assert!(matches!(m.det_fraction_free(), Err(Error::Shape(_))));
        assert!(matches!(m.signed_maximal_minors(), Err(Error::Shape(_))));
        assert!(matches!(m.minor(&[0], &[]), Err(Error::Shape(_))));
        assert!(matches!(PolyMatrix::new(&r, 2, 2, vec![]), Err(Error::Shape(_))));
    }

    #[test]
    fn minor_of_one_by_one() {
        let r = Ring::new(["x"]);
        let m = mat(&r, &[&["x+2"]]);
        assert_eq!(m.minor(&[], &[]).unwrap(), parse("x+2", &r).unwrap());
    }

    #[test]
    fn circle_minors_and_kernel() {
        let r = Ring::new(["x", "y"]);
        let m = mat(&r, &[&["-x", "0", "-1-y"], &["2", "-x", "0"], &["-x", "2", "1-y"], &["0", "-x", "0"]]);
        let d = m.signed_maximal_minors().unwrap();
        assert!(d.kernel_identity_holds(&m));
        let expect: Vec<Polynomial> = ["2*x*(y-1)", "-2*x^2", "-2*x*(y+1)", "2*x^2-4*(y+1)"]
            .iter()
            .map(|s| parse(s, &r).unwrap())
            .collect();
        assert!(equal_up_to_unit(d.minors(), &expect));
    }

    #[test]
    fn nullspace_small() {
        let m = vec![vec![rat(1), rat(0), rat(-1)], vec![rat(0), rat(1), rat(-1)]];
        assert_eq!(nullspace_rational(&m, 3), vec![vec![rat(1), rat(1), rat(1)]]);
        let z = vec![vec![rat(0); 3]; 3];
        assert_eq!(nullspace_rational(&z, 3).len(), 3);
        let m = vec![vec![rat(2), rat(1)]];
        assert_eq!(nullspace_rational(&m, 2), vec![vec![ratio(-1, 2), rat(1)]]);
    }

    #[test]
    fn display_is_aligned() {
        let r = Ring::new(["x"]);
        let m = mat(&r, &[&["x", "10"], &["-x^2", "1"]]);
        assert_eq!(m.to_string(), "[ x     10 ]\n[ -x^2  1  ]");
    }

    fn generic_minors(m: &PolyMatrix) -> Vec<Polynomial> {
        (0..m.rows())
            .map(|i| {
                let d = m.delete(&[i], &[]).det_generic().unwrap();
                if i % 2 == 1 {
                    -d
                } else {
                    d
                }
            })
            .collect()
    }

    #[test]
    fn integer_kernel_agrees_with_generic_path() {
        let r = rings::x();
        let m = mat(
            &r,
            &[
                &["X1 + 1/2*X2", "X3", "0"],
                &["X2 - X4", "2/3*X1^2", "X4"],
                &["X3", "X1 - X2", "X2*X3 - 1/5"],
                &["7", "X4^2", "X1"],
            ],
        );
        let minors = m.signed_maximal_minors().unwrap();
        assert_eq!(minors.minors(), generic_minors(&m).as_slice());
        assert!(minors.kernel_identity_holds(&m));
        let sq = m.delete(&[2], &[]);
        assert_eq!(sq.det_fraction_free().unwrap(), sq.det_generic().unwrap());
    }

    #[test]
    fn rank_deficient_minors_vanish() {
        let r = rings::x();
        let m = mat(&r, &[&["X1", "2*X1"], &["X2", "2*X2"], &["X3", "2*X3"]]);
        assert!(m.signed_maximal_minors().unwrap().is_zero());
    }
}
