//! Results in a fixed shape, printed as text or as one JSON document.
//!
//! Every polynomial is encoded in the canonical text grammar, so a
//! structured report round-trips through the parser bit for bit.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use ratinv::exactpoly::{print, Monomial, Polynomial, Rational, Ring};
use ratinv::polymat::PolyMatrix;
use serde::Serialize;

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub command: String,
    /// `sylvester`, `moving_surfaces`, `dixon`, `matrix` or `direct`.
    pub route: String,
    /// `proper`, `not_proper`, `inconclusive`, `verified`, `rejected` or
    /// `assembled`.
    pub verdict: String,
    pub evidence: Option<String>,
    pub input: InputDoc,
    pub gcd_of_minors: Option<String>,
    pub determinant: Option<String>,
    pub implicit_equation: Option<String>,
    pub matrices: Vec<MatrixDoc>,
    pub minors: Vec<String>,
    pub inverse: Option<InverseDoc>,
    pub moving_surfaces: Vec<SurfaceDoc>,
    pub certification: BTreeMap<String, bool>,
    pub notes: Vec<String>,
    /// Wall-clock milliseconds, present only when timing was requested.
    pub timing_ms: Option<u64>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct InputDoc {
    /// `curve` or `surface`.
    pub kind: String,
    /// `projective` or `affine` for surfaces; absent for curves.
    pub convention: Option<String>,
    /// Curve: `p1, q1, p2, q2` after reduction. Surface: `p1..p4`, homogenized.
    pub parameterization: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixDoc {
    pub name: String,
    pub row_monomials: Vec<String>,
    pub marked_column: Option<usize>,
    pub entries: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InverseDoc {
    /// Curve: `[num, den]` with `t = num / den`. Surface: `ψ1, ψ2, ψ3` with
    /// `(t1 : t2 : t3) = (ψ1 : ψ2 : ψ3)`.
    pub components: Vec<String>,
    /// Surface: row indices of the β-triple.
    pub beta: Option<[usize; 3]>,
    /// Curve: `i` with `t = Δ_i / Δ_(i+1)`.
    pub chosen_index: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurfaceDoc {
    pub m: u32,
    pub n: u32,
    pub polynomial: String,
    pub follows_phi: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorDoc {
    pub error: ErrorBody,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorBody {
    pub name: String,
    pub message: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
}

pub fn poly(p: &Polynomial) -> String {
    print(p)
}

pub fn polys(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(print).collect()
}

pub fn monomial(ring: &Ring, m: &Monomial) -> String {
    print(&Polynomial::monomial(ring, m.clone(), Rational::from_integer(1.into())))
}

pub fn matrix_doc(name: &str, m: &PolyMatrix, rows: Vec<String>, marked: Option<usize>) -> MatrixDoc {
    MatrixDoc {
        name: name.to_string(),
        row_monomials: rows,
        marked_column: marked,
        entries: (0..m.rows()).map(|i| polys(m.row(i))).collect(),
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        writeln!(w, "command: {}", self.command).unwrap();
        writeln!(w, "route: {}", self.route).unwrap();
        writeln!(w, "verdict: {}", self.verdict).unwrap();
        if let Some(e) = &self.evidence {
            writeln!(w, "evidence: {e}").unwrap();
        }
        let conv = self.input.convention.as_deref().map(|c| format!(" ({c})")).unwrap_or_default();
        writeln!(w, "input: {}{conv}", self.input.kind).unwrap();
        for (i, p) in self.input.parameterization.iter().enumerate() {
            writeln!(w, "  [{i}] {p}").unwrap();
        }
        for s in &self.moving_surfaces {
            let tag = if s.follows_phi { "" } else { "  (does not follow)" };
            writeln!(w, "moving surface ({};{}): {}{tag}", s.m, s.n, s.polynomial).unwrap();
        }
        for m in &self.matrices {
            let marked = m.marked_column.map(|c| format!(", marked column {c}")).unwrap_or_default();
            let cols = m.entries.first().map_or(0, Vec::len);
            writeln!(w, "matrix {} ({}x{cols}{marked}):", m.name, m.entries.len()).unwrap();
            for (label, row) in m.row_monomials.iter().zip(&m.entries) {
                writeln!(w, "  {label:>8} | {}", row.join("  ;  ")).unwrap();
            }
        }
        for (i, d) in self.minors.iter().enumerate() {
            writeln!(w, "minor[{i}]: {d}").unwrap();
        }
        if let Some(g) = &self.gcd_of_minors {
            writeln!(w, "gcd of minors: {g}").unwrap();
        }
        if let Some(d) = &self.determinant {
            writeln!(w, "determinant: {d}").unwrap();
        }
        if let Some(f) = &self.implicit_equation {
            writeln!(w, "implicit equation: {f}").unwrap();
        }
        if let Some(inv) = &self.inverse {
            if inv.components.len() == 2 {
                writeln!(w, "inverse: t = ({}) / ({})", inv.components[0], inv.components[1]).unwrap();
            } else {
                writeln!(w, "inverse: (t1 : t2 : t3) = ({})", inv.components.join(" : ")).unwrap();
            }
            if let Some(b) = inv.beta {
                writeln!(w, "beta: {}, {}, {}", b[0], b[1], b[2]).unwrap();
            }
        }
        for (k, v) in &self.certification {
            writeln!(w, "check {k}: {}", if *v { "pass" } else { "fail" }).unwrap();
        }
        for n in &self.notes {
            writeln!(w, "note: {n}").unwrap();
        }
        if let Some(t) = self.timing_ms {
            writeln!(w, "time: {t} ms").unwrap();
        }
        out
    }
}
