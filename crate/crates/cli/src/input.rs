//! Input files: line-oriented `key: value` pairs.
//!
//! A line may carry several pairs (`p1: t  q1: 1+t^2`); a key is an
//! identifier directly followed by `:`, which never occurs inside a
//! polynomial. `#` starts a comment. Lists (row monomials, matrix rows,
//! beta) are comma separated.

use std::collections::BTreeMap;

use ratinv::curveinv::PlaneCurveParam;
use ratinv::error::Error;
use ratinv::exactpoly::{parse_at, rings, Monomial, Polynomial, Ring};
use ratinv::polymat::PolyMatrix;
use ratinv::surfinv::{BetaTriple, ElimMatrix, MatrixKind, SurfaceParam};
use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum InputError {
    #[error("{line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error(transparent)]
    Core(#[from] Error),
}

impl InputError {
    pub fn qualified_name(&self) -> &'static str {
        match self {
            InputError::Syntax { .. } => "cli::SyntaxError",
            InputError::Core(e) => e.qualified_name(),
        }
    }

    /// Line and column, when the error points into the file.
    pub fn position(&self) -> Option<(usize, usize)> {
        match self {
            InputError::Syntax { line, column, .. } => Some((*line, *column)),
            InputError::Core(Error::Parse(p)) => Some((p.line, p.column)),
            InputError::Core(_) => None,
        }
    }
}

type Result<T> = std::result::Result<T, InputError>;

/// One `key: value` occurrence. Columns are 1-based.
#[derive(Clone, Debug)]
struct Field {
    value: String,
    line: usize,
    key_column: usize,
    value_column: usize,
}

impl Field {
    fn error(&self, message: impl Into<String>) -> InputError {
        InputError::Syntax { line: self.line, column: self.key_column, message: message.into() }
    }

    fn poly(&self, ring: &Ring) -> Result<Polynomial> {
        parse_at(&self.value, ring, self.line, self.value_column - 1).map_err(|e| InputError::Core(e.into()))
    }

    /// Comma-separated items with their 0-based starting columns.
    fn items(&self) -> Vec<(String, usize)> {
        let mut out = Vec::new();
        let mut start = 0;
        for piece in self.value.split(',') {
            let lead = piece.len() - piece.trim_start().len();
            out.push((piece.trim().to_string(), self.value_column - 1 + start + lead));
            start += piece.len() + 1;
        }
        out
    }

    fn poly_list(&self, ring: &Ring) -> Result<Vec<Polynomial>> {
        self.items()
            .into_iter()
            .map(|(s, col)| parse_at(&s, ring, self.line, col).map_err(|e| InputError::Core(e.into())))
            .collect()
    }
}

const KEYS: &[&str] = &[
    "kind", "convention", "p1", "p2", "p3", "p4", "q", "q1", "q2", "q3", "inv_num", "inv_den", "psi1", "psi2",
    "psi3", "implicit", "row_monomials", "row", "beta",
];

/// Splits the file into fields, rejecting unknown and repeated keys.
fn fields(src: &str) -> Result<BTreeMap<String, Vec<Field>>> {
    let mut out: BTreeMap<String, Vec<Field>> = BTreeMap::new();
    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        let text: Vec<char> = raw.split('#').next().unwrap_or("").chars().collect();
        let keys = key_spans(&text);
        let first = text.iter().position(|c| !c.is_whitespace());
        let Some(first) = first else { continue };
        if keys.first().map(|k| k.0) != Some(first) {
            return Err(InputError::Syntax { line, column: first + 1, message: "expected `key: value`".into() });
        }
        for (n, &(start, colon)) in keys.iter().enumerate() {
            let key: String = text[start..colon].iter().collect();
            let end = keys.get(n + 1).map_or(text.len(), |k| k.0);
            let raw_value: String = text[colon + 1..end].iter().collect();
            let lead = raw_value.chars().take_while(|c| c.is_whitespace()).count();
            let field = Field {
                value: raw_value.trim().to_string(),
                line,
                key_column: start + 1,
                value_column: colon + 2 + lead,
            };
            if !KEYS.contains(&key.as_str()) {
                return Err(field.error(format!("unknown key `{key}`")));
            }
            if field.value.is_empty() {
                return Err(field.error(format!("`{key}` has no value")));
            }
            let slot = out.entry(key.clone()).or_default();
            if key != "row" && !slot.is_empty() {
                return Err(field.error(format!("duplicate key `{key}`")));
            }
            slot.push(field);
        }
    }
    Ok(out)
}

/// `(start, colon)` of every `identifier:` that begins at a word boundary.
fn key_spans(text: &[char]) -> Vec<(usize, usize)> {
    let mut spans = Vec::new();
    let mut i = 0;
    while i < text.len() {
        let boundary = i == 0 || text[i - 1].is_whitespace();
        if boundary && (text[i].is_ascii_alphabetic() || text[i] == '_') {
            let mut j = i;
            while j < text.len() && (text[j].is_ascii_alphanumeric() || text[j] == '_') {
                j += 1;
            }
            if j < text.len() && text[j] == ':' {
                spans.push((i, j));
                i = j + 1;
                continue;
            }
            i = j;
        } else {
            i += 1;
        }
    }
    spans
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    Projective,
    Affine,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::Projective => "projective",
            Convention::Affine => "affine",
        }
    }
}

/// A surface parameterization as read from a file.
#[derive(Clone, Debug)]
pub struct SurfaceInput {
    pub param: SurfaceParam,
    pub convention: Convention,
    /// Affine input whose three fractions share one denominator.
    pub shared_denominator: bool,
}

#[derive(Clone, Debug)]
pub enum Subject {
    Curve(PlaneCurveParam),
    Surface(SurfaceInput),
    /// A hardcoded elimination matrix together with the surface it is for.
    Matrix { surface: SurfaceInput, matrix: ElimMatrix, beta: Option<BetaTriple> },
}

/// Optional material for the `verify` command.
#[derive(Clone, Debug, Default)]
pub struct Claims {
    /// Curve: `[num, den]` with `t = num / den`. Surface: `ψ1, ψ2, ψ3`.
    pub inverse: Option<Vec<Polynomial>>,
    pub implicit: Option<Polynomial>,
}

#[derive(Clone, Debug)]
pub struct Input {
    pub subject: Subject,
    pub claims: Claims,
}

struct Fields {
    map: BTreeMap<String, Vec<Field>>,
}

impl Fields {
    fn get(&self, key: &str) -> Option<&Field> {
        self.map.get(key).and_then(|v| v.first())
    }

    fn require(&self, key: &str) -> Result<&Field> {
        self.get(key).ok_or_else(|| InputError::Syntax {
            line: 1,
            column: 1,
            message: format!("missing required key `{key}`"),
        })
    }

    fn reject(&self, keys: &[&str], kind: &str) -> Result<()> {
        for k in keys {
            if let Some(f) = self.get(k) {
                return Err(f.error(format!("`{k}` is not allowed for kind {kind}")));
            }
        }
        Ok(())
    }

    fn poly_opt(&self, key: &str, ring: &Ring) -> Result<Option<Polynomial>> {
        self.get(key).map(|f| f.poly(ring)).transpose()
    }
}

/// Parses an input file.
pub fn parse_input(src: &str) -> Result<Input> {
    let f = Fields { map: fields(src)? };
    let kind = f.require("kind")?;
    match kind.value.as_str() {
        "curve" => parse_curve(&f),
        "surface" => {
            f.reject(&["row_monomials", "row", "beta", "inv_num", "inv_den"], "surface")?;
            let surface = parse_surface(&f)?;
            let claims = surface_claims(&f, surface.convention)?;
            Ok(Input { subject: Subject::Surface(surface), claims })
        }
        "matrix" => parse_matrix(&f),
        other => Err(kind.error(format!("unknown kind `{other}`; expected curve, surface or matrix"))),
    }
}

fn parse_curve(f: &Fields) -> Result<Input> {
    f.reject(&["convention", "p3", "p4", "q", "q3", "psi1", "psi2", "psi3", "row_monomials", "row", "beta"], "curve")?;
    let r = rings::curve_param();
    let p = |k: &str| f.require(k).and_then(|x| x.poly(&r));
    let param = PlaneCurveParam::new(p("p1")?, p("q1")?, p("p2")?, p("q2")?)?;
    let xy = rings::curve_xy();
    let inverse = match (f.poly_opt("inv_num", &xy)?, f.poly_opt("inv_den", &xy)?) {
        (Some(n), Some(d)) => Some(vec![n, d]),
        (None, None) => None,
        _ => return Err(f.require("inv_num").and(f.require("inv_den")).expect_err("one is missing")),
    };
    let claims = Claims { inverse, implicit: f.poly_opt("implicit", &xy)? };
    Ok(Input { subject: Subject::Curve(param), claims })
}

fn convention(f: &Fields) -> Result<Convention> {
    match f.get("convention") {
        None => Ok(Convention::Projective),
        Some(c) => match c.value.as_str() {
            "projective" => Ok(Convention::Projective),
            "affine" => Ok(Convention::Affine),
            other => Err(c.error(format!("unknown convention `{other}`; expected projective or affine"))),
        },
    }
}

fn parse_surface(f: &Fields) -> Result<SurfaceInput> {
    let convention = convention(f)?;
    match convention {
        Convention::Projective => {
            f.reject(&["q", "q1", "q2", "q3"], "projective surface")?;
            let r = rings::t();
            let p = |k: &str| f.require(k).and_then(|x| x.poly(&r));
            let param = SurfaceParam::new([p("p1")?, p("p2")?, p("p3")?, p("p4")?])?;
            Ok(SurfaceInput { param, convention, shared_denominator: false })
        }
        Convention::Affine => {
            f.reject(&["p4"], "affine surface")?;
            let r = rings::t_affine();
            let p = |k: &str| f.require(k).and_then(|x| x.poly(&r));
            let shared = f.poly_opt("q", &r)?;
            let den = |k: &str| -> Result<Polynomial> {
                match (f.poly_opt(k, &r)?, &shared) {
                    (Some(q), _) => Ok(q),
                    (None, Some(q)) => Ok(q.clone()),
                    (None, None) => Ok(Polynomial::one(&r)),
                }
            };
            let num = [p("p1")?, p("p2")?, p("p3")?];
            let dens = [den("q1")?, den("q2")?, den("q3")?];
            let shared_denominator = dens.iter().all(|d| d == &dens[0]);
            let param = if shared_denominator {
                SurfaceParam::from_affine_shared(num, dens[0].clone())?
            } else {
                let [a, b, c] = num;
                let [d, e, g] = dens;
                SurfaceParam::from_affine([(a, d), (b, e), (c, g)])?
            };
            Ok(SurfaceInput { param, convention, shared_denominator })
        }
    }
}

fn x_ring(c: Convention) -> Ring {
    match c {
        Convention::Projective => rings::x(),
        Convention::Affine => rings::x_affine(),
    }
}

fn surface_claims(f: &Fields, c: Convention) -> Result<Claims> {
    let x = x_ring(c);
    let psi = [f.poly_opt("psi1", &x)?, f.poly_opt("psi2", &x)?, f.poly_opt("psi3", &x)?];
    let inverse = match psi {
        [Some(a), Some(b), Some(c)] => Some(vec![a, b, c]),
        [None, None, None] => None,
        _ => {
            let missing = ["psi1", "psi2", "psi3"].into_iter().zip(&psi).find(|(_, p)| p.is_none()).unwrap().0;
            return Err(f.require(missing).expect_err("missing"));
        }
    };
    Ok(Claims { inverse, implicit: f.poly_opt("implicit", &x)? })
}

fn parse_matrix(f: &Fields) -> Result<Input> {
    f.reject(&["inv_num", "inv_den"], "matrix")?;
    let surface = parse_surface(f)?;
    let claims = surface_claims(f, surface.convention)?;
    let t = match surface.convention {
        Convention::Projective => rings::t(),
        Convention::Affine => rings::t_affine(),
    };
    let header = f.require("row_monomials")?;
    let monomials = header
        .poly_list(&t)?
        .into_iter()
        .zip(header.items())
        .map(|(p, (s, col))| match p.terms().collect::<Vec<_>>().as_slice() {
            [(m, c)] if c.is_integer() && *c.numer() == 1.into() => Ok((*m).clone()),
            _ => Err(InputError::Syntax {
                line: header.line,
                column: col + 1,
                message: format!("`{s}` is not a monomial"),
            }),
        })
        .collect::<Result<Vec<Monomial>>>()?;
    let x = x_ring(surface.convention);
    let rows: Vec<&Field> = f.map.get("row").map(|v| v.iter().collect()).unwrap_or_default();
    if rows.is_empty() {
        return Err(f.require("row").expect_err("missing"));
    }
    let mut grid = Vec::with_capacity(rows.len());
    for r in &rows {
        let entries = r.poly_list(&x)?;
        if entries.len() != rows[0].items().len() {
            return Err(r.error("rows have different lengths"));
        }
        grid.push(entries);
    }
    if grid.len() != monomials.len() {
        return Err(header.error(format!("{} row monomials for {} rows", monomials.len(), grid.len())));
    }
    let kind = if grid[0].len() + 1 == grid.len() {
        MatrixKind::InversionCandidate
    } else {
        MatrixKind::ImplicitizationCandidate
    };
    let pm = PolyMatrix::from_rows(&x, grid)?;
    let matrix = match surface.convention {
        Convention::Projective => ElimMatrix::new(pm, monomials, kind, None)?,
        Convention::Affine => ElimMatrix::from_affine(pm, monomials, kind, None)?,
    };
    let beta = match f.get("beta") {
        None => None,
        Some(b) => {
            let idx = b
                .items()
                .into_iter()
                .map(|(s, col)| {
                    s.parse::<usize>().map_err(|_| InputError::Syntax {
                        line: b.line,
                        column: col + 1,
                        message: format!("`{s}` is not a row index"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let [i1, i2, i3] = idx[..] else { return Err(b.error("beta needs three row indices")) };
            let beta = BetaTriple { i1, i2, i3 };
            if !beta.is_valid_for(matrix.row_monomials()) {
                return Err(b.error("beta does not satisfy the row-monomial relations"));
            }
            Some(beta)
        }
    };
    Ok(Input { subject: Subject::Matrix { surface, matrix, beta }, claims })
}
