//! Command-line front end: reads a parameterization file, runs one
//! pipeline and reports the outcome as text or as a JSON document.

pub mod input;
pub mod report;

use std::time::Instant;

use ratinv::curveinv::{self, PlaneCurveParam};
use ratinv::dixon::{self, DixonSystem};
use ratinv::error::Error;
use ratinv::exactpoly::rings;
use ratinv::movsurf::{search_candidate, SearchOptions};
use ratinv::surfinv::{
    find_beta_triple, invert_from_inversion_matrix, surface_properness, without_x4_powers, ElimMatrix, MatrixKind,
    Verdict,
};
use ratinv::verify;
use thiserror::Error as ThisError;

use input::{Claims, Input, InputError, Subject, SurfaceInput};
use report::{matrix_doc, monomial, poly, polys, ErrorBody, ErrorDoc, InputDoc, InverseDoc, Report, SurfaceDoc};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    CurveInvert,
    SurfaceInvert,
    MovingMatrix,
    Dixon,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::CurveInvert => "curve-invert",
            Command::SurfaceInvert => "surface-invert",
            Command::MovingMatrix => "moving-matrix",
            Command::Dixon => "dixon",
            Command::Verify => "verify",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Clone, Debug)]
pub struct Options {
    pub m_max: u32,
    pub marked_column: Option<usize>,
    /// Seed for the random-point pre-checks; verdicts never depend on it.
    pub seed: u64,
    pub timing: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { m_max: 3, marked_column: None, seed: verify::DEFAULT_SEED, timing: false }
    }
}

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Input(#[from] InputError),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Input(InputError::Core(e))
    }
}

impl CliError {
    pub fn qualified_name(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "cli::IoError",
            CliError::Usage(_) => "cli::UsageError",
            CliError::Input(e) => e.qualified_name(),
        }
    }

    pub fn to_doc(&self) -> ErrorDoc {
        let pos = match self {
            CliError::Input(e) => e.position(),
            _ => None,
        };
        ErrorDoc {
            error: ErrorBody {
                name: self.qualified_name().to_string(),
                message: self.to_string(),
                line: pos.map(|p| p.0),
                column: pos.map(|p| p.1),
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// 0 when a verdict was reached, 2 when inconclusive.
pub fn exit_code(report: &Report) -> i32 {
    if report.verdict == Verdict::Inconclusive.name() {
        2
    } else {
        0
    }
}

/// Parses `src` and runs `command` on it.
pub fn run_source(command: Command, src: &str, opts: &Options) -> Result<Report> {
    let start = Instant::now();
    let input = input::parse_input(src)?;
    let mut report = run(command, &input, opts)?;
    if opts.timing {
        report.timing_ms = Some(u64::try_from(start.elapsed().as_millis()).unwrap_or(u64::MAX));
    }
    Ok(report)
}

/// Renders an outcome in the requested format and returns it with the exit
/// status. Errors go to the second string (stderr in text mode).
pub fn render(outcome: &Result<Report>, format: Format) -> (String, String, i32) {
    match (outcome, format) {
        (Ok(r), Format::Text) => (r.to_text(), String::new(), exit_code(r)),
        (Ok(r), Format::Structured) => (r.to_json(), String::new(), exit_code(r)),
        (Err(e), Format::Text) => (String::new(), format!("error[{}]: {e}\n", e.qualified_name()), 1),
        (Err(e), Format::Structured) => {
            (serde_json::to_string_pretty(&e.to_doc()).expect("serializes") + "\n", String::new(), 1)
        }
    }
}

pub fn run(command: Command, input: &Input, opts: &Options) -> Result<Report> {
    let mut report = match (command, &input.subject) {
        (Command::CurveInvert, Subject::Curve(c)) => curve_invert(c)?,
        (Command::SurfaceInvert, Subject::Surface(s)) => surface_invert(s, opts)?,
        (Command::SurfaceInvert, Subject::Matrix { surface, matrix, beta }) => {
            matrix_invert(surface, matrix, *beta, opts)?
        }
        (Command::MovingMatrix, Subject::Surface(s)) => moving_matrix(s, opts)?,
        (Command::Dixon, Subject::Surface(s)) => dixon_route(s, opts)?,
        (Command::Verify, _) => verify_claims(input, opts)?,
        (cmd, subject) => {
            let kind = match subject {
                Subject::Curve(_) => "curve",
                Subject::Surface(_) => "surface",
                Subject::Matrix { .. } => "matrix",
            };
            return Err(CliError::Usage(format!("{} does not accept a {kind} file", cmd.name())));
        }
    };
    report.command = command.name().to_string();
    report.input = input_doc(&input.subject);
    Ok(report)
}

fn input_doc(subject: &Subject) -> InputDoc {
    match subject {
        Subject::Curve(c) => InputDoc {
            kind: "curve".into(),
            convention: None,
            parameterization: polys(&[c.p1().clone(), c.q1().clone(), c.p2().clone(), c.q2().clone()]),
        },
        Subject::Surface(s) | Subject::Matrix { surface: s, .. } => InputDoc {
            kind: "surface".into(),
            convention: Some(s.convention.name().into()),
            parameterization: polys(s.param.coords()),
        },
    }
}

fn check(report: &mut Report, name: &str, value: bool) {
    report.certification.insert(name.to_string(), value);
}

fn curve_invert(param: &PlaneCurveParam) -> Result<Report> {
    let r = curveinv::curve_properness(param)?;
    let t = rings::curve_param();
    let d = r.sylvester.rows();
    let rows = (0..d)
        .map(|i| monomial(&t, &ratinv::exactpoly::Monomial::new(vec![(d - 1 - i) as u32])))
        .collect();
    let mut report = Report {
        route: "sylvester".into(),
        verdict: if r.proper { Verdict::Proper } else { Verdict::NotProper }.name().into(),
        evidence: Some(if r.proper { "gcd_of_minors_constant" } else { "gcd_of_minors_nonconstant" }.into()),
        gcd_of_minors: Some(poly(&r.gcd_of_minors)),
        determinant: Some(poly(&r.resultant)),
        implicit_equation: r.implicit_equation.as_ref().map(poly),
        matrices: vec![matrix_doc("sylvester", &r.sylvester, rows, Some(d - 1))],
        minors: polys(r.minors.minors()),
        inverse: r.inverse.as_ref().map(|(n, dd)| InverseDoc {
            components: polys(&[n.clone(), dd.clone()]),
            beta: None,
            chosen_index: r.chosen_index,
        }),
        ..Report::default()
    };
    check(&mut report, "expansion_identity", r.expansion_identity_holds);
    check(&mut report, "gcd_divides_determinant", r.gcd_divides_resultant);
    if r.inverse.is_some() {
        check(&mut report, "composition_verified", curveinv::curve_inverse_check(param, &r)?);
    }
    if let Some(f) = &r.implicit_equation {
        check(&mut report, "implicit_vanishes_on_image", verify::verify_implicit_curve(f, param)?);
    }
    Ok(report)
}

fn row_labels(mat: &ElimMatrix) -> Vec<String> {
    let t = rings::t();
    mat.row_monomials().iter().map(|m| monomial(&t, m)).collect()
}

/// Fills the report from the gcd-of-minors properness test.
fn properness(mat: &ElimMatrix, s: &SurfaceInput, mut report: Report) -> Result<Report> {
    let rep = surface_properness(mat, &s.param)?;
    report.verdict = rep.verdict.name().into();
    report.evidence = Some(rep.evidence.name().into());
    report.gcd_of_minors = Some(poly(&rep.gcd_of_minors));
    report.determinant = Some(poly(&rep.determinant));
    if rep.verdict == Verdict::Proper && mat.is_certified() {
        let det = if s.param.is_affine() { without_x4_powers(&rep.determinant) } else { rep.determinant.clone() };
        report.implicit_equation = Some(poly(&det.normalized()));
    }
    report.matrices.push(matrix_doc("implicitization", mat.matrix(), row_labels(mat), mat.marked_column()));
    report.matrices.push(matrix_doc("inversion", rep.stripped.matrix(), row_labels(&rep.stripped), None));
    report.minors = polys(rep.minors.minors());
    check(&mut report, "expansion_identity", rep.expansion_identity_holds);
    check(&mut report, "gcd_divides_determinant", rep.gcd_divides_determinant);
    check(&mut report, "matrix_certified", mat.is_certified());
    if let Some(inv) = &rep.inverse {
        report.inverse = Some(InverseDoc {
            components: polys(&inv.psi),
            beta: Some(inv.beta.indices()),
            chosen_index: None,
        });
        check(&mut report, "composition_verified", inv.certified);
    }
    if rep.verdict == Verdict::Proper {
        check(&mut report, "determinant_vanishes_on_image", verify::verify_implicit(&rep.determinant, &s.param)?);
    }
    report.notes.extend(rep.notes);
    Ok(report)
}

fn search(s: &SurfaceInput, opts: &Options) -> Result<(ElimMatrix, Vec<SurfaceDoc>, String)> {
    let found = search_candidate(
        &s.param,
        &SearchOptions { m_max: opts.m_max, marked_column: opts.marked_column, seed: opts.seed },
    )?;
    let tx = rings::tx();
    let docs = found
        .surfaces
        .iter()
        .map(|m| SurfaceDoc {
            m: m.m(),
            n: m.n(),
            polynomial: poly(&m.poly().to_ring(&tx).unwrap_or_else(|_| m.poly().clone())),
            follows_phi: m.follows_phi,
        })
        .collect();
    let note = format!(
        "m = {}: {} moving planes, {} moving quadrics found",
        found.matrix.m(),
        found.planes_found,
        found.quadrics_found
    );
    Ok((found.matrix, docs, note))
}

fn surface_invert(s: &SurfaceInput, opts: &Options) -> Result<Report> {
    let mut notes = Vec::new();
    if s.param.is_affine() && s.shared_denominator {
        match DixonSystem::from_param(&s.param).and_then(|sys| dixon::dixon_matrix(&sys, opts.marked_column)) {
            Ok(mat) => {
                let report = Report { route: "dixon".into(), ..Report::default() };
                return properness(&mat, s, report);
            }
            Err(Error::DixonInapplicable(why)) => notes.push(format!("Dixon route not applicable: {why}")),
            Err(e) => return Err(e.into()),
        }
    }
    let (mat, surfaces, note) = search(s, opts)?;
    notes.push(note);
    let report = Report { route: "moving_surfaces".into(), moving_surfaces: surfaces, notes, ..Report::default() };
    properness(&mat, s, report)
}

fn matrix_invert(
    s: &SurfaceInput,
    mat: &ElimMatrix,
    beta: Option<ratinv::surfinv::BetaTriple>,
    opts: &Options,
) -> Result<Report> {
    let report = Report { route: "matrix".into(), ..Report::default() };
    if mat.kind() == MatrixKind::ImplicitizationCandidate {
        let mat = match opts.marked_column {
            Some(c) => mat.clone().with_marked_column(c)?,
            None => mat.clone(),
        };
        return properness(&mat, s, report);
    }
    if let Some(&column) = mat.columns_not_following(&s.param)?.first() {
        return Err(Error::NotFollowing { column }.into());
    }
    let beta = match beta {
        Some(b) => b,
        None => find_beta_triple(mat.row_monomials())?,
    };
    let minors = mat.matrix().signed_maximal_minors()?;
    let inv = invert_from_inversion_matrix(mat, beta)?;
    let certified = verify::verify_inverse_seeded(&s.param, &inv.psi, opts.seed)?;
    let mut report = Report {
        verdict: if certified { Verdict::Proper } else { Verdict::Inconclusive }.name().into(),
        evidence: Some(if certified { "composition_verified" } else { "uncertified" }.into()),
        matrices: vec![matrix_doc("inversion", mat.matrix(), row_labels(mat), None)],
        minors: polys(minors.minors()),
        inverse: Some(InverseDoc { components: polys(&inv.psi), beta: Some(inv.beta.indices()), chosen_index: None }),
        ..report
    };
    check(&mut report, "composition_verified", certified);
    Ok(report)
}

fn moving_matrix(s: &SurfaceInput, opts: &Options) -> Result<Report> {
    let (mat, surfaces, note) = search(s, opts)?;
    Ok(Report {
        route: "moving_surfaces".into(),
        verdict: "assembled".into(),
        matrices: vec![matrix_doc("implicitization", mat.matrix(), row_labels(&mat), mat.marked_column())],
        moving_surfaces: surfaces,
        notes: vec![note],
        ..Report::default()
    })
}

fn dixon_route(s: &SurfaceInput, opts: &Options) -> Result<Report> {
    let sys = DixonSystem::from_param(&s.param)?;
    let mat = dixon::dixon_matrix(&sys, opts.marked_column)?;
    properness(&mat, s, Report { route: "dixon".into(), ..Report::default() })
}

fn verify_claims(input: &Input, opts: &Options) -> Result<Report> {
    let Claims { inverse, implicit } = &input.claims;
    if inverse.is_none() && implicit.is_none() {
        return Err(CliError::Usage("verify needs an inverse (inv_num/inv_den or psi1..psi3) or an implicit key".into()));
    }
    let mut report = Report { route: "direct".into(), ..Report::default() };
    match &input.subject {
        Subject::Curve(c) => {
            if let Some(inv) = inverse {
                check(&mut report, "composition_verified", verify::verify_curve_inverse(c, &inv[0], &inv[1])?);
            }
            if let Some(f) = implicit {
                check(&mut report, "implicit_vanishes_on_image", verify::verify_implicit_curve(f, c)?);
            }
        }
        Subject::Surface(s) | Subject::Matrix { surface: s, .. } => {
            if let Some(inv) = inverse {
                let psi = [inv[0].clone(), inv[1].clone(), inv[2].clone()];
                check(&mut report, "composition_verified", verify::verify_inverse_seeded(&s.param, &psi, opts.seed)?);
            }
            if let Some(f) = implicit {
                check(&mut report, "implicit_vanishes_on_image", verify::verify_implicit(f, &s.param)?);
            }
        }
    }
    if let Some(inv) = inverse {
        report.inverse = Some(InverseDoc { components: polys(inv), beta: None, chosen_index: None });
    }
    report.implicit_equation = implicit.as_ref().map(poly);
    let ok = report.certification.values().all(|v| *v);
    report.verdict = if ok { "verified" } else { "rejected" }.into();
    Ok(report)
}
