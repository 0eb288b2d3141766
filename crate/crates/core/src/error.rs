use thiserror::Error;

use crate::exactpoly::text::ParseError;

/// Every failure the library can report.
///
/// Variant names follow the module that raises them; [`Error::qualified_name`]
/// gives the `module::Name` form used by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    Ring(String),
    #[error("inexact polynomial division: {0}")]
    Division(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("curve is a line after reduction: {0}")]
    LineCase(String),
    #[error("no beta triple among the row monomials")]
    NoBetaTriple,
    #[error("every admissible beta triple selects three identically zero minors")]
    DegenerateMinors,
    #[error("singular matrix: {0}")]
    SingularMatrix(String),
    #[error("column {column} does not follow the parameterization")]
    NotFollowing { column: usize },
    #[error("Dixon construction does not apply: {0}")]
    DixonInapplicable(String),
}

impl Error {
    pub fn qualified_name(&self) -> &'static str {
        match self {
            Error::Ring(_) => "exactpoly::RingError",
            Error::Division(_) => "exactpoly::DivisionError",
            Error::Domain(_) => "exactpoly::DomainError",
            Error::Degree(_) => "exactpoly::DegreeError",
            Error::Parse(_) => "exactpoly::ParseError",
            Error::Shape(_) => "polymat::ShapeError",
            Error::LineCase(_) => "curveinv::LineCaseError",
            Error::NoBetaTriple => "surfinv::NoBetaTripleError",
            Error::DegenerateMinors => "surfinv::DegenerateMinorsError",
            Error::NotFollowing { .. } => "surfinv::NotFollowingError",
            Error::SingularMatrix(_) => "surfinv::SingularMatrixError",
            Error::DixonInapplicable(_) => "dixon::DixonInapplicableError",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
