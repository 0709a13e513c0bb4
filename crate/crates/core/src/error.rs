use thiserror::Error;

/// Errors raised by the evaluation and solver routines.
///
/// Offending values are carried as `f64` regardless of the scalar type in use.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument {name} = {value} outside the domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
    #[error("series needs more than {max_terms} terms to reach width {tol}")]
    SeriesTruncation { max_terms: usize, tol: f64 },
    #[error("objective is not positive at r = {r_max}; no sign change on the bracket")]
    NoSignChange { r_max: f64 },
    #[error("sign of the objective at r = {r} is undecided (enclosure width {width})")]
    AmbiguousSign { r: f64, width: f64 },
    #[error("bisection did not reach width {tol} within {iterations} steps")]
    MaxIterations { iterations: usize, tol: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(name: &'static str, value: f64, domain: &'static str) -> Error {
    Error::Domain {
        name,
        value,
        domain,
    }
}
