use std::fmt::Write as _;
use std::path::PathBuf;

use bohr_core::extremal::DEFAULT_SHARPNESS_TOL;
use bohr_core::suite::VerificationSuite;
use bohr_core::{
    extremal_lhs, majorant, phi, solve_radius, verify_sharpness, ClassId, Functional,
    ProblemSpec64, RadiusResult64,
};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::output::{csv_string, display_radius, full_precision, json_line, OutputRecord};
use crate::{Format, ProblemArgs, RadiusArgs, SweepArgs, TableArgs, VerifyArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] bohr_core::Error),
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for anything the caller can fix by changing arguments, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        use bohr_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::Write { .. } => 2,
            CliError::Core(E::Domain { .. } | E::Parameter(_) | E::UnknownTheorem(_)) => 2,
            _ => 1,
        }
    }
}

impl ProblemArgs {
    pub fn spec(&self) -> Result<ProblemSpec64, CliError> {
        let (class, kind) = match (self.theorem, self.class, self.functional) {
            (Some(t), _, _) => (t.class, t.kind),
            (None, Some(c), Some(k)) => (c, k),
            _ => {
                return Err(CliError::Usage(
                    "give --theorem, or both --class and --functional".into(),
                ))
            }
        };
        let functional = Functional::from_kind(kind, self.p, self.n)?;
        let mut spec = ProblemSpec64::new(class, functional);
        if let Some(tol) = self.tol {
            spec = spec.with_tol(tol);
        }
        spec.validate()?;
        Ok(spec)
    }
}

/// Sharpness tolerance for a solve: the default, or the spread of `Φ`
/// across the final bracket when a coarse `--tol` makes that larger.
fn sharpness_tol(spec: &ProblemSpec64, result: &RadiusResult64) -> f64 {
    let spread = match (phi(spec, result.bracket_lo), phi(spec, result.bracket_hi)) {
        (Ok(lo), Ok(hi)) => hi.hi() - lo.lo(),
        _ => 0.0,
    };
    DEFAULT_SHARPNESS_TOL.max(spread)
}

pub fn radius(args: &RadiusArgs) -> Result<(String, bool), CliError> {
    let spec = args.problem.spec()?;
    let result = solve_radius(&spec)?;
    let report = verify_sharpness(&spec, &result, sharpness_tol(&spec, &result));
    let record = OutputRecord::new(&result, &report, spec.functional.p(), spec.functional.n());
    Ok((record.render(args.format)?, report.pass))
}

#[derive(Serialize)]
struct TableRow {
    p: u32,
    radius: f64,
}

pub fn table(args: &TableArgs) -> Result<String, CliError> {
    if args.p_min < 1 || args.p_min > args.p_max {
        return Err(CliError::Usage(format!(
            "p range {}..{} is empty or starts below 1",
            args.p_min, args.p_max
        )));
    }
    let class = if args.which == 1 {
        ClassId::C1
    } else {
        ClassId::C2
    };
    let rows = (args.p_min..=args.p_max)
        .into_par_iter()
        .map(|p| {
            let mut spec =
                ProblemSpec64::new(class, Functional::CoefficientPowers { p: f64::from(p) });
            if let Some(tol) = args.tol {
                spec = spec.with_tol(tol);
            }
            spec.validate()?;
            Ok(TableRow {
                p,
                radius: solve_radius(&spec)?.radius,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    match args.format {
        Format::Csv => csv_string(
            &["p", "radius"],
            rows.iter()
                .map(|r| [r.p.to_string(), display_radius(r.radius)]),
        ),
        Format::Text => {
            let mut s = String::from("p   radius\n");
            for r in &rows {
                let _ = writeln!(s, "{:<3} {}", r.p, display_radius(r.radius));
            }
            Ok(s)
        }
        Format::Json => json_line(&rows),
    }
}

#[derive(Serialize)]
struct CheckRow<'a> {
    name: &'a str,
    pass: bool,
    detail: &'a str,
}

#[derive(Serialize)]
struct VerifySummary<'a> {
    passed: usize,
    total: usize,
    checks: Vec<CheckRow<'a>>,
}

pub fn verify(args: &VerifyArgs) -> Result<(String, bool), CliError> {
    let mut suite = VerificationSuite::new().with_rogosinski_n_max(args.n_max);
    for &(class, d) in &args.override_d_star {
        suite = suite.with_boundary_distance(class, d);
    }
    let checks = suite.run();
    let passed = checks.iter().filter(|c| c.pass).count();
    let ok = passed == checks.len();
    let text = match args.format {
        Format::Json => json_line(&VerifySummary {
            passed,
            total: checks.len(),
            checks: checks
                .iter()
                .map(|c| CheckRow {
                    name: &c.name,
                    pass: c.pass,
                    detail: &c.detail,
                })
                .collect(),
        })?,
        Format::Csv => csv_string(
            &["check", "pass", "detail"],
            checks
                .iter()
                .map(|c| [c.name.clone(), c.pass.to_string(), c.detail.clone()]),
        )?,
        Format::Text => {
            let mut s = String::new();
            for c in &checks {
                let _ = writeln!(s, "{c}");
            }
            let _ = writeln!(s, "{passed}/{} checks passed", checks.len());
            s
        }
    };
    Ok((text, ok))
}

pub fn sweep(args: &SweepArgs) -> Result<String, CliError> {
    let spec = args.problem.spec()?;
    let (lo, hi, n) = (args.r_min, args.r_max, args.points);
    if n < 2 || !(0.0..1.0).contains(&lo) || !(lo < hi && hi < 1.0) {
        return Err(CliError::Usage(format!(
            "grid needs at least 2 points and 0 <= r-min < r-max < 1, got {n} points on [{lo}, {hi}]"
        )));
    }
    let d_star = spec.class.boundary_distance;
    let rows = (0..n)
        .into_par_iter()
        .map(|i| {
            let r = lo + (hi - lo) * i as f64 / (n - 1) as f64;
            let m = majorant(&spec, r)?.mid();
            let e = extremal_lhs(&spec, r)?.mid();
            Ok([r, m, e, d_star].map(full_precision))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    csv_string(&["r", "lhs_majorant", "lhs_extremal", "d_star"], rows)
}
