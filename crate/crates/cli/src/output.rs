use std::fmt::Write as _;

use bohr_core::{RadiusResult64, SharpnessReport64};
use serde::Serialize;

use crate::commands::CliError;
use crate::Format;

/// Decimal places used whenever a radius is shown to a reader.
pub const DISPLAY_DECIMALS: usize = 6;

pub fn display_radius(r: f64) -> String {
    format!("{r:.DISPLAY_DECIMALS$}")
}

/// Shortest round-trip form, switching to exponent notation for very small
/// or very large magnitudes so CSV fields stay short.
pub fn full_precision(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-5..1e15).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
}

impl Params {
    fn label(&self) -> String {
        match (self.p, self.n) {
            (Some(p), _) => format!("p={p}"),
            (_, Some(n)) => format!("N={n}"),
            _ => String::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputRecord {
    pub theorem: String,
    pub class: String,
    pub functional: String,
    pub params: Option<Params>,
    pub radius: f64,
    pub bracket_width: f64,
    pub sharp: bool,
}

impl OutputRecord {
    pub fn new(
        result: &RadiusResult64,
        report: &SharpnessReport64,
        p: Option<f64>,
        n: Option<usize>,
    ) -> Self {
        let params = (p.is_some() || n.is_some()).then_some(Params { p, n });
        Self {
            theorem: result.theorem.token(),
            class: result.theorem.class.token().to_string(),
            functional: result.theorem.kind.token().to_string(),
            params,
            radius: result.radius,
            bracket_width: result.bracket_width(),
            sharp: report.pass,
        }
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        let params = self.params.map(|p| p.label()).unwrap_or_default();
        Ok(match format {
            Format::Text => {
                let mut s = String::new();
                let params = if params.is_empty() { "-" } else { &params };
                let _ = writeln!(s, "theorem        {}", self.theorem);
                let _ = writeln!(s, "class          {}", self.class);
                let _ = writeln!(s, "functional     {}", self.functional);
                let _ = writeln!(s, "params         {params}");
                let _ = writeln!(s, "radius         {}", display_radius(self.radius));
                let _ = writeln!(s, "bracket_width  {:.3e}", self.bracket_width);
                let _ = writeln!(s, "sharp          {}", self.sharp);
                s
            }
            Format::Csv => csv_string(
                &[
                    "theorem",
                    "class",
                    "functional",
                    "params",
                    "radius",
                    "bracket_width",
                    "sharp",
                ],
                [[
                    self.theorem.clone(),
                    self.class.clone(),
                    self.functional.clone(),
                    params,
                    display_radius(self.radius),
                    format!("{:e}", self.bracket_width),
                    self.sharp.to_string(),
                ]],
            )?,
            Format::Json => json_line(self)?,
        })
    }
}

pub fn json_line<S: Serialize + ?Sized>(value: &S) -> Result<String, CliError> {
    let mut s = serde_json::to_string(value)?;
    s.push('\n');
    Ok(s)
}

/// Header plus rows, comma separated, newline terminated.
pub fn csv_string<R, I>(header: &[&str], rows: R) -> Result<String, CliError>
where
    R: IntoIterator<Item = I>,
    I: IntoIterator,
    I::Item: AsRef<[u8]>,
{
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv output is built from UTF-8 fields"))
}
