//! End-to-end verification suite: reference radii, sharpness, the polynomial
//! cross-checks, monotonicity and ordering properties, and the equivalence
//! of the two residual forms.
//!
//! Runs in `f64`. Boundary distances can be overridden per class to check
//! that the suite actually detects a wrong constant.

use std::collections::BTreeMap;
use std::fmt;

use crate::class_specs::{ClassId, ClassSpec};
use crate::error::Result;
use crate::extremal::{verify_sharpness, DEFAULT_SHARPNESS_TOL};
use crate::functionals::{
    paper_residual, phi, residual_normalization, Functional, FunctionalKind, ProblemSpec,
};
use crate::radius_solver::{solve_polynomial_crosscheck, solve_radius};
use crate::special_fn::li2;
use crate::TheoremId;

/// Reference radii for the `C₁` coefficient-power functional, `p = 2..=8`.
pub const EXPECTED_C1_POWER_RADII: [(u32, f64); 7] = [
    (2, 0.213087),
    (3, 0.215411),
    (4, 0.215573),
    (5, 0.215584),
    (6, 0.215584),
    (7, 0.215585),
    (8, 0.215585),
];

/// Reference radii for the `C₂` coefficient-power functional, `p = 2..=8`.
pub const EXPECTED_C2_POWER_RADII: [(u32, f64); 7] = [
    (2, 0.327553),
    (3, 0.332707),
    (4, 0.333265),
    (5, 0.333326),
    (6, 0.333332),
    (7, 0.333333),
    (8, 0.333333),
];

/// Reference radius for `t2.1`.
pub const EXPECTED_R_C1_F1: f64 = 0.110377;
/// Reference radius for `t3.1`.
pub const EXPECTED_R_C2_F1: f64 = 0.173417;
/// Large-`p` limit of the `C₁` coefficient-power radius.
pub const LIMIT_C1_POWER: f64 = 0.215585;
/// Large-`p` limit of the `C₂` coefficient-power radius.
pub const LIMIT_C2_POWER: f64 = 1.0 / 3.0;

/// Half a unit in the sixth decimal.
pub const SIX_DECIMAL_TOL: f64 = 5e-6;
pub const TABLE_TOL: f64 = 1e-6;
pub const LIMIT_TOL: f64 = 1e-5;
pub const CROSSCHECK_TOL: f64 = 1e-10;
pub const EQUIVALENCE_TOL: f64 = 1e-10;

/// `(class, functional)` samples covering all twelve theorems: `F2` at
/// `p ∈ {2, 5}`, `F3`/`F4` at `N ∈ {2, 3, 5}`.
pub fn standard_configurations() -> Vec<(ClassId, Functional<f64>)> {
    let mut out = Vec::new();
    for class in ClassId::ALL {
        out.push((class, Functional::GrowthDistortion));
        for p in [2.0, 5.0] {
            out.push((class, Functional::CoefficientPowers { p }));
        }
        for n in [2, 3, 5] {
            out.push((class, Functional::Rogosinski { n }));
        }
        for n in [2, 3, 5] {
            out.push((class, Functional::SquaredRogosinski { n }));
        }
    }
    out
}

/// Short label such as `t3.2 p=5` or `t4.4 N=3`.
pub fn label(class: ClassId, functional: &Functional<f64>) -> String {
    let id = TheoremId::new(class, functional.kind());
    match functional {
        Functional::CoefficientPowers { p } => format!("{id} p={p}"),
        Functional::Rogosinski { n } | Functional::SquaredRogosinski { n } => format!("{id} N={n}"),
        Functional::GrowthDistortion => id.token(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{status} {}: {}", self.name, self.detail)
    }
}

fn outcome(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> CheckOutcome {
    CheckOutcome {
        name: name.into(),
        pass,
        detail: detail.into(),
    }
}

fn error_outcome(name: impl Into<String>, err: impl fmt::Display) -> CheckOutcome {
    outcome(name, false, format!("error: {err}"))
}

#[derive(Debug, Clone, Default)]
pub struct VerificationSuite {
    overrides: BTreeMap<ClassId, f64>,
    rogosinski_n_max: Option<usize>,
}

impl VerificationSuite {
    pub fn new() -> Self {
        Self::default()
    }

    /// Replaces `d*` for `class` in every problem the suite solves.
    pub fn with_boundary_distance(mut self, class: ClassId, d_star: f64) -> Self {
        self.overrides.insert(class, d_star);
        self
    }

    /// Upper end of the `N = 2..` range used for the `F3`/`F4` monotonicity
    /// sweep (default 10).
    pub fn with_rogosinski_n_max(mut self, n_max: usize) -> Self {
        self.rogosinski_n_max = Some(n_max.max(3));
        self
    }

    pub fn spec(&self, class: ClassId, functional: Functional<f64>) -> ProblemSpec<f64> {
        let mut cs = ClassSpec::new(class);
        if let Some(&d) = self.overrides.get(&class) {
            cs = cs.with_boundary_distance(d);
        }
        ProblemSpec::new(class, functional).with_class_spec(cs)
    }

    fn radius(&self, class: ClassId, functional: Functional<f64>) -> Result<f64> {
        Ok(solve_radius(&self.spec(class, functional))?.radius)
    }

    pub fn run(&self) -> Vec<CheckOutcome> {
        let mut out = Vec::new();
        self.reference_radii(&mut out);
        self.sharpness(&mut out);
        self.crosschecks(&mut out);
        self.phi_monotone(&mut out);
        self.class_ordering(&mut out);
        self.n_monotone(&mut out);
        self.form_equivalence(&mut out);
        self.special_values(&mut out);
        out
    }

    fn compare(
        &self,
        out: &mut Vec<CheckOutcome>,
        name: String,
        got: Result<f64>,
        want: f64,
        tol: f64,
    ) {
        match got {
            Ok(r) => {
                let diff = (r - want).abs();
                out.push(outcome(
                    name,
                    diff <= tol,
                    format!("{r:.9} vs {want} (|diff| {diff:.2e} <= {tol:.0e})"),
                ));
            }
            Err(e) => out.push(error_outcome(name, e)),
        }
    }

    fn reference_radii(&self, out: &mut Vec<CheckOutcome>) {
        let f1 = Functional::GrowthDistortion;
        self.compare(
            out,
            "radius t2.1".into(),
            self.radius(ClassId::C1, f1),
            EXPECTED_R_C1_F1,
            SIX_DECIMAL_TOL,
        );
        self.compare(
            out,
            "radius t3.1".into(),
            self.radius(ClassId::C2, f1),
            EXPECTED_R_C2_F1,
            SIX_DECIMAL_TOL,
        );
        let quadratic = (17f64.sqrt() - 3.0) / 4.0;
        self.compare(
            out,
            "radius t3.3 N=2 (quadratic root)".into(),
            self.radius(ClassId::C2, Functional::Rogosinski { n: 2 }),
            quadratic,
            CROSSCHECK_TOL,
        );
        for (class, table, which) in [
            (ClassId::C1, EXPECTED_C1_POWER_RADII, 1),
            (ClassId::C2, EXPECTED_C2_POWER_RADII, 2),
        ] {
            for (p, want) in table {
                let got = self.radius(class, Functional::CoefficientPowers { p: f64::from(p) });
                self.compare(out, format!("table {which} p={p}"), got, want, TABLE_TOL);
            }
        }
        let p30 = Functional::CoefficientPowers { p: 30.0 };
        self.compare(
            out,
            "limit c1 p=30".into(),
            self.radius(ClassId::C1, p30),
            LIMIT_C1_POWER,
            LIMIT_TOL,
        );
        self.compare(
            out,
            "limit c2 p=30".into(),
            self.radius(ClassId::C2, p30),
            LIMIT_C2_POWER,
            LIMIT_TOL,
        );
    }

    fn sharpness(&self, out: &mut Vec<CheckOutcome>) {
        for (class, f) in standard_configurations() {
            let name = format!("sharpness {}", label(class, &f));
            let spec = self.spec(class, f);
            match solve_radius(&spec) {
                Ok(res) => {
                    let rep = verify_sharpness(&spec, &res, DEFAULT_SHARPNESS_TOL);
                    out.push(outcome(
                        name,
                        rep.pass,
                        format!(
                            "r={:.9} lhs={:.12} d*={:.12} gap={:.2e}",
                            rep.radius,
                            rep.lhs_at_extremal.mid(),
                            rep.target_d_star,
                            rep.gap
                        ),
                    ));
                }
                Err(e) => out.push(error_outcome(name, e)),
            }
        }
    }

    fn crosschecks(&self, out: &mut Vec<CheckOutcome>) {
        let mut cases = vec![(FunctionalKind::F1, None)];
        for n in 2..=6 {
            cases.push((FunctionalKind::F3, Some(n)));
            cases.push((FunctionalKind::F4, Some(n)));
        }
        for (kind, n) in cases {
            let id = TheoremId::new(ClassId::C2, kind);
            let name = match n {
                Some(n) => format!("polynomial crosscheck {id} N={n}"),
                None => format!("polynomial crosscheck {id}"),
            };
            let f = match Functional::from_kind(kind, None, n) {
                Ok(f) => f,
                Err(e) => {
                    out.push(error_outcome(name, e));
                    continue;
                }
            };
            match solve_polynomial_crosscheck::<f64>(id, n) {
                Ok(oracle) => self.compare(
                    out,
                    name,
                    self.radius(ClassId::C2, f),
                    oracle,
                    CROSSCHECK_TOL,
                ),
                Err(e) => out.push(error_outcome(name, e)),
            }
        }
    }

    fn phi_monotone(&self, out: &mut Vec<CheckOutcome>) {
        const POINTS: usize = 1000;
        for (class, f) in standard_configurations() {
            let name = format!("phi increasing {}", label(class, &f));
            let spec = self.spec(class, f);
            let mut prev: Option<f64> = None;
            let mut failure = None;
            for i in 0..POINTS {
                let r = 0.9 * i as f64 / (POINTS - 1) as f64;
                match phi(&spec, r) {
                    Ok(v) => {
                        if let Some(p) = prev {
                            if v.mid() <= p {
                                failure = Some(format!("not increasing at r={r}"));
                                break;
                            }
                        }
                        prev = Some(v.mid());
                    }
                    Err(e) => {
                        failure = Some(format!("error at r={r}: {e}"));
                        break;
                    }
                }
            }
            let pass = failure.is_none();
            out.push(outcome(
                name,
                pass,
                failure.unwrap_or_else(|| format!("{POINTS} points on [0, 0.9]")),
            ));
        }
    }

    fn class_ordering(&self, out: &mut Vec<CheckOutcome>) {
        let samples = [
            Functional::GrowthDistortion,
            Functional::CoefficientPowers { p: 2.0 },
            Functional::CoefficientPowers { p: 5.0 },
            Functional::Rogosinski { n: 2 },
            Functional::Rogosinski { n: 5 },
            Functional::SquaredRogosinski { n: 2 },
            Functional::SquaredRogosinski { n: 5 },
        ];
        for f in samples {
            let name = format!(
                "class ordering {}",
                label(ClassId::C1, &f).replacen("t2", "f", 1)
            );
            let radii: Result<Vec<f64>> = ClassId::ALL.iter().map(|&c| self.radius(c, f)).collect();
            match radii {
                Ok(r) => out.push(outcome(
                    name,
                    r[0] <= r[1] && r[1] <= r[2],
                    format!("c1 {:.6} <= c2 {:.6} <= c3 {:.6}", r[0], r[1], r[2]),
                )),
                Err(e) => out.push(error_outcome(name, e)),
            }
        }
    }

    fn n_monotone(&self, out: &mut Vec<CheckOutcome>) {
        let n_max = self.rogosinski_n_max.unwrap_or(10);
        for class in ClassId::ALL {
            for kind in [FunctionalKind::F3, FunctionalKind::F4] {
                let name = format!(
                    "radius increasing in N {} N=2..{n_max}",
                    TheoremId::new(class, kind)
                );
                let radii: Result<Vec<f64>> = (2..=n_max)
                    .map(|n| {
                        Functional::from_kind(kind, None, Some(n))
                            .and_then(|f| self.radius(class, f))
                    })
                    .collect();
                match radii {
                    Ok(r) => {
                        let pass = r.windows(2).all(|w| w[0] < w[1]);
                        out.push(outcome(
                            name,
                            pass,
                            format!("{:.6} .. {:.6}", r[0], r[r.len() - 1]),
                        ));
                    }
                    Err(e) => out.push(error_outcome(name, e)),
                }
            }
        }
    }

    fn form_equivalence(&self, out: &mut Vec<CheckOutcome>) {
        const POINTS: usize = 500;
        for (class, f) in standard_configurations() {
            let name = format!("residual form equivalence {}", label(class, &f));
            let spec = self.spec(class, f);
            let mut worst = 0.0f64;
            let mut err = None;
            for i in 0..POINTS {
                let r = 0.9 * i as f64 / (POINTS - 1) as f64;
                let (s, w) = residual_normalization(&spec, r);
                match (paper_residual(&spec, r), phi(&spec, r)) {
                    (Ok(res), Ok(v)) => {
                        worst = worst.max((res.mid() - f64::from(s) * w * v.mid()).abs());
                    }
                    (Err(e), _) | (_, Err(e)) => {
                        err = Some(e);
                        break;
                    }
                }
            }
            match err {
                Some(e) => out.push(error_outcome(name, e)),
                None => out.push(outcome(
                    name,
                    worst <= EQUIVALENCE_TOL,
                    format!("max deviation {worst:.2e}"),
                )),
            }
        }
    }

    fn special_values(&self, out: &mut Vec<CheckOutcome>) {
        let pi2_6 = std::f64::consts::PI.powi(2) / 6.0;
        match li2(1.0f64) {
            Ok(v) => out.push(outcome(
                "li2(1) = pi^2/6",
                (v.mid() - pi2_6).abs() <= 1e-12,
                format!("{v}"),
            )),
            Err(e) => out.push(error_outcome("li2(1) = pi^2/6", e)),
        }
        let mut worst = 0.0f64;
        let mut pass = true;
        for i in 1..=100 {
            let x = i as f64 / 101.0;
            match (li2(x), li2(1.0 - x)) {
                (Ok(a), Ok(b)) => {
                    let lhs = a.mid() + b.mid();
                    let rhs = pi2_6 - x.ln() * (1.0 - x).ln();
                    let dev = (lhs - rhs).abs();
                    worst = worst.max(dev);
                    pass &= dev <= 2.0 * (a.width() + b.width()) + 4.0 * f64::EPSILON;
                }
                _ => pass = false,
            }
        }
        out.push(outcome(
            "li2 reflection identity",
            pass,
            format!("100 points, max deviation {worst:.2e}"),
        ));
        let c1 = self.spec(ClassId::C1, Functional::GrowthDistortion);
        match phi(&c1, 0.0) {
            Ok(v) => {
                let want = -c1.class.boundary_distance;
                out.push(outcome(
                    "phi t2.1 at r=0",
                    (v.mid() - want).abs() <= 1e-12,
                    format!("{:.15}", v.mid()),
                ));
            }
            Err(e) => out.push(error_outcome("phi t2.1 at r=0", e)),
        }
    }
}
