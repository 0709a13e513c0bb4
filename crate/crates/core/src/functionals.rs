//! The four Bohr-type majorants, the normalized objective `Φ(r) = M(r) − d*`,
//! and the single-expression residuals stated with each theorem.

use std::fmt;
use std::str::FromStr;

use crate::class_specs::{distortion_upper, growth_upper, ClassId, ClassSpec};
use crate::enclosure::Enclosure;
use crate::error::{domain, Error, Result};
use crate::scalar::Real;
use crate::special_fn::{
    li2, power_sum, series_inverse_powers, tail_dilog_series, tail_log_series,
};

/// Which of the four inequalities is being majorized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FunctionalKind {
    /// `|f(z)| + |f′(z)||z| + Σ_{n≥2} |a_n||z|ⁿ`
    F1,
    /// `|z| + Σ_{n≥2} |a_n||z|ⁿ + Σ_{n≥2} |a_n|ᵖ|z|^{np}`
    F2,
    /// `|f(z)| + Σ_{n≥N} |a_n||z|ⁿ`
    F3,
    /// `|f(z)|² + Σ_{n≥N} |a_n||z|ⁿ`
    F4,
}

impl FunctionalKind {
    pub const ALL: [FunctionalKind; 4] = [
        FunctionalKind::F1,
        FunctionalKind::F2,
        FunctionalKind::F3,
        FunctionalKind::F4,
    ];

    pub fn token(self) -> &'static str {
        match self {
            FunctionalKind::F1 => "f1",
            FunctionalKind::F2 => "f2",
            FunctionalKind::F3 => "f3",
            FunctionalKind::F4 => "f4",
        }
    }

    fn index(self) -> u8 {
        match self {
            FunctionalKind::F1 => 1,
            FunctionalKind::F2 => 2,
            FunctionalKind::F3 => 3,
            FunctionalKind::F4 => 4,
        }
    }
}

impl fmt::Display for FunctionalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for FunctionalKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "f1" => Ok(FunctionalKind::F1),
            "f2" => Ok(FunctionalKind::F2),
            "f3" => Ok(FunctionalKind::F3),
            "f4" => Ok(FunctionalKind::F4),
            _ => Err(Error::Parameter(format!(
                "unknown functional `{s}` (expected f1..f4)"
            ))),
        }
    }
}

/// A functional together with its parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Functional<T> {
    GrowthDistortion,
    CoefficientPowers { p: T },
    Rogosinski { n: usize },
    SquaredRogosinski { n: usize },
}

impl<T: Real> Functional<T> {
    /// Builds the functional of the given kind, checking that the parameter
    /// it needs is present and valid. Extra parameters are rejected.
    pub fn from_kind(kind: FunctionalKind, p: Option<T>, n: Option<usize>) -> Result<Self> {
        let f = match (kind, p, n) {
            (FunctionalKind::F1, None, None) => Functional::GrowthDistortion,
            (FunctionalKind::F2, Some(p), None) => Functional::CoefficientPowers { p },
            (FunctionalKind::F3, None, Some(n)) => Functional::Rogosinski { n },
            (FunctionalKind::F4, None, Some(n)) => Functional::SquaredRogosinski { n },
            (FunctionalKind::F1, ..) => {
                return Err(Error::Parameter("f1 takes no parameters".into()))
            }
            (FunctionalKind::F2, ..) => {
                return Err(Error::Parameter("f2 requires p (and no N)".into()))
            }
            _ => return Err(Error::Parameter(format!("{kind} requires N (and no p)"))),
        };
        f.validate()?;
        Ok(f)
    }

    pub fn kind(&self) -> FunctionalKind {
        match self {
            Functional::GrowthDistortion => FunctionalKind::F1,
            Functional::CoefficientPowers { .. } => FunctionalKind::F2,
            Functional::Rogosinski { .. } => FunctionalKind::F3,
            Functional::SquaredRogosinski { .. } => FunctionalKind::F4,
        }
    }

    pub fn p(&self) -> Option<T> {
        match *self {
            Functional::CoefficientPowers { p } => Some(p),
            _ => None,
        }
    }

    pub fn n(&self) -> Option<usize> {
        match *self {
            Functional::Rogosinski { n } | Functional::SquaredRogosinski { n } => Some(n),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Functional::GrowthDistortion => Ok(()),
            Functional::CoefficientPowers { p } if p >= T::one() && p.is_finite() => Ok(()),
            Functional::CoefficientPowers { p } => Err(Error::Parameter(format!(
                "p must be a finite real >= 1, got {p}"
            ))),
            Functional::Rogosinski { n } | Functional::SquaredRogosinski { n } if n >= 2 => Ok(()),
            Functional::Rogosinski { n } | Functional::SquaredRogosinski { n } => Err(
                Error::Parameter(format!("N must be an integer >= 2, got {n}")),
            ),
        }
    }
}

/// Theorem identifier: the class section and the functional, e.g. `t2.1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TheoremId {
    pub class: ClassId,
    pub kind: FunctionalKind,
}

impl TheoremId {
    pub fn new(class: ClassId, kind: FunctionalKind) -> Self {
        Self { class, kind }
    }

    /// All twelve theorems in reading order.
    pub fn all() -> impl Iterator<Item = TheoremId> {
        ClassId::ALL.into_iter().flat_map(|c| {
            FunctionalKind::ALL
                .into_iter()
                .map(move |k| TheoremId::new(c, k))
        })
    }

    pub fn token(&self) -> String {
        format!("t{}.{}", self.class.section(), self.kind.index())
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownTheorem(s.to_string());
        let rest = s
            .strip_prefix('t')
            .or_else(|| s.strip_prefix('T'))
            .ok_or_else(unknown)?;
        let (section, index) = rest.split_once('.').ok_or_else(unknown)?;
        let class = match section {
            "2" => ClassId::C1,
            "3" => ClassId::C2,
            "4" => ClassId::C3,
            _ => return Err(unknown()),
        };
        let kind = match index {
            "1" => FunctionalKind::F1,
            "2" => FunctionalKind::F2,
            "3" => FunctionalKind::F3,
            "4" => FunctionalKind::F4,
            _ => return Err(unknown()),
        };
        Ok(TheoremId::new(class, kind))
    }
}

/// A fully specified radius problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemSpec<T> {
    pub class: ClassSpec<T>,
    pub functional: Functional<T>,
    /// Bisection tolerance; series are evaluated to `tol / 16`.
    pub tol: T,
}

impl<T: Real> ProblemSpec<T> {
    pub fn new(class: ClassId, functional: Functional<T>) -> Self {
        Self {
            class: ClassSpec::new(class),
            functional,
            tol: T::default_solver_tol(),
        }
    }

    pub fn with_tol(mut self, tol: T) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_class_spec(mut self, class: ClassSpec<T>) -> Self {
        self.class = class;
        self
    }

    pub fn theorem(&self) -> TheoremId {
        TheoremId::new(self.class.id, self.functional.kind())
    }

    pub fn validate(&self) -> Result<()> {
        self.functional.validate()?;
        if !(self.tol >= T::lit(1e-14) && self.tol <= T::lit(1e-3)) {
            return Err(Error::Parameter(format!(
                "tolerance must lie in [1e-14, 1e-3], got {}",
                self.tol
            )));
        }
        Ok(())
    }

    /// Width target handed to truncated power sums.
    pub fn series_tol(&self) -> T {
        self.tol / T::lit(16.0)
    }
}

fn check_radius<T: Real>(r: T) -> Result<()> {
    if r >= T::zero() && r < T::one() {
        Ok(())
    } else {
        Err(domain("r", r.as_f64(), "[0, 1)"))
    }
}

fn exact<T: Real>(x: f64) -> Enclosure<T> {
    Enclosure::exact(T::lit(x))
}

fn pow_n<T: Real>(r: T, n: usize) -> Enclosure<T> {
    Enclosure::exact(r).powi(n as i32)
}

/// `Σ_{n≥start} c_n rⁿ` in closed form.
pub fn coeff_tail<T: Real>(class: ClassId, start: usize, r: T) -> Result<Enclosure<T>> {
    check_radius(r)?;
    let geometric = pow_n(r, start) / (exact::<T>(1.0) - Enclosure::exact(r));
    Ok(match class {
        ClassId::C1 => geometric.scale(T::lit(2.0)) - tail_log_series(r, start)?,
        ClassId::C2 => geometric,
        ClassId::C3 => (geometric.scale(T::lit(2.0)) + tail_dilog_series(r, start)?) / exact(3.0),
    })
}

/// Majorant with an explicit width target for the truncated power sum.
pub fn majorant_with<T: Real>(spec: &ProblemSpec<T>, r: T, series_tol: T) -> Result<Enclosure<T>> {
    check_radius(r)?;
    spec.functional.validate()?;
    let class = spec.class.id;
    Ok(match spec.functional {
        Functional::GrowthDistortion => {
            growth_upper(class, r)?
                + distortion_upper(class, r)?.scale(r)
                + coeff_tail(class, 2, r)?
        }
        Functional::CoefficientPowers { p } => {
            Enclosure::exact(r) + coeff_tail(class, 2, r)? + power_sum(class, p, 2, r, series_tol)?
        }
        Functional::Rogosinski { n } => growth_upper(class, r)? + coeff_tail(class, n, r)?,
        Functional::SquaredRogosinski { n } => {
            growth_upper(class, r)?.square() + coeff_tail(class, n, r)?
        }
    })
}

/// Worst-case left-hand side over the class at `|z| = r`.
pub fn majorant<T: Real>(spec: &ProblemSpec<T>, r: T) -> Result<Enclosure<T>> {
    majorant_with(spec, r, spec.series_tol())
}

pub fn phi_with<T: Real>(spec: &ProblemSpec<T>, r: T, series_tol: T) -> Result<Enclosure<T>> {
    Ok(majorant_with(spec, r, series_tol)? - Enclosure::rounded(spec.class.boundary_distance))
}

/// `Φ(r) = M(r) − d*`; negative at the origin and increasing.
pub fn phi<T: Real>(spec: &ProblemSpec<T>, r: T) -> Result<Enclosure<T>> {
    phi_with(spec, r, spec.series_tol())
}

/// Sign and positive weight `(s, w(r))` with `paper_residual = s · w(r) · Φ(r)`.
pub fn residual_normalization<T: Real>(spec: &ProblemSpec<T>, r: T) -> (i8, T) {
    let one_minus = T::one() - r;
    let two = T::lit(2.0);
    match (spec.class.id, spec.functional) {
        (ClassId::C1, Functional::GrowthDistortion) => (1, one_minus * one_minus),
        (ClassId::C1, _) => (1, T::one()),
        (ClassId::C2, Functional::GrowthDistortion) => (-1, two * one_minus * one_minus),
        (ClassId::C2, Functional::CoefficientPowers { p }) => {
            (-1, two * one_minus * (T::one() - r.powf(p)))
        }
        (ClassId::C2, Functional::Rogosinski { .. }) => (1, two * one_minus),
        (ClassId::C2, Functional::SquaredRogosinski { .. }) => (-1, two * one_minus * one_minus),
        (ClassId::C3, _) => (1, T::one()),
    }
}

/// Each theorem's defining equation, evaluated exactly as stated (same
/// arrangement of terms and the same sign convention). Infinite sums are
/// summed directly, independently of the closed forms behind [`majorant`].
///
/// The class constants are the stated ones; a perturbed
/// [`ClassSpec::boundary_distance`] is ignored here.
pub fn paper_residual<T: Real>(spec: &ProblemSpec<T>, r: T) -> Result<Enclosure<T>> {
    check_radius(r)?;
    spec.functional.validate()?;
    let tol = spec.series_tol();
    let re = Enclosure::exact(r);
    let one = exact::<T>(1.0);
    let om = one - re;
    let ln2 = Enclosure::rounded(T::LN_2());
    let ln1m = Enclosure::exact(-r).ln_1p();
    let pi2 = {
        let pi = Enclosure::rounded(T::PI());
        pi * pi
    };
    Ok(match (spec.class.id, spec.functional) {
        (ClassId::C1, Functional::GrowthDistortion) => {
            // log2-1-r(-6+r(2+r-log2)+log4)+2(1-r)^2 log(1-r)
            let inner =
                exact::<T>(-6.0) + re * (exact::<T>(2.0) + re - ln2) + ln2.scale(T::lit(2.0));
            ln2 - one - re * inner + om.square().scale(T::lit(2.0)) * ln1m
        }
        (ClassId::C1, Functional::CoefficientPowers { p }) => {
            let bracket = one - re.scale(T::lit(3.0)) + re * ln2
                - (exact::<T>(2.0) - re.scale(T::lit(2.0))).ln()
                + re * ln1m;
            power_sum(ClassId::C1, p, 2, r, tol)? - bracket / om
        }
        (ClassId::C1, Functional::Rogosinski { n }) => {
            re.scale(T::lit(2.0)) / om + ln1m + power_sum(ClassId::C1, T::one(), n, r, tol)?
                - (one - ln2)
        }
        (ClassId::C1, Functional::SquaredRogosinski { n }) => {
            (re.scale(T::lit(2.0)) / om + ln1m).square()
                + power_sum(ClassId::C1, T::one(), n, r, tol)?
                - (one - ln2)
        }
        (ClassId::C2, Functional::GrowthDistortion) => {
            // 1-6r+r^2+2r^3
            one + re * (exact::<T>(-6.0) + re * (one + re.scale(T::lit(2.0))))
        }
        (ClassId::C2, Functional::CoefficientPowers { p }) => {
            let rp = re.powf(p);
            let r2p = re.powf(T::lit(2.0) * p);
            one - re.scale(T::lit(3.0)) - rp - r2p.scale(T::lit(2.0))
                + (re * rp).scale(T::lit(3.0))
                + (re * r2p).scale(T::lit(2.0))
        }
        (ClassId::C2, Functional::Rogosinski { n }) => {
            re.scale(T::lit(3.0)) + pow_n(r, n).scale(T::lit(2.0)) - one
        }
        (ClassId::C2, Functional::SquaredRogosinski { n }) => {
            one - re.scale(T::lit(2.0)) - re.square() - pow_n(r, n).scale(T::lit(2.0))
                + pow_n(r, n + 1).scale(T::lit(2.0))
        }
        (ClassId::C3, Functional::GrowthDistortion) => {
            let rational = (exact::<T>(2.0) - re.square()).scale(T::lit(2.0)) * re
                / om.square().scale(T::lit(3.0));
            rational + li2(r)? / exact(3.0) - ln1m / exact(3.0)
                + series_inverse_powers(r, 2, 2, tol)? / exact(3.0)
                - (one / exact(3.0) + pi2 / exact(36.0))
        }
        (ClassId::C3, Functional::CoefficientPowers { p }) => {
            (exact::<T>(3.0) - re) * re / om.scale(T::lit(3.0))
                + series_inverse_powers(r, 2, 2, tol)? / exact(3.0)
                + power_sum(ClassId::C3, p, 2, r, tol)?
                - (exact::<T>(12.0) + pi2) / exact(36.0)
        }
        (ClassId::C3, Functional::Rogosinski { n }) => {
            let numer = exact::<T>(12.0) + pi2
                - re.scale(T::lit(36.0))
                - pi2 * re
                - pow_n(r, n).scale(T::lit(24.0));
            series_inverse_powers(r, 2, n, tol)? / exact(3.0) + li2(r)? / exact(3.0)
                - numer / om.scale(T::lit(36.0))
        }
        (ClassId::C3, Functional::SquaredRogosinski { n }) => {
            let growth = re.scale(T::lit(2.0)) / om.scale(T::lit(3.0)) + li2(r)? / exact(3.0);
            let numer =
                pow_n(r, n).scale(T::lit(24.0)) + (exact::<T>(12.0) + pi2) * re - exact(12.0) - pi2;
            growth.square()
                + series_inverse_powers(r, 2, n, tol)? / exact(3.0)
                + numer / om.scale(T::lit(36.0))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn spec(class: ClassId, f: Functional<f64>) -> ProblemSpec<f64> {
        ProblemSpec::new(class, f)
    }

    /// Brute-force majorant straight from the coefficient bounds; test oracle.
    fn brute_coeff_tail(class: ClassId, start: usize, r: f64) -> f64 {
        let mut s = 0.0;
        for n in start..200_000 {
            let t = crate::class_specs::coeff::<f64>(class, n) * r.powi(n as i32);
            s += t;
            if t < 1e-20 {
                break;
            }
        }
        s
    }

    #[test]
    fn coeff_tail_closed_forms_match_direct_summation() {
        for class in ClassId::ALL {
            for &start in &[2usize, 3, 7] {
                for &r in &[0.0, 0.1, 0.45, 0.7, 0.9] {
                    let e = coeff_tail(class, start, r).unwrap();
                    let b = brute_coeff_tail(class, start, r);
                    assert!((e.mid() - b).abs() < 1e-12, "{class} N={start} r={r}");
                }
            }
        }
    }

    #[test]
    fn majorant_examples() {
        let m = majorant(&spec(ClassId::C2, Functional::GrowthDistortion), 0.5).unwrap();
        assert!(m.contains(3.5), "{m:?}");
        let m = majorant(&spec(ClassId::C1, Functional::GrowthDistortion), 0.0).unwrap();
        assert!(m.contains(0.0));
        let m = majorant(&spec(ClassId::C2, Functional::Rogosinski { n: 2 }), 0.5).unwrap();
        assert!(m.contains(1.5));
    }

    #[test]
    fn phi_examples() {
        let v = phi(&spec(ClassId::C1, Functional::GrowthDistortion), 0.0).unwrap();
        assert!((v.mid() - (LN_2 - 1.0)).abs() < 1e-12);
        assert!((v.mid() + 0.306_852_8).abs() < 1e-7);
        let v = phi(
            &spec(ClassId::C2, Functional::CoefficientPowers { p: 2.0 }),
            0.0,
        )
        .unwrap();
        assert!(v.contains(-0.5));
        // 2r/(1-r) + ln(1-r) + Σ(2-1/n)^2 r^{2n} - (1 - ln 2), Σ by plain summation;
        // 1.2002576826089422 by 25-digit summation
        let r = 0.5f64;
        let mut sum = 0.0;
        for n in 2..2000 {
            sum += (2.0 - 1.0 / n as f64).powi(2) * r.powi(2 * n);
        }
        let oracle = 2.0 * r / (1.0 - r) + (1.0 - r).ln() + sum - (1.0 - LN_2);
        assert!((oracle - 1.200_257_682_608_942).abs() < 1e-14);
        let v = phi(
            &spec(ClassId::C1, Functional::CoefficientPowers { p: 2.0 }),
            r,
        )
        .unwrap();
        assert!((v.mid() - oracle).abs() < 1e-13);
    }

    #[test]
    fn majorant_width_respects_budget() {
        for id in TheoremId::all() {
            let f = match id.kind {
                FunctionalKind::F1 => Functional::GrowthDistortion,
                FunctionalKind::F2 => Functional::CoefficientPowers { p: 3.0 },
                FunctionalKind::F3 => Functional::Rogosinski { n: 4 },
                FunctionalKind::F4 => Functional::SquaredRogosinski { n: 4 },
            };
            let s = spec(id.class, f);
            for i in 0..=60 {
                let r = 0.01 * i as f64;
                let m = majorant(&s, r).unwrap();
                assert!(m.width() <= s.tol / 8.0, "{id} r={r} width={}", m.width());
            }
        }
    }

    #[test]
    fn paper_residual_spot_values() {
        let t21 = paper_residual(&spec(ClassId::C1, Functional::GrowthDistortion), 0.5).unwrap();
        assert!((t21.mid() - (11.0 / 8.0 - LN_2 / 4.0)).abs() < 1e-10);
        assert!((t21.mid() - 1.201_71).abs() < 1e-5);
        let t31 = paper_residual(&spec(ClassId::C2, Functional::GrowthDistortion), 0.0).unwrap();
        assert!(t31.contains(1.0));
        let t41 = paper_residual(&spec(ClassId::C3, Functional::GrowthDistortion), 0.5).unwrap();
        assert!((t41.mid() - 2.178_39).abs() < 1e-4);
    }

    #[test]
    fn functional_construction_checks_parameters() {
        assert!(Functional::<f64>::from_kind(FunctionalKind::F1, None, None).is_ok());
        assert!(Functional::<f64>::from_kind(FunctionalKind::F2, None, None).is_err());
        assert!(Functional::<f64>::from_kind(FunctionalKind::F2, Some(0.5), None).is_err());
        assert!(Functional::<f64>::from_kind(FunctionalKind::F3, None, Some(1)).is_err());
        assert!(Functional::<f64>::from_kind(FunctionalKind::F4, Some(2.0), Some(3)).is_err());
        assert_eq!(
            Functional::<f64>::from_kind(FunctionalKind::F4, None, Some(3)).unwrap(),
            Functional::SquaredRogosinski { n: 3 }
        );
    }

    #[test]
    fn majorant_rejects_bad_inputs() {
        let s = spec(ClassId::C1, Functional::Rogosinski { n: 1 });
        assert!(matches!(majorant(&s, 0.3), Err(Error::Parameter(_))));
        let s = spec(ClassId::C1, Functional::GrowthDistortion);
        assert!(matches!(majorant(&s, 1.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn theorem_tokens() {
        let tokens: Vec<String> = TheoremId::all().map(|t| t.token()).collect();
        assert_eq!(tokens.len(), 12);
        assert_eq!(tokens[0], "t2.1");
        assert_eq!(tokens[11], "t4.4");
        for t in TheoremId::all() {
            assert_eq!(t.token().parse::<TheoremId>().unwrap(), t);
        }
        for bad in ["t5.1", "t2.5", "2.1", "t2", ""] {
            assert!(matches!(
                bad.parse::<TheoremId>(),
                Err(Error::UnknownTheorem(_))
            ));
        }
    }

    #[test]
    fn tolerance_range_is_enforced() {
        let s = spec(ClassId::C1, Functional::GrowthDistortion);
        assert!(s.validate().is_ok());
        assert!(s.with_tol(1e-16).validate().is_err());
        assert!(s.with_tol(1e-2).validate().is_err());
    }
}
