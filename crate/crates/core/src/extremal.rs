//! Extremal functions of the three classes and the sharpness check.
//!
//! | class | extremal `f(z)`                                   | sharpness point |
//! |-------|---------------------------------------------------|-----------------|
//! | `C₁`  | `2z/(1+z) − ln(1+z)`                              | `z = −r`        |
//! | `C₂`  | `z/(1−z)`                                         | `z = r`         |
//! | `C₃`  | `2z/(3(1−z)) − (1/3)∫₀ᶻ ln(1−ζ)/ζ dζ`             | `z = r`         |
//!
//! The left-hand sides are evaluated from the functions themselves and from
//! their Taylor coefficients summed term by term, not from the class bounds.

use crate::class_specs::ClassId;
use crate::enclosure::Enclosure;
use crate::error::{domain, Error, Result};
use crate::functionals::{Functional, ProblemSpec, TheoremId};
use crate::radius_solver::RadiusResult;
use crate::scalar::Real;
use crate::special_fn::{li2_signed, neg_log1m_over_x, SeriesSum, MAX_SERIES_TERMS};

/// Default tolerance for [`verify_sharpness`].
pub const DEFAULT_SHARPNESS_TOL: f64 = 1e-9;

/// Signed Taylor coefficient `a_n` of the class extremal function.
pub fn extremal_coeff<T: Real>(class: ClassId, n: usize) -> T {
    if n == 0 {
        return T::zero();
    }
    let nf = T::from_usize(n).unwrap_or_else(T::max_value);
    match class {
        ClassId::C1 => {
            let c = T::lit(2.0) - T::one() / nf;
            if n % 2 == 1 {
                c
            } else {
                -c
            }
        }
        ClassId::C2 => T::one(),
        ClassId::C3 => T::lit(2.0) / T::lit(3.0) + T::one() / (T::lit(3.0) * nf * nf),
    }
}

/// The point on the real axis where the class extremal attains its bounds.
pub fn sharpness_point<T: Real>(class: ClassId, r: T) -> T {
    match class {
        ClassId::C1 => -r,
        ClassId::C2 | ClassId::C3 => r,
    }
}

/// `Σ_{n≥start} |a_n|^q xⁿ` over the extremal's own coefficients.
fn coefficient_series<T: Real>(
    class: ClassId,
    start: usize,
    x: T,
    q: T,
    tol: T,
) -> Result<Enclosure<T>> {
    if x == T::zero() {
        return Ok(Enclosure::zero());
    }
    let sup = match class {
        ClassId::C1 => T::lit(2.0),
        ClassId::C2 | ClassId::C3 => T::one(),
    }
    .powf(q);
    let one_minus = T::one() - x;
    let mut acc = SeriesSum::new();
    let mut xn = x.powi(start as i32);
    let mut n = start;
    loop {
        let a = extremal_coeff::<T>(class, n).abs().powf(q);
        let rel =
            (T::from_usize(2 * n).unwrap_or_else(T::max_value) + T::lit(4.0) * q + T::lit(8.0))
                * T::epsilon();
        acc.push(a * xn, rel);
        xn = xn * x;
        let tail = sup * xn / one_minus * T::lit(1.0 + 1e-6);
        if tail < tol / T::lit(2.0) {
            return Ok(acc.finish(T::zero(), tail));
        }
        n += 1;
        if acc.len() >= MAX_SERIES_TERMS {
            return Err(Error::SeriesTruncation {
                max_terms: MAX_SERIES_TERMS,
                tol: tol.as_f64(),
            });
        }
    }
}

/// `|f(z)|` and `|f′(z)|` of the class extremal at real `z`.
fn value_and_derivative<T: Real>(class: ClassId, z: T) -> Result<(Enclosure<T>, Enclosure<T>)> {
    let ze = Enclosure::exact(z);
    let one = Enclosure::exact(T::one());
    let two = Enclosure::exact(T::lit(2.0));
    let three = Enclosure::exact(T::lit(3.0));
    let (f, df) = match class {
        ClassId::C1 => {
            let f = ze.scale(T::lit(2.0)) / (one + ze) - ze.ln_1p();
            let df = (one - ze) / (one + ze).square();
            (f, df)
        }
        ClassId::C2 => (ze / (one - ze), one / (one - ze).square()),
        ClassId::C3 => {
            let f = (ze.scale(T::lit(2.0)) / (one - ze) + li2_signed(z)?) / three;
            // -ln(1-z)/z, limit 1 at the origin
            let log_ratio = if z >= T::zero() {
                neg_log1m_over_x(z)?
            } else {
                let a = Enclosure::exact(-z);
                a.ln_1p() / a
            };
            let df = (two / (one - ze).square() + log_ratio) / three;
            (f, df)
        }
    };
    Ok((f.abs(), df.abs()))
}

/// Left-hand side of the inequality for the class extremal evaluated at the
/// real point `z`, `|z| < 1`.
pub fn extremal_lhs_at<T: Real>(spec: &ProblemSpec<T>, z: T) -> Result<Enclosure<T>> {
    if !(z > -T::one() && z < T::one()) {
        return Err(domain("z", z.as_f64(), "(-1, 1)"));
    }
    spec.functional.validate()?;
    let class = spec.class.id;
    let tol = spec.series_tol();
    let a = z.abs();
    let one = T::one();
    Ok(match spec.functional {
        Functional::GrowthDistortion => {
            let (f, df) = value_and_derivative(class, z)?;
            f + df.scale(a) + coefficient_series(class, 2, a, one, tol)?
        }
        Functional::CoefficientPowers { p } => {
            Enclosure::exact(a)
                + coefficient_series(class, 2, a, one, tol)?
                + coefficient_series(class, 2, a.powf(p), p, tol)?
                    .inflate(a.powf(p) * T::lit(4.0) * T::epsilon())
        }
        Functional::Rogosinski { n } => {
            value_and_derivative(class, z)?.0 + coefficient_series(class, n, a, one, tol)?
        }
        Functional::SquaredRogosinski { n } => {
            value_and_derivative(class, z)?.0.square() + coefficient_series(class, n, a, one, tol)?
        }
    })
}

/// Left-hand side for the class extremal at its sharpness point for radius `r`.
pub fn extremal_lhs<T: Real>(spec: &ProblemSpec<T>, r: T) -> Result<Enclosure<T>> {
    if !(r >= T::zero() && r < T::one()) {
        return Err(domain("r", r.as_f64(), "[0, 1)"));
    }
    extremal_lhs_at(spec, sharpness_point(spec.class.id, r))
}

/// Outcome of evaluating the extremal at a solved radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SharpnessReport<T> {
    pub theorem: TheoremId,
    pub radius: T,
    pub lhs_at_extremal: Enclosure<T>,
    pub target_d_star: T,
    /// `|midpoint(lhs) − d*|`
    pub gap: T,
    pub tol: T,
    pub pass: bool,
}

/// Checks that the extremal's left-hand side equals `d*` at `result.radius`.
///
/// Evaluation failures are reported as a failed check with an unbounded
/// enclosure.
pub fn verify_sharpness<T: Real>(
    spec: &ProblemSpec<T>,
    result: &RadiusResult<T>,
    tol: T,
) -> SharpnessReport<T> {
    let target = spec.class.boundary_distance;
    let (lhs, gap) = match extremal_lhs(spec, result.radius) {
        Ok(lhs) => (lhs, (lhs.mid() - target).abs()),
        Err(_) => (
            Enclosure::new(T::neg_infinity(), T::infinity()),
            T::infinity(),
        ),
    };
    let pass = gap <= tol && lhs.inflate(tol).contains(target);
    SharpnessReport {
        theorem: spec.theorem(),
        radius: result.radius,
        lhs_at_extremal: lhs,
        target_d_star: target,
        gap,
        tol,
        pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class_specs::coeff_bound;
    use crate::functionals::majorant;
    use crate::radius_solver::solve_radius;
    use std::f64::consts::{LN_2, PI};

    fn spec(class: ClassId, f: Functional<f64>) -> ProblemSpec<f64> {
        ProblemSpec::new(class, f)
    }

    #[test]
    fn coefficient_examples() {
        assert!((extremal_coeff::<f64>(ClassId::C1, 3) - 5.0 / 3.0).abs() < 1e-15);
        assert!((extremal_coeff::<f64>(ClassId::C1, 2) + 1.5).abs() < 1e-15);
        assert_eq!(extremal_coeff::<f64>(ClassId::C2, 7), 1.0);
        assert_eq!(extremal_coeff::<f64>(ClassId::C3, 2), 0.75);
        for class in ClassId::ALL {
            assert_eq!(extremal_coeff::<f64>(class, 1), 1.0);
        }
    }

    #[test]
    fn coefficients_attain_the_bounds() {
        for class in ClassId::ALL {
            for n in 2..=100 {
                let a: f64 = extremal_coeff(class, n);
                assert_eq!(
                    a.abs(),
                    coeff_bound::<f64>(class, n).unwrap(),
                    "{class} n={n}"
                );
            }
        }
    }

    #[test]
    fn c1_extremal_taylor_series_matches_closed_form() {
        for &z in &[-0.6f64, -0.2, 0.3, 0.7] {
            let closed = 2.0 * z / (1.0 + z) - (1.0 + z).ln();
            let series: f64 = (1..4000)
                .map(|n| extremal_coeff::<f64>(ClassId::C1, n) * z.powi(n as i32))
                .sum();
            assert!((closed - series).abs() < 1e-12, "z = {z}");
        }
    }

    /// Composite Gauss–Legendre (5 nodes) on `[0, r]` of `−ln(1−t)/t`.
    fn quad_neg_log_over_t(r: f64) -> f64 {
        let nodes = [
            0.0,
            -0.538_469_310_105_683,
            0.538_469_310_105_683,
            -0.906_179_845_938_664,
            0.906_179_845_938_664,
        ];
        let weights = [
            0.568_888_888_888_889,
            0.478_628_670_499_366,
            0.478_628_670_499_366,
            0.236_926_885_056_189,
            0.236_926_885_056_189,
        ];
        let panels = 200;
        let h = r / panels as f64;
        let mut s = 0.0;
        for k in 0..panels {
            let c = (k as f64 + 0.5) * h;
            for (x, w) in nodes.iter().zip(weights) {
                let t = c + 0.5 * h * x;
                s += 0.5 * h * w * (-(-t).ln_1p() / t);
            }
        }
        s
    }

    #[test]
    fn c3_extremal_value_matches_quadrature() {
        let s = spec(ClassId::C3, Functional::Rogosinski { n: 1_000_000 });
        for i in 1..=20 {
            let r = 0.045 * i as f64;
            let f = 2.0 * r / (3.0 * (1.0 - r)) + quad_neg_log_over_t(r) / 3.0;
            let (encl, _) = value_and_derivative(ClassId::C3, r).unwrap();
            assert!((encl.mid() - f).abs() < 1e-9, "r = {r}");
            let _ = &s;
        }
    }

    #[test]
    fn lhs_examples_at_reference_radii() {
        let cases = [
            (ClassId::C2, 0.173_417_f64, 0.5),
            (ClassId::C1, 0.110_377, 1.0 - LN_2),
            (ClassId::C3, 0.213_035, 1.0 / 3.0 + PI * PI / 36.0),
        ];
        for (class, r, target) in cases {
            let lhs = extremal_lhs(&spec(class, Functional::GrowthDistortion), r).unwrap();
            assert!((lhs.mid() - target).abs() < 1e-5, "{class}: {lhs:?}");
        }
    }

    #[test]
    fn f2_value_independent_of_point_sign() {
        let s = spec(ClassId::C1, Functional::CoefficientPowers { p: 2.5 });
        let plus = extremal_lhs_at(&s, 0.3).unwrap();
        let minus = extremal_lhs_at(&s, -0.3).unwrap();
        assert_eq!(plus, minus);
    }

    #[test]
    fn c1_positive_point_is_not_extremal_for_f1() {
        let s = spec(ClassId::C1, Functional::GrowthDistortion);
        let plus = extremal_lhs_at(&s, 0.3).unwrap();
        let minus = extremal_lhs_at(&s, -0.3).unwrap();
        assert!(plus.hi() < minus.lo());
        assert!(minus.overlaps(&majorant(&s, 0.3).unwrap().inflate(1e-12)));
    }

    #[test]
    fn sharpness_examples() {
        let s = spec(ClassId::C1, Functional::GrowthDistortion);
        let res = solve_radius(&s).unwrap();
        assert!(verify_sharpness(&s, &res, 1e-9).pass);

        let s = spec(ClassId::C2, Functional::SquaredRogosinski { n: 2 });
        let res = solve_radius(&s).unwrap();
        let r = res.radius;
        let direct = (r / (1.0 - r)).powi(2) + r * r / (1.0 - r);
        assert!((direct - 0.5).abs() < 1e-10);
        assert!(verify_sharpness(&s, &res, 1e-9).pass);

        let s = spec(ClassId::C1, Functional::GrowthDistortion);
        let fake = RadiusResult {
            radius: 0.05,
            ..res
        };
        let report = verify_sharpness(&s, &fake, 1e-9);
        assert!(!report.pass && report.gap > 0.1);
    }

    #[test]
    fn out_of_range_point_is_rejected() {
        let s = spec(ClassId::C2, Functional::GrowthDistortion);
        assert!(extremal_lhs_at(&s, 1.0).is_err());
        assert!(extremal_lhs(&s, -0.1).is_err());
    }
}
