//! Certified bisection for the unique root of `Φ` in `(0, 1)`.

use crate::class_specs::ClassId;
use crate::enclosure::Enclosure;
use crate::error::{Error, Result};
use crate::functionals::{phi, phi_with, FunctionalKind, ProblemSpec, TheoremId};
use crate::scalar::Real;

/// Bisection step limit.
pub const MAX_BISECTIONS: usize = 200;
/// How many times the series width target is halved before giving up on a sign.
pub const MAX_REFINEMENTS: usize = 4;
/// Initial upper end of the search bracket.
pub const INITIAL_UPPER: f64 = 0.9;

/// A solved radius together with the certified bracket around it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusResult<T> {
    pub theorem: TheoremId,
    /// Bracket midpoint.
    pub radius: T,
    pub bracket_lo: T,
    pub bracket_hi: T,
    /// `Φ(radius)`.
    pub residual: Enclosure<T>,
    pub iterations: usize,
}

impl<T: Real> RadiusResult<T> {
    pub fn bracket_width(&self) -> T {
        self.bracket_hi - self.bracket_lo
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Sign {
    Negative,
    Positive,
    /// Straddles zero with width at most the solver tolerance.
    Undecided,
}

fn certified_sign<T: Real>(spec: &ProblemSpec<T>, r: T) -> Result<Sign> {
    let mut series_tol = spec.series_tol();
    let mut enclosure = phi_with(spec, r, series_tol)?;
    for _ in 0..MAX_REFINEMENTS {
        if !enclosure.contains(T::zero()) {
            break;
        }
        series_tol = series_tol / T::lit(2.0);
        enclosure = phi_with(spec, r, series_tol)?;
    }
    if enclosure.is_negative() {
        Ok(Sign::Negative)
    } else if enclosure.is_positive() {
        Ok(Sign::Positive)
    } else if enclosure.width() <= spec.tol {
        Ok(Sign::Undecided)
    } else {
        Err(Error::AmbiguousSign {
            r: r.as_f64(),
            width: enclosure.width().as_f64(),
        })
    }
}

/// Finds the radius at which the majorant meets `d*`.
///
/// Pure bisection on certified signs of `Φ`, starting from `[0, 0.9]` and
/// widening the upper end to `1 − 1e−9` if needed. Deterministic.
pub fn solve_radius<T: Real>(spec: &ProblemSpec<T>) -> Result<RadiusResult<T>> {
    spec.validate()?;
    let tol = spec.tol;

    if certified_sign(spec, T::zero())? != Sign::Negative {
        return Err(Error::Parameter(format!(
            "objective must be negative at r = 0 (boundary distance {})",
            spec.class.boundary_distance
        )));
    }

    let mut lo = T::zero();
    let mut hi = T::lit(INITIAL_UPPER);
    if certified_sign(spec, hi)? != Sign::Positive {
        let r_max = T::one() - T::lit(1e-9).max(T::epsilon());
        if certified_sign(spec, r_max)? != Sign::Positive {
            return Err(Error::NoSignChange {
                r_max: r_max.as_f64(),
            });
        }
        hi = r_max;
    }

    let mut iterations = 0;
    while hi - lo > tol {
        if iterations >= MAX_BISECTIONS {
            return Err(Error::MaxIterations {
                iterations,
                tol: tol.as_f64(),
            });
        }
        let mid = lo + (hi - lo) / T::lit(2.0);
        if mid <= lo || mid >= hi {
            // the format cannot split the bracket any further
            return Err(Error::MaxIterations {
                iterations,
                tol: tol.as_f64(),
            });
        }
        iterations += 1;
        match certified_sign(spec, mid)? {
            Sign::Negative => lo = mid,
            Sign::Positive => hi = mid,
            Sign::Undecided => {
                let half = tol / T::lit(2.0);
                lo = lo.max(mid - half);
                hi = hi.min(mid + half);
                break;
            }
        }
    }

    let radius = lo + (hi - lo) / T::lit(2.0);
    Ok(RadiusResult {
        theorem: spec.theorem(),
        radius,
        bracket_lo: lo,
        bracket_hi: hi,
        residual: phi(spec, radius)?,
        iterations,
    })
}

/// Ascending coefficients of the polynomial equations stated for the
/// `t3.1`, `t3.3` and `t3.4` problems.
fn crosscheck_coefficients(theorem: TheoremId, n: Option<usize>) -> Result<Vec<f64>> {
    let need_n = || {
        n.filter(|&n| n >= 2)
            .ok_or_else(|| Error::Parameter(format!("{theorem} needs an integer N >= 2")))
    };
    if theorem.class != ClassId::C2 {
        return Err(Error::UnknownTheorem(theorem.token()));
    }
    match theorem.kind {
        // 1 - 6r + r^2 + 2r^3
        FunctionalKind::F1 => Ok(vec![1.0, -6.0, 1.0, 2.0]),
        // 3r + 2r^N - 1
        FunctionalKind::F3 => {
            let n = need_n()?;
            let mut c = vec![0.0; n + 1];
            c[0] = -1.0;
            c[1] = 3.0;
            c[n] += 2.0;
            Ok(c)
        }
        // 1 - 2r - r^2 - 2r^N + 2r^{N+1}
        FunctionalKind::F4 => {
            let n = need_n()?;
            let mut c = vec![0.0; n + 2];
            c[0] = 1.0;
            c[1] = -2.0;
            c[2] -= 1.0;
            c[n] -= 2.0;
            c[n + 1] += 2.0;
            Ok(c)
        }
        FunctionalKind::F2 => Err(Error::UnknownTheorem(theorem.token())),
    }
}

fn horner<T: Real>(coeffs: &[T], x: T) -> T {
    coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * x + c)
}

/// Independent root of the polynomial theorems `t3.1`, `t3.3`, `t3.4`:
/// a sign scan of the stated polynomial at step `1e−6`, then bisection
/// down to adjacent floating-point numbers. Does not touch [`phi`].
pub fn solve_polynomial_crosscheck<T: Real>(theorem: TheoremId, n: Option<usize>) -> Result<T> {
    let coeffs: Vec<T> = crosscheck_coefficients(theorem, n)?
        .into_iter()
        .map(T::lit)
        .collect();
    let steps = 1_000_000usize;
    let h = T::one() / T::from_usize(steps).unwrap_or_else(T::max_value);
    let mut a = T::zero();
    let mut fa = horner(&coeffs, a);
    for i in 1..steps {
        let b = T::from_usize(i).unwrap_or_else(T::max_value) * h;
        let fb = horner(&coeffs, b);
        if fb == T::zero() {
            return Ok(b);
        }
        if (fa < T::zero()) != (fb < T::zero()) {
            return Ok(bisect_polynomial(&coeffs, a, b, fa));
        }
        a = b;
        fa = fb;
    }
    Err(Error::NoSignChange { r_max: 1.0 })
}

fn bisect_polynomial<T: Real>(coeffs: &[T], mut a: T, mut b: T, fa: T) -> T {
    let neg_at_a = fa < T::zero();
    loop {
        let m = a + (b - a) / T::lit(2.0);
        if m <= a || m >= b {
            return m;
        }
        let fm = horner(coeffs, m);
        if fm == T::zero() {
            return m;
        }
        if (fm < T::zero()) == neg_at_a {
            a = m;
        } else {
            b = m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functionals::Functional;

    fn solve(class: ClassId, f: Functional<f64>) -> RadiusResult<f64> {
        solve_radius(&ProblemSpec::new(class, f)).unwrap()
    }

    #[test]
    fn radius_examples() {
        let r = solve(ClassId::C1, Functional::GrowthDistortion);
        assert!((r.radius - 0.110_377).abs() < 5e-6);
        let r = solve(ClassId::C2, Functional::GrowthDistortion);
        assert!((r.radius - 0.173_417).abs() < 5e-6);
        let r = solve(ClassId::C2, Functional::Rogosinski { n: 2 });
        let exact = (17f64.sqrt() - 3.0) / 4.0;
        assert!((exact - 0.280_776_406_4).abs() < 1e-10);
        assert!((r.radius - exact).abs() < 1e-11);
        let r = solve(ClassId::C1, Functional::CoefficientPowers { p: 2.0 });
        assert!((r.radius - 0.213_087).abs() < 1e-6);
        let r = solve(ClassId::C2, Functional::CoefficientPowers { p: 2.0 });
        assert!((r.radius - 0.327_553).abs() < 1e-6);
    }

    #[test]
    fn bracket_invariants() {
        let spec = ProblemSpec::<f64>::new(ClassId::C3, Functional::SquaredRogosinski { n: 3 });
        let r = solve_radius(&spec).unwrap();
        assert!(r.bracket_width() <= 2.0 * spec.tol);
        assert!(0.0 < r.bracket_lo && r.bracket_lo < r.bracket_hi && r.bracket_hi < 1.0);
        let lo = phi(&spec, r.bracket_lo).unwrap();
        let hi = phi(&spec, r.bracket_hi).unwrap();
        assert!(lo.hi() < hi.lo());
        assert!(lo.hi() < 0.0 || lo.width() <= spec.tol);
        assert!(hi.lo() > 0.0 || hi.width() <= spec.tol);
        assert!(r.residual.width() <= spec.tol && r.residual.mid().abs() < 1e-10);
        assert!(r.iterations <= 50);
    }

    #[test]
    fn deterministic() {
        let spec = ProblemSpec::new(ClassId::C1, Functional::CoefficientPowers { p: 3.5 });
        assert_eq!(solve_radius(&spec).unwrap(), solve_radius(&spec).unwrap());
    }

    #[test]
    fn huge_boundary_distance_has_no_sign_change() {
        let spec = ProblemSpec::new(ClassId::C2, Functional::Rogosinski { n: 2 });
        let spec = spec.with_class_spec(spec.class.with_boundary_distance(1e300));
        assert!(matches!(
            solve_radius(&spec),
            Err(Error::NoSignChange { .. })
        ));
    }

    #[test]
    fn large_boundary_distance_escalates_bracket() {
        // Φ(0.9) < 0 but the root exists below 1 - 1e-9.
        let spec = ProblemSpec::new(ClassId::C2, Functional::Rogosinski { n: 2 });
        let spec = spec.with_class_spec(spec.class.with_boundary_distance(50.0));
        let r = solve_radius(&spec).unwrap();
        // (r + r^2)/(1 - r) = 50
        let exact = (-51.0 + (51.0f64 * 51.0 + 200.0).sqrt()) / 2.0;
        assert!((r.radius - exact).abs() < 1e-10, "{}", r.radius);
    }

    #[test]
    fn rejects_invalid_problem() {
        let spec = ProblemSpec::new(ClassId::C1, Functional::GrowthDistortion).with_tol(0.5);
        assert!(matches!(solve_radius(&spec), Err(Error::Parameter(_))));
        let spec = ProblemSpec::<f64>::new(ClassId::C1, Functional::Rogosinski { n: 0 });
        assert!(solve_radius(&spec).is_err());
    }

    #[test]
    fn polynomial_crosscheck_examples() {
        let t31: f64 =
            solve_polynomial_crosscheck(TheoremId::new(ClassId::C2, FunctionalKind::F1), None)
                .unwrap();
        assert!((t31 - 0.173_417).abs() < 5e-7);
        let t33: f64 =
            solve_polynomial_crosscheck(TheoremId::new(ClassId::C2, FunctionalKind::F3), Some(2))
                .unwrap();
        assert!((t33 - (17f64.sqrt() - 3.0) / 4.0).abs() < 1e-15);
        let t34: f64 =
            solve_polynomial_crosscheck(TheoremId::new(ClassId::C2, FunctionalKind::F4), Some(2))
                .unwrap();
        assert!((2.0 * t34.powi(3) - 3.0 * t34 * t34 - 2.0 * t34 + 1.0).abs() < 1e-15);
    }

    #[test]
    fn polynomial_crosscheck_rejects_other_theorems() {
        for t in TheoremId::all() {
            let poly = t.class == ClassId::C2 && t.kind != FunctionalKind::F2;
            if !poly {
                assert!(
                    solve_polynomial_crosscheck::<f64>(t, Some(2)).is_err(),
                    "{t}"
                );
            }
        }
        let t33 = TheoremId::new(ClassId::C2, FunctionalKind::F3);
        assert!(solve_polynomial_crosscheck::<f64>(t33, None).is_err());
    }

    #[test]
    fn single_precision_solve() {
        let spec = ProblemSpec::<f32>::new(ClassId::C2, Functional::GrowthDistortion);
        let r = solve_radius(&spec).unwrap();
        assert!((r.radius - 0.173_417).abs() < 2e-5);
    }
}
