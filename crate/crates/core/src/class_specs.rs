//! The three close-to-convex subclasses as numeric data: coefficient bounds,
//! growth and distortion envelopes, and the boundary distance `d*`.

use std::fmt;
use std::str::FromStr;

use crate::enclosure::Enclosure;
use crate::error::{domain, Error, Result};
use crate::scalar::Real;
use crate::special_fn::{li2, log1p_integral, neg_log1m_over_x};

/// One of the nested subclasses `C₃ ⊂ C₂ ⊂ C₁`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassId {
    C1,
    C2,
    C3,
}

impl ClassId {
    pub const ALL: [ClassId; 3] = [ClassId::C1, ClassId::C2, ClassId::C3];

    pub fn token(self) -> &'static str {
        match self {
            ClassId::C1 => "c1",
            ClassId::C2 => "c2",
            ClassId::C3 => "c3",
        }
    }

    /// Section number under which the class's theorems are numbered (2, 3, 4).
    pub fn section(self) -> u8 {
        match self {
            ClassId::C1 => 2,
            ClassId::C2 => 3,
            ClassId::C3 => 4,
        }
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for ClassId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "c1" => Ok(ClassId::C1),
            "c2" => Ok(ClassId::C2),
            "c3" => Ok(ClassId::C3),
            _ => Err(Error::Parameter(format!(
                "unknown class `{s}` (expected c1, c2 or c3)"
            ))),
        }
    }
}

/// Coefficient bound `c_n` without the `n ≥ 2` check.
pub(crate) fn coeff<T: Real>(class: ClassId, n: usize) -> T {
    let n = T::from_usize(n).unwrap_or_else(T::max_value);
    match class {
        ClassId::C1 => T::lit(2.0) - T::one() / n,
        ClassId::C2 => T::one(),
        ClassId::C3 => T::lit(2.0) / T::lit(3.0) + T::one() / (T::lit(3.0) * n * n),
    }
}

/// Sharp bound `|a_n| ≤ c_n`: `2 − 1/n`, `1`, or `2/3 + 1/(3n²)`.
pub fn coeff_bound<T: Real>(class: ClassId, n: usize) -> Result<T> {
    if n < 2 {
        return Err(domain("n", n as f64, "n >= 2"));
    }
    Ok(coeff(class, n))
}

fn check_radius<T: Real>(r: T) -> Result<Enclosure<T>> {
    if r >= T::zero() && r < T::one() {
        Ok(Enclosure::exact(r))
    } else {
        Err(domain("r", r.as_f64(), "[0, 1)"))
    }
}

/// Upper growth bound on `|f(z)|` for `|z| ≤ r`.
pub fn growth_upper<T: Real>(class: ClassId, r: T) -> Result<Enclosure<T>> {
    let re = check_radius(r)?;
    let one = Enclosure::exact(T::one());
    let geometric = re / (one - re);
    Ok(match class {
        // 2r/(1-r) + ln(1-r)
        ClassId::C1 => geometric.scale(T::lit(2.0)) + Enclosure::exact(-r).ln_1p(),
        ClassId::C2 => geometric,
        // 2r/(3(1-r)) + Li₂(r)/3
        ClassId::C3 => (geometric.scale(T::lit(2.0)) + li2(r)?) / Enclosure::exact(T::lit(3.0)),
    })
}

/// Lower growth bound on `|f(z)|` for `|z| = r`.
pub fn growth_lower<T: Real>(class: ClassId, r: T) -> Result<Enclosure<T>> {
    let re = check_radius(r)?;
    let one = Enclosure::exact(T::one());
    let geometric = re / (one + re);
    Ok(match class {
        ClassId::C1 => geometric.scale(T::lit(2.0)) - re.ln_1p(),
        ClassId::C2 => geometric,
        ClassId::C3 => {
            (geometric.scale(T::lit(2.0)) + log1p_integral(r)?) / Enclosure::exact(T::lit(3.0))
        }
    })
}

/// Upper distortion bound on `|f′(z)|` for `|z| ≤ r`.
///
/// For `C₃` the term `−ln(1−r)/(3r)` takes its limit `1/3` at `r = 0`.
pub fn distortion_upper<T: Real>(class: ClassId, r: T) -> Result<Enclosure<T>> {
    let re = check_radius(r)?;
    let one = Enclosure::exact(T::one());
    let sq = (one - re).square();
    Ok(match class {
        ClassId::C1 => (one + re) / sq,
        ClassId::C2 => one / sq,
        ClassId::C3 => {
            (Enclosure::exact(T::lit(2.0)) / sq + neg_log1m_over_x(r)?)
                / Enclosure::exact(T::lit(3.0))
        }
    })
}

/// `d*`, the lower bound on `d(f(0), ∂f(𝔻))`: `1 − ln 2`, `1/2`, `1/3 + π²/36`.
pub fn boundary_distance<T: Real>(class: ClassId) -> T {
    match class {
        ClassId::C1 => T::one() - T::LN_2(),
        ClassId::C2 => T::lit(0.5),
        ClassId::C3 => {
            let pi = T::PI();
            T::one() / T::lit(3.0) + pi * pi / T::lit(36.0)
        }
    }
}

/// A class bundled with the boundary distance used as the inequality target.
///
/// The target defaults to [`boundary_distance`]; [`ClassSpec::with_boundary_distance`]
/// replaces it, which the verification suite uses for fault injection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassSpec<T> {
    pub id: ClassId,
    pub boundary_distance: T,
}

impl<T: Real> ClassSpec<T> {
    pub fn new(id: ClassId) -> Self {
        Self {
            id,
            boundary_distance: boundary_distance(id),
        }
    }

    pub fn with_boundary_distance(mut self, d_star: T) -> Self {
        self.boundary_distance = d_star;
        self
    }

    pub fn coeff_bound(&self, n: usize) -> Result<T> {
        coeff_bound(self.id, n)
    }

    pub fn growth_upper(&self, r: T) -> Result<Enclosure<T>> {
        growth_upper(self.id, r)
    }

    pub fn growth_lower(&self, r: T) -> Result<Enclosure<T>> {
        growth_lower(self.id, r)
    }

    pub fn distortion_upper(&self, r: T) -> Result<Enclosure<T>> {
        distortion_upper(self.id, r)
    }
}

impl<T: Real> From<ClassId> for ClassSpec<T> {
    fn from(id: ClassId) -> Self {
        Self::new(id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{LN_2, PI};

    fn grid(points: usize, hi: f64) -> impl Iterator<Item = f64> {
        (0..points).map(move |i| hi * i as f64 / (points - 1) as f64)
    }

    #[test]
    fn coefficient_bounds() {
        assert_eq!(coeff_bound::<f64>(ClassId::C1, 2).unwrap(), 1.5);
        assert_eq!(coeff_bound::<f64>(ClassId::C2, 5).unwrap(), 1.0);
        assert_eq!(coeff_bound::<f64>(ClassId::C3, 2).unwrap(), 0.75);
        assert!(coeff_bound::<f64>(ClassId::C1, 1).is_err());
    }

    #[test]
    fn coefficient_trends() {
        for n in 2..200 {
            let (a, b) = (
                coeff::<f64>(ClassId::C1, n),
                coeff::<f64>(ClassId::C1, n + 1),
            );
            assert!(a < b && b < 2.0);
            let (a, b) = (
                coeff::<f64>(ClassId::C3, n),
                coeff::<f64>(ClassId::C3, n + 1),
            );
            assert!(a > b && b > 2.0 / 3.0);
        }
    }

    #[test]
    fn envelope_examples() {
        assert!(growth_upper(ClassId::C2, 0.5f64).unwrap().contains(1.0));
        assert!(growth_upper(ClassId::C1, 0.0f64).unwrap().contains(0.0));
        let c3 = growth_upper(ClassId::C3, 0.5f64).unwrap();
        assert!((c3.mid() - 0.860_746_842_2).abs() < 1e-10);
        assert!(distortion_upper(ClassId::C2, 0.0f64).unwrap().contains(1.0));
        assert!(distortion_upper(ClassId::C1, 0.5f64).unwrap().contains(6.0));
        assert!(distortion_upper(ClassId::C3, 0.0f64).unwrap().contains(1.0));
    }

    #[test]
    fn envelopes_reject_r_at_one() {
        for class in ClassId::ALL {
            assert!(growth_upper(class, 1.0f64).is_err());
            assert!(distortion_upper(class, -0.1f64).is_err());
        }
    }

    #[test]
    fn boundary_distances() {
        assert!((boundary_distance::<f64>(ClassId::C1) - 0.306_852_819_4).abs() < 1e-10);
        assert_eq!(boundary_distance::<f64>(ClassId::C2), 0.5);
        assert!((boundary_distance::<f64>(ClassId::C3) - 0.607_489_011_141_371).abs() < 1e-14);
        assert!((boundary_distance::<f64>(ClassId::C1) - (1.0 - LN_2)).abs() < 1e-16);
        assert!(
            (boundary_distance::<f64>(ClassId::C3) - (1.0 / 3.0 + PI * PI / 36.0)).abs() < 1e-15
        );
    }

    #[test]
    fn boundary_distance_is_limit_of_lower_growth() {
        for class in ClassId::ALL {
            let near_one = growth_lower(class, 1.0f64 - 1e-9).unwrap();
            assert!(
                (near_one.mid() - boundary_distance::<f64>(class)).abs() < 1e-6,
                "{class}"
            );
        }
    }

    #[test]
    fn normalization_at_origin() {
        for class in ClassId::ALL {
            assert!(growth_upper(class, 0.0f64).unwrap().contains(0.0));
            assert!(distortion_upper(class, 0.0f64).unwrap().contains(1.0));
        }
    }

    #[test]
    fn lower_growth_below_upper() {
        for class in ClassId::ALL {
            for r in grid(1000, 0.99) {
                let lo = growth_lower(class, r).unwrap();
                let hi = growth_upper(class, r).unwrap();
                assert!(lo.lo() <= hi.hi(), "{class} r = {r}");
            }
        }
    }

    #[test]
    fn c1_growth_upper_nonnegative() {
        for r in grid(1000, 0.99) {
            assert!(growth_upper(ClassId::C1, r).unwrap().hi() >= 0.0);
        }
    }

    #[test]
    fn bounds_nest_with_the_classes() {
        let slack = 1e-10;
        for n in 2..=50 {
            let c: Vec<f64> = ClassId::ALL.iter().map(|&k| coeff(k, n)).collect();
            assert!(c[2] <= c[1] && c[1] <= c[0]);
        }
        for r in grid(1000, 0.99) {
            let g: Vec<f64> = ClassId::ALL
                .iter()
                .map(|&k| growth_upper(k, r).unwrap().mid())
                .collect();
            assert!(
                g[2] <= g[1] + slack && g[1] <= g[0] + slack,
                "growth r = {r}"
            );
            let d: Vec<f64> = ClassId::ALL
                .iter()
                .map(|&k| distortion_upper(k, r).unwrap().mid())
                .collect();
            assert!(
                d[2] <= d[1] + slack && d[1] <= d[0] + slack,
                "distortion r = {r}"
            );
        }
        let d: Vec<f64> = ClassId::ALL.iter().map(|&k| boundary_distance(k)).collect();
        assert!(d[0] < d[1] && d[1] < d[2]);
    }

    #[test]
    fn class_tokens_round_trip() {
        for class in ClassId::ALL {
            assert_eq!(class.token().parse::<ClassId>().unwrap(), class);
        }
        assert!("c4".parse::<ClassId>().is_err());
    }
}
