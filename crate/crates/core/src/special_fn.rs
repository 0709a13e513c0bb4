//! Certified evaluation of the transcendental building blocks: the
//! dilogarithm, logarithmic series tails and coefficient power sums.
//!
//! Every truncated series carries an explicit bound on its tail, and the
//! floating-point summation error is bounded a posteriori, so the returned
//! [`Enclosure`] always contains the exact value.

use crate::class_specs::{coeff, ClassId};
use crate::enclosure::Enclosure;
use crate::error::{domain, Error, Result};
use crate::scalar::Real;

/// Upper limit on the number of terms any single series may consume.
pub const MAX_SERIES_TERMS: usize = 20_000_000;

/// Compensated (Neumaier) summation that also tracks a rigorous bound on the
/// accumulated error.
#[derive(Debug, Clone)]
pub struct SeriesSum<T> {
    sum: T,
    comp: T,
    abs_sum: T,
    term_err: T,
    count: usize,
}

impl<T: Real> Default for SeriesSum<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Real> SeriesSum<T> {
    pub fn new() -> Self {
        Self {
            sum: T::zero(),
            comp: T::zero(),
            abs_sum: T::zero(),
            term_err: T::zero(),
            count: 0,
        }
    }

    /// Adds `term`, which is known to within `|term| * rel_err`.
    pub fn push(&mut self, term: T, rel_err: T) {
        let t = self.sum + term;
        if self.sum.abs() >= term.abs() {
            self.comp = self.comp + ((self.sum - t) + term);
        } else {
            self.comp = self.comp + ((term - t) + self.sum);
        }
        self.sum = t;
        self.abs_sum = self.abs_sum + term.abs();
        self.term_err = self.term_err + term.abs() * rel_err;
        self.count += 1;
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn value(&self) -> T {
        self.sum + self.comp
    }

    /// Encloses the accumulated sum plus a tail known to lie in
    /// `[tail_lo, tail_hi]`.
    pub fn finish(&self, tail_lo: T, tail_hi: T) -> Enclosure<T> {
        let eps = T::epsilon();
        let value = self.value();
        let n = T::from_usize(self.count).unwrap_or_else(T::max_value);
        let rounding = eps * value.abs() + (n * eps) * (n * eps) * self.abs_sum;
        // The bound is itself computed in floating point; pad it.
        let err = (rounding + self.term_err) * T::lit(1.5) + T::min_positive_value();
        Enclosure::new(value - err + tail_lo, value + err + tail_hi).widened()
    }
}

fn check_unit_closed<T: Real>(name: &'static str, x: T) -> Result<()> {
    if x >= T::zero() && x <= T::one() {
        Ok(())
    } else {
        Err(domain(name, x.as_f64(), "[0, 1]"))
    }
}

fn check_unit_open<T: Real>(name: &'static str, r: T) -> Result<()> {
    if r >= T::zero() && r < T::one() {
        Ok(())
    } else {
        Err(domain(name, r.as_f64(), "[0, 1)"))
    }
}

fn usize_to<T: Real>(n: usize) -> T {
    T::from_usize(n).unwrap_or_else(T::max_value)
}

/// Relative error bound of a term `x^n / d` where `x^n` is built by `n`
/// rounded multiplications from an input already off by `base` epsilons.
fn power_rel_err<T: Real>(n: usize, base: T) -> T {
    (usize_to::<T>(n) * (base + T::lit(0.5)) + T::lit(3.0)) * T::epsilon()
}

/// Safety factor applied to analytic tail bounds evaluated in floating point.
fn tail_pad<T: Real>() -> T {
    T::lit(1.0 + 1e-6)
}

/// `Σ_{n≥start} x^n / n^k` for `x` in `[0, 1)` and `k ≥ 1`, truncated once
/// the tail bound `x^M / (M^k (1 - x))` drops below `tol / 2`.
fn inverse_power_series<T: Real>(x: T, k: i32, start: usize, tol: T) -> Result<Enclosure<T>> {
    debug_assert!(x >= T::zero() && x < T::one() && start >= 1);
    let one_minus = T::one() - x;
    let mut acc = SeriesSum::new();
    let mut xn = x.powi(start as i32);
    let mut n = start;
    loop {
        let nf = usize_to::<T>(n);
        acc.push(xn / nf.powi(k), power_rel_err(n, T::zero()));
        xn = xn * x;
        let next = usize_to::<T>(n + 1);
        let tail = xn / (next.powi(k) * one_minus) * tail_pad();
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

/// `Σ_{n≥start} xⁿ/nᵏ` summed term by term with an explicit tail bound,
/// to width `tol`.
pub fn series_inverse_powers<T: Real>(x: T, k: i32, start: usize, tol: T) -> Result<Enclosure<T>> {
    check_unit_open("x", x)?;
    if start < 1 || k < 1 {
        return Err(Error::Parameter(format!(
            "need start >= 1 and k >= 1, got {start}, {k}"
        )));
    }
    if tol.is_nan() || tol <= T::zero() {
        return Err(Error::Parameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    inverse_power_series(x, k, start, tol)
}

/// Finite sum `Σ_{n=1}^{count} x^n / n^k`.
fn inverse_power_prefix<T: Real>(x: T, k: i32, count: usize) -> Enclosure<T> {
    let mut acc = SeriesSum::new();
    let mut xn = x;
    for n in 1..=count {
        acc.push(xn / usize_to::<T>(n).powi(k), power_rel_err(n, T::zero()));
        xn = xn * x;
    }
    acc.finish(T::zero(), T::zero())
}

/// Width target for the internal dilogarithm series: essentially exact.
fn li2_series_tol<T: Real>() -> T {
    T::epsilon() / T::lit(4.0)
}

/// The dilogarithm `Li₂(x) = Σ_{n≥1} xⁿ/n²` on `[0, 1]`.
///
/// The series is summed directly for `x ≤ 1/2`; above that the reflection
/// `Li₂(x) = π²/6 − ln(x) ln(1−x) − Li₂(1−x)` keeps the convergence geometric.
pub fn li2<T: Real>(x: T) -> Result<Enclosure<T>> {
    check_unit_closed("x", x)?;
    let half = T::lit(0.5);
    if x == T::one() {
        return Ok(zeta2());
    }
    if x <= half {
        return inverse_power_series(x, 2, 1, li2_series_tol());
    }
    // 1 - x is exact here (Sterbenz).
    let y = T::one() - x;
    let logs = Enclosure::exact(x).ln() * Enclosure::exact(y).ln();
    Ok(zeta2() - logs - inverse_power_series(y, 2, 1, li2_series_tol())?)
}

/// `π²/6`.
pub fn zeta2<T: Real>() -> Enclosure<T> {
    let pi = T::PI();
    // three roundings of at most half an ulp each
    Enclosure::rounded(pi * pi / T::lit(6.0))
}

/// `∫₀ˣ ln(1+t)/t dt = −Li₂(−x)` for `x` in `[0, 1]`, evaluated through
/// `Li₂(−x) = ½ Li₂(x²) − Li₂(x)`.
pub fn log1p_integral<T: Real>(x: T) -> Result<Enclosure<T>> {
    check_unit_closed("x", x)?;
    Ok(li2(x)? - li2(x * x)?.scale(T::lit(0.5)))
}

/// Dilogarithm on the closed interval `[−1, 1]`.
pub fn li2_signed<T: Real>(x: T) -> Result<Enclosure<T>> {
    if x >= T::zero() {
        li2(x)
    } else if x >= -T::one() {
        Ok(-log1p_integral(-x)?)
    } else {
        Err(domain("x", x.as_f64(), "[-1, 1]"))
    }
}

/// `Σ_{n≥N} rⁿ/n`, the tail of `−ln(1−r)`.
///
/// Small arguments are summed directly; otherwise the closed form
/// `−ln(1−r) − Σ_{n<N} rⁿ/n` is used.
pub fn tail_log_series<T: Real>(r: T, start: usize) -> Result<Enclosure<T>> {
    check_unit_open("r", r)?;
    if start < 1 {
        return Err(Error::Parameter(format!(
            "series start must be >= 1, got {start}"
        )));
    }
    if r <= T::lit(0.5) {
        return inverse_power_series(r, 1, start, li2_series_tol());
    }
    let full = -Enclosure::exact(-r).ln_1p();
    if start == 1 {
        return Ok(full);
    }
    Ok(full - inverse_power_prefix(r, 1, start - 1))
}

/// `Σ_{n≥N} rⁿ/n² = Li₂(r) − Σ_{n<N} rⁿ/n²`.
pub fn tail_dilog_series<T: Real>(r: T, start: usize) -> Result<Enclosure<T>> {
    check_unit_open("r", r)?;
    if start < 1 {
        return Err(Error::Parameter(format!(
            "series start must be >= 1, got {start}"
        )));
    }
    let full = li2(r)?;
    if start == 1 {
        return Ok(full);
    }
    Ok(full - inverse_power_prefix(r, 2, start - 1))
}

/// `−ln(1−r)/r`, continued by its limit 1 at `r = 0`.
pub fn neg_log1m_over_x<T: Real>(r: T) -> Result<Enclosure<T>> {
    check_unit_open("r", r)?;
    if r <= T::lit(0.5) {
        // Σ_{n≥1} r^{n-1}/n = 1 + Σ_{n≥2} r^{n-1}/n; summed as 1 + tail/r would
        // lose the r = 0 case, so sum the shifted series directly.
        let mut acc = SeriesSum::new();
        let mut rn = T::one();
        let mut n = 1usize;
        loop {
            acc.push(rn / usize_to::<T>(n), power_rel_err(n, T::zero()));
            rn = rn * r;
            let tail = rn / (usize_to::<T>(n + 1) * (T::one() - r)) * tail_pad();
            if tail < li2_series_tol() {
                return Ok(acc.finish(T::zero(), tail));
            }
            n += 1;
        }
    }
    Ok(-Enclosure::exact(-r).ln_1p() / Enclosure::exact(r))
}

/// Supremum of the class coefficient bound over `n ≥ from`.
fn coeff_sup<T: Real>(class: ClassId, from: usize) -> T {
    match class {
        ClassId::C1 => T::lit(2.0),
        ClassId::C2 => T::one(),
        // decreasing toward 2/3
        ClassId::C3 => coeff(class, from.max(2)),
    }
}

/// `Σ_{n≥start} c_nᵖ r^{pn}` where `c_n` is the class coefficient bound.
///
/// Truncated at the first index `M` for which `sup_{n≥M} c_nᵖ · r^{pM} / (1 − rᵖ)`
/// falls below `tol / 2`, so the enclosure width is at most `tol` once the
/// rounding error is negligible against it.
pub fn power_sum<T: Real>(
    class: ClassId,
    p: T,
    start: usize,
    r: T,
    tol: T,
) -> Result<Enclosure<T>> {
    check_unit_open("r", r)?;
    if !p.is_finite() || p < T::one() {
        return Err(Error::Parameter(format!("power p must be >= 1, got {p}")));
    }
    if start < 2 {
        return Err(Error::Parameter(format!(
            "power sum starts at n >= 2, got {start}"
        )));
    }
    if tol.is_nan() || tol <= T::zero() {
        return Err(Error::Parameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let x = r.powf(p);
    if x >= T::one() {
        return Err(domain("r^p", x.as_f64(), "[0, 1)"));
    }
    if x == T::zero() {
        return Ok(Enclosure::zero());
    }
    let one_minus = T::one() - x;
    let p_err = T::lit(3.0) * p + T::lit(4.0);
    let mut acc = SeriesSum::new();
    let mut xn = x.powi(start as i32);
    let mut n = start;
    loop {
        let cp = coeff::<T>(class, n).powf(p);
        acc.push(
            cp * xn,
            power_rel_err(n, T::lit(2.0)) + p_err * T::epsilon(),
        );
        xn = xn * x;
        let tail = coeff_sup::<T>(class, n + 1).powf(p) * xn / one_minus * tail_pad();
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
