//! Interval enclosures with outward rounding emulated by ulp widening.
//!
//! No rounding-mode control is used. Every combination is evaluated in
//! round-to-nearest and both endpoints are then pushed outward by
//! [`WIDEN_ULPS`] units in the last place, which dominates the half-ulp error
//! of a single IEEE operation and the few-ulp error of the libm elementary
//! functions.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::scalar::Real;

/// Number of ulps each endpoint is pushed outward after an operation.
pub const WIDEN_ULPS: i32 = 4;

/// Closed interval `[lo, hi]` certified to contain a real quantity.
#[derive(Clone, Copy, PartialEq)]
pub struct Enclosure<T> {
    lo: T,
    hi: T,
}

impl<T: Real> Enclosure<T> {
    /// # Panics
    ///
    /// Panics if `lo > hi` or either endpoint is NaN.
    pub fn new(lo: T, hi: T) -> Self {
        assert!(lo <= hi, "invalid enclosure [{lo}, {hi}]");
        Self { lo, hi }
    }

    /// Images of a monotone map at nearly equal endpoints can come back
    /// swapped by one ulp; order them before widening.
    fn ordered(a: T, b: T) -> Self {
        Self::new(a.min(b), a.max(b))
    }

    /// Degenerate enclosure of a value known exactly.
    pub fn exact(x: T) -> Self {
        Self::new(x, x)
    }

    /// Enclosure of a value produced by one rounded evaluation (a libm call
    /// or a correctly rounded constant).
    pub fn rounded(x: T) -> Self {
        Self::exact(x).widened()
    }

    /// `[center - radius, center + radius]`, widened.
    pub fn around(center: T, radius: T) -> Self {
        let radius = radius.abs();
        Self::new(center - radius, center + radius).widened()
    }

    pub fn zero() -> Self {
        Self::exact(T::zero())
    }

    pub fn lo(&self) -> T {
        self.lo
    }

    pub fn hi(&self) -> T {
        self.hi
    }

    pub fn mid(&self) -> T {
        if self.lo.is_infinite() || self.hi.is_infinite() {
            return self.lo + self.hi;
        }
        self.lo + (self.hi - self.lo) / T::lit(2.0)
    }

    pub fn width(&self) -> T {
        self.hi - self.lo
    }

    pub fn contains(&self, x: T) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// True when both enclosures share at least one point.
    pub fn overlaps(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo > T::zero()
    }

    pub fn is_negative(&self) -> bool {
        self.hi < T::zero()
    }

    /// Pushes both endpoints outward by [`WIDEN_ULPS`] ulps.
    pub fn widened(self) -> Self {
        let k = T::lit(f64::from(WIDEN_ULPS));
        Self {
            lo: self.lo - k * self.lo.ulp(),
            hi: self.hi + k * self.hi.ulp(),
        }
    }

    /// Pushes both endpoints outward by an absolute amount.
    pub fn inflate(self, by: T) -> Self {
        Self::new(self.lo - by.abs(), self.hi + by.abs()).widened()
    }

    pub fn hull(self, other: Self) -> Self {
        Self::new(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    /// Multiplication by an exactly known scalar.
    pub fn scale(self, k: T) -> Self {
        let (a, b) = (self.lo * k, self.hi * k);
        Self::new(a.min(b), a.max(b)).widened()
    }

    pub fn square(self) -> Self {
        let (a, b) = (self.lo * self.lo, self.hi * self.hi);
        let out = if self.lo >= T::zero() {
            Self::new(a, b)
        } else if self.hi <= T::zero() {
            Self::new(b, a)
        } else {
            Self::new(T::zero(), a.max(b))
        };
        out.widened()
    }

    pub fn abs(self) -> Self {
        if self.lo >= T::zero() {
            self
        } else if self.hi <= T::zero() {
            -self
        } else {
            Self::new(T::zero(), self.hi.max(-self.lo))
        }
    }

    /// Natural logarithm; the enclosure must be strictly positive.
    pub fn ln(self) -> Self {
        debug_assert!(self.lo > T::zero());
        Self::ordered(self.lo.ln(), self.hi.ln()).widened()
    }

    /// `ln(1 + x)`; requires `lo > -1`.
    pub fn ln_1p(self) -> Self {
        debug_assert!(self.lo > -T::one());
        Self::ordered(self.lo.ln_1p(), self.hi.ln_1p()).widened()
    }

    /// `x^p` for a nonnegative enclosure and `p > 0`.
    pub fn powf(self, p: T) -> Self {
        debug_assert!(self.lo >= T::zero() && p > T::zero());
        Self::ordered(self.lo.powf(p), self.hi.powf(p)).widened()
    }

    /// `x^n` for a nonnegative enclosure.
    pub fn powi(self, n: i32) -> Self {
        debug_assert!(self.lo >= T::zero());
        // powi is not correctly rounded; each step contributes at most half an ulp.
        let slack = T::lit(f64::from(n.unsigned_abs()) + 1.0) * T::epsilon();
        let out = Self::ordered(self.lo.powi(n), self.hi.powi(n));
        Self::new(out.lo - out.lo * slack, out.hi + out.hi * slack).widened()
    }
}

impl<T: Real> Add for Enclosure<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self::new(self.lo + rhs.lo, self.hi + rhs.hi).widened()
    }
}

impl<T: Real> Sub for Enclosure<T> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self::new(self.lo - rhs.hi, self.hi - rhs.lo).widened()
    }
}

impl<T: Real> Neg for Enclosure<T> {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new(-self.hi, -self.lo)
    }
}

impl<T: Real> Mul for Enclosure<T> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let products = [
            self.lo * rhs.lo,
            self.lo * rhs.hi,
            self.hi * rhs.lo,
            self.hi * rhs.hi,
        ];
        let lo = products.iter().copied().fold(T::infinity(), T::min);
        let hi = products.iter().copied().fold(T::neg_infinity(), T::max);
        Self::new(lo, hi).widened()
    }
}

impl<T: Real> Div for Enclosure<T> {
    type Output = Self;

    /// Division; a divisor straddling zero yields the whole real line.
    fn div(self, rhs: Self) -> Self {
        if rhs.lo <= T::zero() && rhs.hi >= T::zero() {
            return Self::new(T::neg_infinity(), T::infinity());
        }
        let quotients = [
            self.lo / rhs.lo,
            self.lo / rhs.hi,
            self.hi / rhs.lo,
            self.hi / rhs.hi,
        ];
        let lo = quotients.iter().copied().fold(T::infinity(), T::min);
        let hi = quotients.iter().copied().fold(T::neg_infinity(), T::max);
        Self::new(lo, hi).widened()
    }
}

impl<T: Real> Add<T> for Enclosure<T> {
    type Output = Self;

    fn add(self, rhs: T) -> Self {
        self + Self::exact(rhs)
    }
}

impl<T: Real> Sub<T> for Enclosure<T> {
    type Output = Self;

    fn sub(self, rhs: T) -> Self {
        self - Self::exact(rhs)
    }
}

impl<T: fmt::Debug> fmt::Debug for Enclosure<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]", self.lo, self.hi)
    }
}

impl<T: fmt::Display> fmt::Display for Enclosure<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}
