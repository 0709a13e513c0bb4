//! Floating-point scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar used throughout the crate: `f32` or `f64`.
///
/// The per-type defaults scale the solver and series tolerances to what the
/// format can actually resolve.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// Default bisection tolerance on the radius bracket.
    fn default_solver_tol() -> Self;
    /// Default width target for truncated series enclosures.
    fn default_series_tol() -> Self;

    /// Converts an `f64` literal. Infallible for the finite values used here.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Unit in the last place of `self`; the smallest positive normal for zero.
    fn ulp(self) -> Self {
        if !self.is_finite() {
            return Self::infinity();
        }
        if self == Self::zero() {
            return Self::min_positive_value();
        }
        let (_, exp, _) = self.integer_decode();
        Self::lit(2.0)
            .powi(i32::from(exp))
            .max(Self::min_positive_value())
    }
}

impl Real for f64 {
    fn default_solver_tol() -> Self {
        1e-12
    }

    fn default_series_tol() -> Self {
        1e-13
    }
}

impl Real for f32 {
    fn default_solver_tol() -> Self {
        1e-5
    }

    fn default_series_tol() -> Self {
        1e-6
    }
}
