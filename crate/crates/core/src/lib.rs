//! Certified Bohr and Bohr–Rogosinski radii for the close-to-convex
//! subclasses `C₁ ⊃ C₂ ⊃ C₃`.
//!
//! The crate evaluates each Bohr-type majorant as an interval [`Enclosure`],
//! locates the unique sign change of `Φ(r) = M(r) − d*` by certified
//! bisection, and checks sharpness by evaluating the inequality on the
//! class's extremal function at the computed radius.
//!
//! All numerics are generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases below cover the common case.
//!
//! ```
//! use bohr_core::{solve_radius, ClassId, Functional, ProblemSpec64};
//!
//! let spec = ProblemSpec64::new(ClassId::C2, Functional::GrowthDistortion);
//! let result = solve_radius(&spec).unwrap();
//! assert!((result.radius - 0.173417).abs() < 5e-6);
//! ```

pub mod class_specs;
pub mod enclosure;
pub mod error;
pub mod extremal;
pub mod functionals;
pub mod radius_solver;
pub mod scalar;
pub mod special_fn;
pub mod suite;

pub use class_specs::{
    boundary_distance, coeff_bound, distortion_upper, growth_lower, growth_upper, ClassId,
    ClassSpec,
};
pub use enclosure::Enclosure;
pub use error::{Error, Result};
pub use extremal::{
    extremal_coeff, extremal_lhs, extremal_lhs_at, verify_sharpness, SharpnessReport,
};
pub use functionals::{
    majorant, paper_residual, phi, residual_normalization, Functional, FunctionalKind, ProblemSpec,
    TheoremId,
};
pub use radius_solver::{solve_polynomial_crosscheck, solve_radius, RadiusResult};
pub use scalar::Real;
pub use special_fn::{li2, power_sum, tail_log_series};

pub type Enclosure64 = Enclosure<f64>;
pub type Enclosure32 = Enclosure<f32>;
pub type ClassSpec64 = ClassSpec<f64>;
pub type Functional64 = Functional<f64>;
pub type ProblemSpec64 = ProblemSpec<f64>;
pub type ProblemSpec32 = ProblemSpec<f32>;
pub type RadiusResult64 = RadiusResult<f64>;
pub type SharpnessReport64 = SharpnessReport<f64>;
