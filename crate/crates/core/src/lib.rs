//! Numerical toolkit for unit vector fields on closed hypersurfaces of R⁴.
//!
//! The crate evaluates the total bending and energy of a unit tangent field,
//! the integral-curvature degree of the Gauss map, and the lower bounds that
//! tie the two together. On the round 3-sphere it also minimizes the total
//! bending over unit fields written in the quaternionic frame.
//!
//! Module layout:
//!
//! - [`geometry`]: parameter grids, quadrature and pointwise extrinsic geometry.
//! - [`fields`]: unit tangent fields, covariant derivatives and adapted frames.
//! - [`functionals`]: total bending, energy, degree estimates, sup-norms, volumes.
//! - [`bounds`]: verification reports for the degree, energy and volume bounds.
//! - [`optimize`]: projected gradient descent of the total bending on S³.
//! - [`surfaces`]: analytic catalog of surfaces and fields.

pub mod bounds;
pub mod error;
pub mod fields;
pub mod functionals;
pub mod geometry;
pub mod linalg;
pub mod optimize;
pub mod quadrature;
pub mod surfaces;

pub use bounds::{verify_bounds, BoundCheck, BoundsReport};
pub use error::{Error, Result};
pub use fields::{FrameComponents, UnitField};
pub use functionals::{compute_functionals, FunctionalReport};
pub use geometry::{ParameterBox, ParameterGrid, PointGeometry, Surface};
pub use optimize::{FrameCoefficients, MinimizeOptions, OptimizationResult};
pub use geometry::Orientation;
pub use surfaces::{make_field, make_surface, FieldSpec, SurfaceSpec};

/// Volume of the unit 3-sphere, 2π².
pub const VOL_S3: f64 = 2.0 * std::f64::consts::PI * std::f64::consts::PI;
