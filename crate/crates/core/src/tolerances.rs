//! Numerical tolerances used across the crate.
//!
//! All values are `f64`; generic code converts them with [`Real::lit`](crate::Real::lit).

/// Band around zero for the sign of the quadratic form, relative to the squared coordinate scale.
pub const TOL_NULL: f64 = 1e-9;
/// Coordinate tolerance when comparing unit-norm projective representatives.
pub const TOL_PROJ: f64 = 1e-9;
/// Band for causal classification of boundary points.
pub const TOL_CAUSAL: f64 = 1e-9;
/// Margin for strict membership inequalities (domains are open).
pub const TOL_MEMBERSHIP: f64 = 1e-9;
/// Allowed defect of the quadric equation for points of AdS or dS.
pub const TOL_QUADRIC: f64 = 1e-9;
/// Maximum spread between multi-start optima before the foot is declared non-unique.
pub const TOL_UNIQUENESS: f64 = 1e-5;
/// Margin below -1 for the almost-fuchsian eigenvalue test.
pub const TOL_ALMOST_FUCHSIAN: f64 = 1e-6;
/// Slack on mean curvature bound checks.
pub const BOUND_SLACK: f64 = 5e-3;
/// Relative fit residual (curvature units) above which a sample is treated as non-smooth.
pub const RESIDUAL_CAP: f64 = 1e-3;
/// Default stencil step of the curvature estimator, scaled by the level when the level is small.
pub const DEFAULT_STEP: f64 = 1e-3;
/// Speed ratio above which a foliation step is flagged as marginal.
pub const FOLIATION_GUARD: f64 = 1e-3;
/// Minimum number of local refinements in the cosmological time maximization.
pub const MULTISTART_COUNT: usize = 8;
