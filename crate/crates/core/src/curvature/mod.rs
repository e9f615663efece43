//! Mean curvature of sampled spacelike hypersurfaces, barrier-bound checks on
//! cosmological levels and envelope scans toward the past and future ends.

pub mod barrier;
pub mod bounds;
pub mod estimator;
pub mod surfaces;

pub use barrier::{barrier_scan, BarrierReport, CmcVerdict, Extended, ProbeRow, Side};
pub use bounds::{default_step, level_bounds, residual_cap, smooth_piece_curvature, verify_level_bounds, CurvatureReport, GeneralizedCheck, Model, SampleReport};
pub use estimator::{estimate_mean_curvature, CurvatureEstimate};
pub use surfaces::{CosmoLevel, DistanceSphere, DomainRef, LevelSurface, Reflected};
