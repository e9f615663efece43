//! Cosmological time, level-set mean curvature and barrier checks for regular
//! domains of anti-de Sitter and de Sitter spacetimes.
//!
//! Geometry is generic over [`Real`] (`f32` or `f64`); the `*64` aliases below fix `f64`.

pub mod ads;
pub mod curvature;
pub mod dense;
pub mod ds;
pub mod error;
pub mod foliation;
pub mod gauss_flow;
pub mod io;
pub mod optimize;
pub mod pseudo_linalg;
pub mod scalar;
pub mod spacetime;
pub mod support;
pub mod tolerances;

pub use error::{GeometryError, Result};
pub use pseudo_linalg::{classify, inner, projective_equal, AmbientVector, CausalCharacter, Signature};
pub use scalar::Real;
pub use spacetime::Spacetime;

pub type AmbientVector64 = AmbientVector<f64>;
pub type AmbientVector32 = AmbientVector<f32>;
pub type AdsConformalPoint64 = ads::model::AdsConformalPoint<f64>;
pub type AdsLinearPoint64 = ads::model::AdsLinearPoint<f64>;
pub type AchronalData64 = ads::domain::AchronalData<f64>;
pub type AdsDomain64 = ads::domain::AdsDomain<f64>;
pub type AdsDomain32 = ads::domain::AdsDomain<f32>;
pub type RealizingGeodesic64 = ads::cosmo::RealizingGeodesic<f64>;
pub type DsPoint64 = ds::domain::DsPoint<f64>;
pub type RoundBall64 = ds::domain::RoundBall<f64>;
pub type DsBoundarySet64 = ds::domain::DsBoundarySet<f64>;
pub type DsBoundarySet32 = ds::domain::DsBoundarySet<f32>;
pub type UmbilicalLeaf64 = foliation::UmbilicalLeaf<f64>;
pub type FoliationCurve64 = foliation::FoliationCurve<f64>;
pub type ImmersedPatch64 = gauss_flow::ImmersedPatch<f64>;
pub type Matrix64 = dense::Matrix<f64>;
pub type Domain64 = io::Domain<f64>;
