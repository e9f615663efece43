//! Mean-curvature bounds on the levels of cosmological time.
//!
//! Forward levels `{τ = a}` satisfy `-C(a)/S(a) ≤ H ≤ -(C/S)/(n-1) ∓ (n-2)/(n-1) · S/C`
//! (cot/tan in AdS, coth/tanh in dS, with `+` in AdS and `-` in dS). Reverse levels
//! are the time reflections of forward ones, so their bounds are the negated,
//! swapped forward bounds.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::estimator::{estimate_mean_curvature, height};
use super::surfaces::{CosmoLevel, DistanceSphere, DomainRef, LevelSurface, Reflected};
use crate::ads::cosmo::{level_sample, LevelPoint};
use crate::ads::domain::AdsDomain;
use crate::ds::cosmo::level_sample_ds;
use crate::error::{GeometryError, Result};
use crate::pseudo_linalg::{orthonormal_complement, AmbientVector};
use crate::scalar::Real;
use crate::spacetime::Spacetime;
use crate::tolerances::{BOUND_SLACK, DEFAULT_STEP, RESIDUAL_CAP};

/// Which time function's levels are measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    Ads,
    Ds,
    AdsReverse,
    DsReverse,
}

impl Model {
    pub fn spacetime(self) -> Spacetime {
        match self {
            Model::Ads | Model::AdsReverse => Spacetime::AntiDeSitter,
            Model::Ds | Model::DsReverse => Spacetime::DeSitter,
        }
    }

    pub fn is_reverse(self) -> bool {
        matches!(self, Model::AdsReverse | Model::DsReverse)
    }

    pub fn name(self) -> &'static str {
        match self {
            Model::Ads => "ads",
            Model::Ds => "ds",
            Model::AdsReverse => "ads_reverse",
            Model::DsReverse => "ds_reverse",
        }
    }
}

/// Mean curvature of a smooth piece of a forward level whose active face spans a
/// `d + 1` dimensional timelike subspace: `d` principal curvatures `-C/S` and
/// `n - 1 - d` equal to `+S/C` (AdS) or `-S/C` (dS).
pub fn smooth_piece_curvature<T: Real>(st: Spacetime, n: usize, d: usize, a: T) -> T {
    let m = T::from_usize(n - 1).unwrap();
    let d = T::from_usize(d).unwrap();
    match st {
        Spacetime::AntiDeSitter => (-d * a.tan().recip() + (m - d) * a.tan()) / m,
        Spacetime::DeSitter => (-d * a.tanh().recip() - (m - d) * a.tanh()) / m,
    }
}

/// `(lower, upper)` bounds on `H` for the level `a` of `model`.
pub fn level_bounds<T: Real>(model: Model, n: usize, a: T) -> (T, T) {
    let st = model.spacetime();
    let lower = match st {
        Spacetime::AntiDeSitter => -a.tan().recip(),
        Spacetime::DeSitter => -a.tanh().recip(),
    };
    let upper = smooth_piece_curvature(st, n, 1, a);
    if model.is_reverse() {
        (-upper, -lower)
    } else {
        (lower, upper)
    }
}

/// One-sided comparison at a sample rejected by the residual test, phrased for the
/// forward level (reverse models are checked on the reflected domain).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneralizedCheck {
    /// The future distance sphere of radius `a` about the foot stays to the future.
    pub sphere_future: bool,
    /// The level of the subdomain cut by the active constraints stays to the past.
    pub face_level_past: bool,
    /// Mean curvature of the distance sphere (the lower barrier).
    pub sphere_curvature: f64,
    /// Mean curvature of the face level (the upper barrier).
    pub face_curvature: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleReport {
    pub point: Vec<f64>,
    pub mean_curvature: f64,
    pub residual: f64,
    pub accepted: bool,
    pub within_bounds: bool,
    pub generalized: Option<GeneralizedCheck>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvatureReport {
    pub model: Model,
    pub n: usize,
    pub level: f64,
    pub lower: f64,
    pub upper: f64,
    pub slack: f64,
    pub samples: Vec<SampleReport>,
    pub accepted: usize,
    pub h_min: f64,
    pub h_max: f64,
    /// Accepted samples outside the bounds by more than the slack.
    pub violations: usize,
    /// Rejected samples whose one-sided comparison failed.
    pub generalized_failures: usize,
}

impl CurvatureReport {
    pub fn accepted_fraction(&self) -> f64 {
        self.accepted as f64 / self.samples.len().max(1) as f64
    }

    pub fn passed(&self) -> bool {
        self.violations == 0 && self.generalized_failures == 0
    }
}

/// Stencil step for level `a`.
pub fn default_step<T: Real>(a: T) -> T {
    T::lit(DEFAULT_STEP) * a.min(T::one())
}

/// Residual above which a sample is treated as a non-smooth point.
pub fn residual_cap<T: Real>(h: T) -> T {
    T::lit(RESIDUAL_CAP) * (T::one() + h.abs())
}

fn side_points<T: Real>(
    surface: &dyn LevelSurface<T>,
    x: &AmbientVector<T>,
    normal: &AmbientVector<T>,
    h: T,
) -> Vec<AmbientVector<T>> {
    let st = surface.spacetime();
    let Some(frame) = orthonormal_complement(&[x, normal]) else { return Vec::new() };
    let mut out = Vec::new();
    for e in &frame {
        for k in [-4.0, -1.0, 1.0, 4.0] {
            let base = x.axpy(h * T::lit(k), e);
            if let Some(w) = height(surface, &base, normal, h) {
                if let Some(p) = st.project_to_quadric(&base.axpy(w, normal)) {
                    out.push(p);
                }
            }
        }
    }
    out
}

fn generalized_check<T: Real>(
    domain: DomainRef<'_, T>,
    level: &LevelPoint<T>,
    a: T,
    h: T,
) -> GeneralizedCheck {
    let st = domain.spacetime();
    let n = domain.n();
    let full = CosmoLevel::new(domain, a, level.decomposition.active.clone());
    let tol = T::lit(1e-8) * (T::one() + a);
    let sphere = DistanceSphere { spacetime: st, center: level.decomposition.foot.clone(), radius: a };
    let plus = side_points(&sphere, &level.point, &level.normal, h);
    let sphere_future = !plus.is_empty() && plus.iter().all(|p| full.time(p).is_some_and(|t| t >= a - tol));
    let sub: Vec<AmbientVector<T>> =
        level.decomposition.active.iter().map(|&i| domain.nulls()[i].clone()).collect();
    let face = CosmoLevel { spacetime: st, nulls: &sub, level: a, hint: (0..sub.len()).collect() };
    let minus = side_points(&face, &level.point, &level.normal, h);
    let face_level_past = !minus.is_empty()
        && minus.iter().all(|p| match full.time(p) {
            Some(t) => t <= a + tol,
            // Points that left the full domain are in its past.
            None => true,
        });
    let sphere_curvature = sphere.mean_curvature().as_f64();
    let d = level.decomposition.active.len().min(n) - 1;
    let face_curvature = smooth_piece_curvature(st, n, d, a).as_f64();
    let (lo, hi) = level_bounds(if st == Spacetime::AntiDeSitter { Model::Ads } else { Model::Ds }, n, a);
    let slack = BOUND_SLACK;
    let ok = sphere_future
        && face_level_past
        && sphere_curvature >= lo.as_f64() - slack
        && face_curvature <= hi.as_f64() + slack;
    GeneralizedCheck { sphere_future, face_level_past, sphere_curvature, face_curvature, ok }
}

/// Samples the level `a` of `model`, estimates `H` at each sample and checks the bounds.
pub fn verify_level_bounds<T: Real>(
    domain: DomainRef<'_, T>,
    model: Model,
    a: T,
    samples: usize,
    seed: u64,
) -> Result<CurvatureReport> {
    if model.spacetime() != domain.spacetime() {
        return Err(GeometryError::InvalidInput(format!("model {} does not match the domain", model.name())));
    }
    let st = model.spacetime();
    let n = domain.n();
    // Reverse levels are reflections of forward levels of the reflected domain.
    let reflected_ads: Option<AdsDomain<T>> = match (domain, model.is_reverse()) {
        (DomainRef::Ads(d), true) => Some(d.reflected()),
        _ => None,
    };
    let forward = match (&reflected_ads, domain) {
        (Some(r), _) => DomainRef::Ads(r),
        (None, d) => d,
    };
    let points = match forward {
        DomainRef::Ads(d) => level_sample(d, a, samples, seed)?,
        DomainRef::Ds(d) => level_sample_ds(d, a, samples, seed)?,
    };
    let (lower, upper) = level_bounds(model, n, a);
    let h = default_step(a);
    let slack = T::lit(BOUND_SLACK);
    let reports: Vec<SampleReport> = points
        .par_iter()
        .map(|lp| {
            let level = CosmoLevel::new(forward, a, lp.decomposition.active.clone());
            let est = if model.is_reverse() {
                let x = st.reflect(&lp.point);
                let nu = st.reflect(&lp.normal).scale(-T::one());
                estimate_mean_curvature(&Reflected(level), &x, &nu, h).map(|e| (x, e))
            } else {
                estimate_mean_curvature(&level, &lp.point, &lp.normal, h).map(|e| (lp.point.clone(), e))
            };
            match est {
                Ok((x, e)) => {
                    let accepted = e.residual <= residual_cap(e.mean);
                    let within = e.mean >= lower - slack && e.mean <= upper + slack;
                    let generalized = (!accepted).then(|| generalized_check(forward, lp, a, h));
                    SampleReport {
                        point: x.coords().iter().map(|v| v.as_f64()).collect(),
                        mean_curvature: e.mean.as_f64(),
                        residual: e.residual.as_f64(),
                        accepted,
                        within_bounds: within,
                        generalized,
                    }
                }
                Err(_) => {
                    let x = if model.is_reverse() { st.reflect(&lp.point) } else { lp.point.clone() };
                    SampleReport {
                        point: x.coords().iter().map(|v| v.as_f64()).collect(),
                        mean_curvature: f64::NAN,
                        residual: f64::INFINITY,
                        accepted: false,
                        within_bounds: false,
                        generalized: Some(generalized_check(forward, lp, a, h)),
                    }
                }
            }
        })
        .collect();
    let acc: Vec<&SampleReport> = reports.iter().filter(|r| r.accepted).collect();
    if acc.is_empty() {
        return Err(GeometryError::InsufficientData(format!(
            "no accepted samples on the level {} of model {}",
            a.as_f64(),
            model.name()
        )));
    }
    let h_min = acc.iter().map(|r| r.mean_curvature).fold(f64::INFINITY, f64::min);
    let h_max = acc.iter().map(|r| r.mean_curvature).fold(f64::NEG_INFINITY, f64::max);
    let violations = acc.iter().filter(|r| !r.within_bounds).count();
    let generalized_failures =
        reports.iter().filter(|r| r.generalized.as_ref().is_some_and(|g| !g.ok)).count();
    Ok(CurvatureReport {
        model,
        n,
        level: a.as_f64(),
        lower: lower.as_f64(),
        upper: upper.as_f64(),
        slack: BOUND_SLACK,
        accepted: acc.len(),
        samples: reports,
        h_min,
        h_max,
        violations,
        generalized_failures,
    })
}
