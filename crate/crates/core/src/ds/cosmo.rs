//! Cosmological time of `B₀⁺(S)`.
//!
//! In conformal coordinates `x = (tan T, sec T ω)` the domain is `T > g(ω)` with
//! `g(ω) = max_i (π/2 - d(ω, q_i))`, so the past horizon is a graph over the whole sphere.

use rand::Rng;
use rayon::prelude::*;

use super::domain::{contains_ds, DsBoundarySet, DsPoint};
use crate::ads::cosmo::{sample_rng, support_check, SupportCheck};
use crate::ads::cosmo::{LevelPoint, SPREAD_VALUE_TOL};
use crate::error::{GeometryError, Result};
use crate::optimize::{maximize_on_sphere, maximizer_spread, random_unit, LocalMax, SphereSearch};
use crate::pseudo_linalg::{AmbientVector, Signature};
use crate::scalar::Real;
use crate::spacetime::Spacetime;
use crate::support::{decompose, SupportDecomposition};
use crate::tolerances::{MULTISTART_COUNT, TOL_UNIQUENESS};

const ST: Spacetime = Spacetime::DeSitter;
const GRID_SEED: u64 = 0xD5_0001;

/// Past-directed timelike geodesic from `x` to the horizon whose length is `τ(x)`.
#[derive(Clone, Debug)]
pub struct DsRealizingGeodesic<T> {
    /// Direction `ω` of the foot on the conformal sphere.
    pub omega: Vec<T>,
    pub foot: AmbientVector<T>,
    /// Unit future timelike velocity at the foot.
    pub direction: AmbientVector<T>,
    pub length: T,
    pub spread: T,
    pub starts: usize,
}

impl<T: Real> DsRealizingGeodesic<T> {
    pub fn point_at(&self, s: T) -> AmbientVector<T> {
        ST.geodesic(&self.foot, &self.direction, s)
    }

    /// Checks that the velocity lies in the cone of the null lifts active at the foot.
    pub fn support_check(&self, bs: &DsBoundarySet<T>, active_tol: T) -> SupportCheck<T> {
        support_check(&self.foot, &self.direction, bs.nulls(), active_tol)
    }
}

fn horizon_point<T: Real>(sig: Signature, g: T, omega: &[T]) -> AmbientVector<T> {
    let sec = g.cos().recip();
    let mut c = vec![g.tan()];
    c.extend(omega.iter().map(|&w| w * sec));
    AmbientVector::from_parts(sig, c)
}

fn horizon_distance<T: Real>(bs: &DsBoundarySet<T>, x: &AmbientVector<T>, omega: &[T]) -> T {
    let g = bs.horizon_time(omega);
    if g.cos() <= T::lit(1e-12) {
        return T::zero();
    }
    let z = horizon_point(x.signature(), g, omega);
    let c = x.ip(&z);
    if c > T::one() && z[0] < x[0] {
        c.acosh()
    } else {
        T::zero()
    }
}

fn search<T: Real>(bs: &DsBoundarySet<T>, x: &DsPoint<T>) -> Result<Vec<LocalMax<T>>> {
    if !contains_ds(bs, x) {
        return Err(GeometryError::OutsideDomain("x is not in B₀⁺(S)".into()));
    }
    let n = bs.n();
    let (_, omega) = x.conformal();
    let f = |w: &[T]| horizon_distance(bs, x.vector(), w);
    let cfg = SphereSearch { grid_points: 40 * n, starts: MULTISTART_COUNT, upper_half: false, seed: GRID_SEED };
    let res = maximize_on_sphere(f, n, &[omega], cfg);
    if res.is_empty() {
        return Err(GeometryError::Numerical("no horizon point in the past of x".into()));
    }
    Ok(res)
}

/// Cosmological time by multi-start maximization over the past horizon.
pub fn cosmological_time_ds<T: Real>(bs: &DsBoundarySet<T>, x: &DsPoint<T>) -> Result<T> {
    Ok(search(bs, x)?[0].value)
}

/// Time of `B₀⁻(S)`: the cosmological time of the reflected point.
pub fn reverse_cosmological_time_ds<T: Real>(bs: &DsBoundarySet<T>, x: &DsPoint<T>) -> Result<T> {
    cosmological_time_ds(bs, &DsPoint::from_vector_unchecked(ST.reflect(x.vector())))
}

/// Realizing geodesic with the uniqueness check on the foot.
pub fn realizing_geodesic_ds<T: Real>(bs: &DsBoundarySet<T>, x: &DsPoint<T>) -> Result<DsRealizingGeodesic<T>> {
    let res = search(bs, x)?;
    let best = &res[0];
    let a = best.value;
    let spread = maximizer_spread(&res, T::lit(SPREAD_VALUE_TOL));
    if spread > T::lit(TOL_UNIQUENESS) {
        return Err(GeometryError::UniquenessViolation { spread: spread.as_f64() });
    }
    let g = bs.horizon_time(&best.point);
    let foot = horizon_point(x.vector().signature(), g, &best.point);
    let direction = (x.vector() - &foot.scale(a.cosh())).scale(a.sinh().recip());
    Ok(DsRealizingGeodesic { omega: best.point.clone(), foot, direction, length: a, spread, starts: res.len() })
}

/// Exact split `x = cosh(a) p + sinh(a) q` through the active null lifts.
pub fn exact_decomposition_ds<T: Real>(
    bs: &DsBoundarySet<T>,
    x: &AmbientVector<T>,
    hint: Option<&[usize]>,
) -> Result<SupportDecomposition<T>> {
    if bs.margin(x) >= T::zero() {
        return Err(GeometryError::OutsideDomain("x is not in B₀⁺(S)".into()));
    }
    decompose(ST, x, bs.nulls(), hint)?
        .ok_or_else(|| GeometryError::Numerical("no certified support face".into()))
}

pub fn exact_time_ds<T: Real>(bs: &DsBoundarySet<T>, x: &DsPoint<T>) -> Result<T> {
    Ok(exact_decomposition_ds(bs, x.vector(), None)?.time)
}

/// Closed form for two marks: `arccosh √Q(x_⊥)`, `x_⊥` orthogonal to both null lifts.
pub fn two_mark_time<T: Real>(bs: &DsBoundarySet<T>, x: &DsPoint<T>) -> Result<T> {
    if bs.marks().len() != 2 {
        return Err(GeometryError::InvalidInput("closed form needs exactly two marks".into()));
    }
    let u = bs.nulls();
    let (_, proj) = crate::pseudo_linalg::project_onto_span(x.vector(), &[&u[0], &u[1]])
        .ok_or_else(|| GeometryError::Numerical("degenerate mark pair".into()))?;
    let perp = x.vector() - &proj;
    Ok(perp.q().max(T::one()).sqrt().acosh())
}

/// Random point of `B₀⁺(S)`: uniform direction, conformal time between the horizon
/// and a fixed fraction of the way to future infinity.
pub(crate) fn random_domain_point<T: Real, R: Rng>(bs: &DsBoundarySet<T>, rng: &mut R) -> Option<AmbientVector<T>> {
    let omega: Vec<T> = random_unit(rng, bs.n()).into_iter().map(T::lit).collect();
    let g = bs.horizon_time(&omega);
    let t = g + (T::FRAC_PI_2() - g) * T::lit(rng.gen_range(1e-6..0.95));
    let x = horizon_point(Signature::ds(bs.n()).ok()?, t, &omega);
    (bs.margin(&x) < T::zero()).then_some(x)
}

/// `count` random points of `B₀⁺(S)`; point `i` depends only on `(seed, i)`.
pub fn domain_sample_ds<T: Real>(bs: &DsBoundarySet<T>, count: usize, seed: u64) -> Result<Vec<DsPoint<T>>> {
    (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(seed, i);
            (0..10_000)
                .find_map(|_| random_domain_point(bs, &mut rng))
                .map(DsPoint::from_vector_unchecked)
                .ok_or_else(|| GeometryError::Numerical("could not draw a domain point".into()))
        })
        .collect()
}

/// Samples the level `{τ = a}` by sliding random domain points along their realizing geodesics.
pub fn level_sample_ds<T: Real>(bs: &DsBoundarySet<T>, a: T, count: usize, seed: u64) -> Result<Vec<LevelPoint<T>>> {
    if !(a > T::zero() && a.is_finite()) {
        return Err(GeometryError::Range(format!("level {} must be positive", a.as_f64())));
    }
    (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(seed, i);
            for _ in 0..10_000 {
                let Some(x) = random_domain_point(bs, &mut rng) else { continue };
                let Ok(d) = exact_decomposition_ds(bs, &x, None) else { continue };
                let point = d.point_at(ST, a);
                let normal = ST.geodesic_velocity(&d.foot, &d.direction, a);
                let decomposition = SupportDecomposition { time: a, ..d };
                return Ok(LevelPoint { point, normal, decomposition });
            }
            Err(GeometryError::Numerical("could not draw a domain point".into()))
        })
        .collect()
}
