//! Cosmological time of AdS regular domains.
//!
//! [`cosmological_time`] maximizes the Lorentzian distance from `x` to the past horizon
//! `{(f⁻(p), p)}` over the hemisphere. [`exact_decomposition`] computes the same time
//! algebraically from the active null constraints and is used wherever many accurate
//! evaluations are needed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::domain::{sphere_distance, AdsDomain};
use super::model::{reflect_time, AdsConformalPoint, AdsLinearPoint};
use crate::error::{GeometryError, Result};
use crate::optimize::{maximize_on_sphere, maximizer_spread, random_unit, LocalMax, SphereSearch};
use crate::pseudo_linalg::{AmbientVector, Signature};
use crate::scalar::Real;
use crate::spacetime::Spacetime;
use crate::support::{decompose, SupportDecomposition};
use crate::tolerances::{MULTISTART_COUNT, TOL_UNIQUENESS};

const ST: Spacetime = Spacetime::AntiDeSitter;
/// Starts within this relative value of the best one enter the uniqueness check.
pub(crate) const SPREAD_VALUE_TOL: f64 = 1e-12;
const GRID_SEED: u64 = 0xAD5_0001;

/// Past-directed timelike geodesic from `x` to the horizon whose length is `τ(x)`.
#[derive(Clone, Debug)]
pub struct RealizingGeodesic<T> {
    /// Horizon point in conformal coordinates.
    pub foot: AdsConformalPoint<T>,
    /// Same point in the linear model.
    pub foot_linear: AmbientVector<T>,
    /// Unit future timelike velocity at the foot.
    pub direction: AmbientVector<T>,
    /// `τ(x)`.
    pub length: T,
    /// Largest distance between the refined starts and the retained foot.
    pub spread: T,
    /// Number of refined starts.
    pub starts: usize,
}

/// Active constraints at a foot and how well the geodesic velocity fits their cone.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportCheck<T> {
    pub active: Vec<usize>,
    /// Euclidean distance from the velocity to the span of the active null vectors.
    pub residual: T,
    /// Smallest weight of the velocity in the active null vectors (normalized by their sum).
    pub min_weight: T,
}

impl<T: Real> RealizingGeodesic<T> {
    /// Point at parameter `s` from the foot.
    pub fn point_at(&self, s: T) -> AmbientVector<T> {
        ST.geodesic(&self.foot_linear, &self.direction, s)
    }

    /// Checks that the velocity lies in the cone of the null constraints active at the foot.
    pub fn support_check(&self, nulls: &[AmbientVector<T>], active_tol: T) -> SupportCheck<T> {
        support_check(&self.foot_linear, &self.direction, nulls, active_tol)
    }
}

pub(crate) fn support_check<T: Real>(
    foot: &AmbientVector<T>,
    direction: &AmbientVector<T>,
    nulls: &[AmbientVector<T>],
    active_tol: T,
) -> SupportCheck<T> {
    let active: Vec<usize> = nulls
        .iter()
        .enumerate()
        .filter(|(_, u)| (foot.ip(u) / u.euclid_norm()).abs() <= active_tol)
        .map(|(i, _)| i)
        .collect();
    let basis: Vec<&AmbientVector<T>> = active.iter().map(|&i| &nulls[i]).collect();
    // Least squares in the Euclidean sense over a maximal independent subfamily.
    let mut chosen: Vec<&AmbientVector<T>> = Vec::new();
    for b in &basis {
        let mut trial = chosen.clone();
        trial.push(b);
        let gram: Vec<Vec<T>> = trial.iter().map(|x| trial.iter().map(|y| x.euclid_dot(y)).collect()).collect();
        let rhs = vec![T::zero(); trial.len()];
        if crate::dense::solve(gram, rhs).is_some() {
            chosen = trial;
        }
    }
    let gram: Vec<Vec<T>> = chosen.iter().map(|x| chosen.iter().map(|y| x.euclid_dot(y)).collect()).collect();
    let rhs: Vec<T> = chosen.iter().map(|x| x.euclid_dot(direction)).collect();
    let (residual, min_weight) = match crate::dense::solve(gram, rhs) {
        Some(w) if !chosen.is_empty() => {
            let mut fit = AmbientVector::zeros(direction.signature());
            for (c, b) in w.iter().zip(&chosen) {
                fit = fit.axpy(*c, b);
            }
            let total: T = w.iter().copied().sum();
            let minw = w.iter().fold(T::infinity(), |m, &c| m.min(c)) / total;
            ((direction - &fit).euclid_norm(), minw)
        }
        _ => (direction.euclid_norm(), T::neg_infinity()),
    };
    SupportCheck { active, residual, min_weight }
}

fn linear_raw<T: Real>(sig: Signature, t: T, p: &[T]) -> AmbientVector<T> {
    let n = p.len();
    let pn = p[n - 1];
    let mut c = Vec::with_capacity(n + 1);
    c.push(t.cos() / pn);
    c.push(t.sin() / pn);
    c.extend(p[..n - 1].iter().map(|&v| v / pn));
    AmbientVector::from_parts(sig, c)
}

/// Distance from `x` to the past horizon point over `p`.
fn horizon_distance<T: Real>(dom: &AdsDomain<T>, x: &AmbientVector<T>, cx: &AdsConformalPoint<T>, p: &[T]) -> T {
    let pn = p[p.len() - 1];
    if pn <= T::lit(1e-12) {
        return T::zero();
    }
    let (lo, _) = dom.f_bounds(p);
    let dt = cx.t() - lo;
    if dt <= sphere_distance(cx.p(), p) {
        return T::zero();
    }
    if dt >= T::PI() {
        return T::PI();
    }
    let z = linear_raw(x.signature(), lo, p);
    (-x.ip(&z)).clamped_acos()
}

fn search<T: Real>(dom: &AdsDomain<T>, x: &AdsLinearPoint<T>) -> Result<Vec<LocalMax<T>>> {
    if !dom.contains_klein(x) {
        return Err(GeometryError::OutsideDomain("x is not in E(Λ)".into()));
    }
    let n = dom.n();
    let cx = dom.lift(x);
    let f = |p: &[T]| horizon_distance(dom, x.vector(), &cx, p);
    let cfg = SphereSearch { grid_points: 40 * n, starts: MULTISTART_COUNT, upper_half: true, seed: GRID_SEED };
    let res = maximize_on_sphere(f, n, &[cx.p().to_vec()], cfg);
    if res.is_empty() {
        return Err(GeometryError::Numerical("no horizon point in the past of x".into()));
    }
    Ok(res)
}

/// Cosmological time `τ(x)` by multi-start maximization over the past horizon.
pub fn cosmological_time<T: Real>(dom: &AdsDomain<T>, x: &AdsLinearPoint<T>) -> Result<T> {
    Ok(search(dom, x)?[0].value)
}

/// Reverse cosmological time: `τ̂(x) = τ_{reflected domain}(reflect(x))`.
pub fn reverse_cosmological_time<T: Real>(dom: &AdsDomain<T>, x: &AdsLinearPoint<T>) -> Result<T> {
    cosmological_time(&dom.reflected(), &reflect_time(x))
}

/// Realizing geodesic of a point of the past tight region, with the uniqueness check.
pub fn realizing_geodesic<T: Real>(dom: &AdsDomain<T>, x: &AdsLinearPoint<T>) -> Result<RealizingGeodesic<T>> {
    let res = search(dom, x)?;
    let best = &res[0];
    let a = best.value;
    if a >= T::FRAC_PI_2() {
        return Err(GeometryError::NotTight);
    }
    let spread = maximizer_spread(&res, T::lit(SPREAD_VALUE_TOL));
    if spread > T::lit(TOL_UNIQUENESS) {
        return Err(GeometryError::UniquenessViolation { spread: spread.as_f64() });
    }
    let (lo, _) = dom.f_bounds(&best.point);
    let foot = AdsConformalPoint::from_parts(lo, best.point.clone());
    let foot_linear = linear_raw(x.vector().signature(), lo, &best.point);
    let direction = (x.vector() - &foot_linear.scale(a.cos())).scale(a.sin().recip());
    Ok(RealizingGeodesic { foot, foot_linear, direction, length: a, spread, starts: res.len() })
}

/// Exact split `x = cos(a) p + sin(a) q` through the active null constraints.
pub fn exact_decomposition<T: Real>(
    dom: &AdsDomain<T>,
    x: &AmbientVector<T>,
    hint: Option<&[usize]>,
) -> Result<SupportDecomposition<T>> {
    if dom.klein_margin(x) >= T::zero() {
        return Err(GeometryError::OutsideDomain("x is not in E(Λ)".into()));
    }
    decompose(ST, x, dom.nulls(), hint)?.ok_or(GeometryError::NotTight)
}

/// Exact cosmological time of a point of the past tight region.
pub fn exact_time<T: Real>(dom: &AdsDomain<T>, x: &AdsLinearPoint<T>) -> Result<T> {
    Ok(exact_decomposition(dom, x.vector(), None)?.time)
}

/// A point of a cosmological level with its realizing geodesic.
#[derive(Clone, Debug)]
pub struct LevelPoint<T> {
    pub point: AmbientVector<T>,
    /// Future unit normal of the level (velocity of the realizing geodesic).
    pub normal: AmbientVector<T>,
    pub decomposition: SupportDecomposition<T>,
}

/// Uniform random point of `E(Λ)` in conformal coordinates.
pub(crate) fn random_domain_point<T: Real, R: Rng>(dom: &AdsDomain<T>, rng: &mut R) -> Option<AmbientVector<T>> {
    let n = dom.n();
    let mut p: Vec<T> = random_unit(rng, n).into_iter().map(T::lit).collect();
    p[n - 1] = p[n - 1].abs();
    if p[n - 1] < T::lit(1e-6) {
        return None;
    }
    let (lo, hi) = dom.f_bounds(&p);
    if hi - lo <= T::lit(1e-9) {
        return None;
    }
    let t = lo + (hi - lo) * T::lit(rng.gen_range(1e-6..1.0 - 1e-6));
    let x = linear_raw(Signature::ads(n).ok()?, t, &p);
    (dom.klein_margin(&x) < T::zero()).then_some(x)
}

pub(crate) fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// `count` random points of `E(Λ)`; point `i` depends only on `(seed, i)`.
pub fn domain_sample<T: Real>(dom: &AdsDomain<T>, count: usize, seed: u64) -> Result<Vec<AdsLinearPoint<T>>> {
    (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(seed, i);
            (0..10_000)
                .find_map(|_| random_domain_point(dom, &mut rng))
                .map(AdsLinearPoint::from_vector_unchecked)
                .ok_or_else(|| GeometryError::Numerical("could not draw a domain point".into()))
        })
        .collect()
}

/// Samples the level `{τ = a}`: random domain points are followed along their
/// realizing geodesics, whose feet and cone directions are then shot to length `a`.
pub fn level_sample<T: Real>(dom: &AdsDomain<T>, a: T, count: usize, seed: u64) -> Result<Vec<LevelPoint<T>>> {
    if !(a > T::zero() && a < T::FRAC_PI_2()) {
        return Err(GeometryError::Range(format!("level {} outside (0, π/2)", a.as_f64())));
    }
    (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(seed, i);
            for _ in 0..10_000 {
                let Some(x) = random_domain_point(dom, &mut rng) else { continue };
                let Ok(d) = exact_decomposition(dom, &x, None) else { continue };
                let point = d.point_at(ST, a);
                let normal = ST.geodesic_velocity(&d.foot, &d.direction, a);
                let decomposition = SupportDecomposition { time: a, ..d };
                return Ok(LevelPoint { point, normal, decomposition });
            }
            Err(GeometryError::Numerical("could not draw a tight-region point".into()))
        })
        .collect()
}
