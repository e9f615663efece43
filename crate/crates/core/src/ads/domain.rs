//! Achronal boundary data and the invisible domains `E(Λ)` they bound.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::model::{boundary_to_null, conformal_to_linear, linear_to_conformal, AdsConformalPoint, AdsLinearPoint};
use crate::error::{GeometryError, Result};
use crate::pseudo_linalg::AmbientVector;
use crate::scalar::Real;
use crate::tolerances::{TOL_MEMBERSHIP, TOL_PROJ, TOL_QUADRIC};

/// Spherical distance by the clamped arccosine of the dot product.
pub fn sphere_distance<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum::<T>().clamped_acos()
}

/// One sample `(p, θ)` of the boundary graph, `p` on the equator `S^{n-2}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPoint<T> {
    pub p: Vec<T>,
    pub theta: T,
}

/// Finitely sampled achronal set of `∂AdS_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct AchronalData<T> {
    n: usize,
    points: Vec<BoundaryPoint<T>>,
}

/// Outcome of [`validate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Validation {
    Ok,
    PureLightlike { i: usize, j: usize },
    NotLipschitz { i: usize, j: usize },
}

impl<T: Real> AchronalData<T> {
    /// Checks shapes only; achronality is checked by [`validate`].
    pub fn new(n: usize, points: Vec<BoundaryPoint<T>>) -> Result<Self> {
        if n < 2 {
            return Err(GeometryError::InvalidInput(format!("AdS dimension must be >= 2, got {n}")));
        }
        for (i, bp) in points.iter().enumerate() {
            if bp.p.len() != n - 1 {
                return Err(GeometryError::InvalidInput(format!(
                    "point {i}: expected {} coordinates on the equator, got {}",
                    n - 1,
                    bp.p.len()
                )));
            }
            let norm2: T = bp.p.iter().map(|&c| c * c).sum();
            if (norm2 - T::one()).abs() > T::lit(TOL_QUADRIC) || !bp.theta.is_finite() {
                return Err(GeometryError::InvalidInput(format!("point {i}: p must be a unit vector")));
            }
        }
        Ok(Self { n, points })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[BoundaryPoint<T>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Data with `θ -> -θ`.
    pub fn reflected(&self) -> Self {
        let points = self
            .points
            .iter()
            .map(|bp| BoundaryPoint { p: bp.p.clone(), theta: -bp.theta })
            .collect();
        Self { n: self.n, points }
    }

    /// Sub-sample by index.
    pub fn subset(&self, idx: &[usize]) -> Self {
        Self { n: self.n, points: idx.iter().map(|&i| self.points[i].clone()).collect() }
    }

    /// `(f⁻(p), f⁺(p))` for `p` in the closed upper hemisphere of `S^{n-1}`.
    pub fn f_bounds(&self, p: &[T]) -> (T, T) {
        let mut lo = T::neg_infinity();
        let mut hi = T::infinity();
        for bp in &self.points {
            let dot: T = bp.p.iter().zip(p).map(|(&a, &b)| a * b).sum();
            let d = dot.clamped_acos();
            lo = lo.max(bp.theta - d);
            hi = hi.min(bp.theta + d);
        }
        (lo, hi)
    }
}

/// Classifies boundary data as achronal, pure lightlike or non-Lipschitz.
pub fn validate<T: Real>(data: &AchronalData<T>) -> Result<Validation> {
    if data.points.is_empty() {
        return Err(GeometryError::InvalidInput("achronal data must not be empty".into()));
    }
    let tol = T::lit(1e-9);
    let pts = &data.points;
    let mut lightlike = None;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = sphere_distance(&pts[i].p, &pts[j].p);
            let gap = (pts[i].theta - pts[j].theta).abs();
            if gap > d + tol {
                return Ok(Validation::NotLipschitz { i, j });
            }
            let antipodal = pts[i].p.iter().zip(&pts[j].p).all(|(&a, &b)| (a + b).abs() <= T::lit(TOL_PROJ));
            if lightlike.is_none() && antipodal && (gap - T::PI()).abs() <= tol {
                lightlike = Some((i, j));
            }
        }
    }
    Ok(match lightlike {
        Some((i, j)) => Validation::PureLightlike { i, j },
        None => Validation::Ok,
    })
}

/// Which horizon of the domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Horizon {
    Past,
    Future,
}

/// Invisible domain `E(Λ)` of validated boundary data.
#[derive(Clone, Debug)]
pub struct AdsDomain<T> {
    data: AchronalData<T>,
    nulls: Vec<AmbientVector<T>>,
}

impl<T: Real> AdsDomain<T> {
    /// Refuses pure lightlike (empty domain) and non-achronal data.
    pub fn new(data: AchronalData<T>) -> Result<Self> {
        match validate(&data)? {
            Validation::Ok => {}
            Validation::PureLightlike { .. } => return Err(GeometryError::PureLightlike),
            Validation::NotLipschitz { i, j } => return Err(GeometryError::NotLipschitz(i, j)),
        }
        let nulls = data
            .points
            .iter()
            .map(|bp| boundary_to_null(bp.theta, &bp.p))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { data, nulls })
    }

    pub fn data(&self) -> &AchronalData<T> {
        &self.data
    }

    pub fn n(&self) -> usize {
        self.data.n
    }

    /// Null vectors `u_i` of the boundary points.
    pub fn nulls(&self) -> &[AmbientVector<T>] {
        &self.nulls
    }

    pub fn f_bounds(&self, p: &[T]) -> (T, T) {
        self.data.f_bounds(p)
    }

    /// `f⁻(p) < t < f⁺(p)` with margin, for interior points `p`.
    pub fn contains_conformal(&self, c: &AdsConformalPoint<T>) -> bool {
        if c.is_boundary() {
            return false;
        }
        let (lo, hi) = self.f_bounds(c.p());
        let tol = T::lit(TOL_MEMBERSHIP);
        c.t() > lo + tol && c.t() < hi - tol
    }

    /// `<x|u_i> < 0` for every boundary null vector, with margin.
    pub fn contains_klein(&self, x: &AdsLinearPoint<T>) -> bool {
        let tol = T::lit(TOL_MEMBERSHIP);
        self.nulls.iter().all(|u| x.vector().ip(u) < -tol)
    }

    /// Largest value of `<x|u_i>`, normalized by `|u_i|`; negative inside the domain.
    pub fn klein_margin(&self, x: &AmbientVector<T>) -> T {
        self.nulls
            .iter()
            .map(|u| x.ip(u) / u.euclid_norm())
            .fold(T::neg_infinity(), T::max)
    }

    /// Horizon point over `p`: `(f⁻(p), p)` or `(f⁺(p), p)`.
    pub fn horizon_point(&self, p: &[T], which: Horizon) -> Result<AdsConformalPoint<T>> {
        let (lo, hi) = self.f_bounds(p);
        if hi - lo <= T::lit(TOL_MEMBERSHIP) {
            return Err(GeometryError::DegenerateFiber(lo.as_f64()));
        }
        let t = match which {
            Horizon::Past => lo,
            Horizon::Future => hi,
        };
        AdsConformalPoint::new(t, p.to_vec())
    }

    /// Conformal coordinates of `x` with `t` unrolled into the fiber of the domain over `p`.
    pub fn lift(&self, x: &AdsLinearPoint<T>) -> AdsConformalPoint<T> {
        let c = linear_to_conformal(x);
        let (lo, hi) = self.f_bounds(c.p());
        let mid = if lo.is_finite() && hi.is_finite() { (lo + hi) * T::lit(0.5) } else { T::zero() };
        let two_pi = T::lit(2.0 * PI);
        let k = ((mid - c.t()) / two_pi).round();
        AdsConformalPoint::from_parts(c.t() + k * two_pi, c.p().to_vec())
    }

    /// Time-reflected domain (`θ -> -θ`).
    pub fn reflected(&self) -> Self {
        Self::new(self.data.reflected()).expect("reflection preserves achronality")
    }

    /// Domain of a sub-sample of the boundary data.
    pub fn subset(&self, idx: &[usize]) -> Result<Self> {
        Self::new(self.data.subset(idx))
    }

    /// Linear point of a conformal point of the domain.
    pub fn to_linear(&self, c: &AdsConformalPoint<T>) -> Result<AdsLinearPoint<T>> {
        conformal_to_linear(c)
    }
}
