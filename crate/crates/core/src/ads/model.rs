//! Linear, Klein and conformal models of `AdS_n`.
//!
//! The conformal chart used here sends `(t, p)` with `p` in the open upper
//! hemisphere of `S^{n-1}` to `(cos t, sin t, p_1, ..., p_{n-1}) / p_n`.

use crate::error::{GeometryError, Result};
use crate::pseudo_linalg::{AmbientVector, Signature};
use crate::scalar::Real;
use crate::spacetime::Spacetime;
use crate::tolerances::{TOL_CAUSAL, TOL_QUADRIC};

/// Point `(t, p)` of the conformal cylinder `R x D^{n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdsConformalPoint<T> {
    t: T,
    p: Vec<T>,
}

impl<T: Real> AdsConformalPoint<T> {
    /// `p` must be a unit vector of `R^n` (n >= 2) with nonnegative last coordinate.
    pub fn new(t: T, p: Vec<T>) -> Result<Self> {
        if p.len() < 2 {
            return Err(GeometryError::InvalidInput("hemisphere point needs at least 2 coordinates".into()));
        }
        let norm2: T = p.iter().map(|&c| c * c).sum();
        if !t.is_finite() || (norm2 - T::one()).abs() > T::lit(TOL_QUADRIC) {
            return Err(GeometryError::InvalidInput("hemisphere point must be a unit vector".into()));
        }
        if *p.last().unwrap() < -T::lit(TOL_QUADRIC) {
            return Err(GeometryError::InvalidInput("hemisphere point must have last coordinate >= 0".into()));
        }
        Ok(Self { t, p })
    }

    pub(crate) fn from_parts(t: T, p: Vec<T>) -> Self {
        Self { t, p }
    }

    pub fn t(&self) -> T {
        self.t
    }

    pub fn p(&self) -> &[T] {
        &self.p
    }

    /// Dimension `n` of the spacetime.
    pub fn n(&self) -> usize {
        self.p.len()
    }

    /// True for points of the conformal boundary (`p` on the equator).
    pub fn is_boundary(&self) -> bool {
        self.p.last().unwrap().abs() <= T::lit(TOL_QUADRIC)
    }
}

/// Point of the quadric `Q_{2,n-1} = -1`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdsLinearPoint<T> {
    x: AmbientVector<T>,
}

impl<T: Real> AdsLinearPoint<T> {
    pub fn new(x: AmbientVector<T>) -> Result<Self> {
        if x.signature().negatives() != 2 {
            return Err(GeometryError::InvalidInput("AdS points need signature (2, n-1)".into()));
        }
        let defect = (x.q() + T::one()).abs();
        if defect > T::lit(TOL_QUADRIC) * (T::one() + x.euclid_dot(&x)) {
            return Err(GeometryError::InvalidInput(format!(
                "point is off the AdS quadric by {}",
                defect.as_f64()
            )));
        }
        Ok(Self { x })
    }

    pub fn from_coords(coords: Vec<T>) -> Result<Self> {
        let sig = Signature::ads(coords.len().saturating_sub(1).max(2))?;
        Self::new(AmbientVector::new(sig, coords)?)
    }

    pub(crate) fn from_vector_unchecked(x: AmbientVector<T>) -> Self {
        Self { x }
    }

    pub fn vector(&self) -> &AmbientVector<T> {
        &self.x
    }

    pub fn into_vector(self) -> AmbientVector<T> {
        self.x
    }

    pub fn n(&self) -> usize {
        self.x.len() - 1
    }
}

/// Linear point with conformal image `(t mod 2π, p)`.
pub fn conformal_to_linear<T: Real>(c: &AdsConformalPoint<T>) -> Result<AdsLinearPoint<T>> {
    let n = c.n();
    let pn = c.p[n - 1];
    if pn <= T::lit(TOL_QUADRIC) {
        return Err(GeometryError::OutsideDomain("boundary points are not in AdS".into()));
    }
    let mut coords = Vec::with_capacity(n + 1);
    coords.push(c.t.cos() / pn);
    coords.push(c.t.sin() / pn);
    coords.extend(c.p[..n - 1].iter().map(|&v| v / pn));
    let sig = Signature::ads(n)?;
    Ok(AdsLinearPoint::from_vector_unchecked(AmbientVector::from_parts(sig, coords)))
}

/// Conformal coordinates with `t` in `(-π, π]`.
pub fn linear_to_conformal<T: Real>(x: &AdsLinearPoint<T>) -> AdsConformalPoint<T> {
    let c = x.x.coords();
    let t = c[1].atan2(c[0]);
    let s = (c[0] * c[0] + c[1] * c[1]).sqrt();
    let mut p: Vec<T> = c[2..].iter().map(|&v| v / s).collect();
    p.push(s.recip());
    AdsConformalPoint { t, p }
}

/// Null vector `(cos t, sin t, q)` of the boundary point `(t, q)`.
pub fn boundary_to_null<T: Real>(t: T, q: &[T]) -> Result<AmbientVector<T>> {
    let norm2: T = q.iter().map(|&c| c * c).sum();
    if (norm2 - T::one()).abs() > T::lit(TOL_QUADRIC) {
        return Err(GeometryError::InvalidInput("equator point must be a unit vector".into()));
    }
    let mut coords = vec![t.cos(), t.sin()];
    coords.extend_from_slice(q);
    AmbientVector::new(Signature::ads(q.len() + 1)?, coords)
}

/// Lorentzian distance between timelike related points of one affine domain, 0 otherwise.
pub fn lorentz_distance_ads<T: Real>(x: &AdsLinearPoint<T>, y: &AdsLinearPoint<T>) -> T {
    let c = -x.x.ip(&y.x);
    let guard = T::epsilon() * T::lit(64.0);
    if c < T::one() - guard && c > -T::one() {
        c.acos()
    } else {
        T::zero()
    }
}

/// Causal relation between a boundary point and another point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryRelation {
    Timelike,
    Causal,
    None,
}

/// Classifies the relation between the null vector `x` and `y` (a point or a null vector).
pub fn causal_sign_boundary<T: Real>(x: &AmbientVector<T>, y: &AmbientVector<T>) -> Result<BoundaryRelation> {
    let ip = crate::pseudo_linalg::inner(x, y)?;
    let tol = T::lit(TOL_CAUSAL);
    Ok(if ip > tol {
        BoundaryRelation::Timelike
    } else if ip >= -tol {
        BoundaryRelation::Causal
    } else {
        BoundaryRelation::None
    })
}

/// Unit future timelike tangent vectors at `x` are those `v` with `<v|Jx> < 0`.
pub fn time_direction<T: Real>(x: &AdsLinearPoint<T>) -> AmbientVector<T> {
    Spacetime::AntiDeSitter.future_reference(&x.x)
}

/// Point `cos(s) x + sin(s) v` of the timelike geodesic with unit velocity `v`.
pub fn timelike_geodesic<T: Real>(x: &AdsLinearPoint<T>, v: &AmbientVector<T>, s: T) -> AdsLinearPoint<T> {
    AdsLinearPoint::from_vector_unchecked(Spacetime::AntiDeSitter.geodesic(&x.x, v, s))
}

/// Time reflection `(x1, x2, ...) -> (x1, -x2, ...)`.
pub fn reflect_time<T: Real>(x: &AdsLinearPoint<T>) -> AdsLinearPoint<T> {
    AdsLinearPoint::from_vector_unchecked(Spacetime::AntiDeSitter.reflect(&x.x))
}
