//! Points of `dS_n`, the round balls they bound on the future sphere, and the
//! domains of finitely punctured spheres.

use crate::error::{GeometryError, Result};
use crate::pseudo_linalg::{AmbientVector, Signature};
use crate::scalar::Real;
use crate::tolerances::{TOL_MEMBERSHIP, TOL_QUADRIC};

/// Point of the quadric `Q_{1,n} = +1`.
#[derive(Clone, Debug, PartialEq)]
pub struct DsPoint<T> {
    x: AmbientVector<T>,
}

impl<T: Real> DsPoint<T> {
    pub fn new(x: AmbientVector<T>) -> Result<Self> {
        if x.signature().negatives() != 1 {
            return Err(GeometryError::InvalidInput("dS points need signature (1, n)".into()));
        }
        let defect = (x.q() - T::one()).abs();
        if defect > T::lit(TOL_QUADRIC) * (T::one() + x.euclid_dot(&x)) {
            return Err(GeometryError::InvalidInput(format!(
                "point is off the dS quadric by {}",
                defect.as_f64()
            )));
        }
        Ok(Self { x })
    }

    pub fn from_coords(coords: Vec<T>) -> Result<Self> {
        let sig = Signature::ds(coords.len().saturating_sub(1).max(2))?;
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

    /// Conformal coordinates `(T, ω)` with `x = (tan T, sec T ω)`.
    pub fn conformal(&self) -> (T, Vec<T>) {
        let c = self.x.coords();
        let r: T = c[1..].iter().map(|&v| v * v).sum::<T>().sqrt();
        (c[0].atan(), c[1..].iter().map(|&v| v / r).collect())
    }

    /// Point with conformal coordinates `(T, ω)`, `|T| < π/2`, `ω` a unit vector.
    pub fn from_conformal(t: T, omega: &[T]) -> Result<Self> {
        if t.abs() >= T::FRAC_PI_2() {
            return Err(GeometryError::Range("conformal time must lie in (-π/2, π/2)".into()));
        }
        let sec = t.cos().recip();
        let mut c = vec![t.tan()];
        c.extend(omega.iter().map(|&w| w * sec));
        Self::new(AmbientVector::new(Signature::ds(omega.len())?, c)?)
    }
}

/// Open round ball `{q : d(q, center) < radius}` of `S^{n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct RoundBall<T> {
    pub center: Vec<T>,
    pub radius: T,
}

impl<T: Real> RoundBall<T> {
    pub fn contains(&self, q: &[T]) -> bool {
        let dot: T = self.center.iter().zip(q).map(|(&a, &b)| a * b).sum();
        dot.clamped_acos() < self.radius
    }
}

/// Ball of future endpoints of timelike geodesics from `x`: `{q : <x|(1,q)> > 0}`.
pub fn ball_of_point<T: Real>(x: &DsPoint<T>) -> RoundBall<T> {
    let c = x.x.coords();
    let r: T = c[1..].iter().map(|&v| v * v).sum::<T>().sqrt();
    RoundBall { center: c[1..].iter().map(|&v| v / r).collect(), radius: (c[0] / r).clamped_acos() }
}

/// Inverse of [`ball_of_point`]: `x = (cot r, center / sin r)`.
pub fn point_of_ball<T: Real>(ball: &RoundBall<T>) -> Result<DsPoint<T>> {
    if !(ball.radius > T::zero() && ball.radius < T::PI()) {
        return Err(GeometryError::Range("ball radius must lie in (0, π)".into()));
    }
    let s = ball.radius.sin();
    let mut c = vec![ball.radius.cos() / s];
    c.extend(ball.center.iter().map(|&v| v / s));
    DsPoint::new(AmbientVector::new(Signature::ds(ball.center.len())?, c)?)
}

/// Finite set `Λ ⊂ S^{n-1}` of at least two marks; `S = S^{n-1} \ Λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct DsBoundarySet<T> {
    n: usize,
    marks: Vec<Vec<T>>,
    nulls: Vec<AmbientVector<T>>,
}

impl<T: Real> DsBoundarySet<T> {
    pub fn new(n: usize, marks: Vec<Vec<T>>) -> Result<Self> {
        if n < 2 {
            return Err(GeometryError::InvalidInput(format!("dS dimension must be >= 2, got {n}")));
        }
        if marks.len() < 2 {
            return Err(GeometryError::InvalidInput(
                "at least two marks are needed for a finite cosmological time".into(),
            ));
        }
        let sig = Signature::ds(n)?;
        let mut nulls = Vec::with_capacity(marks.len());
        for (i, m) in marks.iter().enumerate() {
            if m.len() != n {
                return Err(GeometryError::InvalidInput(format!(
                    "mark {i}: expected {n} coordinates, got {}",
                    m.len()
                )));
            }
            let norm2: T = m.iter().map(|&c| c * c).sum();
            if (norm2 - T::one()).abs() > T::lit(TOL_QUADRIC) {
                return Err(GeometryError::InvalidInput(format!("mark {i} is not a unit vector")));
            }
            for (j, other) in marks[..i].iter().enumerate() {
                let d = crate::ads::domain::sphere_distance(m, other);
                if d <= T::lit(1e-6) {
                    return Err(GeometryError::InvalidInput(format!("marks {j} and {i} coincide")));
                }
            }
            let mut c = vec![T::one()];
            c.extend_from_slice(m);
            nulls.push(AmbientVector::new(sig, c)?);
        }
        Ok(Self { n, marks, nulls })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn marks(&self) -> &[Vec<T>] {
        &self.marks
    }

    /// Null lifts `(1, q_i)`.
    pub fn nulls(&self) -> &[AmbientVector<T>] {
        &self.nulls
    }

    /// Sub-set of the marks by index.
    pub fn subset(&self, idx: &[usize]) -> Result<Self> {
        Self::new(self.n, idx.iter().map(|&i| self.marks[i].clone()).collect())
    }

    /// Largest `<x|u_i> / |u_i|`; negative inside `B₀⁺(S)`.
    pub fn margin(&self, x: &AmbientVector<T>) -> T {
        self.nulls.iter().map(|u| x.ip(u) / u.euclid_norm()).fold(T::neg_infinity(), T::max)
    }

    /// Conformal time of the past horizon over `ω`: `max_i (π/2 - d(ω, q_i))`.
    pub fn horizon_time(&self, omega: &[T]) -> T {
        self.marks
            .iter()
            .map(|q| T::FRAC_PI_2() - crate::ads::domain::sphere_distance(omega, q))
            .fold(T::neg_infinity(), T::max)
    }
}

/// `<x|(1, q_i)> < 0` for every mark, with margin: the ball of `x` avoids `Λ`.
pub fn contains_ds<T: Real>(bs: &DsBoundarySet<T>, x: &DsPoint<T>) -> bool {
    let tol = T::lit(TOL_MEMBERSHIP);
    bs.nulls.iter().all(|u| x.x.ip(u) < -tol)
}

/// `arccosh <x|y>` for timelike related points, 0 otherwise.
pub fn lorentz_distance_ds<T: Real>(x: &DsPoint<T>, y: &DsPoint<T>) -> T {
    let c = x.x.ip(&y.x);
    if c > T::one() + T::epsilon() * T::lit(64.0) {
        c.acosh()
    } else {
        T::zero()
    }
}
