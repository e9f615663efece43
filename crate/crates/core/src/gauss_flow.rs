//! Normal flow of spacelike hypersurfaces of `dS_n`.
//!
//! A patch is described pointwise by the immersion `u`, its future unit normal `u*`
//! and the shape operator `B` in an orthonormal tangent frame, with the convention
//! `B = -d(u*)` so that `H = tr B / (n - 1)`. Flowing by `t` along the normals gives
//! `u_t = cosh(t) u + sinh(t) u*`, `u*_t = sinh(t) u + cosh(t) u*` and
//! `B_t = -(tanh(t) I - B)(I - tanh(t) B)^{-1}`.

use rand::Rng;
use serde::Serialize;

use crate::dense::Matrix;
use crate::ds::domain::DsPoint;
use crate::error::{GeometryError, Result};
use crate::optimize::random_unit;
use crate::pseudo_linalg::{AmbientVector, Signature};
use crate::scalar::Real;
use crate::tolerances::{TOL_ALMOST_FUCHSIAN, TOL_QUADRIC};

/// One point of an immersed patch.
#[derive(Clone, Debug, PartialEq)]
pub struct PatchSample<T> {
    pub u: DsPoint<T>,
    pub ustar: AmbientVector<T>,
    pub shape: Matrix<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ImmersedPatch<T> {
    samples: Vec<PatchSample<T>>,
}

fn check_frame<T: Real>(u: &AmbientVector<T>, ustar: &AmbientVector<T>) -> Result<()> {
    let tol = T::lit(TOL_QUADRIC) * (T::one() + u.euclid_dot(u) + ustar.euclid_dot(ustar));
    if u.signature() != ustar.signature() {
        return Err(GeometryError::SignatureMismatch {
            left: u.signature().to_string(),
            right: ustar.signature().to_string(),
        });
    }
    if (u.q() - T::one()).abs() > tol || (ustar.q() + T::one()).abs() > tol || u.ip(ustar).abs() > tol {
        return Err(GeometryError::InvalidInput("u and u* must be orthonormal with <u|u> = 1, <u*|u*> = -1".into()));
    }
    if ustar[0] <= T::zero() {
        return Err(GeometryError::InvalidInput("u* must be future-pointing".into()));
    }
    Ok(())
}

impl<T: Real> ImmersedPatch<T> {
    pub fn new(samples: Vec<PatchSample<T>>) -> Result<Self> {
        for (i, s) in samples.iter().enumerate() {
            check_frame(s.u.vector(), &s.ustar).map_err(|e| GeometryError::InvalidInput(format!("sample {i}: {e}")))?;
            let n = s.u.n();
            if s.shape.dim() != n - 1 {
                return Err(GeometryError::InvalidInput(format!(
                    "sample {i}: shape must be {0}x{0}",
                    n - 1
                )));
            }
            if !s.shape.is_symmetric(T::lit(1e-9) * (T::one() + s.shape.max_abs())) {
                return Err(GeometryError::InvalidInput(format!("sample {i}: shape is not symmetric")));
            }
        }
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[PatchSample<T>] {
        &self.samples
    }

    /// Mean curvature of each sample.
    pub fn mean_curvatures(&self) -> Vec<T> {
        self.samples
            .iter()
            .map(|s| s.shape.trace() / T::from_usize(s.shape.dim()).unwrap())
            .collect()
    }

    /// The patch pushed by `t` along its normals.
    pub fn flowed(&self, t: T) -> Result<Self> {
        let samples = self
            .samples
            .iter()
            .map(|s| {
                Ok(PatchSample {
                    u: flow_point(&s.u, &s.ustar, t)?,
                    ustar: flow_normal(&s.u, &s.ustar, t),
                    shape: weingarten_evolution(&s.shape, t)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { samples })
    }
}

/// `cosh(t) u + sinh(t) u*`.
pub fn flow_point<T: Real>(u: &DsPoint<T>, ustar: &AmbientVector<T>, t: T) -> Result<DsPoint<T>> {
    check_frame(u.vector(), ustar)?;
    Ok(DsPoint::from_vector_unchecked(AmbientVector::combine(t.cosh(), u.vector(), t.sinh(), ustar)))
}

/// `sinh(t) u + cosh(t) u*`, the normal of the flowed patch.
pub fn flow_normal<T: Real>(u: &DsPoint<T>, ustar: &AmbientVector<T>, t: T) -> AmbientVector<T> {
    AmbientVector::combine(t.sinh(), u.vector(), t.cosh(), ustar)
}

/// Image of a principal curvature under the flow: `(λ - tanh t) / (1 - tanh(t) λ)`.
pub fn evolve_principal<T: Real>(lambda: T, t: T) -> T {
    let th = t.tanh();
    (lambda - th) / (T::one() - th * lambda)
}

/// `B_t = -(tanh(t) I - B)(I - tanh(t) B)^{-1}`; fails where `I - tanh(t) B` is singular.
pub fn weingarten_evolution<T: Real>(b: &Matrix<T>, t: T) -> Result<Matrix<T>> {
    let n = b.dim();
    let th = t.tanh();
    let id = Matrix::identity(n);
    let denom = &id - &b.scale(th);
    let smallest = b
        .symmetric_eigenvalues()
        .into_iter()
        .map(|l| (T::one() - th * l).abs())
        .fold(T::infinity(), T::min);
    if smallest <= T::lit(1e-12) {
        return Err(GeometryError::FlowBreakdown);
    }
    let inv = denom.inverse().ok_or(GeometryError::FlowBreakdown)?;
    let num = &id.scale(th) - b;
    Ok((&num * &inv).scale(-T::one()).symmetrized())
}

/// Outcome of [`almost_fuchsian_check`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum AlmostFuchsian {
    Yes,
    No { index: usize, eigenvalue: f64 },
}

/// Every principal curvature of every sample below `-1 - 1e-6`.
pub fn almost_fuchsian_check<T: Real>(patch: &ImmersedPatch<T>) -> AlmostFuchsian {
    let cap = -T::one() - T::lit(TOL_ALMOST_FUCHSIAN);
    for (index, s) in patch.samples.iter().enumerate() {
        if let Some(&worst) = s.shape.symmetric_eigenvalues().last() {
            if worst >= cap {
                return AlmostFuchsian::No { index, eigenvalue: worst.as_f64() };
            }
        }
    }
    AlmostFuchsian::Yes
}

/// Samples of an umbilical hypersurface with all principal curvatures `λ`.
///
/// `λ < -1`: the future distance sphere of radius `arcoth(-λ)` about `e1`.
/// `|λ| < 1`: the leaf `S_(t, e0)` with `tanh t = -λ`.
pub fn umbilical_patch<T: Real, R: Rng>(n: usize, lambda: T, count: usize, rng: &mut R) -> Result<ImmersedPatch<T>> {
    let sig = Signature::ds(n)?;
    let l = lambda.as_f64();
    let mut samples = Vec::with_capacity(count);
    for _ in 0..count {
        let (u, ustar) = if l < -1.0 {
            let s = (-1.0 / l).atanh();
            // Future unit timelike w orthogonal to e1, at a random hyperbolic offset.
            let r: f64 = rng.gen_range(0.0..1.5);
            let dir = random_unit(rng, n - 1);
            let mut w = vec![r.cosh(), 0.0];
            w.extend(dir.iter().map(|d| r.sinh() * d));
            let mut y = vec![0.0; n + 1];
            y[1] = 1.0;
            let u: Vec<f64> = y.iter().zip(&w).map(|(a, b)| s.cosh() * a + s.sinh() * b).collect();
            let us: Vec<f64> = y.iter().zip(&w).map(|(a, b)| s.sinh() * a + s.cosh() * b).collect();
            (u, us)
        } else if l.abs() < 1.0 {
            let t = (-l).atanh();
            let dir = random_unit(rng, n);
            let mut u = vec![t.sinh()];
            u.extend(dir.iter().map(|d| t.cosh() * d));
            let mut us = vec![t.cosh()];
            us.extend(dir.iter().map(|d| t.sinh() * d));
            (u, us)
        } else {
            return Err(GeometryError::Range("umbilical seeds need λ < -1 or |λ| < 1".into()));
        };
        let u = AmbientVector::new(sig, u.into_iter().map(T::lit).collect())?;
        let ustar = AmbientVector::new(sig, ustar.into_iter().map(T::lit).collect())?;
        samples.push(PatchSample {
            u: DsPoint::new(u)?,
            ustar,
            shape: Matrix::identity(n - 1).scale(lambda),
        });
    }
    ImmersedPatch::new(samples)
}

/// Shape operator of a parametrized patch by central differences.
///
/// `f(s)` returns the immersion and its future unit normal at local coordinates `s`.
/// Returns `g^{-1} II` with `II_ij = -<∂_i u*|∂_j u>` and `g_ij = <∂_i u|∂_j u>`; its
/// eigenvalues are the principal curvatures.
pub fn shape_operator_fd<T: Real, F>(
    f: F,
    s0: &[T],
    h: T,
) -> Option<Matrix<T>>
where
    F: Fn(&[T]) -> (AmbientVector<T>, AmbientVector<T>),
{
    let m = s0.len();
    let two_h = h + h;
    let partials: Vec<(AmbientVector<T>, AmbientVector<T>)> = (0..m)
        .map(|i| {
            let mut p = s0.to_vec();
            let mut q = s0.to_vec();
            p[i] = p[i] + h;
            q[i] = q[i] - h;
            let (up, np) = f(&p);
            let (uq, nq) = f(&q);
            ((&up - &uq).scale(two_h.recip()), (&np - &nq).scale(two_h.recip()))
        })
        .collect();
    let mut g = Matrix::zeros(m);
    let mut ii = Matrix::zeros(m);
    for i in 0..m {
        for j in 0..m {
            g[(i, j)] = partials[i].0.ip(&partials[j].0);
            ii[(i, j)] = -partials[i].1.ip(&partials[j].0);
        }
    }
    let ii = ii.symmetrized();
    Some(&g.inverse()? * &ii)
}
