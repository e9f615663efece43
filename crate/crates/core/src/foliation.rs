//! Umbilical hypersurfaces of `dS_n` and CMC foliations by them.
//!
//! Mean curvature is taken with respect to the future unit normal, with
//! `II(X, Y) = <ν|∇_X Y>` and `H = tr II / (n - 1)`. On the linear level set
//! `{<x|w> = c}` the gradient of `<.|w>` is `w - c x`, future-directed for the
//! leaves below, and `II` is `c / |w - c x|` times the metric. Since that gradient is
//! timelike, `<x|w>` decreases toward the future.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ads::cosmo::sample_rng;
use crate::ds::domain::DsPoint;
use crate::error::{GeometryError, Result};
use crate::optimize::{golden_max, random_unit};
use crate::pseudo_linalg::{orthonormal_complement, AmbientVector};
use crate::scalar::Real;
use crate::tolerances::{FOLIATION_GUARD, TOL_MEMBERSHIP, TOL_NULL, TOL_QUADRIC};

/// Which family a leaf belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LeafKind {
    /// `{<x|v> = -sinh t}`, `v` a future unit timelike vector: a round sphere.
    Sphere,
    /// `{<x|u> = c}`, `u` future null: dual of a horosphere.
    Parabolic,
}

/// Umbilical leaf of `dS_n`, the zero set of `<x|w> - level`.
#[derive(Clone, Debug, PartialEq)]
pub struct UmbilicalLeaf<T> {
    kind: LeafKind,
    w: AmbientVector<T>,
    offset: T,
}

impl<T: Real> UmbilicalLeaf<T> {
    /// Sphere leaf `S_(t, v)`: the points `sinh(t) v + cosh(t) w`, `w` unit spacelike orthogonal to `v`.
    pub fn sphere(v: AmbientVector<T>, t: T) -> Result<Self> {
        if v.signature().negatives() != 1 {
            return Err(GeometryError::InvalidInput("leaves live in signature (1, n)".into()));
        }
        if (v.q() + T::one()).abs() > T::lit(TOL_QUADRIC) * (T::one() + v.euclid_dot(&v)) || v[0] <= T::zero() {
            return Err(GeometryError::InvalidInput("v must be a future unit timelike vector".into()));
        }
        if !t.is_finite() {
            return Err(GeometryError::InvalidInput("leaf parameter must be finite".into()));
        }
        Ok(Self { kind: LeafKind::Sphere, w: v, offset: t })
    }

    /// Parabolic leaf `{<x|u> = c}` for a future null `u` and `c ≠ 0`.
    pub fn parabolic(u: AmbientVector<T>, c: T) -> Result<Self> {
        if u.signature().negatives() != 1 {
            return Err(GeometryError::InvalidInput("leaves live in signature (1, n)".into()));
        }
        if u.q().abs() > T::lit(TOL_NULL) * u.euclid_dot(&u) || u[0] <= T::zero() {
            return Err(GeometryError::InvalidInput("u must be a future null vector".into()));
        }
        if c == T::zero() || !c.is_finite() {
            return Err(GeometryError::InvalidInput("parabolic offset must be finite and nonzero".into()));
        }
        Ok(Self { kind: LeafKind::Parabolic, w: u, offset: c })
    }

    pub fn kind(&self) -> LeafKind {
        self.kind
    }

    /// The vector `v` or `u`.
    pub fn center(&self) -> &AmbientVector<T> {
        &self.w
    }

    /// `t` for sphere leaves, `c` for parabolic ones.
    pub fn offset(&self) -> T {
        self.offset
    }

    /// Value of `<x|w>` on the leaf.
    pub fn level(&self) -> T {
        match self.kind {
            LeafKind::Sphere => -self.offset.sinh(),
            LeafKind::Parabolic => self.offset,
        }
    }

    /// `level - <x|w>`; positive to the future of the leaf.
    pub fn defining(&self, x: &AmbientVector<T>) -> T {
        self.level() - x.ip(&self.w)
    }

    /// Future unit normal at a point of the leaf.
    pub fn normal(&self, x: &AmbientVector<T>) -> AmbientVector<T> {
        let g = self.w.axpy(-self.level(), x);
        let len = (-g.q()).max(T::zero()).sqrt();
        g.scale(len.recip())
    }

    /// Point of a sphere leaf over the unit spacelike direction `e` orthogonal to `v`.
    pub fn point(&self, e: &AmbientVector<T>) -> AmbientVector<T> {
        AmbientVector::combine(self.offset.sinh(), &self.w, self.offset.cosh(), e)
    }
}

/// `|<x|w> - level| ≤ tol`, the tolerance scaled by the size of the pairing.
pub fn leaf_membership<T: Real>(leaf: &UmbilicalLeaf<T>, x: &DsPoint<T>) -> bool {
    let x = x.vector();
    let scale = T::one() + x.euclid_norm() * leaf.w.euclid_norm();
    leaf.defining(x).abs() <= T::lit(TOL_MEMBERSHIP) * scale
}

/// `-tanh t` on sphere leaves and `sign(c)` on parabolic ones.
pub fn leaf_mean_curvature<T: Real>(leaf: &UmbilicalLeaf<T>) -> T {
    match leaf.kind {
        LeafKind::Sphere => -leaf.offset.tanh(),
        LeafKind::Parabolic => leaf.offset.signum(),
    }
}

/// One sample `c(t) = (t, v)` of a timelike curve in `H^n × R`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveSample<T> {
    pub t: T,
    pub v: Vec<T>,
}

/// Finitely sampled curve `t ↦ (t, v(t))`; each sample is the leaf `S_(t, v(t))`.
#[derive(Clone, Debug, PartialEq)]
pub struct FoliationCurve<T> {
    samples: Vec<(T, AmbientVector<T>)>,
}

impl<T: Real> FoliationCurve<T> {
    /// Samples must be strictly increasing in `t` with each `v` on the future hyperboloid.
    pub fn new(samples: Vec<(T, AmbientVector<T>)>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(GeometryError::InvalidInput("a foliation curve needs at least two samples".into()));
        }
        for (i, (t, v)) in samples.iter().enumerate() {
            UmbilicalLeaf::sphere(v.clone(), *t)
                .map_err(|e| GeometryError::InvalidInput(format!("sample {i}: {e}")))?;
            if i > 0 && !(*t > samples[i - 1].0) {
                return Err(GeometryError::InvalidInput(format!("sample {i}: times must increase")));
            }
        }
        Ok(Self { samples })
    }

    pub fn from_samples(samples: &[CurveSample<T>]) -> Result<Self> {
        let mut out = Vec::with_capacity(samples.len());
        for s in samples {
            let n = s.v.len().saturating_sub(1);
            out.push((s.t, AmbientVector::new(crate::pseudo_linalg::Signature::ds(n)?, s.v.clone())?));
        }
        Self::new(out)
    }

    pub fn samples(&self) -> &[(T, AmbientVector<T>)] {
        &self.samples
    }

    pub fn leaf(&self, i: usize) -> UmbilicalLeaf<T> {
        let (t, v) = &self.samples[i];
        UmbilicalLeaf { kind: LeafKind::Sphere, w: v.clone(), offset: *t }
    }

    /// Hyperbolic length of each step divided by its duration.
    pub fn speeds(&self) -> Vec<T> {
        self.samples
            .windows(2)
            .map(|w| hyperbolic_distance(&w[0].1, &w[1].1) / (w[1].0 - w[0].0))
            .collect()
    }
}

/// Distance on the hyperboloid `H^n`.
pub fn hyperbolic_distance<T: Real>(a: &AmbientVector<T>, b: &AmbientVector<T>) -> T {
    (-a.ip(b)).max(T::one()).acosh()
}

/// Verdict of [`validate_foliation`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum FoliationVerdict {
    Ok,
    NotTimelike { index: usize },
    LeavesIntersect { i: usize, j: usize },
}

/// Both checks of [`validate_foliation`] and whether they agree.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FoliationReport {
    pub verdict: FoliationVerdict,
    /// First step whose discrete speed is at least 1.
    pub not_timelike: Option<usize>,
    /// Steps with speed in `[1 - guard, 1 + guard]`.
    pub marginal: Vec<usize>,
    /// First pair of leaves the sampler found on both sides of each other.
    pub intersecting: Option<(usize, usize)>,
    pub agree: bool,
}

/// Sampler settings of the brute-force intersection test.
#[derive(Clone, Copy, Debug)]
pub struct IntersectionSampler {
    pub samples: usize,
    pub climb_steps: usize,
    pub seed: u64,
}

impl Default for IntersectionSampler {
    fn default() -> Self {
        Self { samples: 256, climb_steps: 400, seed: 0xF011 }
    }
}

/// Brute-force test: samples leaf `a` and looks for points on both sides of leaf `b`.
///
/// The extremes of the defining function of `b` over `a` are pushed by random hill
/// climbing from the best random samples, so tangencies are resolved to roughly the
/// final climbing step.
pub fn leaves_intersect<T: Real>(
    a: &UmbilicalLeaf<T>,
    b: &UmbilicalLeaf<T>,
    cfg: IntersectionSampler,
    stream: usize,
) -> bool {
    let Some(frame) = orthonormal_complement(&[&a.w]) else { return false };
    let m = frame.len();
    let mut rng = sample_rng(cfg.seed, stream);
    let eval = |omega: &[f64]| -> T {
        let mut e = AmbientVector::zeros(a.w.signature());
        for (f, &c) in frame.iter().zip(omega) {
            e = e.axpy(T::lit(c), f);
        }
        b.defining(&a.point(&e))
    };
    let mut lo = (T::infinity(), vec![0.0; m]);
    let mut hi = (T::neg_infinity(), vec![0.0; m]);
    for _ in 0..cfg.samples {
        let omega = random_unit(&mut rng, m);
        let g = eval(&omega);
        if g < lo.0 {
            lo = (g, omega.clone());
        }
        if g > hi.0 {
            hi = (g, omega);
        }
    }
    for sign in [-1.0, 1.0] {
        let best = if sign < 0.0 { &mut lo } else { &mut hi };
        let mut step = 0.3;
        for _ in 0..cfg.climb_steps {
            let d = random_unit(&mut rng, m);
            let mut trial: Vec<f64> = best.1.iter().zip(&d).map(|(&p, &q)| p + step * q).collect();
            let r = trial.iter().map(|c| c * c).sum::<f64>().sqrt();
            trial.iter_mut().for_each(|c| *c /= r);
            let g = eval(&trial);
            if T::lit(sign) * (g - best.0) > T::zero() {
                *best = (g, trial);
            } else {
                step *= 0.97;
            }
        }
    }
    lo.0 < T::zero() && hi.0 > T::zero()
}

/// Discrete timelike check and brute-force pairwise disjointness of the sampled leaves.
pub fn validate_foliation<T: Real>(curve: &FoliationCurve<T>, cfg: IntersectionSampler) -> FoliationReport {
    let speeds = curve.speeds();
    let guard = T::lit(FOLIATION_GUARD);
    let not_timelike = speeds.iter().position(|&s| s >= T::one());
    let marginal: Vec<usize> =
        speeds.iter().enumerate().filter(|(_, &s)| (s - T::one()).abs() <= guard).map(|(i, _)| i).collect();
    let k = curve.samples.len();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let hits: Vec<bool> = pairs
        .par_iter()
        .enumerate()
        .map(|(s, &(i, j))| leaves_intersect(&curve.leaf(i), &curve.leaf(j), cfg, s))
        .collect();
    let intersecting = pairs.iter().zip(&hits).find(|(_, &h)| h).map(|(&p, _)| p);
    let verdict = match (not_timelike, intersecting) {
        (Some(index), _) => FoliationVerdict::NotTimelike { index },
        (None, Some((i, j))) => FoliationVerdict::LeavesIntersect { i, j },
        (None, None) => FoliationVerdict::Ok,
    };
    let agree = not_timelike.is_some() == intersecting.is_some();
    FoliationReport { verdict, not_timelike, marginal, intersecting, agree }
}

/// Mean curvature of the `τ = a` level of the two-mark domain of `dS_n`:
/// `-(coth a + (n - 2) tanh a) / (n - 1)`.
pub fn counterexample_curvature<T: Real>(n: usize, a: T) -> T {
    let m = T::from_usize(n - 1).unwrap();
    let k = T::from_usize(n - 2).unwrap();
    -(a.tanh().recip() + k * a.tanh()) / m
}

/// Profile of [`counterexample_curvature`] over a grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CounterexampleProfile<T> {
    pub n: usize,
    pub points: Vec<(T, T)>,
    /// Strictly increasing along the grid.
    pub monotone: bool,
    /// Interior maximum located numerically, when one exists.
    pub peak: Option<(T, T)>,
}

pub fn counterexample_profile<T: Real>(n: usize, a_grid: &[T]) -> Result<CounterexampleProfile<T>> {
    if n < 3 {
        return Err(GeometryError::InvalidInput(format!("the profile needs n >= 3, got {n}")));
    }
    if let Some(a) = a_grid.iter().find(|&&a| !(a > T::zero() && a.is_finite())) {
        return Err(GeometryError::Range(format!("level {} must be positive", a.as_f64())));
    }
    let mut grid = a_grid.to_vec();
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let points: Vec<(T, T)> = grid.iter().map(|&a| (a, counterexample_curvature(n, a))).collect();
    let monotone = points.windows(2).all(|w| w[1].1 > w[0].1);
    Ok(CounterexampleProfile { n, points, monotone, peak: counterexample_peak(n) })
}

/// Maximum of the profile by golden-section search on `(0, 20]`; `None` for `n = 3`,
/// where the profile increases to `-1`.
pub fn counterexample_peak<T: Real>(n: usize) -> Option<(T, T)> {
    if n < 4 {
        return None;
    }
    let (a, h) = golden_max(&|a: f64| counterexample_curvature(n, a), 1e-3, 20.0, 1e-12);
    Some((T::lit(a), T::lit(h)))
}

/// Random unit future timelike vector at hyperbolic distance `r` from `e0`.
pub fn hyperboloid_point<T: Real, R: Rng>(rng: &mut R, n: usize, r: f64) -> AmbientVector<T> {
    let dir = random_unit(rng, n);
    let mut c = vec![T::lit(r.cosh())];
    c.extend(dir.iter().map(|&d| T::lit(r.sinh() * d)));
    AmbientVector::from_parts(crate::pseudo_linalg::Signature::ds(n).expect("n >= 2"), c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pseudo_linalg::Signature;

    fn e0(n: usize) -> AmbientVector<f64> {
        AmbientVector::basis(Signature::ds(n).unwrap(), 0)
    }

    #[test]
    fn equator_leaf() {
        let leaf = UmbilicalLeaf::sphere(e0(3), 0.0).unwrap();
        let x = DsPoint::from_coords(vec![0.0, 0.6, 0.8, 0.0]).unwrap();
        assert!(leaf_membership(&leaf, &x));
        assert_eq!(leaf_mean_curvature(&leaf), 0.0);
        let off = DsPoint::from_vector_unchecked(
            AmbientVector::new(x.vector().signature(), vec![1e-6, 0.6, 0.8, 0.0]).unwrap(),
        );
        assert!(!leaf_membership(&leaf, &off));
    }

    #[test]
    fn mean_curvature_values() {
        let leaf = UmbilicalLeaf::sphere(e0(3), 1.0).unwrap();
        assert!((leaf_mean_curvature(&leaf) + 0.761594155955765).abs() < 1e-12);
        let u = AmbientVector::new(Signature::ds(3).unwrap(), vec![1.0, 0.0, 0.0, 1.0]).unwrap();
        assert_eq!(leaf_mean_curvature(&UmbilicalLeaf::parabolic(u.clone(), -0.5).unwrap()), -1.0);
        assert!(UmbilicalLeaf::parabolic(u, 0.0).is_err());
    }

    #[test]
    fn parametrized_points_lie_on_leaf() {
        let leaf = UmbilicalLeaf::sphere(e0(3), 0.8).unwrap();
        let e = AmbientVector::new(Signature::ds(3).unwrap(), vec![0.0, 0.0, 0.6, 0.8]).unwrap();
        let x = DsPoint::new(leaf.point(&e)).unwrap();
        assert!(leaf_membership(&leaf, &x));
        let nu = leaf.normal(x.vector());
        assert!((nu.q() + 1.0).abs() < 1e-12 && nu[0] > 0.0);
    }

    #[test]
    fn profile_shapes() {
        let grid: Vec<f64> = (1..60).map(|i| 0.1 * i as f64).collect();
        assert!(counterexample_profile(3, &grid).unwrap().monotone);
        let p4 = counterexample_profile(4, &grid).unwrap();
        assert!(!p4.monotone);
        let (a, h) = p4.peak.unwrap();
        assert!((a - (0.5f64.sqrt()).atanh()).abs() < 1e-6);
        assert!((h + 2.0 * 2f64.sqrt() / 3.0).abs() < 1e-10);
        assert!(counterexample_profile(4, &[0.0]).is_err());
    }
}
