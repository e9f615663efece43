//! Exact cosmological time of domains cut out by finitely many null half-spaces.
//!
//! A point `x` in the domain `{<x|u_i> < 0}` splits as `x = C(a) p + S(a) q` where
//! `q` lies in the cone spanned by the null vectors active at the foot `p`. For a
//! candidate active set `A`, projecting `x` onto `F = span(u_A)` recovers `S(a) q`
//! and the orthogonal part recovers `C(a) p`. A candidate is accepted when the
//! weights are nonnegative, `q` is future at `p`, and `p` lies in the closed domain;
//! the foot is then a horizon point where `q^⊥` supports the domain, so `a` is the
//! cosmological time.

use crate::error::{GeometryError, Result};
use crate::pseudo_linalg::{project_onto_span, AmbientVector};
use crate::scalar::Real;
use crate::spacetime::Spacetime;

/// Largest number of null vectors accepted by the exhaustive active-set search.
pub const MAX_EXACT_CONSTRAINTS: usize = 16;

/// Result of the exact split `x = C(a) p + S(a) q`.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportDecomposition<T> {
    /// Cosmological time `a`.
    pub time: T,
    /// Horizon foot `p` on the quadric.
    pub foot: AmbientVector<T>,
    /// Unit future timelike direction `q` at the foot.
    pub direction: AmbientVector<T>,
    /// Indices of the null vectors spanning the active face.
    pub active: Vec<usize>,
    /// Weights of `S(a) q` in the active null vectors.
    pub weights: Vec<T>,
    /// Largest normalized value of `<p|u_j>` over all constraints (certificate defect).
    pub defect: T,
}

impl<T: Real> SupportDecomposition<T> {
    /// Future unit normal of the level set through `x`, i.e. the geodesic velocity at `x`.
    pub fn normal(&self, st: Spacetime) -> AmbientVector<T> {
        st.geodesic_velocity(&self.foot, &self.direction, self.time)
    }

    /// Point of the realizing geodesic at parameter `s`.
    pub fn point_at(&self, st: Spacetime, s: T) -> AmbientVector<T> {
        st.geodesic(&self.foot, &self.direction, s)
    }

    /// Smallest weight relative to the sum of weights.
    pub fn interiority(&self) -> T {
        let total: T = self.weights.iter().copied().sum();
        self.weights.iter().fold(T::infinity(), |m, &w| m.min(w)) / total
    }
}

fn face<T: Real>(
    st: Spacetime,
    x: &AmbientVector<T>,
    nulls: &[AmbientVector<T>],
    idx: &[usize],
) -> Option<SupportDecomposition<T>> {
    let basis: Vec<&AmbientVector<T>> = idx.iter().map(|&i| &nulls[i]).collect();
    let (weights, xf) = project_onto_span(x, &basis)?;
    let total: T = weights.iter().map(|w| w.abs()).sum();
    if weights.iter().any(|&w| w < -T::lit(1e-12) * total) {
        return None;
    }
    let qf = xf.q();
    if qf >= T::zero() {
        return None;
    }
    let s = (-qf).sqrt();
    let xp = x - &xf;
    let (c, time) = match st {
        Spacetime::AntiDeSitter => {
            let c2 = -xp.q();
            if c2 <= T::zero() {
                return None;
            }
            let c = c2.sqrt();
            (c, s.atan2(c))
        }
        Spacetime::DeSitter => (xp.q().max(T::one()).sqrt(), s.asinh()),
    };
    let foot = xp.scale(c.recip());
    let direction = xf.scale(s.recip());
    if !st.is_future(&foot, &direction) {
        return None;
    }
    let defect = nulls
        .iter()
        .enumerate()
        .filter(|(j, _)| !idx.contains(j))
        .map(|(_, u)| foot.ip(u) / u.euclid_norm())
        .fold(T::neg_infinity(), T::max);
    Some(SupportDecomposition { time, foot, direction, active: idx.to_vec(), weights, defect })
}

fn certified<T: Real>(d: &SupportDecomposition<T>) -> bool {
    d.defect <= T::lit(1e-9)
}

/// Calls `f` on every `r`-subset of `0..k` in lexicographic order.
fn for_each_subset(k: usize, r: usize, f: &mut impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..r).collect();
    if r > k {
        return;
    }
    loop {
        f(&idx);
        let mut i = r;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + k - r {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Exact cosmological time and realizing geodesic of `x` for the domain `{<.|u_i> < 0}`.
///
/// `hint` is an active set to try first (for example the one of a nearby point).
/// Returns `Ok(None)` when no certified face exists (for AdS: `x` outside the tight region).
pub fn decompose<T: Real>(
    st: Spacetime,
    x: &AmbientVector<T>,
    nulls: &[AmbientVector<T>],
    hint: Option<&[usize]>,
) -> Result<Option<SupportDecomposition<T>>> {
    let k = nulls.len();
    if let Some(h) = hint {
        if h.len() >= 2 && h.iter().all(|&i| i < k) {
            if let Some(d) = face(st, x, nulls, h) {
                if certified(&d) {
                    return Ok(Some(d));
                }
            }
        }
    }
    if k > MAX_EXACT_CONSTRAINTS {
        return Err(GeometryError::InvalidInput(format!(
            "exact cosmological time supports at most {MAX_EXACT_CONSTRAINTS} boundary points, got {k}"
        )));
    }
    let n = x.len() - 1;
    let mut best: Option<SupportDecomposition<T>> = None;
    for r in 2..=n.min(k) {
        for_each_subset(k, r, &mut |idx| {
            if let Some(d) = face(st, x, nulls, idx) {
                if certified(&d) {
                    let better = match &best {
                        None => true,
                        Some(b) => d.interiority() > b.interiority(),
                    };
                    if better {
                        best = Some(d);
                    }
                }
            }
        });
    }
    Ok(best)
}
