//! Second fundamental form from a local height function.
//!
//! Around `x` with future unit normal `ν` and orthonormal tangent frame `e_i`, the
//! surface is the graph `y ↦ w(y)` of points `π(x + Σ y_i e_i + w ν)`, `π` the radial
//! projection to the quadric. On the quadric `II_ij = -∂_i ∂_j w(0)`, so fitting a
//! quadratic to `w` on a symmetric stencil gives `II` to second order in the step.

use crate::dense::{solve, Matrix};
use crate::error::{GeometryError, Result};
use crate::optimize::brent_root;
use crate::pseudo_linalg::{orthonormal_complement, AmbientVector};
use crate::scalar::Real;

use super::surfaces::LevelSurface;

/// Result of [`estimate_mean_curvature`].
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureEstimate<T> {
    /// `tr II / (n - 1)`.
    pub mean: T,
    /// Root-mean-square misfit of the quadratic fit divided by `h²`.
    pub residual: T,
    /// Eigenvalues of `II` in the orthonormal frame, ascending.
    pub principal: Vec<T>,
}

/// Tangent offsets `±h e_i` and `±h (e_i ± e_j)` plus the origin, in units of `h`.
fn stencil(m: usize) -> Vec<Vec<i32>> {
    let mut pts = vec![vec![0; m]];
    for i in 0..m {
        for s in [-1, 1] {
            let mut p = vec![0; m];
            p[i] = s;
            pts.push(p);
        }
        for j in i + 1..m {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut p = vec![0; m];
                p[i] = si;
                p[j] = sj;
                pts.push(p);
            }
        }
    }
    pts
}

/// Height of the surface over the tangent offset `y` along `ν`.
pub(crate) fn height<T: Real>(
    surface: &dyn LevelSurface<T>,
    base: &AmbientVector<T>,
    normal: &AmbientVector<T>,
    h: T,
) -> Option<T> {
    let st = surface.spacetime();
    let mut g = |w: T| -> Option<T> { surface.defining(&st.project_to_quadric(&base.axpy(w, normal))?) };
    let g0 = g(T::zero())?;
    if g0 == T::zero() {
        return Some(T::zero());
    }
    // The defining function grows toward the future, so the root lies against the sign of g0.
    let dir = -g0.signum();
    let mut d = h * h;
    let mut prev = T::zero();
    while d < T::one() {
        let w = dir * d;
        let gw = g(w)?;
        if gw.signum() != g0.signum() {
            let (lo, hi) = if prev < w { (prev, w) } else { (w, prev) };
            return brent_root(&mut g, lo, hi, T::epsilon() * T::lit(4.0) * (T::one() + d));
        }
        prev = w;
        d = d * T::lit(4.0);
    }
    None
}

/// Estimates `H` at the surface point `x` with future unit normal `normal`.
///
/// `h` is the stencil step; it must lie in `[1e-5, 1e-2]`.
pub fn estimate_mean_curvature<T: Real>(
    surface: &dyn LevelSurface<T>,
    x: &AmbientVector<T>,
    normal: &AmbientVector<T>,
    h: T,
) -> Result<CurvatureEstimate<T>> {
    if !(h >= T::lit(1e-5) && h <= T::lit(1e-2)) {
        return Err(GeometryError::Range(format!("stencil step {} outside [1e-5, 1e-2]", h.as_f64())));
    }
    let frame = orthonormal_complement(&[x, normal])
        .ok_or_else(|| GeometryError::Numerical("no tangent frame at the sample".into()))?;
    let m = frame.len();
    let pts = stencil(m);
    let mut heights = Vec::with_capacity(pts.len());
    for p in &pts {
        let mut base = x.clone();
        for (e, &k) in frame.iter().zip(p) {
            if k != 0 {
                base = base.axpy(h * T::lit(k as f64), e);
            }
        }
        let w = height(surface, &base, normal, h)
            .ok_or_else(|| GeometryError::Numerical("projection onto the surface failed".into()))?;
        heights.push(w);
    }
    // w(ŷ) = c + Σ g_i ŷ_i + Σ_i a_ii ŷ_i²/2 + Σ_{i<j} a_ij ŷ_i ŷ_j with ŷ = y / h.
    let unknowns = 1 + m + m * (m + 1) / 2;
    let row = |p: &[i32]| -> Vec<T> {
        let mut r = Vec::with_capacity(unknowns);
        r.push(T::one());
        r.extend(p.iter().map(|&k| T::lit(k as f64)));
        for i in 0..m {
            for j in i..m {
                let v = T::lit((p[i] * p[j]) as f64);
                r.push(if i == j { T::lit(0.5) * v } else { v });
            }
        }
        r
    };
    let rows: Vec<Vec<T>> = pts.iter().map(|p| row(p)).collect();
    let mut ata = vec![vec![T::zero(); unknowns]; unknowns];
    let mut atb = vec![T::zero(); unknowns];
    for (r, &w) in rows.iter().zip(&heights) {
        for i in 0..unknowns {
            atb[i] = atb[i] + r[i] * w;
            for j in 0..unknowns {
                ata[i][j] = ata[i][j] + r[i] * r[j];
            }
        }
    }
    let coef = solve(ata, atb).ok_or_else(|| GeometryError::Numerical("singular stencil fit".into()))?;
    let misfit: T = rows
        .iter()
        .zip(&heights)
        .map(|(r, &w)| {
            let fit: T = r.iter().zip(&coef).map(|(&a, &b)| a * b).sum();
            (fit - w) * (fit - w)
        })
        .sum();
    let h2 = h * h;
    let residual = (misfit / T::from_usize(rows.len()).unwrap()).sqrt() / h2;
    let mut second = Matrix::zeros(m);
    let mut k = 1 + m;
    for i in 0..m {
        for j in i..m {
            second[(i, j)] = -coef[k] / h2;
            second[(j, i)] = -coef[k] / h2;
            k += 1;
        }
    }
    let principal = second.symmetric_eigenvalues();
    let mean = second.trace() / T::from_usize(m).unwrap();
    Ok(CurvatureEstimate { mean, residual, principal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foliation::UmbilicalLeaf;
    use crate::pseudo_linalg::Signature;

    #[test]
    fn stencil_sizes() {
        assert_eq!(stencil(2).len(), 9);
        assert_eq!(stencil(3).len(), 19);
    }

    #[test]
    fn umbilical_leaf_curvature() {
        let sig = Signature::ds(3).unwrap();
        let leaf = UmbilicalLeaf::sphere(AmbientVector::basis(sig, 0), 1.0f64).unwrap();
        let e = AmbientVector::new(sig, vec![0.0, 0.6, 0.0, 0.8]).unwrap();
        let x = leaf.point(&e);
        let est = estimate_mean_curvature(&leaf, &x, &leaf.normal(&x), 1e-3).unwrap();
        assert!((est.mean + 1f64.tanh()).abs() < 1e-6, "{}", est.mean);
        assert!(est.residual < 1e-6);
    }
}
