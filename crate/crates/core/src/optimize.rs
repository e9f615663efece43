//! Derivative-free maximization on spheres: a Nelder-Mead simplex in tangent charts
//! started from the best points of a coarse grid.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::Real;

/// Stopping rules of [`nelder_mead`].
#[derive(Clone, Copy, Debug)]
pub struct NelderMeadOptions<T> {
    pub max_evals: usize,
    /// Spread of simplex values, relative to the best value.
    pub ftol: T,
    /// Simplex diameter.
    pub xtol: T,
}

impl<T: Real> Default for NelderMeadOptions<T> {
    fn default() -> Self {
        Self { max_evals: 4000, ftol: T::lit(1e-15), xtol: T::lit(1e-12) }
    }
}

/// Minimizes `f` from `x0` with an axis-aligned initial simplex of size `step`.
pub fn nelder_mead<T: Real>(
    f: &mut impl FnMut(&[T]) -> T,
    x0: &[T],
    step: T,
    opts: NelderMeadOptions<T>,
) -> (Vec<T>, T) {
    let d = x0.len();
    let mut simplex: Vec<(Vec<T>, T)> = Vec::with_capacity(d + 1);
    simplex.push((x0.to_vec(), f(x0)));
    for i in 0..d {
        let mut x = x0.to_vec();
        x[i] = x[i] + step;
        let fx = f(&x);
        simplex.push((x, fx));
    }
    let mut evals = d + 1;
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    loop {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));
        let best = simplex[0].1;
        let worst = simplex[d].1;
        let spread = (worst - best).abs();
        let diam = simplex[1..]
            .iter()
            .map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(&a, &b)| (a - b).abs()).fold(T::zero(), T::max))
            .fold(T::zero(), T::max);
        if evals >= opts.max_evals || (spread <= opts.ftol * (best.abs() + T::lit(1e-300)) && diam <= opts.xtol) {
            break;
        }
        if diam <= T::epsilon() * T::lit(4.0) {
            break;
        }
        let inv = T::from_usize(d).unwrap().recip();
        let mut centroid = vec![T::zero(); d];
        for (x, _) in &simplex[..d] {
            for (c, &v) in centroid.iter_mut().zip(x) {
                *c = *c + v * inv;
            }
        }
        let along = |t: T| -> Vec<T> {
            centroid.iter().zip(&simplex[d].0).map(|(&c, &w)| c + t * (c - w)).collect()
        };
        let xr = along(T::one());
        let fr = f(&xr);
        evals += 1;
        if fr < simplex[0].1 {
            let xe = along(two);
            let fe = f(&xe);
            evals += 1;
            simplex[d] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[d - 1].1 {
            simplex[d] = (xr, fr);
        } else {
            let (xc, fc) = if fr < worst {
                let xc = along(half);
                let fc = f(&xc);
                (xc, fc)
            } else {
                let xc = along(-half);
                let fc = f(&xc);
                (xc, fc)
            };
            evals += 1;
            if fc < worst.min(fr) {
                simplex[d] = (xc, fc);
            } else {
                let x0 = simplex[0].0.clone();
                for (x, fx) in simplex.iter_mut().skip(1) {
                    for (v, &b) in x.iter_mut().zip(&x0) {
                        *v = b + half * (*v - b);
                    }
                    *fx = f(x);
                    evals += 1;
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));
    let (x, fx) = simplex.swap_remove(0);
    (x, fx)
}

fn normalize<T: Real>(v: &mut [T]) -> bool {
    let n: T = v.iter().map(|&c| c * c).sum::<T>().sqrt();
    if n <= T::zero() || !n.is_finite() {
        return false;
    }
    for c in v.iter_mut() {
        *c = *c / n;
    }
    true
}

fn fold<T: Real>(v: &mut [T], upper_half: bool) {
    if upper_half {
        let last = v.len() - 1;
        v[last] = v[last].abs();
    }
}

/// Roughly uniform points of `S^{m-1} ⊂ R^m` (or its closed upper half).
///
/// Circles get equally spaced angles, the 2-sphere a Fibonacci lattice, and higher
/// spheres seeded Gaussian samples.
pub fn sphere_grid<T: Real>(m: usize, count: usize, upper_half: bool, seed: u64) -> Vec<Vec<T>> {
    let count = count.max(1);
    match m {
        2 => {
            let span = if upper_half { std::f64::consts::PI } else { 2.0 * std::f64::consts::PI };
            (0..count)
                .map(|i| {
                    let a = span * (i as f64 + 0.5) / count as f64;
                    vec![T::lit(a.cos()), T::lit(a.sin())]
                })
                .collect()
        }
        3 => {
            let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
            (0..count)
                .map(|i| {
                    let z = if upper_half {
                        (i as f64 + 0.5) / count as f64
                    } else {
                        1.0 - 2.0 * (i as f64 + 0.5) / count as f64
                    };
                    let r = (1.0 - z * z).max(0.0).sqrt();
                    let phi = golden * i as f64;
                    vec![T::lit(r * phi.cos()), T::lit(r * phi.sin()), T::lit(z)]
                })
                .collect()
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::with_capacity(count);
            while out.len() < count {
                let mut v: Vec<T> = (0..m).map(|_| T::lit(gaussian(&mut rng))).collect();
                if normalize(&mut v) {
                    fold(&mut v, upper_half);
                    out.push(v);
                }
            }
            out
        }
    }
}

/// Standard normal sample by the Box-Muller transform.
pub fn gaussian<R: Rng>(rng: &mut R) -> f64 {
    let u: f64 = rng.gen_range(f64::EPSILON..1.0);
    let v: f64 = rng.gen();
    (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos()
}

/// Uniform random point of `S^{m-1}`.
pub fn random_unit<R: Rng>(rng: &mut R, m: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..m).map(|_| gaussian(rng)).collect();
        let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if n > 1e-12 {
            return v.into_iter().map(|c| c / n).collect();
        }
    }
}

/// Orthonormal basis of the tangent space `p^⊥` of the unit sphere at `p`.
pub fn tangent_basis<T: Real>(p: &[T]) -> Vec<Vec<T>> {
    let m = p.len();
    let mut out: Vec<Vec<T>> = Vec::with_capacity(m - 1);
    for i in 0..m {
        if out.len() == m - 1 {
            break;
        }
        let mut v = vec![T::zero(); m];
        v[i] = T::one();
        for _ in 0..2 {
            for b in std::iter::once(p).chain(out.iter().map(|b| b.as_slice())) {
                let c: T = v.iter().zip(b).map(|(&x, &y)| x * y).sum();
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = *x - c * y;
                }
            }
        }
        let n: T = v.iter().map(|&c| c * c).sum::<T>().sqrt();
        if n > T::lit(1e-6) {
            out.push(v.into_iter().map(|c| c / n).collect());
        }
    }
    out
}

/// A local maximum found by [`maximize_on_sphere`].
#[derive(Clone, Debug, PartialEq)]
pub struct LocalMax<T> {
    pub start: Vec<T>,
    pub point: Vec<T>,
    pub value: T,
}

/// Configuration of the multi-start sphere search.
#[derive(Clone, Copy, Debug)]
pub struct SphereSearch {
    pub grid_points: usize,
    pub starts: usize,
    pub upper_half: bool,
    pub seed: u64,
}

/// Orthonormal basis of the tangent space at `p`, rotated at random so that restarted
/// simplices do not keep the same orientation against a ridge.
fn rotated_tangent_basis<T: Real, R: Rng>(p: &[T], rng: &mut R) -> Vec<Vec<T>> {
    let base = tangent_basis(p);
    let d = base.len();
    let mut out: Vec<Vec<T>> = Vec::with_capacity(d);
    while out.len() < d {
        let w: Vec<T> = (0..d).map(|_| T::lit(gaussian(rng))).collect();
        let mut v = vec![T::zero(); p.len()];
        for (b, &c) in base.iter().zip(&w) {
            for (x, &e) in v.iter_mut().zip(b) {
                *x = *x + c * e;
            }
        }
        for o in &out {
            let dot: T = v.iter().zip(o).map(|(&a, &b)| a * b).sum();
            for (x, &e) in v.iter_mut().zip(o) {
                *x = *x - dot * e;
            }
        }
        if normalize(&mut v) {
            out.push(v);
        }
    }
    out
}

fn refine<T: Real>(f: &impl Fn(&[T]) -> T, start: &[T], step: T, upper_half: bool, seed: u64) -> LocalMax<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut center = start.to_vec();
    let mut value = f(&center);
    let mut step = step;
    let min_step = T::lit(1e-10);
    for _round in 0..40 {
        let basis = rotated_tangent_basis(&center, &mut rng);
        let chart = |y: &[T]| -> Vec<T> {
            let mut v = center.clone();
            for (b, &c) in basis.iter().zip(y) {
                for (x, &e) in v.iter_mut().zip(b) {
                    *x = *x + c * e;
                }
            }
            normalize(&mut v);
            fold(&mut v, upper_half);
            v
        };
        let mut obj = |y: &[T]| -f(&chart(y));
        let y0 = vec![T::zero(); center.len() - 1];
        let (y, fy) = nelder_mead(&mut obj, &y0, step, NelderMeadOptions::default());
        let moved = y.iter().fold(T::zero(), |m, &c| m.max(c.abs()));
        if -fy > value {
            center = chart(&y);
            value = -fy;
        }
        // Keep the scale while the simplex keeps travelling, shrink it once it settles.
        if moved < step {
            if step <= min_step {
                break;
            }
            step = (step * T::lit(0.2)).max(min_step);
        }
    }
    LocalMax { start: start.to_vec(), point: center, value }
}

/// Maximizes `f` over the unit sphere of `R^m` from the best grid points.
///
/// Grid points and `seeds` with positive objective are ranked; the best `starts` of
/// them are refined. When fewer positive candidates exist, extra starts are drawn
/// around the best one. Returns one local maximum per start, best first; empty when
/// the objective vanishes at every candidate.
pub fn maximize_on_sphere<T: Real>(
    f: impl Fn(&[T]) -> T,
    m: usize,
    seeds: &[Vec<T>],
    cfg: SphereSearch,
) -> Vec<LocalMax<T>> {
    let grid = sphere_grid::<T>(m, cfg.grid_points, cfg.upper_half, cfg.seed);
    let spacing = (4.0 * std::f64::consts::PI / cfg.grid_points.max(1) as f64).powf(1.0 / (m as f64 - 1.0).max(1.0));
    let mut cands: Vec<(Vec<T>, T)> = grid
        .into_iter()
        .chain(seeds.iter().cloned())
        .map(|p| {
            let v = f(&p);
            (p, v)
        })
        .filter(|(_, v)| *v > T::zero() && v.is_finite())
        .collect();
    if cands.is_empty() {
        return Vec::new();
    }
    cands.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
    cands.truncate(cfg.starts);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed);
    let best = cands[0].0.clone();
    let mut tries = 0;
    while cands.len() < cfg.starts && tries < 64 * cfg.starts {
        tries += 1;
        let r = spacing * 0.5f64.powi((tries / 8) as i32);
        let mut p: Vec<T> = best.iter().map(|&c| c + T::lit(r * gaussian(&mut rng))).collect();
        if !normalize(&mut p) {
            continue;
        }
        fold(&mut p, cfg.upper_half);
        let v = f(&p);
        if v > T::zero() {
            cands.push((p, v));
        }
    }
    let step = T::lit((spacing * 0.25).min(0.1));
    let mut out: Vec<LocalMax<T>> = cands
        .iter()
        .enumerate()
        .map(|(i, (p, _))| refine(&f, p, step, cfg.upper_half, cfg.seed.wrapping_add(i as u64)))
        .collect();
    out.sort_by(|a, b| b.value.partial_cmp(&a.value).unwrap());
    out
}

/// Largest coordinate distance from the best maximum to the other maxima whose value is
/// within `value_tol` of it. Starts that stalled below the optimum do not count.
pub fn maximizer_spread<T: Real>(res: &[LocalMax<T>], value_tol: T) -> T {
    let Some(best) = res.first() else { return T::zero() };
    res.iter()
        .filter(|r| best.value - r.value <= value_tol * (T::one() + best.value.abs()))
        .map(|r| r.point.iter().zip(&best.point).map(|(&u, &v)| (u - v).abs()).fold(T::zero(), T::max))
        .fold(T::zero(), T::max)
}

/// Root of `f` in the bracket `[a, b]` (Brent-Dekker). `fa` and `fb` must differ in sign.
/// Returns `None` if `f` fails to evaluate or the bracket is invalid.
pub fn brent_root<T: Real>(f: &mut impl FnMut(T) -> Option<T>, mut a: T, mut b: T, tol: T) -> Option<T> {
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    if fa == T::zero() {
        return Some(a);
    }
    if fb == T::zero() {
        return Some(b);
    }
    if fa.signum() == fb.signum() {
        return None;
    }
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = two * T::epsilon() * b.abs() + half * tol;
        let xm = half * (c - b);
        if xm.abs() <= tol1 || fb == T::zero() {
            return Some(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (two * xm * s, T::one() - s)
            } else {
                let q = fa / fc;
                let r = fb / fc;
                (
                    s * (two * xm * q * (q - r) - (b - a) * (r - T::one())),
                    (q - T::one()) * (r - T::one()) * (s - T::one()),
                )
            };
            if p > T::zero() {
                q = -q;
            }
            p = p.abs();
            let min1 = T::lit(3.0) * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if two * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b = if d.abs() > tol1 { b + d } else { b + tol1 * xm.signum() };
        fb = f(b)?;
    }
    Some(b)
}

/// Maximum of a unimodal `f` on `[a, b]` by golden-section search.
pub fn golden_max<T: Real>(f: &impl Fn(T) -> T, mut a: T, mut b: T, tol: T) -> (T, T) {
    let g = T::lit(0.5 * (5f64.sqrt() - 1.0));
    let (mut c, mut d) = (b - g * (b - a), a + g * (b - a));
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    let x = T::lit(0.5) * (a + b);
    (x, f(x))
}
