#![allow(dead_code)]

use cosmotime::ads::domain::{AchronalData, AdsDomain, BoundaryPoint};
use cosmotime::ads::model::{conformal_to_linear, AdsConformalPoint, AdsLinearPoint};
use cosmotime::ds::domain::{DsBoundarySet, DsPoint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn unit<R: Rng>(rng: &mut R, m: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let r = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if r > 0.1 && r <= 1.0 {
            return v.iter().map(|c| c / r).collect();
        }
    }
}

/// `k` equally spaced points of the equator of `S^2` at time zero.
pub fn fuchsian_circle(k: usize) -> AdsDomain<f64> {
    let points = (0..k)
        .map(|i| {
            let s = 2.0 * std::f64::consts::PI * i as f64 / k as f64;
            BoundaryPoint { theta: 0.0, p: vec![s.cos(), s.sin()] }
        })
        .collect();
    AdsDomain::new(AchronalData::new(3, points).unwrap()).unwrap()
}

/// Random data `θ_i = slope <p_i|w>`, which is `slope`-Lipschitz.
pub fn random_ads_domain<R: Rng>(rng: &mut R, n: usize, k: usize, slope: f64) -> AdsDomain<f64> {
    let w = unit(rng, n - 1);
    let points = (0..k)
        .map(|_| {
            let q = unit(rng, n - 1);
            let theta = slope * q.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>();
            BoundaryPoint { theta, p: q }
        })
        .collect();
    AdsDomain::new(AchronalData::new(n, points).unwrap()).unwrap()
}

/// Random point of `E(Λ)`: conformal time uniform between the horizons over a random `p`.
pub fn random_ads_point<R: Rng>(rng: &mut R, dom: &AdsDomain<f64>) -> AdsLinearPoint<f64> {
    let n = dom.n();
    loop {
        let mut p = unit(rng, n);
        p[n - 1] = p[n - 1].abs();
        if p[n - 1] < 0.05 {
            continue;
        }
        let (lo, hi) = dom.f_bounds(&p);
        let t = lo + (hi - lo) * rng.gen_range(0.02..0.98);
        let x = conformal_to_linear(&AdsConformalPoint::new(t, p).unwrap()).unwrap();
        if dom.contains_klein(&x) {
            return x;
        }
    }
}

pub fn random_ds_set<R: Rng>(rng: &mut R, n: usize, k: usize) -> DsBoundarySet<f64> {
    DsBoundarySet::new(n, (0..k).map(|_| unit(rng, n)).collect()).unwrap()
}

/// Random point of `B₀⁺(S)` with conformal time at most `frac` of the way to infinity.
pub fn random_ds_point<R: Rng>(rng: &mut R, bs: &DsBoundarySet<f64>, frac: f64) -> DsPoint<f64> {
    loop {
        let omega = unit(rng, bs.n());
        let g = bs.horizon_time(&omega);
        let t = g + (std::f64::consts::FRAC_PI_2 - g) * rng.gen_range(0.02..frac);
        let x = DsPoint::from_conformal(t, &omega).unwrap();
        if cosmotime::ds::domain::contains_ds(bs, &x) {
            return x;
        }
    }
}
