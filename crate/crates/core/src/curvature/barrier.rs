//! Barrier scans: mean-curvature envelopes on probe levels near both ends of a
//! domain, turned into a verdict on the existence of a CMC time.
//!
//! Past probes are forward levels `τ = a` with `a → 0`. Future probes are reverse
//! levels `τ̂ = b → 0` in AdS and forward levels `τ = b → ∞` in dS.

use serde::{Deserialize, Serialize, Serializer};

use super::bounds::{verify_level_bounds, Model};
use super::surfaces::DomainRef;
use crate::scalar::Real;
use crate::spacetime::Spacetime;
use crate::tolerances::BOUND_SLACK;

/// Fraction of `1/(n-1)` that `a · H_max` must reach on the innermost past probe
/// (and `b · H_min` on the innermost AdS future probe) to certify divergence.
const DIVERGENCE_FRACTION: f64 = 0.9;

/// A real number or an infinite endpoint. Infinities serialize as `"-inf"`/`"+inf"`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Extended {
    NegInf,
    Finite(f64),
    PosInf,
}

impl Extended {
    pub fn value(self) -> f64 {
        match self {
            Extended::NegInf => f64::NEG_INFINITY,
            Extended::Finite(v) => v,
            Extended::PosInf => f64::INFINITY,
        }
    }
}

impl std::fmt::Display for Extended {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Extended::NegInf => write!(f, "-inf"),
            Extended::Finite(v) => write!(f, "{v}"),
            Extended::PosInf => write!(f, "+inf"),
        }
    }
}

impl Serialize for Extended {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Extended::Finite(v) => s.serialize_f64(*v),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Past,
    Future,
}

/// Envelope of one probe level. `h_min`/`h_max` are NaN when nothing was accepted.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeRow {
    pub side: Side,
    pub model: Model,
    pub level: f64,
    pub h_min: f64,
    pub h_max: f64,
    pub accepted_fraction: f64,
    pub violations: usize,
    pub generalized_failures: usize,
}

impl ProbeRow {
    fn usable(&self) -> bool {
        self.h_min.is_finite() && self.h_max.is_finite()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CmcVerdict {
    Global,
    Partial,
    None,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BarrierReport {
    pub spacetime: Spacetime,
    pub n: usize,
    /// Past probes ordered toward the past end, then future probes ordered toward the future end.
    pub grid: Vec<ProbeRow>,
    pub past_barrier_sequence: bool,
    pub future_barrier_sequence: bool,
    pub alpha: Option<Extended>,
    /// Empirical limit of the future envelope; never asserted to be exact.
    pub beta: Option<Extended>,
    pub cmc_time_verdict: CmcVerdict,
    /// Set when the future envelope rises into `[-1, ∞)` and comes back down (dS only).
    pub non_monotone_cmc: bool,
}

impl BarrierReport {
    pub fn rows(&self, side: Side) -> impl Iterator<Item = &ProbeRow> {
        self.grid.iter().filter(move |r| r.side == side)
    }
}

fn probe<T: Real>(domain: DomainRef<'_, T>, side: Side, model: Model, level: T, samples: usize, seed: u64) -> ProbeRow {
    match verify_level_bounds(domain, model, level, samples, seed) {
        Ok(rep) => ProbeRow {
            side,
            model,
            level: level.as_f64(),
            h_min: rep.h_min,
            h_max: rep.h_max,
            accepted_fraction: rep.accepted_fraction(),
            violations: rep.violations,
            generalized_failures: rep.generalized_failures,
        },
        Err(_) => ProbeRow {
            side,
            model,
            level: level.as_f64(),
            h_min: f64::NAN,
            h_max: f64::NAN,
            accepted_fraction: 0.0,
            violations: 0,
            generalized_failures: 0,
        },
    }
}

fn nonincreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] <= w[0] + BOUND_SLACK)
}

fn nondecreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] >= w[0] - BOUND_SLACK)
}

/// Aitken extrapolation of the last three terms, falling back to the last term.
fn aitken(v: &[f64]) -> f64 {
    let Some(&last) = v.last() else { return f64::NAN };
    if v.len() < 3 {
        return last;
    }
    let (x0, x1, x2) = (v[v.len() - 3], v[v.len() - 2], last);
    let den = (x2 - x1) - (x1 - x0);
    if den.abs() < 1e-14 {
        return last;
    }
    let est = x2 - (x2 - x1) * (x2 - x1) / den;
    // Only trust the extrapolation if it stays near the data.
    if est.is_finite() && (est - x2).abs() <= 10.0 * (x2 - x1).abs() + 1e-12 {
        est
    } else {
        last
    }
}

/// Scans probe levels and certifies asymptotic barrier sequences.
///
/// `a_list` holds past levels; `b_list` holds future levels (reverse times in AdS,
/// forward times in dS). Both are sorted internally toward their end. Probe `i`
/// uses seed `seed + i`.
pub fn barrier_scan<T: Real>(
    domain: DomainRef<'_, T>,
    a_list: &[T],
    b_list: &[T],
    samples: usize,
    seed: u64,
) -> BarrierReport {
    let st = domain.spacetime();
    let n = domain.n();
    let m = (n - 1) as f64;
    let (forward, future_model) = match st {
        Spacetime::AntiDeSitter => (Model::Ads, Model::AdsReverse),
        Spacetime::DeSitter => (Model::Ds, Model::Ds),
    };

    let mut a_sorted = a_list.to_vec();
    a_sorted.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
    let mut b_sorted = b_list.to_vec();
    b_sorted.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    if st == Spacetime::AntiDeSitter {
        b_sorted.reverse();
    }

    let mut grid = Vec::with_capacity(a_sorted.len() + b_sorted.len());
    let mut k = 0u64;
    for &a in &a_sorted {
        grid.push(probe(domain, Side::Past, forward, a, samples, seed.wrapping_add(k)));
        k += 1;
    }
    for &b in &b_sorted {
        grid.push(probe(domain, Side::Future, future_model, b, samples, seed.wrapping_add(k)));
        k += 1;
    }

    let past: Vec<&ProbeRow> = grid.iter().filter(|r| r.side == Side::Past).collect();
    let future: Vec<&ProbeRow> = grid.iter().filter(|r| r.side == Side::Future).collect();

    // Past end: the upper envelope must decrease and blow up like -1/((n-1) a).
    let past_found = !past.is_empty() && past.iter().all(|r| r.usable()) && {
        let upper: Vec<f64> = past.iter().map(|r| r.h_max).collect();
        let last = past[past.len() - 1];
        nonincreasing(&upper) && last.level * last.h_max <= -DIVERGENCE_FRACTION / m
    };
    let alpha = past_found.then_some(Extended::NegInf);

    let lower: Vec<f64> = future.iter().map(|r| r.h_min).collect();
    let upper: Vec<f64> = future.iter().map(|r| r.h_max).collect();
    let usable = !future.is_empty() && future.iter().all(|r| r.usable());
    let mut non_monotone = false;
    let (future_found, beta) = match st {
        Spacetime::AntiDeSitter => {
            let found = usable && {
                let last = future[future.len() - 1];
                nondecreasing(&lower) && last.level * last.h_min >= DIVERGENCE_FRACTION / m
            };
            (found, found.then_some(Extended::PosInf))
        }
        Spacetime::DeSitter => {
            if !usable {
                (false, None)
            } else {
                let beta = aitken(&lower);
                let peak = upper.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let tail = upper[upper.len() - 1];
                non_monotone = peak > -1.0 + BOUND_SLACK && peak > tail + BOUND_SLACK;
                let found = nondecreasing(&lower) && peak <= beta + BOUND_SLACK;
                (found, Some(Extended::Finite(beta)))
            }
        }
    };

    // Curvature +1 needs (α, β) disjoint from [-1, 1].
    let gap = match st {
        Spacetime::AntiDeSitter => true,
        Spacetime::DeSitter => beta.is_some_and(|b| b.value() <= -1.0 + BOUND_SLACK),
    };
    let verdict = if past_found && future_found && gap {
        CmcVerdict::Global
    } else if past_found {
        CmcVerdict::Partial
    } else {
        CmcVerdict::None
    };

    BarrierReport {
        spacetime: st,
        n,
        grid,
        past_barrier_sequence: past_found,
        future_barrier_sequence: future_found,
        alpha,
        beta,
        cmc_time_verdict: verdict,
        non_monotone_cmc: non_monotone,
    }
}
