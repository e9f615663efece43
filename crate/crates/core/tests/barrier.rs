mod common;

use common::*;
use cosmotime::curvature::{barrier_scan, CmcVerdict, DomainRef, Extended, Side};
use cosmotime::ds::domain::DsBoundarySet;

fn two_marks(n: usize) -> DsBoundarySet<f64> {
    let mut q = vec![0.0; n];
    q[0] = 1.0;
    let mut r = vec![0.0; n];
    r[0] = -1.0;
    DsBoundarySet::new(n, vec![q, r]).unwrap()
}

const PAST: [f64; 5] = [0.8, 0.4, 0.2, 0.1, 0.05];
const DS_FUTURE: [f64; 6] = [0.5, 1.0, 2.0, 3.0, 4.0, 5.0];

#[test]
fn fuchsian_scan_is_global() {
    let dom = fuchsian_circle(8);
    let rep = barrier_scan(DomainRef::Ads(&dom), &PAST, &PAST, 32, 11);
    assert!(rep.past_barrier_sequence && rep.future_barrier_sequence);
    assert_eq!(rep.cmc_time_verdict, CmcVerdict::Global);
    assert_eq!(rep.alpha, Some(Extended::NegInf));
    assert_eq!(rep.beta, Some(Extended::PosInf));
    assert!(!rep.non_monotone_cmc);
}

#[test]
fn two_mark_three_dimensional_scan_is_global_below_minus_one() {
    let bs = two_marks(3);
    let rep = barrier_scan(DomainRef::Ds(&bs), &PAST, &DS_FUTURE, 24, 3);
    assert_eq!(rep.cmc_time_verdict, CmcVerdict::Global);
    assert_eq!(rep.alpha, Some(Extended::NegInf));
    let beta = rep.beta.unwrap().value();
    assert!((beta + 1.0).abs() < 1e-2, "{beta}");
    assert!(rep.rows(Side::Future).all(|r| r.h_max < -1.0 + 1e-4));
    assert!(!rep.non_monotone_cmc);
}

#[test]
fn two_mark_four_dimensional_scan_is_partial() {
    let bs = two_marks(4);
    let rep = barrier_scan(DomainRef::Ds(&bs), &PAST, &DS_FUTURE, 24, 3);
    assert!(rep.past_barrier_sequence);
    assert!(!rep.future_barrier_sequence);
    assert_eq!(rep.cmc_time_verdict, CmcVerdict::Partial);
    assert!(rep.non_monotone_cmc);
    assert!(rep.rows(Side::Future).any(|r| r.h_max > -1.0));
}
