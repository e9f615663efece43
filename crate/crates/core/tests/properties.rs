use std::f64::consts::PI;

use cosmotime::ads::model::{conformal_to_linear, linear_to_conformal, AdsConformalPoint};
use cosmotime::curvature::{level_bounds, smooth_piece_curvature, Model};
use cosmotime::ds::domain::{lorentz_distance_ds, DsPoint};
use cosmotime::foliation::counterexample_curvature;
use cosmotime::gauss_flow::evolve_principal;
use cosmotime::{AmbientVector, Signature, Spacetime};
use proptest::prelude::*;

fn coords(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-3.0..3.0f64, len)
}

fn sphere_point(len: usize) -> impl Strategy<Value = Vec<f64>> {
    coords(len).prop_filter_map("too close to 0", |v| {
        let r = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        (r > 0.1).then(|| v.iter().map(|c| c / r).collect())
    })
}

fn spacetime() -> impl Strategy<Value = (Spacetime, usize)> {
    (prop_oneof![Just(Spacetime::AntiDeSitter), Just(Spacetime::DeSitter)], 2usize..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn inner_product_is_symmetric_and_bilinear(
        (st, n) in spacetime(),
        a in coords(7), b in coords(7), c in coords(7), s in -2.0..2.0f64,
    ) {
        let sig = st.signature(n).unwrap();
        let m = sig.dimension();
        let v = |w: &[f64]| AmbientVector::new(sig, w[..m].to_vec()).unwrap();
        let (x, y, z) = (v(&a), v(&b), v(&c));
        prop_assert_eq!(x.ip(&y), y.ip(&x));
        let lhs = x.axpy(s, &y).ip(&z);
        let rhs = x.ip(&z) + s * y.ip(&z);
        prop_assert!((lhs - rhs).abs() < 1e-12 * (1.0 + lhs.abs()));
    }

    #[test]
    fn reflection_is_an_involutive_isometry((st, n) in spacetime(), a in coords(7), b in coords(7)) {
        let sig = st.signature(n).unwrap();
        let m = sig.dimension();
        let x = AmbientVector::new(sig, a[..m].to_vec()).unwrap();
        let y = AmbientVector::new(sig, b[..m].to_vec()).unwrap();
        prop_assert_eq!(st.reflect(&x).ip(&st.reflect(&y)), x.ip(&y));
        prop_assert_eq!(st.reflect(&st.reflect(&x)), x);
    }

    #[test]
    fn ads_conformal_round_trip(n in 3usize..6, t in -3.0..3.0f64, p in sphere_point(5)) {
        let mut p = p[..n].to_vec();
        p[n - 1] = p[n - 1].abs() + 1e-3;
        let r = p.iter().map(|c| c * c).sum::<f64>().sqrt();
        p.iter_mut().for_each(|c| *c /= r);
        let c = AdsConformalPoint::new(t, p.clone()).unwrap();
        let x = conformal_to_linear(&c).unwrap();
        prop_assert!((x.vector().q() + 1.0).abs() < 1e-10);
        let back = linear_to_conformal(&x);
        let dt = (back.t() - t).rem_euclid(2.0 * PI);
        prop_assert!(dt.min(2.0 * PI - dt) < 1e-10);
        for (a, b) in back.p().iter().zip(&p) {
            prop_assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn ds_conformal_round_trip(n in 2usize..6, t in -1.5..1.5f64, w in sphere_point(5)) {
        let w: Vec<f64> = {
            let v = &w[..n];
            let r = v.iter().map(|c| c * c).sum::<f64>().sqrt();
            if r < 0.1 { return Ok(()); }
            v.iter().map(|c| c / r).collect()
        };
        let x = DsPoint::from_conformal(t, &w).unwrap();
        prop_assert!((x.vector().q() - 1.0).abs() < 1e-9 * (1.0 + x.vector().euclid_dot(x.vector())));
        let (t2, w2) = x.conformal();
        prop_assert!((t2 - t).abs() < 1e-10);
        for (a, b) in w2.iter().zip(&w) {
            prop_assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn ds_geodesics_have_arc_length_distance(n in 2usize..5, s in 0.01..4.0f64, w in sphere_point(5)) {
        let sig = Signature::ds(n).unwrap();
        let mut p = vec![0.0; n + 1];
        p[n] = 1.0;
        let p = AmbientVector::new(sig, p).unwrap();
        // Future unit timelike velocity orthogonal to p.
        let mut v = vec![1.0];
        v.extend(w[..n - 1].iter().map(|c| 0.5 * c));
        v.push(0.0);
        let v = AmbientVector::new(sig, v).unwrap();
        let v = v.scale((-v.q()).sqrt().recip());
        let y = Spacetime::DeSitter.geodesic(&p, &v, s);
        let d = lorentz_distance_ds(&DsPoint::new(p).unwrap(), &DsPoint::new(y).unwrap());
        prop_assert!((d - s).abs() < 1e-8 * (1.0 + s));
    }

    #[test]
    fn principal_curvature_flow_is_a_semigroup(l in -20.0..-1.0001f64, s in 0.0..5.0f64, t in 0.0..5.0f64) {
        let two = evolve_principal(evolve_principal(l, s), t);
        let one = evolve_principal(l, s + t);
        prop_assert!((two - one).abs() < 1e-10);
        prop_assert!(one < -1.0 && one >= l);
        prop_assert!((evolve_principal(-1.0, t) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn smooth_pieces_lie_between_the_bounds(n in 3usize..8, a in 0.01..1.56f64, b in 0.01..10.0f64) {
        for (st, model, level) in [(Spacetime::AntiDeSitter, Model::Ads, a), (Spacetime::DeSitter, Model::Ds, b)] {
            let (lo, hi) = level_bounds(model, n, level);
            prop_assert!(lo <= hi);
            for d in 1..n {
                let h = smooth_piece_curvature(st, n, d, level);
                prop_assert!(h >= lo - 1e-12 && h <= hi + 1e-12);
            }
            prop_assert!((smooth_piece_curvature(st, n, n - 1, level) - lo).abs() < 1e-12);
        }
        let (rlo, rhi) = level_bounds(Model::AdsReverse, n, a);
        let (lo, hi) = level_bounds(Model::Ads, n, a);
        prop_assert_eq!((rlo, rhi), (-hi, -lo));
        prop_assert_eq!(counterexample_curvature(n, b), smooth_piece_curvature(Spacetime::DeSitter, n, 1, b));
    }
}
