mod common;

use common::*;
use cosmotime::dense::Matrix;
use cosmotime::ds::domain::{lorentz_distance_ds, DsPoint};
use cosmotime::gauss_flow::{
    almost_fuchsian_check, evolve_principal, flow_normal, flow_point, shape_operator_fd, umbilical_patch,
    weingarten_evolution, AlmostFuchsian, ImmersedPatch, PatchSample,
};
use cosmotime::{AmbientVector, GeometryError, Signature};
use rand::Rng;

/// Random symmetric matrix with spectrum below `-1`.
fn almost_fuchsian_matrix<R: Rng>(rng: &mut R, m: usize) -> Matrix<f64> {
    let rows: Vec<Vec<f64>> = (0..m).map(|_| (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
    let a = Matrix::from_rows(&rows).unwrap();
    let aat = &a * &a.transpose();
    let shift = Matrix::identity(m).scale(1.0 + rng.gen_range(0.01..1.0));
    (&aat + &shift).scale(-1.0)
}

#[test]
fn semigroup_on_random_almost_fuchsian_data() {
    let mut rng = rng(41);
    for _ in 0..50 {
        let m = rng.gen_range(2..5);
        let b = almost_fuchsian_matrix(&mut rng, m);
        let (s, t) = (rng.gen_range(0.0..3.0), rng.gen_range(0.0..3.0));
        let two_steps = weingarten_evolution(&weingarten_evolution(&b, s).unwrap(), t).unwrap();
        let one_step = weingarten_evolution(&b, s + t).unwrap();
        assert!((&two_steps - &one_step).max_abs() < 1e-8);
        let ev = one_step.symmetric_eigenvalues();
        assert!(ev.iter().all(|&l| l < -1.0));
    }
}

#[test]
fn eigenvalues_follow_the_scalar_map() {
    let mut rng = rng(42);
    let b = almost_fuchsian_matrix(&mut rng, 3);
    let before = b.symmetric_eigenvalues();
    let after = weingarten_evolution(&b, 0.7).unwrap().symmetric_eigenvalues();
    for (l, m) in before.iter().zip(&after) {
        assert!((evolve_principal(*l, 0.7) - m).abs() < 1e-10);
    }
}

#[test]
fn breakdown_outside_the_almost_fuchsian_range() {
    // 1 - tanh(t) λ vanishes for λ = 2 at tanh t = 1/2.
    let b = Matrix::identity(2).scale(2.0);
    let t = 0.5f64.atanh();
    assert!(matches!(weingarten_evolution(&b, t), Err(GeometryError::FlowBreakdown)));
    assert!(weingarten_evolution(&b, 0.1).is_ok());
}

#[test]
fn flowed_points_stay_on_the_quadric_at_distance_t() {
    let mut rng = rng(43);
    let patch = umbilical_patch::<f64, _>(4, -1.7, 10, &mut rng).unwrap();
    for s in patch.samples() {
        for _ in 0..5 {
            let t = rng.gen_range(0.01..5.0);
            let ut = flow_point(&s.u, &s.ustar, t).unwrap();
            assert!((ut.vector().q() - 1.0).abs() < 1e-9);
            assert!((lorentz_distance_ds(&s.u, &ut) - t).abs() < 1e-8);
            let nt = flow_normal(&s.u, &s.ustar, t);
            assert!((nt.q() + 1.0).abs() < 1e-9);
            assert!(nt.ip(ut.vector()).abs() < 1e-9);
        }
        assert_eq!(flow_point(&s.u, &s.ustar, 0.0).unwrap(), s.u);
    }
}

#[test]
fn fuchsian_patch_tends_to_minus_one() {
    let mut rng = rng(44);
    let patch = umbilical_patch::<f64, _>(3, -2.0, 8, &mut rng).unwrap();
    assert_eq!(almost_fuchsian_check(&patch), AlmostFuchsian::Yes);
    let mut prev = -2.0;
    for t in [0.25, 0.5, 1.0, 2.0, 4.0, 8.0] {
        let flowed = patch.flowed(t).unwrap();
        for h in flowed.mean_curvatures() {
            assert!(h < -1.0);
            assert!(h > prev);
            assert!((h - evolve_principal(-2.0, t)).abs() < 1e-12);
        }
        prev = flowed.mean_curvatures()[0];
    }
    let h8 = patch.flowed(8.0).unwrap().mean_curvatures()[0];
    assert!((h8 + 1.0).abs() <= 1e-3);
    assert!((evolve_principal(-2.0f64, 1.0) + 1.0944859).abs() < 1e-7);
}

#[test]
fn almost_fuchsian_examples() {
    let mut rng = rng(45);
    let patch = umbilical_patch::<f64, _>(3, -2.0, 4, &mut rng).unwrap();
    let mut samples: Vec<PatchSample<f64>> = patch.samples().to_vec();
    samples[2].shape = Matrix::diagonal(&[-2.0, -0.9]);
    let mixed = ImmersedPatch::new(samples).unwrap();
    match almost_fuchsian_check(&mixed) {
        AlmostFuchsian::No { index, eigenvalue } => {
            assert_eq!(index, 2);
            assert!((eigenvalue + 0.9).abs() < 1e-12);
        }
        AlmostFuchsian::Yes => panic!("eigenvalue -0.9 accepted"),
    }
}

/// Level `a` of the two-mark domain of `dS_4` with marks `±e1`, in coordinates
/// scaled to be orthonormal at the base point, with its future normal.
fn two_mark_level(a: f64, s: &[f64]) -> (AmbientVector<f64>, AmbientVector<f64>) {
    let sig = Signature::ds(4).unwrap();
    let sigma = s[0] / a.sinh();
    let (th, ph) = (std::f64::consts::FRAC_PI_2 + s[1] / a.cosh(), s[2] / a.cosh());
    let omega = [th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()];
    let x = vec![
        a.sinh() * sigma.cosh(),
        a.sinh() * sigma.sinh(),
        a.cosh() * omega[0],
        a.cosh() * omega[1],
        a.cosh() * omega[2],
    ];
    let nu = vec![
        a.cosh() * sigma.cosh(),
        a.cosh() * sigma.sinh(),
        a.sinh() * omega[0],
        a.sinh() * omega[1],
        a.sinh() * omega[2],
    ];
    (AmbientVector::new(sig, x).unwrap(), AmbientVector::new(sig, nu).unwrap())
}

#[test]
fn finite_difference_shape_matches_weingarten_evolution() {
    let a = 0.8f64;
    let base = Matrix::diagonal(&[-1.0 / a.tanh(), -a.tanh(), -a.tanh()]);
    let at0 = shape_operator_fd(|s: &[f64]| two_mark_level(a, s), &[0.0; 3], 1e-4).unwrap();
    assert!((&at0 - &base).max_abs() < 1e-6);
    for t in [0.5, 1.0] {
        let flowed = |s: &[f64]| {
            let (x, nu) = two_mark_level(a, s);
            let u = DsPoint::new(x).unwrap();
            (flow_point(&u, &nu, t).unwrap().into_vector(), flow_normal(&u, &nu, t))
        };
        let numeric = shape_operator_fd(flowed, &[0.0; 3], 1e-4).unwrap();
        let predicted = weingarten_evolution(&base, t).unwrap();
        let (ln, lp) = (numeric.symmetric_eigenvalues(), predicted.symmetric_eigenvalues());
        for (p, q) in ln.iter().zip(&lp) {
            assert!((p - q).abs() < 1e-4, "t = {t}: {ln:?} vs {lp:?}");
        }
        // The flow maps the level a onto the level a + t.
        assert!((lp[0] + 1.0 / (a + t).tanh()).abs() < 1e-12);
    }
}
