use flrw_splitting::melnikov::{
    melnikov_form_real, melnikov_form_reflected, nu0_tau2_at_zero, overlap_closed_form,
    overlap_quadrature, rank_2x2, rotational_plane_hessian, separable_hessian,
    splitting_hessian_with_step, MelnikovBasis,
};
use flrw_splitting::models::{Coupling, Curvature, ModelParams, PhiMatrix};
use proptest::prelude::*;

fn params(phi: f64) -> ModelParams {
    ModelParams::unit_scalar(Curvature::Negative, Coupling::Minimal, phi).unwrap()
}

#[test]
fn overlap_limit_at_zero() {
    assert!((overlap_closed_form(0.0) - 16.0 / 3.0).abs() < 1e-15);
    assert!((overlap_quadrature(0.0).unwrap() - 16.0 / 3.0).abs() < 1e-10);
}

#[test]
fn zero_locus_is_the_axes() {
    let m = melnikov_form_real(&params(1.0), MelnikovBasis::Free).unwrap();
    for i in -5..=5 {
        for j in -5..=5 {
            let (c0, c1) = (0.3 * i as f64, 0.3 * j as f64);
            let v = m.eval(c0, c1);
            if i == 0 || j == 0 {
                assert!(v.abs() < 1e-9, "({c0}, {c1}) -> {v}");
            } else {
                assert_eq!(v.signum(), -(c0 * c1).signum(), "({c0}, {c1})");
            }
        }
    }
}

#[test]
fn curvature_scales_with_beta_and_phi() {
    for (beta, phi_sq) in [(1.0, 1.0), (0.5, 2.0), (2.0, 0.3)] {
        let v = nu0_tau2_at_zero(beta, phi_sq).unwrap();
        let want = -32.0 / 15.0 * beta * beta * phi_sq;
        assert!(
            (v - want).abs() <= 1e-6 * want.abs().max(1.0),
            "{v} vs {want}"
        );
    }
}

#[test]
fn diagonal_phi_gives_diagonal_hessian() {
    let phi = PhiMatrix::diagonal(&[1.0, 2.5, 0.7]).unwrap();
    let h = separable_hessian(&phi, 1e-3).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                assert!(h[i][j].abs() < 1e-8, "({i}, {j}) = {}", h[i][j]);
            }
        }
        assert!((h[i][i] + 32.0 / 15.0 * phi.get(i, i)).abs() < 1e-6);
    }
}

#[test]
fn rotational_rank() {
    let distinct = rotational_plane_hessian(1.0, [1.0, 2.0], 0.4).unwrap();
    assert_eq!(rank_2x2(distinct, 1e-6), 2);
    let equal = rotational_plane_hessian(1.0, [1.5, 1.5], 0.4).unwrap();
    assert_eq!(rank_2x2(equal, 1e-6), 1);
}

#[test]
fn structure_report_mentions_both_candidates() {
    let phi = PhiMatrix::new(vec![vec![2.0, 0.3], vec![0.3, 1.0]]).unwrap();
    let r = splitting_hessian_with_step(&phi, 1e-3).unwrap();
    assert!(r.derived_residual < 1e-6 * r.printed_residual.max(1.0) || r.derived_residual < 1e-6);
    assert!(r.printed_residual > 0.1);
    assert!(r.warning.is_none());
    assert_eq!(r.tau_grid.len(), r.nu0_values.len());
    let one = PhiMatrix::diagonal(&[1.3]).unwrap();
    assert!(splitting_hessian_with_step(&one, 1e-3)
        .unwrap()
        .warning
        .is_some());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn overlap_matches_closed_form(tau in 0.1f64..10.0) {
        let q = overlap_quadrature(tau).unwrap();
        prop_assert!((q - overlap_closed_form(tau)).abs() <= 1e-8);
    }

    #[test]
    fn overlap_is_even(tau in 0.0f64..10.0) {
        prop_assert_eq!(overlap_closed_form(tau), overlap_closed_form(-tau));
    }

    #[test]
    fn form_invariant_under_reflection(phi in 0.1f64..3.0) {
        let p = params(phi);
        let a = melnikov_form_real(&p, MelnikovBasis::Free).unwrap();
        let b = melnikov_form_reflected(&p).unwrap();
        prop_assert!((a.m00 - b.m00).abs() <= 1e-10);
        prop_assert!((a.m01 - b.m01).abs() <= 1e-10 * phi * phi);
        prop_assert!((a.m11 - b.m11).abs() <= 1e-10);
    }

    #[test]
    fn separable_hessian_is_symmetric(a in 0.5f64..3.0, b in 0.5f64..3.0, c in -0.4f64..0.4) {
        let phi = PhiMatrix::new(vec![vec![a, c], vec![c, b]]).unwrap();
        let h = separable_hessian(&phi, 1e-3).unwrap();
        prop_assert!((h[0][1] - h[1][0]).abs() <= 1e-8);
    }
}
