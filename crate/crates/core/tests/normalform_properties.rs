use flrw_splitting::normalform::{
    birkhoff_closed_form, birkhoff_numeric, default_action_grid, elliptic_params, frequency_fit,
    kam_verdict, resultant_check, BnfOptions, KamVerdict, ResonancePolicy, ResultantCase,
};
use flrw_splitting::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const RESONANT_PHI: [f64; 5] = [2.0 / 3.0, 1.0, 2.0, 4.0, 6.0];

fn admissible_phi(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let phi = rng.gen_range(0.3..7.0);
        if RESONANT_PHI.iter().all(|r| (phi - r).abs() > 0.05) {
            return phi;
        }
    }
}

fn close(a: f64, b: f64, scale: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(scale)
}

#[test]
fn numeric_normal_form_matches_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..20 {
        let l = rng.gen_range(0.2..3.0);
        let phi = admissible_phi(&mut rng);
        let v3 = rng.gen_range(-2.0..2.0);
        let v4 = rng.gen_range(-2.0..2.0);
        let p = elliptic_params(l, phi, v3, v4).unwrap();
        let c = birkhoff_closed_form(&p, ResonancePolicy::Strict).unwrap();
        let n = birkhoff_numeric(&p, BnfOptions::default()).unwrap();
        let scale = c.a11.abs().max(c.a12.abs()).max(c.a22.abs()) * 1e-3;
        for (x, y) in [(n.a11, c.a11), (n.a12, c.a12), (n.a22, c.a22)] {
            assert!(close(x, y, scale, 1e-10), "{l} {phi} {v3} {v4}: {x} vs {y}");
        }
        assert!(close(n.a11, 0.75 * l, 0.0, 1e-10));
    }
}

fn random_rational(rng: &mut ChaCha8Rng, nonzero: bool) -> BigRational {
    loop {
        let num = rng.gen_range(-40i64..=40);
        let den = rng.gen_range(1i64..=17);
        if !nonzero || num != 0 {
            return BigRational::new(BigInt::from(num), BigInt::from(den));
        }
    }
}

#[test]
fn resultant_identity_on_random_rationals() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let zero = BigRational::from_integer(BigInt::from(0));
    for case in [
        ResultantCase::CubicPresent,
        ResultantCase::QuarticOnly,
        ResultantCase::Neither,
    ] {
        for _ in 0..5 {
            let l = random_rational(&mut rng, true).abs();
            let (v3, v4) = match case {
                ResultantCase::CubicPresent => (
                    random_rational(&mut rng, true),
                    random_rational(&mut rng, false),
                ),
                ResultantCase::QuarticOnly => (zero.clone(), random_rational(&mut rng, true)),
                ResultantCase::Neither => (zero.clone(), zero.clone()),
            };
            let r = resultant_check(&l, &v3, &v4).unwrap();
            assert_eq!(r.case, case);
            assert!(
                r.matches(),
                "L = {l}, v3 = {v3}, v4 = {v4}: {} vs {}",
                r.resultant,
                r.expected
            );
        }
    }
}

#[test]
fn verdict_never_degenerate_off_resonance() {
    let couplings = [
        (1.0, 0.0),
        (0.0, 1.0),
        (0.5, -0.7),
        (-1.3, 2.0),
        (0.01, 0.02),
    ];
    for i in 0..50 {
        let phi = 0.2 + 0.137 * i as f64;
        if RESONANT_PHI.iter().any(|r| (phi - r).abs() < 1e-6) {
            continue;
        }
        for &(v3, v4) in &couplings {
            for l in [0.5, 1.0, 2.5] {
                let p = elliptic_params(l, phi, v3, v4).unwrap();
                let b = birkhoff_closed_form(&p, ResonancePolicy::Strict).unwrap();
                assert_ne!(
                    kam_verdict(&b),
                    KamVerdict::Degenerate,
                    "{l} {phi} {v3} {v4}"
                );
            }
        }
    }
}

#[test]
fn strict_policy_fires_on_listed_resonances() {
    for phi in RESONANT_PHI {
        let p = elliptic_params(1.0, phi, 0.4, 0.4).unwrap();
        let strict = BnfOptions {
            policy: ResonancePolicy::Strict,
            ..Default::default()
        };
        assert!(matches!(
            birkhoff_numeric(&p, strict),
            Err(Error::Resonance(_))
        ));
        assert!(matches!(
            birkhoff_closed_form(&p, ResonancePolicy::Strict),
            Err(Error::Resonance(_))
        ));
    }
}

#[test]
fn frequency_map_reproduces_invariants() {
    let p = elliptic_params(1.0, 3.0, 0.2, 0.3).unwrap();
    let c = birkhoff_closed_form(&p, ResonancePolicy::Strict).unwrap();
    let f = frequency_fit(&p, &default_action_grid()).unwrap();
    assert!((f.omega0[0] - c.omega1).abs() < 1e-4, "{:?}", f.omega0);
    assert!((f.omega0[1] - c.omega2).abs() < 1e-4, "{:?}", f.omega0);
    for (x, y) in [(f.a11, c.a11), (f.a12, c.a12), (f.a22, c.a22)] {
        assert!(((x - y) / y).abs() < 0.01, "{x} vs {y}");
    }
}

#[test]
fn frequency_map_cross_term_sign_on_resonance() {
    let p = elliptic_params(1.0, 2.0, 0.0, 0.0).unwrap();
    let c = birkhoff_closed_form(&p, ResonancePolicy::Relaxed).unwrap();
    let f = frequency_fit(&p, &default_action_grid()).unwrap();
    assert_eq!(f.a12.signum(), c.a12.signum());
}

#[test]
fn frequency_fit_rejects_large_actions() {
    let p = elliptic_params(1.0, 3.0, 0.0, 0.0).unwrap();
    let grid = [[0.03, 0.03], [1e-4, 1e-4], [2e-4, 1e-4]];
    assert!(matches!(frequency_fit(&p, &grid), Err(Error::Domain(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hessian_determinant_by_construction(l in 0.1f64..4.0, phi in 1.05f64..1.9, v3 in -2.0f64..2.0, v4 in -2.0f64..2.0) {
        let p = elliptic_params(l, phi, v3, v4).unwrap();
        let b = birkhoff_numeric(&p, BnfOptions::default()).unwrap();
        let want = 4.0 * (b.a11 * b.a22 - b.a12 * b.a12);
        prop_assert!((b.hess_det - want).abs() <= 1e-14 * want.abs().max(1.0));
        prop_assert!((b.omega1 + std::f64::consts::SQRT_2).abs() < 1e-14);
        prop_assert!((b.omega2 - phi / std::f64::consts::SQRT_2).abs() < 1e-14);
    }

    #[test]
    fn invariants_are_even_in_the_cubic_coupling(l in 0.1f64..4.0, phi in 2.1f64..3.9, v3 in -2.0f64..2.0, v4 in -2.0f64..2.0) {
        let a = birkhoff_numeric(&elliptic_params(l, phi, v3, v4).unwrap(), BnfOptions::default()).unwrap();
        let b = birkhoff_numeric(&elliptic_params(l, phi, -v3, v4).unwrap(), BnfOptions::default()).unwrap();
        prop_assert!((a.a22 - b.a22).abs() <= 1e-12 * a.a22.abs().max(1.0));
        prop_assert!((a.a12 - b.a12).abs() <= 1e-12 * a.a12.abs().max(1.0));
    }
}
