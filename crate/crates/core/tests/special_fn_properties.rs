use std::f64::consts::PI;

use flrw_splitting::special_fn::{
    complete_k, gamma_complex, integrate_decaying, integrate_interval, jacobi, ln_gamma_complex,
    EllipticModulus, QuadratureSpec,
};
use num_complex::Complex64;
use proptest::prelude::*;

#[test]
fn gamma_at_integers_and_half() {
    let mut fact = 1.0;
    for n in 1..=20 {
        let g = gamma_complex(Complex64::new(n as f64, 0.0)).unwrap();
        assert!((g.re - fact).abs() <= 1e-13 * fact, "Gamma({n})");
        fact *= n as f64;
    }
    let half = gamma_complex(Complex64::new(0.5, 0.0)).unwrap();
    assert!((half.re - PI.sqrt()).abs() < 1e-14);
}

#[test]
fn gamma_poles_are_reported() {
    for n in 0..5 {
        assert!(ln_gamma_complex(Complex64::new(-(n as f64), 0.0)).is_err());
    }
}

#[test]
fn complete_integral_values() {
    // K(0) = π/2 and K(1/2) = Γ(1/4)²/(4√π).
    assert!((complete_k(EllipticModulus::new(0.0).unwrap()) - PI / 2.0).abs() < 1e-15);
    let g = gamma_complex(Complex64::new(0.25, 0.0)).unwrap().re;
    let want = g * g / (4.0 * PI.sqrt());
    assert!((complete_k(EllipticModulus::new(0.5).unwrap()) - want).abs() < 1e-13);
}

#[test]
fn quadrature_of_known_integrals() {
    let spec = QuadratureSpec::default().with_abs_tol(1e-12);
    let gauss = integrate_decaying(|x| (-x * x).exp(), &spec).unwrap();
    assert!((gauss - PI.sqrt()).abs() < 1e-12);
    let sech2 = integrate_decaying(|x| 1.0 / x.cosh().powi(2), &spec).unwrap();
    assert!((sech2 - 2.0).abs() < 1e-12);
    let sin = integrate_interval(f64::sin, 0.0, PI, &spec).unwrap();
    assert!((sin - 2.0).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn jacobi_identities(u in -50.0f64..50.0, m in 0.0f64..0.9999) {
        let v = jacobi(u, EllipticModulus::new(m).unwrap());
        prop_assert!((v.sn * v.sn + v.cn * v.cn - 1.0).abs() <= 1e-12);
        prop_assert!((v.dn * v.dn + m * v.sn * v.sn - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn jacobi_quarter_period(m in 0.01f64..0.99) {
        let modulus = EllipticModulus::new(m).unwrap();
        let v = jacobi(complete_k(modulus), modulus);
        prop_assert!((v.sn - 1.0).abs() <= 1e-12);
        prop_assert!(v.cn.abs() <= 1e-7);
        prop_assert!((v.dn - (1.0 - m).sqrt()).abs() <= 1e-12);
    }

    #[test]
    fn jacobi_is_odd_even(u in -10.0f64..10.0, m in 0.0f64..0.99) {
        let modulus = EllipticModulus::new(m).unwrap();
        let a = jacobi(u, modulus);
        let b = jacobi(-u, modulus);
        prop_assert!((a.sn + b.sn).abs() <= 1e-14);
        prop_assert!((a.cn - b.cn).abs() <= 1e-14);
        prop_assert!((a.dn - b.dn).abs() <= 1e-14);
    }

    #[test]
    fn gamma_recurrence(re in -8.0f64..8.0, im in 0.05f64..8.0) {
        let z = Complex64::new(re, im);
        let lhs = ln_gamma_complex(z + 1.0).unwrap().exp();
        let rhs = z * ln_gamma_complex(z).unwrap().exp();
        prop_assert!((lhs - rhs).norm() <= 1e-11 * rhs.norm().max(1e-300));
    }

    #[test]
    fn gamma_reflection(re in -4.0f64..4.0, im in 0.05f64..3.0) {
        let z = Complex64::new(re, im);
        let prod = gamma_complex(z).unwrap() * gamma_complex(1.0 - z).unwrap();
        let want = PI / (PI * z).sin();
        prop_assert!((prod - want).norm() <= 1e-11 * want.norm());
    }

    #[test]
    fn gamma_conjugate_symmetry(re in -6.0f64..6.0, im in 0.01f64..6.0) {
        let z = Complex64::new(re, im);
        let a = ln_gamma_complex(z).unwrap();
        let b = ln_gamma_complex(z.conj()).unwrap();
        prop_assert!((a - b.conj()).norm() <= 1e-13 * a.norm().max(1.0));
    }
}
