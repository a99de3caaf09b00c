use crate::error::{domain, Result};
use crate::special_fn::{complete_k, jacobi, EllipticModulus};

/// Periodic solution `u = A·dn(Bt | m)` of `u'' = u(1 − u²)` inside the
/// right homoclinic loop, at energy `E = ½u'² − ½u² + ¼u⁴ = h`.
///
/// `B² = 1/(2 − m)`, `A² = 2/(2 − m)` and `h = (m − 1)/(2 − m)²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodicOrbit {
    pub energy: f64,
    pub modulus: EllipticModulus,
    pub amplitude: f64,
    pub rate: f64,
    pub period: f64,
}

/// The dn family, for `h ∈ [−¼, 0)`. At `h = −¼` the orbit is the centre `u ≡ 1`.
pub fn periodic_family(h: f64) -> Result<PeriodicOrbit> {
    if !(-0.25..0.0).contains(&h) {
        return domain(format!("energy h = {h} outside [-1/4, 0)"));
    }
    // x = 2 − m solves h·x² + x − 1 = 0.
    let x = 2.0 / (1.0 + (1.0 + 4.0 * h).max(0.0).sqrt());
    let m = (2.0 - x).clamp(0.0, 1.0 - f64::EPSILON);
    let modulus = EllipticModulus::new(m)?;
    let rate = (1.0 / x).sqrt();
    Ok(PeriodicOrbit {
        energy: h,
        modulus,
        amplitude: (2.0 / x).sqrt(),
        rate,
        period: 2.0 * complete_k(modulus) / rate,
    })
}

impl PeriodicOrbit {
    /// `(u, U)` at time `t`, with the maximum of `u` at `t = 0`.
    pub fn eval(&self, t: f64) -> (f64, f64) {
        let j = jacobi(self.rate * t, self.modulus);
        let m = self.modulus.value();
        (
            self.amplitude * j.dn,
            -self.amplitude * self.rate * m * j.sn * j.cn,
        )
    }

    /// `u''`, differentiating the Jacobi expressions directly.
    pub fn second_derivative(&self, t: f64) -> f64 {
        let j = jacobi(self.rate * t, self.modulus);
        let m = self.modulus.value();
        // d/dt(sn cn) = B dn (cn² − sn²)
        -self.amplitude * self.rate * self.rate * m * j.dn * (j.cn * j.cn - j.sn * j.sn)
    }

    pub fn max_u(&self) -> f64 {
        self.amplitude
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::fields::duffing_energy;
    use approx::assert_abs_diff_eq;

    #[test]
    fn centre_limit() {
        let o = periodic_family(-0.25).unwrap();
        for i in 0..20 {
            let (u, pu) = o.eval(0.3 * i as f64);
            assert_abs_diff_eq!(u, 1.0, epsilon = 1e-15);
            assert_abs_diff_eq!(pu, 0.0, epsilon = 1e-15);
        }
        let near = periodic_family(-0.25 + 1e-10).unwrap();
        assert_abs_diff_eq!(near.max_u(), 1.0, epsilon = 1e-4);
    }

    #[test]
    fn separatrix_limit() {
        let a = periodic_family(-1e-4).unwrap();
        let b = periodic_family(-1e-8).unwrap();
        assert!(b.period > a.period && b.period > 20.0);
        assert_abs_diff_eq!(b.max_u(), std::f64::consts::SQRT_2, epsilon = 1e-7);
    }

    #[test]
    fn energy_and_residual() {
        for &h in &[-0.2, -0.1, -0.01, -1e-6] {
            let o = periodic_family(h).unwrap();
            for i in 0..50 {
                let t = o.period * i as f64 / 37.0;
                let (u, pu) = o.eval(t);
                assert_abs_diff_eq!(duffing_energy(u, pu), h, epsilon = 1e-10);
                assert!((o.second_derivative(t) - u * (1.0 - u * u)).abs() < 1e-9);
            }
            let (u0, _) = o.eval(0.0);
            let (u1, _) = o.eval(o.period);
            assert_abs_diff_eq!(u0, u1, epsilon = 1e-9);
        }
    }

    #[test]
    fn rejects_outside_range() {
        assert!(periodic_family(0.0).is_err());
        assert!(periodic_family(-0.3).is_err());
        assert!(periodic_family(f64::NAN).is_err());
    }
}
