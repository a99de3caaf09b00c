use serde::{Deserialize, Serialize};

use super::splitting::{mu, tight_spec};
use crate::dynamics::solve;
use crate::dynamics::OdeOptions;
use crate::error::{Error, Result};
use crate::models::{Coupling, Curvature, ModelParams};
use crate::special_fn::integrate_decaying;

/// Which pair of solutions of `w'' + [β² − q(t)]w = 0` enters the form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MelnikovBasis {
    /// Solutions of the unperturbed equation `w'' = 0`: `w₀ = 1`, `w₁ = t`.
    /// This is the first-order form; integration by parts gives `m₀₁ = −2φ²`.
    Free,
    /// Normalized fundamental solutions of the full variational equation,
    /// `w₀(0) = 1, w₀'(0) = 0` and `w₁(0) = 0, w₁'(0) = 1`.
    Variational,
}

/// `m_ij = ∫ Q'(t) wᵢ(t) wⱼ(t) dt` with `Q = −q = ½φ²u²` along `u = √2 sech t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RealMelnikovForm {
    pub m00: f64,
    pub m01: f64,
    pub m11: f64,
}

impl RealMelnikovForm {
    /// `M(c₀, c₁) = m₀₀c₀² + 2m₀₁c₀c₁ + m₁₁c₁²`.
    pub fn eval(&self, c0: f64, c1: f64) -> f64 {
        self.m00 * c0 * c0 + 2.0 * self.m01 * c0 * c1 + self.m11 * c1 * c1
    }

    pub fn det(&self) -> f64 {
        self.m00 * self.m11 - self.m01 * self.m01
    }
}

/// `Q'(t)` for `Q = ½φ²μ² = φ² sech² t`.
fn q_prime(phi2: f64, t: f64) -> f64 {
    let s = 1.0 / t.cosh();
    -2.0 * phi2 * s * s * t.tanh()
}

const HALF_LINE: f64 = 30.0;

/// The real Melnikov form along the `k = −1` homoclinic with minimal
/// coupling, where `β = 0`. The `k = 1` problem is a scattering problem and
/// lives in the scattering module.
pub fn melnikov_form_real(p: &ModelParams, basis: MelnikovBasis) -> Result<RealMelnikovForm> {
    if p.k() != Curvature::Negative || p.coupling() != Coupling::Minimal {
        return Err(Error::Unsupported(
            "the real Melnikov form is defined for k = -1 with minimal coupling".into(),
        ));
    }
    let phi = p.scalar_phi()?;
    let phi2 = phi * phi;
    match basis {
        MelnikovBasis::Free => {
            let spec = tight_spec();
            let moment = |k: i32| integrate_decaying(|t| q_prime(phi2, t) * t.powi(k), &spec);
            Ok(RealMelnikovForm {
                m00: moment(0)?,
                m01: moment(1)?,
                m11: moment(2)?,
            })
        }
        MelnikovBasis::Variational => {
            let fwd = variational_half(phi2, HALF_LINE)?;
            let bwd = variational_half(phi2, -HALF_LINE)?;
            // The backward run accumulates ∫₀^{−T}, so it enters with a minus sign.
            Ok(RealMelnikovForm {
                m00: fwd[0] - bwd[0],
                m01: fwd[1] - bwd[1],
                m11: fwd[2] - bwd[2],
            })
        }
    }
}

/// Integrate `w'' = −Q w` for both normalized solutions from `0` to `t_end`
/// together with the three moments `∫ Q' wᵢ wⱼ`.
fn variational_half(phi2: f64, t_end: f64) -> Result<[f64; 3]> {
    let field = |t: f64, y: &[f64], dy: &mut [f64]| {
        let s = 1.0 / t.cosh();
        let q = phi2 * s * s;
        let qp = q_prime(phi2, t);
        dy[0] = y[1];
        dy[1] = -q * y[0];
        dy[2] = y[3];
        dy[3] = -q * y[2];
        dy[4] = qp * y[0] * y[0];
        dy[5] = qp * y[0] * y[2];
        dy[6] = qp * y[2] * y[2];
    };
    let y0 = [1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0];
    let out = solve(field, &y0, &[0.0, t_end], OdeOptions::with_tol(1e-13))?;
    let end = &out[1];
    Ok([end[4], end[5], end[6]])
}

/// `Q = ½φ²u²` is even in `u`, so the form is unchanged by `u → −u`; this
/// evaluates it along `−μ` to make that checkable.
pub fn melnikov_form_reflected(p: &ModelParams) -> Result<RealMelnikovForm> {
    let phi = p.scalar_phi()?;
    let phi2 = phi * phi;
    let qp = |t: f64| {
        // d/dt ½φ²(−μ)² by the chain rule on u = −μ.
        let u = -mu(t);
        let du = std::f64::consts::SQRT_2 * t.tanh() / t.cosh();
        phi2 * u * du
    };
    let spec = tight_spec();
    let moment = |k: i32| integrate_decaying(|t| qp(t) * t.powi(k), &spec);
    Ok(RealMelnikovForm {
        m00: moment(0)?,
        m01: moment(1)?,
        m11: moment(2)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn params(phi: f64) -> ModelParams {
        ModelParams::unit_scalar(Curvature::Negative, Coupling::Minimal, phi).unwrap()
    }

    #[test]
    fn free_basis_coefficient() {
        for phi in [0.5, 1.0, 2.0] {
            let m = melnikov_form_real(&params(phi), MelnikovBasis::Free).unwrap();
            assert_abs_diff_eq!(m.m01, -2.0 * phi * phi, epsilon = 1e-9);
            assert_abs_diff_eq!(m.m00, 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(m.m11, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn variational_basis_values() {
        // Reference values from an independent adaptive integration.
        for (phi, want) in [(0.5, -0.38560), (1.0, -0.59335), (2.0, 0.62475)] {
            let m = melnikov_form_real(&params(phi), MelnikovBasis::Variational).unwrap();
            assert_abs_diff_eq!(m.m01, want, epsilon = 1e-5);
            assert_abs_diff_eq!(m.m00, 0.0, epsilon = 1e-9);
            assert_abs_diff_eq!(m.m11, 0.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn zero_locus_is_the_axes() {
        let m = melnikov_form_real(&params(1.0), MelnikovBasis::Free).unwrap();
        for i in -10..=10 {
            for j in -10..=10 {
                let (c0, c1) = (0.1 * i as f64, 0.1 * j as f64);
                let v = m.eval(c0, c1);
                if i == 0 || j == 0 {
                    assert!(v.abs() < 1e-10);
                } else {
                    assert_eq!(v < 0.0, c0 * c1 > 0.0);
                }
            }
        }
    }

    #[test]
    fn reflection_invariance() {
        let p = params(1.3);
        let a = melnikov_form_real(&p, MelnikovBasis::Free).unwrap();
        let b = melnikov_form_reflected(&p).unwrap();
        assert_abs_diff_eq!(a.m01, b.m01, epsilon = 1e-12);
    }

    #[test]
    fn other_models_unsupported() {
        let p = ModelParams::unit_scalar(Curvature::Positive, Coupling::Minimal, 1.0).unwrap();
        assert!(matches!(
            melnikov_form_real(&p, MelnikovBasis::Free),
            Err(Error::Unsupported(_))
        ));
    }
}
