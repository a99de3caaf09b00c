use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{Curvature, ModelParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeparatrixKind {
    /// `u = tanh(t/√2)`, joining the saddle-centres `u = ∓1` when `k = 1`.
    HeteroclinicK1,
    /// `μ = √2 sech t`, homoclinic to the origin when `k = −1`.
    HomoclinicKneg1,
}

/// Closed-form separatrix of the `u`-equation, shifted by `t0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparatrixSolution {
    pub kind: SeparatrixKind,
    pub t0: f64,
}

pub fn separatrix(p: &ModelParams, kind: SeparatrixKind) -> Result<SeparatrixSolution> {
    let expected = match kind {
        SeparatrixKind::HeteroclinicK1 => Curvature::Positive,
        SeparatrixKind::HomoclinicKneg1 => Curvature::Negative,
    };
    if p.k() != expected {
        return Err(Error::Domain(format!(
            "{kind:?} requires k = {}",
            expected.sign()
        )));
    }
    Ok(SeparatrixSolution { kind, t0: 0.0 })
}

impl SeparatrixSolution {
    pub fn shifted(self, t0: f64) -> Self {
        Self { t0, ..self }
    }

    /// `(u, U)` at time `t`.
    pub fn eval(&self, t: f64) -> (f64, f64) {
        let s = t - self.t0;
        match self.kind {
            SeparatrixKind::HeteroclinicK1 => {
                let x = s / SQRT_2;
                let sech = 1.0 / x.cosh();
                (x.tanh(), sech * sech / SQRT_2)
            }
            SeparatrixKind::HomoclinicKneg1 => {
                let sech = 1.0 / s.cosh();
                (SQRT_2 * sech, -SQRT_2 * sech * s.tanh())
            }
        }
    }

    /// `u''` from the closed form.
    pub fn second_derivative(&self, t: f64) -> f64 {
        let s = t - self.t0;
        match self.kind {
            SeparatrixKind::HeteroclinicK1 => {
                let x = s / SQRT_2;
                let sech = 1.0 / x.cosh();
                -x.tanh() * sech * sech
            }
            SeparatrixKind::HomoclinicKneg1 => {
                let sech = 1.0 / s.cosh();
                SQRT_2 * sech * (1.0 - 2.0 * sech * sech)
            }
        }
    }

    /// `u'' − rhs(u)` for the governing equation `u'' = −ku(1 − u²)`.
    pub fn residual(&self, t: f64) -> f64 {
        let (u, _) = self.eval(t);
        let k = match self.kind {
            SeparatrixKind::HeteroclinicK1 => 1.0,
            SeparatrixKind::HomoclinicKneg1 => -1.0,
        };
        self.second_derivative(t) + k * u * (1.0 - u * u)
    }

    /// Limits of `u` as `t → −∞` and `t → +∞`.
    pub fn asymptotes(&self) -> (f64, f64) {
        match self.kind {
            SeparatrixKind::HeteroclinicK1 => (-1.0, 1.0),
            SeparatrixKind::HomoclinicKneg1 => (0.0, 0.0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::fields::h1_k;
    use crate::models::Coupling;
    use approx::assert_abs_diff_eq;

    fn p(k: Curvature) -> ModelParams {
        ModelParams::unit_scalar(k, Coupling::Minimal, 1.0).unwrap()
    }

    #[test]
    fn homoclinic_peak() {
        let s = separatrix(&p(Curvature::Negative), SeparatrixKind::HomoclinicKneg1).unwrap();
        assert_eq!(s.eval(0.0), (SQRT_2, 0.0));
    }

    #[test]
    fn kind_must_match_curvature() {
        assert!(separatrix(&p(Curvature::Positive), SeparatrixKind::HomoclinicKneg1).is_err());
        assert!(separatrix(&p(Curvature::Negative), SeparatrixKind::HeteroclinicK1).is_err());
    }

    #[test]
    fn heteroclinic_on_zero_level() {
        let s = separatrix(&p(Curvature::Positive), SeparatrixKind::HeteroclinicK1).unwrap();
        for i in -50..=50 {
            let (u, pu) = s.eval(0.37 * i as f64);
            assert_abs_diff_eq!(h1_k(1.0, u, pu), 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn residuals_and_derivatives() {
        for (k, kind) in [
            (Curvature::Positive, SeparatrixKind::HeteroclinicK1),
            (Curvature::Negative, SeparatrixKind::HomoclinicKneg1),
        ] {
            let s = separatrix(&p(k), kind).unwrap().shifted(0.4);
            for i in -40..=40 {
                let t = 0.25 * i as f64;
                assert!(s.residual(t).abs() <= 1e-12, "{kind:?} residual at {t}");
                // U must be the derivative of u.
                let h = 2e-5;
                let fd = (s.eval(t + h).0 - s.eval(t - h).0) / (2.0 * h);
                assert_abs_diff_eq!(fd, s.eval(t).1, epsilon = 1e-8);
                let fd2 = (s.eval(t + h).1 - s.eval(t - h).1) / (2.0 * h);
                assert_abs_diff_eq!(fd2, s.second_derivative(t), epsilon = 1e-8);
            }
            let (lo, hi) = s.asymptotes();
            assert_abs_diff_eq!(s.eval(-60.0).0, lo, epsilon = 1e-12);
            assert_abs_diff_eq!(s.eval(60.0).0, hi, epsilon = 1e-12);
        }
    }
}
