//! Vector fields and conserved quantities of the model frames.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{energy_unreduced, Coupling, ModelParams, PhaseState};

/// Which equations of motion to use.
///
/// * `Rescaled`: rescaled `(u, U, w, W)` system at finite `ε`.
/// * `Reduced`: its `ε = 0` limit, `u'' = −ku(1−u²)`, `w'' = −½φ²u²w`.
/// * `Rotational`: `u'' = u(1−u²)`, `w'' = w(1−|w|²)` (rotationally invariant field).
/// * `Separable`: `u'' = u(1−u²)`, `wᵢ'' = wᵢ(1−wᵢ²)` (separable field).
/// * `Full`: Hamilton's equations of the unreduced scalar Hamiltonians in
///   `(a, A, b, B)`, with the angular momentum term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Frame {
    Rescaled,
    Reduced,
    Rotational,
    Separable,
    Full,
}

impl Frame {
    pub fn all() -> [Frame; 5] {
        [
            Frame::Rescaled,
            Frame::Reduced,
            Frame::Rotational,
            Frame::Separable,
            Frame::Full,
        ]
    }

    /// Whether `(t, U, W) → (−t, −U, −W)` maps solutions to solutions.
    pub fn is_reversible(self) -> bool {
        !matches!(self, Frame::Full)
    }
}

fn check_dim(p: &ModelParams, frame: Frame, n: usize) -> Result<()> {
    let expected = match frame {
        Frame::Full => 1,
        Frame::Rotational | Frame::Separable => n.max(1),
        _ => p.n(),
    };
    if n != expected {
        return Err(Error::Dimension { expected, got: n });
    }
    Ok(())
}

/// Right-hand side on the flat layout `[u, U, w.., W..]`.
///
/// Dimensions are not checked here; use [`checked_rhs`] once before handing
/// this to an integrator.
pub fn rhs(p: &ModelParams, frame: Frame, y: &[f64], dy: &mut [f64]) {
    let n = (y.len() - 2) / 2;
    let (u, pu) = (y[0], y[1]);
    let w = &y[2..2 + n];
    let pw = &y[2 + n..];
    dy[0] = pu;
    dy[2..2 + n].copy_from_slice(pw);
    match frame {
        Frame::Rescaled => {
            let k = p.k_sign();
            let eps = p.epsilon();
            let alpha = p.alpha();
            let se = eps.sqrt();
            dy[1] =
                -k * u * (1.0 - u * u) + eps * u * p.v2(w) + 0.5 * eps * se / alpha * p.v3_of(w);
            let g2 = p.grad_v2(w);
            let g3 = p.grad_v3(w);
            let g4 = p.grad_v4(w);
            let conformal = p.coupling() == Coupling::Conformal;
            for i in 0..n {
                let mut acc =
                    -0.5 * (alpha * alpha * u * u * g2[i] + alpha * se * u * g3[i] + eps * g4[i]);
                if conformal {
                    acc -= k * w[i];
                }
                dy[2 + n + i] = acc;
            }
        }
        Frame::Reduced => {
            let k = p.k_sign();
            dy[1] = -k * u * (1.0 - u * u);
            let conformal = p.coupling() == Coupling::Conformal;
            for (i, phi) in p.phi().iter().enumerate() {
                let mut acc = -0.5 * phi * phi * u * u * w[i];
                if conformal {
                    acc -= k * w[i];
                }
                dy[2 + n + i] = acc;
            }
        }
        Frame::Rotational => {
            dy[1] = u * (1.0 - u * u);
            let r2: f64 = w.iter().map(|v| v * v).sum();
            for i in 0..n {
                dy[2 + n + i] = w[i] * (1.0 - r2);
            }
        }
        Frame::Separable => {
            dy[1] = u * (1.0 - u * u);
            for i in 0..n {
                dy[2 + n + i] = w[i] * (1.0 - w[i] * w[i]);
            }
        }
        Frame::Full => full_rhs(p, y, dy),
    }
}

fn full_rhs(p: &ModelParams, y: &[f64], dy: &mut [f64]) {
    let (a, pa, b, pb) = (y[0], y[1], y[2], y[3]);
    let k = p.k_sign();
    let lam = p.lambda_cosmo();
    let om2 = p.omega() * p.omega();
    let m2 = p.m2();
    let (dh_da, dh_db, db) = match p.coupling() {
        Coupling::Minimal => {
            let a2 = a * a;
            let a3 = a2 * a;
            let spin_a = if om2 == 0.0 {
                0.0
            } else {
                2.0 * om2 / (a3 * b * b)
            };
            let spin_b = if om2 == 0.0 {
                0.0
            } else {
                2.0 * om2 / (a2 * b.powi(3))
            };
            (
                -2.0 * k * a + 4.0 * lam * a3 - pb * pb / a3 - spin_a + 4.0 * m2 * a3 * b * b,
                -spin_b + 2.0 * m2 * a2 * a2 * b,
                pb / a2,
            )
        }
        Coupling::Conformal => {
            let spin_b = if om2 == 0.0 { 0.0 } else { om2 / b.powi(3) };
            (
                -(k * a - 2.0 * lam * a.powi(3)) + m2 * a * b * b,
                k * b - spin_b + p.lambda_self() * b.powi(3) + m2 * a * a * b,
                pb,
            )
        }
    };
    dy[0] = -pa;
    dy[1] = -dh_da;
    dy[2] = db;
    dy[3] = -dh_db;
}

/// [`rhs`] with dimension checks, for single evaluations.
pub fn checked_rhs(p: &ModelParams, frame: Frame, y: &[f64]) -> Result<Vec<f64>> {
    if y.len() < 4 || !y.len().is_multiple_of(2) {
        return Err(Error::Dimension {
            expected: 2 + 2 * p.n(),
            got: y.len(),
        });
    }
    check_dim(p, frame, (y.len() - 2) / 2)?;
    let mut dy = vec![0.0; y.len()];
    rhs(p, frame, y, &mut dy);
    if dy.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain(format!(
            "vector field of {frame:?} is singular at {y:?}"
        )));
    }
    Ok(dy)
}

/// The frame's vector field at `s`, packaged as a state-shaped derivative.
pub fn vector_field(p: &ModelParams, frame: Frame, s: &PhaseState) -> Result<PhaseState> {
    PhaseState::from_slice(&checked_rhs(p, frame, &s.to_vec())?)
}

/// `E(u, U) = ½U² − ½u² + ¼u⁴`, the energy of `u'' = u(1 − u²)`.
pub fn duffing_energy(u: f64, pu: f64) -> f64 {
    0.5 * pu * pu - 0.5 * u * u + 0.25 * u.powi(4)
}

/// `H_k⁽¹⁾ = ½U² − (k/4)(1 − u²)²`, conserved by the `u`-equation of `Reduced`.
pub fn h1_k(k: f64, u: f64, pu: f64) -> f64 {
    0.5 * pu * pu - 0.25 * k * (1.0 - u * u).powi(2)
}

/// The quantity conserved by the frame's flow.
///
/// `Reduced` reports `H_k⁽¹⁾` of the `u`-subsystem (its `w`-equation is driven,
/// not autonomous). `Rescaled` reports the de-singularized Hamiltonian written
/// in the rescaled coordinates.
pub fn frame_energy(p: &ModelParams, frame: Frame, y: &[f64]) -> Result<f64> {
    let n = (y.len().max(2) - 2) / 2;
    check_dim(p, frame, n)?;
    let (u, pu) = (y[0], y[1]);
    let w = &y[2..2 + n];
    let pw = &y[2 + n..];
    let e = match frame {
        Frame::Rescaled => {
            let k = p.k_sign();
            let eps = p.epsilon();
            let alpha = p.alpha();
            let w2: f64 = w.iter().map(|v| v * v).sum();
            let pw2: f64 = pw.iter().map(|v| v * v).sum();
            let mut h = -0.5 * alpha * alpha * (pu * pu + k * u * u - 0.5 * k * u.powi(4))
                + 0.5
                    * (eps * pw2
                        + eps * eps * p.v4_of(w)
                        + alpha * eps * eps.sqrt() * u * p.v3_of(w)
                        + alpha * alpha * eps * u * u * p.v2(w));
            if p.coupling() == Coupling::Conformal {
                h += 0.5 * k * eps * w2;
            }
            h
        }
        Frame::Reduced => h1_k(p.k_sign(), u, pu),
        Frame::Rotational => {
            let r2: f64 = w.iter().map(|v| v * v).sum();
            let p2: f64 = pw.iter().map(|v| v * v).sum();
            -duffing_energy(u, pu) + 0.5 * p2 - 0.5 * r2 + 0.25 * r2 * r2
        }
        Frame::Separable => {
            -duffing_energy(u, pu)
                + w.iter()
                    .zip(pw)
                    .map(|(a, b)| duffing_energy(*a, *b))
                    .sum::<f64>()
        }
        Frame::Full => energy_unreduced(p, u, pu, w[0], pw[0])?,
    };
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::Curvature;
    use approx::assert_abs_diff_eq;

    fn params(k: Curvature, coupling: Coupling) -> ModelParams {
        ModelParams::new(k, 2.0 * k.sign(), coupling, vec![0.7, 1.3])
            .unwrap()
            .with_cubic_quartic(0.4, 0.9)
            .unwrap()
    }

    #[test]
    fn saddle_centre_is_equilibrium() {
        let p = params(Curvature::Positive, Coupling::Minimal);
        let s = PhaseState::new(1.0, 0.0, vec![0.0; 2], vec![0.0; 2]).unwrap();
        let v = vector_field(&p, Frame::Reduced, &s).unwrap();
        assert_eq!(v, PhaseState::zeros(2));
    }

    #[test]
    fn origin_is_equilibrium_of_rotational() {
        let p = params(Curvature::Negative, Coupling::Minimal);
        let v = vector_field(&p, Frame::Rotational, &PhaseState::zeros(2)).unwrap();
        assert_eq!(v, PhaseState::zeros(2));
    }

    #[test]
    fn dimension_mismatch() {
        let p = params(Curvature::Positive, Coupling::Minimal);
        assert!(matches!(
            vector_field(&p, Frame::Rescaled, &PhaseState::zeros(3)),
            Err(Error::Dimension { .. })
        ));
        assert!(vector_field(&p, Frame::Full, &PhaseState::zeros(2)).is_err());
    }

    #[test]
    fn full_minimal_is_singular_at_a_zero() {
        let p = ModelParams::unit_scalar(Curvature::Positive, Coupling::Minimal, 1.0).unwrap();
        assert!(vector_field(&p, Frame::Full, &PhaseState::scalar(0.0, 0.0, 1.0, 1.0)).is_err());
    }

    #[test]
    fn full_fields_match_energy_gradient() {
        for coupling in [Coupling::Minimal, Coupling::Conformal] {
            let p = ModelParams::unit_scalar(Curvature::Positive, coupling, 1.0)
                .unwrap()
                .with_mass_squared(0.6)
                .with_self_coupling(0.3)
                .with_omega(0.2);
            let y = [1.1, -0.3, 0.8, 0.5];
            let dy = checked_rhs(&p, Frame::Full, &y).unwrap();
            let h = 1e-5;
            let grad = |i: usize| {
                let mut yp = y;
                let mut ym = y;
                yp[i] += h;
                ym[i] -= h;
                (frame_energy(&p, Frame::Full, &yp).unwrap()
                    - frame_energy(&p, Frame::Full, &ym).unwrap())
                    / (2.0 * h)
            };
            assert_abs_diff_eq!(dy[0], grad(1), epsilon = 1e-8);
            assert_abs_diff_eq!(dy[1], -grad(0), epsilon = 1e-8);
            assert_abs_diff_eq!(dy[2], grad(3), epsilon = 1e-8);
            assert_abs_diff_eq!(dy[3], -grad(2), epsilon = 1e-8);
        }
    }
}
