//! Second-order Birkhoff invariants about the elliptic point, the KAM
//! nondegeneracy verdict and the exact resultant identity.

mod bnf;
mod exact;
mod frequency;

use serde::{Deserialize, Serialize};

pub use bnf::{birkhoff_numeric, BnfOptions};
pub use exact::{
    closed_form_exact, parse_rational, rational_from_f64, resultant_check, sylvester_resultant,
    ExactInvariants, RationalPoly, ResultantCase, ResultantReport,
};
pub use frequency::{default_action_grid, frequency_fit, FrequencyFit, OrbitFrequencies};

use crate::error::{Error, Result};
use crate::models::{Coupling, Curvature, ModelParams};

/// `H = ω₁I₁ + ω₂I₂ + A₁₁I₁² + 2A₁₂I₁I₂ + A₂₂I₂² + O(5)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BirkhoffInvariants {
    pub omega1: f64,
    pub omega2: f64,
    pub a11: f64,
    pub a12: f64,
    pub a22: f64,
    /// `det [[2A₁₁, 2A₁₂], [2A₁₂, 2A₂₂]]`
    pub hess_det: f64,
    /// The same matrix bordered by `(ω₁, ω₂)`.
    pub bordered_det: f64,
}

impl BirkhoffInvariants {
    pub fn from_parts(omega1: f64, omega2: f64, a11: f64, a12: f64, a22: f64) -> Self {
        BirkhoffInvariants {
            omega1,
            omega2,
            a11,
            a12,
            a22,
            hess_det: hess_det(a11, a12, a22),
            bordered_det: bordered_det(a11, a12, a22, omega1, omega2),
        }
    }
}

pub(crate) fn hess_det(a11: f64, a12: f64, a22: f64) -> f64 {
    4.0 * (a11 * a22 - a12 * a12)
}

pub(crate) fn bordered_det(a11: f64, a12: f64, a22: f64, w1: f64, w2: f64) -> f64 {
    -2.0 * a11 * w2 * w2 + 4.0 * a12 * w1 * w2 - 2.0 * a22 * w1 * w1
}

/// Which resonances are refused.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ResonancePolicy {
    /// Only small divisors that the degree-4 invariants actually pass
    /// through: `φ = 1`, where `ω₁ + 2ω₂ = 0` meets the `uw²` term.
    #[default]
    Relaxed,
    /// Every vanishing divisor of the degree-3 and degree-4 homological
    /// equations: `φ ∈ {0, 2/3, 1, 2, 4, 6}`.
    Strict,
}

/// Coefficients of the field part of the polynomial Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum H2Variant {
    /// Obtained by substituting the elliptic shift into the scalar
    /// Hamiltonian; reproduces the closed-form invariants.
    #[default]
    Corrected,
    /// `φ√L uw²`, `½φL(uw)²`, `v₃w³/√(φ³L)`, `v₃uw³/√φ³`, `v₄w⁴/φ²`.
    Printed,
}

/// Scalar `k = −1` model with `L = −Λ` and the given cubic and quartic
/// couplings.
pub fn elliptic_params(l: f64, phi: f64, v3: f64, v4: f64) -> Result<ModelParams> {
    ModelParams::new(Curvature::Negative, -l, Coupling::Minimal, vec![phi])?
        .with_cubic_quartic(v3, v4)
}

pub(crate) fn check_elliptic_params(p: &ModelParams) -> Result<f64> {
    if p.k() != Curvature::Negative {
        return Err(Error::Unsupported(
            "the elliptic point exists for k = -1 only".into(),
        ));
    }
    p.scalar_phi()
}

/// `φ` values where some divisor `d₁ω₁ + d₂ω₂` with `ω = (−√2, φ/√2)`
/// vanishes, with `(d₁, d₂)` the index.
const STRICT_RESONANCES: [(f64, (i32, i32)); 5] = [
    (2.0 / 3.0, (1, 3)),
    (1.0, (1, 2)),
    (2.0, (2, 2)),
    (4.0, (2, 1)),
    (6.0, (3, 1)),
];

fn check_resonance(phi: f64, policy: ResonancePolicy) -> Result<()> {
    let near = |r: f64| (phi - r).abs() < bnf::SMALL_DIVISOR;
    for (r, (d1, d2)) in STRICT_RESONANCES {
        let applies = match policy {
            ResonancePolicy::Strict => true,
            ResonancePolicy::Relaxed => r == 1.0,
        };
        if applies && near(r) {
            return Err(Error::Resonance(format!(
                "{d1}*omega1 + {d2}*omega2 = 0 at phi = {r}"
            )));
        }
    }
    Ok(())
}

/// The closed-form second-order invariants
/// `A₁₁ = 3L/4`, `A₁₂ = −Lφ(3φ² − 2)/(8(φ² − 1))`,
/// `A₂₂ = [L²φ⁶(2φ² − 3) + 24Lφ²v₄(φ² − 1) − 60v₃²(φ² − 1)] / (16Lφ⁴(φ² − 1))`.
pub fn birkhoff_closed_form(
    p: &ModelParams,
    policy: ResonancePolicy,
) -> Result<BirkhoffInvariants> {
    let phi = check_elliptic_params(p)?;
    check_resonance(phi, policy)?;
    let l = p.big_l();
    let (v3, v4) = (p.v3(), p.v4());
    let p2 = phi * phi;
    let a11 = 0.75 * l;
    let a12 = -l * phi * (3.0 * p2 - 2.0) / (8.0 * (p2 - 1.0));
    let a22 = (l * l * phi.powi(6) * (2.0 * p2 - 3.0) + 24.0 * l * p2 * v4 * (p2 - 1.0)
        - 60.0 * v3 * v3 * (p2 - 1.0))
        / (16.0 * l * p2 * p2 * (p2 - 1.0));
    Ok(BirkhoffInvariants::from_parts(
        -std::f64::consts::SQRT_2,
        phi / std::f64::consts::SQRT_2,
        a11,
        a12,
        a22,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KamVerdict {
    NondegenerateHessian,
    NondegenerateBordered,
    Degenerate,
}

const KAM_REL_TOL: f64 = 1e-12;

/// The first of the two nondegeneracy conditions that holds, each
/// determinant compared against the sum of the magnitudes of its terms.
pub fn kam_verdict(bi: &BirkhoffInvariants) -> KamVerdict {
    let (a11, a12, a22) = (bi.a11, bi.a12, bi.a22);
    let (w1, w2) = (bi.omega1, bi.omega2);
    let hess_scale = 4.0 * ((a11 * a22).abs() + a12 * a12);
    if bi.hess_det.abs() > KAM_REL_TOL * hess_scale && hess_scale > 0.0 {
        return KamVerdict::NondegenerateHessian;
    }
    let bord_scale =
        2.0 * (a11 * w2 * w2).abs() + 4.0 * (a12 * w1 * w2).abs() + 2.0 * (a22 * w1 * w1).abs();
    if bi.bordered_det.abs() > KAM_REL_TOL * bord_scale && bord_scale > 0.0 {
        return KamVerdict::NondegenerateBordered;
    }
    KamVerdict::Degenerate
}
