//! Scattering of the variational equation `w'' + [β² − φ² sech² s]w = 0`
//! along the `k = 1` heteroclinic, written in `s = t/√2` so that
//! `u = tanh s` and the asymptotic frequency is exactly `β`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::dynamics::{OdeOptions, Stepper};
use crate::error::{domain, Error, Result};
use crate::models::{Coupling, Curvature, ModelParams};
use crate::special_fn::ln_gamma_complex;

type C = Complex64;
type Mat2 = [[C; 2]; 2];

/// Parameters of the associated Legendre equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LegendreParams {
    /// Strength `φ²` of the `sech²` well; negative on the analytic extension.
    pub phi2: f64,
    pub beta: f64,
    pub nu: C,
    pub mu: C,
    pub a: C,
    pub b: C,
    pub c: C,
    /// `√|φ² − ¼|`.
    pub s: f64,
}

impl LegendreParams {
    /// `φ² > ¼`, where `ν = −½ + is` and `|A|` grows like `cosh πs`.
    pub fn is_oscillatory(&self) -> bool {
        self.phi2 > 0.25
    }
}

/// `ν = (−1 + √(1 − 4φ²))/2`, `μ = iβ`, `a = −ν`, `b = 1 + ν`, `c = 1 − μ`.
/// The other root of `ν(ν + 1) = −φ²` swaps `a` and `b`, which leaves
/// `A` and `B` unchanged.
pub fn legendre_from(phi2: f64, beta: f64) -> Result<LegendreParams> {
    if !(phi2.is_finite() && beta.is_finite() && beta >= 0.0) {
        return domain(format!(
            "invalid scattering parameters phi^2 = {phi2}, beta = {beta}"
        ));
    }
    let disc = C::new(1.0 - 4.0 * phi2, 0.0).sqrt();
    let nu = 0.5 * (disc - 1.0);
    let mu = C::new(0.0, beta);
    Ok(LegendreParams {
        phi2,
        beta,
        nu,
        mu,
        a: -nu,
        b: 1.0 + nu,
        c: 1.0 - mu,
        s: (phi2 - 0.25).abs().sqrt(),
    })
}

/// Minimal coupling has `β = φ`; conformal coupling has `β² = 2 + φ²`.
pub fn legendre_params(p: &ModelParams) -> Result<LegendreParams> {
    if p.k() != Curvature::Positive {
        return Err(Error::Unsupported(
            "the scattering problem needs k = 1".into(),
        ));
    }
    let phi = p.scalar_phi()?;
    let phi2 = phi * phi;
    let beta = match p.coupling() {
        Coupling::Minimal => phi,
        Coupling::Conformal => (2.0 + phi2).sqrt(),
    };
    legendre_from(phi2, beta)
}

/// Conformal parameters at a given `β`, continued to `β < √2` through `φ² = β² − 2 < 0`.
pub fn conformal_from_beta(beta: f64) -> Result<LegendreParams> {
    legendre_from(beta * beta - 2.0, beta)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConnectionMatrix {
    /// Row `i` expresses the `+∞` solution `~ e^{(−1)^i iβs}` in the `−∞` basis.
    pub a: Mat2,
    pub big_a: C,
    pub big_b: C,
}

impl ConnectionMatrix {
    pub fn det(&self) -> C {
        self.a[0][0] * self.a[1][1] - self.a[0][1] * self.a[1][0]
    }

    /// `|A|²`.
    pub fn a2(&self) -> f64 {
        self.big_a.norm_sqr()
    }
}

fn inv_gamma_ln(z: C) -> Result<Option<C>> {
    match ln_gamma_complex(z) {
        Ok(v) => Ok(Some(v)),
        Err(Error::Pole { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// `A = Γ(c)Γ(1−c)/(Γ(a)Γ(b))`, `B = Γ(c)Γ(c−1)/(Γ(c−a)Γ(c−b))`, assembled as
/// `[[B̄, 2^{iβ}Ā], [2^{−iβ}A, B]]`.
///
/// Poles in the denominators make the corresponding entry vanish; poles in
/// the numerators (`β = 0`) are reported.
pub fn connection_gamma(lp: &LegendreParams) -> Result<ConnectionMatrix> {
    let (a, b, c) = (lp.a, lp.b, lp.c);
    let ratio = |num: [C; 2], den: [C; 2]| -> Result<C> {
        let n0 = ln_gamma_complex(num[0])?;
        let n1 = ln_gamma_complex(num[1])?;
        let mut acc = n0 + n1;
        for d in den {
            match inv_gamma_ln(d)? {
                Some(v) => acc -= v,
                None => return Ok(C::new(0.0, 0.0)),
            }
        }
        Ok(acc.exp())
    };
    let big_a = ratio([c, 1.0 - c], [a, b])?;
    let big_b = ratio([c, c - 1.0], [c - a, c - b])?;
    let p = C::new(0.0, lp.beta * std::f64::consts::LN_2).exp();
    Ok(ConnectionMatrix {
        a: [[big_b.conj(), p * big_a.conj()], [big_a / p, big_b]],
        big_a,
        big_b,
    })
}

/// `|A|²` from the closed forms: `(cosh πs / sinh πβ)²` for `φ² > ¼` and
/// `(cos πs / sinh πβ)²` otherwise.
pub fn a2_closed_form(lp: &LegendreParams) -> f64 {
    numerator_closed_form(lp).powi(2) / (PI * lp.beta).sinh().powi(2)
}

/// `cosh πs` or `cos πs`, the numerator of `|A|`.
pub fn numerator_closed_form(lp: &LegendreParams) -> f64 {
    if lp.is_oscillatory() {
        (PI * lp.s).cosh()
    } else {
        (PI * lp.s).cos()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScatterResult {
    pub matrix: ConnectionMatrix,
    /// `max |W(s)/W(−T) − 1|` for the Wronskian of the two Jost solutions.
    pub wronskian_drift: f64,
    pub half_width: f64,
    /// The direct-quadrature form `∫ q' wᵢ wⱼ ds` in the `−∞` basis.
    pub direct_form: MelnikovForm,
    pub warning: Option<String>,
}

fn half_width(phi2: f64) -> f64 {
    // φ² sech² T ≤ 4φ² e^{−2T} < 10⁻¹⁴.
    let t = 0.5 * (4.0 * phi2.abs() * 1e14).max(1.0).ln();
    t.max(10.0) + 1.0
}

/// Integrate the Jost solutions `w ~ e^{±iβs}` from `s = −T` to `+T` and read
/// off the connection matrix in the pure exponential basis. The phases differ
/// from [`connection_gamma`]; moduli agree entrywise.
pub fn scatter_numeric(lp: &LegendreParams) -> Result<ScatterResult> {
    let beta = lp.beta;
    if !(beta > 0.0) {
        return domain("numeric scattering needs beta > 0");
    }
    let phi2 = lp.phi2;
    let t = half_width(phi2);
    let warning =
        (beta < 1e-3).then(|| format!("beta = {beta:e} < 1e-3: matching is ill-conditioned"));
    let q = |s: f64| phi2 / (s.cosh() * s.cosh());
    let dq = |s: f64| -2.0 * phi2 * s.tanh() / (s.cosh() * s.cosh());

    // Layout: [w0, w0', w1, w1'] as (re, im) pairs, then m00, m01, m11 as pairs.
    let field = |s: f64, y: &[f64], dy: &mut [f64]| {
        let k = beta * beta - q(s);
        for j in 0..2 {
            let o = 4 * j;
            dy[o] = y[o + 2];
            dy[o + 1] = y[o + 3];
            dy[o + 2] = -k * y[o];
            dy[o + 3] = -k * y[o + 1];
        }
        let w0 = C::new(y[0], y[1]);
        let w1 = C::new(y[4], y[5]);
        let g = dq(s);
        for (slot, v) in [(8, w0 * w0), (10, w0 * w1), (12, w1 * w1)] {
            dy[slot] = g * v.re;
            dy[slot + 1] = g * v.im;
        }
    };
    let i = C::i();
    let mut y0 = vec![0.0; 14];
    for (j, sign) in [(0usize, 1.0), (1usize, -1.0)] {
        let e = (sign * i * beta * -t).exp();
        let de = sign * i * beta * e;
        let o = 4 * j;
        y0[o] = e.re;
        y0[o + 1] = e.im;
        y0[o + 2] = de.re;
        y0[o + 3] = de.im;
    }
    let wronskian = |y: &[f64]| {
        let w0 = C::new(y[0], y[1]);
        let d0 = C::new(y[2], y[3]);
        let w1 = C::new(y[4], y[5]);
        let d1 = C::new(y[6], y[7]);
        w0 * d1 - d0 * w1
    };
    let w_start = wronskian(&y0);
    let mut stepper = Stepper::new(field, -t, &y0, OdeOptions::with_tol(1e-13))?;
    let mut drift: f64 = 0.0;
    while stepper.t() < t {
        stepper.step(t)?;
        drift = drift.max((wronskian(stepper.y()) / w_start - 1.0).norm());
    }
    let y = stepper.y();

    // Coefficients on e^{iβs} and e^{−iβs} at s = T.
    let e = (i * beta * t).exp();
    let split = |w: C, dw: C| -> [C; 2] {
        [
            (i * beta * w + dw) / (2.0 * i * beta * e),
            (i * beta * w - dw) / (2.0 * i * beta * e.conj()),
        ]
    };
    let c0 = split(C::new(y[0], y[1]), C::new(y[2], y[3]));
    let c1 = split(C::new(y[4], y[5]), C::new(y[6], y[7]));
    // Column j of the transfer matrix holds the +∞ coefficients of the −∞ solution j.
    let transfer = [[c0[0], c1[0]], [c0[1], c1[1]]];
    let a = transpose(&inverse(&transfer)?);
    let big_b = a[1][1];
    let big_a = a[1][0];
    let direct = [
        [C::new(y[8], y[9]), C::new(y[10], y[11])],
        [C::new(y[10], y[11]), C::new(y[12], y[13])],
    ];
    Ok(ScatterResult {
        matrix: ConnectionMatrix { a, big_a, big_b },
        wronskian_drift: drift,
        half_width: t,
        direct_form: MelnikovForm::from_entries(direct[0][0], direct[0][1], direct[1][1]),
        warning,
    })
}

fn inverse(m: &Mat2) -> Result<Mat2> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if det.norm() == 0.0 {
        return domain("singular 2x2 matrix");
    }
    Ok([
        [m[1][1] / det, -m[0][1] / det],
        [-m[1][0] / det, m[0][0] / det],
    ])
}

fn transpose(m: &Mat2) -> Mat2 {
    [[m[0][0], m[1][0]], [m[0][1], m[1][1]]]
}

/// The complexified Melnikov form in the `−∞` Jost basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MelnikovForm {
    pub m00: C,
    pub m01: C,
    pub m11: C,
    /// Real part of `m00 m11 − m01²`.
    pub det_value: f64,
    /// Imaginary part of the determinant, kept to check that it vanishes.
    pub det_imag: f64,
}

impl MelnikovForm {
    fn from_entries(m00: C, m01: C, m11: C) -> Self {
        let d = m00 * m11 - m01 * m01;
        Self {
            m00,
            m01,
            m11,
            det_value: d.re,
            det_imag: d.im,
        }
    }

    /// From a connection matrix: with `F(v, w) = v'w' + β²vw`, which is
    /// `2β²(v₊w₋ + v₋w₊)` on asymptotic coefficients, integration by parts
    /// gives `m = G − TᵀGT`, `G = [[0, 2β²], [2β², 0]]` and `T = (aᵀ)⁻¹`.
    pub fn from_connection(cm: &ConnectionMatrix, beta: f64) -> Result<Self> {
        let t = inverse(&transpose(&cm.a))?;
        let g = 2.0 * beta * beta;
        let gm = |i: usize, j: usize| {
            let tgt = t[0][i] * t[1][j] * g + t[1][i] * t[0][j] * g;
            let gij = if i == j { 0.0 } else { g };
            C::new(gij, 0.0) - tgt
        };
        Ok(Self::from_entries(gm(0, 0), gm(0, 1), gm(1, 1)))
    }
}

/// `det M = 16β⁴|A|²` together with the form built from the Gamma matrix.
pub fn det_melnikov(lp: &LegendreParams) -> Result<(MelnikovForm, f64)> {
    let cm = connection_gamma(lp)?;
    let form = MelnikovForm::from_connection(&cm, lp.beta)?;
    Ok((form, 16.0 * lp.beta.powi(4) * cm.a2()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FigRow {
    pub beta: f64,
    /// `16β⁴|A|²`.
    pub det_m: f64,
    /// `|A|²`.
    pub a2: f64,
    /// `|A|² sinh²(πβ)`, finite as `β → 0`.
    pub scaled: f64,
}

/// Determinant curve over `β` from the closed forms. The conformal curve
/// is continued below `β = √2` through `φ² = β² − 2`; at `β = 0` the limits
/// are used.
pub fn fig_curve(coupling: Coupling, beta_grid: &[f64]) -> Result<Vec<FigRow>> {
    beta_grid
        .iter()
        .map(|&beta| {
            if !(beta >= 0.0 && beta.is_finite()) {
                return domain(format!("beta = {beta} must be non-negative"));
            }
            let lp = match coupling {
                Coupling::Minimal => legendre_from(beta * beta, beta)?,
                Coupling::Conformal => conformal_from_beta(beta)?,
            };
            let scaled = numerator_closed_form(&lp).powi(2);
            // Minimal |A|² ~ β² and conformal |A|² ~ β²/9 as β → 0.
            let a2 = if beta == 0.0 {
                0.0
            } else {
                a2_closed_form(&lp)
            };
            Ok(FigRow {
                beta,
                det_m: 16.0 * beta.powi(4) * a2,
                a2,
                scaled,
            })
        })
        .collect()
}

/// `n + 1` equally spaced points on `[lo, hi]`.
pub fn beta_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let n = n.max(1);
    (0..=n)
        .map(|i| lo + (hi - lo) * i as f64 / n as f64)
        .collect()
}
