//! Model parameters, Hamiltonians and the canonical changes of variables
//! between the scale-factor/field coordinates `(a, A, b, B)`, the
//! de-singularized coordinates `(x, X, y, Y)` and the rescaled `(u, U, w, W)`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Sign of the spatial curvature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Curvature {
    Positive,
    Negative,
}

impl Curvature {
    pub fn sign(self) -> f64 {
        match self {
            Curvature::Positive => 1.0,
            Curvature::Negative => -1.0,
        }
    }
}

impl TryFrom<i8> for Curvature {
    type Error = String;

    fn try_from(k: i8) -> std::result::Result<Self, String> {
        match k {
            1 => Ok(Curvature::Positive),
            -1 => Ok(Curvature::Negative),
            other => Err(format!("curvature k must be +1 or -1, got {other}")),
        }
    }
}

impl From<Curvature> for i8 {
    fn from(k: Curvature) -> i8 {
        k.sign() as i8
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coupling {
    Minimal,
    Conformal,
}

/// JSON form of [`ModelParams`]; unknown keys are rejected.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Descriptor {
    k: Curvature,
    #[serde(rename = "Lambda")]
    lambda_cosmo: f64,
    coupling: Coupling,
    #[serde(default)]
    m2: f64,
    #[serde(default)]
    lambda_self: f64,
    #[serde(default)]
    omega: f64,
    #[serde(default)]
    epsilon: f64,
    phi: Vec<f64>,
    #[serde(default)]
    v3: f64,
    #[serde(default)]
    v4: f64,
}

/// Physical and perturbative parameters of a model.
///
/// The quadratic part of the potential is `V₂(y) = ½L|φy|²` with `φ`
/// diagonal; the cubic and quartic parts are separable,
/// `V₃(y) = v₃Σyᵢ³` and `V₄(y) = v₄Σyᵢ⁴`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Descriptor", into = "Descriptor")]
pub struct ModelParams {
    k: Curvature,
    lambda_cosmo: f64,
    coupling: Coupling,
    m2: f64,
    lambda_self: f64,
    omega: f64,
    epsilon: f64,
    phi: Vec<f64>,
    v3: f64,
    v4: f64,
}

impl TryFrom<Descriptor> for ModelParams {
    type Error = Error;

    fn try_from(d: Descriptor) -> Result<Self> {
        ModelParams::new(d.k, d.lambda_cosmo, d.coupling, d.phi)?
            .with_mass_squared(d.m2)
            .with_self_coupling(d.lambda_self)
            .with_omega(d.omega)
            .with_epsilon(d.epsilon)?
            .with_cubic_quartic(d.v3, d.v4)
    }
}

impl From<ModelParams> for Descriptor {
    fn from(p: ModelParams) -> Self {
        Descriptor {
            k: p.k,
            lambda_cosmo: p.lambda_cosmo,
            coupling: p.coupling,
            m2: p.m2,
            lambda_self: p.lambda_self,
            omega: p.omega,
            epsilon: p.epsilon,
            phi: p.phi,
            v3: p.v3,
            v4: p.v4,
        }
    }
}

impl ModelParams {
    pub fn new(k: Curvature, lambda_cosmo: f64, coupling: Coupling, phi: Vec<f64>) -> Result<Self> {
        if !(k.sign() * lambda_cosmo > 0.0) || !lambda_cosmo.is_finite() {
            return Err(Error::Config(format!(
                "k·Lambda must be positive (k = {}, Lambda = {lambda_cosmo})",
                k.sign()
            )));
        }
        if phi.is_empty() {
            return Err(Error::Config("phi must have at least one entry".into()));
        }
        if let Some(bad) = phi.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
            return Err(Error::Config(format!(
                "phi entries must be positive, got {bad}"
            )));
        }
        Ok(Self {
            k,
            lambda_cosmo,
            coupling,
            m2: 0.0,
            lambda_self: 0.0,
            omega: 0.0,
            epsilon: 0.0,
            phi,
            v3: 0.0,
            v4: 0.0,
        })
    }

    /// Scalar model with `L = kΛ = 1`.
    pub fn unit_scalar(k: Curvature, coupling: Coupling, phi: f64) -> Result<Self> {
        Self::new(k, k.sign(), coupling, vec![phi])
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Config(format!("{e} (line {}, column {})", e.line(), e.column())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("model parameters always serialize")
    }

    pub fn with_mass_squared(mut self, m2: f64) -> Self {
        self.m2 = m2;
        self
    }

    pub fn with_self_coupling(mut self, lambda_self: f64) -> Self {
        self.lambda_self = lambda_self;
        self
    }

    pub fn with_omega(mut self, omega: f64) -> Self {
        self.omega = omega;
        self
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Result<Self> {
        if !(epsilon >= 0.0 && epsilon.is_finite()) {
            return Err(Error::Config(format!(
                "epsilon must be >= 0, got {epsilon}"
            )));
        }
        self.epsilon = epsilon;
        Ok(self)
    }

    pub fn with_cubic_quartic(mut self, v3: f64, v4: f64) -> Result<Self> {
        if !(v3.is_finite() && v4.is_finite()) {
            return Err(Error::Config("v3 and v4 must be finite".into()));
        }
        self.v3 = v3;
        self.v4 = v4;
        Ok(self)
    }

    pub fn k(&self) -> Curvature {
        self.k
    }

    pub fn k_sign(&self) -> f64 {
        self.k.sign()
    }

    pub fn lambda_cosmo(&self) -> f64 {
        self.lambda_cosmo
    }

    pub fn coupling(&self) -> Coupling {
        self.coupling
    }

    pub fn m2(&self) -> f64 {
        self.m2
    }

    pub fn lambda_self(&self) -> f64 {
        self.lambda_self
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn phi(&self) -> &[f64] {
        &self.phi
    }

    pub fn v3(&self) -> f64 {
        self.v3
    }

    pub fn v4(&self) -> f64 {
        self.v4
    }

    pub fn n(&self) -> usize {
        self.phi.len()
    }

    /// `L = kΛ > 0`.
    pub fn big_l(&self) -> f64 {
        self.k.sign() * self.lambda_cosmo
    }

    /// `α = 1/√L`.
    pub fn alpha(&self) -> f64 {
        1.0 / self.big_l().sqrt()
    }

    /// The scalar `φ` of a one-component field.
    pub fn scalar_phi(&self) -> Result<f64> {
        match self.phi.as_slice() {
            [phi] => Ok(*phi),
            _ => Err(Error::Unsupported(format!(
                "scalar field required, got n = {}",
                self.n()
            ))),
        }
    }

    pub fn v2(&self, y: &[f64]) -> f64 {
        0.5 * self.big_l()
            * self
                .phi
                .iter()
                .zip(y)
                .map(|(p, v)| (p * v).powi(2))
                .sum::<f64>()
    }

    pub fn v3_of(&self, y: &[f64]) -> f64 {
        self.v3 * y.iter().map(|v| v.powi(3)).sum::<f64>()
    }

    pub fn v4_of(&self, y: &[f64]) -> f64 {
        self.v4 * y.iter().map(|v| v.powi(4)).sum::<f64>()
    }

    pub fn potential(&self, y: &[f64]) -> f64 {
        self.v2(y) + self.v3_of(y) + self.v4_of(y)
    }

    pub fn grad_v2(&self, y: &[f64]) -> Vec<f64> {
        let l = self.big_l();
        self.phi.iter().zip(y).map(|(p, v)| l * p * p * v).collect()
    }

    pub fn grad_v3(&self, y: &[f64]) -> Vec<f64> {
        y.iter().map(|v| 3.0 * self.v3 * v * v).collect()
    }

    pub fn grad_v4(&self, y: &[f64]) -> Vec<f64> {
        y.iter().map(|v| 4.0 * self.v4 * v.powi(3)).collect()
    }
}

/// A point `(u, U, w, W)`; the same container carries `(x, X, y, Y)` and
/// `(a, A, b, B)` depending on the frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseState {
    pub u: f64,
    /// Momentum conjugate to `u` (`U`).
    pub pu: f64,
    pub w: Vec<f64>,
    /// Momenta conjugate to `w` (`W`).
    pub pw: Vec<f64>,
}

impl PhaseState {
    pub fn new(u: f64, pu: f64, w: Vec<f64>, pw: Vec<f64>) -> Result<Self> {
        if w.len() != pw.len() {
            return Err(Error::Dimension {
                expected: w.len(),
                got: pw.len(),
            });
        }
        let s = Self { u, pu, w, pw };
        if !s.is_finite() {
            return domain("phase state has non-finite components");
        }
        Ok(s)
    }

    pub fn scalar(u: f64, pu: f64, w: f64, pw: f64) -> Self {
        Self {
            u,
            pu,
            w: vec![w],
            pw: vec![pw],
        }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            u: 0.0,
            pu: 0.0,
            w: vec![0.0; n],
            pw: vec![0.0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.w.len()
    }

    pub fn is_finite(&self) -> bool {
        self.to_vec().iter().all(|v| v.is_finite())
    }

    /// Flat layout `[u, U, w₁..wₙ, W₁..Wₙ]`.
    pub fn to_vec(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(2 + 2 * self.n());
        v.push(self.u);
        v.push(self.pu);
        v.extend_from_slice(&self.w);
        v.extend_from_slice(&self.pw);
        v
    }

    pub fn from_slice(y: &[f64]) -> Result<Self> {
        if y.len() < 4 || !y.len().is_multiple_of(2) {
            return Err(Error::Dimension {
                expected: 4,
                got: y.len(),
            });
        }
        let n = (y.len() - 2) / 2;
        Ok(Self {
            u: y[0],
            pu: y[1],
            w: y[2..2 + n].to_vec(),
            pw: y[2 + n..].to_vec(),
        })
    }

    pub fn max_abs_diff(&self, other: &PhaseState) -> f64 {
        self.to_vec()
            .iter()
            .zip(other.to_vec())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// `Φ = (φβ)²` of the separable splitting problem: symmetric positive definite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhiMatrix {
    rows: Vec<Vec<f64>>,
}

impl PhiMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return domain("Phi must be at least 1x1");
        }
        for r in &rows {
            if r.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    got: r.len(),
                });
            }
        }
        let scale = rows.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
        for i in 0..n {
            for j in 0..i {
                if (rows[i][j] - rows[j][i]).abs() > 8.0 * f64::EPSILON * scale {
                    return domain(format!("Phi is not symmetric at ({i}, {j})"));
                }
            }
        }
        if cholesky(&rows).is_none() {
            return domain("Phi is not positive definite");
        }
        Ok(Self { rows })
    }

    /// Diagonal `Φ`.
    pub fn diagonal(d: &[f64]) -> Result<Self> {
        let n = d.len();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { d[i] } else { 0.0 }).collect())
            .collect();
        Self::new(rows)
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// Row sums, i.e. the diagonal of `σ(Φ)`.
    pub fn row_sums(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.iter().sum()).collect()
    }

    /// Relabel components: entry `(i, j)` of the result is `Φ[perm[i]][perm[j]]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n();
        if perm.len() != n {
            return Err(Error::Dimension {
                expected: n,
                got: perm.len(),
            });
        }
        Self::new(
            (0..n)
                .map(|i| (0..n).map(|j| self.rows[perm[i]][perm[j]]).collect())
                .collect(),
        )
    }
}

fn cholesky(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            if i == j {
                let d = a[i][i] - s;
                if !(d > 0.0) {
                    return None;
                }
                l[i][i] = d.sqrt();
            } else {
                l[i][j] = (a[i][j] - s) / l[j][j];
            }
        }
    }
    Some(l)
}

/// Unreduced Hamiltonian with angular momentum `ω` for a scalar field:
/// the minimally coupled model
/// `H = −½(A² + 2ka² − 2Λa⁴) + ½(a⁻²B² + 2(ω/ab)² + 2(ma²b)²)`
/// or the conformally coupled model
/// `H = −½(A² + ka² − Λa⁴) + ½(B² + kb² + (ω/b)² + ½λb⁴ + (mab)²)`.
pub fn energy_unreduced(p: &ModelParams, a: f64, pa: f64, b: f64, pb: f64) -> Result<f64> {
    let k = p.k_sign();
    let lam = p.lambda_cosmo;
    let w = p.omega;
    match p.coupling {
        Coupling::Minimal => {
            if a == 0.0 {
                return domain("a^-2 B^2 term is singular at a = 0");
            }
            if w != 0.0 && b == 0.0 {
                return domain("(omega/ab)^2 term is singular at b = 0");
            }
            let gravity = -0.5 * (pa * pa + 2.0 * k * a * a - 2.0 * lam * a.powi(4));
            let spin = if w == 0.0 {
                0.0
            } else {
                2.0 * (w / (a * b)).powi(2)
            };
            let field = 0.5 * (pb * pb / (a * a) + spin + 2.0 * p.m2 * a.powi(4) * b * b);
            Ok(gravity + field)
        }
        Coupling::Conformal => {
            if w != 0.0 && b == 0.0 {
                return domain("(omega/b)^2 term is singular at b = 0");
            }
            let gravity = -0.5 * (pa * pa + k * a * a - lam * a.powi(4));
            let spin = if w == 0.0 { 0.0 } else { (w / b).powi(2) };
            let field = 0.5
                * (pb * pb
                    + k * b * b
                    + spin
                    + 0.5 * p.lambda_self * b.powi(4)
                    + p.m2 * a * a * b * b);
            Ok(gravity + field)
        }
    }
}

/// `H⁽¹⁾ = ½[X² + kx² − ½Λx⁴]`.
pub fn h1_gravity(p: &ModelParams, x: f64, px: f64) -> f64 {
    0.5 * (px * px + p.k_sign() * x * x - 0.5 * p.lambda_cosmo * x.powi(4))
}

/// Minimally coupled reduced Hamiltonian `−½[A² + ka² − ½Λa⁴] + ½[a⁻²|B|² + a⁴V(b)]`.
pub fn energy_minimal_ab(p: &ModelParams, s: &PhaseState) -> Result<f64> {
    check_dim(p, s)?;
    if s.u == 0.0 {
        return domain("a^-2 |B|^2 term is singular at a = 0");
    }
    let a = s.u;
    let b2: f64 = s.pw.iter().map(|v| v * v).sum();
    Ok(-h1_gravity(p, a, s.pu) + 0.5 * (b2 / (a * a) + a.powi(4) * p.potential(&s.w)))
}

/// Conformally coupled reduced Hamiltonian
/// `−½[A² + ka² − ½Λa⁴] + ½[|B|² + k|b|² + a⁴V(b/a)]`, expanded so that it
/// stays regular at `a = 0`.
pub fn energy_conformal_ab(p: &ModelParams, s: &PhaseState) -> Result<f64> {
    check_dim(p, s)?;
    let b2: f64 = s.w.iter().map(|v| v * v).sum();
    Ok(energy_xy(p, s)? + 0.5 * p.k_sign() * b2)
}

/// The de-singularized Hamiltonian
/// `−½[X² + kx² − ½Λx⁴] + ½[|Y|² + V₄(y) + xV₃(y) + x²V₂(y)]`.
pub fn energy_xy(p: &ModelParams, s: &PhaseState) -> Result<f64> {
    check_dim(p, s)?;
    let x = s.u;
    let y2: f64 = s.pw.iter().map(|v| v * v).sum();
    Ok(-h1_gravity(p, x, s.pu)
        + 0.5 * (y2 + p.v4_of(&s.w) + x * p.v3_of(&s.w) + x * x * p.v2(&s.w)))
}

fn check_dim(p: &ModelParams, s: &PhaseState) -> Result<()> {
    if s.n() != p.n() {
        return Err(Error::Dimension {
            expected: p.n(),
            got: s.n(),
        });
    }
    Ok(())
}

/// `(a, A, b, B) ↦ (x, X, y, Y)` as printed: `x = a, y = ab, X = A, Y = B/a`.
///
/// This map carries the minimally coupled Hamiltonian onto [`energy_xy`]
/// exactly but is not symplectic; see [`transform_xy_symplectic`].
pub fn transform_xy(s: &PhaseState) -> Result<PhaseState> {
    let a = s.u;
    if a == 0.0 {
        return domain("transform_xy needs a != 0 (Y = B/a)");
    }
    Ok(PhaseState {
        u: a,
        pu: s.pu,
        w: s.w.iter().map(|b| a * b).collect(),
        pw: s.pw.iter().map(|b| b / a).collect(),
    })
}

/// Inverse of [`transform_xy`]: `a = x, b = y/x, A = X, B = xY`.
pub fn transform_xy_inverse(s: &PhaseState) -> Result<PhaseState> {
    let x = s.u;
    if x == 0.0 {
        return domain("inverse of transform_xy needs x != 0 (b = y/x)");
    }
    Ok(PhaseState {
        u: x,
        pu: s.pu,
        w: s.w.iter().map(|y| y / x).collect(),
        pw: s.pw.iter().map(|y| x * y).collect(),
    })
}

/// The canonical map generated by `ν(x, y, A, B) = xA + ⟨y, B⟩/x`:
/// `x = a, y = ab, X = A − ⟨b, B⟩/a, Y = B/a`.
pub fn transform_xy_symplectic(s: &PhaseState) -> Result<PhaseState> {
    let a = s.u;
    if a == 0.0 {
        return domain("transform_xy_symplectic needs a != 0");
    }
    let bb: f64 = s.w.iter().zip(&s.pw).map(|(b, pb)| b * pb).sum();
    Ok(PhaseState {
        u: a,
        pu: s.pu - bb / a,
        w: s.w.iter().map(|b| a * b).collect(),
        pw: s.pw.iter().map(|b| b / a).collect(),
    })
}

pub fn transform_xy_symplectic_inverse(s: &PhaseState) -> Result<PhaseState> {
    let x = s.u;
    if x == 0.0 {
        return domain("inverse symplectic map needs x != 0");
    }
    let yy: f64 = s.w.iter().zip(&s.pw).map(|(y, py)| y * py).sum();
    Ok(PhaseState {
        u: x,
        pu: s.pu + yy / x,
        w: s.w.iter().map(|y| y / x).collect(),
        pw: s.pw.iter().map(|y| x * y).collect(),
    })
}

/// `x = αu, X = −αU, y = √ε w, Y = √ε W`, solved for `(u, U, w, W)`.
pub fn rescale_to_uw(p: &ModelParams, s: &PhaseState) -> Result<PhaseState> {
    let eps = positive_epsilon(p)?;
    let alpha = p.alpha();
    let r = eps.sqrt();
    Ok(PhaseState {
        u: s.u / alpha,
        pu: -s.pu / alpha,
        w: s.w.iter().map(|y| y / r).collect(),
        pw: s.pw.iter().map(|y| y / r).collect(),
    })
}

pub fn rescale_from_uw(p: &ModelParams, s: &PhaseState) -> Result<PhaseState> {
    let eps = positive_epsilon(p)?;
    let alpha = p.alpha();
    let r = eps.sqrt();
    Ok(PhaseState {
        u: alpha * s.u,
        pu: -alpha * s.pu,
        w: s.w.iter().map(|w| r * w).collect(),
        pw: s.pw.iter().map(|w| r * w).collect(),
    })
}

fn positive_epsilon(p: &ModelParams) -> Result<f64> {
    if p.epsilon > 0.0 {
        Ok(p.epsilon)
    } else {
        domain(format!("rescaling requires epsilon > 0, got {}", p.epsilon))
    }
}

fn elliptic_preconditions(p: &ModelParams) -> Result<f64> {
    if p.k != Curvature::Negative {
        return Err(Error::Unsupported("the elliptic shift needs k = -1".into()));
    }
    p.scalar_phi()
}

/// `x = α + u, X = U, y = w/√φ, Y = √φ W`, solved for `(u, U, w, W)`.
pub fn shift_elliptic(p: &ModelParams, s: &PhaseState) -> Result<PhaseState> {
    let phi = elliptic_preconditions(p)?;
    let r = phi.sqrt();
    Ok(PhaseState::scalar(
        s.u - p.alpha(),
        s.pu,
        s.w[0] * r,
        s.pw[0] / r,
    ))
}

pub fn shift_elliptic_inverse(p: &ModelParams, s: &PhaseState) -> Result<PhaseState> {
    let phi = elliptic_preconditions(p)?;
    let r = phi.sqrt();
    Ok(PhaseState::scalar(
        s.u + p.alpha(),
        s.pu,
        s.w[0] / r,
        s.pw[0] * r,
    ))
}

/// Polynomial Hamiltonian about the elliptic point, `−H⁽¹⁾ + H⁽²⁾` with
/// `H⁽¹⁾ = ½[U² + 2u² + 2√L u³ + ½Lu⁴]` and
/// `H⁽²⁾ = ½φ[W² + ½w² + √L uw² + ½L(uw)² + v₃w³/√(φ⁵L) + v₃uw³/√φ⁵ + v₄w⁴/φ³]`.
///
/// It equals [`energy_xy`] at the preimage point up to the constant
/// [`elliptic_energy_offset`].
pub fn energy_elliptic(p: &ModelParams, s: &PhaseState) -> Result<f64> {
    let phi = elliptic_preconditions(p)?;
    let l = p.big_l();
    let sl = l.sqrt();
    let (u, pu, w, pw) = (s.u, s.pu, s.w[0], s.pw[0]);
    let h1 = 0.5 * (pu * pu + 2.0 * u * u + 2.0 * sl * u.powi(3) + 0.5 * l * u.powi(4));
    let p52 = phi.powf(2.5);
    let h2 = 0.5
        * phi
        * (pw * pw
            + 0.5 * w * w
            + sl * u * w * w
            + 0.5 * l * (u * w).powi(2)
            + p.v3 * w.powi(3) / (p52 * sl)
            + p.v3 * u * w.powi(3) / p52
            + p.v4 * w.powi(4) / phi.powi(3));
    Ok(-h1 + h2)
}

/// Value of [`energy_xy`] at the elliptic point `x = α`, i.e. `1/(4L)`.
pub fn elliptic_energy_offset(p: &ModelParams) -> f64 {
    0.25 / p.big_l()
}

/// `φ² = 2m²/(kΛ)`, and `β² = φ²` (minimal) or `β² = 2 + φ²` (conformal).
pub fn phi_from_mass(p: &ModelParams) -> (f64, f64) {
    let phi2 = 2.0 * p.m2 / p.big_l();
    let beta2 = match p.coupling {
        Coupling::Minimal => phi2,
        Coupling::Conformal => 2.0 + phi2,
    };
    (phi2, beta2)
}
