//! Frequency-map check of the second-order invariants: integrate orbits near
//! the elliptic point and fit `Ω(I) = Ω₀ + 2A·I`.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::Serialize;

use super::bnf::{hamiltonian_terms, RealTerms};
use super::{check_elliptic_params, H2Variant};
use crate::dynamics::{OdeOptions, Stepper};
use crate::error::{Error, Result};
use crate::models::ModelParams;

/// Measured mean actions and fundamental frequencies of one orbit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrbitFrequencies {
    pub initial_actions: [f64; 2],
    pub actions: [f64; 2],
    pub frequencies: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrequencyFit {
    pub omega0: [f64; 2],
    /// Rows `∂Ωᵢ/∂Iⱼ`, an estimate of `2A`.
    pub two_a: [[f64; 2]; 2],
    pub a11: f64,
    /// Mean of the two off-diagonal estimates.
    pub a12: f64,
    pub a22: f64,
    /// Largest residual of the linear fit.
    pub residual: f64,
    pub orbits: Vec<OrbitFrequencies>,
}

const SAMPLES: usize = 1 << 16;
const PERIODS: f64 = 200.0;

/// Products of `{0.5, 1, 2} × 10⁻⁴` for both actions.
pub fn default_action_grid() -> Vec<[f64; 2]> {
    let levels = [0.5e-4, 1e-4, 2e-4];
    levels
        .iter()
        .flat_map(|&a| levels.iter().map(move |&b| [a, b]))
        .collect()
}

fn gradient(terms: &RealTerms, y: &[f64]) -> [f64; 4] {
    let mut g = [0.0; 4];
    for (c, e) in terms {
        for k in 0..4 {
            if e[k] == 0 {
                continue;
            }
            let mut v = c * e[k] as f64;
            for (j, &ej) in e.iter().enumerate() {
                let p = if j == k { ej - 1 } else { ej };
                v *= y[j].powi(p as i32);
            }
            g[k] += v;
        }
    }
    g
}

/// `(u, U, w, W)` with quadratic actions `J₁, J₂` and zero momenta.
fn initial_state(j: [f64; 2]) -> [f64; 4] {
    let q1 = (2.0 * j[0]).sqrt();
    let q2 = (2.0 * j[1]).sqrt();
    [q1 * 2f64.powf(-0.25), 0.0, q2 * 2f64.powf(0.25), 0.0]
}

/// `zⱼ = (qⱼ + ipⱼ)/√2` from `(u, U, w, W)`.
fn complex_coords(y: &[f64]) -> [Complex64; 2] {
    let r = 2f64.powf(0.25);
    let (q1, p1) = (r * y[0], y[1] / r);
    let (q2, p2) = (y[2] / r, r * y[3]);
    [
        Complex64::new(q1, p1) / SQRT_2,
        Complex64::new(q2, p2) / SQRT_2,
    ]
}

/// Slope of `|F(f)|²` for `F(f) = Σ wₙ xₙ e^{−ifnΔt}`, i.e. `2 Re(F̄ F')`.
fn power_slope(x: &[Complex64], window: &[f64], dt: f64, f: f64) -> f64 {
    let step = Complex64::from_polar(1.0, -f * dt);
    let mut rot = Complex64::new(1.0, 0.0);
    let mut acc = Complex64::default();
    let mut dacc = Complex64::default();
    for (n, (xn, wn)) in x.iter().zip(window).enumerate() {
        let term = xn * wn * rot;
        acc += term;
        dacc += term * Complex64::new(0.0, -(n as f64) * dt);
        rot *= step;
        if n % 1024 == 1023 {
            rot = Complex64::from_polar(1.0, -f * dt * (n + 1) as f64);
        }
    }
    2.0 * (acc.conj() * dacc).re
}

/// Angular frequency of the dominant line of `x`, located on the FFT grid
/// and refined by bisection on the slope of the windowed power.
fn dominant_frequency(x: &[Complex64], dt: f64) -> Result<f64> {
    let n = x.len();
    let window: Vec<f64> = (0..n)
        .map(|k| 0.5 - 0.5 * (2.0 * PI * k as f64 / n as f64).cos())
        .collect();
    let mut buf: Vec<Complex64> = x.iter().zip(&window).map(|(a, w)| a * w).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let mag: Vec<f64> = buf.iter().map(|c| c.norm()).collect();
    let (k, peak) = mag.iter().enumerate().fold(
        (0, 0.0),
        |acc, (i, &m)| if m > acc.1 { (i, m) } else { acc },
    );
    // A second line within a few bins would bias the refinement.
    let signed = |i: usize| {
        if i > n / 2 {
            i as i64 - n as i64
        } else {
            i as i64
        }
    };
    let competitor = mag
        .iter()
        .enumerate()
        .filter(|(i, _)| (signed(*i) - signed(k)).abs() > 2 && (signed(*i) - signed(k)).abs() <= 8)
        .map(|(_, &m)| m)
        .fold(0.0, f64::max);
    if competitor > 0.05 * peak {
        return Err(Error::FitQuality(format!(
            "a second spectral line within 8 bins of the peak has {:.3} of its amplitude",
            competitor / peak
        )));
    }
    let bin = 2.0 * PI / (n as f64 * dt);
    let centre = signed(k) as f64 * bin;
    // The slope is positive below the peak and negative above it.
    let (mut a, mut b) = (centre - bin, centre + bin);
    if power_slope(x, &window, dt, a) <= 0.0 || power_slope(x, &window, dt, b) >= 0.0 {
        return Err(Error::FitQuality(
            "spectral peak could not be bracketed".into(),
        ));
    }
    while b - a > 4.0 * f64::EPSILON * (1.0 + centre.abs()) {
        let m = 0.5 * (a + b);
        if power_slope(x, &window, dt, m) > 0.0 {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

fn orbit(terms: &RealTerms, j: [f64; 2], t_end: f64) -> Result<OrbitFrequencies> {
    let field = |_: f64, y: &[f64], dy: &mut [f64]| {
        let g = gradient(terms, y);
        dy[0] = g[1];
        dy[1] = -g[0];
        dy[2] = g[3];
        dy[3] = -g[2];
    };
    let y0 = initial_state(j);
    let dt = t_end / SAMPLES as f64;
    let mut stepper = Stepper::new(field, 0.0, &y0, OdeOptions::with_tol(1e-13))?;
    let mut sig = [Vec::with_capacity(SAMPLES), Vec::with_capacity(SAMPLES)];
    let mut mean = [0.0; 2];
    for n in 0..SAMPLES {
        if n > 0 {
            stepper.advance_to(n as f64 * dt)?;
        }
        let z = complex_coords(stepper.y());
        for k in 0..2 {
            mean[k] += z[k].norm_sqr() / SAMPLES as f64;
            sig[k].push(z[k]);
        }
    }
    // z ∝ e^{−iΩt}, so the line sits at −Ω.
    let f1 = dominant_frequency(&sig[0], dt)?;
    let f2 = dominant_frequency(&sig[1], dt)?;
    Ok(OrbitFrequencies {
        initial_actions: j,
        actions: mean,
        frequencies: [-f1, -f2],
    })
}

/// Least squares for `y ≈ c₀ + c₁x₁ + c₂x₂`; returns the coefficients and
/// the largest residual.
fn fit_plane(x: &[[f64; 2]], y: &[f64]) -> Result<([f64; 3], f64)> {
    let mut ata = [[0.0; 3]; 3];
    let mut aty = [0.0; 3];
    for (xi, yi) in x.iter().zip(y) {
        let row = [1.0, xi[0], xi[1]];
        for r in 0..3 {
            aty[r] += row[r] * yi;
            for c in 0..3 {
                ata[r][c] += row[r] * row[c];
            }
        }
    }
    let coef = solve3(ata, aty)
        .ok_or_else(|| Error::FitQuality("action grid does not span a plane".into()))?;
    let res = x
        .iter()
        .zip(y)
        .map(|(xi, yi)| (coef[0] + coef[1] * xi[0] + coef[2] * xi[1] - yi).abs())
        .fold(0.0, f64::max);
    Ok((coef, res))
}

fn solve3(mut a: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let piv = (col..3).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..3 {
            let f = a[r][col] / a[col][col];
            for c in col..3 {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = [0.0; 3];
    for r in (0..3).rev() {
        let s: f64 = (r + 1..3).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Some(x)
}

/// Integrate one orbit per entry of `action_grid` (initial quadratic actions,
/// each pair with `I₁² + I₂² ≤ 10⁻³` and both positive), extract the two
/// frequencies and fit them linearly against the mean actions.
pub fn frequency_fit(p: &ModelParams, action_grid: &[[f64; 2]]) -> Result<FrequencyFit> {
    let phi = check_elliptic_params(p)?;
    if action_grid.len() < 3 {
        return Err(Error::Domain(
            "the action grid needs at least 3 points".into(),
        ));
    }
    if let Some(j) = action_grid
        .iter()
        .find(|j| !(j[0] > 0.0 && j[1] > 0.0 && j[0] * j[0] + j[1] * j[1] <= 1e-3))
    {
        return Err(Error::Domain(format!(
            "actions {j:?} must be positive with I1^2 + I2^2 <= 1e-3"
        )));
    }
    let terms = hamiltonian_terms(p, H2Variant::Corrected, false)?;
    let slowest = SQRT_2.min(phi / SQRT_2);
    let t_end = PERIODS * 2.0 * PI / slowest;
    let orbits: Vec<OrbitFrequencies> = action_grid
        .par_iter()
        .map(|&j| orbit(&terms, j, t_end))
        .collect::<Result<_>>()?;
    let x: Vec<[f64; 2]> = orbits.iter().map(|o| o.actions).collect();
    let mut omega0 = [0.0; 2];
    let mut two_a = [[0.0; 2]; 2];
    let mut residual: f64 = 0.0;
    for i in 0..2 {
        let y: Vec<f64> = orbits.iter().map(|o| o.frequencies[i]).collect();
        let (c, r) = fit_plane(&x, &y)?;
        omega0[i] = c[0];
        two_a[i] = [c[1], c[2]];
        residual = residual.max(r);
    }
    Ok(FrequencyFit {
        omega0,
        two_a,
        a11: 0.5 * two_a[0][0],
        a12: 0.25 * (two_a[0][1] + two_a[1][0]),
        a22: 0.5 * two_a[1][1],
        residual,
        orbits,
    })
}
