use serde::Serialize;

use super::splitting::{mu, second_difference};
use crate::dynamics::periodic_family;
use crate::error::{domain, Result};
use crate::special_fn::{integrate_interval, QuadratureSpec};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fig1Row {
    pub h: f64,
    /// `d²/dτ² ∫ u(s)² μ(s − τ)² ds` at `τ = 0`.
    pub value: f64,
}

/// The factor `μ(s − τ)²` is below `10⁻²⁴` outside this window.
const WINDOW: f64 = 30.0;

fn spec() -> QuadratureSpec {
    QuadratureSpec {
        abs_tol: 1e-13,
        trunc_tol: 1e-17,
        max_halvings: 20,
    }
}

/// Curvature of the overlap between the energy-`h` orbit `u` of
/// `u'' = u(1 − u²)` and the homoclinic `μ`, for `h ∈ [−¼, 0]`. At `h = 0`
/// `u` is `μ` itself.
pub fn fig1_value(h: f64) -> Result<f64> {
    if !(-0.25..=0.0).contains(&h) {
        return domain(format!("energy h = {h} outside [-1/4, 0]"));
    }
    let u: Box<dyn Fn(f64) -> f64> = if h == 0.0 {
        Box::new(mu)
    } else {
        let orbit = periodic_family(h)?;
        Box::new(move |s| orbit.eval(s).0)
    };
    let overlap =
        |tau: f64| integrate_interval(|s| (u(s) * mu(s - tau)).powi(2), -WINDOW, WINDOW, &spec());
    second_difference(overlap, 1e-3)
}

pub fn fig1_curve(h_grid: &[f64]) -> Result<Vec<Fig1Row>> {
    h_grid
        .iter()
        .map(|&h| {
            Ok(Fig1Row {
                h,
                value: fig1_value(h)?,
            })
        })
        .collect()
}

/// `n + 1` equally spaced energies from `−¼` to `0`.
pub fn fig1_default_grid(n: usize) -> Vec<f64> {
    let n = n.max(1);
    (0..=n)
        .map(|i| -0.25 + 0.25 * i as f64 / n as f64)
        .collect()
}
