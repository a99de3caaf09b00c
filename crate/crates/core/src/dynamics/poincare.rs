use serde::{Deserialize, Serialize};

use super::fields::{checked_rhs, rhs, Frame};
use super::integrator::{solve, OdeOptions, Stepper};
use crate::error::{Error, Result};
use crate::models::{ModelParams, PhaseState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Increasing,
    Decreasing,
    Both,
}

/// Coordinate of the flat state `[u, U, w.., W..]` that defines the section.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SectionCoordinate {
    U,
    Pu,
    W(usize),
    Pw(usize),
}

impl SectionCoordinate {
    fn index(self, n: usize) -> Result<usize> {
        let idx = match self {
            SectionCoordinate::U => 0,
            SectionCoordinate::Pu => 1,
            SectionCoordinate::W(i) if i < n => 2 + i,
            SectionCoordinate::Pw(i) if i < n => 2 + n + i,
            _ => {
                return Err(Error::Domain(format!(
                    "section coordinate {self:?} does not exist for n = {n}"
                )))
            }
        };
        Ok(idx)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Section {
    pub coordinate: SectionCoordinate,
    pub value: f64,
    pub direction: Direction,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Crossing {
    pub t: f64,
    pub state: PhaseState,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PoincareResult {
    pub crossings: Vec<Crossing>,
    /// Set when fewer crossings than requested were found before `t_max`.
    pub warning: Option<String>,
}

/// Crossings of `section` along the orbit of `s0`, up to `n_crossings` or
/// until `t_max`. Each crossing is refined by Hénon's method: the section
/// coordinate becomes the independent variable for the final sub-step.
pub fn poincare_section(
    p: &ModelParams,
    frame: Frame,
    s0: &PhaseState,
    section: Section,
    n_crossings: usize,
    t_max: f64,
    tol: f64,
) -> Result<PoincareResult> {
    let y0 = s0.to_vec();
    checked_rhs(p, frame, &y0)?;
    let idx = section.coordinate.index(s0.n())?;
    let opts = OdeOptions::with_tol(tol);
    let mut stepper = Stepper::new(
        |_t, y: &[f64], dy: &mut [f64]| rhs(p, frame, y, dy),
        0.0,
        &y0,
        opts,
    )?;
    let mut crossings = Vec::new();
    let mut prev_t = 0.0;
    let mut prev_y = y0;
    while crossings.len() < n_crossings && stepper.t() < t_max {
        stepper.step(t_max)?;
        let y = stepper.y();
        let g_old = prev_y[idx] - section.value;
        let g_new = y[idx] - section.value;
        let up = g_old < 0.0 && g_new >= 0.0;
        let down = g_old > 0.0 && g_new <= 0.0;
        let wanted = match section.direction {
            Direction::Increasing => up,
            Direction::Decreasing => down,
            Direction::Both => up || down,
        };
        if wanted {
            let (t, state) = henon_refine(p, frame, prev_t, &prev_y, idx, section.value, tol)?;
            crossings.push(Crossing {
                t,
                state: PhaseState::from_slice(&state)?,
            });
        }
        prev_t = stepper.t();
        prev_y = stepper.y().to_vec();
    }
    let warning = (crossings.len() < n_crossings).then(|| {
        format!(
            "found {} of {n_crossings} crossings before t = {t_max}",
            crossings.len()
        )
    });
    Ok(PoincareResult { crossings, warning })
}

/// Integrate `dy/dg = f/f_idx`, `dt/dg = 1/f_idx` from the pre-crossing
/// point to the section.
fn henon_refine(
    p: &ModelParams,
    frame: Frame,
    t: f64,
    y: &[f64],
    idx: usize,
    value: f64,
    tol: f64,
) -> Result<(f64, Vec<f64>)> {
    let n = y.len();
    let mut z = y.to_vec();
    z.push(t);
    let mut buf = vec![0.0; n];
    let field = |_g: f64, z: &[f64], dz: &mut [f64]| {
        rhs(p, frame, &z[..n], &mut buf);
        let inv = 1.0 / buf[idx];
        for i in 0..n {
            dz[i] = buf[i] * inv;
        }
        dz[n] = inv;
    };
    let opts = OdeOptions::with_tol((tol * 1e-3).max(1e-14));
    let out = solve(field, &z, &[y[idx], value], opts)?;
    let end = &out[1];
    let mut state = end[..n].to_vec();
    state[idx] = value;
    Ok((end[n], state))
}
