//! Equations of motion, integration with energy bookkeeping, closed-form
//! separatrices, the periodic dn family and Poincaré sections.

pub mod fields;
pub mod integrator;
pub mod periodic;
pub mod poincare;
pub mod separatrix;

pub use fields::{checked_rhs, duffing_energy, frame_energy, h1_k, rhs, vector_field, Frame};
pub use integrator::{solve, OdeOptions, Stepper};
pub use periodic::{periodic_family, PeriodicOrbit};
pub use poincare::{
    poincare_section, Crossing, Direction, PoincareResult, Section, SectionCoordinate,
};
pub use separatrix::{separatrix, SeparatrixKind, SeparatrixSolution};

use crate::error::{Error, Result};
use crate::models::{ModelParams, PhaseState};

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<PhaseState>,
    /// `max |H(t) − H(t₀)|` over every accepted step.
    pub energy_drift: f64,
}

/// Integrate the frame's equations and sample the solution at `times`
/// (strictly increasing, starting at the initial time).
pub fn integrate(
    p: &ModelParams,
    frame: Frame,
    s0: &PhaseState,
    times: &[f64],
    tol: f64,
) -> Result<Trajectory> {
    if times.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Domain(
            "output times must be strictly increasing".into(),
        ));
    }
    let y0 = s0.to_vec();
    checked_rhs(p, frame, &y0)?;
    let e0 = frame_energy(p, frame, &y0)?;
    let Some(&t0) = times.first() else {
        return Ok(Trajectory {
            times: Vec::new(),
            states: Vec::new(),
            energy_drift: 0.0,
        });
    };
    let mut stepper = Stepper::new(
        |_t, y: &[f64], dy: &mut [f64]| rhs(p, frame, y, dy),
        t0,
        &y0,
        OdeOptions::with_tol(tol),
    )?;
    let mut states = vec![s0.clone()];
    let mut drift: f64 = 0.0;
    for &t in &times[1..] {
        while stepper.t() < t {
            stepper.step(t)?;
            drift = drift.max((frame_energy(p, frame, stepper.y())? - e0).abs());
        }
        states.push(PhaseState::from_slice(stepper.y())?);
    }
    Ok(Trajectory {
        times: times.to_vec(),
        states,
        energy_drift: drift,
    })
}

/// `n + 1` equally spaced samples over `[t0, t1]`.
pub fn integrate_span(
    p: &ModelParams,
    frame: Frame,
    s0: &PhaseState,
    t_span: (f64, f64),
    n: usize,
    tol: f64,
) -> Result<Trajectory> {
    let (t0, t1) = t_span;
    let n = n.max(1);
    let times: Vec<f64> = (0..=n)
        .map(|i| t0 + (t1 - t0) * i as f64 / n as f64)
        .collect();
    integrate(p, frame, s0, &times, tol)
}

/// `(u, U, w, W) → (u, −U, w, −W)`.
pub fn reverse_momenta(s: &PhaseState) -> PhaseState {
    PhaseState {
        u: s.u,
        pu: -s.pu,
        w: s.w.clone(),
        pw: s.pw.iter().map(|v| -v).collect(),
    }
}

/// Integrate forward for `t`, flip momenta, integrate forward again and flip
/// back. For a reversible frame the result should reproduce `s0`.
pub fn time_reversal_round_trip(
    p: &ModelParams,
    frame: Frame,
    s0: &PhaseState,
    t: f64,
    tol: f64,
) -> Result<PhaseState> {
    let fwd = integrate(p, frame, s0, &[0.0, t], tol)?;
    let mid = reverse_momenta(fwd.states.last().expect("two samples"));
    let back = integrate(p, frame, &mid, &[0.0, t], tol)?;
    Ok(reverse_momenta(back.states.last().expect("two samples")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{Coupling, Curvature};
    use approx::assert_abs_diff_eq;

    #[test]
    fn equilibrium_stays_put() {
        let p = ModelParams::unit_scalar(Curvature::Positive, Coupling::Minimal, 1.0).unwrap();
        let s0 = PhaseState::scalar(1.0, 0.0, 0.0, 0.0);
        let tr = integrate_span(&p, Frame::Reduced, &s0, (0.0, 10.0), 10, 1e-10).unwrap();
        for s in &tr.states {
            assert_eq!(s, &s0);
        }
        assert_eq!(tr.energy_drift, 0.0);
    }

    #[test]
    fn follows_heteroclinic() {
        let p = ModelParams::unit_scalar(Curvature::Positive, Coupling::Minimal, 1.0).unwrap();
        let sep = separatrix(&p, SeparatrixKind::HeteroclinicK1).unwrap();
        let (u0, pu0) = sep.eval(-10.0);
        let s0 = PhaseState::scalar(u0, pu0, 0.0, 0.0);
        // Errors grow like e^{√2 t} near the target saddle, hence the tight tolerance.
        let tr = integrate_span(&p, Frame::Reduced, &s0, (-10.0, 10.0), 40, 1e-14).unwrap();
        for (t, s) in tr.times.iter().zip(&tr.states) {
            assert_abs_diff_eq!(s.u, sep.eval(*t).0, epsilon = 1e-8);
        }
    }

    #[test]
    fn rejects_non_increasing_times() {
        let p = ModelParams::unit_scalar(Curvature::Positive, Coupling::Minimal, 1.0).unwrap();
        assert!(integrate(&p, Frame::Reduced, &PhaseState::zeros(1), &[0.0, 0.0], 1e-8).is_err());
    }
}
