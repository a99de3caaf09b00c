//! Splitting potential of the homoclinic manifolds and its hessian, the
//! `δ(Φ, z)` / `Δ(z)` diagnostics, the real Melnikov form and the overlap-curvature curve.

mod delta;
mod fig1;
mod form;
mod splitting;

pub use delta::{delta_and_big_delta, DeltaDiagnostics};
pub use fig1::{fig1_curve, fig1_default_grid, fig1_value, Fig1Row};
pub use form::{melnikov_form_real, melnikov_form_reflected, MelnikovBasis, RealMelnikovForm};
pub use splitting::{
    curvature_integrand_form, delta_residual, fit_delta, mu, nu0_rotational, nu0_rotational_plane,
    nu0_separable, nu0_tau2_at_zero, overlap_closed_form, overlap_quadrature, rank_2x2,
    rotational_plane_hessian, separable_hessian, splitting_hessian, splitting_hessian_with_step,
    DeltaFit, SplittingReport, DERIVED_DELTA, PRINTED_DELTA,
};
