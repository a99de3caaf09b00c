use serde::Serialize;

use crate::error::{Error, Result};
use crate::models::PhiMatrix;
use crate::special_fn::{integrate_decaying, QuadratureSpec};

/// `μ(s) = √2 sech s`, the homoclinic of `u'' = u(1 − u²)`.
pub fn mu(s: f64) -> f64 {
    std::f64::consts::SQRT_2 / s.cosh()
}

/// Quadrature settings for splitting integrals. The hessians difference
/// these values at step `10⁻³`, so the noise floor has to sit near `10⁻¹⁵`.
pub(crate) fn tight_spec() -> QuadratureSpec {
    QuadratureSpec {
        abs_tol: 1e-13,
        trunc_tol: 1e-17,
        max_halvings: 20,
    }
}

/// `I(τ) = ∫ μ(s)² μ(s − τ)² ds = 16(τ cosh τ − sinh τ)/sinh³ τ`, with the
/// removable singularity at `τ = 0` handled by its Taylor series.
pub fn overlap_closed_form(tau: f64) -> f64 {
    let t = tau.abs();
    if t < 0.2 {
        const SERIES: [f64; 8] = [
            16.0 / 3.0,
            -32.0 / 15.0,
            32.0 / 63.0,
            -64.0 / 675.0,
            32.0 / 2079.0,
            -44224.0 / 19348875.0,
            64.0 / 200475.0,
            -462976.0 / 10854718875.0,
        ];
        let t2 = t * t;
        return SERIES.iter().rev().fold(0.0, |acc, c| acc * t2 + c);
    }
    if t > 300.0 {
        // sinh³ overflows; cosh ≈ sinh ≈ e^τ/2 gives 64(τ − 1)e^{−2τ}.
        return 64.0 * (t - 1.0) * (-2.0 * t).exp();
    }
    16.0 * (t * t.cosh() - t.sinh()) / t.sinh().powi(3)
}

/// `I(τ)` by quadrature.
pub fn overlap_quadrature(tau: f64) -> Result<f64> {
    integrate_decaying(|s| (mu(s) * mu(s - tau)).powi(2), &tight_spec())
}

/// `ν₀(τ) = ½β²|φ(θ)|² ∫ μ(s)² μ(s − τ)² ds` for a rotationally invariant field.
pub fn nu0_rotational(beta: f64, phi_theta_sq: f64, tau: f64) -> Result<f64> {
    Ok(0.5 * beta * beta * phi_theta_sq * overlap_quadrature(tau)?)
}

/// Central second difference with one Richardson step: `(4D(h/2) − D(h))/3`.
pub(crate) fn second_difference<F: Fn(f64) -> Result<f64>>(f: F, h: f64) -> Result<f64> {
    let f0 = f(0.0)?;
    let d = |h: f64| -> Result<f64> { Ok((f(h)? - 2.0 * f0 + f(-h)?) / (h * h)) };
    let coarse = d(h)?;
    let fine = d(0.5 * h)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// `∂²ν₀/∂τ²` at `τ = 0` from finite differences of the quadrature values.
/// The closed form is `−(32/15)β²|φ(θ)|²`.
pub fn nu0_tau2_at_zero(beta: f64, phi_theta_sq: f64) -> Result<f64> {
    second_difference(|t| nu0_rotational(beta, phi_theta_sq, t), 1e-3)
}

/// `∫ μ⁴(2 − 3μ²/2) ds`, the integrand form of the curvature; equals `−32/15`.
pub fn curvature_integrand_form() -> Result<f64> {
    integrate_decaying(
        |s| {
            let m2 = mu(s).powi(2);
            m2 * m2 * (2.0 - 1.5 * m2)
        },
        &tight_spec(),
    )
}

/// `ν₀(τ) = ½ Σᵢⱼ Φᵢⱼ ∫ μ(s)² μ(s − τᵢ) μ(s − τⱼ) ds` for a separable field.
pub fn nu0_separable(phi: &PhiMatrix, tau: &[f64]) -> Result<f64> {
    let n = phi.n();
    if tau.len() != n {
        return Err(Error::Dimension {
            expected: n,
            got: tau.len(),
        });
    }
    let integrand = |s: f64| {
        let shifted: Vec<f64> = tau.iter().map(|t| mu(s - t)).collect();
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += phi.get(i, j) * shifted[i] * shifted[j];
            }
        }
        mu(s).powi(2) * acc
    };
    Ok(0.5 * integrate_decaying(integrand, &tight_spec())?)
}

/// Hessian of [`nu0_separable`] at `τ = 0`: central differences at `step`
/// and `step/2`, combined by one Richardson extrapolation.
pub fn separable_hessian(phi: &PhiMatrix, step: f64) -> Result<Vec<Vec<f64>>> {
    let n = phi.n();
    let eval = |i: usize, di: f64, j: usize, dj: f64| -> Result<f64> {
        let mut tau = vec![0.0; n];
        tau[i] += di;
        tau[j] += dj;
        nu0_separable(phi, &tau)
    };
    let mut hess = vec![vec![0.0; n]; n];
    for i in 0..n {
        hess[i][i] = second_difference(|t| eval(i, t, i, 0.0), step)?;
        for j in 0..i {
            let mixed = |h: f64| -> Result<f64> {
                Ok((eval(i, h, j, h)? - eval(i, h, j, -h)? - eval(i, -h, j, h)?
                    + eval(i, -h, j, -h)?)
                    / (4.0 * h * h))
            };
            let coarse = mixed(step)?;
            let fine = mixed(0.5 * step)?;
            let v = (4.0 * fine - coarse) / 3.0;
            hess[i][j] = v;
            hess[j][i] = v;
        }
    }
    Ok(hess)
}

/// Least-squares fit of `H ≈ −c·δ(Φ, z⋆) = cΦ − c z⋆ σ(Φ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaFit {
    pub c: f64,
    pub z_star: f64,
    /// Frobenius norm of `H + c·δ(Φ, z⋆)`.
    pub residual: f64,
}

/// Frobenius residual `‖H + c·δ(Φ, z)‖` for a candidate pair.
pub fn delta_residual(hess: &[Vec<f64>], phi: &PhiMatrix, c: f64, z: f64) -> f64 {
    let sigma = phi.row_sums();
    let mut sq = 0.0;
    for (i, row) in hess.iter().enumerate() {
        for (j, h) in row.iter().enumerate() {
            let model = c * phi.get(i, j) - if i == j { c * z * sigma[i] } else { 0.0 };
            sq += (h - model).powi(2);
        }
    }
    sq.sqrt()
}

/// Fit `(c, z⋆)`. The model is linear in `(c, d = c z⋆)`, so this is a 2×2
/// normal-equation solve.
pub fn fit_delta(hess: &[Vec<f64>], phi: &PhiMatrix) -> Result<DeltaFit> {
    let sigma = phi.row_sums();
    let (mut aa, mut ab, mut bb, mut ay, mut by) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (i, row) in hess.iter().enumerate() {
        for (j, h) in row.iter().enumerate() {
            let a = phi.get(i, j);
            let b = if i == j { -sigma[i] } else { 0.0 };
            aa += a * a;
            ab += a * b;
            bb += b * b;
            ay += a * h;
            by += b * h;
        }
    }
    let det = aa * bb - ab * ab;
    if det.abs() <= 1e-14 * (aa * bb).max(f64::MIN_POSITIVE) {
        return Err(Error::Domain(
            "Phi and sigma(Phi) are proportional; (c, z) is not identifiable".into(),
        ));
    }
    let c = (ay * bb - by * ab) / det;
    let d = (aa * by - ab * ay) / det;
    let z_star = d / c;
    Ok(DeltaFit {
        c,
        z_star,
        residual: delta_residual(hess, phi, c, z_star),
    })
}

/// The pair printed for the separable hessian, `−(8/5)·δ(Φ, 5)`.
pub const PRINTED_DELTA: (f64, f64) = (8.0 / 5.0, 5.0);

/// The pair obtained by differentiating under the integral, `(16/15, 3)`.
pub const DERIVED_DELTA: (f64, f64) = (16.0 / 15.0, 3.0);

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SplittingReport {
    /// Shifts along the first component axis.
    pub tau_grid: Vec<f64>,
    pub nu0_values: Vec<f64>,
    pub hessian_at_0: Vec<Vec<f64>>,
    pub delta_fit: DeltaFit,
    /// `‖H + (8/5)·δ(Φ, 5)‖`.
    pub printed_residual: f64,
    /// `‖H + (16/15)·δ(Φ, 3)‖`.
    pub derived_residual: f64,
    /// Set when the fit residual exceeds `10⁻⁴‖H‖`.
    pub warning: Option<String>,
}

pub fn splitting_hessian(phi: &PhiMatrix) -> Result<SplittingReport> {
    splitting_hessian_with_step(phi, 1e-3)
}

pub fn splitting_hessian_with_step(phi: &PhiMatrix, step: f64) -> Result<SplittingReport> {
    if !(step > 0.0 && step < 0.5) {
        return Err(Error::Domain(format!(
            "finite-difference step {step} outside (0, 0.5)"
        )));
    }
    let n = phi.n();
    let hess = separable_hessian(phi, step)?;
    let tau_grid: Vec<f64> = (-30..=30).map(|i| 0.1 * i as f64).collect();
    let nu0_values = tau_grid
        .iter()
        .map(|&t| {
            let mut tau = vec![0.0; n];
            tau[0] = t;
            nu0_separable(phi, &tau)
        })
        .collect::<Result<Vec<_>>>()?;
    let norm = hess.iter().flatten().map(|v| v * v).sum::<f64>().sqrt();
    let (delta_fit, warning) = if n == 1 {
        // σ(Φ) = Φ, so only c(1 − z⋆) is determined; report z⋆ at the derived value.
        let c = hess[0][0] / (phi.get(0, 0) * (1.0 - DERIVED_DELTA.1));
        let fit = DeltaFit {
            c,
            z_star: DERIVED_DELTA.1,
            residual: delta_residual(&hess, phi, c, DERIVED_DELTA.1),
        };
        (
            fit,
            Some("n = 1: only c(1 - z) is identifiable".to_string()),
        )
    } else {
        let fit = fit_delta(&hess, phi)?;
        let warning = (fit.residual > 1e-4 * norm).then(|| {
            format!(
                "structure mismatch: residual {:e} exceeds 1e-4 of the hessian norm {norm:e}",
                fit.residual
            )
        });
        (fit, warning)
    };
    Ok(SplittingReport {
        tau_grid,
        nu0_values,
        printed_residual: delta_residual(&hess, phi, PRINTED_DELTA.0, PRINTED_DELTA.1),
        derived_residual: delta_residual(&hess, phi, DERIVED_DELTA.0, DERIVED_DELTA.1),
        hessian_at_0: hess,
        delta_fit,
        warning,
    })
}

/// `ν₀(τ, θ) = ½β²|φ(θ)|² I(τ)` for a two-component rotationally invariant
/// field with `φ = diag(φ₁, φ₂)` and `|φ(θ)|² = φ₁² cos²θ + φ₂² sin²θ`.
pub fn nu0_rotational_plane(beta: f64, phi: [f64; 2], tau: f64, theta: f64) -> Result<f64> {
    let (s, c) = theta.sin_cos();
    let phi_sq = (phi[0] * c).powi(2) + (phi[1] * s).powi(2);
    nu0_rotational(beta, phi_sq, tau)
}

/// Hessian of [`nu0_rotational_plane`] in `(τ, θ)` at `(0, θ₀)` by central
/// differences with one Richardson step.
pub fn rotational_plane_hessian(beta: f64, phi: [f64; 2], theta0: f64) -> Result<[[f64; 2]; 2]> {
    let f = |t: f64, th: f64| nu0_rotational_plane(beta, phi, t, theta0 + th);
    let h = 1e-3;
    let tt = second_difference(|x| f(x, 0.0), h)?;
    let thth = second_difference(|x| f(0.0, x), h)?;
    let mixed = |h: f64| -> Result<f64> {
        Ok((f(h, h)? - f(h, -h)? - f(-h, h)? + f(-h, -h)?) / (4.0 * h * h))
    };
    let tth = (4.0 * mixed(0.5 * h)? - mixed(h)?) / 3.0;
    Ok([[tt, tth], [tth, thth]])
}

/// Numerical rank of a symmetric 2×2 matrix relative to `tol·‖H‖`.
pub fn rank_2x2(h: [[f64; 2]; 2], tol: f64) -> usize {
    let tr = h[0][0] + h[1][1];
    let disc = ((h[0][0] - h[1][1]).powi(2) + 4.0 * h[0][1] * h[1][0])
        .max(0.0)
        .sqrt();
    let (l1, l2) = (0.5 * (tr + disc), 0.5 * (tr - disc));
    let scale = l1.abs().max(l2.abs());
    if scale == 0.0 {
        return 0;
    }
    [l1, l2].iter().filter(|l| l.abs() > tol * scale).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn overlap_quadrature_matches_closed_form() {
        for i in 1..=100 {
            let t = 0.1 * i as f64;
            let q = overlap_quadrature(t).unwrap();
            assert_abs_diff_eq!(q, overlap_closed_form(t), epsilon = 1e-8);
        }
        assert_abs_diff_eq!(
            overlap_quadrature(0.0).unwrap(),
            16.0 / 3.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn closed_form_series_joins_smoothly() {
        // Reference from 30-digit arithmetic.
        let exact = 5.248_806_669_435_363_8;
        assert_abs_diff_eq!(overlap_closed_form(0.2 - 1e-15), exact, epsilon = 1e-13);
        assert_abs_diff_eq!(overlap_closed_form(0.2 + 1e-15), exact, epsilon = 1e-13);
        assert!(overlap_closed_form(310.0) > 0.0 && overlap_closed_form(1e4) == 0.0);
    }

    #[test]
    fn rotational_examples() {
        assert_abs_diff_eq!(
            nu0_rotational(1.0, 1.0, 0.0).unwrap(),
            8.0 / 3.0,
            epsilon = 1e-12
        );
        assert!(nu0_rotational(1.0, 1.0, 60.0).unwrap().abs() < 1e-20);
        for i in 0..20 {
            let t = 0.37 * i as f64;
            let a = nu0_rotational(1.3, 0.7, t).unwrap();
            let b = nu0_rotational(1.3, 0.7, -t).unwrap();
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn curvature_constant() {
        assert_abs_diff_eq!(
            nu0_tau2_at_zero(1.0, 1.0).unwrap(),
            -32.0 / 15.0,
            epsilon = 1e-6
        );
        let one = nu0_tau2_at_zero(1.0, 1.5).unwrap();
        let two = nu0_tau2_at_zero(1.0, 3.0).unwrap();
        assert_abs_diff_eq!(two, 2.0 * one, epsilon = 1e-6);
        assert_abs_diff_eq!(
            curvature_integrand_form().unwrap(),
            -32.0 / 15.0,
            epsilon = 1e-8
        );
    }

    #[test]
    fn hessian_matches_derived_structure() {
        let phi = PhiMatrix::new(vec![vec![2.0, 0.5], vec![0.5, 1.0]]).unwrap();
        let r = splitting_hessian(&phi).unwrap();
        assert_abs_diff_eq!(r.hessian_at_0[0][1], 16.0 / 15.0 * 0.5, epsilon = 1e-6);
        assert_abs_diff_eq!(r.delta_fit.c, 16.0 / 15.0, epsilon = 1e-6);
        assert_abs_diff_eq!(r.delta_fit.z_star, 3.0, epsilon = 1e-6);
        assert!(r.warning.is_none());
        assert!(r.printed_residual > 1.0);
        assert!(r.derived_residual < 1e-5);
    }

    #[test]
    fn one_component_reduces_to_rotational() {
        let phi = PhiMatrix::diagonal(&[1.7]).unwrap();
        let h = separable_hessian(&phi, 1e-3).unwrap();
        assert_abs_diff_eq!(h[0][0], -32.0 / 15.0 * 1.7, epsilon = 1e-6);
        let a = nu0_separable(&phi, &[0.4]).unwrap();
        assert_abs_diff_eq!(a, nu0_rotational(1.0, 1.7, 0.4).unwrap(), epsilon = 1e-12);
    }

    #[test]
    fn separable_rejects_bad_dimension() {
        let phi = PhiMatrix::diagonal(&[1.0, 2.0]).unwrap();
        assert!(nu0_separable(&phi, &[0.0]).is_err());
    }

    #[test]
    fn plane_hessian_rank() {
        let distinct = rotational_plane_hessian(1.0, [1.0, 2.0], 0.0).unwrap();
        assert_eq!(rank_2x2(distinct, 1e-6), 2);
        let equal = rotational_plane_hessian(1.0, [1.5, 1.5], 0.3).unwrap();
        assert_eq!(rank_2x2(equal, 1e-6), 1);
    }
}
