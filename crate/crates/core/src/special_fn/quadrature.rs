use crate::error::{Error, Result};

/// Tolerances for [`integrate_decaying`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Target absolute error of the returned value.
    pub abs_tol: f64,
    /// The domain is cut where the estimated tail mass drops below this.
    pub trunc_tol: f64,
    pub max_halvings: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            trunc_tol: 1e-14,
            max_halvings: 16,
        }
    }
}

impl QuadratureSpec {
    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.trunc_tol > 0.0 && self.max_halvings >= 1) {
            return Err(Error::Domain(format!("invalid quadrature spec {self:?}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    /// Truncation point: the integral runs over `[-half_width, half_width]`.
    pub half_width: f64,
    pub evaluations: usize,
}

const INITIAL_INTERVALS: usize = 64;
const MAX_HALF_WIDTH: f64 = 700.0;
const TAIL_PROBE: f64 = 0.5;

/// `∫_{-∞}^{∞} f(t) dt` for an integrand decaying exponentially in both
/// directions.
pub fn integrate_decaying<F: Fn(f64) -> f64>(f: F, spec: &QuadratureSpec) -> Result<f64> {
    integrate_decaying_detailed(f, spec).map(|r| r.value)
}

pub fn integrate_decaying_detailed<F: Fn(f64) -> f64>(
    f: F,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    spec.validate()?;
    let (half_width, probes) = truncation_point(&f, spec.trunc_tol)?;
    let mut r = refine(&f, -half_width, half_width, spec)?;
    r.half_width = half_width;
    r.evaluations += probes;
    Ok(r)
}

/// `∫_a^b f(t) dt` by successive trapezoid halvings with Simpson
/// extrapolation. Accurate to spectral order when `f` and its derivatives
/// are negligible at both ends.
pub fn integrate_interval<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    spec.validate()?;
    if !(a.is_finite() && b.is_finite() && b > a) {
        return Err(Error::Domain(format!("invalid interval [{a}, {b}]")));
    }
    refine(&f, a, b, spec).map(|r| r.value)
}

fn refine<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    let mut n = INITIAL_INTERVALS;
    let mut h = (b - a) / n as f64;
    let mut sum = 0.5 * (f(a) + f(b));
    for i in 1..n {
        sum += f(a + i as f64 * h);
    }
    let mut evaluations = n + 1;
    let mut trapezoid = h * sum;
    let mut simpson_prev: Option<f64> = None;
    let mut last_two = (f64::NAN, f64::NAN);

    for halving in 1..=spec.max_halvings {
        let mut mid = 0.0;
        for i in 0..n {
            mid += f(a + (i as f64 + 0.5) * h);
        }
        evaluations += n;
        let refined = 0.5 * trapezoid + 0.5 * h * mid;
        let simpson = (4.0 * refined - trapezoid) / 3.0;
        trapezoid = refined;
        n *= 2;
        h *= 0.5;

        if !simpson.is_finite() {
            return Err(Error::Domain("non-finite integrand value".into()));
        }
        if let Some(prev) = simpson_prev {
            let err = (simpson - prev).abs();
            last_two = (prev, simpson);
            if err <= spec.abs_tol && halving >= 2 {
                return Ok(QuadratureResult {
                    value: simpson,
                    error_estimate: err,
                    half_width: 0.5 * (b - a),
                    evaluations,
                });
            }
        }
        simpson_prev = Some(simpson);
    }
    Err(Error::Convergence {
        halvings: spec.max_halvings,
        previous: last_two.0,
        last: last_two.1,
    })
}

/// Walk outward in unit steps until both tails are bounded by `trunc_tol`,
/// estimating the local decay rate from two probes.
fn truncation_point<F: Fn(f64) -> f64>(f: &F, trunc_tol: f64) -> Result<(f64, usize)> {
    let mut evaluations = 0;
    let mut t = 1.0;
    while t <= MAX_HALF_WIDTH {
        let mut ok = true;
        for sign in [1.0, -1.0] {
            let near = f(sign * t).abs();
            let far = f(sign * (t + TAIL_PROBE)).abs();
            evaluations += 2;
            if !(near.is_finite() && far.is_finite()) {
                return Err(Error::Domain(format!(
                    "non-finite integrand at t = {}",
                    sign * t
                )));
            }
            if near == 0.0 && far == 0.0 {
                continue;
            }
            if far >= near {
                ok = false;
                break;
            }
            let rate = (near / far).ln() / TAIL_PROBE;
            if 2.0 * near / rate >= trunc_tol {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok((t, evaluations));
        }
        t += 1.0;
    }
    Err(Error::Domain(format!(
        "integrand does not decay below the truncation tolerance within |t| <= {MAX_HALF_WIDTH}"
    )))
}
