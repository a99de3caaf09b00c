//! Dormand–Prince 8(5,3) embedded Runge–Kutta pair with step-size control.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    /// Initial step; chosen automatically when `None`.
    pub h_init: Option<f64>,
    /// Largest allowed step magnitude.
    pub h_max: f64,
    pub max_steps: usize,
}

impl OdeOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            rtol: tol,
            atol: tol,
            ..Self::default()
        }
    }
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            atol: 1e-10,
            h_init: None,
            h_max: f64::INFINITY,
            max_steps: 5_000_000,
        }
    }
}

const C: [f64; 12] = [
    0.0,
    0.05260015195876773,
    0.0789002279381516,
    0.1183503419072274,
    0.2816496580927726,
    0.3333333333333333,
    0.25,
    0.3076923076923077,
    0.6512820512820513,
    0.6,
    0.8571428571428571,
    1.0,
];
const A: [&[f64]; 12] = [
    &[],
    &[0.05260015195876773],
    &[0.0197250569845379, 0.0591751709536137],
    &[0.02958758547680685, 0.0, 0.08876275643042054],
    &[
        0.2413651341592667,
        0.0,
        -0.8845494793282861,
        0.924834003261792,
    ],
    &[
        0.037037037037037035,
        0.0,
        0.0,
        0.17082860872947386,
        0.12546768756682242,
    ],
    &[
        0.037109375,
        0.0,
        0.0,
        0.17025221101954405,
        0.06021653898045596,
        -0.017578125,
    ],
    &[
        0.03709200011850479,
        0.0,
        0.0,
        0.17038392571223998,
        0.10726203044637328,
        -0.015319437748624402,
        0.008273789163814023,
    ],
    &[
        0.6241109587160757,
        0.0,
        0.0,
        -3.3608926294469414,
        -0.868219346841726,
        27.59209969944671,
        20.154067550477894,
        -43.48988418106996,
    ],
    &[
        0.47766253643826434,
        0.0,
        0.0,
        -2.4881146199716677,
        -0.590290826836843,
        21.230051448181193,
        15.279233632882423,
        -33.28821096898486,
        -0.020331201708508627,
    ],
    &[
        -0.9371424300859873,
        0.0,
        0.0,
        5.186372428844064,
        1.0914373489967295,
        -8.149787010746927,
        -18.52006565999696,
        22.739487099350505,
        2.4936055526796523,
        -3.0467644718982196,
    ],
    &[
        2.273310147516538,
        0.0,
        0.0,
        -10.53449546673725,
        -2.0008720582248625,
        -17.9589318631188,
        27.94888452941996,
        -2.8589982771350235,
        -8.87285693353063,
        12.360567175794303,
        0.6433927460157636,
    ],
];
const B: [f64; 12] = [
    0.054293734116568765,
    0.0,
    0.0,
    0.0,
    0.0,
    4.450312892752409,
    1.8915178993145003,
    -5.801203960010585,
    0.3111643669578199,
    -0.1521609496625161,
    0.20136540080403034,
    0.04471061572777259,
];
const BHH: [f64; 3] = [0.2440944881889764, 0.7338466882816118, 0.022058823529411766];
const E: [f64; 12] = [
    0.01312004499419488,
    0.0,
    0.0,
    0.0,
    0.0,
    -1.2251564463762044,
    -0.4957589496572502,
    1.6643771824549864,
    -0.35032884874997366,
    0.3341791187130175,
    0.08192320648511571,
    -0.022355307863886294,
];

const SAFETY: f64 = 0.9;
const FAC_MIN: f64 = 1.0 / 3.0;
const FAC_MAX: f64 = 6.0;
const STAGES: usize = 12;

/// Stateful stepper; each call to [`Stepper::step`] performs one accepted step.
pub struct Stepper<F> {
    f: F,
    opts: OdeOptions,
    t: f64,
    y: Vec<f64>,
    /// Derivative at `(t, y)` (first-same-as-last).
    dy: Vec<f64>,
    h: f64,
    steps: usize,
    k: [Vec<f64>; STAGES],
    ytmp: Vec<f64>,
    ynew: Vec<f64>,
}

impl<F: FnMut(f64, &[f64], &mut [f64])> Stepper<F> {
    pub fn new(mut f: F, t0: f64, y0: &[f64], opts: OdeOptions) -> Result<Self> {
        if !(opts.rtol > 0.0 && opts.atol > 0.0) {
            return Err(Error::Domain(format!(
                "tolerances must be positive (rtol = {}, atol = {})",
                opts.rtol, opts.atol
            )));
        }
        let n = y0.len();
        let mut dy = vec![0.0; n];
        f(t0, y0, &mut dy);
        if dy.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain(format!(
                "vector field is not finite at t = {t0}"
            )));
        }
        let mut s = Self {
            f,
            opts,
            t: t0,
            y: y0.to_vec(),
            dy,
            h: 0.0,
            steps: 0,
            k: std::array::from_fn(|_| vec![0.0; n]),
            ytmp: vec![0.0; n],
            ynew: vec![0.0; n],
        };
        s.h = opts.h_init.unwrap_or_else(|| s.initial_step());
        Ok(s)
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    fn initial_step(&self) -> f64 {
        let d0 = self.scaled_norm(&self.y, &self.y);
        let d1 = self.scaled_norm(&self.dy, &self.y);
        let h = if d0 < 1e-5 || d1 < 1e-5 {
            1e-6
        } else {
            0.01 * d0 / d1
        };
        h.min(self.opts.h_max).min(0.1)
    }

    fn scaled_norm(&self, v: &[f64], y: &[f64]) -> f64 {
        let n = v.len().max(1) as f64;
        (v.iter()
            .zip(y)
            .map(|(a, b)| {
                let sc = self.opts.atol + self.opts.rtol * b.abs();
                (a / sc).powi(2)
            })
            .sum::<f64>()
            / n)
            .sqrt()
    }

    /// Advance by one accepted step without passing `t_limit`, which may lie
    /// on either side of the current time.
    pub fn step(&mut self, t_limit: f64) -> Result<()> {
        let dir = if t_limit >= self.t { 1.0 } else { -1.0 };
        let n = self.y.len();
        loop {
            if self.steps >= self.opts.max_steps {
                return Err(Error::StepUnderflow {
                    t: self.t,
                    h: self.h,
                });
            }
            let remaining = (t_limit - self.t).abs();
            let mut h = self.h.abs().min(self.opts.h_max).min(remaining);
            let last = h >= remaining;
            if last {
                h = remaining;
            }
            if h <= 4.0 * f64::EPSILON * self.t.abs().max(1.0) && !last {
                return Err(Error::StepUnderflow { t: self.t, h });
            }
            let h = dir * h;
            let err = self.attempt(h, n);
            self.steps += 1;
            if err.is_finite() && err <= 1.0 {
                let t_new = if last { t_limit } else { self.t + h };
                self.t = t_new;
                std::mem::swap(&mut self.y, &mut self.ynew);
                (self.f)(self.t, &self.y, &mut self.dy);
                let fac = if err == 0.0 {
                    FAC_MAX
                } else {
                    (SAFETY * err.powf(-0.125)).clamp(FAC_MIN, FAC_MAX)
                };
                if !last || fac < 1.0 {
                    self.h = h.abs() * fac;
                }
                return Ok(());
            }
            let fac = if err.is_finite() {
                (SAFETY * err.powf(-0.125)).clamp(FAC_MIN, 1.0)
            } else {
                FAC_MIN
            };
            self.h = h.abs() * fac;
            if self.h <= 4.0 * f64::EPSILON * self.t.abs().max(1.0) {
                return Err(Error::StepUnderflow {
                    t: self.t,
                    h: self.h,
                });
            }
        }
    }

    fn attempt(&mut self, h: f64, n: usize) -> f64 {
        let t = self.t;
        self.k[0].copy_from_slice(&self.dy);
        for stage in 1..STAGES {
            let row = A[stage];
            for i in 0..n {
                let mut acc = 0.0;
                for (j, a) in row.iter().enumerate() {
                    if *a != 0.0 {
                        acc += a * self.k[j][i];
                    }
                }
                self.ytmp[i] = self.y[i] + h * acc;
            }
            let (done, rest) = self.k.split_at_mut(stage);
            let _ = done;
            (self.f)(t + C[stage] * h, &self.ytmp, &mut rest[0]);
        }

        let mut err5 = 0.0;
        let mut err3 = 0.0;
        for i in 0..n {
            let mut incr = 0.0;
            let mut e5 = 0.0;
            for s in 0..STAGES {
                incr += B[s] * self.k[s][i];
                e5 += E[s] * self.k[s][i];
            }
            let e3 = incr - BHH[0] * self.k[0][i] - BHH[1] * self.k[8][i] - BHH[2] * self.k[11][i];
            self.ynew[i] = self.y[i] + h * incr;
            let sc = self.opts.atol + self.opts.rtol * self.y[i].abs().max(self.ynew[i].abs());
            err5 += (e5 / sc).powi(2);
            err3 += (e3 / sc).powi(2);
        }
        let mut deno = err5 + 0.01 * err3;
        if deno <= 0.0 {
            deno = 1.0;
        }
        let err = h.abs() * err5 * (1.0 / (deno * n.max(1) as f64)).sqrt();
        if self.ynew.iter().all(|v| v.is_finite()) {
            err
        } else {
            f64::NAN
        }
    }

    /// Step until `t_target` is reached exactly.
    pub fn advance_to(&mut self, t_target: f64) -> Result<()> {
        while self.t != t_target {
            self.step(t_target)?;
        }
        Ok(())
    }
}

/// Solve `y' = f(t, y)` from `(t_out[0], y0)` and return the state at every
/// time in `t_out` (monotone in either direction).
pub fn solve<F: FnMut(f64, &[f64], &mut [f64])>(
    f: F,
    y0: &[f64],
    t_out: &[f64],
    opts: OdeOptions,
) -> Result<Vec<Vec<f64>>> {
    let Some(&t0) = t_out.first() else {
        return Ok(Vec::new());
    };
    let mut stepper = Stepper::new(f, t0, y0, opts)?;
    let mut out = Vec::with_capacity(t_out.len());
    out.push(y0.to_vec());
    for &t in &t_out[1..] {
        stepper.advance_to(t)?;
        out.push(stepper.y().to_vec());
    }
    Ok(out)
}
