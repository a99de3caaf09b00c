use flrw_splitting::acceptance::{render, run_all};
use flrw_splitting::dynamics::{
    frame_energy, integrate_span, poincare_section, Direction, Frame, Section, SectionCoordinate,
};
use flrw_splitting::figures::{figure, format_number, Artifact, Table};
use flrw_splitting::melnikov::{
    curvature_integrand_form, melnikov_form_real, overlap_closed_form, overlap_quadrature,
    splitting_hessian, MelnikovBasis,
};
use flrw_splitting::models::{Coupling, Curvature, ModelParams, PhaseState, PhiMatrix};
use flrw_splitting::normalform::{
    birkhoff_closed_form, birkhoff_numeric, closed_form_exact, default_action_grid,
    elliptic_params, frequency_fit, kam_verdict, parse_rational, rational_from_f64,
    resultant_check, BnfOptions,
};
use flrw_splitting::scattering::{
    connection_gamma, det_melnikov, fig_curve, legendre_params, scatter_numeric,
};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::json;

use crate::config::{GridSpec, RunConfig};
use crate::CliError;

/// Files to write and text for standard output.
#[derive(Debug, Default)]
pub struct Output {
    pub artifacts: Vec<Artifact>,
    pub stdout: String,
    /// Whether the command itself reports success (only `verify` can fail here).
    pub success: bool,
}

impl Output {
    fn ok(artifacts: Vec<Artifact>, stdout: String) -> Self {
        Output {
            artifacts,
            stdout,
            success: true,
        }
    }
}

fn artifact(name: &str, contents: String) -> Artifact {
    Artifact {
        file_name: name.to_string(),
        contents,
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn model_or(
    cfg: &RunConfig,
    default: impl FnOnce() -> flrw_splitting::Result<ModelParams>,
) -> Result<ModelParams, CliError> {
    match &cfg.model {
        Some(m) => Ok(m.clone()),
        None => Ok(default()?),
    }
}

fn initial_state(cfg: &RunConfig, p: &ModelParams, frame: Frame) -> Result<PhaseState, CliError> {
    match &cfg.state {
        Some(s) => PhaseState::from_slice(s).map_err(|e| CliError::Config(format!("state: {e}"))),
        None if frame == Frame::Full || p.n() == 1 => Ok(PhaseState::scalar(0.5, 0.2, 0.3, 0.0)),
        None => Err(CliError::Config(format!(
            "the model has n = {} field components; give \"state\" explicitly",
            p.n()
        ))),
    }
}

fn state_columns(n: usize) -> Vec<String> {
    let mut c = vec!["u".to_string(), "U".to_string()];
    c.extend((0..n).map(|i| format!("w{i}")));
    c.extend((0..n).map(|i| format!("W{i}")));
    c
}

fn table(meta: Vec<String>, columns: &[String]) -> Table {
    let cols: Vec<&str> = columns.iter().map(String::as_str).collect();
    Table::new(meta, &cols)
}

pub fn simulate(cfg: &RunConfig) -> Result<Output, CliError> {
    let p = model_or(cfg, || {
        ModelParams::unit_scalar(Curvature::Positive, Coupling::Minimal, 1.3)
    })?;
    let frame = cfg.frame.unwrap_or(Frame::Reduced);
    let s0 = initial_state(cfg, &p, frame)?;
    let t_end = cfg.t_end.unwrap_or(100.0);
    let samples = cfg.samples.unwrap_or(1000);
    let tol = cfg.tol.unwrap_or(1e-10);
    let tr = integrate_span(&p, frame, &s0, (0.0, t_end), samples, tol)?;
    let mut columns = vec!["t".to_string()];
    columns.extend(state_columns(s0.n()));
    columns.push("energy".into());
    let mut t = table(
        vec![
            format!("model: {}", p.to_json()),
            format!("frame: {frame:?}; tol: {tol:e}; t in [0, {t_end}], {samples} intervals"),
        ],
        &columns,
    );
    for (time, s) in tr.times.iter().zip(&tr.states) {
        let y = s.to_vec();
        let mut row = vec![*time];
        row.extend(&y);
        row.push(frame_energy(&p, frame, &y)?);
        t.rows.push(row);
    }
    let stdout = format!(
        "integrated {frame:?} to t = {t_end}: {} samples, energy drift {}\n",
        tr.states.len(),
        format_number(tr.energy_drift)
    );
    Ok(Output::ok(
        vec![artifact("trajectory.csv", t.to_csv())],
        stdout,
    ))
}

pub fn poincare(cfg: &RunConfig) -> Result<Output, CliError> {
    let p = model_or(cfg, || {
        ModelParams::unit_scalar(Curvature::Positive, Coupling::Minimal, 1.3)
    })?;
    let frame = cfg.frame.unwrap_or(Frame::Reduced);
    let s0 = initial_state(cfg, &p, frame)?;
    let section = cfg.section.unwrap_or(Section {
        coordinate: SectionCoordinate::U,
        value: 0.0,
        direction: Direction::Increasing,
    });
    let n = cfg.crossings.unwrap_or(200);
    let t_max = cfg.t_end.unwrap_or(1e4);
    let tol = cfg.tol.unwrap_or(1e-10);
    let res = poincare_section(&p, frame, &s0, section, n, t_max, tol)?;
    let mut columns = vec!["t".to_string()];
    columns.extend(state_columns(s0.n()));
    let mut t = table(
        vec![
            format!("model: {}", p.to_json()),
            format!(
                "frame: {frame:?}; section: {:?} = {} ({:?}); tol: {tol:e}",
                section.coordinate, section.value, section.direction
            ),
        ],
        &columns,
    );
    for c in &res.crossings {
        let mut row = vec![c.t];
        row.extend(c.state.to_vec());
        t.rows.push(row);
    }
    let mut stdout = format!("{} crossings\n", res.crossings.len());
    if let Some(w) = &res.warning {
        eprintln!("warning: {w}");
        stdout.push_str(&format!("warning: {w}\n"));
    }
    Ok(Output::ok(
        vec![artifact("crossings.csv", t.to_csv())],
        stdout,
    ))
}

pub fn melnikov(cfg: &RunConfig) -> Result<Output, CliError> {
    let p = model_or(cfg, || {
        ModelParams::unit_scalar(Curvature::Negative, Coupling::Minimal, 1.0)
    })?;
    let free = melnikov_form_real(&p, MelnikovBasis::Free)?;
    let variational = melnikov_form_real(&p, MelnikovBasis::Variational)?;
    let curvature = curvature_integrand_form()?;
    let grid = cfg.grid.unwrap_or(GridSpec {
        lo: -10.0,
        hi: 10.0,
        n: 200,
    });
    let mut profile = Table::new(
        vec![
            format!("model: {}", p.to_json()),
            format!("grid: tau in [{}, {}], {} intervals", grid.lo, grid.hi, grid.n),
            "columns: overlap I(tau) = int mu(s)^2 mu(s - tau)^2 ds by quadrature and in closed form".into(),
        ],
        &["tau", "overlap_quadrature", "overlap_closed_form"],
    );
    for tau in grid.points() {
        profile.rows.push(vec![
            tau,
            overlap_quadrature(tau)?,
            overlap_closed_form(tau),
        ]);
    }
    let splitting = match &cfg.phi_matrix {
        Some(rows) => {
            let phi = PhiMatrix::new(rows.clone())
                .map_err(|e| CliError::Config(format!("phi_matrix: {e}")))?;
            Some(splitting_hessian(&phi)?)
        }
        None => None,
    };
    let report = json!({
        "model": p,
        "form_free_basis": free,
        "form_variational_basis": variational,
        "curvature_integrand_form": curvature,
        "splitting": splitting,
    });
    let mut stdout = format!(
        "m01 (free basis) = {}\nm01 (variational basis) = {}\n",
        format_number(free.m01),
        format_number(variational.m01)
    );
    if let Some(s) = &splitting {
        stdout.push_str(&format!(
            "hessian fit c = {}, z = {}\n",
            format_number(s.delta_fit.c),
            format_number(s.delta_fit.z_star)
        ));
        if let Some(w) = &s.warning {
            stdout.push_str(&format!("warning: {w}\n"));
        }
    }
    Ok(Output::ok(
        vec![
            artifact("melnikov.json", pretty(&report)),
            artifact("overlap.csv", profile.to_csv()),
        ],
        stdout,
    ))
}

pub fn scattering(cfg: &RunConfig) -> Result<Output, CliError> {
    let p = model_or(cfg, || {
        ModelParams::unit_scalar(Curvature::Positive, Coupling::Minimal, 1.0)
    })?;
    let lp = legendre_params(&p)?;
    let gamma = connection_gamma(&lp)?;
    let numeric = scatter_numeric(&lp)?;
    let (form, det) = det_melnikov(&lp)?;
    let grid = cfg.grid.unwrap_or(match p.coupling() {
        Coupling::Minimal => GridSpec {
            lo: 0.1,
            hi: 5.0,
            n: 98,
        },
        Coupling::Conformal => GridSpec {
            lo: 0.0,
            hi: 5.0,
            n: 100,
        },
    });
    let rows = fig_curve(p.coupling(), &grid.points())?;
    let mut curve = Table::new(
        vec![
            format!("model: {}", p.to_json()),
            format!(
                "grid: beta in [{}, {}], {} intervals",
                grid.lo, grid.hi, grid.n
            ),
            "columns: detM = 16 beta^4 |A|^2, A2 = |A|^2, scaled = |A|^2 sinh^2(pi beta)".into(),
        ],
        &["beta", "detM", "A2", "scaled"],
    );
    curve.rows = rows
        .iter()
        .map(|r| vec![r.beta, r.det_m, r.a2, r.scaled])
        .collect();
    let moduli = |m: &[[num_complex::Complex64; 2]; 2]| -> Vec<Vec<f64>> {
        m.iter()
            .map(|r| r.iter().map(|z| z.norm()).collect())
            .collect()
    };
    let report = json!({
        "model": p,
        "legendre": lp,
        "gamma": gamma,
        "gamma_moduli": moduli(&gamma.a),
        "numeric_moduli": moduli(&numeric.matrix.a),
        "numeric": numeric,
        "melnikov_form": form,
        "det_m": det,
    });
    let stdout = format!(
        "beta = {}\n|A|^2 = {}\ndet M = {}\nWronskian drift = {}\n",
        format_number(lp.beta),
        format_number(gamma.a2()),
        format_number(det),
        format_number(numeric.wronskian_drift)
    );
    Ok(Output::ok(
        vec![
            artifact("scattering.json", pretty(&report)),
            artifact("scattering_curve.csv", curve.to_csv()),
        ],
        stdout,
    ))
}

pub fn figures(which: Option<u8>) -> Result<Output, CliError> {
    let list: Vec<u8> = match which {
        Some(w @ 1..=4) => vec![w],
        Some(w) => return Err(CliError::Config(format!("--which {w}: expected 1 to 4"))),
        None => vec![1, 2, 3, 4],
    };
    let mut artifacts = Vec::new();
    for w in &list {
        artifacts.extend(figure(*w)?);
    }
    let stdout = artifacts
        .iter()
        .map(|a| format!("{}\n", a.file_name))
        .collect();
    Ok(Output::ok(artifacts, stdout))
}

fn decimal(r: &BigRational) -> String {
    r.to_f64()
        .map(format_number)
        .unwrap_or_else(|| "nan".into())
}

/// Exact `(L, φ, v₃, v₄)`: from the `rational` block, else the shortest
/// decimals of the model's values.
fn exact_params(cfg: &RunConfig, p: &ModelParams) -> Result<[BigRational; 4], CliError> {
    let r = cfg.rational.clone().unwrap_or_default();
    let pick = |s: &Option<String>, x: f64| -> Result<BigRational, CliError> {
        match s {
            Some(s) => Ok(parse_rational(s)?),
            None => Ok(rational_from_f64(x)?),
        }
    };
    Ok([
        pick(&r.l, p.big_l())?,
        pick(&r.phi, p.phi()[0])?,
        pick(&r.v3, p.v3())?,
        pick(&r.v4, p.v4())?,
    ])
}

/// The model used by `birkhoff` and `resultant`: the `rational` block wins
/// over the model descriptor.
fn elliptic_model(cfg: &RunConfig) -> Result<ModelParams, CliError> {
    let base = model_or(cfg, || elliptic_params(1.0, 3.0, 0.0, 0.0))?;
    let Some(r) = &cfg.rational else {
        return Ok(base);
    };
    let get = |s: &Option<String>, x: f64| -> Result<f64, CliError> {
        match s {
            Some(s) => Ok(parse_rational(s)?.to_f64().unwrap_or(f64::NAN)),
            None => Ok(x),
        }
    };
    let phi = base.phi().first().copied().unwrap_or(f64::NAN);
    Ok(elliptic_params(
        get(&r.l, base.big_l())?,
        get(&r.phi, phi)?,
        get(&r.v3, base.v3())?,
        get(&r.v4, base.v4())?,
    )?)
}

fn exact_line(name: &str, r: &BigRational) -> String {
    format!("{name:<14} {r}  ({})\n", decimal(r))
}

pub fn birkhoff(cfg: &RunConfig) -> Result<Output, CliError> {
    let p = elliptic_model(cfg)?;
    let policy = cfg.policy.unwrap_or_default();
    let closed = birkhoff_closed_form(&p, policy)?;
    let numeric = birkhoff_numeric(
        &p,
        BnfOptions {
            policy,
            ..Default::default()
        },
    )?;
    let verdict = kam_verdict(&numeric);
    let [l, phi, v3, v4] = exact_params(cfg, &p)?;
    let exact = closed_form_exact(&l, &phi, &v3, &v4)?;
    let resultant = resultant_check(&l, &v3, &v4)?;
    let fit = if cfg.frequency_fit {
        let grid = cfg.action_grid.clone().unwrap_or_else(default_action_grid);
        Some(frequency_fit(&p, &grid)?)
    } else {
        None
    };
    let mut stdout = format!("L = {l}, phi = {phi}, v3 = {v3}, v4 = {v4}\n");
    stdout.push_str(&format!(
        "omega1 = {}, omega2 = {}\n",
        format_number(numeric.omega1),
        format_number(numeric.omega2)
    ));
    stdout.push_str("invariants (exact, closed form; decimal)\n");
    for (name, r) in [
        ("A11", &exact.a11),
        ("A12", &exact.a12),
        ("A22", &exact.a22),
        ("hessian det", &exact.hess_det),
        ("bordered det", &exact.bordered_det),
    ] {
        stdout.push_str(&exact_line(name, r));
    }
    stdout.push_str(&format!(
        "normal form    A11 = {}, A12 = {}, A22 = {}\n",
        format_number(numeric.a11),
        format_number(numeric.a12),
        format_number(numeric.a22)
    ));
    stdout.push_str(&format!(
        "verdict        {}\n",
        serde_json::to_string(&verdict).expect("enum serializes")
    ));
    stdout.push_str(&exact_line("resultant", &resultant.resultant));
    stdout.push_str(&format!("sign           {}\n", resultant.sign));
    if let Some(f) = &fit {
        stdout.push_str(&format!(
            "frequency fit  A11 = {}, A12 = {}, A22 = {}\n",
            format_number(f.a11),
            format_number(f.a12),
            format_number(f.a22)
        ));
    }
    let report = json!({
        "model": p,
        "policy": policy,
        "closed_form": closed,
        "normal_form": numeric,
        "exact": exact,
        "verdict": verdict,
        "resultant": resultant,
        "resultant_decimal": decimal(&resultant.resultant),
        "frequency_fit": fit,
    });
    Ok(Output::ok(
        vec![artifact("birkhoff.json", pretty(&report))],
        stdout,
    ))
}

pub fn resultant(cfg: &RunConfig) -> Result<Output, CliError> {
    let p = elliptic_model(cfg)?;
    let [l, _, v3, v4] = exact_params(cfg, &p)?;
    let r = resultant_check(&l, &v3, &v4)?;
    let mut stdout = format!("L = {l}, v3 = {v3}, v4 = {v4} ({:?})\n", r.case);
    stdout.push_str(&format!("hessian numerator   {}\n", r.m));
    stdout.push_str(&format!("bordered numerator  {}\n", r.n));
    stdout.push_str(&exact_line("resultant", &r.resultant));
    stdout.push_str(&exact_line("expected", &r.expected));
    stdout.push_str(&format!("sign           {}\n", r.sign));
    let report = json!({
        "report": r,
        "resultant_decimal": decimal(&r.resultant),
        "expected_decimal": decimal(&r.expected),
    });
    Ok(Output::ok(
        vec![artifact("resultant.json", pretty(&report))],
        stdout,
    ))
}

pub fn verify(seed: u64) -> Output {
    let reports = run_all(seed);
    let success = reports.iter().all(|r| r.passed);
    let report = json!({ "seed": seed, "criteria": reports });
    Output {
        artifacts: vec![artifact("acceptance.json", pretty(&report))],
        stdout: render(&reports),
        success,
    }
}
