//! One function per subcommand. Each takes the parsed config document and
//! returns the primary output as a string (plus optional side outputs),
//! leaving stream/file plumbing to `main`.

use excitonic::{
    cnot_sequence, coupled_hamiltonian, cyclic_states, decompose, evolve_const,
    evolve_driven_sampled, fidelity_up_to_phase, iswap, period, solve_iswap_timing,
    timing_candidates, two_qubit_propagator, u_chi_gamma, u_x, u_z, verify_cnot, ComplexVector,
    CoupledDotParams, DriveParams, GateElement, IntegratorConfig, SingleQubitGateSpec,
    UnitaryMatrix, HBAR_EV_FS,
};
use num_complex::Complex64;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::config;
use crate::output::{
    csv_field, fmt_float, matrix_json, to_pretty_json, vector_phases, vector_populations,
};
use crate::{CliError, Format};

const VERSION: &str = env!("CARGO_PKG_VERSION");

fn require_json(format: Format, command: &str) -> Result<(), CliError> {
    if format == Format::Csv {
        return Err(CliError::config(format!(
            "{command} emits JSON only; drop --format csv"
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// phase

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PhaseConfig {
    drive: DriveParams<f64>,
    #[serde(default)]
    integrator: IntegratorConfig<f64>,
}

pub fn cmd_phase(doc: Value, format: Format) -> Result<String, CliError> {
    require_json(format, "phase")?;
    let cfg: PhaseConfig = config::parse(doc)?;
    let dec = decompose(&cfg.drive, &cfg.integrator)?;
    Ok(to_pretty_json(&json!({
        "chi": dec.chi,
        "gamma_total": dec.gamma_total,
        "gamma_dynamic": dec.gamma_dynamic,
        "gamma_geometric": dec.gamma_geometric,
        "cyclicity_residual": dec.cyclicity_residual,
    })))
}

// ---------------------------------------------------------------------------
// evolve

#[derive(Deserialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
enum SystemKind {
    Driven,
    Coupled,
}

#[derive(Deserialize, Clone)]
#[serde(untagged)]
enum StateSpec {
    Bits(String),
    Amplitudes(Vec<[f64; 2]>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EvolveConfig {
    system: SystemKind,
    #[serde(default)]
    drive: Option<DriveParams<f64>>,
    #[serde(default)]
    coupled: Option<CoupledDotParams<f64>>,
    time: f64,
    #[serde(default)]
    integrator: IntegratorConfig<f64>,
    #[serde(default)]
    trajectory: bool,
    #[serde(default)]
    initial_state: Option<StateSpec>,
    /// Sample count for the exactly-propagated coupled system.
    #[serde(default = "default_trajectory_samples")]
    trajectory_samples: usize,
}

fn default_trajectory_samples() -> usize {
    200
}

fn parse_state(spec: &StateSpec, dim: usize) -> Result<ComplexVector<f64>, CliError> {
    let v = match spec {
        StateSpec::Bits(bits) => {
            if bits.len() != dim.trailing_zeros() as usize
                || bits.chars().any(|c| c != '0' && c != '1')
            {
                return Err(CliError::config(format!(
                    "initial_state {bits:?} is not a {}-bit string",
                    dim.trailing_zeros()
                )));
            }
            let index = usize::from_str_radix(bits, 2).expect("validated bit string");
            ComplexVector::basis_state(dim, index)?
        }
        StateSpec::Amplitudes(amps) => {
            if amps.len() != dim {
                return Err(CliError::config(format!(
                    "initial_state needs {dim} amplitudes, got {}",
                    amps.len()
                )));
            }
            let data: Vec<Complex64> = amps.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
            let raw = ComplexVector::new(data)?;
            let norm = raw.norm();
            if norm < 1e-12 {
                return Err(CliError::config("initial_state must be non-zero"));
            }
            raw.scale(Complex64::new(1.0 / norm, 0.0))
        }
    };
    Ok(v)
}

fn samples_json(samples: &[(f64, ComplexVector<f64>)]) -> Value {
    Value::Array(
        samples
            .iter()
            .map(|(t, state)| {
                json!({
                    "time": t,
                    "populations": vector_populations(state),
                    "phases": vector_phases(state),
                })
            })
            .collect(),
    )
}

pub fn cmd_evolve(doc: Value, format: Format) -> Result<String, CliError> {
    require_json(format, "evolve")?;
    let cfg: EvolveConfig = config::parse(doc)?;
    match cfg.system {
        SystemKind::Driven => {
            let drive = cfg
                .drive
                .ok_or_else(|| CliError::config("driven system needs a drive block"))?;
            let initial = match &cfg.initial_state {
                Some(s) => parse_state(s, 2)?,
                None => ComplexVector::basis_state(2, 0)?,
            };
            let res = evolve_driven_sampled(&drive, cfg.time, &cfg.integrator, &initial)?;
            let samples: Vec<(f64, ComplexVector<f64>)> = res
                .samples
                .as_ref()
                .map(|v| v.iter().map(|s| (s.time, s.state.clone())).collect())
                .unwrap_or_default();
            Ok(to_pretty_json(&json!({
                "system": "driven",
                "unitary": matrix_json(&res.unitary),
                "scheme_used": res.scheme_used.to_string(),
                "step_count": res.step_count,
                "samples": if cfg.trajectory { samples_json(&samples) } else { Value::Null },
            })))
        }
        SystemKind::Coupled => {
            let coupled = cfg
                .coupled
                .ok_or_else(|| CliError::config("coupled system needs a coupled block"))?;
            let h = coupled_hamiltonian(&coupled)?;
            let unitary = evolve_const(&h, cfg.time)?;
            let samples = if cfg.trajectory {
                let initial = match &cfg.initial_state {
                    Some(s) => parse_state(s, 4)?,
                    None => ComplexVector::basis_state(4, 1)?,
                };
                let n = cfg.trajectory_samples.max(2);
                let mut rows = Vec::with_capacity(n + 1);
                for k in 0..=n {
                    let t = cfg.time * k as f64 / n as f64;
                    let u = evolve_const(&h, t)?;
                    rows.push((t, u.apply(&initial)));
                }
                samples_json(&rows)
            } else {
                Value::Null
            };
            Ok(to_pretty_json(&json!({
                "system": "coupled",
                "unitary": matrix_json(&unitary),
                "scheme_used": "exact-eigendecomposition",
                "step_count": 0,
                "samples": samples,
            })))
        }
    }
}

// ---------------------------------------------------------------------------
// gate

#[derive(Deserialize)]
#[serde(tag = "gate", rename_all = "kebab-case", deny_unknown_fields)]
enum GateConfig {
    UChiGamma { chi: f64, gamma: f64 },
    UZ { gamma_z: f64 },
    UX { gamma_x: f64 },
    Iswap,
    TwoQubitPropagator {
        coupled: CoupledDotParams<f64>,
        time: f64,
    },
}

pub fn cmd_gate(doc: Value, format: Format) -> Result<String, CliError> {
    require_json(format, "gate")?;
    let cfg: GateConfig = config::parse(doc)?;
    let (name, matrix): (&str, UnitaryMatrix<f64>) = match cfg {
        GateConfig::UChiGamma { chi, gamma } => (
            "u-chi-gamma",
            u_chi_gamma(&SingleQubitGateSpec::new(chi, gamma)?)?,
        ),
        GateConfig::UZ { gamma_z } => ("u-z", u_z(gamma_z)?),
        GateConfig::UX { gamma_x } => ("u-x", u_x(gamma_x)?),
        GateConfig::Iswap => ("iswap", iswap()?),
        GateConfig::TwoQubitPropagator { coupled, time } => {
            ("two-qubit-propagator", two_qubit_propagator(&coupled, time)?)
        }
    };
    Ok(to_pretty_json(&json!({
        "gate": name,
        "dim": matrix.dim(),
        "matrix": matrix_json(&matrix),
    })))
}

// ---------------------------------------------------------------------------
// iswap-schedule

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScheduleConfig {
    epsilon: f64,
    v_target: f64,
    k_max: u32,
    m_max: u32,
    /// Optional path for the full (k, m) candidate grid.
    #[serde(default)]
    candidates_csv: Option<String>,
}

pub struct SchedulePrimary {
    pub primary: String,
    pub candidates_csv: Option<(String, String)>, // (path, content)
}

fn candidate_fidelity(epsilon: f64, v: f64, t: f64) -> Result<f64, CliError> {
    let p = CoupledDotParams::new(epsilon, v)?;
    let u = two_qubit_propagator(&p, t)?;
    Ok(fidelity_up_to_phase(&u, &iswap()?)?)
}

fn candidates_csv_content(cfg: &ScheduleConfig) -> Result<String, CliError> {
    let grid = timing_candidates(cfg.epsilon, cfg.v_target, cfg.k_max, cfg.m_max)?;
    let mut out = String::from("k,m,t_invEV,t_fs,v_required_eV,v_residual_eV,fidelity\n");
    for c in grid {
        let fid = candidate_fidelity(cfg.epsilon, c.v_required, c.t)?;
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            c.k,
            c.m,
            fmt_float(c.t),
            fmt_float(c.t_femtoseconds()),
            fmt_float(c.v_required),
            fmt_float(c.v_residual),
            fmt_float(fid),
        ));
    }
    Ok(out)
}

pub fn cmd_iswap_schedule(doc: Value, format: Format) -> Result<SchedulePrimary, CliError> {
    let cfg: ScheduleConfig = config::parse(doc)?;
    if format == Format::Csv {
        return Ok(SchedulePrimary {
            primary: candidates_csv_content(&cfg)?,
            candidates_csv: None,
        });
    }
    let sol = solve_iswap_timing(cfg.epsilon, cfg.v_target, cfg.k_max, cfg.m_max)?;
    let fidelity = candidate_fidelity(cfg.epsilon, sol.v_required, sol.t)?;
    let primary = to_pretty_json(&json!({
        "solution": {
            "k": sol.k,
            "m": sol.m,
            "t_inv_ev": sol.t,
            "t_fs": sol.t_femtoseconds(),
            "v_required_ev": sol.v_required,
            "v_target_ev": sol.v_target,
            "v_residual_ev": sol.v_residual,
            "fidelity": fidelity,
        },
        "hbar_ev_fs": HBAR_EV_FS,
    }));
    let candidates_csv = match &cfg.candidates_csv {
        Some(path) => Some((path.clone(), candidates_csv_content(&cfg)?)),
        None => None,
    };
    Ok(SchedulePrimary {
        primary,
        candidates_csv,
    })
}

// ---------------------------------------------------------------------------
// cnot-verify

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct CnotConfig {}

pub fn cmd_cnot_verify(doc: Value, format: Format) -> Result<String, CliError> {
    require_json(format, "cnot-verify")?;
    let _cfg: CnotConfig = config::parse(doc)?;
    let seq = cnot_sequence::<f64>()?;
    let check = verify_cnot(&seq)?;
    let elements: Vec<Value> = seq
        .elements
        .iter()
        .map(|e| match e {
            GateElement::Single { spec, qubit } => json!({
                "kind": "single",
                "label": e.to_string(),
                "qubit": qubit,
                "chi": spec.chi,
                "gamma": spec.gamma,
            }),
            GateElement::ISwap => json!({
                "kind": "iswap",
                "label": "iSWAP",
            }),
        })
        .collect();
    Ok(to_pretty_json(&json!({
        "sequence": elements,
        "iswap_count": seq.elements.iter().filter(|e| matches!(e, GateElement::ISwap)).count(),
        "composed": matrix_json(&seq.composed),
        "fidelity": check.fidelity,
        "control_qubit": check.control_qubit,
        "fidelity_other_assignment": check.fidelity_other,
    })))
}

// ---------------------------------------------------------------------------
// sweep

#[derive(Deserialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
enum SweepQuantity {
    GammaGeometric,
    GammaTotal,
    CyclicityResidual,
    IswapFidelity,
}

impl SweepQuantity {
    fn name(self) -> &'static str {
        match self {
            SweepQuantity::GammaGeometric => "gamma_geometric",
            SweepQuantity::GammaTotal => "gamma_total",
            SweepQuantity::CyclicityResidual => "cyclicity_residual",
            SweepQuantity::IswapFidelity => "iswap_fidelity",
        }
    }
}

#[derive(Deserialize, Clone)]
#[serde(deny_unknown_fields)]
struct Axis {
    path: String,
    start: f64,
    stop: f64,
    count: usize,
}

impl Axis {
    fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        (0..self.count)
            .map(|i| self.start + (self.stop - self.start) * i as f64 / (self.count - 1) as f64)
            .collect()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepConfig {
    quantity: SweepQuantity,
    base: Value,
    axes: Vec<Axis>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepPointDrive {
    drive: DriveParams<f64>,
    #[serde(default)]
    integrator: IntegratorConfig<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepPointCoupled {
    coupled: CoupledDotParams<f64>,
    time: f64,
}

const MAX_SWEEP_POINTS: usize = 1_000_000;

fn evaluate_point(quantity: SweepQuantity, point: Value) -> Result<f64, CliError> {
    match quantity {
        SweepQuantity::GammaGeometric | SweepQuantity::GammaTotal | SweepQuantity::CyclicityResidual => {
            let cfg: SweepPointDrive = config::parse(point)?;
            // reject configurations without a well-defined cyclic pair early
            cyclic_states(&cfg.drive)?;
            let _ = period(&cfg.drive)?;
            let dec = decompose(&cfg.drive, &cfg.integrator)?;
            Ok(match quantity {
                SweepQuantity::GammaGeometric => dec.gamma_geometric,
                SweepQuantity::GammaTotal => dec.gamma_total,
                _ => dec.cyclicity_residual,
            })
        }
        SweepQuantity::IswapFidelity => {
            let cfg: SweepPointCoupled = config::parse(point)?;
            let u = two_qubit_propagator(&cfg.coupled, cfg.time)?;
            Ok(fidelity_up_to_phase(&u, &iswap()?)?)
        }
    }
}

pub fn cmd_sweep(doc: Value, format: Format) -> Result<String, CliError> {
    let cfg: SweepConfig = config::parse(doc)?;
    if cfg.axes.is_empty() {
        return Err(CliError::config("sweep needs at least one axis"));
    }
    for axis in &cfg.axes {
        if axis.count == 0 {
            return Err(CliError::config("axis count must be at least 1"));
        }
        if !axis.start.is_finite() || !axis.stop.is_finite() {
            return Err(CliError::config("axis bounds must be finite"));
        }
    }
    let total: usize = cfg.axes.iter().map(|a| a.count).product();
    if total > MAX_SWEEP_POINTS {
        return Err(CliError::config(format!(
            "grid has {total} points, cap is {MAX_SWEEP_POINTS}"
        )));
    }

    let axis_values: Vec<Vec<f64>> = cfg.axes.iter().map(|a| a.values()).collect();
    let mut rows: Vec<(Vec<f64>, Option<f64>, Option<String>)> = Vec::with_capacity(total);
    let mut indices = vec![0usize; cfg.axes.len()];
    for _ in 0..total {
        let coords: Vec<f64> = indices
            .iter()
            .zip(&axis_values)
            .map(|(&i, vals)| vals[i])
            .collect();
        let mut point = cfg.base.clone();
        for (axis, &v) in cfg.axes.iter().zip(&coords) {
            config::set_path(&mut point, &axis.path, json!(v))?;
        }
        match evaluate_point(cfg.quantity, point) {
            Ok(value) => rows.push((coords, Some(value), None)),
            Err(e) => rows.push((coords, None, Some(e.message()))),
        }
        // lexicographic increment, last axis fastest
        for a in (0..indices.len()).rev() {
            indices[a] += 1;
            if indices[a] < axis_values[a].len() {
                break;
            }
            indices[a] = 0;
        }
    }

    match format {
        Format::Json => {
            let json_rows: Vec<Value> = rows
                .iter()
                .map(|(coords, value, error)| {
                    let point: serde_json::Map<String, Value> = cfg
                        .axes
                        .iter()
                        .zip(coords)
                        .map(|(a, &v)| (a.path.clone(), json!(v)))
                        .collect();
                    json!({ "point": point, "value": value, "error": error })
                })
                .collect();
            Ok(to_pretty_json(&json!({
                "metadata": sweep_metadata(&cfg),
                "rows": json_rows,
            })))
        }
        Format::Csv => {
            let mut out = String::new();
            out.push_str(&format!("# excitonic sweep v{VERSION}\n"));
            out.push_str(&format!("# quantity={}\n", cfg.quantity.name()));
            out.push_str(&format!("# hbar_ev_fs={}\n", fmt_float(HBAR_EV_FS)));
            out.push_str(&format!(
                "# integrator={}\n",
                integrator_description(&cfg.base)
            ));
            let header: Vec<String> = cfg
                .axes
                .iter()
                .map(|a| csv_field(&a.path))
                .chain(["value".to_string(), "error".to_string()])
                .collect();
            out.push_str(&header.join(","));
            out.push('\n');
            for (coords, value, error) in &rows {
                let mut fields: Vec<String> = coords.iter().map(|&v| fmt_float(v)).collect();
                fields.push(value.map(fmt_float).unwrap_or_default());
                fields.push(csv_field(error.as_deref().unwrap_or("")));
                out.push_str(&fields.join(","));
                out.push('\n');
            }
            Ok(out)
        }
    }
}

fn integrator_description(base: &Value) -> String {
    let integrator: IntegratorConfig<f64> = base
        .get("integrator")
        .cloned()
        .and_then(|v| serde_json::from_value(v).ok())
        .unwrap_or_default();
    format!(
        "{} steps_per_period={} tolerance={}",
        integrator.scheme, integrator.steps_per_period, integrator.tolerance
    )
}

fn sweep_metadata(cfg: &SweepConfig) -> Value {
    json!({
        "version": VERSION,
        "quantity": cfg.quantity.name(),
        "hbar_ev_fs": HBAR_EV_FS,
        "integrator": integrator_description(&cfg.base),
    })
}
