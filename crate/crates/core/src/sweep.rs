//! Time sweeps, angle/time contour grids and the dilation-vs-direct
//! benchmark.
//!
//! Every grid point is computed independently from immutable inputs and the
//! results are gathered by index, so the output does not depend on how many
//! threads rayon uses.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coherence::{coherence_triple, CoherenceTriple};
use crate::dilation::run_dilation;
use crate::error::{Error, Result};
use crate::linalg::trace_distance;
use crate::pt::{evolve_local, u_pt, PTParams, Regime};
use crate::state::{make_state, FamilyKind, QState, StateFamily};

pub const DEFAULT_DT: f64 = 0.05;
pub const DEFAULT_T_MAX_UNBROKEN: f64 = 10.0;
pub const DEFAULT_T_MAX_BROKEN: f64 = 25.0;
pub const DEFAULT_ANGLE_STEPS: usize = 128;
/// Largest step-to-step change allowed over the tail of a frozen series.
pub const FREEZE_TOL: f64 = 1e-4;

pub fn default_t_max(r: f64) -> f64 {
    match PTParams::new(r).map(|p| p.regime()) {
        Ok(Regime::Unbroken) => DEFAULT_T_MAX_UNBROKEN,
        _ => DEFAULT_T_MAX_BROKEN,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    /// Normalized non-unitary propagation.
    Direct,
    /// The ancilla circuit with postselection.
    Dilation,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepSpec {
    pub family: StateFamily,
    pub target_qubit: usize,
    pub r: f64,
    pub t_max: f64,
    pub dt: f64,
    /// Report the coherence of this two-qubit marginal instead of the full
    /// state (GHZ family only).
    pub reduced_pair: Option<[usize; 2]>,
    pub method: Method,
}

impl SweepSpec {
    pub fn new(family: StateFamily, r: f64) -> Self {
        SweepSpec {
            family,
            target_qubit: 0,
            r,
            t_max: default_t_max(r),
            dt: DEFAULT_DT,
            reduced_pair: None,
            method: Method::Direct,
        }
    }

    pub fn validate(&self) -> Result<()> {
        PTParams::new(self.r)?;
        if !(self.t_max > 0.0) || !self.t_max.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "t_max = {} must be positive",
                self.t_max
            )));
        }
        if !(self.dt > 0.0) || self.dt > self.t_max {
            return Err(Error::InvalidParameter(format!(
                "dt = {} must be positive and at most t_max = {}",
                self.dt, self.t_max
            )));
        }
        let n = self.family.n_qubits();
        if self.target_qubit >= n {
            return Err(Error::QubitOutOfRange {
                index: self.target_qubit,
                n_qubits: n,
            });
        }
        if let Some([a, b]) = self.reduced_pair {
            if self.family.kind != FamilyKind::GhzBeta {
                return Err(Error::InvalidParameter(
                    "reduced pairs are only defined for the GHZ family".into(),
                ));
            }
            if a == b || a >= n || b >= n {
                return Err(Error::InvalidParameter(format!(
                    "invalid qubit pair ({a}, {b})"
                )));
            }
        }
        Ok(())
    }

    pub fn times(&self) -> Vec<f64> {
        time_grid(self.t_max, self.dt)
    }
}

/// `0, dt, 2dt, …` up to and including `t_max` (within round-off).
pub fn time_grid(t_max: f64, dt: f64) -> Vec<f64> {
    let steps = (t_max / dt + 1e-9).floor() as usize;
    (0..=steps).map(|k| k as f64 * dt).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct TimeSeries {
    pub times: Vec<f64>,
    pub triples: Vec<CoherenceTriple>,
    pub purity: Vec<f64>,
    /// Postselection success probability, dilation sweeps only.
    pub success_probability: Option<Vec<f64>>,
}

impl TimeSeries {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn c_total(&self) -> Vec<f64> {
        self.triples.iter().map(|t| t.c_total).collect()
    }

    pub fn c_global(&self) -> Vec<f64> {
        self.triples.iter().map(|t| t.c_global).collect()
    }

    pub fn c_local(&self) -> Vec<f64> {
        self.triples.iter().map(|t| t.c_local).collect()
    }

    /// Writes `t,C_T,C_G,C_L,purity[,success_prob]` with 12 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,C_T,C_G,C_L,purity");
        if self.success_probability.is_some() {
            out.push_str(",success_prob");
        }
        out.push('\n');
        for (k, t) in self.times.iter().enumerate() {
            let tr = &self.triples[k];
            let _ = write!(
                out,
                "{},{},{},{},{}",
                fmt_sig(*t),
                fmt_sig(tr.c_total),
                fmt_sig(tr.c_global),
                fmt_sig(tr.c_local),
                fmt_sig(self.purity[k])
            );
            if let Some(p) = &self.success_probability {
                let _ = write!(out, ",{}", fmt_sig(p[k]));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        #[derive(Serialize)]
        struct Doc<'a> {
            t: &'a [f64],
            #[serde(rename = "C_T")]
            c_total: Vec<f64>,
            #[serde(rename = "C_G")]
            c_global: Vec<f64>,
            #[serde(rename = "C_L")]
            c_local: Vec<f64>,
            purity: &'a [f64],
            #[serde(skip_serializing_if = "Option::is_none")]
            success_prob: Option<&'a [f64]>,
        }
        Ok(serde_json::to_string(&Doc {
            t: &self.times,
            c_total: self.c_total(),
            c_global: self.c_global(),
            c_local: self.c_local(),
            purity: &self.purity,
            success_prob: self.success_probability.as_deref(),
        })?)
    }
}

/// `%.12g`-style formatting, `.` as decimal separator.
pub fn fmt_sig(x: f64) -> String {
    const SIG: i32 = 12;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..SIG).contains(&exp) {
        let decimals = (SIG - 1 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let s = format!("{:.*e}", (SIG - 1) as usize, x);
        let (mantissa, e) = s.split_once('e').unwrap();
        let mantissa = if mantissa.contains('.') {
            mantissa.trim_end_matches('0').trim_end_matches('.')
        } else {
            mantissa
        };
        format!("{mantissa}e{e}")
    }
}

struct Point {
    triple: CoherenceTriple,
    purity: f64,
    success: Option<f64>,
}

fn evolve(
    initial: &QState,
    target: usize,
    r: f64,
    t: f64,
    method: Method,
) -> Result<(QState, Option<f64>)> {
    match method {
        Method::Direct => Ok((evolve_local(initial, target, r, t)?, None)),
        Method::Dilation => {
            let out = run_dilation(initial, target, r, t)?;
            Ok((out.postselected_state, Some(out.success_probability)))
        }
    }
}

fn sweep_point(spec: &SweepSpec, initial: &QState, t: f64) -> Result<Point> {
    let (state, success) = evolve(initial, spec.target_qubit, spec.r, t, spec.method)?;
    let observed = match spec.reduced_pair {
        Some(pair) => state.reduce(&pair)?,
        None => state,
    };
    Ok(Point {
        triple: coherence_triple(&observed)?,
        purity: observed.purity(),
        success,
    })
}

pub fn run_time_sweep(spec: &SweepSpec) -> Result<TimeSeries> {
    spec.validate()?;
    let initial = make_state(spec.family);
    let times = spec.times();
    let points = times
        .par_iter()
        .map(|&t| sweep_point(spec, &initial, t))
        .collect::<Result<Vec<_>>>()?;

    let success_probability = match spec.method {
        Method::Dilation => Some(
            points
                .iter()
                .map(|p| p.success.unwrap_or(f64::NAN))
                .collect(),
        ),
        Method::Direct => None,
    };
    Ok(TimeSeries {
        triples: points.iter().map(|p| p.triple).collect(),
        purity: points.iter().map(|p| p.purity).collect(),
        times,
        success_probability,
    })
}

/// Runs `f` on a dedicated pool of `threads` workers (`None`: rayon's
/// default).
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Coherence over an (angle, time) grid; `values[i][j]` is at
/// `(angles[i], times[j])`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContourGrid {
    pub angles: Vec<f64>,
    pub times: Vec<f64>,
    #[serde(rename = "C_T")]
    pub c_total: Vec<Vec<f64>>,
    #[serde(rename = "C_G")]
    pub c_global: Vec<Vec<f64>>,
    #[serde(rename = "C_L")]
    pub c_local: Vec<Vec<f64>>,
}

impl ContourGrid {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

/// `angle_steps` evenly spaced angles over `[0, 2π]`, both ends included.
pub fn angle_axis(angle_steps: usize) -> Vec<f64> {
    let last = (angle_steps - 1) as f64;
    (0..angle_steps)
        .map(|i| std::f64::consts::TAU * i as f64 / last)
        .collect()
}

pub fn run_contour(
    kind: FamilyKind,
    r: f64,
    angle_steps: usize,
    t_max: f64,
    dt: f64,
) -> Result<ContourGrid> {
    if angle_steps < 2 {
        return Err(Error::InvalidParameter(format!(
            "angle_steps = {angle_steps} must be at least 2"
        )));
    }
    let angles = angle_axis(angle_steps);
    let probe = SweepSpec {
        family: StateFamily { kind, angle: 0.0 },
        target_qubit: 0,
        r,
        t_max,
        dt,
        reduced_pair: None,
        method: Method::Direct,
    };
    probe.validate()?;
    let times = probe.times();

    let cells: Vec<(usize, usize)> = (0..angles.len())
        .flat_map(|i| (0..times.len()).map(move |j| (i, j)))
        .collect();
    let triples = cells
        .par_iter()
        .map(|&(i, j)| {
            let state = make_state(StateFamily::new(kind, angles[i])?);
            coherence_triple(&evolve_local(&state, 0, r, times[j])?)
        })
        .collect::<Result<Vec<_>>>()?;

    let nt = times.len();
    let table = |f: fn(&CoherenceTriple) -> f64| -> Vec<Vec<f64>> {
        triples
            .chunks(nt)
            .map(|row| row.iter().map(f).collect())
            .collect()
    };
    Ok(ContourGrid {
        c_total: table(|t| t.c_total),
        c_global: table(|t| t.c_global),
        c_local: table(|t| t.c_local),
        angles,
        times,
    })
}

/// Largest `|x[k+1] − x[k]|` over samples with `times[k] >= from`.
pub fn max_step_change(times: &[f64], values: &[f64], from: f64) -> f64 {
    let start = times
        .iter()
        .position(|&t| t >= from - 1e-9)
        .unwrap_or(times.len());
    values[start.min(values.len())..]
        .windows(2)
        .map(|w| (w[1] - w[0]).abs())
        .fold(0.0, f64::max)
}

/// Whether the series is flat (step change ≤ [`FREEZE_TOL`]) over its last
/// 20%.
pub fn is_frozen(times: &[f64], values: &[f64]) -> bool {
    match (times.first(), times.last()) {
        (Some(&t0), Some(&t1)) => {
            max_step_change(times, values, t1 - 0.2 * (t1 - t0)) <= FREEZE_TOL
        }
        _ => true,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct BenchmarkReport {
    pub evaluations: usize,
    /// Largest trace distance between the two methods' output states.
    pub max_trace_distance: f64,
    /// Largest `|p_circuit − c² tr(UρU†)/2|`.
    pub max_success_error: f64,
    pub elapsed_seconds: f64,
    pub evaluations_per_second: f64,
}

pub fn dilation_benchmark(
    r_list: &[f64],
    t_grid: &[f64],
    states: &[QState],
) -> Result<BenchmarkReport> {
    let cases: Vec<(f64, f64, usize)> = r_list
        .iter()
        .flat_map(|&r| {
            t_grid
                .iter()
                .flat_map(move |&t| (0..states.len()).map(move |s| (r, t, s)))
        })
        .collect();
    if cases.is_empty() {
        return Ok(BenchmarkReport::default());
    }
    let start = Instant::now();
    let deviations = cases
        .par_iter()
        .map(|&(r, t, s)| -> Result<(f64, f64)> {
            let state = &states[s];
            let circuit = run_dilation(state, 0, r, t)?;
            let direct = evolve_local(state, 0, r, t)?;
            let dist = trace_distance(circuit.postselected_state.rho(), direct.rho())?;

            let u = crate::linalg::embed_single(&u_pt(r, t)?, 0, state.n_qubits())?;
            let norm = state.rho().conjugate_by(&u)?.trace().re;
            let c = circuit.angles.success_scale;
            let predicted = c * c * norm / 2.0;
            Ok((dist, (circuit.success_probability - predicted).abs()))
        })
        .collect::<Result<Vec<_>>>()?;
    let elapsed = start.elapsed().as_secs_f64();

    let (max_dist, max_succ) = deviations
        .iter()
        .fold((0.0f64, 0.0f64), |(a, b), &(d, s)| (a.max(d), b.max(s)));
    Ok(BenchmarkReport {
        evaluations: cases.len(),
        max_trace_distance: max_dist,
        max_success_error: max_succ,
        elapsed_seconds: elapsed,
        evaluations_per_second: cases.len() as f64 / elapsed.max(1e-12),
    })
}
