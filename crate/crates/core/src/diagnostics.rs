//! Monitored quantities: divergence suprema, the projected-divergence
//! criterion, cutoff traces, energy budget, Galilean and mean decomposition,
//! the critical `H⁻²` trace, and Lagrangian particle records.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::calculus::{
    advection, divergence, evaluate_many, partial, perp_curl, speed_sq, vector_laplacian, PointSet,
};
use crate::models::{cutoff_n_alpha, cutoff_n_u, model_cutoff, ModelSpec};
use crate::spectral::{SpectralField, VectorField, AREA};
use crate::timestep::State;
use crate::{Error, Result};

/// Default oversampling factor for suprema.
pub const DEFAULT_REFINE: usize = 2;

/// Relative tolerance of the `I_a + I_b + I_c + II` closure.
pub const CLOSURE_TOL: f64 = 1e-9;

/// Max and max-abs of a field sampled on a `refine`-times finer grid.
fn refined_extrema(f: &SpectralField, refine: usize) -> (f64, f64) {
    let m = f.grid().n() * refine.max(1);
    let vals = f.to_padded_physical(m);
    vals.iter().fold((f64::NEG_INFINITY, 0.0), |(mx, ma), &v| (mx.max(v), ma.max(v.abs())))
}

/// `δ* = max δ` over the refined grid.
pub fn div_sup(u: &VectorField, refine: usize) -> f64 {
    refined_extrema(&divergence(u), refine).0
}

/// `δ₊* = max(δ*, 0)`.
pub fn div_plus_sup(u: &VectorField, refine: usize) -> f64 {
    div_sup(u, refine).max(0.0)
}

/// `(P_N δ)₊*`.
pub fn proj_div_plus_sup(u: &VectorField, cutoff: f64, refine: usize) -> f64 {
    refined_extrema(&divergence(u).project_low(cutoff), refine).0.max(0.0)
}

/// `max |∇⊥·u|` over the refined grid.
pub fn curl_sup(u: &VectorField, refine: usize) -> f64 {
    refined_extrema(&perp_curl(u), refine).1
}

/// Terms of the energy balance at one instant.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct EnergyBudget {
    /// `‖Δu‖²`
    pub dissipation: f64,
    /// `-λ⟨Δu, u⟩`
    pub destabilizing: f64,
    /// `½⟨δ, |u|²⟩`
    pub transport: f64,
    /// `-⟨(u_N·∇)u_N, u_N⟩`
    pub i_a: f64,
    /// `-⟨(u_N·∇)u^N, u_N⟩`
    pub i_b: f64,
    /// `-⟨(u^N·∇)u, u_N⟩`
    pub i_c: f64,
    /// `-⟨(I-P_N)((u·∇)u), u⟩`
    pub ii: f64,
}

impl EnergyBudget {
    /// `|I_a + I_b + I_c + II - transport|` relative to the term magnitudes.
    pub fn closure_residual(&self) -> f64 {
        let sum = self.i_a + self.i_b + self.i_c + self.ii;
        let scale = (self.i_a.abs() + self.i_b.abs() + self.i_c.abs() + self.ii.abs())
            .max(self.transport.abs())
            .max(f64::MIN_POSITIVE);
        (sum - self.transport).abs() / scale
    }
}

pub fn energy_budget(u: &VectorField, spec: &ModelSpec, cutoff: f64) -> EnergyBudget {
    let lap = vector_laplacian(u);
    let low = u.project_low(cutoff);
    let high = u.project_high(cutoff);
    let full = advection(u, u);
    EnergyBudget {
        dissipation: lap.inner(&lap),
        destabilizing: -spec.lambda * lap.inner(u),
        transport: 0.5 * divergence(u).inner(&speed_sq(u)),
        i_a: -advection(&low, &low).inner(&low),
        i_b: -advection(&low, &high).inner(&low),
        i_c: -advection(&high, u).inner(&low),
        ii: -full.project_high(cutoff).inner(u),
    }
}

/// `(G_v u)(x) = u(x + d) - v`: phase shift of every `ℓ ≠ 0` mode, mean reduced by `v`.
pub fn galilean_shift(u: &VectorField, displacement: [f64; 2], v_now: [f64; 2]) -> VectorField {
    let phase = |l1: i64, l2: i64| {
        if l1 == 0 && l2 == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            let (s, c) = (l1 as f64 * displacement[0] + l2 as f64 * displacement[1]).sin_cos();
            Complex64::new(c, s)
        }
    };
    let mut out = u.map(|f| f.map_modes(phase));
    let [m1, m2] = u.mean();
    out.u1.set_mode(0, 0, Complex64::new(m1 - v_now[0], 0.0));
    out.u2.set_mode(0, 0, Complex64::new(m2 - v_now[1], 0.0));
    out
}

/// `|⟨ũ·∇ũ, ũ⟩| / (‖Δũ‖² ‖ũ‖_{Ḣ⁻²})`, zero for a constant field.
pub fn trilinear_ratio(u: &VectorField) -> f64 {
    let f = u.fluctuation();
    let lap = vector_laplacian(&f);
    let denom = lap.inner(&lap) * f.sobolev_norm(-2.0, true);
    if denom == 0.0 {
        return 0.0;
    }
    // ⟨ũ·∇ũ, ũ⟩ = -½⟨∇·ũ, |ũ|²⟩
    let tri = 0.5 * divergence(&f).inner(&speed_sq(&f));
    tri.abs() / denom
}

/// Parameters of the criterion monitors, independent of the model's own cutoff.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonitorParams {
    pub alpha: f64,
    pub c_star: f64,
    pub n_star: f64,
    pub refine: usize,
}

impl Default for MonitorParams {
    fn default() -> Self {
        MonitorParams {
            alpha: 0.0,
            c_star: 1.0,
            n_star: 1.0,
            refine: DEFAULT_REFINE,
        }
    }
}

impl MonitorParams {
    pub fn from_model(spec: &ModelSpec) -> Self {
        MonitorParams {
            alpha: spec.alpha,
            c_star: spec.c_star,
            n_star: spec.n_star,
            refine: DEFAULT_REFINE,
        }
    }
}

/// One time sample of every monitored scalar.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DiagnosticsRecord {
    pub t: f64,
    pub l2_norm: f64,
    pub h1_norm: f64,
    pub h2_norm: f64,
    pub h3_norm: f64,
    /// `‖ũ‖_{Ḣ^{-α}}` of the fluctuation.
    pub h_minus_alpha_norm: f64,
    /// `‖ũ‖_{Ḣ⁻²}` of the fluctuation.
    pub h_minus2_norm: f64,
    /// `½‖u‖²`
    pub energy: f64,
    pub div_plus_sup: f64,
    pub div_sup: f64,
    pub proj_div_plus_sup: f64,
    pub curl_sup: f64,
    pub n_alpha: f64,
    pub n_u: f64,
    /// Cutoff used for the `I_a … II` split (model cutoff if any, else `N_α`).
    pub budget_cutoff: f64,
    pub running_int_div_plus: f64,
    pub running_int_proj_div_plus: f64,
    pub running_int_n_alpha_4: f64,
    pub mean_u: [f64; 2],
    pub fluct_h1_norm: f64,
    pub energy_budget: EnergyBudget,
    /// `(1/t)∫₀ᵗ ‖u‖² ds`; `‖u(0)‖²` at `t = 0`.
    pub time_avg_energy: f64,
    pub trilinear_ratio: f64,
}

impl DiagnosticsRecord {
    /// Column names in serialization order.
    pub const COLUMNS: [&'static str; 31] = [
        "t",
        "l2_norm",
        "h1_norm",
        "h2_norm",
        "h3_norm",
        "h_minus_alpha_norm",
        "h_minus2_norm",
        "energy",
        "div_plus_sup",
        "div_sup",
        "proj_div_plus_sup",
        "curl_sup",
        "n_alpha",
        "n_u",
        "budget_cutoff",
        "running_int_div_plus",
        "running_int_proj_div_plus",
        "running_int_n_alpha_4",
        "mean_u1",
        "mean_u2",
        "fluct_h1_norm",
        "dissipation",
        "destabilizing",
        "transport",
        "i_a",
        "i_b",
        "i_c",
        "ii",
        "time_avg_energy",
        "trilinear_ratio",
        "closure_residual",
    ];

    pub fn values(&self) -> [f64; 31] {
        let b = &self.energy_budget;
        [
            self.t,
            self.l2_norm,
            self.h1_norm,
            self.h2_norm,
            self.h3_norm,
            self.h_minus_alpha_norm,
            self.h_minus2_norm,
            self.energy,
            self.div_plus_sup,
            self.div_sup,
            self.proj_div_plus_sup,
            self.curl_sup,
            self.n_alpha,
            self.n_u,
            self.budget_cutoff,
            self.running_int_div_plus,
            self.running_int_proj_div_plus,
            self.running_int_n_alpha_4,
            self.mean_u[0],
            self.mean_u[1],
            self.fluct_h1_norm,
            b.dissipation,
            b.destabilizing,
            b.transport,
            b.i_a,
            b.i_b,
            b.i_c,
            b.ii,
            self.time_avg_energy,
            self.trilinear_ratio,
            b.closure_residual(),
        ]
    }
}

/// Accumulates running time integrals across samples.
#[derive(Clone, Debug)]
pub struct Monitor {
    model: ModelSpec,
    params: MonitorParams,
    last: Option<DiagnosticsRecord>,
    int_l2_sq: f64,
    t_start: f64,
}

impl Monitor {
    pub fn new(model: ModelSpec, params: MonitorParams) -> Self {
        Monitor {
            model,
            params,
            last: None,
            int_l2_sq: 0.0,
            t_start: 0.0,
        }
    }

    /// Continues the running integrals from a persisted sample of a run that started at `t = 0`.
    pub fn resume(model: ModelSpec, params: MonitorParams, last: DiagnosticsRecord) -> Self {
        Monitor {
            model,
            params,
            int_l2_sq: last.time_avg_energy * last.t,
            last: Some(last),
            t_start: 0.0,
        }
    }

    pub fn params(&self) -> &MonitorParams {
        &self.params
    }

    pub fn last(&self) -> Option<&DiagnosticsRecord> {
        self.last.as_ref()
    }

    /// Instantaneous quantities only; running integrals left at zero.
    pub fn instantaneous(&self, t: f64, u: &VectorField) -> Result<DiagnosticsRecord> {
        let p = &self.params;
        let fl = u.fluctuation();
        let l2 = u.l2_norm();
        let delta = divergence(u);
        let (dsup, _) = refined_extrema(&delta, p.refine);
        let n_alpha = cutoff_n_alpha(u, p.alpha, p.c_star, p.n_star)?;
        let (pdsup, _) = refined_extrema(&delta.project_low(n_alpha), p.refine);
        let budget_cutoff = model_cutoff(&self.model, u).map_or(n_alpha, |c| c.value);
        Ok(DiagnosticsRecord {
            t,
            l2_norm: l2,
            h1_norm: u.sobolev_norm(1.0, false),
            h2_norm: u.sobolev_norm(2.0, false),
            h3_norm: u.sobolev_norm(3.0, false),
            h_minus_alpha_norm: fl.sobolev_norm(-p.alpha, true),
            h_minus2_norm: fl.sobolev_norm(-2.0, true),
            energy: 0.5 * l2 * l2,
            div_plus_sup: dsup.max(0.0),
            div_sup: dsup,
            proj_div_plus_sup: pdsup.max(0.0),
            curl_sup: curl_sup(u, p.refine),
            n_alpha,
            n_u: cutoff_n_u(u, p.c_star, p.n_star),
            budget_cutoff,
            mean_u: u.mean(),
            fluct_h1_norm: fl.sobolev_norm(1.0, false),
            energy_budget: energy_budget(u, &self.model, budget_cutoff),
            time_avg_energy: l2 * l2,
            trilinear_ratio: trilinear_ratio(u),
            ..Default::default()
        })
    }

    /// Samples `state` and advances the trapezoid integrals from the previous sample.
    pub fn sample(&mut self, state: &State) -> Result<DiagnosticsRecord> {
        let mut rec = self.instantaneous(state.t, &state.u)?;
        let l2sq = rec.l2_norm * rec.l2_norm;
        match self.last {
            Some(prev) => {
                let dt = rec.t - prev.t;
                let trap = |a: f64, b: f64| 0.5 * dt * (a + b);
                rec.running_int_div_plus = prev.running_int_div_plus + trap(prev.div_plus_sup, rec.div_plus_sup);
                rec.running_int_proj_div_plus =
                    prev.running_int_proj_div_plus + trap(prev.proj_div_plus_sup, rec.proj_div_plus_sup);
                rec.running_int_n_alpha_4 =
                    prev.running_int_n_alpha_4 + trap(prev.n_alpha.powi(4), rec.n_alpha.powi(4));
                self.int_l2_sq += trap(prev.l2_norm * prev.l2_norm, l2sq);
                let elapsed = rec.t - self.t_start;
                rec.time_avg_energy = if elapsed > 0.0 { self.int_l2_sq / elapsed } else { l2sq };
            }
            None => {
                self.t_start = rec.t;
                self.int_l2_sq = 0.0;
            }
        }
        self.last = Some(rec);
        Ok(rec)
    }
}

/// Mean-ODE consistency along a sampled trajectory.
#[derive(Clone, Debug, PartialEq)]
pub struct MeanOdeTrace {
    /// Times of the interior samples where the centered difference is taken.
    pub times: Vec<f64>,
    /// Centered `dū/dt` minus `σ(0)ū - |Ω|⁻¹∫(ũ·∇)ũ`.
    pub residuals: Vec<[f64; 2]>,
    /// `sup_{s≤t} |ū(s)|` at every sample.
    pub mean_sup: Vec<f64>,
    /// `|ū₀| + (8π²)⁻¹∫₀ᵗ ‖ũ‖²_{H¹}` at every sample (trapezoid rule).
    pub mean_bound: Vec<f64>,
}

impl MeanOdeTrace {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r[0].hypot(r[1])).fold(0.0, f64::max)
    }

    pub fn bound_holds(&self) -> bool {
        self.mean_sup.iter().zip(&self.mean_bound).all(|(s, b)| s <= b)
    }
}

/// Checks `dū/dt = σ(0)ū - |Ω|⁻¹∫(ũ·∇)ũ dx` by centered differences and the
/// mean-value bound along uniformly spaced samples `(t, u)`.
pub fn mean_ode_residual(samples: &[(f64, VectorField)], spec: &ModelSpec) -> Result<MeanOdeTrace> {
    if samples.len() < 3 {
        return Err(Error::NonuniformSamples(format!(
            "need at least 3 samples, got {}",
            samples.len()
        )));
    }
    let dt = samples[1].0 - samples[0].0;
    if !(dt > 0.0) {
        return Err(Error::NonuniformSamples("sample times must increase".into()));
    }
    for w in samples.windows(2) {
        let step = w[1].0 - w[0].0;
        if (step - dt).abs() > 1e-9 * dt.max(1.0) {
            return Err(Error::NonuniformSamples(format!(
                "spacing {step} differs from {dt} at t = {}",
                w[0].0
            )));
        }
    }
    let growth = spec.linear_symbol(0, 0);
    let mut times = Vec::new();
    let mut residuals = Vec::new();
    for i in 1..samples.len() - 1 {
        let (t, u) = (&samples[i].0, &samples[i].1);
        let before = samples[i - 1].1.mean();
        let after = samples[i + 1].1.mean();
        let f = u.fluctuation();
        let adv = advection(&f, &f).mean();
        let m = u.mean();
        let mut r = [0.0; 2];
        for k in 0..2 {
            let fd = (after[k] - before[k]) / (2.0 * dt);
            r[k] = fd - (growth * m[k] - adv[k]);
        }
        times.push(*t);
        residuals.push(r);
    }

    let mean0 = samples[0].1.mean();
    let base = mean0[0].hypot(mean0[1]);
    let h1sq = |u: &VectorField| u.fluctuation().sobolev_norm(1.0, false).powi(2);
    let mut integral = 0.0;
    let mut prev = h1sq(&samples[0].1);
    let mut sup: f64 = 0.0;
    let mut mean_sup = Vec::with_capacity(samples.len());
    let mut mean_bound = Vec::with_capacity(samples.len());
    for (i, (_, u)) in samples.iter().enumerate() {
        if i > 0 {
            let cur = h1sq(u);
            integral += 0.5 * dt * (prev + cur);
            prev = cur;
        }
        let m = u.mean();
        sup = sup.max(m[0].hypot(m[1]));
        mean_sup.push(sup);
        mean_bound.push(base + integral / (8.0 * PI * PI));
    }
    Ok(MeanOdeTrace {
        times,
        residuals,
        mean_sup,
        mean_bound,
    })
}

/// Particle positions with the divergence, curl and `|∇u|²` seen at each one.
#[derive(Clone, Debug, PartialEq)]
pub struct ParticleRecord {
    pub t: f64,
    pub positions: PointSet,
    pub delta_along: Vec<f64>,
    pub omega_along: Vec<f64>,
    pub gradsq_along: Vec<f64>,
}

impl ParticleRecord {
    /// Places particles at `positions` and records the flow quantities of `u` there.
    pub fn seed(t: f64, positions: PointSet, u: &VectorField) -> Self {
        let (delta_along, omega_along, gradsq_along) = flow_along(u, &positions);
        ParticleRecord {
            t,
            positions,
            delta_along,
            omega_along,
            gradsq_along,
        }
    }
}

fn flow_along(u: &VectorField, pts: &PointSet) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let d11 = partial(&u.u1, 0);
    let d21 = partial(&u.u1, 1);
    let d12 = partial(&u.u2, 0);
    let d22 = partial(&u.u2, 1);
    let v = evaluate_many(&[&d11, &d21, &d12, &d22], pts);
    let k = pts.len();
    let delta = (0..k).map(|i| v[0][i] + v[3][i]).collect();
    let omega = (0..k).map(|i| v[2][i] - v[1][i]).collect();
    let gradsq = (0..k)
        .map(|i| v[0][i].powi(2) + v[1][i].powi(2) + v[2][i].powi(2) + v[3][i].powi(2))
        .collect();
    (delta, omega, gradsq)
}

/// Velocity linearly interpolated in time between two stored states.
#[derive(Clone, Copy, Debug)]
pub struct LinearInTime<'a> {
    pub t0: f64,
    pub u0: &'a VectorField,
    pub t1: f64,
    pub u1: &'a VectorField,
}

impl<'a> LinearInTime<'a> {
    /// A velocity frozen in time.
    pub fn frozen(u: &'a VectorField) -> Self {
        LinearInTime {
            t0: 0.0,
            u0: u,
            t1: 0.0,
            u1: u,
        }
    }

    pub fn at(&self, t: f64) -> VectorField {
        let span = self.t1 - self.t0;
        if span == 0.0 {
            return self.u0.clone();
        }
        let w = (t - self.t0) / span;
        let mut out = self.u0 * (1.0 - w);
        out.axpy(w, self.u1);
        out
    }
}

/// RK4 update of particle positions over `[p.t, p.t + h]`.
pub fn particle_advance(p: &ParticleRecord, velocity: &LinearInTime<'_>, h: f64) -> ParticleRecord {
    let t = p.t;
    let x0 = p.positions.positions();
    let vel = |t: f64, pts: &PointSet| -> Vec<[f64; 2]> {
        let u = velocity.at(t);
        let v = evaluate_many(&[&u.u1, &u.u2], pts);
        v[0].iter().zip(&v[1]).map(|(&a, &b)| [a, b]).collect()
    };
    let offset = |k: &[[f64; 2]], s: f64| {
        PointSet::new(x0.iter().zip(k).map(|(x, k)| [x[0] + s * k[0], x[1] + s * k[1]]))
    };
    let k1 = vel(t, &p.positions);
    let k2 = vel(t + 0.5 * h, &offset(&k1, 0.5 * h));
    let k3 = vel(t + 0.5 * h, &offset(&k2, 0.5 * h));
    let k4 = vel(t + h, &offset(&k3, h));
    let next = PointSet::new((0..x0.len()).map(|i| {
        let mut y = x0[i];
        for c in 0..2 {
            y[c] += h / 6.0 * (k1[i][c] + 2.0 * k2[i][c] + 2.0 * k3[i][c] + k4[i][c]);
        }
        y
    }));
    let u_end = velocity.at(t + h);
    ParticleRecord::seed(t + h, next, &u_end)
}

/// End-of-run summary of the regularity monitors.
#[derive(Clone, Debug, PartialEq)]
pub struct CriterionReport {
    pub t_final: f64,
    pub int_div_plus: f64,
    pub int_proj_div_plus: f64,
    pub int_n_alpha_4: f64,
    pub peak_h_minus2: f64,
    pub peak_l2: f64,
    pub time_avg_energy: f64,
    /// `(t, ratio)` samples of the critical trilinear ratio.
    pub trilinear_trace: Vec<(f64, f64)>,
    pub aborted: bool,
    /// For aborted runs: integrals ordered by the growth of their integrand
    /// over the final samples, fastest first.
    pub diverging: Vec<(&'static str, f64)>,
    /// For aborted runs: `(t, ‖u‖_{H¹}, ‖u‖_{H³})` over the final samples.
    pub norms_near_end: Vec<(f64, f64, f64)>,
}

/// Number of trailing samples inspected for an aborted run.
const TAIL: usize = 5;

pub fn criterion_report(records: &[DiagnosticsRecord], aborted: bool) -> CriterionReport {
    let last = records.last().copied().unwrap_or_default();
    let tail = &records[records.len().saturating_sub(TAIL)..];
    let mut diverging = Vec::new();
    let mut norms_near_end = Vec::new();
    if aborted && !tail.is_empty() {
        let first = tail[0];
        let growth = |a: f64, b: f64| {
            if a > 0.0 {
                b / a
            } else if b > 0.0 {
                f64::INFINITY
            } else {
                1.0
            }
        };
        diverging = vec![
            ("int_div_plus", growth(first.div_plus_sup, last.div_plus_sup)),
            ("int_proj_div_plus", growth(first.proj_div_plus_sup, last.proj_div_plus_sup)),
            ("int_n_alpha_4", growth(first.n_alpha.powi(4), last.n_alpha.powi(4))),
        ];
        diverging.sort_by(|a, b| b.1.total_cmp(&a.1));
        norms_near_end = tail.iter().map(|r| (r.t, r.h1_norm, r.h3_norm)).collect();
    }
    CriterionReport {
        t_final: last.t,
        int_div_plus: last.running_int_div_plus,
        int_proj_div_plus: last.running_int_proj_div_plus,
        int_n_alpha_4: last.running_int_n_alpha_4,
        peak_h_minus2: records.iter().map(|r| r.h_minus2_norm).fold(0.0, f64::max),
        peak_l2: records.iter().map(|r| r.l2_norm).fold(0.0, f64::max),
        time_avg_energy: last.time_avg_energy,
        trilinear_trace: records.iter().map(|r| (r.t, r.trilinear_ratio)).collect(),
        aborted,
        diverging,
        norms_near_end,
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "t_final                  {:.17e}", self.t_final)?;
        writeln!(f, "int div_plus_sup dt      {:.17e}", self.int_div_plus)?;
        writeln!(f, "int proj_div_plus_sup dt {:.17e}", self.int_proj_div_plus)?;
        writeln!(f, "int N_alpha^4 dt         {:.17e}", self.int_n_alpha_4)?;
        writeln!(f, "peak |u~|_H^-2           {:.17e}", self.peak_h_minus2)?;
        writeln!(f, "peak |u|_L2              {:.17e}", self.peak_l2)?;
        writeln!(f, "time-averaged |u|^2      {:.17e}", self.time_avg_energy)?;
        let peak_ratio = self.trilinear_trace.iter().map(|p| p.1).fold(0.0, f64::max);
        writeln!(f, "peak trilinear ratio     {:.17e}", peak_ratio)?;
        writeln!(f, "aborted                  {}", self.aborted)?;
        if self.aborted {
            for (name, g) in &self.diverging {
                writeln!(f, "  integrand growth over last samples: {name} x{g:.6e}")?;
            }
            for (t, h1, h3) in &self.norms_near_end {
                writeln!(f, "  t = {t:.6e}  |u|_H1 = {h1:.6e}  |u|_H3 = {h3:.6e}")?;
            }
        }
        Ok(())
    }
}

/// `(2π)⁻²∫ f` for a spectral field, exposed for quadrature comparisons.
pub fn spatial_mean(f: &SpectralField) -> f64 {
    f.inner(&SpectralField::constant(f.grid(), 1.0)) / AREA
}
