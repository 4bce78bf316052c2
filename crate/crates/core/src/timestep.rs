//! Time integration: semi-implicit Euler for the dissipative models, classical
//! RK4 for the conservative ones, and the sampling run loop.

use std::fmt;
use std::str::FromStr;

use crate::diagnostics::{DiagnosticsRecord, Monitor};
use crate::models::{nonlinear_tendency, rhs, ModelSpec};
use crate::spectral::{Grid, SpectralField, VectorField};
use crate::{BlowUpReport, Error, Result};

/// Coefficient magnitude beyond which a run is declared blown up.
pub const BLOWUP_AMPLITUDE: f64 = 1e100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Explicit nonlinearity, implicit linear symbol.
    ImexEuler,
    Rk4,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::ImexEuler => "imex_euler",
            Scheme::Rk4 => "rk4",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "imex_euler" | "imex" => Ok(Scheme::ImexEuler),
            "rk4" => Ok(Scheme::Rk4),
            other => Err(Error::Stepper(format!("unknown scheme `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepperConfig {
    pub h: f64,
    pub scheme: Scheme,
    pub t_end: f64,
    /// Treat coefficients above [`BLOWUP_AMPLITUDE`] as blow-up; non-finite
    /// coefficients always are.
    pub safety_checks: bool,
}

impl StepperConfig {
    pub fn new(h: f64, t_end: f64) -> Self {
        StepperConfig {
            h,
            scheme: Scheme::ImexEuler,
            t_end,
            safety_checks: true,
        }
    }

    pub fn with_scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    /// Total step count `t_end / h`; `t_end` must be a whole number of steps.
    pub fn total_steps(&self) -> Result<u64> {
        if !(self.h > 0.0 && self.h.is_finite()) {
            return Err(Error::Stepper(format!("h must be positive, got {}", self.h)));
        }
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return Err(Error::Stepper(format!("t_end must be non-negative, got {}", self.t_end)));
        }
        let steps = (self.t_end / self.h).round();
        if (steps * self.h - self.t_end).abs() > 1e-9 * self.t_end.max(self.h) {
            return Err(Error::Stepper(format!(
                "t_end = {} is not a multiple of h = {}",
                self.t_end, self.h
            )));
        }
        Ok(steps as u64)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct State {
    pub t: f64,
    pub u: VectorField,
    pub model: ModelSpec,
}

impl State {
    pub fn new(t: f64, u: VectorField, model: ModelSpec) -> Self {
        State { t, u, model }
    }
}

/// Semi-implicit Euler with the reciprocal multipliers `1/(1 - hσ(ℓ))` cached.
#[derive(Clone, Debug)]
pub struct ImexEuler {
    h: f64,
    model: ModelSpec,
    inverse: SpectralField,
}

impl ImexEuler {
    pub fn new(model: ModelSpec, grid: Grid, h: f64) -> Result<Self> {
        model.validate()?;
        for (l1, l2) in grid.modes() {
            let m = 1.0 - h * model.linear_symbol(l1, l2);
            if !(m > 0.0) {
                return Err(Error::ImplicitMultiplier { l1, l2, value: m });
            }
        }
        let ones = SpectralField::from_fn(grid, |_, _| 1.0.into());
        let inverse = ones.scale_modes(|l1, l2| 1.0 / (1.0 - h * model.linear_symbol(l1, l2)));
        Ok(ImexEuler { h, model, inverse })
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// `(û + h N̂)/(1 - hσ)` mode-wise.
    pub fn update(&self, u: &VectorField, nonlinear: &VectorField) -> VectorField {
        let mut next = u.clone();
        next.axpy(self.h, nonlinear);
        let inv = self.inverse.coeffs();
        for f in [&mut next.u1, &mut next.u2] {
            for (c, m) in f.coeffs_mut().iter_mut().zip(inv) {
                *c *= m.re;
            }
        }
        next
    }

    pub fn step(&self, s: &State) -> Result<State> {
        let (nl, _) = nonlinear_tendency(&self.model, &s.u);
        let u = self.update(&s.u, &nl.value);
        finite_or_blowup(s, State::new(s.t + self.h, u, s.model))
    }
}

/// One semi-implicit Euler step for an explicitly supplied nonlinear tendency.
pub fn imex_euler_update(u: &VectorField, nonlinear: &VectorField, h: f64, model: &ModelSpec) -> Result<VectorField> {
    Ok(ImexEuler::new(*model, u.grid(), h)?.update(u, nonlinear))
}

pub fn imex_euler_step(s: &State, h: f64) -> Result<State> {
    ImexEuler::new(s.model, s.u.grid(), h)?.step(s)
}

pub fn rk4_step(s: &State, h: f64) -> Result<State> {
    let f = |u: &VectorField| rhs(&s.model, u);
    let k1 = f(&s.u)?;
    let stage = |k: &VectorField, c: f64| {
        let mut v = s.u.clone();
        v.axpy(c, k);
        v
    };
    let k2 = f(&stage(&k1, 0.5 * h))?;
    let k3 = f(&stage(&k2, 0.5 * h))?;
    let k4 = f(&stage(&k3, h))?;
    let mut u = s.u.clone();
    u.axpy(h / 6.0, &k1);
    u.axpy(h / 3.0, &k2);
    u.axpy(h / 3.0, &k3);
    u.axpy(h / 6.0, &k4);
    finite_or_blowup(s, State::new(s.t + h, u, s.model))
}

/// Either scheme behind one interface.
#[derive(Clone, Debug)]
pub enum Stepper {
    Imex(ImexEuler),
    Rk4 { h: f64 },
}

impl Stepper {
    pub fn new(cfg: &StepperConfig, model: ModelSpec, grid: Grid) -> Result<Self> {
        cfg.total_steps()?;
        match cfg.scheme {
            Scheme::ImexEuler => Ok(Stepper::Imex(ImexEuler::new(model, grid, cfg.h)?)),
            Scheme::Rk4 => {
                model.validate()?;
                Ok(Stepper::Rk4 { h: cfg.h })
            }
        }
    }

    pub fn step(&self, s: &State) -> Result<State> {
        match self {
            Stepper::Imex(e) => e.step(s),
            Stepper::Rk4 { h } => rk4_step(s, *h),
        }
    }
}

fn finite_or_blowup(prev: &State, next: State) -> Result<State> {
    if next.u.is_finite() {
        Ok(next)
    } else {
        Err(blowup(prev, None, 0))
    }
}

fn blowup(last: &State, before: Option<&State>, step: u64) -> Error {
    let (fastest_mode, fastest_growth) = match before {
        Some(b) => fastest_growing_mode(&b.u, &last.u),
        None => largest_mode(&last.u),
    };
    Error::BlowUp(Box::new(BlowUpReport {
        t: last.t,
        step,
        l2_norm: last.u.l2_norm(),
        h1_norm: last.u.sobolev_norm(1.0, false),
        fastest_mode,
        fastest_growth,
    }))
}

fn amplitude(u: &VectorField, l1: i64, l2: i64) -> f64 {
    u.u1.coeff(l1, l2).norm().hypot(u.u2.coeff(l1, l2).norm())
}

fn largest_mode(u: &VectorField) -> ((i64, i64), f64) {
    let g = u.grid();
    g.modes()
        .map(|(a, b)| ((a, b), amplitude(u, a, b)))
        .filter(|(_, v)| v.is_finite())
        .fold(((0, 0), 0.0), |best, cur| if cur.1 > best.1 { cur } else { best })
}

/// Mode with the largest amplitude ratio `|û_new| / |û_old|`.
pub fn fastest_growing_mode(old: &VectorField, new: &VectorField) -> ((i64, i64), f64) {
    let g = old.grid();
    let floor = 1e-300;
    g.modes()
        .filter_map(|(a, b)| {
            let o = amplitude(old, a, b);
            let n = amplitude(new, a, b);
            (o > floor && n.is_finite()).then(|| ((a, b), n / o))
        })
        .fold(((0, 0), 0.0), |best, cur| if cur.1 > best.1 { cur } else { best })
}

/// Sampling cadence of a run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunPlan {
    pub stepper: StepperConfig,
    /// Diagnostics every this many steps (and always at the final step).
    pub diag_every: u64,
    /// Snapshots every this many steps; 0 disables them.
    pub snap_every: u64,
}

/// Receives samples and snapshots as a run proceeds.
pub trait RunObserver {
    fn on_sample(&mut self, _state: &State, _record: &DiagnosticsRecord) -> Result<()> {
        Ok(())
    }

    fn on_snapshot(&mut self, _state: &State) -> Result<()> {
        Ok(())
    }
}

impl RunObserver for () {}

/// Observer that keeps every sampled state with its record.
#[derive(Clone, Debug, Default)]
pub struct Collect {
    pub samples: Vec<(State, DiagnosticsRecord)>,
}

impl RunObserver for Collect {
    fn on_sample(&mut self, state: &State, record: &DiagnosticsRecord) -> Result<()> {
        self.samples.push((state.clone(), *record));
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct RunSummary {
    pub final_state: State,
    pub last_record: Option<DiagnosticsRecord>,
    pub steps_taken: u64,
}

/// Advances `initial` to `plan.stepper.t_end`.
///
/// Step indices continue from `round(t₀/h)`, so times are `k·h` and a resumed
/// run samples at the same instants as an uninterrupted one. The initial state
/// is sampled only when `sample_initial` is set.
pub fn run(
    plan: &RunPlan,
    initial: State,
    monitor: &mut Monitor,
    observer: &mut dyn RunObserver,
    sample_initial: bool,
) -> Result<RunSummary> {
    let cfg = &plan.stepper;
    let total = cfg.total_steps()?;
    if plan.diag_every == 0 {
        return Err(Error::Stepper("diag_every must be at least 1".into()));
    }
    let stepper = Stepper::new(cfg, initial.model, initial.u.grid())?;
    let h = cfg.h;
    let k0 = (initial.t / h).round() as u64;
    if k0 > total {
        return Err(Error::Stepper(format!(
            "start time {} lies beyond t_end = {}",
            initial.t, cfg.t_end
        )));
    }

    let mut state = initial;
    state.t = k0 as f64 * h;
    let mut last_record = None;
    if sample_initial {
        let rec = monitor.sample(&state)?;
        observer.on_sample(&state, &rec)?;
        last_record = Some(rec);
    }
    let mut previous: Option<State> = None;
    for k in k0 + 1..=total {
        let sample = k % plan.diag_every == 0 || k == total;
        let snap = plan.snap_every > 0 && (k % plan.snap_every == 0 || k == total);
        let mut next = match stepper.step(&state) {
            Ok(s) => s,
            Err(Error::BlowUp(_)) => return Err(blowup(&state, previous.as_ref(), k)),
            Err(e) => return Err(e),
        };
        next.t = k as f64 * h;
        if cfg.safety_checks && !(next.u.max_abs_coeff() < BLOWUP_AMPLITUDE) {
            return Err(blowup(&state, previous.as_ref(), k));
        }
        previous = Some(std::mem::replace(&mut state, next));
        if sample {
            let rec = monitor.sample(&state)?;
            observer.on_sample(&state, &rec)?;
            last_record = Some(rec);
        }
        if snap {
            observer.on_snapshot(&state)?;
        }
    }
    Ok(RunSummary {
        final_state: state,
        last_record,
        steps_taken: total - k0,
    })
}
