//! Configuration, initial data, on-disk artifacts and λ sweeps.
//!
//! A run directory holds `config.txt` (canonical copy of the settings),
//! `timeseries.csv`, `final.ks2d`, optional `snapshots/step_XXXXXXXX.ks2d`,
//! `report.txt`, and `blowup.txt` if the integration diverged.

mod config;
mod init;
pub mod snapshot;
pub mod timeseries;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use log::{info, warn};
use rayon::prelude::*;

pub use config::RunConfig;
pub use init::{build_initial, InitSpec, NAMED_FIELDS};
pub use snapshot::{read_snapshot, write_snapshot, Snapshot};
pub use timeseries::{read_timeseries, TimeSeriesWriter};

use crate::diagnostics::{criterion_report, CriterionReport, DiagnosticsRecord, Monitor};
use crate::models::{CastrateConstraints, ModelKind};
use crate::spectral::Grid;
use crate::timestep::{run, RunObserver, State};
use crate::{Error, Result};

/// Environment variable holding the sweep worker count.
pub const WORKERS_ENV: &str = "KS2D_WORKERS";

pub const CONFIG_FILE: &str = "config.txt";
pub const TIMESERIES_FILE: &str = "timeseries.csv";
pub const FINAL_FILE: &str = "final.ks2d";
pub const REPORT_FILE: &str = "report.txt";
pub const BLOWUP_FILE: &str = "blowup.txt";
pub const SNAPSHOT_DIR: &str = "snapshots";

/// Path of the periodic snapshot taken at step `k`.
pub fn snapshot_path(out_dir: &Path, step: u64) -> PathBuf {
    out_dir.join(SNAPSHOT_DIR).join(format!("step_{step:08}.ks2d"))
}

/// Evaluates the castrated-model parameter constraints and logs the verdict.
pub fn castrate_check(cfg: &RunConfig) -> Option<CastrateConstraints> {
    if cfg.model.kind != ModelKind::CastratedKse {
        return None;
    }
    let m = &cfg.model;
    let c = CastrateConstraints::evaluate(m.c_star, m.n_star, m.lambda, cfg.c0);
    if c.satisfied() {
        info!("cutoff constants satisfy the regularity constraints (c0 = {})", cfg.c0);
    } else {
        warn!(
            "cutoff constants violate the regularity constraints: c0/(C*^2 N*) = {:.4e} (limit 1/12), growth share {:.4e} (limit {:.4e}); running anyway",
            c.dissipation_share, c.growth_share, c.growth_limit
        );
    }
    Some(c)
}

struct DirObserver {
    out_dir: PathBuf,
    series: TimeSeriesWriter,
    h: f64,
    snapshots: bool,
}

impl RunObserver for DirObserver {
    fn on_sample(&mut self, _state: &State, record: &DiagnosticsRecord) -> Result<()> {
        self.series.append(record)
    }

    fn on_snapshot(&mut self, state: &State) -> Result<()> {
        if self.snapshots {
            let k = (state.t / self.h).round() as u64;
            write_snapshot(&snapshot_path(&self.out_dir, k), state.t, &state.u)?;
        }
        Ok(())
    }
}

/// Result of a completed run.
#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub final_state: State,
    pub report: CriterionReport,
}

fn drive(cfg: &RunConfig, initial: State, mut monitor: Monitor, series: TimeSeriesWriter, fresh: bool) -> Result<RunOutcome> {
    let out = &cfg.out_dir;
    if cfg.snap_every > 0 {
        fs::create_dir_all(out.join(SNAPSHOT_DIR))?;
    }
    let mut obs = DirObserver {
        out_dir: out.clone(),
        series,
        h: cfg.h,
        snapshots: cfg.snap_every > 0,
    };
    let result = run(&cfg.plan(), initial, &mut monitor, &mut obs, fresh);
    obs.series.flush()?;
    let records = read_timeseries(&out.join(TIMESERIES_FILE))?;
    match result {
        Ok(summary) => {
            let report = criterion_report(&records, false);
            write_snapshot(&out.join(FINAL_FILE), summary.final_state.t, &summary.final_state.u)?;
            fs::write(out.join(REPORT_FILE), report.to_string())?;
            let _ = fs::remove_file(out.join(BLOWUP_FILE));
            Ok(RunOutcome {
                final_state: summary.final_state,
                report,
            })
        }
        Err(Error::BlowUp(b)) => {
            let report = criterion_report(&records, true);
            fs::write(out.join(BLOWUP_FILE), format!("{b}\n\n{report}"))?;
            fs::write(out.join(REPORT_FILE), report.to_string())?;
            Err(Error::BlowUp(b))
        }
        Err(e) => Err(e),
    }
}

/// Integrates `cfg` from `t = 0`, writing all artifacts into `cfg.out_dir`.
pub fn run_to_dir(cfg: &RunConfig) -> Result<RunOutcome> {
    cfg.validate()?;
    castrate_check(cfg);
    let grid = Grid::new(cfg.n)?;
    let u0 = build_initial(&cfg.init, grid)?;
    fs::create_dir_all(&cfg.out_dir)?;
    fs::write(cfg.out_dir.join(CONFIG_FILE), cfg.to_text())?;
    let series = TimeSeriesWriter::create(&cfg.out_dir.join(TIMESERIES_FILE))?;
    let monitor = Monitor::new(cfg.model, cfg.monitor);
    info!("running {} on n = {} to t = {}", cfg.model.kind, cfg.n, cfg.t_end);
    drive(cfg, State::new(0.0, u0, cfg.model), monitor, series, true)
}

/// Continues a run from `snapshot`, truncating the time series after the
/// snapshot time and restoring the running integrals from that row.
pub fn resume(snapshot: &Path, cfg: &RunConfig) -> Result<RunOutcome> {
    cfg.validate()?;
    castrate_check(cfg);
    let snap = read_snapshot(snapshot)?;
    if snap.n != cfg.n {
        return Err(Error::Config(format!(
            "snapshot grid n = {} differs from configured n = {}",
            snap.n, cfg.n
        )));
    }
    let u = snap.to_field()?;
    let tol = 1e-9 * cfg.h;
    let (series, last) = TimeSeriesWriter::resume(&cfg.out_dir.join(TIMESERIES_FILE), snap.t, tol)?;
    let monitor = Monitor::resume(cfg.model, cfg.monitor, last);
    info!("resuming {} from t = {}", cfg.model.kind, snap.t);
    drive(cfg, State::new(snap.t, u, cfg.model), monitor, series, false)
}

/// Recomputes the criterion report of a run directory and writes `report.txt`.
pub fn report(out_dir: &Path) -> Result<CriterionReport> {
    let records = read_timeseries(&out_dir.join(TIMESERIES_FILE))?;
    let aborted = out_dir.join(BLOWUP_FILE).exists();
    let r = criterion_report(&records, aborted);
    fs::write(out_dir.join(REPORT_FILE), r.to_string())?;
    Ok(r)
}

#[derive(Clone, Debug, PartialEq)]
pub enum RunStatus {
    Ok,
    BlowUp,
    Failed(String),
}

impl RunStatus {
    pub fn label(&self) -> &'static str {
        match self {
            RunStatus::Ok => "ok",
            RunStatus::BlowUp => "blowup",
            RunStatus::Failed(_) => "failed",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepRow {
    pub lambda: f64,
    pub status: RunStatus,
    pub report: Option<CriterionReport>,
}

pub const SUMMARY_FILE: &str = "summary.csv";
pub const PLOT_DATA_FILE: &str = "time_avg_energy.dat";
pub const PLOT_SCRIPT_FILE: &str = "time_avg_energy.gp";

pub fn lambda_dir(out_dir: &Path, lambda: f64) -> PathBuf {
    out_dir.join(format!("lambda_{lambda}"))
}

/// Runs `base` once per λ, each in its own directory under `base.out_dir`,
/// on `workers` threads (all cores if `None`), then writes the summary table
/// and plot data.
pub fn sweep(base: &RunConfig, lambdas: &[f64], workers: Option<usize>) -> Result<Vec<SweepRow>> {
    if lambdas.is_empty() {
        return Err(Error::Config("the lambda list is empty".into()));
    }
    let mut lambdas = lambdas.to_vec();
    lambdas.sort_by(f64::total_cmp);
    lambdas.dedup();
    let configs = lambdas
        .iter()
        .map(|&lambda| {
            let mut c = base.clone();
            c.model.lambda = lambda;
            c.out_dir = lambda_dir(&base.out_dir, lambda);
            c.validate().map(|_| c)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        if w == 0 {
            return Err(Error::Config("worker count must be at least 1".into()));
        }
        builder = builder.num_threads(w);
    }
    let pool = builder.build().map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let rows: Vec<SweepRow> = pool.install(|| {
        configs
            .par_iter()
            .map(|c| {
                let (status, report) = match run_to_dir(c) {
                    Ok(o) => (RunStatus::Ok, Some(o.report)),
                    Err(Error::BlowUp(_)) => (RunStatus::BlowUp, report(&c.out_dir).ok()),
                    Err(e) => {
                        warn!("lambda = {} failed: {e}", c.model.lambda);
                        (RunStatus::Failed(e.to_string()), None)
                    }
                };
                SweepRow {
                    lambda: c.model.lambda,
                    status,
                    report,
                }
            })
            .collect()
    });
    write_summary(&base.out_dir, &rows)?;
    Ok(rows)
}

fn write_summary(out_dir: &Path, rows: &[SweepRow]) -> Result<()> {
    fs::create_dir_all(out_dir)?;
    let mut csv = String::from(
        "lambda,status,t_final,time_avg_energy,peak_l2_norm,int_div_plus,int_proj_div_plus,int_n_alpha_4\n",
    );
    let mut dat = String::from("# lambda time_avg_energy\n");
    for row in rows {
        let vals = match &row.report {
            Some(r) => [
                r.t_final,
                r.time_avg_energy,
                r.peak_l2,
                r.int_div_plus,
                r.int_proj_div_plus,
                r.int_n_alpha_4,
            ],
            None => [f64::NAN; 6],
        };
        let _ = write!(csv, "{:?},{}", row.lambda, row.status.label());
        for v in vals {
            let _ = write!(csv, ",{v:.16e}");
        }
        csv.push('\n');
        if row.status == RunStatus::Ok {
            let _ = writeln!(dat, "{:?} {:.16e}", row.lambda, vals[1]);
        }
    }
    fs::write(out_dir.join(SUMMARY_FILE), csv)?;
    fs::write(out_dir.join(PLOT_DATA_FILE), dat)?;
    fs::write(
        out_dir.join(PLOT_SCRIPT_FILE),
        format!(
            "set xlabel 'lambda'\nset ylabel 'time-averaged |u|^2'\nset key off\nplot '{PLOT_DATA_FILE}' using 1:2 with linespoints\n"
        ),
    )?;
    Ok(())
}
