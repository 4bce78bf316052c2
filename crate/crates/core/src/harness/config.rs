use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::diagnostics::{MonitorParams, DEFAULT_REFINE};
use crate::models::{ModelKind, ModelSpec};
use crate::timestep::{RunPlan, Scheme, StepperConfig};
use crate::{Error, Result};

use super::InitSpec;

/// Everything needed to reproduce one integration.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub model: ModelSpec,
    pub n: usize,
    pub h: f64,
    pub t_end: f64,
    pub scheme: Scheme,
    pub diag_every: u64,
    /// 0 disables periodic snapshots; the final state is always written.
    pub snap_every: u64,
    pub init: InitSpec,
    pub out_dir: PathBuf,
    pub monitor: MonitorParams,
    /// Universal constant in the castrated-model parameter constraints.
    pub c0: f64,
    pub safety_checks: bool,
}

const KEYS: &[&str] = &[
    "model",
    "lambda",
    "gamma",
    "c_star",
    "n_star",
    "alpha",
    "c0",
    "n",
    "h",
    "t_end",
    "scheme",
    "diag_every",
    "snap_every",
    "init",
    "amplitude",
    "k_max",
    "seed",
    "out_dir",
    "refine",
    "safety_checks",
];

fn uses_lambda(kind: ModelKind) -> bool {
    !matches!(kind, ModelKind::BurgersInviscid | ModelKind::BurgersHyper)
}

struct Entries<'a> {
    map: HashMap<&'a str, (usize, &'a str)>,
    origin: &'a str,
}

impl<'a> Entries<'a> {
    fn syntax(&self, line: usize, message: impl Into<String>) -> Error {
        Error::ConfigSyntax {
            path: self.origin.to_string(),
            line,
            message: message.into(),
        }
    }

    fn get<T: FromStr>(&self, key: &'static str) -> Result<Option<T>> {
        match self.map.get(key) {
            None => Ok(None),
            Some(&(line, raw)) => raw
                .parse()
                .map(Some)
                .map_err(|_| self.syntax(line, format!("cannot parse `{raw}` for key `{key}`"))),
        }
    }

    fn require<T: FromStr>(&self, key: &'static str) -> Result<T> {
        self.get(key)?.ok_or(Error::MissingKey(key))
    }

    fn or<T: FromStr>(&self, key: &'static str, default: T) -> Result<T> {
        Ok(self.get(key)?.unwrap_or(default))
    }
}

impl RunConfig {
    /// Parses `key = value` lines; `#` starts a comment. `origin` labels errors.
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut map = HashMap::new();
        let mut entries = Entries {
            map: HashMap::new(),
            origin,
        };
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let Some((k, v)) = body.split_once('=') else {
                return Err(entries.syntax(line, format!("expected `key = value`, found `{body}`")));
            };
            let (k, v) = (k.trim(), v.trim());
            if !KEYS.contains(&k) {
                return Err(entries.syntax(line, format!("unknown key `{k}`")));
            }
            if v.is_empty() {
                return Err(entries.syntax(line, format!("key `{k}` has no value")));
            }
            if map.insert(k, (line, v)).is_some() {
                return Err(entries.syntax(line, format!("duplicate key `{k}`")));
            }
        }
        entries.map = map;
        let e = &entries;

        let kind: ModelKind = {
            let (line, raw) = *e.map.get("model").ok_or(Error::MissingKey("model"))?;
            raw.parse().map_err(|_| e.syntax(line, format!("unknown model `{raw}`")))?
        };
        let lambda = if uses_lambda(kind) {
            e.require("lambda")?
        } else {
            e.or("lambda", 0.0)?
        };
        let model = ModelSpec::new(kind, lambda)
            .with_gamma(e.or("gamma", 2.0)?)
            .with_cutoff(e.or("c_star", 1.0)?, e.or("n_star", 1.0)?)
            .with_alpha(e.or("alpha", 0.0)?);

        let n: usize = e.require("n")?;
        let h: f64 = e.require("h")?;
        let t_end: f64 = e.require("t_end")?;
        let default_scheme = if kind == ModelKind::BurgersInviscid {
            Scheme::Rk4
        } else {
            Scheme::ImexEuler
        };
        let scheme = match e.map.get("scheme") {
            None => default_scheme,
            Some(&(line, raw)) => raw.parse().map_err(|_| e.syntax(line, format!("unknown scheme `{raw}`")))?,
        };

        let init_name: String = e.require("init")?;
        let amplitude = e.or("amplitude", 1.0)?;
        let init = if init_name == "random" {
            InitSpec::RandomCurlFree {
                k_max: e.require("k_max")?,
                amplitude,
                seed: e.or("seed", 0)?,
            }
        } else {
            InitSpec::Named {
                name: init_name,
                amplitude,
            }
        };

        let cfg = RunConfig {
            model,
            n,
            h,
            t_end,
            scheme,
            diag_every: e.or("diag_every", 10)?,
            snap_every: e.or("snap_every", 0)?,
            init,
            out_dir: e.or("out_dir", PathBuf::from("out"))?,
            monitor: MonitorParams {
                alpha: model.alpha,
                c_star: model.c_star,
                n_star: model.n_star,
                refine: e.or("refine", DEFAULT_REFINE)?,
            },
            c0: e.or("c0", 1.0)?,
            safety_checks: e.or("safety_checks", true)?,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads a config file; a relative `out_dir` is taken relative to the file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut cfg = Self::parse(&text, &path.display().to_string())?;
        if cfg.out_dir.is_relative() {
            if let Some(parent) = path.parent() {
                cfg.out_dir = parent.join(&cfg.out_dir);
            }
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.model.validate()?;
        crate::spectral::Grid::new(self.n)?;
        self.stepper().total_steps()?;
        if self.diag_every == 0 {
            return Err(Error::Config("diag_every must be at least 1".into()));
        }
        if self.snap_every > 0 && !self.snap_every.is_multiple_of(self.diag_every) {
            return Err(Error::Config(format!(
                "snap_every = {} must be a multiple of diag_every = {}",
                self.snap_every, self.diag_every
            )));
        }
        if self.monitor.refine == 0 {
            return Err(Error::Config("refine must be at least 1".into()));
        }
        Ok(())
    }

    pub fn stepper(&self) -> StepperConfig {
        StepperConfig {
            h: self.h,
            scheme: self.scheme,
            t_end: self.t_end,
            safety_checks: self.safety_checks,
        }
    }

    pub fn plan(&self) -> RunPlan {
        RunPlan {
            stepper: self.stepper(),
            diag_every: self.diag_every,
            snap_every: self.snap_every,
        }
    }

    /// Canonical text form, without `out_dir`, that parses back to the same run.
    pub fn to_text(&self) -> String {
        let m = &self.model;
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(s, "{k} = {v}");
        };
        kv("model", m.kind.name().into());
        kv("lambda", format!("{:?}", m.lambda));
        kv("gamma", format!("{:?}", m.gamma));
        kv("c_star", format!("{:?}", m.c_star));
        kv("n_star", format!("{:?}", m.n_star));
        kv("alpha", format!("{:?}", m.alpha));
        kv("c0", format!("{:?}", self.c0));
        kv("n", self.n.to_string());
        kv("h", format!("{:?}", self.h));
        kv("t_end", format!("{:?}", self.t_end));
        kv("scheme", self.scheme.name().into());
        kv("diag_every", self.diag_every.to_string());
        kv("snap_every", self.snap_every.to_string());
        match &self.init {
            InitSpec::Named { name, amplitude } => {
                kv("init", name.clone());
                kv("amplitude", format!("{amplitude:?}"));
            }
            InitSpec::RandomCurlFree { k_max, amplitude, seed } => {
                kv("init", "random".into());
                kv("k_max", format!("{k_max:?}"));
                kv("amplitude", format!("{amplitude:?}"));
                kv("seed", seed.to_string());
            }
        }
        kv("refine", self.monitor.refine.to_string());
        kv("safety_checks", self.safety_checks.to_string());
        s
    }
}
