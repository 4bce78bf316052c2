use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("grid size {0} is invalid: need an even number of points per axis, at least 8")]
    GridSize(usize),

    #[error("expected {expected} samples for the grid, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("fields live on different grids ({0} vs {1} points per axis)")]
    GridMismatch(usize, usize),

    #[error("negative-order operator of order {kappa} applied to a field with nonzero mean {mean:e}")]
    NonZeroMean { kappa: f64, mean: f64 },

    #[error("vector field is not curl-free: max |curl| = {curl:e}")]
    NotCurlFree { curl: f64 },

    #[error("invalid model parameters: {0}")]
    InvalidModel(String),

    #[error("implicit multiplier 1 - h*sigma = {value:e} is not positive at mode ({l1}, {l2})")]
    ImplicitMultiplier { l1: i64, l2: i64, value: f64 },

    #[error("{0}")]
    BlowUp(Box<BlowUpReport>),

    #[error("invalid stepper settings: {0}")]
    Stepper(String),

    #[error("{path}:{line}: {message}")]
    ConfigSyntax {
        path: String,
        line: usize,
        message: String,
    },

    #[error("config key `{0}` is required but missing")]
    MissingKey(&'static str),

    #[error("invalid config: {0}")]
    Config(String),

    #[error("invalid initial condition: {0}")]
    InitialCondition(String),

    #[error("snapshot {path}: {message}")]
    Snapshot { path: PathBuf, message: String },

    #[error("time series {path}: {message}")]
    TimeSeries { path: PathBuf, message: String },

    #[error("nonuniform sample spacing: {0}")]
    NonuniformSamples(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by the user's configuration rather than by numerics or IO.
    pub fn is_config_error(&self) -> bool {
        matches!(
            self,
            Error::GridSize(_)
                | Error::InvalidModel(_)
                | Error::ImplicitMultiplier { .. }
                | Error::Stepper(_)
                | Error::ConfigSyntax { .. }
                | Error::MissingKey(_)
                | Error::Config(_)
                | Error::InitialCondition(_)
        )
    }
}

/// Details recorded when an integration produces non-finite coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct BlowUpReport {
    /// Time of the last finite state.
    pub t: f64,
    /// Step index at which the non-finite state appeared.
    pub step: u64,
    pub l2_norm: f64,
    pub h1_norm: f64,
    /// Wavevector whose amplitude grew fastest over the last finite step.
    pub fastest_mode: (i64, i64),
    pub fastest_growth: f64,
}

impl std::fmt::Display for BlowUpReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "numerical blow-up after t = {} (step {}): |u|_L2 = {:e}, |u|_H1 = {:e}, fastest mode ({}, {}) grew by {:e}",
            self.t,
            self.step,
            self.l2_norm,
            self.h1_norm,
            self.fastest_mode.0,
            self.fastest_mode.1,
            self.fastest_growth
        )
    }
}
