//! Pseudo-spectral laboratory for the 2D Kuramoto–Sivashinsky family on the
//! periodic box `[0, 2π)²`.
//!
//! Fields are stored as Fourier coefficients ([`SpectralField`],
//! [`VectorField`]); every quadratic product is dealiased by zero padding.
//! [`models`] holds the equation catalog, [`timestep`] the semi-implicit Euler
//! and RK4 integrators with the run loop, [`diagnostics`] the monitored
//! regularity quantities, and [`harness`] configuration, persistence and sweeps.

pub mod calculus;
pub mod diagnostics;
pub mod error;
pub mod harness;
pub mod models;
pub mod spectral;
pub mod timestep;

pub use calculus::PointSet;
pub use error::{BlowUpReport, Error, Result};
pub use models::{ModelKind, ModelSpec, Nonlinearity};
pub use spectral::{dealiased_product, Grid, SpectralField, VectorField};
pub use diagnostics::{DiagnosticsRecord, Monitor, MonitorParams, ParticleRecord};
pub use timestep::{RunPlan, Scheme, State, StepperConfig};
pub use harness::{InitSpec, RunConfig};
