//! Wave-mechanics toolkit.
//!
//! * [`constants`], [`grid`], [`wavefunction`], [`spectral`]: shared substrate.
//! * [`gate`]: substitutes traveling waves into candidate equations and keeps
//!   the one whose coefficient is wavenumber-independent.
//! * [`evolve`], [`potential`], [`double_slit`]: time evolution.
//! * [`observe`]: Born-rule probabilities, expectation values, momentum eigenfunctions.
//! * [`oldquantum`]: photon energy, photoelectric effect, Bohr model, Rydberg lines.

// `!(x > 0.0)` guards are deliberate: they reject NaN too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod double_slit;
pub mod error;
pub mod evolve;
pub mod gate;
pub mod grid;
pub mod observe;
pub mod oldquantum;
pub mod potential;
pub mod spectral;
pub mod wavefunction;

pub use constants::{Constants, UnitSystem};
pub use error::{Error, Result};
pub use evolve::{evolve, InitialState, Propagator, Scheme, SimConfig, Trajectory};
pub use grid::{Grid, SpatialGrid, SpatialGrid2D};
pub use observe::ObservableReport;
pub use potential::{build_potential, Potential, PotentialSpec};
pub use wavefunction::WaveFunction;

pub use num_complex::Complex64;

/// Version of this crate, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
