//! Equilibrium thermodynamics of the conventional and regenerative quantum
//! Stirling cycle for working media with a finite spectrum.
//!
//! The four cycle endpoints are Gibbs states, so everything here is a
//! function of energy eigenvalues and inverse temperatures. The crate is
//! split into:
//!
//! - [`media`]: control parameters to spectra (single spin-1/2, flip-flop
//!   coupled spin pair, or a caller-supplied spectrum function).
//! - [`thermal`]: partition function, populations, energy, entropy, free
//!   energy and relative entropy between Gibbs states.
//! - [`cycle`]: heats, work, regenerator bookkeeping, regeneration cost,
//!   efficiencies, entropy production and second-law bounds.
//! - [`sweep`]: parameter grids, CSV rows and plot scripts.
//! - [`verify`]: property suites run over randomized and gridded inputs.

pub mod cycle;
pub mod error;
pub mod format;
pub mod media;
pub mod sweep;
pub mod thermal;
pub mod verify;

pub use cycle::{analyze, CostModel, CycleParams, CyclePoints, CycleReport, Mode, ReportFlag};
pub use error::{Error, Result};
pub use media::{MediumParams, Spectrum, WorkingMedium};
pub use sweep::{Knob, SweepRow, SweepSpec};
pub use thermal::ThermalState;
