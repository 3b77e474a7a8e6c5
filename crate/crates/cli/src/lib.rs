//! Sweeps, figure presets and critical-point search over the diamond chain.

pub mod config;
pub mod critical;
pub mod error;
pub mod observables;
pub mod presets;
pub mod sweep;

pub use critical::{find_critical, CriticalKind};
pub use error::{CliError, Result};
pub use observables::{parse_observables, Model, Observable, Quantity};
pub use presets::{preset, PresetCurve, PRESET_NAMES};
pub use sweep::{run_sweep, Axis, SweepSpec};
