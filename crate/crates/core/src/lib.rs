//! Thermal entanglement and teleportation through a spin-1/2 Ising-Heisenberg
//! diamond chain carrying a single distorted plaquette.
//!
//! Each plaquette joins two Ising nodal spins by a Heisenberg dimer. Tracing
//! out the dimers leaves a two-state transfer matrix per plaquette, from
//! which the reduced density of the impurity dimer follows in closed form.

pub mod correlations;
pub mod density;
pub mod error;
pub mod oracle;
pub mod params;
pub mod spectra;
pub mod teleport;
pub mod transfer;

pub use correlations::{coherence_l1, concurrence_general, concurrence_x, C64};
pub use density::{host_density, impurity_density, DimerDensity};
pub use error::{Error, Result};
pub use params::{ChainParams, IsingPair};
pub use spectra::BlockSpectrum;
pub use teleport::{average_fidelity, fidelity, InputState, CLASSICAL_FIDELITY};
pub use transfer::{ChainSpectra, TransferData};
