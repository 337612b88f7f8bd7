//! Desk-scale cavity quantum electrodynamics.
//!
//! The crate covers the closed-form physics of a single emitter (an atom or a
//! semiconductor quantum dot) coupled to one optical cavity mode:
//!
//! * [`coupling`]: mode volume of a sampled field and the coupling rate `g`.
//! * [`jaynes_cummings`]: the lossless dressed-state ladder, Rabi oscillation,
//!   and the photon blockade / photon-induced tunneling frequencies.
//! * [`lossy`]: complex eigenfrequencies with cavity and emitter losses,
//!   regime classification, Rabi-split spectra, and a two-cavity
//!   "photonic molecule" coupled to one emitter.
//! * [`purcell`]: Purcell factor, density of optical states, β factor.
//! * [`laser`]: steady state of the two-variable laser rate equations.
//! * [`qdot`]: effective-mass quantum-dot levels, envelopes, and a Monte-Carlo
//!   first-order Coulomb shift.
//! * [`photon_stats`]: g²(0) of Fock mixtures and a Hanbury Brown–Twiss
//!   simulator used to cross-check it.
//! * [`cli`]: the `cqed` command-line surface (JSON config in, CSV/JSON out).
//!
//! All rates and frequencies are stored as angular frequencies in rad·s⁻¹.
//! Field decay rates (κ, γ) are amplitude rates; the corresponding energy
//! decay rates are 2κ and 2γ.

pub mod cli;
pub mod coupling;
pub mod error;
pub mod jaynes_cummings;
pub mod laser;
pub mod lossy;
pub mod photon_stats;
pub mod purcell;
pub mod qdot;
pub mod quantities;

mod numeric;

pub use error::{Error, Result};
pub use quantities::{AngularFrequency, Energy, PhysicalConstants};
