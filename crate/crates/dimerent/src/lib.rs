//! Thermal entanglement of spin-1/2 Heisenberg dimers in a z-axis magnetic field.
//!
//! The model is a pair of exchange-coupled spins with Hamiltonian
//! `H = -J S1.S2 - g mu_B B (S1z + S2z)`, expressed throughout in reduced
//! Kelvin units: the coupling `J/k_B` and the field `g mu_B B / k_B` are both
//! temperatures. At thermal equilibrium the Gibbs state of an
//! antiferromagnetic dimer (`J < 0`) is entangled below a decoherence
//! temperature `T_c = -J/(k_B ln 3)` that does not depend on the field, and
//! the amount of entanglement is measured by the Hilbert-Schmidt distance to
//! the nearest separable state of the same family.
//!
//! Module map:
//!
//! * [`smalllin`] - dense 4x4 symmetric linear algebra (Jacobi eigensolver,
//!   Kronecker products, matrix functions).
//! * [`dimer`] - model parameters, Hamiltonian assembly, analytic spectrum,
//!   Tesla/Kelvin field conversion.
//! * [`thermal`] - partition function and Gibbs density matrix, in closed
//!   form and through a spectral-decomposition oracle.
//! * [`entanglement`] - Peres-Horodecki test, decoherence temperature,
//!   distance measure, field regimes, low-temperature limits, strong-field
//!   peak location.
//! * [`oracle`] - brute-force verifiers (grid minimization, Wootters
//!   concurrence) and the self-check suite behind `dimerent verify`.
//! * [`sweep`] - deterministic parameter grids, figure presets, CSV output.
//! * [`cli`] - the `dimerent` command-line interface.
//!
//! Runnable walkthroughs live in `examples/`; each major capability has one.
//! Start with `cargo run --example thermal_state`.

pub mod cli;
pub mod dimer;
pub mod entanglement;
mod numfmt;
pub mod oracle;
pub mod smalllin;
pub mod sweep;
pub mod thermal;

pub use dimer::{DimerParams, FieldSpec};
pub use entanglement::{EntanglementResult, Regime};
pub use thermal::{DensityMatrix, ThermalPoint};
