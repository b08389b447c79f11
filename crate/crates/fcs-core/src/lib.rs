//! Finite-dimensional laboratory for translation-invariant quantum spin-chain
//! states generated by Kraus (Popescu) systems.
//!
//! A system is a family `v_1..v_d` of complex `k×k` matrices with
//! `Σ v_k v_k* = 1`. It induces a translation-invariant state on the spin
//! chain through `ω(e^{i_1}_{j_1} ⊗ ... ⊗ e^{i_n}_{j_n}) = φ₀(v_I v_J*)`,
//! where `φ₀ = Tr(ρ ·)` is a stationary faithful state of the transfer map.
//! This crate evaluates that state, constructs the modular (Tomita–Takesaki)
//! data of the generated algebra together with the dual Kraus family, and
//! certifies ergodicity, gauge symmetry, purity, lattice symmetry, reality,
//! detailed balance and SU(2) covariance, with exact-diagonalization
//! cross-checks for the XY / Heisenberg / AKLT model zoo.

pub mod error;
pub mod mat;
pub mod word;
pub mod popescu;
pub mod modular;
pub mod spectra;
pub mod symmetry;
pub mod su2;
pub mod ed;
pub mod models;
pub mod zoo;
pub mod jsonfmt;
pub mod report;

pub use error::{FcsError, Result};
pub use mat::{CMat, CVec, C64};
pub use popescu::{ChainState, PopescuSystem, StationaryData, Superoperator};
