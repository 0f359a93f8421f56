//! Dense statevector laboratory for the state efficient ansatz (SEA).
//!
//! The crate is organised bottom-up:
//!
//! * [`qstate`]: statevectors, gates, Haar sampling, Schmidt decomposition.
//! * [`ansatz`]: ALT, random-circuit and SEA builders plus the exact
//!   constructive SEA that prepares a given target state.
//! * [`hamiltonian`]: real-weighted Pauli sums, the Heisenberg ring and a
//!   plain-text Hamiltonian file format.
//! * [`vqe`]: cost function, gradients and the gradient-descent loop.
//! * [`moments`]: frame potentials, second moments and the local twirl.

pub mod ansatz;
pub mod error;
pub mod hamiltonian;
pub mod moments;
pub mod qstate;
pub mod rng;
pub mod vqe;

pub use error::{Error, Result};

/// Complex amplitude type used throughout the crate.
pub type C64 = num_complex::Complex64;

/// Dense complex matrix used for operators that are not unitaries or states.
pub type CMatrix = nalgebra::DMatrix<C64>;
