//! Simulation of multi-qubit states evolving under a local PT-symmetric
//! Hamiltonian `H = σx + i r σz`, and of the total, local and global
//! relative-entropy coherence along the way.
//!
//! The non-unitary evolution is available two ways: directly, as a
//! normalized closed-form propagator ([`pt::evolve_local`]), and as an
//! ancilla circuit with postselection ([`dilation::run_dilation`]). The two
//! agree to round-off, which the test suite checks over a wide grid.
//!
//! Qubit 0 is the most significant bit of a basis index throughout.
//!
//! ```
//! use ptcoh::{coherence::coherence_triple, pt::evolve_local, state::{make_state, StateFamily}};
//!
//! let bell = make_state(StateFamily::bell());
//! let later = evolve_local(&bell, 0, 1.4, 2.0).unwrap();
//! let c = coherence_triple(&later).unwrap();
//! assert!((c.c_total - (c.c_global + c.c_local)).abs() < 1e-9);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod coherence;
pub mod dilation;
pub mod error;
pub mod linalg;
pub mod pt;
pub mod state;
pub mod sweep;
pub mod tomography;

pub use error::{Error, Result};
