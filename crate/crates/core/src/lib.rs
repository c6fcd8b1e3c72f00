//! Exact computation in the quantum matrix algebra `O(M_q(n))`: q-mutation
//! rewriting, the filtration tower, quantum minors, adjoint coactions and a
//! certifier for freeness over the invariant subalgebra.

pub mod coeff;
pub mod error;
pub mod filtration;
pub mod freealg;
pub mod hopf;
pub mod kostant;
pub mod mutation;
pub mod qminors;
pub mod suite;

pub use error::{Error, Result};
