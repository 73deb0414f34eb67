//! Exact-arithmetic toolkit for Hamiltonian torus actions with discrete
//! (or component-wise described) fixed sets: dataset model and JSON I/O,
//! toric dataset generation, equivariant index characters by fixed-point
//! localization, partition-function counters, and machine verification of
//! the cancellation, lattice-membership, and half-space statements.

pub mod error;
pub mod exactalg;
pub mod fpdata;
pub mod localization;
pub mod partition;
pub mod theorems;

pub use error::{Error, Result};
