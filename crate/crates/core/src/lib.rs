//! Mixed qubit/qutrit circuit simulation and verification.
//!
//! Subsystems:
//! - [`register`], [`state`], [`unitary`], [`density`]: dense simulation of
//!   small registers of qubits and qutrits (state vectors, unitaries,
//!   density operators, partial trace, channels).
//! - [`gates`]: the gate library (qutrit subspace and cyclic flips, the
//!   qutrit Fourier gate, controlled phase/sum, conditioned subspace flips,
//!   error rotations, qubit Clifford+T).
//! - [`circuit`]: ordered gate sequences with role annotations, embedding,
//!   depth, and a text serialization.
//! - [`catalog`]: the library of doubly-controlled-NOT constructions on
//!   qutrit registers, their incomplete variants, and the plain-qubit
//!   reference construction.
//! - [`verify`]: equivalence checking, incomplete-variant checking, and the
//!   intermediate |2>-occupancy cost metric.
//! - [`qec`]: the measurement-free three-qutrit repetition-code protocol
//!   with data-driven ancilla reset.
//! - [`timing`]: cycle-time budgets and derived rates for the protocol.

pub mod catalog;
pub mod circuit;
pub mod density;
pub mod error;
pub mod gates;
pub mod qec;
pub mod register;
pub mod state;
pub mod timing;
pub mod tolerance;
pub mod unitary;
pub mod verify;

pub use error::{Error, Result};
pub use tolerance::Tolerances;
