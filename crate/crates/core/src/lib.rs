//! Statevector simulation of Grover search over an explicit classical database.
//!
//! The search space is a real database of `2^n` records of `m` bits each,
//! compiled into a quantum memory circuit (`LOAD`) built from mixed-polarity
//! multi-controlled X gates. The oracle compares the loaded record against a
//! target string via phase kickback, and a second `LOAD` restores the data
//! register, so each Grover iteration costs two memory queries.
//!
//! The crate is `no_std` (with `alloc`); file IO, the CLI, and JSON reporting
//! live in the companion `qgrover-cli` crate.
//!
//! Module map:
//! - [`statevec`]: dense amplitude array, gate kernels, marginals, sampling
//! - [`circuit`]: immutable gate IR, unitary extraction, gate statistics,
//!   classical constant folding
//! - [`qasm`]: OpenQASM 3 export/import for the supported gate subset
//! - [`qmem`]: database model, text format, memory circuit compiler
//! - [`oracle`]: comparator and double-query oracle block
//! - [`grover`]: initialization, diffusion, search loop, run reports
//! - [`verify`]: independent brute-force and closed-form checks

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod circuit;
pub mod error;
pub mod grover;
pub mod oracle;
pub mod qasm;
pub mod qmem;
pub mod statevec;
pub mod verify;

pub use circuit::{Circuit, Gate, GateStats, Polarity, Unitary};
pub use error::{Error, Result};
pub use grover::{Iterations, RunReport, SearchOptions};
pub use qmem::{Database, QubitLayout};
pub use statevec::{RegisterSlice, StateVector};

/// Amplitudes are pairs of 64-bit floats.
pub type Complex = num_complex::Complex64;
