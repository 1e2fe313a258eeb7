//! Quasi-cyclic linear error-block (QC-LEB) codes over prime fields.
//!
//! The crate is `no_std` and only needs an allocator. File IO, benches and the
//! command-line frontend live in the companion `qcleb` crate.

#![no_std]

extern crate alloc;

pub mod decoder;
pub mod error;
pub mod galois;
pub mod lebcode;
pub mod linalg;
pub mod qcleb;
pub mod sigscheme;
pub mod starring;

pub use error::{Error, Result};
pub use galois::{Ctx, FieldPoly, FieldScalar};
pub use lebcode::{LebWord, Partition, PiCyclicCode};
pub use linalg::{Matrix, RowSpace};
pub use qcleb::{BlockCirculant, QCLebCode};

/// Default cap on exhaustive scans (number of enumerated vectors).
pub const DEFAULT_BUDGET: u64 = 1 << 20;

/// Cap on the codeword scan that sets the decoding radius at construction;
/// larger codes start with t = 0 and take an explicit radius.
pub const RADIUS_SCAN_BUDGET: u64 = 1 << 16;
