//! Lab bench, file formats and the command-line frontend for QC-LEB codes.

pub mod cli;
pub mod error;
pub mod io;
pub mod labbench;

pub use error::{Error, Result};
