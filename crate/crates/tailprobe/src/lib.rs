//! File formats, experiment replication, reports and the command-line
//! driver around [`tailprobe_core`].

#![deny(unsafe_code)]
#![warn(missing_docs)]

pub mod cli;
mod error;
pub mod harness;
pub mod io;
pub mod report;

pub use error::{Error, Result};
pub use tailprobe_core as core;
