//! Cellular automata engine and verification toolkit.

pub mod circuit;
pub mod cli;
pub mod config;
pub mod constructions;
pub mod engine;
pub mod error;
pub mod decision;
pub mod freezing;
pub mod intrinsic;
pub mod io;
pub mod limits;
pub mod phi;
pub mod rule;

pub use config::{BiPeriodicConfig, Config, FinitePattern, PeriodicConfig};
pub use error::{CaError, Result};
pub use limits::Limits;
pub use rule::{CaRule, Offset, State};
