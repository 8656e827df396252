//! File formats, verification orchestration and the command line for the
//! CP^(N-1) sigma-model toolkit.
//!
//! Everything numerical lives in `cpn-core`; this crate adds the seed
//! JSON schema, the verification and geometry reports (JSON/CSV, with
//! byte-deterministic formatting), surface mesh export and the `cpn`
//! binary with the `ladder`, `verify`, `geometry` and `surface`
//! subcommands.

pub mod complexfmt;
pub mod error;
pub mod geometry_report;
pub mod jsonfmt;
pub mod ladder_report;
pub mod mesh;
pub mod panel;
pub mod seed_io;
pub mod verify;

pub use error::CliError;

pub type Result<T> = std::result::Result<T, CliError>;
