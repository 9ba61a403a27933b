//! Experiment harness, file formats and CLI for the `tidfd-core`
//! library: phantoms, noisy-data reconstruction runs, convergence-rate
//! studies, the undecimated-versus-decimated comparison, and validation
//! commands for frames and filters. Everything is driven by a JSON
//! config and writes CSV/JSON outputs that are byte-reproducible from
//! `(config, seed)`.

pub mod config;
pub mod error;
pub mod experiment;
pub mod io;
pub mod phantom;

pub use config::{BankChoice, ExperimentConfig, FilterChoice, PhantomKind};
pub use error::{CliError, CliResult};
