//! File formats, deterministic JSON reports and command dispatch for `nakayama`.

pub mod commands;
pub mod fixtures;
pub mod format;
pub mod report;

pub use commands::{parse_args, run, CheckKind, Command, Functor, Outcome, RunConfig};
pub use format::{InputError, Loader, Source};
