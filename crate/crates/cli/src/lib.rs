//! Library behind the `qic` binary: argument grammar, subcommands, output
//! formatting and the property suites.

pub mod args;
pub mod commands;
pub mod error;
pub mod output;
pub mod suites;

pub use commands::{run, Outcome};
pub use error::{CliError, CliResult};

/// Caps the rayon pool at `QIC_THREADS` when the variable is set.
pub fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("QIC_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Input(format!("QIC_THREADS must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Input(format!("cannot configure thread pool: {e}")))
}
