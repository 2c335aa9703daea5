use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use qic_cli::args::Cli;
use qic_cli::error::{EXIT_INPUT, EXIT_OK, EXIT_PROPERTY};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { EXIT_OK as u8 });
        }
    };
    let result = qic_cli::configure_threads().and_then(|_| qic_cli::run(cli));
    match result {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.stdout.as_bytes());
            ExitCode::from(if out.failed { EXIT_PROPERTY as u8 } else { EXIT_OK as u8 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
