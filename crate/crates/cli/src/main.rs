use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use cornering_cli::{render, run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    let outcome = run(&cli);
    if let Some(report) = &outcome.report {
        let _ = std::io::stdout().write_all(render(report, &cli.global).as_bytes());
    }
    if let Some(e) = &outcome.error {
        eprintln!("error: {e}");
    }
    ExitCode::from(outcome.exit_code() as u8)
}
