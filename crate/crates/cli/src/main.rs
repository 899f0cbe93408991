use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use upg::commands::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe downstream is not an error of ours
            let _ = stdout.write_all(outcome.stdout.as_bytes()).and_then(|_| stdout.flush());
            if outcome.violations == 0 {
                ExitCode::SUCCESS
            } else {
                eprintln!("{} violation(s)", outcome.violations);
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
