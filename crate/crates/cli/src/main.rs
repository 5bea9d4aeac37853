use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use lra_cli::{run, step_cap_from_env, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match step_cap_from_env() {
        Ok(cap) => run(&cli, cap),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(outcome.code as u8)
}
