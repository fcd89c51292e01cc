use std::process::ExitCode;

use clap::Parser;
use geoquant::config::Cli;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(geoquant::EXIT_CONFIG)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    geoquant::main_with(&cli)
}
