mod cli;

use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let args = cli::Cli::parse();
    match cli::run(&args) {
        Ok(outcome) => {
            let mut out = std::io::stdout().lock();
            match cli::emit(&mut out, &outcome) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    eprintln!("cayley2: {e}");
                    return ExitCode::from(cli::EXIT_FAILED);
                }
                _ => {}
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("cayley2: {e}");
            ExitCode::from(cli::EXIT_USAGE)
        }
    }
}
