use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use wgfam_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((output, code)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(output.as_bytes()).and_then(|()| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("wgfam: {e}");
            ExitCode::from(2)
        }
    }
}
