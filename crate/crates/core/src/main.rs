use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use lefschetz::cli::{format_of, run, Cli};
use lefschetz::Error;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!(
                "{}",
                Error::Parse(e.to_string().trim().to_string()).to_json()
            );
            return ExitCode::from(1);
        }
    };
    match run(&cli).and_then(|out| out.render(format_of(&cli))) {
        Ok(s) => {
            let _ = std::io::stdout().write_all(s.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
