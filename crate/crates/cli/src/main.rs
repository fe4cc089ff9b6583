mod args;
mod commands;
mod input;

use std::process::ExitCode;

use clap::Parser;

pub mod exit {
    pub const OK: u8 = 0;
    /// The check ran and failed: violations found, certificate satisfiable,
    /// search budget exhausted.
    pub const FAILED: u8 = 1;
    /// Bad input: unreadable file, schema violation, invalid parameters.
    pub const USAGE: u8 = 2;
    /// Non-orderability proved; certificate written.
    pub const NO_ORDER: u8 = 10;
    pub const INTERNAL: u8 = 70;
}

fn main() -> ExitCode {
    let cli = match args::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                exit::USAGE
            } else {
                exit::OK
            });
        }
    };
    let code = match std::panic::catch_unwind(|| commands::dispatch(&cli)) {
        Ok(Ok(code)) => code,
        Ok(Err(e)) => {
            eprintln!("circord: {e}");
            e.exit_code()
        }
        Err(_) => {
            eprintln!("circord: internal error");
            exit::INTERNAL
        }
    };
    ExitCode::from(code)
}
