use std::process::ExitCode;

use clap::Parser;
use unitdisk::cli::{execute, RunConfig};

fn main() -> ExitCode {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let report = execute(&config);
    if let Some(msg) = &report.message {
        eprintln!("{msg}");
    }
    ExitCode::from(report.status.code() as u8)
}
