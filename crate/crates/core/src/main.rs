use std::io::{Read, Write};
use std::process::ExitCode;

use clap::Parser;
use fuglede::cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = execute(&cli, || {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    });
    if code == 2 {
        eprintln!("{text}");
    } else {
        // A closed pipe downstream is not an error worth reporting.
        let _ = writeln!(std::io::stdout().lock(), "{}", text.trim_end());
    }
    ExitCode::from(code as u8)
}
