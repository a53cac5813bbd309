mod cli;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use cli::{Cli, Command};

fn run(cli: &Cli) -> Result<(), (u8, String)> {
    let (result, common) = match &cli.command {
        Command::ApproxConst(a) => (commands::approx_const(a), &a.common),
        Command::Spectrum(a) => (commands::spectrum(a), &a.common),
        Command::Height(a) => (commands::height(a), &a.common),
        Command::Penetration(a) => (commands::penetration(a), &a.common),
        Command::DualityCheck(a) => (commands::duality_check(a), &a.common),
        Command::ClosureReport(a) => (commands::closure_report(a), &a.common),
    };
    let out = result.map_err(|e| (if e.is_domain() { 2 } else { 1 }, e.to_string()))?;
    let text = out.render(common.format).map_err(|e| (1, e))?;
    match &common.out {
        Some(path) => std::fs::write(path, text).map_err(|e| (1, format!("{}: {e}", path.display()))),
        None => match std::io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err((1, e.to_string())),
            _ => Ok(()),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

