//! `holomap`: command-line front end to the wavelet holographic mapping.

mod cli;
mod commands;
mod config;
mod error;
mod table;
mod verify;

use clap::error::ErrorKind;
use clap::Parser;
use std::ffi::OsString;
use std::io::Write;
use std::process::ExitCode;

use cli::Cli;
use commands::Outcome;
use config::RunConfig;
use error::CliError;

/// Accepts the single-dash spelling `-m0` for the mass flag.
fn normalize_args(args: impl Iterator<Item = OsString>) -> Vec<OsString> {
    args.map(|a| match a.to_str() {
        Some("-m0") => OsString::from("--m0"),
        Some(s) if s.starts_with("-m0=") => OsString::from(format!("--m0={}", &s[4..])),
        _ => a,
    })
    .collect()
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("HOLOMAP_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Validation(format!("HOLOMAP_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Validation(e.to_string()))
}

fn emit(outcome: &Outcome, cfg: &RunConfig) -> Result<(), CliError> {
    match &cfg.out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            for a in &outcome.artifacts {
                let path = dir.join(&a.name);
                std::fs::write(&path, &a.body)?;
                eprintln!("wrote {}", path.display());
            }
        }
        None => {
            let mut out = std::io::stdout().lock();
            let written = outcome
                .artifacts
                .iter()
                .filter(|a| a.stdout)
                .try_for_each(|a| out.write_all(a.body.as_bytes()))
                .and_then(|_| out.flush());
            match written {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
                _ => {}
            }
        }
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<bool, CliError> {
    configure_threads()?;
    let cfg = RunConfig::resolve(&cli.run)?;
    let outcome = commands::run(&cli.command, &cfg)?;
    emit(&outcome, &cfg)?;
    Ok(outcome.failed)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse_from(normalize_args(std::env::args_os())) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            return ExitCode::from(if informational { 0 } else { 1 });
        }
    };
    match dispatch(&cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => {
            eprintln!("holomap: one or more checks failed");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("holomap: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
