mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;
use output::{error_json, CliError, EXIT_ERROR};

fn wants_json() -> bool {
    std::env::args().any(|a| a == "--json")
}

fn emit_error(command: &str, err: &CliError, json: bool) -> ExitCode {
    if json {
        println!("{}", error_json(command, err));
    } else {
        eprintln!("error [{}]: {}", err.code(), err.message());
    }
    ExitCode::from(EXIT_ERROR as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            ErrorKind::InvalidSubcommand => {
                let name = std::env::args().skip(1).find(|a| !a.starts_with('-')).unwrap_or_default();
                return emit_error("", &CliError::UnknownCommand(name), wants_json());
            }
            _ => {
                if !wants_json() {
                    let _ = e.print();
                    return ExitCode::from(EXIT_ERROR as u8);
                }
                let msg = e.render().to_string().lines().next().unwrap_or("").to_string();
                return emit_error("", &CliError::Usage(msg), true);
            }
        },
    };
    let name = cli.command.name();
    match commands::run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", report.to_json(name));
            } else {
                for w in &report.warnings {
                    eprintln!("WARNING: {w}");
                }
                for line in &report.text {
                    println!("{line}");
                }
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => emit_error(name, &e, cli.json),
    }
}
