mod args;
mod commands;
mod parse;
mod report;

use std::process::ExitCode;

use clap::error::{ContextKind, ContextValue, ErrorKind};
use clap::Parser;
use serde_json::Value;
use symtwist::Execution;

use args::{Cli, Command};
use report::{Diagnostic, Envelope, Outcome};

fn config(command: &Command) -> Value {
    let v = match command {
        Command::ValidateAlgebra(a) => serde_json::to_value(a),
        Command::Rmatrix(a) => serde_json::to_value(a),
        Command::Admissible(a) => serde_json::to_value(a),
        Command::Deform(a) => serde_json::to_value(a),
        Command::Volume(a) => serde_json::to_value(a),
        Command::Grassmann(a) => serde_json::to_value(a),
        Command::Sweep(a) => serde_json::to_value(a),
    };
    v.expect("config serializes")
}

fn csv_path(command: &Command) -> Option<&std::path::PathBuf> {
    match command {
        Command::Admissible(a) => a.csv.as_ref(),
        Command::Deform(a) => a.csv.as_ref(),
        Command::Sweep(a) => a.target.csv(),
        _ => None,
    }
}

fn run(cli: &Cli) -> Result<Option<bool>, Diagnostic> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let outcome: Outcome = match &cli.command {
        Command::ValidateAlgebra(a) => commands::validate(a)?,
        Command::Rmatrix(a) => commands::rmatrix(a)?,
        Command::Admissible(a) => commands::admissible(a, exec)?,
        Command::Deform(a) => commands::deform(a, exec)?,
        Command::Volume(a) => commands::volume(a)?,
        Command::Grassmann(a) => commands::grassmann(a, exec)?,
        Command::Sweep(a) => commands::sweep(&a.target, exec)?,
    };
    if let (Some(path), Some(table)) = (csv_path(&cli.command), &outcome.table) {
        report::write_csv(table, path)?;
    }
    let envelope = Envelope {
        tool: report::TOOL,
        version: report::VERSION,
        command: cli.command.name(),
        config: config(&cli.command),
        tolerance: outcome.tolerance,
        result: &outcome.result,
        verdict: outcome.verdict,
    };
    report::write_json(&envelope, cli.out.as_deref())?;
    Ok(outcome.verdict)
}

fn usage_diagnostic(e: &clap::Error) -> Diagnostic {
    let field = match e.get(ContextKind::InvalidArg) {
        Some(ContextValue::String(s)) => s
            .trim_start_matches('-')
            .split([' ', '='])
            .next()
            .unwrap_or("")
            .to_string(),
        _ if e.kind() == ErrorKind::InvalidSubcommand
            || e.kind() == ErrorKind::MissingSubcommand =>
        {
            "command".into()
        }
        _ => "arguments".into(),
    };
    let message = e.render().to_string();
    let first = message
        .lines()
        .next()
        .unwrap_or("")
        .trim_start_matches("error: ")
        .to_string();
    Diagnostic::new(field, first)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
            let _ = e.print();
            return ExitCode::from(2);
        }
        Err(e) => {
            eprintln!("{}", usage_diagnostic(&e).to_json());
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(Some(false)) => ExitCode::from(1),
        Ok(_) => ExitCode::SUCCESS,
        Err(d) => {
            eprintln!("{}", d.to_json());
            ExitCode::from(2)
        }
    }
}
