//! Command-line front end: graph files, set function tokens, generators and
//! self-verifying reports.

pub mod args;
pub mod assess;
pub mod commands;
pub mod error;
pub mod funcspec;
pub mod gen;
pub mod graphfile;
pub mod report;

use std::ffi::OsString;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command, Format};
use commands::{dispatch, verify, Context};
use report::{Certificate, Report, Status, VERSION};

pub struct Outcome {
    /// `None` when clap printed help or version text.
    pub report: Option<Report>,
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn error_report(command: Vec<String>, seed: u64, message: String, started: Instant) -> Report {
    Report {
        command,
        verdict: Status::Error,
        summary: Vec::new(),
        properties: Vec::new(),
        certificate: None,
        error: Some(message),
        version: VERSION.into(),
        seed,
        elapsed_ms: started.elapsed().as_millis() as u64,
    }
}

fn render(report: Report, format: Format) -> Outcome {
    let stdout = match format {
        Format::Human => report.human(),
        Format::Structured => report.structured(),
    };
    let stderr = report.error.as_ref().map(|e| format!("error: {e}\n")).unwrap_or_default();
    Outcome { code: report.exit_code(), report: Some(report), stdout, stderr }
}

/// Runs one command line, `argv[0]` being the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let started = Instant::now();
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let command: Vec<String> = argv.iter().skip(1).map(|s| s.to_string_lossy().into_owned()).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return Outcome { report: None, stdout: e.to_string(), stderr: String::new(), code: 0 };
        }
        Err(e) => {
            let report = error_report(command, 0, e.to_string().trim_end().to_string(), started);
            return render(report, Format::Structured);
        }
    };
    let ctx = Context { seed: cli.seed, budget: cli.budget, force: cli.force };
    let seed = cli.seed.unwrap_or(0);
    let result = match &cli.command {
        Command::Verify(a) => verify(a),
        other => dispatch(other, &ctx),
    };
    let report = match result.and_then(|b| assess::assess(&b.certificate).map(|(status, props)| (b, status, props))) {
        Ok((b, status, properties)) => {
            let failed: Vec<&str> = properties.iter().filter(|p| !p.holds).map(|p| p.name.as_str()).collect();
            let self_check = matches!(b.certificate, Certificate::Verify { .. });
            let (verdict, error) = if failed.is_empty() || self_check {
                (status, None)
            } else {
                (Status::Error, Some(format!("certificate failed re-verification: {}", failed.join("; "))))
            };
            Report {
                command,
                verdict,
                summary: b.summary,
                properties,
                certificate: Some(b.certificate),
                error,
                version: VERSION.into(),
                seed,
                elapsed_ms: started.elapsed().as_millis() as u64,
            }
        }
        Err(e) => error_report(command, seed, e.to_string(), started),
    };
    render(report, cli.format)
}
