//! Command-line front end for `geoquant-core`.
//!
//! Each demo runs one model end to end and produces a [`report::QuantReport`]:
//! the configuration echo, result tables, one pass/fail entry per acceptance
//! check and the relation each check tests. Reports serialize deterministically
//! so identical configurations give byte-identical bodies.

pub mod config;
pub mod demos;
pub mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use config::{Cli, ConfigError, ReportFormat, RunConfig};
use report::QuantReport;

/// All checks passed.
pub const EXIT_PASS: u8 = 0;
/// A check failed or a module raised an error.
pub const EXIT_FAIL: u8 = 1;
/// The configuration was rejected before any computation.
pub const EXIT_CONFIG: u8 = 2;

/// Runs the configured demo. Module errors other than invalid parameters are
/// recorded in the report; invalid parameters surface as config errors.
pub fn run(cfg: &RunConfig) -> Result<QuantReport, ConfigError> {
    let start = Instant::now();
    let mut report = QuantReport::new(cfg.demo.id());
    demos::echo_config(cfg, &mut report);
    if let Err(e) = demos::run_demo(cfg, &mut report) {
        if let geoquant_core::Error::InvalidParameter { field, reason } = e {
            return Err(ConfigError::Invalid {
                field,
                message: reason,
            });
        }
        report.error = Some(format!("{}: {e}", e.name()));
    }
    report.wall_time_s = start.elapsed().as_secs_f64();
    Ok(report)
}

pub fn render(report: &QuantReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Structured => report.to_structured(),
        ReportFormat::Text => report.to_text(),
    }
}

/// Parses, validates, runs and writes the report; returns the process exit code.
pub fn main_with(cli: &Cli) -> ExitCode {
    let cfg = match RunConfig::resolve(cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let report = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(report.summary_table().as_bytes());
    if let Some(e) = &report.error {
        eprintln!("error: {e}");
    }
    let text = render(&report, cfg.report_format);
    match &cfg.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("cannot write report to {}: {e}", path.display());
                return ExitCode::from(EXIT_FAIL);
            }
        }
        None => {
            let _ = writeln!(stdout);
            let _ = stdout.write_all(text.as_bytes());
        }
    }
    if report.passed() {
        ExitCode::from(EXIT_PASS)
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}
