//! Command-line front end for `hmf-core`: configuration, caching and reports.

pub mod cache;
pub mod commands;
pub mod config;
pub mod error;

pub use error::{CliError, CliResult};

use config::{Command, Opts};
use std::io::Write;

/// Runs one command and returns the process exit code.
pub fn main_with(command: Command, opts: Opts) -> i32 {
    let cfg = match opts.resolve() {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    let mut session = match commands::Session::new(cfg) {
        Ok(s) => s,
        Err(e) => return fail(&e),
    };
    let outcome = commands::run(&command, &mut session);
    for w in &session.warnings {
        eprintln!("warning: {w}");
    }
    let out = match outcome {
        Ok(o) => o,
        Err(e) => return fail(&e),
    };
    let text = serde_json::to_string_pretty(&out.json).expect("serializable") + "\n";
    if let Some(p) = &session.cfg.report {
        if let Err(e) = std::fs::write(p, &text) {
            return fail(&CliError::Config(format!("cannot write report {}: {e}", p.display())));
        }
    }
    let stdout = std::io::stdout();
    let mut h = stdout.lock();
    let _ = if session.cfg.json { h.write_all(text.as_bytes()) } else { h.write_all(out.table.as_bytes()) };
    match out.verdict {
        Some((true, _)) => {
            let _ = writeln!(h, "PASS");
            0
        }
        Some((false, summary)) => {
            let _ = writeln!(h, "FAIL");
            fail(&CliError::Verify(summary))
        }
        None => 0,
    }
}

fn fail(e: &CliError) -> i32 {
    eprintln!("hmfk: {e}");
    e.exit_code()
}
