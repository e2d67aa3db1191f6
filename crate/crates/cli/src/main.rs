mod args;
mod cache;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;
use commands::{Failure, Outcome};

fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Failure::BadArgs("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Internal(e.to_string()))?;
    }
    let cache = match &cli.cache_dir {
        Some(dir) => {
            Some(cache::Cache::new(dir).map_err(|e| Failure::Internal(format!("cache dir: {e}")))?)
        }
        None => None,
    };
    let config = serde_json::json!({ "command": &cli.command, "format": cli.format }).to_string();
    let key = cache::key(env!("CARGO_PKG_NAME"), &config);
    if let Some(hit) = cache.as_ref().and_then(|c| c.get(&key)) {
        return Ok(Outcome {
            output: hit,
            assertion: None,
        });
    }
    let outcome = commands::run(&cli.command, cli.format)?;
    if let (Some(c), None) = (&cache, &outcome.assertion) {
        c.put(&key, &outcome.output)
            .map_err(|e| Failure::Internal(format!("cache write: {e}")))?;
    }
    Ok(outcome)
}

/// 0 on success, 3 when the computation finished but a mathematical
/// assertion did not hold.
fn status(outcome: &Outcome) -> u8 {
    if outcome.assertion.is_some() {
        3
    } else {
        0
    }
}

fn emit(cli: &Cli, text: &str) -> std::io::Result<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &cli.output {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(2),
            };
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            if let Err(e) = emit(&cli, &outcome.output) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if let Some(msg) = &outcome.assertion {
                eprintln!("assertion failed: {msg}");
            }
            ExitCode::from(status(&outcome))
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code() as u8)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_status_classes() {
        assert_eq!(
            status(&Outcome {
                output: String::new(),
                assertion: None
            }),
            0
        );
        assert_eq!(
            status(&Outcome {
                output: String::new(),
                assertion: Some("x".into())
            }),
            3
        );
        assert_eq!(Failure::BadArgs(String::new()).exit_code(), 2);
        assert_eq!(Failure::Internal(String::new()).exit_code(), 1);
        let f: Failure = bggcoh::Error::NotDominant("(0,1)".into()).into();
        assert_eq!(f.exit_code(), 2);
        let f: Failure = bggcoh::Error::Overflow.into();
        assert_eq!(f.exit_code(), 1);
    }
}
