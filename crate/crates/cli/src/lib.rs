//! The `spinlab` command-line driver: argument validation, the commands and
//! artifact output with golden-file comparison.

pub mod commands;
pub mod config;

use std::path::{Path, PathBuf};

use serde_json::json;
use thiserror::Error;

pub use config::{Cli, Format, Job, JobConfig, Suite};

/// Artifact schema version.
pub const SCHEMA: &str = "v1";
/// Directory holding golden artifacts, one file per configuration.
pub const GOLDEN_ENV: &str = "SPINLAB_GOLDEN_DIR";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Compute(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

macro_rules! compute_errors {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Compute(e.to_string())
            }
        })*
    };
}

compute_errors!(
    exact_field::FieldError,
    quiver_fixedpoints::FixedPointError,
    shuffle_weights::WeightError,
    rmatrix::RMatrixError,
    yangian_module::YangianError,
    lattice_model::LatticeError
);

/// The artifact text for `cfg` in its output format.
pub fn render(cfg: &JobConfig, outcome: &commands::Outcome) -> String {
    match cfg.format {
        Format::Json => {
            let doc = json!({
                "schema": SCHEMA,
                "config": cfg.to_json(),
                "status": if outcome.passed { "pass" } else { "fail" },
                "result": outcome.result,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
        Format::Latex => outcome.latex.clone(),
        Format::Ascii => outcome.ascii.clone(),
    }
}

/// Compares `text` with the golden file for `cfg`, writing it if absent.
/// Returns the path and whether the contents matched.
pub fn check_golden(dir: &Path, cfg: &JobConfig, text: &str) -> Result<(PathBuf, bool), CliError> {
    let path = dir.join(cfg.golden_name());
    if path.exists() {
        Ok((path.clone(), std::fs::read_to_string(&path)? == text))
    } else {
        std::fs::create_dir_all(dir)?;
        std::fs::write(&path, text)?;
        Ok((path, true))
    }
}

/// Runs a parsed command line and returns the exit code.
pub fn execute(cli: &Cli) -> i32 {
    let cfg = match JobConfig::from_cli(cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("spinlab: {e}");
            return EXIT_USAGE;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("spinlab: cannot start {} threads: {e}", cli.threads);
            return EXIT_USAGE;
        }
    };
    let outcome = match pool.install(|| commands::run(&cfg)) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("spinlab: {e}");
            return EXIT_USAGE;
        }
    };
    let text = render(&cfg, &outcome);
    let written = match &cfg.output {
        Some(path) => std::fs::write(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("spinlab: cannot write output: {e}");
        return EXIT_USAGE;
    }
    let mut code = if outcome.passed { EXIT_PASS } else { EXIT_FAIL };
    if let Some(dir) = std::env::var_os(GOLDEN_ENV) {
        match check_golden(Path::new(&dir), &cfg, &text) {
            Ok((_, true)) => {}
            Ok((path, false)) => {
                eprintln!("spinlab: output differs from golden file {}", path.display());
                code = EXIT_FAIL;
            }
            Err(e) => {
                eprintln!("spinlab: golden comparison failed: {e}");
                code = EXIT_FAIL;
            }
        }
    }
    code
}
