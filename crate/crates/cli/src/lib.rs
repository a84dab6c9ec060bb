//! Command-line front end: read an ideal file, compute its base points and
//! print them as text, JSON or a DOT dual graph.

mod parse;
mod render;

use std::path::PathBuf;

pub use parse::{parse_ideal, parse_polynomial, IdealParseError, ParseError};
pub use render::{render, Format};

use basepoints_core::basepoints::{base_points, BasePointsError};

/// One invocation of `compute`.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub input: PathBuf,
    pub format: Format,
    pub intermediates: bool,
    /// Standard output when absent.
    pub output: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] IdealParseError),
    #[error("cannot access {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Compute(#[from] BasePointsError),
}

impl CliError {
    /// 1 for bad input, 2 for a failed internal check.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Io { .. } => 1,
            CliError::Compute(BasePointsError::ZeroGenerator | BasePointsError::EmptyIdeal) => 1,
            CliError::Compute(_) => 2,
        }
    }
}

/// Parse `text`, compute and render.
pub fn compute_text(text: &str, format: Format, intermediates: bool) -> Result<String, CliError> {
    let gens = parse_ideal(text)?;
    let result = base_points(&gens)?;
    Ok(render(&gens, &result, format, intermediates))
}

pub fn run(cfg: &RunConfig) -> Result<String, CliError> {
    let text =
        std::fs::read_to_string(&cfg.input).map_err(|source| CliError::Io { path: cfg.input.clone(), source })?;
    let out = compute_text(&text, cfg.format, cfg.intermediates)?;
    if let Some(path) = &cfg.output {
        std::fs::write(path, &out).map_err(|source| CliError::Io { path: path.clone(), source })?;
    }
    Ok(out)
}
