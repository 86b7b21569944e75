//! Command-line front end for the dpwall library.

pub mod commands;
pub mod svg;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dpwall::chern::ChernCharacter;
use dpwall::field::{parse_rational, Rational};
use dpwall::lattice::{build_frame, validate_seed, Frame};

#[derive(Parser, Debug)]
#[command(name = "dpwall", version, about = "Walls of divisorial stability conditions on the blow-up of P2 at two points")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    #[arg(long, default_value_t = 42, global = true)]
    pub seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Central charge of a class at a point (floating).
    Charge {
        #[arg(long)]
        frame: String,
        /// s,u1,u2,t
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// rank,(p,q,r),ch2 (exact)
        #[arg(long, allow_hyphen_values = true)]
        chern: String,
    },
    /// Wall of sub against quot as polynomial coefficients (floating).
    Wall {
        #[arg(long)]
        frame: String,
        #[arg(long, allow_hyphen_values = true)]
        sub: String,
        /// Defaults to O.
        #[arg(long, allow_hyphen_values = true)]
        quot: Option<String>,
    },
    /// Affine type of h(s^2+u^2) - 2gsu - 2c2 s (exact).
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        c2: String,
    },
    /// Semicircle of the wall in the plane u = u0 * dir^perp + t dir (floating).
    Slice {
        #[arg(long)]
        frame: String,
        #[arg(long, allow_hyphen_values = true)]
        sub: String,
        #[arg(long, allow_hyphen_values = true)]
        quot: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        u0: f64,
        /// d1,d2
        #[arg(long, allow_hyphen_values = true, default_value = "1,0")]
        dir: String,
    },
    /// t -> 0 walls of O(-E1), O(-E2), O(-E) against O.
    MaximalWalls {
        #[arg(long, default_value = "4/15,2/15,-1/15", allow_hyphen_values = true)]
        frame: String,
        /// Also draw the u2 = 0 section.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run the identity registry.
    Certify {
        #[arg(long)]
        id: Option<String>,
    },
    /// Containment of candidate walls over random frames.
    ScanContainment {
        #[arg(long, default_value_t = 4)]
        bound: u32,
        #[arg(long, default_value_t = 5)]
        frames: usize,
        #[arg(long, default_value_t = 1000)]
        grid: usize,
        #[arg(long, default_value_t = 1e-7)]
        margin: f64,
    },
    /// Negative effective curves with bounded coefficients.
    Curves {
        #[arg(long, default_value_t = 4)]
        bound: u32,
    },
}

/// Usage errors exit with 2, verification failures with 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failed(m) => f.write_str(m),
        }
    }
}

pub fn usage(m: impl Into<String>) -> CliError {
    CliError::Usage(m.into())
}

pub fn parse_rational_token(tok: &str) -> Result<Rational, CliError> {
    parse_rational(tok).ok_or_else(|| usage(format!("malformed rational '{}'", tok.trim())))
}

pub fn parse_list(s: &str, n: usize, what: &str) -> Result<Vec<String>, CliError> {
    let parts: Vec<String> = s.split(',').map(|p| p.trim().to_string()).collect();
    if parts.len() != n {
        return Err(usage(format!("{what} needs {n} comma-separated values, got '{s}'")));
    }
    Ok(parts)
}

pub fn parse_floats(s: &str, n: usize, what: &str) -> Result<Vec<f64>, CliError> {
    parse_list(s, n, what)?
        .iter()
        .map(|p| p.parse::<f64>().map_err(|_| usage(format!("malformed number '{p}' in {what}"))))
        .collect()
}

/// Frame seed a,b,c: exact rationals, checked before any command runs.
pub fn parse_seed(s: &str) -> Result<[Rational; 3], CliError> {
    let parts = parse_list(s, 3, "--frame")?;
    let a = parse_rational_token(&parts[0])?;
    let b = parse_rational_token(&parts[1])?;
    let c = parse_rational_token(&parts[2])?;
    validate_seed(&a, &b, &c).map_err(|e| usage(e.to_string()))?;
    Ok([a, b, c])
}

pub fn parse_frame(s: &str) -> Result<Frame<f64>, CliError> {
    let [a, b, c] = parse_seed(s)?;
    build_frame(&a, &b, &c).map_err(|e| usage(e.to_string()))
}

pub fn parse_chern(s: &str) -> Result<ChernCharacter<Rational>, CliError> {
    ChernCharacter::parse(s).map_err(|e| usage(e.to_string()))
}

/// Parses argv and runs; returns the exit code and writes output or messages.
pub fn run<I, T>(argv: I, out: &mut impl std::io::Write, err: &mut impl std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match commands::dispatch(&cli) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(CliError::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(CliError::Failed(text)) => {
            let _ = out.write_all(text.as_bytes());
            1
        }
    }
}
