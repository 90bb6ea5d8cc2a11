use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use weinstein_cli::{run, CliError, RunConfig};

/// Checks on Lie algebroid paths, period lattices and finite groupoids.
///
/// Exit status: 0 when every check passes, 1 when a check fails, 2 when the
/// input cannot be used.
#[derive(Debug, Parser)]
#[command(name = "weinstein", version)]
struct Args {
    /// Command path, e.g. `homotopy check` or `paper-suite`.
    #[arg(required = true)]
    command: Vec<String>,
    /// JSON file or inline value; repeatable.
    #[arg(long)]
    input: Vec<String>,
    /// Named built-in input.
    #[arg(long)]
    preset: Option<String>,
    /// Sets all three tolerances at once.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    path_tol: Option<f64>,
    #[arg(long)]
    equiv_tol: Option<f64>,
    #[arg(long)]
    quad_tol: Option<f64>,
    /// Grid sizes, comma separated.
    #[arg(long, value_delimiter = ',')]
    grid: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the JSON report instead of the summary.
    #[arg(long)]
    json: bool,
    #[arg(long)]
    pretty: bool,
}

impl Args {
    fn config(&self) -> RunConfig {
        let mut c = RunConfig {
            command: self.command.clone(),
            inputs: self.input.clone(),
            preset: self.preset.clone(),
            grid: self.grid.clone(),
            seed: self.seed,
            out: self.out.clone(),
            pretty: self.pretty,
            ..RunConfig::default()
        };
        if let Some(t) = self.tol {
            c.tol.path_tol = t;
            c.tol.equiv_tol = t;
            c.tol.quad_tol = t;
        }
        c.tol.path_tol = self.path_tol.unwrap_or(c.tol.path_tol);
        c.tol.equiv_tol = self.equiv_tol.unwrap_or(c.tol.equiv_tol);
        c.tol.quad_tol = self.quad_tol.unwrap_or(c.tol.quad_tol);
        c
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let config = args.config();
    let report = match run(&config) {
        Ok(r) => r,
        Err(e) => return input_error(&e),
    };
    let json = report.to_json(config.pretty);
    if let Some(path) = &config.out {
        if let Err(e) = std::fs::write(path, format!("{json}\n")) {
            return input_error(&CliError::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            });
        }
    }
    if args.json || args.pretty {
        println!("{json}");
    } else {
        print!("{}", report.summary());
    }
    ExitCode::from(if report.pass { 0 } else { 1 })
}

fn input_error(e: &CliError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}
