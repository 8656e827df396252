use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cpn_cli::complexfmt::parse_complex_list;
use cpn_cli::error::CliError;
use cpn_cli::geometry_report::{run_geometry, GeometryConfig};
use cpn_cli::ladder_report::{run_ladder, LadderConfig};
use cpn_cli::mesh::export_mesh;
use cpn_cli::panel::sample_points;
use cpn_cli::seed_io::load_seed;
use cpn_cli::verify::{run_verify_path, VerifyConfig};

/// Soliton surfaces of the CP^(N-1) sigma model: projector ladders, wave
/// functions, immersions and their geometric invariants.
#[derive(Parser)]
#[command(name = "cpn", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the projector ladder at sample points.
    Ladder {
        /// Seed JSON file.
        #[arg(long)]
        seed: PathBuf,
        /// Jet truncation order.
        #[arg(long, default_value_t = cpn_core::DEFAULT_ORDER)]
        order: usize,
        /// Number of deterministic sample points.
        #[arg(long, default_value_t = 4)]
        points: usize,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full invariant verification suite.
    Verify {
        #[arg(long)]
        seed: PathBuf,
        /// Base tolerance; per-check tolerances scale with it (1e-8
        /// reproduces the documented defaults).
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Spectral parameter panel, e.g. "2,0.5i,-3+i".
        #[arg(long)]
        lambda: Option<String>,
        /// Number of deterministic sample points.
        #[arg(long, default_value_t = 12)]
        points: usize,
        #[arg(long, default_value_t = cpn_core::DEFAULT_ORDER)]
        order: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Metric, curvature and global invariants (W, Q, Delta).
    Geometry {
        #[arg(long)]
        seed: PathBuf,
        /// Rungs to report: "all" or a comma list like "0,2".
        #[arg(long, default_value = "all")]
        rungs: String,
        /// Quadrature tolerance for the global integrals.
        #[arg(long = "quad-tol", default_value_t = 1e-6)]
        quad_tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export a surface mesh with curvature attributes (ASCII PLY).
    Surface {
        #[arg(long)]
        seed: PathBuf,
        /// Rung of the surface to export.
        #[arg(long, default_value = "0")]
        rungs: String,
        /// Grid resolution per direction (>= 8).
        #[arg(long, default_value_t = 32)]
        grid: usize,
        /// Projection triple into the N²−1 embedding coordinates.
        #[arg(long, default_value = "0,1,2")]
        project: String,
        #[arg(long)]
        out: PathBuf,
    },
}

fn write_output(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn parse_rung_list(input: &str, n: usize) -> Result<Option<Vec<usize>>, CliError> {
    if input.trim() == "all" {
        return Ok(None);
    }
    let mut rungs = Vec::new();
    for part in input.split(',') {
        let k: usize = part
            .trim()
            .parse()
            .map_err(|_| CliError::Config(format!("bad rung list '{input}'")))?;
        if k >= n {
            return Err(CliError::Config(format!(
                "rung {k} out of range for N = {n}"
            )));
        }
        rungs.push(k);
    }
    Ok(Some(rungs))
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Ladder {
            seed,
            order,
            points,
            out,
        } => {
            let seed = load_seed(&seed)?;
            let cfg = LadderConfig {
                points: sample_points(points.max(1)),
                order,
            };
            let json = run_ladder(&seed, &cfg)?;
            write_output(&json, out.as_ref())?;
            Ok(true)
        }
        Command::Verify {
            seed,
            tol,
            lambda,
            points,
            order,
            out,
        } => {
            let mut cfg = VerifyConfig {
                tol,
                points: sample_points(points.max(1)),
                order,
                ..VerifyConfig::default()
            };
            if let Some(panel) = lambda {
                cfg.lambda_panel = parse_complex_list(&panel)?;
                if cfg.lambda_panel.is_empty() {
                    return Err(CliError::Config("empty lambda panel".into()));
                }
            }
            // seed problems become a failed check record, not a crash
            let report = run_verify_path(&seed, &cfg);
            write_output(&report.to_json(), out.as_ref())?;
            Ok(report.passed())
        }
        Command::Geometry {
            seed,
            rungs,
            quad_tol,
            format,
            out,
        } => {
            let seed = load_seed(&seed)?;
            let cfg = GeometryConfig {
                rungs: parse_rung_list(&rungs, seed.dim())?,
                quad_tol,
                ..GeometryConfig::default()
            };
            let report = run_geometry(&seed, &cfg)?;
            let text = match format {
                Format::Json => report.to_json(),
                Format::Csv => report.to_csv(),
            };
            write_output(&text, out.as_ref())?;
            Ok(true)
        }
        Command::Surface {
            seed,
            rungs,
            grid,
            project,
            out,
        } => {
            let seed = load_seed(&seed)?;
            let rung = match parse_rung_list(&rungs, seed.dim())? {
                Some(list) if list.len() == 1 => list[0],
                Some(_) => {
                    return Err(CliError::Config(
                        "surface export takes exactly one rung".into(),
                    ))
                }
                None => {
                    return Err(CliError::Config(
                        "surface export takes exactly one rung, not 'all'".into(),
                    ))
                }
            };
            let parts: Vec<usize> = project
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse::<usize>()
                        .map_err(|_| CliError::Config(format!("bad projection '{project}'")))
                })
                .collect::<Result<_, _>>()?;
            let projection: [usize; 3] = parts
                .try_into()
                .map_err(|_| CliError::Config("projection needs three indices".into()))?;
            export_mesh(&seed, rung, projection, grid, &out)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
