use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use convpart_cli::commands;
use convpart_cli::limits_from_env;
use convpart_cli::render::View;

/// Analysis of convex n-partitions of R^d given as oriented hyperplane
/// arrangements (one projective normal per label pair).
#[derive(Parser)]
#[command(name = "convpart", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ViewArg {
    Affine,
    Hemisphere,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether an arrangement carries a partition
    /// (exit 0 proper, 2 non-proper, 3 does not carry).
    Carries { input: PathBuf },
    /// Face poset of the carried partition.
    Faces { input: PathBuf },
    /// Combinatorial type certificate.
    Type { input: PathBuf },
    /// Combinatorial equivalence of two carried partitions.
    Equiv { a: PathBuf, b: PathBuf },
    /// Symmetric-difference distance between two carried partitions.
    Distance {
        a: PathBuf,
        b: PathBuf,
        /// Monte Carlo seed; required when d >= 3.
        #[arg(long)]
        seed: Option<u64>,
        /// Monte Carlo sample count.
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
    },
    /// Default node system of the carried partition.
    Nodes { input: PathBuf },
    /// Check a node assignment and reconstruct the realized partition
    /// (exit 0 realized, 2 rejected).
    Reconstruct {
        input: PathBuf,
        /// JSON file mapping node ids to rational vectors.
        #[arg(long)]
        assignment: PathBuf,
        /// Seed for the generic-vector search.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Export the realization constraint system.
    Constraints { input: PathBuf },
    /// Cone tiling check on a cone family file
    /// (exit 0 tiles, 2 does not, 3 indeterminate).
    Fzcheck {
        input: PathBuf,
        /// Seed for the generic-vector search.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Combinatorial types of partitions of the line.
    EnumD1 { n: usize },
    /// SVG rendering of a planar partition.
    Render {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "affine")]
        view: ViewArg,
        /// Half-width of the affine drawing window.
        #[arg(long, default_value_t = 3.25)]
        window: f64,
        /// Write the SVG here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = limits_from_env();
    let result = match &cli.command {
        Command::Carries { input } => commands::cmd_carries(input, &limits),
        Command::Faces { input } => commands::cmd_faces(input, &limits),
        Command::Type { input } => commands::cmd_type(input, &limits),
        Command::Equiv { a, b } => commands::cmd_equiv(a, b, &limits),
        Command::Distance {
            a,
            b,
            seed,
            samples,
        } => commands::cmd_distance(a, b, *seed, *samples, &limits),
        Command::Nodes { input } => commands::cmd_nodes(input, &limits),
        Command::Reconstruct {
            input,
            assignment,
            seed,
        } => commands::cmd_reconstruct(input, assignment, *seed, &limits),
        Command::Constraints { input } => commands::cmd_constraints(input, &limits),
        Command::Fzcheck { input, seed } => commands::cmd_fzcheck(input, *seed),
        Command::EnumD1 { n } => commands::cmd_enum_d1(*n),
        Command::Render {
            input,
            view,
            window,
            out,
        } => {
            let v = match view {
                ViewArg::Affine => View::Affine,
                ViewArg::Hemisphere => View::Hemisphere,
            };
            match commands::cmd_render(input, v, *window, &limits) {
                Ok(r) => {
                    if let Some(path) = out {
                        match std::fs::write(path, &r.output) {
                            Ok(()) => Ok(commands::CmdResult {
                                exit: r.exit,
                                output: String::new(),
                            }),
                            Err(e) => Err(format!("cannot write {}: {e}", path.display())),
                        }
                    } else {
                        Ok(r)
                    }
                }
                Err(e) => Err(e),
            }
        }
    };
    match result {
        Ok(r) => {
            print!("{}", r.output);
            ExitCode::from(r.exit as u8)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
