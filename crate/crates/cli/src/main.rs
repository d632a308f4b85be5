// Copyright 2026 the minkowski-geometry Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! `minkowski` — reports on the differential and affine geometry of
//! Minkowski norms.
//!
//! Every flag can also be set through the environment with the
//! `MINKOWSKI_` prefix (e.g. `MINKOWSKI_RESOLUTION=96`). Exit codes:
//! 0 success / PASS, 1 input error, 2 invariant violation or FAIL.

mod reports;
mod run;
mod specfile;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use run::{cmd_darboux, cmd_emit_indicatrix, cmd_mixed_volumes, cmd_report, Failure, Job};

#[derive(Parser)]
#[command(
    name = "minkowski",
    version,
    about = "Differential- and affine-geometric reports on Minkowski norms",
    long_about = "Computes curvature, torsion, and volume invariants of a Minkowski norm \
                  given as a JSON spec file, and runs the section-constancy test that \
                  detects norms built from a rotationally symmetric profile.\n\n\
                  All flags can be set via environment variables with the MINKOWSKI_ prefix.\n\
                  Exit codes: 0 success/PASS, 1 input error, 2 invariant violation/FAIL."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CoeffArg {
    /// Torsion coefficient 1/(N+2).
    Printed,
    /// Trace-free coefficient 1/(N+1) (default).
    Tracefree,
}

impl CoeffArg {
    fn name(self) -> &'static str {
        match self {
            CoeffArg::Printed => "printed",
            CoeffArg::Tracefree => "tracefree",
        }
    }
}

#[derive(Args)]
struct CommonArgs {
    /// Path to a norm-spec JSON file (schema: see the `specs/` examples).
    #[arg(long, env = "MINKOWSKI_SPEC")]
    spec: PathBuf,

    /// Sphere-grid resolution; defaults per dimension (96 / 48 / 14).
    #[arg(long, env = "MINKOWSKI_RESOLUTION")]
    resolution: Option<usize>,

    /// Seed for the random navigation shifts of `darboux`.
    #[arg(long, env = "MINKOWSKI_SEED", default_value_t = 0)]
    seed: u64,

    /// Tolerance override NAME=VALUE; repeatable. Known names:
    /// constancy (default 1e-5), cubic (default 1e-5).
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    tol: Vec<String>,

    /// Which Matsumoto-torsion coefficient to use.
    #[arg(
        long,
        env = "MINKOWSKI_MATSUMOTO_COEFF",
        value_enum,
        default_value_t = CoeffArg::Tracefree
    )]
    matsumoto_coeff: CoeffArg,

    /// Output base path; command-specific suffixes are appended
    /// (default: the spec file's stem, in the current directory).
    #[arg(long, env = "MINKOWSKI_OUT")]
    out: Option<PathBuf>,

    /// Omit wall-clock metadata so identical configurations produce
    /// byte-identical JSON reports.
    #[arg(long, env = "MINKOWSKI_REPRODUCIBLE")]
    reproducible: bool,
}

#[derive(Args)]
struct DarbouxArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// First spanning vector of the section plane, comma-separated.
    #[arg(long, default_value = "1,0,0", env = "MINKOWSKI_SECTION_W1")]
    section_w1: String,

    /// Second spanning vector of the section plane, comma-separated.
    #[arg(long, default_value = "0,1,0", env = "MINKOWSKI_SECTION_W2")]
    section_w2: String,

    /// Number of random navigation shifts (the zero shift is always run).
    #[arg(long, default_value_t = 5, env = "MINKOWSKI_SHIFTS")]
    shifts: usize,

    /// Sample count along the section curve.
    #[arg(long, default_value_t = 48, env = "MINKOWSKI_SAMPLES")]
    samples: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Full invariant report: volumes, areas, curvatures, margins.
    /// Writes `<out>.report.json` and `<out>.report.indicatrix.csv`.
    Report(CommonArgs),
    /// Section-constancy test over random navigation shifts.
    /// Writes `<out>.darboux.json` and one `<out>.darboux.shiftK.csv` per shift.
    Darboux(DarbouxArgs),
    /// Per-node surface data only.
    /// Writes `<out>.indicatrix.csv`.
    EmitIndicatrix(CommonArgs),
    /// Mixed volumes and the sweep-volume samples behind them.
    /// Writes `<out>.mixed.json` and `<out>.mixed.volumes.csv`.
    MixedVolumes(CommonArgs),
}

fn prepare(command: &'static str, a: &CommonArgs) -> Result<Job, Failure> {
    Job::prepare(
        command,
        a.spec.clone(),
        a.resolution,
        a.seed,
        &a.tol,
        a.matsumoto_coeff.name(),
        a.out.clone(),
        a.reproducible,
    )
}

fn dispatch(cli: &Cli) -> Result<i32, Failure> {
    match &cli.command {
        Command::Report(a) => cmd_report(&prepare("report", a)?),
        Command::MixedVolumes(a) => cmd_mixed_volumes(&prepare("mixed-volumes", a)?),
        Command::EmitIndicatrix(a) => cmd_emit_indicatrix(&prepare("emit-indicatrix", a)?),
        Command::Darboux(a) => {
            let job = prepare("darboux", &a.common)?;
            cmd_darboux(&job, &a.section_w1, &a.section_w2, a.shifts, a.samples)
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    std::process::exit(0);
                }
                _ => {
                    eprint!("{e}");
                    std::process::exit(1);
                }
            }
        }
    };
    match dispatch(&cli) {
        Ok(code) => std::process::exit(code),
        Err(failure) => {
            eprintln!("{}", failure.message());
            std::process::exit(failure.exit_code());
        }
    }
}
