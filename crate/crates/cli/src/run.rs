// Copyright 2026 the minkowski-geometry Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Command implementations and the exit-code contract.
//!
//! Exit codes: `0` success (and PASS for `darboux`), `1` input error
//! (unreadable or malformed files, bad flags), `2` invariant violation
//! (a spec that parses but is not a strongly convex norm, a numerical
//! invariant failing, or a FAIL verdict from `darboux`).

use std::path::PathBuf;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use minkowski_core::blaschke::blaschke_at;
use minkowski_core::error::Error as CoreError;
use minkowski_core::indicatrix::{Chart, SphereGrid};
use minkowski_core::norm::{MatsumotoCoeff, NormSpec};
use minkowski_core::section::{darboux_profile, sweep_shifts, SectionSpec};
use minkowski_core::volumes::{ball_volume, omega, report_from_nodes, VolumeNode, VolumeReport};
use rayon::prelude::*;

use crate::reports::{
    write_indicatrix_csv, write_json, write_shift_csv, write_volumes_csv, DarbouxDoc,
    DarbouxShift, Meta, VolumeReportDoc,
};
use crate::specfile::{self, SpecFile};

/// Failure classified by exit code.
#[derive(Debug)]
pub enum Failure {
    /// Exit 1: the configuration or an input file is unusable.
    Input(anyhow::Error),
    /// Exit 2: the inputs parse but violate a mathematical invariant.
    Invariant(anyhow::Error),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Invariant(_) => 2,
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Input(e) => format!("input error: {e:#}"),
            Failure::Invariant(e) => format!("invariant violation: {e:#}"),
        }
    }
}

pub type RunResult = Result<i32, Failure>;

fn input<T>(r: anyhow::Result<T>) -> Result<T, Failure> {
    r.map_err(Failure::Input)
}

/// Core errors about argument shape are input errors; everything else
/// (convexity, navigation feasibility, numerics) violates an invariant.
fn core(e: CoreError) -> Failure {
    match e {
        CoreError::InvalidSpec(_)
        | CoreError::InvalidArgument(_)
        | CoreError::UnsupportedDimension { .. }
        | CoreError::DegenerateSection { .. } => Failure::Input(anyhow!(e)),
        _ => Failure::Invariant(anyhow!(e)),
    }
}

/// Thresholds the CLI itself judges by; module-internal tolerances are
/// fixed in the library.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// PASS bound on the deviation of the section statistic from constancy.
    pub constancy: f64,
    /// PASS bound on the cubic form along section-curve tangents.
    pub cubic: f64,
}

impl Default for Tolerances {
    fn default() -> Tolerances {
        Tolerances { constancy: 1e-5, cubic: 1e-5 }
    }
}

pub fn parse_tols(args: &[String]) -> anyhow::Result<Tolerances> {
    let mut t = Tolerances::default();
    for s in args {
        let (name, value) = s
            .split_once('=')
            .with_context(|| format!("--tol expects NAME=VALUE, got `{s}`"))?;
        let v: f64 = value
            .parse()
            .with_context(|| format!("--tol {name}: `{value}` is not a number"))?;
        if !(v > 0.0) {
            bail!("--tol {name}: tolerance must be > 0, got {v}");
        }
        match name {
            "constancy" => t.constancy = v,
            "cubic" => t.cubic = v,
            _ => bail!("unknown tolerance `{name}` (known: constancy, cubic)"),
        }
    }
    Ok(t)
}

/// Everything a command needs besides its own extras.
pub struct Job {
    pub command: &'static str,
    pub spec_path: PathBuf,
    pub spec_file: SpecFile,
    pub spec: NormSpec,
    pub resolution: usize,
    pub seed: u64,
    pub tols: Tolerances,
    pub coeff: MatsumotoCoeff,
    pub coeff_name: &'static str,
    pub out_base: PathBuf,
    pub reproducible: bool,
    pub started: Instant,
}

pub fn default_resolution(dim: usize) -> usize {
    match dim {
        2 => 96,
        3 => 48,
        _ => 14,
    }
}

impl Job {
    pub fn prepare(
        command: &'static str,
        spec_path: PathBuf,
        resolution: Option<usize>,
        seed: u64,
        tol_args: &[String],
        coeff_name: &'static str,
        out: Option<PathBuf>,
        reproducible: bool,
    ) -> Result<Job, Failure> {
        let tols = input(parse_tols(tol_args))?;
        let spec_file = input(specfile::load(&spec_path))?;
        let spec = input(spec_file.to_norm_spec())?;
        let coeff = match coeff_name {
            "printed" => MatsumotoCoeff::NPlusTwo,
            _ => MatsumotoCoeff::TraceFree,
        };
        let out_base = out.unwrap_or_else(|| {
            PathBuf::from(
                spec_path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| "report".into()),
            )
        });
        spec.validate().map_err(core)?;
        let resolution = resolution.unwrap_or_else(|| default_resolution(spec.dim));
        Ok(Job {
            command,
            spec_path,
            spec_file,
            spec,
            resolution,
            seed,
            tols,
            coeff,
            coeff_name,
            out_base,
            reproducible,
            started: Instant::now(),
        })
    }

    fn meta(&self) -> Meta {
        Meta {
            tool: "minkowski",
            version: env!("CARGO_PKG_VERSION"),
            command: self.command.into(),
            spec_path: self.spec_path.display().to_string(),
            spec_label: self.spec_file.label(),
            resolution: self.resolution,
            matsumoto_coeff: self.coeff_name.into(),
            reproducible: self.reproducible,
            elapsed_ms: if self.reproducible {
                None
            } else {
                Some(self.started.elapsed().as_millis() as u64)
            },
        }
    }

    fn out_path(&self, suffix: &str) -> PathBuf {
        let mut name = self.out_base.as_os_str().to_os_string();
        name.push(suffix);
        PathBuf::from(name)
    }

    /// Blaschke data at every grid node, in grid order, computed in
    /// parallel. Returns the normalized ball volume and `sigma` with it.
    fn nodes(&self) -> Result<(f64, f64, Vec<VolumeNode>), Failure> {
        let grid = SphereGrid::new(self.spec.dim, self.resolution).map_err(core)?;
        let vol_ball = ball_volume(&self.spec, &grid).map_err(core)?;
        let sigma = omega(self.spec.dim) / vol_ball;
        let nodes: Result<Vec<VolumeNode>, CoreError> = grid
            .nodes
            .par_iter()
            .zip(grid.weights.par_iter())
            .map(|(u, w)| {
                Ok(VolumeNode {
                    direction: u.clone(),
                    sample: blaschke_at(&self.spec, &Chart::standard(u), sigma, self.coeff)?,
                    weight: *w,
                })
            })
            .collect();
        Ok((vol_ball, sigma, nodes.map_err(core)?))
    }

    fn report(&self) -> Result<(Vec<VolumeNode>, VolumeReport), Failure> {
        let (vol_ball, sigma, nodes) = self.nodes()?;
        let report = report_from_nodes(self.resolution, vol_ball, sigma, &nodes).map_err(core)?;
        Ok((nodes, report))
    }
}

fn print_report_summary(job: &Job, r: &VolumeReport) {
    println!(
        "{} (dimension {}), resolution {} ({} nodes)",
        job.spec_file.label(),
        r.dim,
        r.resolution,
        r.node_count
    );
    println!("  vol_ball {:.15}  sigma {:.15}", r.vol_ball, r.sigma);
    println!(
        "  affine area {:.12}  bound N*omega {:.12}  isoperimetric margin {:.6e}",
        r.affine_area,
        r.dim as f64 * r.omega,
        r.isoperimetric_margin
    );
    let vks: Vec<String> = r.mixed_volumes.iter().map(|v| format!("{v:.12}")).collect();
    println!("  mixed volumes [{}]", vks.join(", "));
    println!("  polynomial-fit residual {:.3e}", r.fit_residual);
    let min_power = r
        .power_inequality_margins
        .iter()
        .map(|&(_, _, m)| m)
        .fold(f64::INFINITY, f64::min);
    let min_alex = r.alexandrov_margins.iter().cloned().fold(f64::INFINITY, f64::min);
    println!(
        "  min power-inequality margin {min_power:.6e}  min quadratic margin {min_alex:.6e}"
    );
    match r.curvature_integral_margin {
        Some(m) => println!(
            "  curvature-integral margin {m:.6e} (min affine Gauss curvature {:.6})",
            r.min_gauss_affine
        ),
        None => println!(
            "  curvature-integral margin undefined: affine Gauss curvature dips to {:.6}",
            r.min_gauss_affine
        ),
    }
}

pub fn cmd_report(job: &Job) -> RunResult {
    let (nodes, report) = job.report()?;
    print_report_summary(job, &report);
    let json_path = job.out_path(".report.json");
    let csv_path = job.out_path(".report.indicatrix.csv");
    input(write_json(&json_path, &VolumeReportDoc::new(job.meta(), &report)))?;
    input(write_indicatrix_csv(&csv_path, &nodes))?;
    println!("wrote {} and {}", json_path.display(), csv_path.display());
    Ok(0)
}

pub fn cmd_mixed_volumes(job: &Job) -> RunResult {
    let (_, report) = job.report()?;
    print_report_summary(job, &report);
    let json_path = job.out_path(".mixed.json");
    let csv_path = job.out_path(".mixed.volumes.csv");
    input(write_json(&json_path, &VolumeReportDoc::new(job.meta(), &report)))?;
    input(write_volumes_csv(&csv_path, &report.vol_samples))?;
    println!("wrote {} and {}", json_path.display(), csv_path.display());
    Ok(0)
}

pub fn cmd_emit_indicatrix(job: &Job) -> RunResult {
    let (vol_ball, _, nodes) = job.nodes()?;
    let k_min = nodes
        .iter()
        .map(|n| n.sample.surface.gauss_curvature)
        .fold(f64::INFINITY, f64::min);
    let k_max = nodes
        .iter()
        .map(|n| n.sample.surface.gauss_curvature)
        .fold(f64::NEG_INFINITY, f64::max);
    println!(
        "{} (dimension {}), {} nodes, vol_ball {:.12}, K in [{k_min:.9}, {k_max:.9}]",
        job.spec_file.label(),
        job.spec.dim,
        nodes.len(),
        vol_ball
    );
    let csv_path = job.out_path(".indicatrix.csv");
    input(write_indicatrix_csv(&csv_path, &nodes))?;
    println!("wrote {}", csv_path.display());
    Ok(0)
}

fn parse_vec3(s: &str) -> anyhow::Result<Vec<f64>> {
    let v: Result<Vec<f64>, _> = s.split(',').map(|p| p.trim().parse::<f64>()).collect();
    let v = v.with_context(|| format!("`{s}` is not a comma-separated vector"))?;
    if v.len() != 3 {
        bail!("section vectors need 3 components, got {}", v.len());
    }
    Ok(v)
}

pub fn cmd_darboux(job: &Job, w1: &str, w2: &str, n_shifts: usize, n_samples: usize) -> RunResult {
    if job.spec.dim != 3 {
        return Err(Failure::Input(anyhow!(
            "darboux needs a 3-dimensional spec, got dimension {}",
            job.spec.dim
        )));
    }
    let w1 = input(parse_vec3(w1))?;
    let w2 = input(parse_vec3(w2))?;
    let section = SectionSpec::new(w1, w2).map_err(core)?;

    // The unshifted norm is always tested, then the seeded random shifts.
    let mut shifts = vec![vec![0.0, 0.0, 0.0]];
    shifts.extend(sweep_shifts(&job.spec, n_shifts, job.seed));

    let mut rows = Vec::with_capacity(shifts.len());
    let mut max_dev = 0.0f64;
    let mut max_cubic = 0.0f64;
    println!(
        "{} (dimension 3), section span {:?} ^ {:?}, {} shifts, {} samples, resolution {}",
        job.spec_file.label(),
        section.basis[0],
        section.basis[1],
        shifts.len(),
        n_samples,
        job.resolution
    );
    for (k, shift) in shifts.iter().enumerate() {
        let rep = darboux_profile(&job.spec, &section, shift, n_samples, job.resolution)
            .map_err(core)?;
        let dev = rep.profile.dev;
        max_dev = max_dev.max(dev);
        max_cubic = max_cubic.max(rep.max_cubic);
        // F is only evaluated away from the origin; F(0) = 0 by homogeneity.
        let f_of_shift = if shift.iter().all(|&c| c == 0.0) { 0.0 } else { job.spec.f(shift) };
        println!(
            "  shift {k}: F(U) {f_of_shift:.4}  dev {dev:.6e}  max|cubic| {:.6e}",
            rep.max_cubic
        );
        let csv_path = job.out_path(&format!(".darboux.shift{k}.csv"));
        input(write_shift_csv(
            &csv_path,
            &rep.profile.angles,
            &rep.profile.tau_plane,
            &rep.profile.tau_ambient,
            &rep.profile.t_values,
        ))?;
        rows.push(DarbouxShift {
            shift: shift.clone(),
            f_of_shift,
            dev,
            max_cubic: rep.max_cubic,
        });
    }
    let pass = max_dev <= job.tols.constancy && max_cubic <= job.tols.cubic;
    let verdict = if pass { "PASS" } else { "FAIL" };
    let doc = DarbouxDoc {
        meta: job.meta(),
        section: [section.basis[0].clone(), section.basis[1].clone()],
        seed: job.seed,
        n_samples,
        constancy_tolerance: job.tols.constancy,
        cubic_tolerance: job.tols.cubic,
        shifts: rows,
        max_dev,
        max_cubic,
        verdict: verdict.into(),
    };
    let json_path = job.out_path(".darboux.json");
    input(write_json(&json_path, &doc))?;
    println!(
        "{verdict}: max dev {max_dev:.6e} (tol {:.1e}), max |cubic| {max_cubic:.6e} (tol {:.1e})",
        job.tols.constancy, job.tols.cubic
    );
    println!("wrote {}", json_path.display());
    Ok(if pass { 0 } else { 2 })
}
