// Copyright 2026 the minkowski-geometry Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Serializable report documents and the CSV emitters.
//!
//! JSON reports are the machine-readable contract: field order is fixed
//! by the struct definitions, floats are written in shortest round-trip
//! form, and nothing environment-dependent is included unless the run
//! asked for it (`elapsed_ms` is dropped in reproducible mode), so
//! identical configurations produce byte-identical documents.

use minkowski_core::blaschke::BlaschkeSample;
use minkowski_core::volumes::{VolumeNode, VolumeReport};
use serde::Serialize;
use std::io::Write;
use std::path::Path;

/// Run provenance common to all JSON reports.
#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub spec_path: String,
    pub spec_label: String,
    pub resolution: usize,
    pub matsumoto_coeff: String,
    pub reproducible: bool,
    /// Wall-clock time of the computation; omitted under `--reproducible`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VolumeReportDoc {
    pub meta: Meta,
    pub dim: usize,
    pub node_count: usize,
    pub vol_ball: f64,
    pub sigma: f64,
    pub omega: f64,
    pub euclidean_area: f64,
    pub total_curvature: f64,
    pub affine_area: f64,
    pub affine_area_blaschke: f64,
    pub mixed_volumes: Vec<f64>,
    pub mixed_volumes_fitted: Vec<f64>,
    pub fit_residual: f64,
    pub vol_samples: Vec<(f64, f64)>,
    pub isoperimetric_margin: f64,
    pub power_inequality_margins: Vec<(usize, usize, f64)>,
    pub curvature_integral_margin: Option<f64>,
    pub min_gauss_affine: f64,
    pub alexandrov_margins: Vec<f64>,
    pub l1_range: (f64, f64),
    pub min_principal_curvature: f64,
    pub max_equiaffine_defect: f64,
    pub max_abs_cubic: f64,
}

impl VolumeReportDoc {
    pub fn new(meta: Meta, r: &VolumeReport) -> VolumeReportDoc {
        VolumeReportDoc {
            meta,
            dim: r.dim,
            node_count: r.node_count,
            vol_ball: r.vol_ball,
            sigma: r.sigma,
            omega: r.omega,
            euclidean_area: r.euclidean_area,
            total_curvature: r.total_curvature,
            affine_area: r.affine_area,
            affine_area_blaschke: r.affine_area_blaschke,
            mixed_volumes: r.mixed_volumes.clone(),
            mixed_volumes_fitted: r.mixed_volumes_fitted.clone(),
            fit_residual: r.fit_residual,
            vol_samples: r.vol_samples.clone(),
            isoperimetric_margin: r.isoperimetric_margin,
            power_inequality_margins: r.power_inequality_margins.clone(),
            curvature_integral_margin: r.curvature_integral_margin,
            min_gauss_affine: r.min_gauss_affine,
            alexandrov_margins: r.alexandrov_margins.clone(),
            l1_range: r.l1_range,
            min_principal_curvature: r.min_principal_curvature,
            max_equiaffine_defect: r.max_equiaffine_defect,
            max_abs_cubic: r.max_abs_cubic,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DarbouxShift {
    pub shift: Vec<f64>,
    /// Norm of the shift under the spec's own norm (must stay below 1).
    pub f_of_shift: f64,
    /// Deviation of the section statistic `T` from constancy.
    pub dev: f64,
    /// Largest |cubic form| on the section curve's tangents.
    pub max_cubic: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DarbouxDoc {
    pub meta: Meta,
    pub section: [Vec<f64>; 2],
    pub seed: u64,
    pub n_samples: usize,
    pub constancy_tolerance: f64,
    pub cubic_tolerance: f64,
    pub shifts: Vec<DarbouxShift>,
    pub max_dev: f64,
    pub max_cubic: f64,
    pub verdict: String,
}

pub fn write_json<T: Serialize>(path: &Path, doc: &T) -> anyhow::Result<()> {
    let mut bytes = serde_json::to_vec_pretty(doc)?;
    bytes.push(b'\n');
    std::fs::write(path, bytes)?;
    Ok(())
}

/// One row per grid node: the unit direction, the point `r = u/F(u)` on
/// the indicatrix, the Euclidean Gauss curvature, and the affine mean
/// curvatures `L_1 … L_n`.
pub fn write_indicatrix_csv(path: &Path, nodes: &[VolumeNode]) -> anyhow::Result<()> {
    let mut out = Vec::new();
    if let Some(first) = nodes.first() {
        let dim = first.sample.surface.point.len();
        let n = dim - 1;
        let mut header: Vec<String> = (1..=dim).map(|a| format!("u{a}")).collect();
        header.extend((1..=dim).map(|a| format!("r{a}")));
        header.push("K".into());
        header.extend((1..=n).map(|k| format!("L{k}")));
        writeln!(out, "{}", header.join(","))?;
    }
    for node in nodes {
        let s: &BlaschkeSample = &node.sample;
        let mut fields: Vec<String> = node.direction.iter().map(|v| format!("{v}")).collect();
        fields.extend(s.surface.point.iter().map(|v| format!("{v}")));
        fields.push(format!("{}", s.surface.gauss_curvature));
        fields.extend(s.mean_curvatures.iter().map(|v| format!("{v}")));
        writeln!(out, "{}", fields.join(","))?;
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// `(t, Vol(Ω_t))` pairs of the affine-normal sweep.
pub fn write_volumes_csv(path: &Path, samples: &[(f64, f64)]) -> anyhow::Result<()> {
    let mut out = Vec::new();
    writeln!(out, "t,volume")?;
    for (t, v) in samples {
        writeln!(out, "{t},{v}")?;
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Per-shift plot data: the angle along the section curve, the plane and
/// ambient distortions, and their combination `T = τ/3 − τ̄/4`.
pub fn write_shift_csv(
    path: &Path,
    angles: &[f64],
    tau_plane: &[f64],
    tau_ambient: &[f64],
    t_values: &[f64],
) -> anyhow::Result<()> {
    let mut out = Vec::new();
    writeln!(out, "theta,tau,tau_bar,T")?;
    for i in 0..angles.len() {
        writeln!(
            out,
            "{},{},{},{}",
            angles[i], tau_plane[i], tau_ambient[i], t_values[i]
        )?;
    }
    std::fs::write(path, out)?;
    Ok(())
}
