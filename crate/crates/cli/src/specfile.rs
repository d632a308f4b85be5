// Copyright 2026 the minkowski-geometry Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! The norm-spec JSON file format.
//!
//! A spec file is a single JSON document:
//!
//! ```json
//! {
//!   "dimension": 3,
//!   "variant": { "type": "randers", "q": [[1,0,0],[0,1,0],[0,0,1]], "b": [0.0, 0.0, 0.5] }
//! }
//! ```
//!
//! Matrices are row-major arrays of rows; vectors are flat arrays. The
//! four variant types:
//!
//! * `euclidean` — fields `q` (symmetric positive definite matrix);
//!   `F² = yᵀQy`.
//! * `randers` — fields `q`, `b`; `F = √(yᵀQy) + b·y`.
//! * `alpha_beta` — fields `q`, `b`, `phi`; `F = α·φ(β/α)` where `phi` is
//!   `{"type": "quadratic", "epsilon": ε}` for `φ(s) = 1 + εs²` or
//!   `{"type": "exponential", "epsilon": ε}` for `φ(s) = exp(εs)`.
//! * `navigation` — fields `base` (a nested spec document of the same
//!   dimension) and `shift`; the unit ball is the base ball translated by
//!   `-shift`, which requires `F_base(shift) < 1`.
//!
//! Shape problems (wrong matrix size, mismatched dimension) are input
//! errors; value problems (a spec that parses but fails strong convexity)
//! are caught later by validation.

use anyhow::{bail, Context, Result};
use minkowski_core::linalg::Mat;
use minkowski_core::norm::{NormSpec, PhiSpec};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub dimension: usize,
    pub variant: Variant,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum Variant {
    Euclidean { q: Vec<Vec<f64>> },
    Randers { q: Vec<Vec<f64>>, b: Vec<f64> },
    AlphaBeta { q: Vec<Vec<f64>>, b: Vec<f64>, phi: Phi },
    Navigation { base: Box<SpecFile>, shift: Vec<f64> },
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum Phi {
    Quadratic { epsilon: f64 },
    Exponential { epsilon: f64 },
}

impl Phi {
    fn to_phi_spec(self) -> PhiSpec {
        match self {
            Phi::Quadratic { epsilon } => PhiSpec::Quadratic { epsilon },
            Phi::Exponential { epsilon } => PhiSpec::Exponential { epsilon },
        }
    }
}

fn matrix(rows: &[Vec<f64>], dim: usize) -> Result<Mat> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        bail!("matrix must be {dim}×{dim} (row-major rows)");
    }
    Ok(Mat::from_rows(rows))
}

fn vector(v: &[f64], dim: usize) -> Result<Vec<f64>> {
    if v.len() != dim {
        bail!("vector must have {dim} components, got {}", v.len());
    }
    Ok(v.to_vec())
}

impl SpecFile {
    pub fn to_norm_spec(&self) -> Result<NormSpec> {
        let n = self.dimension;
        if !(2..=4).contains(&n) {
            bail!("dimension must be 2, 3, or 4 (got {n})");
        }
        let spec = match &self.variant {
            Variant::Euclidean { q } => NormSpec::euclidean(matrix(q, n)?),
            Variant::Randers { q, b } => NormSpec::randers(matrix(q, n)?, vector(b, n)?),
            Variant::AlphaBeta { q, b, phi } => {
                NormSpec::alpha_beta(matrix(q, n)?, vector(b, n)?, phi.to_phi_spec())
            }
            Variant::Navigation { base, shift } => {
                if base.dimension != n {
                    bail!(
                        "navigation base has dimension {}, expected {n}",
                        base.dimension
                    );
                }
                NormSpec::navigation(
                    base.to_norm_spec().context("in navigation base")?,
                    vector(shift, n)?,
                )
            }
        };
        Ok(spec)
    }

    /// Short human label for summaries: the variant tags from the outside
    /// in, e.g. `navigation(alpha_beta)`.
    pub fn label(&self) -> String {
        match &self.variant {
            Variant::Euclidean { .. } => "euclidean".into(),
            Variant::Randers { .. } => "randers".into(),
            Variant::AlphaBeta { .. } => "alpha_beta".into(),
            Variant::Navigation { base, .. } => format!("navigation({})", base.label()),
        }
    }
}

pub fn load(path: &Path) -> Result<SpecFile> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading spec file {}", path.display()))?;
    let file: SpecFile = serde_json::from_str(&text)
        .with_context(|| format!("parsing spec file {}", path.display()))?;
    Ok(file)
}
