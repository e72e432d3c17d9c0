//! Effective run configuration: defaults, overlaid by `--config`, overlaid by
//! explicit flags. Every command echoes the resolved config in its output so
//! a run can be reproduced from the report alone.

use buoyancy_lab::bodyfile::{self, BodyFile};
use buoyancy_lab::tol;
use buoyancy_lab::{ConvexBody, Error, Result};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BodySpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<PathBuf>,
    #[serde(flatten)]
    pub inline: BodyFile,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub body: BodySpec,
    /// Relative submerged volume in (0,1); exactly one of density/delta.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub density: Option<f64>,
    /// Absolute submerged volume.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi: Option<Vec<f64>>,
    pub dirs: usize,
    pub h: f64,
    pub tol_vol: f64,
    /// None: mesh-scaled default from the facet count.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol_eq: Option<f64>,
    pub tol_test: f64,
    pub chords: usize,
    pub probe_angles: Vec<f64>,
    pub offset_s: f64,
    pub jobs: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            body: BodySpec {
                file: None,
                inline: BodyFile {
                    dimension: None,
                    vertices: None,
                    generator: None,
                    params: None,
                    n: None,
                },
            },
            density: None,
            delta: None,
            xi: None,
            dirs: 200,
            h: tol::FD_STEP,
            tol_vol: tol::TOL_VOL,
            tol_eq: None,
            tol_test: tol::TOL_TEST,
            chords: 64,
            probe_angles: vec![0.05, 0.1],
            offset_s: 0.2,
            jobs: 0,
            seed: None,
        }
    }
}

impl RunConfig {
    pub fn load_body(&self) -> Result<ConvexBody> {
        let seed = self.seed;
        if let Some(path) = &self.body.file {
            return bodyfile::load_body(path, seed);
        }
        if self.body.inline.generator.is_some() || self.body.inline.vertices.is_some() {
            return bodyfile::body_from_file(&self.body.inline, seed);
        }
        Err(Error::InvalidArgument(
            "no body given: use --body FILE or --generator NAME".into(),
        ))
    }

    /// Resolves the submerged volume for a loaded body. Defaults to density
    /// one half.
    pub fn resolve_delta(&self, body: &ConvexBody) -> Result<(f64, f64)> {
        let vol = body.volume();
        let (delta, density) = match (self.delta, self.density) {
            (Some(_), Some(_)) => {
                return Err(Error::InvalidArgument(
                    "give either --delta or --density, not both".into(),
                ))
            }
            (Some(d), None) => (d, d / vol),
            (None, Some(rho)) => (rho * vol, rho),
            (None, None) => (0.5 * vol, 0.5),
        };
        if !(density > 0.0 && density < 1.0) {
            return Err(Error::DensityOutOfRange);
        }
        Ok((delta, density))
    }

    pub fn resolve_tol_eq(&self, body: &ConvexBody) -> f64 {
        self.tol_eq.unwrap_or_else(|| {
            tol::tol_eq_default(body.dim(), body.facets().len(), body.vertices().len())
        })
    }

    pub fn resolve_xi(&self, dim: usize) -> Result<nalgebra::DVector<f64>> {
        let v = match &self.xi {
            Some(v) => nalgebra::DVector::from_vec(v.clone()),
            None => {
                let mut up = nalgebra::DVector::zeros(dim);
                up[dim - 1] = 1.0;
                up
            }
        };
        if v.len() != dim {
            return Err(Error::DimensionMismatch(v.len(), dim));
        }
        let n = v.norm();
        if !(n.is_finite() && n > 1e-14) {
            return Err(Error::InvalidArgument("direction must be nonzero".into()));
        }
        Ok(v / n)
    }
}
