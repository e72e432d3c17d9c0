//! Body definition files.
//!
//! Two JSON forms are accepted:
//! - explicit vertices: `{"dimension": 3, "vertices": [[..], ..]}` — the
//!   facet structure is computed on load via convex hull;
//! - generator spec: `{"generator": "ball", "params": {"r": 1.0}, "N": 1024}`.

use crate::body::{ConvexBody, Point};
use crate::error::{Error, Result};
use crate::zoo;
use nalgebra::DVector;
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BodyFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<serde_json::Value>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
}

pub fn load_body(path: &Path, seed_override: Option<u64>) -> Result<ConvexBody> {
    let text = std::fs::read_to_string(path)?;
    let file: BodyFile = serde_json::from_str(&text)
        .map_err(|e| Error::BodyFile(format!("{}: {e}", path.display())))?;
    body_from_file(&file, seed_override)
}

pub fn save_body(body: &ConvexBody, path: &Path) -> Result<()> {
    let file = BodyFile {
        dimension: Some(body.dim()),
        vertices: Some(
            body.vertices()
                .iter()
                .map(|v| v.iter().cloned().collect())
                .collect(),
        ),
        generator: None,
        params: None,
        n: None,
    };
    std::fs::write(path, serde_json::to_string_pretty(&file)?)?;
    Ok(())
}

pub fn body_from_file(file: &BodyFile, seed_override: Option<u64>) -> Result<ConvexBody> {
    match (&file.vertices, &file.generator) {
        (Some(vertices), None) => {
            let dim = file
                .dimension
                .ok_or_else(|| Error::BodyFile("missing field: dimension".into()))?;
            let pts: Vec<Point> = vertices
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    if v.len() != dim {
                        return Err(Error::BodyFile(format!(
                            "vertex {i} has {} coordinates, expected {dim}",
                            v.len()
                        )));
                    }
                    Ok(DVector::from_row_slice(v))
                })
                .collect::<Result<_>>()?;
            ConvexBody::from_points(dim, pts)
        }
        (None, Some(name)) => {
            let params = file.params.clone().unwrap_or(serde_json::json!({}));
            generate(name, &params, file.n, seed_override)
        }
        _ => Err(Error::BodyFile(
            "body file must contain either vertices or a generator".into(),
        )),
    }
}

fn num(params: &serde_json::Value, key: &str) -> Result<f64> {
    params
        .get(key)
        .and_then(|v| v.as_f64())
        .ok_or_else(|| Error::BodyFile(format!("missing numeric generator param: {key}")))
}

fn num_or(params: &serde_json::Value, key: &str, default: f64) -> Result<f64> {
    match params.get(key) {
        None => Ok(default),
        Some(v) => v
            .as_f64()
            .ok_or_else(|| Error::BodyFile(format!("generator param {key} must be numeric"))),
    }
}

/// Dispatches a generator spec by name.
pub fn generate(
    name: &str,
    params: &serde_json::Value,
    n: Option<usize>,
    seed_override: Option<u64>,
) -> Result<ConvexBody> {
    match name {
        "ball" => {
            let dim = num_or(params, "dim", 3.0)? as usize;
            zoo::make_ball(dim, num_or(params, "r", 1.0)?, n.unwrap_or(1024))
        }
        "ellipsoid" => zoo::make_ellipsoid(
            num(params, "a")?,
            num(params, "b")?,
            num(params, "c")?,
            n.unwrap_or(1024),
        ),
        "box" => zoo::make_box(num(params, "a")?, num(params, "b")?, num(params, "c")?),
        "cube" => zoo::unit_cube(),
        "rect" => zoo::make_rect(num(params, "a")?, num(params, "b")?),
        "random" => {
            let n_vertices = num_or(params, "vertices", 32.0)? as usize;
            let seed = match seed_override {
                Some(s) => s,
                None => num_or(params, "seed", 1.0)? as u64,
            };
            zoo::make_random_polytope(n_vertices, seed)
        }
        "revolution" => {
            let prof = params
                .get("profile")
                .and_then(|v| v.as_array())
                .ok_or_else(|| Error::BodyFile("revolution needs a profile array".into()))?;
            let profile: Vec<(f64, f64)> = prof
                .iter()
                .enumerate()
                .map(|(i, pair)| {
                    let arr = pair.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
                        Error::BodyFile(format!("profile entry {i} must be [radius, height]"))
                    })?;
                    Ok((
                        arr[0].as_f64().unwrap_or(f64::NAN),
                        arr[1].as_f64().unwrap_or(f64::NAN),
                    ))
                })
                .collect::<Result<_>>()?;
            zoo::make_revolution(&profile, n.unwrap_or(64))
        }
        "zindler" => {
            let chord = num_or(params, "chord", 2.0)?;
            let harmonics = match params.get("harmonics") {
                None => vec![],
                Some(v) => {
                    let arr = v.as_array().ok_or_else(|| {
                        Error::BodyFile("zindler harmonics must be an array".into())
                    })?;
                    arr.iter()
                        .enumerate()
                        .map(|(i, h)| {
                            let t = h.as_array().filter(|a| a.len() == 3).ok_or_else(|| {
                                Error::BodyFile(format!(
                                    "harmonic {i} must be [k, cos_amp, sin_amp]"
                                ))
                            })?;
                            Ok(zoo::ZindlerHarmonic {
                                k: t[0].as_u64().unwrap_or(0) as usize,
                                cos_amp: t[1].as_f64().unwrap_or(f64::NAN),
                                sin_amp: t[2].as_f64().unwrap_or(f64::NAN),
                            })
                        })
                        .collect::<Result<_>>()?
                }
            };
            zoo::make_zindler(
                &zoo::ZindlerParams {
                    chord_length: chord,
                    harmonics,
                },
                n.unwrap_or(4096),
            )
        }
        other => Err(Error::BodyFile(format!("unknown generator: {other}"))),
    }
}
