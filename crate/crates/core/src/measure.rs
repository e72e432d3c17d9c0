//! Exact volumes, centroids and clipped-volume profiles via fan decomposition.
//!
//! Every body is decomposed once into simplices fanned out from an interior
//! point; volumes and centroids are then sums of closed-form simplex terms.
//! The decomposition also powers the waterline solver: the volume of the body
//! below a moving plane is the sum of per-simplex frustum fractions, computed
//! by Varsi's recursion without rebuilding any geometry.

use crate::body::{ConvexBody, Point};
use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};

/// Simplices fanned from an interior apex. Each cell lists the `d` vertex
/// indices of one facet simplex; together with the apex they span a d-simplex.
pub(crate) struct FanDecomposition {
    pub apex: Point,
    pub cells: Vec<Vec<usize>>,
}

pub(crate) fn fan(body: &ConvexBody) -> Result<FanDecomposition> {
    let apex = body.interior_point();
    let d = body.dim();
    let mut cells = Vec::new();
    for f in body.facets() {
        match d {
            2 => cells.push(f.vertices.clone()),
            3 => {
                // Ordered loop: fan triangulation from the first loop vertex.
                for i in 1..f.vertices.len() - 1 {
                    cells.push(vec![f.vertices[0], f.vertices[i], f.vertices[i + 1]]);
                }
            }
            _ => {
                if f.vertices.len() != d {
                    return Err(Error::UnsupportedDimension(d));
                }
                cells.push(f.vertices.clone());
            }
        }
    }
    Ok(FanDecomposition { apex, cells })
}

fn simplex_volume(apex: &Point, cell: &[usize], vertices: &[Point]) -> f64 {
    match cell.len() {
        2 => {
            let a = &vertices[cell[0]];
            let b = &vertices[cell[1]];
            let (ax, ay) = (a[0] - apex[0], a[1] - apex[1]);
            let (bx, by) = (b[0] - apex[0], b[1] - apex[1]);
            0.5 * (ax * by - ay * bx).abs()
        }
        3 => {
            let a = &vertices[cell[0]];
            let b = &vertices[cell[1]];
            let c = &vertices[cell[2]];
            let (ax, ay, az) = (a[0] - apex[0], a[1] - apex[1], a[2] - apex[2]);
            let (bx, by, bz) = (b[0] - apex[0], b[1] - apex[1], b[2] - apex[2]);
            let (cx, cy, cz) = (c[0] - apex[0], c[1] - apex[1], c[2] - apex[2]);
            let det = ax * (by * cz - bz * cy) - ay * (bx * cz - bz * cx)
                + az * (bx * cy - by * cx);
            det.abs() / 6.0
        }
        _ => {
            let d = apex.len();
            let mut m = DMatrix::zeros(d, d);
            for (j, &vi) in cell.iter().enumerate() {
                let col = &vertices[vi] - apex;
                m.set_column(j, &col);
            }
            let mut fact = 1.0;
            for k in 2..=d {
                fact *= k as f64;
            }
            m.determinant().abs() / fact
        }
    }
}

impl ConvexBody {
    /// Exact d-volume via simplex decomposition from an interior point.
    pub fn volume(&self) -> f64 {
        let fan = match fan(self) {
            Ok(f) => f,
            Err(_) => return 0.0,
        };
        fan.cells
            .iter()
            .map(|c| simplex_volume(&fan.apex, c, self.vertices()))
            .sum()
    }

    /// Exact centroid; each simplex contributes its vertex average weighted by
    /// its volume.
    pub fn centroid(&self) -> Result<Point> {
        let fan = fan(self)?;
        let d = self.dim();
        let mut total = 0.0;
        let mut acc = [0.0f64; 8];
        let mut mean = [0.0f64; 8];
        for c in &fan.cells {
            let v = simplex_volume(&fan.apex, c, self.vertices());
            if v == 0.0 {
                continue;
            }
            for k in 0..d {
                mean[k] = fan.apex[k];
            }
            for &vi in c {
                let p = &self.vertices()[vi];
                for k in 0..d {
                    mean[k] += p[k];
                }
            }
            let w = v / (d + 1) as f64;
            for k in 0..d {
                acc[k] += mean[k] * w;
            }
            total += v;
        }
        if total <= 0.0 || total < self.eps_geom().powi(d as i32) {
            return Err(Error::DegenerateBody);
        }
        Ok(DVector::from_iterator(d, (0..d).map(|k| acc[k] / total)))
    }
}

/// Fraction of a simplex lying in `{ height <= 0 }`, given the signed heights
/// of its vertices. Varsi's recursion: exact and stable (the denominators are
/// sums of magnitudes, never cancelling differences).
pub(crate) fn simplex_fraction_below(heights: &[f64]) -> f64 {
    // Computed as the fraction above for the negated heights.
    let mut neg: Vec<f64> = Vec::with_capacity(heights.len());
    let mut pos: Vec<f64> = Vec::with_capacity(heights.len());
    for &h in heights {
        // Below-side vertices (h <= 0) become the "a" side after negation.
        if -h <= 0.0 {
            neg.push(-h);
        } else {
            pos.push(-h);
        }
    }
    fraction_above(&neg, &pos)
}

/// Varsi recursion: fraction of the simplex on the positive side, given the
/// nonpositive heights `a` and positive heights `b`.
fn fraction_above(a: &[f64], b: &[f64]) -> f64 {
    if b.is_empty() {
        return 0.0;
    }
    if a.is_empty() {
        return 1.0;
    }
    let mut row = vec![1.0; b.len() + 1];
    for &aj in a {
        row[0] = 0.0;
        for (k, &bk) in b.iter().enumerate() {
            // row[k+1] still holds the previous iteration's value; row[k] is
            // already updated. b_k > 0 >= a_j, so the denominator never cancels.
            row[k + 1] = (bk * row[k + 1] - aj * row[k]) / (bk - aj);
        }
    }
    row[b.len()]
}

/// Precomputed submerged-volume profile of a body: evaluates
/// `vol(K ∩ {x·xi <= t})` for many `t` along a fixed direction cheaply.
pub struct VolumeProfile {
    cells: Vec<Vec<usize>>,
    cell_vols: Vec<f64>,
    apex: Point,
    total: f64,
}

impl VolumeProfile {
    pub fn new(body: &ConvexBody) -> Result<Self> {
        let fan = fan(body)?;
        let cell_vols: Vec<f64> = fan
            .cells
            .iter()
            .map(|c| simplex_volume(&fan.apex, c, body.vertices()))
            .collect();
        let total = cell_vols.iter().sum();
        Ok(Self {
            cells: fan.cells,
            cell_vols,
            apex: fan.apex,
            total,
        })
    }

    pub fn total_volume(&self) -> f64 {
        self.total
    }

    /// Vertex heights along `xi` plus the apex height; pass to `volume_below`.
    pub fn heights(&self, body: &ConvexBody, xi: &DVector<f64>) -> (Vec<f64>, f64) {
        let hs: Vec<f64> = body.vertices().iter().map(|v| v.dot(xi)).collect();
        (hs, self.apex.dot(xi))
    }

    /// Volume of the body in `{ x·xi <= t }` given precomputed heights.
    pub fn volume_below(&self, heights: &(Vec<f64>, f64), t: f64) -> f64 {
        let (vh, apex_h) = heights;
        let mut buf = [0.0f64; 8];
        let mut acc = 0.0;
        for (cell, &vol) in self.cells.iter().zip(&self.cell_vols) {
            if vol == 0.0 {
                continue;
            }
            buf[0] = apex_h - t;
            for (j, &vi) in cell.iter().enumerate() {
                buf[j + 1] = vh[vi] - t;
            }
            acc += vol * simplex_fraction_below(&buf[..cell.len() + 1]);
        }
        acc
    }
}
