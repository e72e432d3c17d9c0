//! Hydrostatics: waterlines at prescribed submerged volume, buoyancy centers,
//! the surface of centers, and equilibrium residuals and scans.
//!
//! The waterline offset t(ξ) is found by bisection: the submerged volume is
//! continuous and strictly increasing in t on the support interval, so the
//! root is unique. Volume evaluations run on the fan decomposition of the
//! body (Varsi frustum fractions), and only the final cut is materialized.

use crate::body::{ConvexBody, HalfSpace, Point};
use crate::clip::clip;
use crate::error::{Error, Result};
use crate::grid;
use crate::measure::VolumeProfile;
use crate::section::frame_of;
use crate::tol::TOL_VOL;
use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

/// A cutting plane carrying the prescribed submerged volume.
#[derive(Debug, Clone)]
pub struct Waterline {
    pub xi: DVector<f64>,
    pub t: f64,
    pub delta: f64,
    pub achieved: f64,
}

/// Per-direction buoyancy data.
#[derive(Debug, Clone)]
pub struct BuoyancyRecord {
    pub xi: DVector<f64>,
    pub t: f64,
    /// Submerged volume actually achieved by the waterline solve.
    pub volume: f64,
    /// Buoyancy center: centroid of the submerged part.
    pub center: Point,
    pub body_centroid: Point,
    /// Angle (radians) between ξ and the line from the buoyancy center to the
    /// body centroid. Zero means the body floats in equilibrium at ξ.
    pub residual: f64,
}

/// Sampled surface of centers with its least-squares sphere fit.
#[derive(Debug, Clone)]
pub struct SurfaceOfCenters {
    pub directions: Vec<DVector<f64>>,
    pub centers: Vec<Point>,
    pub fitted_center: Point,
    pub mean_radius: f64,
    /// max_i | |C_i - center| - mean_radius | / mean_radius
    pub max_rel_deviation: f64,
}

/// Result of an equilibrium scan over a deterministic direction grid.
#[derive(Debug, Clone)]
pub struct ScanResult {
    pub records: Vec<BuoyancyRecord>,
    pub tol_eq: f64,
    pub max_residual: f64,
    /// True iff the max residual over the grid is within `tol_eq`.
    pub floats_all_directions: bool,
    /// Isolated near-equilibrium directions (refined local minima with
    /// residual within `tol_eq`), deduplicated.
    pub equilibria: Vec<(DVector<f64>, f64)>,
}

/// Per-body solver context: fan decomposition, total volume and centroid are
/// computed once and shared across directions.
pub struct Hydrostatics<'a> {
    body: &'a ConvexBody,
    profile: VolumeProfile,
    volume: f64,
    centroid: Point,
}

impl<'a> Hydrostatics<'a> {
    pub fn new(body: &'a ConvexBody) -> Result<Self> {
        let profile = VolumeProfile::new(body)?;
        let centroid = body.centroid()?;
        let volume = profile.total_volume();
        Ok(Self {
            body,
            profile,
            volume,
            centroid,
        })
    }

    pub fn body(&self) -> &ConvexBody {
        self.body
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    pub fn body_centroid(&self) -> &Point {
        &self.centroid
    }

    /// Submerged volume below the plane `{x·xi = t}` (ξ unit).
    pub fn submerged_volume(&self, xi: &DVector<f64>, t: f64) -> f64 {
        let heights = self.profile.heights(self.body, xi);
        self.profile.volume_below(&heights, t)
    }

    /// Solves `vol(K ∩ {x·xi <= t}) = delta` for t by bisection between the
    /// support values of ξ over the vertices.
    pub fn find_waterline(&self, xi: &DVector<f64>, delta: f64, tol: f64) -> Result<Waterline> {
        if !(delta > 0.0 && delta < self.volume) {
            return Err(Error::DensityOutOfRange);
        }
        if tol <= 0.0 {
            return Err(Error::InvalidArgument("tolerance must be positive".into()));
        }
        let xi = normalize_dir(xi, self.body.dim())?;
        let heights = self.profile.heights(self.body, &xi);
        let mut lo = heights.0.iter().cloned().fold(f64::INFINITY, f64::min);
        let mut hi = heights.0.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let stop = tol * self.volume;
        let mut t = 0.5 * (lo + hi);
        let mut achieved = self.profile.volume_below(&heights, t);
        for _ in 0..200 {
            if (achieved - delta).abs() <= stop {
                break;
            }
            if achieved < delta {
                lo = t;
            } else {
                hi = t;
            }
            let next = 0.5 * (lo + hi);
            if next == t {
                break;
            }
            t = next;
            achieved = self.profile.volume_below(&heights, t);
        }
        Ok(Waterline {
            xi,
            t,
            delta,
            achieved,
        })
    }

    /// Buoyancy center `C_δ(ξ)`: centroid of the submerged part, with the
    /// equilibrium residual attached.
    pub fn buoyancy_center(&self, xi: &DVector<f64>, delta: f64) -> Result<BuoyancyRecord> {
        let wl = self.find_waterline(xi, delta, TOL_VOL)?;
        let hs = HalfSpace {
            normal: wl.xi.clone(),
            offset: wl.t,
        };
        let submerged = clip(self.body, &hs).ok_or(Error::DegenerateBody)?;
        let center = submerged.centroid()?;
        let residual = self.residual_from_center(&wl.xi, &center)?;
        Ok(BuoyancyRecord {
            xi: wl.xi,
            t: wl.t,
            volume: wl.achieved,
            center,
            body_centroid: self.centroid.clone(),
            residual,
        })
    }

    /// Angle between ξ and the line from `C_δ(ξ)` to the body centroid.
    pub fn equilibrium_residual(&self, xi: &DVector<f64>, delta: f64) -> Result<f64> {
        Ok(self.buoyancy_center(xi, delta)?.residual)
    }

    fn residual_from_center(&self, xi: &DVector<f64>, center: &Point) -> Result<f64> {
        let u = &self.centroid - center;
        let len = u.norm();
        if len <= self.body.eps_geom() {
            return Err(Error::DegenerateBuoyancyLine);
        }
        Ok((u.dot(xi) / len).clamp(-1.0, 1.0).acos())
    }

    /// Evaluates `C_δ` on every direction and fits the sphere of best fit
    /// (algebraic least squares).
    pub fn surface_of_centers(
        &self,
        delta: f64,
        directions: &[DVector<f64>],
    ) -> Result<SurfaceOfCenters> {
        if directions.is_empty() {
            return Err(Error::InvalidArgument("no directions given".into()));
        }
        let records: Vec<BuoyancyRecord> = directions
            .par_iter()
            .map(|xi| self.buoyancy_center(xi, delta))
            .collect::<Result<_>>()?;
        let centers: Vec<Point> = records.into_iter().map(|r| r.center).collect();
        let (fitted_center, mean_radius, max_rel_deviation) = sphere_fit(&centers);
        Ok(SurfaceOfCenters {
            directions: directions.to_vec(),
            centers,
            fitted_center,
            mean_radius,
            max_rel_deviation,
        })
    }

    /// Equilibrium scan: residuals on a deterministic grid, local refinement
    /// of minima by projected coordinate descent on the sphere.
    pub fn equilibrium_scan(&self, delta: f64, n_dirs: usize, tol_eq: f64) -> Result<ScanResult> {
        let dim = self.body.dim();
        let min_dirs = if dim == 2 { 8 } else { 12 };
        if n_dirs < min_dirs {
            return Err(Error::InvalidArgument(format!(
                "need at least {min_dirs} directions for d = {dim}"
            )));
        }
        let dirs = grid::directions(dim, n_dirs);
        let records: Vec<BuoyancyRecord> = dirs
            .par_iter()
            .map(|xi| self.buoyancy_center(xi, delta))
            .collect::<Result<_>>()?;
        let max_residual = records
            .iter()
            .map(|r| r.residual)
            .fold(f64::NEG_INFINITY, f64::max);
        let floats_all_directions = max_residual <= tol_eq;

        let spacing = if dim == 2 {
            2.0 * std::f64::consts::PI / n_dirs as f64
        } else {
            (4.0 * std::f64::consts::PI / n_dirs as f64).sqrt()
        };
        // Isolated equilibria are only meaningful when the body does not
        // float everywhere; a flat residual landscape would flag every grid
        // point as a minimum.
        let equilibria = if floats_all_directions {
            Vec::new()
        } else {
            let mut minima = local_minima(&dirs, &records, spacing);
            minima.sort_by(|&a, &b| {
                records[a]
                    .residual
                    .partial_cmp(&records[b].residual)
                    .unwrap()
            });
            minima.truncate(16);
            let refined: Vec<(DVector<f64>, f64)> = minima
                .par_iter()
                .map(|&i| self.refine_direction(&dirs[i], records[i].residual, delta, spacing))
                .collect();
            let mut out: Vec<(DVector<f64>, f64)> = Vec::new();
            for (xi, r) in refined {
                if r > tol_eq {
                    continue;
                }
                // Merge refinements that converged to the same direction.
                if let Some(existing) = out
                    .iter_mut()
                    .find(|(e, _)| angle_between(e, &xi) < 2.0 * spacing)
                {
                    if r < existing.1 {
                        *existing = (xi, r);
                    }
                } else {
                    out.push((xi, r));
                }
            }
            out
        };
        Ok(ScanResult {
            records,
            tol_eq,
            max_residual,
            floats_all_directions,
            equilibria,
        })
    }

    /// Projected coordinate descent on the sphere: steps along tangent frame
    /// directions with halving step size.
    fn refine_direction(
        &self,
        start: &DVector<f64>,
        start_residual: f64,
        delta: f64,
        step0: f64,
    ) -> (DVector<f64>, f64) {
        let mut xi = start.clone();
        let mut best = start_residual;
        let mut step = 0.5 * step0;
        let mut evals = 0;
        while step > 1e-6 && evals < 160 {
            let mut improved = false;
            for e in frame_of(&xi) {
                for sign in [1.0f64, -1.0] {
                    let cand = (&xi * step.cos()) + (&e * (sign * step.sin()));
                    let cand = cand.normalize();
                    evals += 1;
                    if let Ok(r) = self.equilibrium_residual(&cand, delta) {
                        if r < best {
                            best = r;
                            xi = cand;
                            improved = true;
                        }
                    }
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
        (xi, best)
    }
}

fn normalize_dir(xi: &DVector<f64>, dim: usize) -> Result<DVector<f64>> {
    if xi.len() != dim {
        return Err(Error::DimensionMismatch(xi.len(), dim));
    }
    let n = xi.norm();
    if !n.is_finite() || n < 1e-14 {
        return Err(Error::InvalidArgument("direction is zero".into()));
    }
    Ok(xi / n)
}

fn angle_between(a: &DVector<f64>, b: &DVector<f64>) -> f64 {
    a.dot(b).clamp(-1.0, 1.0).acos()
}

fn local_minima(dirs: &[DVector<f64>], records: &[BuoyancyRecord], spacing: f64) -> Vec<usize> {
    let radius = 1.6 * spacing;
    (0..dirs.len())
        .filter(|&i| {
            records.iter().enumerate().all(|(j, rec)| {
                j == i
                    || angle_between(&dirs[i], &dirs[j]) > radius
                    || records[i].residual <= rec.residual
            })
        })
        .collect()
}

/// Algebraic sphere fit (linearized least squares): solve
/// `|p|² = 2 p·x + (R² - |x|²)` for the center x, then report the mean radius
/// and the worst relative radial deviation.
pub fn sphere_fit(points: &[Point]) -> (Point, f64, f64) {
    let dim = points[0].len();
    let n = points.len();
    let mut a = DMatrix::zeros(n, dim + 1);
    let mut b = DVector::zeros(n);
    for (i, p) in points.iter().enumerate() {
        for k in 0..dim {
            a[(i, k)] = 2.0 * p[k];
        }
        a[(i, dim)] = 1.0;
        b[i] = p.norm_squared();
    }
    let svd = a.svd(true, true);
    let sol = svd.solve(&b, 1e-12).expect("sphere fit solve");
    let center = DVector::from_iterator(dim, (0..dim).map(|k| sol[k]));
    let mean_radius = points.iter().map(|p| (p - &center).norm()).sum::<f64>() / n as f64;
    let max_rel_deviation = points
        .iter()
        .map(|p| ((p - &center).norm() - mean_radius).abs())
        .fold(0.0f64, f64::max)
        / mean_radius.max(1e-300);
    (center, mean_radius, max_rel_deviation)
}
