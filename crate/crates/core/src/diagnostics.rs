//! Characterization tests: principal-moment constancy of cutting sections,
//! chord-power sums, isotropy of the radial power on equators, floating-body
//! construction, Hausdorff distances, and the shrinking-level ball limit.

use crate::body::{ConvexBody, HalfSpace, Point};
use crate::clip::clip;
use crate::error::{Error, Result};
use crate::flotation::{sphere_fit, Hydrostatics, ScanResult};
use crate::grid;
use crate::section::{frame_of, section, section_radial, Section};
use crate::tol::{SYM_TOL, TOL_VOL};
use nalgebra::DVector;
use rayon::prelude::*;

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// Per-direction second-moment record of one cutting section.
#[derive(Debug, Clone)]
pub struct MomentRecord {
    pub xi: DVector<f64>,
    /// Eigenvalues of the section moment matrix, ascending.
    pub eigenvalues: Vec<f64>,
    pub offdiag_max: f64,
    pub trace: f64,
}

/// Verdict of the principal-moment constancy test.
#[derive(Debug, Clone)]
pub struct MomentTestResult {
    pub records: Vec<MomentRecord>,
    /// Median of all diagonal moment entries; the global constant candidate.
    pub constant: f64,
    /// Equivalent target for the polar-coordinate form of the constancy
    /// statement: `(d+1) * delta * implied_radius`.
    pub polar_target: f64,
    /// Radius of the surface of centers implied by the constant, `c / δ`.
    pub implied_radius: f64,
    pub max_rel_diag_dev: f64,
    pub max_rel_offdiag: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Checks that every cutting section has an isotropic second-moment matrix
/// with one global constant across directions.
pub fn principal_moment_test(
    body: &ConvexBody,
    delta: f64,
    directions: &[DVector<f64>],
    tol: f64,
) -> Result<MomentTestResult> {
    let hy = Hydrostatics::new(body)?;
    let sections: Vec<Section> = directions
        .par_iter()
        .map(|xi| {
            let wl = hy.find_waterline(xi, delta, TOL_VOL)?;
            section(
                body,
                &HalfSpace {
                    normal: wl.xi,
                    offset: wl.t,
                },
            )
        })
        .collect::<Result<_>>()?;
    let k = body.dim() - 1;
    let mut diags: Vec<f64> = Vec::new();
    let mut records = Vec::with_capacity(sections.len());
    for (xi, sec) in directions.iter().zip(&sections) {
        let m = &sec.moment;
        let mut offdiag: f64 = 0.0;
        for i in 0..k {
            diags.push(m[(i, i)]);
            for j in 0..k {
                if i != j {
                    offdiag = offdiag.max(m[(i, j)].abs());
                }
            }
        }
        let mut eig: Vec<f64> = m.clone().symmetric_eigen().eigenvalues.iter().cloned().collect();
        eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
        records.push(MomentRecord {
            xi: xi.clone(),
            eigenvalues: eig,
            offdiag_max: offdiag,
            trace: m.trace(),
        });
    }
    let constant = median(&mut diags.clone());
    let max_rel_diag_dev = diags
        .iter()
        .map(|d| (d - constant).abs())
        .fold(0.0f64, f64::max)
        / constant;
    let max_rel_offdiag = records
        .iter()
        .map(|r| r.offdiag_max)
        .fold(0.0f64, f64::max)
        / constant;
    let implied_radius = constant / delta;
    Ok(MomentTestResult {
        records,
        constant,
        polar_target: (body.dim() + 1) as f64 * delta * implied_radius,
        implied_radius,
        max_rel_diag_dev,
        max_rel_offdiag,
        tol,
        pass: max_rel_diag_dev <= tol && max_rel_offdiag <= tol,
    })
}

/// Chord-power sum report: `ρ^{d+1}(w) + ρ^{d+1}(-w)` over in-section chord
/// directions, tested for constancy across chords and cutting directions.
#[derive(Debug, Clone)]
pub struct EquichordalReport {
    /// Per direction: worst relative deviation of the chord sum from the
    /// global constant.
    pub per_direction_dev: Vec<f64>,
    pub constant: f64,
    pub max_rel_dev: f64,
    pub tol: f64,
    pub pass: bool,
}

pub fn equichordal_test(
    body: &ConvexBody,
    delta: f64,
    directions: &[DVector<f64>],
    n_chords: usize,
    tol: f64,
) -> Result<EquichordalReport> {
    if n_chords < 8 {
        return Err(Error::InvalidArgument("need at least 8 chords".into()));
    }
    let hy = Hydrostatics::new(body)?;
    let power = (body.dim() + 1) as i32;
    let sums: Vec<Vec<f64>> = directions
        .par_iter()
        .map(|xi| {
            let wl = hy.find_waterline(xi, delta, TOL_VOL)?;
            let sec = section(
                body,
                &HalfSpace {
                    normal: wl.xi,
                    offset: wl.t,
                },
            )?;
            let k = body.dim() - 1;
            let mut out = Vec::with_capacity(n_chords);
            if k == 1 {
                let a = section_radial(&sec, &DVector::from_vec(vec![1.0]));
                let b = section_radial(&sec, &DVector::from_vec(vec![-1.0]));
                out.push(a.powi(power) + b.powi(power));
            } else {
                for j in 0..n_chords {
                    let phi = std::f64::consts::PI * (j as f64 + 0.5) / n_chords as f64;
                    let w = DVector::from_vec(vec![phi.cos(), phi.sin()]);
                    let a = section_radial(&sec, &w);
                    let b = section_radial(&sec, &(-&w));
                    out.push(a.powi(power) + b.powi(power));
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut all: Vec<f64> = sums.iter().flatten().cloned().collect();
    let constant = median(&mut all);
    let per_direction_dev: Vec<f64> = sums
        .iter()
        .map(|s| {
            s.iter()
                .map(|v| (v - constant).abs())
                .fold(0.0f64, f64::max)
                / constant
        })
        .collect();
    let max_rel_dev = per_direction_dev.iter().cloned().fold(0.0f64, f64::max);
    Ok(EquichordalReport {
        per_direction_dev,
        constant,
        max_rel_dev,
        tol,
        pass: max_rel_dev <= tol,
    })
}

/// Equator isotropy report for the radial power `f = ρ_K^{d+1}`.
#[derive(Debug, Clone)]
pub struct IsotropyReport {
    /// Per equator: the second-moment matrix entries in the equator frame,
    /// flattened as (m11, m22, m12) for d = 3.
    pub moments: Vec<Vec<f64>>,
    pub constant: f64,
    pub max_rel_diag_dev: f64,
    pub max_rel_offdiag: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Radial function of the body about the origin. Requires the origin strictly
/// inside.
pub fn radial_function(body: &ConvexBody, w: &DVector<f64>) -> Result<f64> {
    let mut best = f64::INFINITY;
    for f in body.facets() {
        let denom = f.normal.dot(w);
        if denom > 1e-14 {
            if f.offset <= 0.0 {
                return Err(Error::InvalidArgument("origin not interior".into()));
            }
            best = best.min(f.offset / denom);
        }
    }
    if !best.is_finite() {
        return Err(Error::InvalidArgument("unbounded ray".into()));
    }
    Ok(best)
}

/// Second moments of `ρ^{d+1}` on every equator `S^{d-1} ∩ ξ^⊥`, by trapezoid
/// quadrature; passes iff all are one global multiple of the identity.
///
/// Errors with `RequiresCentralSymmetry` when `ρ(w)` and `ρ(-w)` disagree
/// beyond the symmetry tolerance.
pub fn isotropy_on_equators_test(
    body: &ConvexBody,
    directions: &[DVector<f64>],
    n_nodes: usize,
    tol: f64,
) -> Result<IsotropyReport> {
    if n_nodes < 16 {
        return Err(Error::InvalidArgument("need at least 16 nodes".into()));
    }
    let dim = body.dim();
    let power = (dim + 1) as i32;
    // Symmetry precondition, sampled on a coarse grid.
    let mut rho_scale: f64 = 0.0;
    let probe = grid::directions(dim, 64);
    let mut asym: f64 = 0.0;
    for w in &probe {
        let a = radial_function(body, w)?;
        let b = radial_function(body, &(-w))?;
        asym = asym.max((a - b).abs());
        rho_scale = rho_scale.max(a);
    }
    if asym > SYM_TOL * rho_scale {
        return Err(Error::RequiresCentralSymmetry);
    }

    let moments: Vec<Vec<f64>> = directions
        .par_iter()
        .map(|xi| {
            let frame = frame_of(&xi.clone().normalize());
            if dim == 2 {
                let f_pos = radial_function(body, &frame[0])?.powi(power);
                let f_neg = radial_function(body, &(-&frame[0]))?.powi(power);
                return Ok(vec![f_pos + f_neg]);
            }
            let (mut m11, mut m22, mut m12) = (0.0, 0.0, 0.0);
            let wgt = 2.0 * std::f64::consts::PI / n_nodes as f64;
            for j in 0..n_nodes {
                let phi = 2.0 * std::f64::consts::PI * j as f64 / n_nodes as f64;
                let (c, s) = (phi.cos(), phi.sin());
                let w = &frame[0] * c + &frame[1] * s;
                let f = radial_function(body, &w)?.powi(power);
                m11 += wgt * f * c * c;
                m22 += wgt * f * s * s;
                m12 += wgt * f * c * s;
            }
            Ok(vec![m11, m22, m12])
        })
        .collect::<Result<_>>()?;
    let mut diags: Vec<f64> = Vec::new();
    let mut offdiag: f64 = 0.0;
    for m in &moments {
        if dim == 2 {
            diags.push(m[0]);
        } else {
            diags.push(m[0]);
            diags.push(m[1]);
            offdiag = offdiag.max(m[2].abs());
        }
    }
    let constant = median(&mut diags.clone());
    let max_rel_diag_dev = diags
        .iter()
        .map(|d| (d - constant).abs())
        .fold(0.0f64, f64::max)
        / constant;
    let max_rel_offdiag = offdiag / constant;
    Ok(IsotropyReport {
        moments,
        constant,
        max_rel_diag_dev,
        max_rel_offdiag,
        tol,
        pass: max_rel_diag_dev <= tol && max_rel_offdiag <= tol,
    })
}

/// The convex floating body: intersection of the upper half-spaces of all
/// sampled cutting planes. May be empty.
#[derive(Debug, Clone)]
pub struct FloatingBody {
    pub delta: f64,
    /// Supporting half-spaces `{ p·ξ >= t(ξ) }`, stored as (ξ, t).
    pub supports: Vec<(DVector<f64>, f64)>,
    pub body: Option<ConvexBody>,
}

impl FloatingBody {
    /// Per-facet check of the Dupin-body coincidence: the volume each facet
    /// plane of the result cuts off the original body, relative to δ.
    /// Facets inherited from the body itself cut volume ~0 and show up as
    /// gaps near 1.
    pub fn coincidence_gaps(&self, original: &ConvexBody) -> Result<Vec<f64>> {
        let inner = match &self.body {
            Some(b) => b,
            None => return Ok(Vec::new()),
        };
        let hy = Hydrostatics::new(original)?;
        let mut gaps = Vec::with_capacity(inner.facets().len());
        for f in inner.facets() {
            // Outward side of the floating-body facet.
            let cut = hy.submerged_volume(&(-&f.normal), -f.offset);
            gaps.push((cut - self.delta).abs() / self.delta);
        }
        Ok(gaps)
    }
}

/// Intersects the half-spaces above the waterlines of all given directions.
pub fn floating_body(
    body: &ConvexBody,
    delta: f64,
    directions: &[DVector<f64>],
) -> Result<FloatingBody> {
    let hy = Hydrostatics::new(body)?;
    let supports: Vec<(DVector<f64>, f64)> = directions
        .par_iter()
        .map(|xi| {
            let wl = hy.find_waterline(xi, delta, TOL_VOL)?;
            Ok((wl.xi, wl.t))
        })
        .collect::<Result<_>>()?;
    let mut current = Some(body.clone());
    for (xi, t) in &supports {
        let hs = HalfSpace {
            normal: -xi,
            offset: -t,
        };
        current = match current {
            Some(b) => clip(&b, &hs),
            None => None,
        };
        if current.is_none() {
            break;
        }
    }
    // A sliver with no volume counts as empty.
    if let Some(b) = &current {
        if b.volume() <= 0.0 {
            current = None;
        }
    }
    Ok(FloatingBody {
        delta,
        supports,
        body: current,
    })
}

/// Sampled Hausdorff distance via support functions on a deterministic grid.
/// Monotone from below in the grid size.
pub fn hausdorff_distance(a: &ConvexBody, b: &ConvexBody, n_dirs: usize) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    let dirs = grid::directions(a.dim(), n_dirs);
    Ok(dirs
        .iter()
        .map(|w| (a.support(w) - b.support(w)).abs())
        .fold(0.0f64, f64::max))
}

/// Hausdorff distance between a ball and a body, on the same grids.
pub fn hausdorff_to_ball(
    body: &ConvexBody,
    center: &Point,
    radius: f64,
    n_dirs: usize,
) -> f64 {
    let dirs = grid::directions(body.dim(), n_dirs);
    dirs.iter()
        .map(|w| (body.support(w) - (center.dot(w) + radius)).abs())
        .fold(0.0f64, f64::max)
}

/// One shrinking-level record of the ball-limit test.
#[derive(Debug, Clone)]
pub struct BallLimitLevel {
    pub delta: f64,
    pub scan: ScanResult,
    pub fit_center: Point,
    pub fit_radius: f64,
    pub fit_max_rel_dev: f64,
    /// Hausdorff distance from the floating body at this level to the body.
    pub d_floating_to_body: f64,
    /// Hausdorff distance from the fitted sphere of centers to the body.
    pub d_fitted_ball_to_body: f64,
}

#[derive(Debug, Clone)]
pub struct BallLimitReport {
    pub levels: Vec<BallLimitLevel>,
    /// All scans float in every direction.
    pub all_float: bool,
    /// The fitted-sphere-to-body distance decreases strictly along the
    /// sequence (the checkable surrogate for convergence to the body).
    pub fitted_distance_decreasing: bool,
    pub pass: bool,
}

pub struct BallLimitOptions {
    pub scan_dirs: usize,
    pub floating_dirs: usize,
    pub hausdorff_dirs: usize,
    pub tol_eq: f64,
}

/// Runs equilibrium scans and sphere fits along a decreasing sequence of
/// submerged volumes, tracking floating bodies and sphere-fit distances.
pub fn ball_limit_test(
    body: &ConvexBody,
    deltas: &[f64],
    opts: &BallLimitOptions,
) -> Result<BallLimitReport> {
    if deltas.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidArgument(
            "levels must decrease strictly".into(),
        ));
    }
    let hy = Hydrostatics::new(body)?;
    let mut levels = Vec::with_capacity(deltas.len());
    for &delta in deltas {
        let scan = hy.equilibrium_scan(delta, opts.scan_dirs, opts.tol_eq)?;
        let centers: Vec<Point> = scan.records.iter().map(|r| r.center.clone()).collect();
        let (fit_center, fit_radius, fit_max_rel_dev) = sphere_fit(&centers);
        let fb = floating_body(body, delta, &grid::directions(body.dim(), opts.floating_dirs))?;
        let d_floating_to_body = match &fb.body {
            Some(inner) => hausdorff_distance(inner, body, opts.hausdorff_dirs)?,
            None => f64::NAN,
        };
        let d_fitted_ball_to_body =
            hausdorff_to_ball(body, &fit_center, fit_radius, opts.hausdorff_dirs);
        levels.push(BallLimitLevel {
            delta,
            scan,
            fit_center,
            fit_radius,
            fit_max_rel_dev,
            d_floating_to_body,
            d_fitted_ball_to_body,
        });
    }
    let all_float = levels.iter().all(|l| l.scan.floats_all_directions);
    let fitted_distance_decreasing = levels
        .windows(2)
        .all(|w| w[1].d_fitted_ball_to_body < w[0].d_fitted_ball_to_body);
    Ok(BallLimitReport {
        all_float,
        fitted_distance_decreasing,
        pass: all_float && fitted_distance_decreasing,
        levels,
    })
}
