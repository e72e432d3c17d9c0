//! Numerical checks of the three classical tangency/rotation/curvature
//! properties of the surface of buoyancy centers, plus the planar
//! chord-cubed-over-twelve-delta radius formula.

use crate::body::{ConvexBody, HalfSpace, Point};
use crate::error::{Error, Result};
use crate::flotation::Hydrostatics;
use crate::section::{frame_of, moment_about_axis, section};
use nalgebra::DVector;

/// Rotates `xi` by `angle` toward the orthogonal unit direction `e`.
pub fn rotate_toward(xi: &DVector<f64>, e: &DVector<f64>, angle: f64) -> DVector<f64> {
    (xi * angle.cos()) + (e * angle.sin())
}

/// Support-property probe around one direction: every nearby buoyancy center
/// must lie on or above the plane through `C(ξ)` with normal ξ.
#[derive(Debug, Clone)]
pub struct TangencyReport {
    pub xi: DVector<f64>,
    /// (probe angle, probe direction, signed height of C(η) above the plane)
    pub probes: Vec<(f64, DVector<f64>, f64)>,
    /// Most negative signed height observed (≥ 0 means the plane supports).
    pub worst_violation: f64,
}

pub fn check_dupin1(
    body: &ConvexBody,
    delta: f64,
    xi: &DVector<f64>,
    probe_angles: &[f64],
) -> Result<TangencyReport> {
    if probe_angles.iter().any(|a| a.abs() > 0.2) {
        return Err(Error::InvalidArgument(
            "probe angles must stay within 0.2 rad".into(),
        ));
    }
    let hy = Hydrostatics::new(body)?;
    let base = hy.buoyancy_center(xi, delta)?;
    let xi = base.xi.clone();
    let mut probes = Vec::new();
    let mut worst = f64::INFINITY;
    for &angle in probe_angles {
        for e in frame_of(&xi) {
            for sign in [1.0f64, -1.0] {
                let eta = rotate_toward(&xi, &e, sign * angle);
                let rec = hy.buoyancy_center(&eta, delta)?;
                let violation = (&rec.center - &base.center).dot(&xi);
                worst = worst.min(violation);
                probes.push((sign * angle, eta, violation));
            }
        }
    }
    Ok(TangencyReport {
        xi,
        probes,
        worst_violation: worst,
    })
}

/// Volume response to tilting the waterline about an in-plane axis.
#[derive(Debug, Clone)]
pub struct TiltReport {
    pub xi: DVector<f64>,
    pub eta: DVector<f64>,
    pub h: f64,
    pub offset_s: f64,
    pub section_area: f64,
    /// |vol(tilted about the section centroid) - vol(base)|; second order in h.
    pub centered_volume_change: f64,
    /// |vol(tilted about the displaced axis) - vol(base)|; first order in h.
    pub offset_volume_change: f64,
    /// First-order prediction `h * s * area` for the displaced axis.
    pub predicted_first_order: f64,
}

/// Tilts the cutting plane by `h` about the axis through the section centroid
/// orthogonal to `eta` inside the plane, and contrasts with an axis displaced
/// by `offset_s` along `eta`.
pub fn check_dupin2(
    body: &ConvexBody,
    delta: f64,
    xi: &DVector<f64>,
    eta: &DVector<f64>,
    h: f64,
    offset_s: f64,
) -> Result<TiltReport> {
    let hy = Hydrostatics::new(body)?;
    let wl = hy.find_waterline(xi, delta, crate::tol::TOL_VOL)?;
    let xi = wl.xi.clone();
    if (eta.norm() - 1.0).abs() > 1e-7 || eta.dot(&xi).abs() > 1e-7 {
        return Err(Error::AxisNotInSectionPlane);
    }
    let hs = HalfSpace {
        normal: xi.clone(),
        offset: wl.t,
    };
    let sec = section(body, &hs)?;
    let tilted = |pivot: &Point| -> f64 {
        let n = rotate_toward(&xi, eta, h);
        let t = n.dot(pivot);
        hy.submerged_volume(&n, t)
    };
    let centered = tilted(&sec.centroid);
    let displaced = &sec.centroid + eta * offset_s;
    let offset_vol = tilted(&displaced);
    Ok(TiltReport {
        xi,
        eta: eta.clone(),
        h,
        offset_s,
        section_area: sec.area,
        centered_volume_change: (centered - wl.achieved).abs(),
        offset_volume_change: (offset_vol - wl.achieved).abs(),
        predicted_first_order: h.abs() * offset_s.abs() * sec.area,
    })
}

/// Finite-difference metacentric radius versus the section-moment prediction.
#[derive(Debug, Clone)]
pub struct MetacenterEstimate {
    pub xi: DVector<f64>,
    /// Realized tangent direction of the surface of centers (normalized chord
    /// of the two displaced buoyancy centers).
    pub zeta: DVector<f64>,
    pub h: f64,
    /// Circumradius through C(ξ₋ₕ), C(ξ), C(ξ₊ₕ).
    pub r_fd: f64,
    /// Same estimate at step 2h (reported for a refinement check).
    pub r_fd_2h: f64,
    /// Predicted radius: section moment about the centroid axis orthogonal to
    /// the perturbation, divided by the submerged volume.
    pub r_pred: f64,
    pub rel_gap: f64,
}

/// Rocks the cutting direction by ±h in the plane spanned by ξ and the
/// in-plane perturbation `zeta_dir`, and fits the circle through the three
/// buoyancy centers.
pub fn metacentric_radius_fd(
    body: &ConvexBody,
    delta: f64,
    xi: &DVector<f64>,
    zeta_dir: &DVector<f64>,
    h: f64,
) -> Result<MetacenterEstimate> {
    if !(h > 0.0 && h <= 0.2) {
        return Err(Error::InvalidArgument("step must lie in (0, 0.2]".into()));
    }
    let hy = Hydrostatics::new(body)?;
    let base = hy.buoyancy_center(xi, delta)?;
    let xi = base.xi.clone();
    if (zeta_dir.norm() - 1.0).abs() > 1e-7 || zeta_dir.dot(&xi).abs() > 1e-7 {
        return Err(Error::AxisNotInSectionPlane);
    }
    let center_at = |angle: f64| -> Result<Point> {
        let eta = rotate_toward(&xi, zeta_dir, angle);
        Ok(hy.buoyancy_center(&eta, delta)?.center)
    };
    let c_m = center_at(-h)?;
    let c_p = center_at(h)?;
    let r_fd = circumradius(&c_m, &base.center, &c_p)?;
    let c_m2 = center_at(-2.0 * h)?;
    let c_p2 = center_at(2.0 * h)?;
    let r_fd_2h = circumradius(&c_m2, &base.center, &c_p2)?;
    let zeta = {
        let chord = &c_p - &c_m;
        let len = chord.norm();
        if len <= body.eps_geom() {
            return Err(Error::CurvatureUndefined);
        }
        chord / len
    };
    let hs = HalfSpace {
        normal: xi.clone(),
        offset: base.t,
    };
    let sec = section(body, &hs)?;
    let r_pred = moment_about_axis(&sec, zeta_dir)? / base.volume;
    let rel_gap = (r_fd - r_pred).abs() / r_pred;
    Ok(MetacenterEstimate {
        xi,
        zeta,
        h,
        r_fd,
        r_fd_2h,
        r_pred,
        rel_gap,
    })
}

/// Circumradius of a triangle in any dimension, via the Gram identity
/// `(2·area)² = |AB|²|AC|² - (AB·AC)²`. Errors when the points are collinear
/// at working precision (flat surface of centers).
fn circumradius(a: &Point, b: &Point, c: &Point) -> Result<f64> {
    let ab = b - a;
    let ac = c - a;
    let bc = c - b;
    let g = ab.norm_squared() * ac.norm_squared() - ab.dot(&ac).powi(2);
    let scale = ab.norm() * ac.norm();
    if g <= (1e-12 * scale).powi(2) {
        return Err(Error::CurvatureUndefined);
    }
    Ok(ab.norm() * ac.norm() * bc.norm() / (2.0 * g.sqrt()))
}

/// Planar curvature check: chord length cubed over (12 · submerged area)
/// against the finite-difference radius of the curve of centers.
#[derive(Debug, Clone)]
pub struct DavidovReport {
    pub xi: DVector<f64>,
    pub h: f64,
    pub chord_length: f64,
    pub r_pred: f64,
    pub r_fd: f64,
    pub rel_gap: f64,
}

pub fn davidov_2d_check(
    body: &ConvexBody,
    delta: f64,
    xi: &DVector<f64>,
    h: f64,
) -> Result<DavidovReport> {
    if body.dim() != 2 {
        return Err(Error::DimensionMismatch(body.dim(), 2));
    }
    let hy = Hydrostatics::new(body)?;
    let base = hy.buoyancy_center(xi, delta)?;
    let xi = base.xi.clone();
    let hs = HalfSpace {
        normal: xi.clone(),
        offset: base.t,
    };
    let sec = section(body, &hs)?;
    let chord = sec.area;
    let r_pred = chord.powi(3) / (12.0 * delta);
    let rot = |angle: f64| -> DVector<f64> {
        DVector::from_vec(vec![
            xi[0] * angle.cos() - xi[1] * angle.sin(),
            xi[0] * angle.sin() + xi[1] * angle.cos(),
        ])
    };
    let c_m = hy.buoyancy_center(&rot(-h), delta)?.center;
    let c_p = hy.buoyancy_center(&rot(h), delta)?.center;
    let r_fd = circumradius(&c_m, &base.center, &c_p)?;
    Ok(DavidovReport {
        xi,
        h,
        chord_length: chord,
        r_pred,
        r_fd,
        rel_gap: (r_fd - r_pred).abs() / r_pred,
    })
}
