//! Cutting sections: the (d-1)-polytope `K ∩ H`, carried with an orthonormal
//! frame of the cutting plane, its centroid, area and centered second-moment
//! matrix.

use crate::body::{ConvexBody, HalfSpace, Point};
use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};
use std::collections::HashSet;

/// Deterministic orthonormal basis of `xi^⊥`: Gram-Schmidt on the standard
/// basis with the coordinate of largest `|xi_k|` dropped.
pub fn frame_of(xi: &DVector<f64>) -> Vec<DVector<f64>> {
    let d = xi.len();
    let drop = (0..d)
        .max_by(|&a, &b| xi[a].abs().partial_cmp(&xi[b].abs()).unwrap())
        .unwrap();
    let mut frame: Vec<DVector<f64>> = Vec::with_capacity(d - 1);
    for k in 0..d {
        if k == drop {
            continue;
        }
        let mut v = DVector::zeros(d);
        v[k] = 1.0;
        v -= xi * xi[k];
        for u in &frame {
            let proj = u.dot(&v);
            v -= u * proj;
        }
        let len = v.norm();
        v /= len;
        frame.push(v);
    }
    frame
}

/// A planar cut of a convex body.
#[derive(Debug, Clone)]
pub struct Section {
    /// Unit normal of the cutting plane.
    pub xi: DVector<f64>,
    /// Plane offset, `x·xi = t`.
    pub t: f64,
    /// Orthonormal basis of `xi^⊥`.
    pub frame: Vec<DVector<f64>>,
    /// Section vertices in frame coordinates, CCW-ordered for d = 3; two
    /// endpoints for d = 2.
    pub poly: Vec<DVector<f64>>,
    /// Centroid in ambient coordinates.
    pub centroid: Point,
    /// (d-1)-dimensional volume (area for d = 3, chord length for d = 2).
    pub area: f64,
    /// Second-moment matrix about the centroid, in frame coordinates.
    pub moment: DMatrix<f64>,
}

/// Extracts the section `body ∩ {x·xi = t}`.
///
/// Errors with `EmptySection` unless the plane meets the interior.
pub fn section(body: &ConvexBody, hs: &HalfSpace) -> Result<Section> {
    let eps = body.eps_geom();
    let dim = body.dim();
    let heights: Vec<f64> = body
        .vertices()
        .iter()
        .map(|v| hs.signed_distance(v))
        .collect();
    let strictly_in = heights.iter().any(|&h| h < -eps);
    let strictly_out = heights.iter().any(|&h| h > eps);
    if !(strictly_in && strictly_out) {
        return Err(Error::EmptySection);
    }

    let mut points: Vec<Point> = Vec::new();
    for (i, &h) in heights.iter().enumerate() {
        if h.abs() <= eps {
            points.push(&body.vertices()[i] - &hs.normal * h);
        }
    }
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut edge = |a: usize, b: usize, points: &mut Vec<Point>| {
        let key = (a.min(b), a.max(b));
        if !seen.insert(key) {
            return;
        }
        let (ha, hb) = (heights[key.0], heights[key.1]);
        if (ha < -eps && hb > eps) || (ha > eps && hb < -eps) {
            let tau = ha / (ha - hb);
            let p = &body.vertices()[key.0]
                + (&body.vertices()[key.1] - &body.vertices()[key.0]) * tau;
            points.push(p);
        }
    };
    for f in body.facets() {
        let l = &f.vertices;
        for i in 0..l.len() {
            if dim == 2 && i > 0 {
                break;
            }
            edge(l[i], l[(i + 1) % l.len()], &mut points);
        }
    }
    if points.len() < dim {
        return Err(Error::EmptySection);
    }

    let frame = frame_of(&hs.normal);
    let mut coords: Vec<DVector<f64>> = points
        .iter()
        .map(|p| DVector::from_iterator(dim - 1, frame.iter().map(|e| e.dot(p))))
        .collect();

    match dim {
        2 => {
            let (mut lo, mut hi) = (0usize, 0usize);
            for (i, c) in coords.iter().enumerate() {
                if c[0] < coords[lo][0] {
                    lo = i;
                }
                if c[0] > coords[hi][0] {
                    hi = i;
                }
            }
            let (a, b) = (coords[lo][0], coords[hi][0]);
            let len = b - a;
            if len <= eps {
                return Err(Error::EmptySection);
            }
            let mid = 0.5 * (a + b);
            let centroid = &hs.normal * hs.offset + &frame[0] * mid;
            let mut moment = DMatrix::zeros(1, 1);
            moment[(0, 0)] = len.powi(3) / 12.0;
            Ok(Section {
                xi: hs.normal.clone(),
                t: hs.offset,
                frame,
                poly: vec![DVector::from_vec(vec![a]), DVector::from_vec(vec![b])],
                centroid,
                area: len,
                moment,
            })
        }
        3 => {
            // CCW order about the mean point (convex section).
            let mut mean = DVector::zeros(2);
            for c in &coords {
                mean += c;
            }
            mean /= coords.len() as f64;
            coords.sort_by(|p, q| {
                let a = (p[1] - mean[1]).atan2(p[0] - mean[0]);
                let b = (q[1] - mean[1]).atan2(q[0] - mean[0]);
                a.partial_cmp(&b).unwrap()
            });
            let (area, c2) = polygon_area_centroid(&coords);
            if area <= eps * eps {
                return Err(Error::EmptySection);
            }
            let moment = polygon_second_moment(&coords, &c2);
            let centroid = &hs.normal * hs.offset + &frame[0] * c2[0] + &frame[1] * c2[1];
            Ok(Section {
                xi: hs.normal.clone(),
                t: hs.offset,
                frame,
                poly: coords,
                centroid,
                area,
                moment,
            })
        }
        d => Err(Error::UnsupportedDimension(d)),
    }
}

fn polygon_area_centroid(poly: &[DVector<f64>]) -> (f64, DVector<f64>) {
    let n = poly.len();
    let mut area = 0.0;
    let mut cx = 0.0;
    let mut cy = 0.0;
    for i in 0..n {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        let w = a[0] * b[1] - b[0] * a[1];
        area += w;
        cx += (a[0] + b[0]) * w;
        cy += (a[1] + b[1]) * w;
    }
    area *= 0.5;
    if area.abs() < 1e-300 {
        return (0.0, DVector::zeros(2));
    }
    (area, DVector::from_vec(vec![cx / (6.0 * area), cy / (6.0 * area)]))
}

/// Exact polygon second moments about `center`: fan triangulation plus the
/// closed-form simplex formula `(A/12) (Σ wᵢwᵢᵀ + (Σwᵢ)(Σwᵢ)ᵀ)`.
fn polygon_second_moment(poly: &[DVector<f64>], center: &DVector<f64>) -> DMatrix<f64> {
    let n = poly.len();
    let mut acc = DMatrix::zeros(2, 2);
    let w0 = &poly[0] - center;
    for i in 1..n - 1 {
        let w1 = &poly[i] - center;
        let w2 = &poly[i + 1] - center;
        let area = 0.5 * ((w1[0] - w0[0]) * (w2[1] - w0[1]) - (w2[0] - w0[0]) * (w1[1] - w0[1]));
        let sum = &w0 + &w1 + &w2;
        let mut t = DMatrix::zeros(2, 2);
        for w in [&w0, &w1, &w2] {
            t += w * w.transpose();
        }
        t += &sum * sum.transpose();
        acc += t * (area / 12.0);
    }
    acc
}

/// Moment of inertia `ηᵀ J η = ∫ (u·η)² du` of the section about the centroid
/// axis orthogonal to `eta` within the cutting plane.
pub fn moment_about_axis(sec: &Section, eta: &DVector<f64>) -> Result<f64> {
    if (eta.norm() - 1.0).abs() > 1e-7 || eta.dot(&sec.xi).abs() > 1e-7 {
        return Err(Error::AxisNotInSectionPlane);
    }
    let k = sec.frame.len();
    let ef = DVector::from_iterator(k, sec.frame.iter().map(|e| e.dot(eta)));
    Ok((&sec.moment * &ef).dot(&ef))
}

/// Radial function of the section about its centroid: the distance from the
/// centroid to the boundary in the in-plane unit direction `w` (frame coords).
pub fn section_radial(sec: &Section, w: &DVector<f64>) -> f64 {
    match sec.frame.len() {
        1 => {
            let c = 0.5 * (sec.poly[0][0] + sec.poly[1][0]);
            if w[0] >= 0.0 {
                sec.poly[0][0].max(sec.poly[1][0]) - c
            } else {
                c - sec.poly[0][0].min(sec.poly[1][0])
            }
        }
        _ => {
            let n = sec.poly.len();
            let cx = sec
                .frame
                .iter()
                .map(|e| e.dot(&sec.centroid))
                .collect::<Vec<_>>();
            let mut best = 0.0f64;
            for i in 0..n {
                let a = &sec.poly[i];
                let b = &sec.poly[(i + 1) % n];
                // Solve c + λ w = a + s (b - a).
                let ex = b[0] - a[0];
                let ey = b[1] - a[1];
                let det = w[0] * (-ey) - w[1] * (-ex);
                if det.abs() < 1e-300 {
                    continue;
                }
                let rx = a[0] - cx[0];
                let ry = a[1] - cx[1];
                let lambda = (rx * (-ey) + ry * ex) / det;
                let s = (w[0] * ry - w[1] * rx) / det;
                if lambda > 0.0 && (-1e-9..=1.0 + 1e-9).contains(&s) {
                    best = best.max(lambda);
                }
            }
            best
        }
    }
}
