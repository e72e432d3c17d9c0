//! Convex polytope representation: vertices plus facet planes with incidence.
//!
//! A `ConvexBody` is the universal body representation. Smooth bodies (balls,
//! ellipsoids, logs) are meshed into polytopes by the generators; every
//! downstream quantity is then exact on the mesh up to floating-point
//! rounding, and converges to the smooth value under refinement.
//!
//! Conventions:
//! - facet planes are `x . normal = offset` with unit outward normals, so the
//!   body is `{ x : x . normal <= offset }` for every facet;
//! - in 2D the vertex list is stored in counterclockwise ring order and facets
//!   are the consecutive edges;
//! - in 3D facet vertex lists are ordered loops, counterclockwise when viewed
//!   from outside.

use crate::error::{Error, Result};
use crate::hull;
use crate::tol::EPS_GEOM_REL;
use nalgebra::{DMatrix, DVector};

pub type Point = DVector<f64>;

/// Closed half-space `{ p : p . normal <= offset }`.
#[derive(Debug, Clone)]
pub struct HalfSpace {
    pub normal: DVector<f64>,
    pub offset: f64,
}

impl HalfSpace {
    /// Builds a half-space, normalizing the direction.
    pub fn new(normal: DVector<f64>, offset: f64) -> Result<Self> {
        let n = normal.norm();
        if !n.is_finite() || n < 1e-14 {
            return Err(Error::InvalidArgument("half-space normal is zero".into()));
        }
        Ok(Self {
            normal: normal / n,
            offset: offset / n,
        })
    }

    /// The complementary half-space `{ p : p . normal >= offset }`.
    pub fn complement(&self) -> Self {
        Self {
            normal: -&self.normal,
            offset: -self.offset,
        }
    }

    pub fn signed_distance(&self, p: &Point) -> f64 {
        self.normal.dot(p) - self.offset
    }
}

/// One facet of a convex polytope: its supporting plane and vertex loop.
#[derive(Debug, Clone)]
pub struct Facet {
    /// Unit outward normal.
    pub normal: DVector<f64>,
    /// Plane offset: `x . normal = offset` on the facet plane.
    pub offset: f64,
    /// Indices into the body vertex list. Ordered loop for d = 3.
    pub vertices: Vec<usize>,
}

/// A bounded convex polytope with non-empty interior.
#[derive(Debug, Clone)]
pub struct ConvexBody {
    dim: usize,
    vertices: Vec<Point>,
    facets: Vec<Facet>,
    diameter: f64,
}

impl ConvexBody {
    /// Builds a body from explicit vertices and facets and validates it.
    pub fn from_parts(dim: usize, vertices: Vec<Point>, facets: Vec<Facet>) -> Result<Self> {
        let body = Self::from_parts_unchecked(dim, vertices, facets);
        body.validate()?;
        if body.volume() <= 0.0 {
            return Err(Error::DegenerateBody);
        }
        Ok(body)
    }

    /// Internal constructor without the validation pass; used by `clip`, which
    /// maintains the invariants itself and may legitimately produce slivers.
    pub(crate) fn from_parts_unchecked(
        dim: usize,
        vertices: Vec<Point>,
        facets: Vec<Facet>,
    ) -> Self {
        let diameter = bbox_diameter(&vertices);
        Self {
            dim,
            vertices,
            facets,
            diameter,
        }
    }

    /// Builds a body as the convex hull of a point cloud (d = 2 or 3).
    ///
    /// Facet structure is computed by the hull; interior points are dropped.
    pub fn from_points(dim: usize, points: Vec<Point>) -> Result<Self> {
        if dim > 3 {
            return Err(Error::UnsupportedDimension(dim));
        }
        let (vertices, facets) = hull::convex_hull(dim, points)?;
        Self::from_parts(dim, vertices, facets)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Bounding-box diagonal; the length scale for geometric tolerances.
    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    /// Absolute geometric tolerance for this body.
    pub fn eps_geom(&self) -> f64 {
        EPS_GEOM_REL * self.diameter
    }

    /// A strictly interior point (the vertex average).
    pub fn interior_point(&self) -> Point {
        let mut sum = DVector::zeros(self.dim);
        for v in &self.vertices {
            sum += v;
        }
        sum / self.vertices.len() as f64
    }

    /// Support function `h(w) = max_v v . w` (w need not be unit).
    pub fn support(&self, w: &DVector<f64>) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.dot(w))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// True if `p` satisfies all facet inequalities within `tol`.
    pub fn contains(&self, p: &Point, tol: f64) -> bool {
        self.facets
            .iter()
            .all(|f| f.normal.dot(p) <= f.offset + tol)
    }

    /// Checks the structural invariants: unit normals, vertices inside all
    /// facet half-spaces, facet vertices on their planes, full dimension.
    pub fn validate(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(Error::UnsupportedDimension(self.dim));
        }
        if self.vertices.len() < self.dim + 1 {
            return Err(Error::InvalidBody("fewer than d+1 vertices".into()));
        }
        if self.facets.len() < self.dim + 1 {
            return Err(Error::InvalidBody("fewer than d+1 facets".into()));
        }
        let eps = self.eps_geom().max(1e-14);
        for (i, f) in self.facets.iter().enumerate() {
            if f.normal.len() != self.dim {
                return Err(Error::DimensionMismatch(f.normal.len(), self.dim));
            }
            if (f.normal.norm() - 1.0).abs() > 1e-7 {
                return Err(Error::InvalidBody(format!("facet {i} normal not unit")));
            }
            if f.vertices.len() < self.dim {
                return Err(Error::InvalidBody(format!("facet {i} has too few vertices")));
            }
            for &vi in &f.vertices {
                let d = f.normal.dot(&self.vertices[vi]) - f.offset;
                if d.abs() > 64.0 * eps {
                    return Err(Error::InvalidBody(format!(
                        "facet {i} vertex {vi} off its plane by {d:.3e}"
                    )));
                }
            }
        }
        for (vi, v) in self.vertices.iter().enumerate() {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch(v.len(), self.dim));
            }
            for (i, f) in self.facets.iter().enumerate() {
                let d = f.normal.dot(v) - f.offset;
                if d > 64.0 * eps {
                    return Err(Error::InvalidBody(format!(
                        "vertex {vi} outside facet {i} by {d:.3e}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The body translated by `v`.
    pub fn translated(&self, v: &DVector<f64>) -> Self {
        let vertices: Vec<Point> = self.vertices.iter().map(|p| p + v).collect();
        let facets = self
            .facets
            .iter()
            .map(|f| Facet {
                normal: f.normal.clone(),
                offset: f.offset + f.normal.dot(v),
                vertices: f.vertices.clone(),
            })
            .collect();
        Self::from_parts_unchecked(self.dim, vertices, facets)
    }

    /// The image of the body under an invertible linear map.
    ///
    /// Vertex incidence is preserved (affine images of planes are planes);
    /// facet planes are recomputed from the mapped loops.
    pub fn linear_map(&self, m: &DMatrix<f64>) -> Result<Self> {
        if m.nrows() != self.dim || m.ncols() != self.dim {
            return Err(Error::DimensionMismatch(m.nrows(), self.dim));
        }
        let mut vertices: Vec<Point> = self.vertices.iter().map(|p| m * p).collect();
        let mut facets = self.facets.clone();
        if self.dim == 2 && ring_signed_area(&vertices) < 0.0 {
            // Orientation-reversing map: restore the CCW ring convention.
            vertices.reverse();
            let n = vertices.len();
            facets = (0..n)
                .map(|i| Facet {
                    normal: DVector::zeros(2),
                    offset: 0.0,
                    vertices: vec![i, (i + 1) % n],
                })
                .collect();
        }
        let interior = {
            let mut sum = DVector::zeros(self.dim);
            for v in &vertices {
                sum += v;
            }
            sum / vertices.len() as f64
        };
        for f in &mut facets {
            let (normal, offset) = plane_through(self.dim, &vertices, &f.vertices, &interior)?;
            f.normal = normal;
            f.offset = offset;
        }
        let body = Self::from_parts_unchecked(self.dim, vertices, facets);
        body.validate()?;
        if body.volume() <= 0.0 {
            return Err(Error::DegenerateBody);
        }
        Ok(body)
    }

    /// The body scaled by `lambda > 0` about the origin.
    pub fn scaled(&self, lambda: f64) -> Self {
        let vertices = self.vertices.iter().map(|p| p * lambda).collect();
        let facets = self
            .facets
            .iter()
            .map(|f| Facet {
                normal: f.normal.clone(),
                offset: f.offset * lambda,
                vertices: f.vertices.clone(),
            })
            .collect();
        Self::from_parts_unchecked(self.dim, vertices, facets)
    }
}

/// Fits the supporting plane through a facet's vertices, oriented away from
/// `interior`. Uses Newell's method in 3D and the edge normal in 2D.
fn plane_through(
    dim: usize,
    vertices: &[Point],
    facet: &[usize],
    interior: &Point,
) -> Result<(DVector<f64>, f64)> {
    let mut normal = DVector::zeros(dim);
    match dim {
        2 => {
            let a = &vertices[facet[0]];
            let b = &vertices[facet[1]];
            normal[0] = b[1] - a[1];
            normal[1] = a[0] - b[0];
        }
        3 => {
            // Newell: area-weighted normal of an ordered planar loop.
            for i in 0..facet.len() {
                let a = &vertices[facet[i]];
                let b = &vertices[facet[(i + 1) % facet.len()]];
                normal[0] += (a[1] - b[1]) * (a[2] + b[2]);
                normal[1] += (a[2] - b[2]) * (a[0] + b[0]);
                normal[2] += (a[0] - b[0]) * (a[1] + b[1]);
            }
        }
        _ => return Err(Error::UnsupportedDimension(dim)),
    }
    let len = normal.norm();
    if len < 1e-300 {
        return Err(Error::InvalidBody("degenerate facet".into()));
    }
    normal /= len;
    let mut mean = 0.0;
    for &vi in facet {
        mean += normal.dot(&vertices[vi]);
    }
    let offset = mean / facet.len() as f64;
    if normal.dot(interior) > offset {
        Ok((-normal, -offset))
    } else {
        Ok((normal, offset))
    }
}

fn ring_signed_area(vertices: &[Point]) -> f64 {
    let n = vertices.len();
    let mut s = 0.0;
    for i in 0..n {
        let a = &vertices[i];
        let b = &vertices[(i + 1) % n];
        s += a[0] * b[1] - b[0] * a[1];
    }
    0.5 * s
}

fn bbox_diameter(vertices: &[Point]) -> f64 {
    if vertices.is_empty() {
        return 0.0;
    }
    let dim = vertices[0].len();
    let mut lo = vec![f64::INFINITY; dim];
    let mut hi = vec![f64::NEG_INFINITY; dim];
    for v in vertices {
        for k in 0..dim {
            lo[k] = lo[k].min(v[k]);
            hi[k] = hi[k].max(v[k]);
        }
    }
    (0..dim).map(|k| (hi[k] - lo[k]).powi(2)).sum::<f64>().sqrt()
}

/// Orders a set of coplanar points (given by index) counterclockwise about
/// their mean, viewed along `normal`. Exact for vertex sets of convex facets.
pub(crate) fn order_loop(points: &[Point], indices: &mut [usize], normal: &DVector<f64>) {
    if indices.len() <= 3 {
        // A triangle only needs a consistent orientation, fixed below.
    }
    let dim = normal.len();
    let mut mean = DVector::zeros(dim);
    for &i in indices.iter() {
        mean += &points[i];
    }
    mean /= indices.len() as f64;
    // Frame (e1, e2, normal) right-handed.
    let e1 = {
        let mut best = DVector::zeros(dim);
        let mut best_norm = -1.0;
        for k in 0..dim {
            let mut axis = DVector::zeros(dim);
            axis[k] = 1.0;
            let cand = &axis - normal * normal[k];
            if cand.norm() > best_norm {
                best_norm = cand.norm();
                best = cand;
            }
        }
        best.normalize()
    };
    let e2 = cross3(normal, &e1);
    let mut keyed: Vec<(f64, usize)> = indices
        .iter()
        .map(|&i| {
            let r = &points[i] - &mean;
            (r.dot(&e2).atan2(r.dot(&e1)), i)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    for (slot, (_, i)) in keyed.into_iter().enumerate() {
        indices[slot] = i;
    }
}

pub(crate) fn cross3(a: &DVector<f64>, b: &DVector<f64>) -> DVector<f64> {
    DVector::from_vec(vec![
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ])
}

#[cfg(test)]
pub(crate) fn pt(coords: &[f64]) -> Point {
    DVector::from_row_slice(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn box_invariants_hold() {
        let b = zoo::make_box(2.0, 1.0, 1.0).unwrap();
        b.validate().unwrap();
        assert_eq!(b.dim(), 3);
        assert_eq!(b.facets().len(), 6);
        assert!((b.diameter() - 6.0f64.sqrt()).abs() < 1e-12);
        let c = b.interior_point();
        assert!(b.contains(&c, 0.0));
    }

    #[test]
    fn halfspace_normalizes() {
        let hs = HalfSpace::new(pt(&[0.0, 0.0, 2.0]), 1.0).unwrap();
        assert!((hs.normal[2] - 1.0).abs() < 1e-15);
        assert!((hs.offset - 0.5).abs() < 1e-15);
        assert!(HalfSpace::new(pt(&[0.0, 0.0, 0.0]), 1.0).is_err());
    }

    #[test]
    fn translated_and_scaled_keep_invariants() {
        let b = zoo::make_box(1.0, 1.0, 1.0).unwrap();
        let t = b.translated(&pt(&[0.5, -1.0, 2.0]));
        t.validate().unwrap();
        let s = b.scaled(3.0);
        s.validate().unwrap();
        assert!((s.volume() - 27.0).abs() < 1e-12);
    }

    #[test]
    fn linear_map_rebuilds_planes() {
        let b = zoo::make_box(1.0, 1.0, 1.0).unwrap();
        let mut m = DMatrix::identity(3, 3);
        m[(0, 0)] = 2.0;
        m[(0, 1)] = 0.5;
        let im = b.linear_map(&m).unwrap();
        im.validate().unwrap();
        assert!((im.volume() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn reflection_keeps_2d_ring_ccw() {
        let sq = zoo::make_rect(1.0, 2.0).unwrap();
        let mut m = DMatrix::identity(2, 2);
        m[(0, 0)] = -1.0;
        let im = sq.linear_map(&m).unwrap();
        im.validate().unwrap();
        assert!((im.volume() - 2.0).abs() < 1e-12);
    }
}
