//! Convex hulls in 2D and 3D.
//!
//! 2D: Andrew's monotone chain, returning the CCW vertex ring.
//! 3D: incremental insertion with horizon repair and a final pass that merges
//! coplanar triangles into polygon facets.

use crate::body::{cross3, order_loop, Facet, Point};
use crate::error::{Error, Result};
use nalgebra::DVector;
use std::collections::HashMap;

/// Hull of a point cloud. Returns the extreme points (reindexed) and the
/// facet structure with unit outward normals.
pub fn convex_hull(dim: usize, points: Vec<Point>) -> Result<(Vec<Point>, Vec<Facet>)> {
    match dim {
        2 => hull_2d(points),
        3 => hull_3d(points),
        _ => Err(Error::UnsupportedDimension(dim)),
    }
}

fn scale_of(points: &[Point]) -> f64 {
    let mut s: f64 = 0.0;
    for p in points {
        for k in 0..p.len() {
            s = s.max(p[k].abs());
        }
    }
    s.max(1e-300)
}

fn dedup(points: Vec<Point>, eps: f64) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(points.len());
    for p in points {
        if !out.iter().any(|q| (&p - q).norm() <= eps) {
            out.push(p);
        }
    }
    out
}

fn hull_2d(points: Vec<Point>) -> Result<(Vec<Point>, Vec<Facet>)> {
    let scale = scale_of(&points);
    let mut pts = dedup(points, 1e-12 * scale);
    if pts.len() < 3 {
        return Err(Error::InvalidBody("need at least 3 distinct points".into()));
    }
    pts.sort_by(|a, b| (a[0], a[1]).partial_cmp(&(b[0], b[1])).unwrap());
    let eps_area = 1e-12 * scale * scale;
    let cross = |o: &Point, a: &Point, b: &Point| -> f64 {
        (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    };
    let build = |iter: Box<dyn Iterator<Item = &Point> + '_>| -> Vec<Point> {
        let mut chain: Vec<Point> = Vec::new();
        for p in iter {
            while chain.len() >= 2
                && cross(&chain[chain.len() - 2], &chain[chain.len() - 1], p) <= eps_area
            {
                chain.pop();
            }
            chain.push(p.clone());
        }
        chain
    };
    let mut lower = build(Box::new(pts.iter()));
    let mut upper = build(Box::new(pts.iter().rev()));
    lower.pop();
    upper.pop();
    lower.append(&mut upper);
    let ring = lower;
    if ring.len() < 3 {
        return Err(Error::InvalidBody("points are collinear".into()));
    }
    let n = ring.len();
    let mut facets = Vec::with_capacity(n);
    for i in 0..n {
        let a = &ring[i];
        let b = &ring[(i + 1) % n];
        let mut normal = DVector::from_vec(vec![b[1] - a[1], a[0] - b[0]]);
        let len = normal.norm();
        normal /= len;
        let offset = 0.5 * (normal.dot(a) + normal.dot(b));
        facets.push(Facet {
            normal,
            offset,
            vertices: vec![i, (i + 1) % n],
        });
    }
    Ok((ring, facets))
}

#[derive(Clone)]
struct Tri {
    v: [usize; 3],
    normal: DVector<f64>,
    offset: f64,
}

fn tri_plane(pts: &[Point], v: [usize; 3], interior: &Point) -> Option<Tri> {
    let a = &pts[v[0]];
    let ab = &pts[v[1]] - a;
    let ac = &pts[v[2]] - a;
    let mut normal = cross3(&ab, &ac);
    let len = normal.norm();
    if len < 1e-300 {
        return None;
    }
    normal /= len;
    let mut offset = normal.dot(a);
    if normal.dot(interior) > offset {
        normal = -normal;
        offset = -offset;
    }
    Some(Tri { v, normal, offset })
}

fn hull_3d(points: Vec<Point>) -> Result<(Vec<Point>, Vec<Facet>)> {
    let scale = scale_of(&points);
    let pts = dedup(points, 1e-12 * scale);
    if pts.len() < 4 {
        return Err(Error::InvalidBody("need at least 4 distinct points".into()));
    }
    let eps = 1e-12 * scale;

    // Initial simplex: spread apart in each successive dimension.
    let i0 = 0;
    let i1 = (0..pts.len())
        .max_by(|&a, &b| {
            let da = (&pts[a] - &pts[i0]).norm();
            let db = (&pts[b] - &pts[i0]).norm();
            da.partial_cmp(&db).unwrap()
        })
        .unwrap();
    let axis = (&pts[i1] - &pts[i0]).normalize();
    let i2 = (0..pts.len())
        .max_by(|&a, &b| {
            let da = cross3(&axis, &(&pts[a] - &pts[i0])).norm();
            let db = cross3(&axis, &(&pts[b] - &pts[i0])).norm();
            da.partial_cmp(&db).unwrap()
        })
        .unwrap();
    let n0 = cross3(&(&pts[i1] - &pts[i0]), &(&pts[i2] - &pts[i0]));
    if n0.norm() < eps * scale {
        return Err(Error::InvalidBody("points are collinear".into()));
    }
    let n0 = n0.normalize();
    let i3 = (0..pts.len())
        .max_by(|&a, &b| {
            let da = n0.dot(&(&pts[a] - &pts[i0])).abs();
            let db = n0.dot(&(&pts[b] - &pts[i0])).abs();
            da.partial_cmp(&db).unwrap()
        })
        .unwrap();
    if n0.dot(&(&pts[i3] - &pts[i0])).abs() < eps * scale {
        return Err(Error::InvalidBody("points are coplanar".into()));
    }
    let interior =
        (&pts[i0] + &pts[i1] + &pts[i2] + &pts[i3]).unscale(4.0);

    let mut tris: Vec<Tri> = [
        [i0, i1, i2],
        [i0, i1, i3],
        [i0, i2, i3],
        [i1, i2, i3],
    ]
    .into_iter()
    .filter_map(|v| tri_plane(&pts, v, &interior))
    .collect();
    if tris.len() != 4 {
        return Err(Error::InvalidBody("degenerate initial simplex".into()));
    }

    let eps_vis = 1e-10 * scale;
    let seed = [i0, i1, i2, i3];
    for (pi, p) in pts.iter().enumerate() {
        if seed.contains(&pi) {
            continue;
        }
        let mut visible = vec![false; tris.len()];
        let mut any = false;
        for (ti, t) in tris.iter().enumerate() {
            if t.normal.dot(p) - t.offset > eps_vis {
                visible[ti] = true;
                any = true;
            }
        }
        if !any {
            continue;
        }
        // Expand across near-coplanar neighbors so the horizon stays clean.
        let mut edge_map: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (ti, t) in tris.iter().enumerate() {
            for e in 0..3 {
                let a = t.v[e];
                let b = t.v[(e + 1) % 3];
                let key = (a.min(b), a.max(b));
                edge_map.entry(key).or_default().push(ti);
            }
        }
        let mut stack: Vec<usize> = (0..tris.len()).filter(|&i| visible[i]).collect();
        while let Some(ti) = stack.pop() {
            let t = tris[ti].clone();
            for e in 0..3 {
                let a = t.v[e];
                let b = t.v[(e + 1) % 3];
                let key = (a.min(b), a.max(b));
                for &nb in &edge_map[&key] {
                    if !visible[nb] && tris[nb].normal.dot(p) - tris[nb].offset > -eps_vis {
                        visible[nb] = true;
                        stack.push(nb);
                    }
                }
            }
        }
        // Horizon: undirected edges with exactly one visible incident facet.
        let mut horizon: Vec<(usize, usize)> = Vec::new();
        for (&(a, b), owners) in &edge_map {
            let vis_count = owners.iter().filter(|&&t| visible[t]).count();
            if vis_count == 1 && owners.len() == 2 {
                horizon.push((a, b));
            }
        }
        if horizon.is_empty() {
            continue;
        }
        let mut next: Vec<Tri> = tris
            .iter()
            .enumerate()
            .filter(|(i, _)| !visible[*i])
            .map(|(_, t)| t.clone())
            .collect();
        for (a, b) in horizon {
            if let Some(t) = tri_plane(&pts, [pi, a, b], &interior) {
                next.push(t);
            }
        }
        tris = next;
    }

    merge_coplanar(&pts, tris, scale)
}

/// Groups coplanar triangles of the triangulated hull into polygon facets,
/// then drops interior points and reindexes. A group is only merged when all
/// of its vertices verifiably lie on one plane; near-coplanar slivers (thin
/// sphere-mesh triangles) stay separate.
fn merge_coplanar(
    pts: &[Point],
    tris: Vec<Tri>,
    scale: f64,
) -> Result<(Vec<Point>, Vec<Facet>)> {
    let ang_tol = 1e-8;
    let off_tol = 1e-8 * scale;
    let planar_tol = 1e-10 * scale;
    let mut groups: Vec<(DVector<f64>, f64, Vec<usize>)> = Vec::new();
    for (ti, t) in tris.iter().enumerate() {
        let mut placed = false;
        for g in groups.iter_mut() {
            if t.normal.dot(&g.0) > 1.0 - ang_tol && (t.offset - g.1).abs() < off_tol {
                g.2.push(ti);
                placed = true;
                break;
            }
        }
        if !placed {
            groups.push((t.normal.clone(), t.offset, vec![ti]));
        }
    }

    // Resolve each group into one polygon facet or its original triangles.
    let mut raw_facets: Vec<(DVector<f64>, f64, Vec<usize>)> = Vec::new();
    for (normal, offset, members) in groups {
        let mut vs: Vec<usize> = members.iter().flat_map(|&ti| tris[ti].v).collect();
        vs.sort_unstable();
        vs.dedup();
        let planar = vs
            .iter()
            .all(|&vi| (normal.dot(&pts[vi]) - offset).abs() <= planar_tol);
        if members.len() > 1 && planar {
            raw_facets.push((normal, offset, vs));
        } else {
            for &ti in &members {
                let t = &tris[ti];
                raw_facets.push((t.normal.clone(), t.offset, t.v.to_vec()));
            }
        }
    }

    let mut used: Vec<usize> = raw_facets.iter().flat_map(|f| f.2.iter().copied()).collect();
    used.sort_unstable();
    used.dedup();
    let remap: HashMap<usize, usize> = used.iter().enumerate().map(|(n, &o)| (o, n)).collect();
    let vertices: Vec<Point> = used.iter().map(|&i| pts[i].clone()).collect();

    let mut facets = Vec::with_capacity(raw_facets.len());
    for (normal, offset, vs) in raw_facets {
        let mut loop_idx: Vec<usize> = vs.into_iter().map(|i| remap[&i]).collect();
        if loop_idx.len() > 3 {
            order_loop(&vertices, &mut loop_idx, &normal);
        }
        facets.push(Facet {
            normal,
            offset,
            vertices: loop_idx,
        });
    }
    Ok((vertices, facets))
}
