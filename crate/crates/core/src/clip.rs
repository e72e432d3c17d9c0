//! Half-space clipping of convex polytopes.
//!
//! Vertices within `eps_geom` of the cutting plane are snapped onto it before
//! classification, which keeps sliver facets out of the output. Intersection
//! points on shared edges are computed once, so adjacent facets of the result
//! agree bitwise.

use crate::body::{order_loop, ConvexBody, Facet, HalfSpace, Point};
use std::collections::HashMap;

#[derive(Clone, Copy, PartialEq)]
enum Side {
    In,
    On,
    Out,
}

/// `body ∩ {p : p·normal <= offset}`. Returns `None` when no point of the
/// body satisfies the inequality strictly (disjoint or merely tangent).
pub fn clip(body: &ConvexBody, hs: &HalfSpace) -> Option<ConvexBody> {
    let eps = body.eps_geom();
    let mut heights: Vec<f64> = Vec::with_capacity(body.vertices().len());
    let mut sides: Vec<Side> = Vec::with_capacity(body.vertices().len());
    for v in body.vertices() {
        let h = hs.signed_distance(v);
        heights.push(h);
        sides.push(if h.abs() <= eps {
            Side::On
        } else if h < 0.0 {
            Side::In
        } else {
            Side::Out
        });
    }
    if !sides.iter().any(|s| *s == Side::In) {
        return None;
    }

    // Snap near-plane vertices exactly onto the plane.
    let mut vertices: Vec<Point> = body.vertices().to_vec();
    for (i, s) in sides.iter().enumerate() {
        if *s == Side::On {
            let h = heights[i];
            vertices[i] -= &hs.normal * h;
            heights[i] = 0.0;
        }
    }
    if !sides.iter().any(|s| *s == Side::Out) {
        let facets = body.facets().to_vec();
        return Some(ConvexBody::from_parts_unchecked(
            body.dim(),
            vertices,
            facets,
        ));
    }

    match body.dim() {
        2 => clip_ring(body, hs, vertices, &sides, &heights),
        _ => clip_3d(body, hs, vertices, &sides, &heights),
    }
}

fn clip_3d(
    body: &ConvexBody,
    hs: &HalfSpace,
    mut vertices: Vec<Point>,
    sides: &[Side],
    heights: &[f64],
) -> Option<ConvexBody> {
    let dim = body.dim();
    let mut cut_index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut facets: Vec<Facet> = Vec::with_capacity(body.facets().len() + 1);
    let mut on_cut_plane: Vec<usize> = Vec::new();

    for f in body.facets() {
        let loop_in = &f.vertices;
        let mut loop_out: Vec<usize> = Vec::new();
        for i in 0..loop_in.len() {
            let a = loop_in[i];
            let b = loop_in[(i + 1) % loop_in.len()];
            if sides[a] != Side::Out {
                loop_out.push(a);
            }
            let crossing = (sides[a] == Side::In && sides[b] == Side::Out)
                || (sides[a] == Side::Out && sides[b] == Side::In);
            if crossing {
                let key = (a.min(b), a.max(b));
                let idx = *cut_index.entry(key).or_insert_with(|| {
                    let (ha, hb) = (heights[key.0], heights[key.1]);
                    let tau = ha / (ha - hb);
                    let p = &vertices[key.0] + (&vertices[key.1] - &vertices[key.0]) * tau;
                    vertices.push(p);
                    vertices.len() - 1
                });
                loop_out.push(idx);
            }
        }
        if loop_out.len() < dim {
            continue;
        }
        for &vi in &loop_out {
            if vi >= sides.len() || sides[vi] == Side::On {
                on_cut_plane.push(vi);
            }
        }
        facets.push(Facet {
            normal: f.normal.clone(),
            offset: f.offset,
            vertices: loop_out,
        });
    }

    on_cut_plane.sort_unstable();
    on_cut_plane.dedup();
    if on_cut_plane.len() >= dim {
        let mut loop_idx = on_cut_plane;
        order_loop(&vertices, &mut loop_idx, &hs.normal);
        facets.push(Facet {
            normal: hs.normal.clone(),
            offset: hs.offset,
            vertices: loop_idx,
        });
    }

    // Drop unused vertices and reindex.
    let mut used: Vec<usize> = facets
        .iter()
        .flat_map(|f| f.vertices.iter().copied())
        .collect();
    used.sort_unstable();
    used.dedup();
    if used.len() < dim + 1 {
        return None;
    }
    let remap: HashMap<usize, usize> = used.iter().enumerate().map(|(n, &o)| (o, n)).collect();
    let new_vertices: Vec<Point> = used.iter().map(|&i| vertices[i].clone()).collect();
    for f in &mut facets {
        for vi in &mut f.vertices {
            *vi = remap[vi];
        }
    }
    Some(ConvexBody::from_parts_unchecked(dim, new_vertices, facets))
}

/// 2D clipping runs over the canonical CCW vertex ring; the output ring stays
/// CCW, so edge facets are rebuilt directly from consecutive pairs.
fn clip_ring(
    body: &ConvexBody,
    hs: &HalfSpace,
    vertices: Vec<Point>,
    sides: &[Side],
    heights: &[f64],
) -> Option<ConvexBody> {
    let n = vertices.len();
    // (point, lies on the cutting plane)
    let mut ring: Vec<(Point, bool)> = Vec::with_capacity(n + 2);
    for i in 0..n {
        let j = (i + 1) % n;
        if sides[i] != Side::Out {
            ring.push((vertices[i].clone(), sides[i] == Side::On));
        }
        let crossing = (sides[i] == Side::In && sides[j] == Side::Out)
            || (sides[i] == Side::Out && sides[j] == Side::In);
        if crossing {
            let tau = heights[i] / (heights[i] - heights[j]);
            let p = &vertices[i] + (&vertices[j] - &vertices[i]) * tau;
            ring.push((p, true));
        }
    }
    // Merge coincident consecutive points (a cut point can land on a snapped
    // vertex) so every edge has positive length.
    let tiny = body.eps_geom();
    let mut cleaned: Vec<(Point, bool)> = Vec::with_capacity(ring.len());
    for (p, on) in ring {
        if let Some(last) = cleaned.last_mut() {
            if (&p - &last.0).norm() <= tiny {
                last.1 |= on;
                continue;
            }
        }
        cleaned.push((p, on));
    }
    while cleaned.len() > 1
        && (&cleaned[0].0 - &cleaned.last().unwrap().0).norm() <= tiny
    {
        let on = cleaned.pop().unwrap().1;
        cleaned[0].1 |= on;
    }
    let ring = cleaned;
    if ring.len() < 3 {
        return None;
    }
    let m = ring.len();
    let mut edges = Vec::with_capacity(m);
    for i in 0..m {
        let j = (i + 1) % m;
        let (normal, offset) = if ring[i].1 && ring[j].1 {
            (hs.normal.clone(), hs.offset)
        } else {
            let a = &ring[i].0;
            let b = &ring[j].0;
            let mut nrm = nalgebra::DVector::from_vec(vec![b[1] - a[1], a[0] - b[0]]);
            let len = nrm.norm();
            nrm /= len;
            let off = 0.5 * (nrm.dot(a) + nrm.dot(b));
            (nrm, off)
        };
        edges.push(Facet {
            normal,
            offset,
            vertices: vec![i, j],
        });
    }
    let pts: Vec<Point> = ring.into_iter().map(|(p, _)| p).collect();
    Some(ConvexBody::from_parts_unchecked(2, pts, edges))
}
