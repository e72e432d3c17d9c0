//! Deterministic test-body generators: balls, ellipsoids, boxes, random
//! polytopes, bodies of revolution, prisms, and planar curves of constant
//! halving-chord length.

use crate::body::{ConvexBody, Facet, Point};
use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pt2(x: f64, y: f64) -> Point {
    DVector::from_vec(vec![x, y])
}

fn pt3(x: f64, y: f64, z: f64) -> Point {
    DVector::from_vec(vec![x, y, z])
}

/// Ball mesh of radius `r`: antipodally symmetrized Fibonacci-lattice
/// vertices for d = 3 (so the mesh is exactly origin-symmetric and its
/// centroid vanishes), a regular n-gon for d = 2. Inscribed, so volumes
/// converge from below under refinement.
pub fn make_ball(dim: usize, r: f64, n: usize) -> Result<ConvexBody> {
    if r <= 0.0 {
        return Err(Error::InvalidArgument("radius must be positive".into()));
    }
    if n < 12 {
        return Err(Error::InvalidArgument("need at least 12 vertices".into()));
    }
    match dim {
        2 => {
            let ring: Vec<Point> = (0..n)
                .map(|i| {
                    let th = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                    pt2(r * th.cos(), r * th.sin())
                })
                .collect();
            ring_body(ring)
        }
        3 => {
            let half = n.div_ceil(2);
            let mut pts: Vec<Point> = Vec::with_capacity(2 * half);
            for i in 0..half {
                let z = (i as f64 + 0.5) / half as f64;
                let rho = (1.0 - z * z).sqrt();
                let phi = crate::grid::GOLDEN_ANGLE * i as f64;
                let p = pt3(r * rho * phi.cos(), r * rho * phi.sin(), r * z);
                pts.push(-&p);
                pts.push(p);
            }
            ConvexBody::from_points(3, pts)
        }
        d => Err(Error::UnsupportedDimension(d)),
    }
}

/// Ellipsoid with semi-axes (a, b, c): linear image of the ball mesh.
pub fn make_ellipsoid(a: f64, b: f64, c: f64, n: usize) -> Result<ConvexBody> {
    if a <= 0.0 || b <= 0.0 || c <= 0.0 {
        return Err(Error::InvalidArgument("semi-axes must be positive".into()));
    }
    let ball = make_ball(3, 1.0, n)?;
    let mut m = DMatrix::zeros(3, 3);
    m[(0, 0)] = a;
    m[(1, 1)] = b;
    m[(2, 2)] = c;
    ball.linear_map(&m)
}

/// Axis-aligned box with extents (a, b, c), centered at the origin.
pub fn make_box(a: f64, b: f64, c: f64) -> Result<ConvexBody> {
    let mut pts = Vec::with_capacity(8);
    for sx in [-0.5, 0.5] {
        for sy in [-0.5, 0.5] {
            for sz in [-0.5, 0.5] {
                pts.push(pt3(a * sx, b * sy, c * sz));
            }
        }
    }
    ConvexBody::from_points(3, pts)
}

/// The unit cube [0,1]^3.
pub fn unit_cube() -> Result<ConvexBody> {
    make_box(1.0, 1.0, 1.0).map(|b| b.translated(&pt3(0.5, 0.5, 0.5)))
}

/// Rectangle with extents (a, b), centered at the origin.
pub fn make_rect(a: f64, b: f64) -> Result<ConvexBody> {
    ConvexBody::from_points(
        2,
        vec![
            pt2(-0.5 * a, -0.5 * b),
            pt2(0.5 * a, -0.5 * b),
            pt2(0.5 * a, 0.5 * b),
            pt2(-0.5 * a, 0.5 * b),
        ],
    )
}

/// Hull of `n` points sampled uniformly on the unit sphere with a ChaCha8
/// stream seeded by `seed`. Deterministic per seed; if the hull degenerates
/// the seed is bumped by one (up to 8 times).
pub fn make_random_polytope(n: usize, seed: u64) -> Result<ConvexBody> {
    if n < 4 {
        return Err(Error::InvalidArgument("need at least 4 vertices".into()));
    }
    for bump in 0..8 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed + bump);
        let pts: Vec<Point> = (0..n)
            .map(|_| {
                let z: f64 = rng.gen_range(-1.0..1.0);
                let phi: f64 = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
                let rho = (1.0 - z * z).sqrt();
                pt3(rho * phi.cos(), rho * phi.sin(), z)
            })
            .collect();
        if let Ok(body) = ConvexBody::from_points(3, pts) {
            return Ok(body);
        }
    }
    Err(Error::InvalidBody("random polytope degenerate for seed".into()))
}

/// Body of revolution about the z-axis. `profile` lists (radius, height)
/// pairs with strictly increasing heights; the profile must be concave so the
/// hull keeps every sample (otherwise `NonConvexProfile`).
pub fn make_revolution(profile: &[(f64, f64)], n_angular: usize) -> Result<ConvexBody> {
    if profile.len() < 2 {
        return Err(Error::InvalidArgument("profile needs at least 2 points".into()));
    }
    if n_angular < 8 {
        return Err(Error::InvalidArgument("need at least 8 angular steps".into()));
    }
    for w in profile.windows(2) {
        if w[1].1 <= w[0].1 {
            return Err(Error::InvalidArgument("profile heights must increase".into()));
        }
    }
    if profile.iter().any(|&(r, _)| r < 0.0) {
        return Err(Error::InvalidArgument("profile radii must be nonnegative".into()));
    }
    let mut pts = Vec::new();
    for &(r, h) in profile {
        if r <= 1e-13 {
            pts.push(pt3(0.0, 0.0, h));
        } else {
            for j in 0..n_angular {
                let th = 2.0 * std::f64::consts::PI * j as f64 / n_angular as f64;
                pts.push(pt3(r * th.cos(), r * th.sin(), h));
            }
        }
    }
    let body = ConvexBody::from_points(3, pts.clone())?;
    // Every sample must lie on the hull boundary; a strictly interior ring
    // betrays a non-concave profile.
    let tol = 1e-7 * body.diameter();
    for p in &pts {
        let slack = body
            .facets()
            .iter()
            .map(|f| f.offset - f.normal.dot(p))
            .fold(f64::INFINITY, f64::min);
        if slack > tol {
            return Err(Error::NonConvexProfile);
        }
    }
    Ok(body)
}

/// Prism `base × [0, height]` over a 2D body.
pub fn make_prism(base: &ConvexBody, height: f64) -> Result<ConvexBody> {
    if base.dim() != 2 {
        return Err(Error::DimensionMismatch(base.dim(), 2));
    }
    if height <= 0.0 {
        return Err(Error::InvalidArgument("height must be positive".into()));
    }
    let n = base.vertices().len();
    let mut vertices = Vec::with_capacity(2 * n);
    for v in base.vertices() {
        vertices.push(pt3(v[0], v[1], 0.0));
    }
    for v in base.vertices() {
        vertices.push(pt3(v[0], v[1], height));
    }
    let mut facets = Vec::with_capacity(n + 2);
    facets.push(Facet {
        normal: pt3(0.0, 0.0, -1.0),
        offset: 0.0,
        vertices: (0..n).rev().collect(),
    });
    facets.push(Facet {
        normal: pt3(0.0, 0.0, 1.0),
        offset: height,
        vertices: (n..2 * n).collect(),
    });
    for f in base.facets() {
        let (i, j) = (f.vertices[0], f.vertices[1]);
        facets.push(Facet {
            normal: pt3(f.normal[0], f.normal[1], 0.0),
            offset: f.offset,
            vertices: vec![i, j, n + j, n + i],
        });
    }
    ConvexBody::from_parts(3, vertices, facets)
}

fn ring_body(ring: Vec<Point>) -> Result<ConvexBody> {
    let n = ring.len();
    let mut facets = Vec::with_capacity(n);
    for i in 0..n {
        let a = &ring[i];
        let b = &ring[(i + 1) % n];
        let mut normal = pt2(b[1] - a[1], a[0] - b[0]);
        let len = normal.norm();
        if len < 1e-300 {
            return Err(Error::InvalidBody("coincident ring points".into()));
        }
        normal /= len;
        let offset = 0.5 * (normal.dot(a) + normal.dot(b));
        facets.push(Facet {
            normal,
            offset,
            vertices: vec![i, (i + 1) % n],
        });
    }
    ConvexBody::from_parts(2, ring, facets)
}

/// One harmonic of the halving-chord midpoint speed: frequency `2k+1`.
#[derive(Debug, Clone)]
pub struct ZindlerHarmonic {
    pub k: usize,
    pub cos_amp: f64,
    pub sin_amp: f64,
}

/// Parameters of the constant-halving-chord curve generator.
#[derive(Debug, Clone)]
pub struct ZindlerParams {
    /// Common length of all perimeter-bisecting chords.
    pub chord_length: f64,
    /// Midpoint-speed harmonics; empty gives the circle of diameter
    /// `chord_length`.
    pub harmonics: Vec<ZindlerHarmonic>,
}

const GL5_NODES: [f64; 5] = [
    -0.906179845938664,
    -0.5384693101056831,
    0.0,
    0.5384693101056831,
    0.906179845938664,
];
const GL5_WEIGHTS: [f64; 5] = [
    0.23692688505618908,
    0.47862867049936647,
    0.5688888888888889,
    0.47862867049936647,
    0.23692688505618908,
];

/// Closed convex curve all of whose perimeter-bisecting chords share one
/// length.
///
/// Construction: chord endpoints are `m(θ) ± (L/2) u(θ)` with `u` the unit
/// chord direction and the midpoint curve `m` constrained to move parallel to
/// the chord, `m'(θ) = λ(θ) u(θ)`. Restricting λ to odd harmonics of
/// frequency ≥ 3 makes `m` close up over a half-turn, which is exactly what
/// the halving property needs. The constraint is integrated numerically and
/// the output is validated: closure, convexity, then a full chord scan.
pub fn make_zindler(params: &ZindlerParams, n: usize) -> Result<ConvexBody> {
    let ell = params.chord_length;
    if ell <= 0.0 {
        return Err(Error::InvalidArgument("chord length must be positive".into()));
    }
    if n < 64 {
        return Err(Error::InvalidArgument("need at least 64 samples".into()));
    }
    for h in &params.harmonics {
        if h.k < 1 {
            return Err(Error::InvalidArgument(
                "harmonic index must be >= 1 (frequency >= 3)".into(),
            ));
        }
    }
    let lambda = |theta: f64| -> f64 {
        params
            .harmonics
            .iter()
            .map(|h| {
                let f = (2 * h.k + 1) as f64 * theta;
                h.cos_amp * f.cos() + h.sin_amp * f.sin()
            })
            .sum()
    };

    // Cumulative midpoint curve on the output grid, Gauss-Legendre per step.
    let step = 2.0 * std::f64::consts::PI / n as f64;
    let mut m = Vec::with_capacity(n + 1);
    m.push(pt2(0.0, 0.0));
    for i in 0..n {
        let t0 = step * i as f64;
        let mut acc = m[i].clone();
        for (node, w) in GL5_NODES.iter().zip(GL5_WEIGHTS) {
            let th = t0 + 0.5 * step * (node + 1.0);
            let l = lambda(th);
            acc += pt2(l * th.cos(), l * th.sin()) * (0.5 * step * w);
        }
        m.push(acc);
    }
    let closure = (&m[n] - &m[0]).norm();
    let half: usize = n / 2;
    let half_gap = if n % 2 == 0 {
        (&m[half] - &m[0]).norm()
    } else {
        0.0
    };
    if closure > 1e-9 * ell || half_gap > 1e-9 * ell {
        return Err(Error::CurveGeneration(format!(
            "midpoint curve fails to close (gap {closure:.2e})"
        )));
    }

    let ring: Vec<Point> = (0..n)
        .map(|i| {
            let th = step * i as f64;
            &m[i] + pt2(th.cos(), th.sin()) * (0.5 * ell)
        })
        .collect();

    // Convexity: strict left turns everywhere.
    for i in 0..n {
        let a = &ring[i];
        let b = &ring[(i + 1) % n];
        let c = &ring[(i + 2) % n];
        let cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]);
        if cross <= 0.0 {
            return Err(Error::CurveGeneration(
                "curve is not convex for these parameters".into(),
            ));
        }
    }

    // Chord scan: every perimeter-bisecting chord must have length L.
    let dev = max_halving_chord_deviation(&ring, ell);
    let gate = ell * (1e-6f64).max(2.0 * step * step);
    if dev > gate {
        return Err(Error::CurveGeneration(format!(
            "halving chords deviate from L by {dev:.2e} (gate {gate:.2e})"
        )));
    }

    ring_body(ring)
}

/// Max deviation |chord - target| over the perimeter-bisecting chords
/// anchored at every polygon vertex. Also the validation oracle for the
/// generator.
pub fn max_halving_chord_deviation(ring: &[Point], target: f64) -> f64 {
    let n = ring.len();
    let mut cum = Vec::with_capacity(n + 1);
    cum.push(0.0);
    for i in 0..n {
        let l = (&ring[(i + 1) % n] - &ring[i]).norm();
        cum.push(cum[i] + l);
    }
    let total = cum[n];
    let mut worst = 0.0f64;
    for i in 0..n {
        let target_s = (cum[i] + 0.5 * total) % total;
        // Locate the edge containing arclength target_s.
        let j = match cum.binary_search_by(|v| v.partial_cmp(&target_s).unwrap()) {
            Ok(j) => j,
            Err(j) => j - 1,
        };
        let j = j.min(n - 1);
        let seg = cum[j + 1] - cum[j];
        let frac = if seg > 0.0 { (target_s - cum[j]) / seg } else { 0.0 };
        let q = &ring[j] + (&ring[(j + 1) % n] - &ring[j]) * frac;
        let chord = (&q - &ring[i]).norm();
        worst = worst.max((chord - target).abs());
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn ball_volume_converges_from_below() {
        let exact = 4.0 * std::f64::consts::PI / 3.0;
        let mut prev_err = f64::INFINITY;
        for n in [100, 400, 1600] {
            let b = make_ball(3, 1.0, n).unwrap();
            let err = exact - b.volume();
            assert!(err > 0.0, "inscribed mesh must underestimate");
            assert!(err < prev_err, "error must shrink under refinement");
            prev_err = err;
        }
        let fine = make_ball(3, 1.0, 1000).unwrap();
        assert_relative_eq!(fine.volume(), exact, max_relative = 0.01);
    }

    #[test]
    fn ball_scaling_and_2d_area() {
        let b1 = make_ball(3, 1.0, 500).unwrap();
        let b2 = make_ball(3, 2.0, 500).unwrap();
        assert_relative_eq!(b2.volume(), 8.0 * b1.volume(), max_relative = 1e-12);
        let disk = make_ball(2, 1.0, 4096).unwrap();
        assert_relative_eq!(disk.volume(), std::f64::consts::PI, max_relative = 1e-5);
    }

    #[test]
    fn ellipsoid_volume_and_centroid() {
        let e = make_ellipsoid(2.0, 1.0, 1.0, 800).unwrap();
        assert_relative_eq!(
            e.volume(),
            8.0 * std::f64::consts::PI / 3.0,
            max_relative = 0.01
        );
        let c = e.centroid().unwrap();
        assert!(c.norm() < 1e-9 * e.diameter());
        let ball = make_ellipsoid(1.0, 1.0, 1.0, 500).unwrap();
        let ref_ball = make_ball(3, 1.0, 500).unwrap();
        assert_relative_eq!(ball.volume(), ref_ball.volume(), max_relative = 1e-12);
    }

    #[test]
    fn box_volume_and_centroid() {
        let b = make_box(2.0, 1.0, 1.0).unwrap();
        assert_relative_eq!(b.volume(), 2.0, max_relative = 1e-12);
        let c = b.centroid().unwrap();
        assert!(c.norm() < 1e-12);
    }

    #[test]
    fn random_polytope_is_deterministic() {
        let a = make_random_polytope(32, 5).unwrap();
        let b = make_random_polytope(32, 5).unwrap();
        assert_eq!(a.vertices().len(), b.vertices().len());
        for (u, v) in a.vertices().iter().zip(b.vertices()) {
            assert_eq!(u, v);
        }
        let c = make_random_polytope(32, 6).unwrap();
        assert!(a.volume() != c.volume());
    }

    #[test]
    fn random_polytope_volume_against_monte_carlo() {
        use rand::Rng;
        let body = make_random_polytope(24, 11).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(999);
        let n = 200_000;
        let mut hits = 0usize;
        for _ in 0..n {
            let p = pt3(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            );
            if body.contains(&p, 0.0) {
                hits += 1;
            }
        }
        let cube_vol = 8.0;
        let est = cube_vol * hits as f64 / n as f64;
        let p = hits as f64 / n as f64;
        let sigma = cube_vol * (p * (1.0 - p) / n as f64).sqrt();
        assert!(
            (body.volume() - est).abs() <= 3.0 * sigma,
            "exact {} vs mc {} (3σ = {})",
            body.volume(),
            est,
            3.0 * sigma
        );
    }

    #[test]
    fn revolution_cylinder_cone_and_sphere() {
        let pi = std::f64::consts::PI;
        // Cylinder r=1, h=2.
        let cyl = make_revolution(&[(1.0, 0.0), (1.0, 2.0)], 128).unwrap();
        assert_relative_eq!(cyl.volume(), 2.0 * pi, max_relative = 0.01);
        // Cone r=1, h=3.
        let cone = make_revolution(&[(1.0, 0.0), (0.0, 3.0)], 128).unwrap();
        assert_relative_eq!(cone.volume(), pi, max_relative = 0.01);
        // Semicircular profile approximates the ball.
        let prof: Vec<(f64, f64)> = (0..=24)
            .map(|i| {
                let t = pi * i as f64 / 24.0;
                (t.sin(), -t.cos())
            })
            .collect();
        let ball = make_revolution(&prof, 64).unwrap();
        assert_relative_eq!(ball.volume(), 4.0 * pi / 3.0, max_relative = 0.02);
    }

    #[test]
    fn revolution_rejects_nonconvex_profile() {
        let waisted = [(1.0, 0.0), (0.3, 1.0), (1.0, 2.0)];
        assert!(matches!(
            make_revolution(&waisted, 64),
            Err(Error::NonConvexProfile)
        ));
    }

    #[test]
    fn prism_volume() {
        let sq = make_rect(2.0, 1.0).unwrap();
        let p = make_prism(&sq, 3.0).unwrap();
        assert_relative_eq!(p.volume(), 6.0, max_relative = 1e-12);
        p.validate().unwrap();
    }

    #[test]
    fn zindler_degenerate_is_circle() {
        let params = ZindlerParams {
            chord_length: 2.0,
            harmonics: vec![],
        };
        let c = make_zindler(&params, 512).unwrap();
        // Circle of diameter L: radius 1.
        for v in c.vertices() {
            let r = ((v[0] - c.centroid().unwrap()[0]).powi(2)
                + (v[1] - c.centroid().unwrap()[1]).powi(2))
            .sqrt();
            assert_relative_eq!(r, 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn zindler_nontrivial_validates_and_is_noncircular() {
        let params = ZindlerParams {
            chord_length: 2.0,
            harmonics: vec![ZindlerHarmonic {
                k: 1,
                cos_amp: 0.15,
                sin_amp: 0.0,
            }],
        };
        let z = make_zindler(&params, 4096).unwrap();
        let c = z.centroid().unwrap();
        let mut rmin = f64::INFINITY;
        let mut rmax = 0.0f64;
        for v in z.vertices() {
            let r = (v - &c).norm();
            rmin = rmin.min(r);
            rmax = rmax.max(r);
        }
        assert!(
            (rmax - rmin) / rmax > 0.01,
            "radial variation {} too small",
            (rmax - rmin) / rmax
        );
    }

    #[test]
    fn zindler_rejects_nonconvex_parameters() {
        let params = ZindlerParams {
            chord_length: 2.0,
            harmonics: vec![ZindlerHarmonic {
                k: 1,
                cos_amp: 0.45, // beyond the convexity range for L = 2
                sin_amp: 0.0,
            }],
        };
        assert!(make_zindler(&params, 1024).is_err());
    }

    #[test]
    fn zindler_rejects_frequency_one() {
        let params = ZindlerParams {
            chord_length: 2.0,
            harmonics: vec![ZindlerHarmonic {
                k: 0,
                cos_amp: 0.1,
                sin_amp: 0.0,
            }],
        };
        assert!(make_zindler(&params, 1024).is_err());
    }
}
