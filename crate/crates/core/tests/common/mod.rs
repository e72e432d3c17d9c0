//! Shared helpers for the integration suites.
#![allow(dead_code)]

use buoyancy_lab::body::Point;
use buoyancy_lab::{zoo, ConvexBody, HalfSpace};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn pt(coords: &[f64]) -> Point {
    DVector::from_row_slice(coords)
}

pub fn unit_dir(rng: &mut ChaCha8Rng, dim: usize) -> DVector<f64> {
    match dim {
        2 => {
            let th: f64 = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
            pt(&[th.cos(), th.sin()])
        }
        _ => {
            let z: f64 = rng.gen_range(-1.0..1.0);
            let phi: f64 = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
            let r = (1.0 - z * z).sqrt();
            pt(&[r * phi.cos(), r * phi.sin(), z])
        }
    }
}

/// Rotation by a random angle about a random axis (Rodrigues), d = 3.
pub fn random_rotation3(rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let axis = unit_dir(rng, 3);
    let angle: f64 = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
    let (s, c) = angle.sin_cos();
    let (x, y, z) = (axis[0], axis[1], axis[2]);
    let mut k = DMatrix::zeros(3, 3);
    k[(0, 1)] = -z;
    k[(0, 2)] = y;
    k[(1, 0)] = z;
    k[(1, 2)] = -x;
    k[(2, 0)] = -y;
    k[(2, 1)] = x;
    let eye = DMatrix::identity(3, 3);
    &eye + &k * s + (&k * &k) * (1.0 - c)
}

pub fn random_rotation2(rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let th: f64 = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
    DMatrix::from_row_slice(2, 2, &[th.cos(), -th.sin(), th.sin(), th.cos()])
}

/// Random convex polygon: hull of seeded points on the unit circle.
pub fn random_polygon(n: usize, seed: u64) -> ConvexBody {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<Point> = (0..n)
        .map(|_| {
            let th: f64 = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
            pt(&[th.cos(), th.sin()])
        })
        .collect();
    ConvexBody::from_points(2, pts).expect("polygon")
}

/// A proper cutting half-space: random direction, offset strictly inside the
/// support range.
pub fn random_cut(rng: &mut ChaCha8Rng, body: &ConvexBody) -> HalfSpace {
    let xi = unit_dir(rng, body.dim());
    let hi = body.support(&xi);
    let lo = -body.support(&(-&xi));
    let f: f64 = rng.gen_range(0.1..0.9);
    HalfSpace {
        normal: xi,
        offset: lo + f * (hi - lo),
    }
}

/// The deterministic body mix used by the exactness property suite.
pub fn property_body(case: u64) -> ConvexBody {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed + case);
    match case % 4 {
        0 => zoo::make_random_polytope(8 + (case % 24) as usize, 100 + case).expect("polytope"),
        1 => {
            let a: f64 = rng.gen_range(0.3..2.5);
            let b: f64 = rng.gen_range(0.3..2.5);
            let c: f64 = rng.gen_range(0.3..2.5);
            zoo::make_box(a, b, c).expect("box")
        }
        2 => random_polygon(6 + (case % 20) as usize, 200 + case),
        _ => {
            let a: f64 = rng.gen_range(0.3..2.5);
            let b: f64 = rng.gen_range(0.3..2.5);
            zoo::make_rect(a, b).expect("rect")
        }
    }
}

/// One case of the kernel exactness suite: complementarity, mass balance,
/// rigid-motion equivariance and scaling laws at relative tolerance `tol`.
pub fn run_exactness_case(case: u64, tol: f64) {
    use buoyancy_lab::clip;
    use buoyancy_lab::section::{moment_about_axis, section};

    let body = property_body(case);
    let dim = body.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0ffee + case);
    let hs = random_cut(&mut rng, &body);
    let vol = body.volume();
    let diam = body.diameter();

    // Complementarity.
    let lo = clip(&body, &hs).expect("proper cut");
    let hi = clip(&body, &hs.complement()).expect("proper cut");
    assert!(
        (lo.volume() + hi.volume() - vol).abs() <= tol * vol,
        "case {case}: complementarity off by {:e}",
        (lo.volume() + hi.volume() - vol).abs() / vol
    );

    // Mass balance.
    let c = body.centroid().unwrap();
    let (cl, ch) = (lo.centroid().unwrap(), hi.centroid().unwrap());
    let lhs = &c * vol;
    let rhs = &cl * lo.volume() + &ch * hi.volume();
    assert!(
        (&lhs - &rhs).norm() <= tol * vol * diam,
        "case {case}: mass balance off by {:e}",
        (&lhs - &rhs).norm() / (vol * diam)
    );

    // Rigid motion equivariance.
    let rot = if dim == 2 {
        random_rotation2(&mut rng)
    } else {
        random_rotation3(&mut rng)
    };
    let shift = &unit_dir(&mut rng, dim) * rng.gen_range(0.0..2.0);
    let moved = body.linear_map(&rot).unwrap().translated(&shift);
    assert!(
        (moved.volume() - vol).abs() <= tol * vol,
        "case {case}: volume not rigid-invariant"
    );
    let c_moved = moved.centroid().unwrap();
    let c_mapped = &rot * &c + &shift;
    assert!(
        (&c_moved - &c_mapped).norm() <= tol * diam,
        "case {case}: centroid not equivariant: {:e}",
        (&c_moved - &c_mapped).norm()
    );
    // Section moments transform by frame conjugation: eigenvalues invariant,
    // and the moment about a mapped axis matches.
    if let Ok(sec) = section(&body, &hs) {
        let moved_hs = HalfSpace {
            normal: (&rot * &hs.normal).normalize(),
            offset: hs.offset + (&rot * &hs.normal).normalize().dot(&shift),
        };
        let sec_moved = section(&moved, &moved_hs).expect("moved section");
        assert!(
            (sec.area - sec_moved.area).abs() <= tol * sec.area.max(1e-12),
            "case {case}: section area not invariant"
        );
        if dim == 3 {
            let eta = sec.frame[0].clone();
            let m0 = moment_about_axis(&sec, &eta).unwrap();
            let m1 = moment_about_axis(&sec_moved, &(&rot * &eta).normalize()).unwrap();
            assert!(
                (m0 - m1).abs() <= tol * m0.max(1e-12),
                "case {case}: axis moment not equivariant: {m0} vs {m1}"
            );
        }
    }

    // Scaling laws.
    let lam: f64 = rng.gen_range(0.4..2.6);
    let scaled = body.scaled(lam);
    assert!(
        (scaled.volume() - vol * lam.powi(dim as i32)).abs() <= tol * scaled.volume(),
        "case {case}: volume scaling law"
    );
    let hs_scaled = HalfSpace {
        normal: hs.normal.clone(),
        offset: hs.offset * lam,
    };
    if let (Ok(sec), Ok(sec_s)) = (section(&body, &hs), section(&scaled, &hs_scaled)) {
        assert!(
            (sec_s.area - sec.area * lam.powi(dim as i32 - 1)).abs()
                <= tol * sec_s.area.max(1e-12),
            "case {case}: area scaling law"
        );
        let eta = sec.frame[0].clone();
        let m0 = moment_about_axis(&sec, &eta).unwrap();
        let m1 = moment_about_axis(&sec_s, &eta).unwrap();
        assert!(
            (m1 - m0 * lam.powi(dim as i32 + 1)).abs() <= tol * m1.max(1e-12),
            "case {case}: moment scaling law"
        );
    }
}
