//! Flotation and metacenter integration: buoyancy centers against closed-form
//! and Monte Carlo oracles, duality, equivariance, support tangency, and the
//! waterplane-moment radius identities.

mod common;

use approx::assert_relative_eq;
use buoyancy_lab::diagnostics::hausdorff_to_ball;
use buoyancy_lab::dupin::*;
use buoyancy_lab::flotation::Hydrostatics;
use buoyancy_lab::section::{moment_about_axis, section};
use buoyancy_lab::tol::{tol_eq_default, TOL_VOL};
use buoyancy_lab::{grid, zoo, HalfSpace};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PI: f64 = std::f64::consts::PI;

#[test]
fn ball_cap_waterline_matches_cap_volume_formula() {
    // Cap of height 1/2 on the unit ball: volume = π h² (3 - h)/3 = 5π/24,
    // so the waterline for δ = 5π/24 sits at t = -1/2.
    let ball = zoo::make_ball(3, 1.0, 1024).unwrap();
    let hy = Hydrostatics::new(&ball).unwrap();
    let wl = hy
        .find_waterline(&pt(&[0.0, 0.0, 1.0]), 5.0 * PI / 24.0, TOL_VOL)
        .unwrap();
    assert!((wl.t + 0.5).abs() < 6e-3, "t = {}", wl.t);
    assert!((wl.achieved - 5.0 * PI / 24.0).abs() <= TOL_VOL * hy.volume());
}

#[test]
fn ball_half_volume_waterline_is_central() {
    let ball = zoo::make_ball(3, 1.0, 800).unwrap();
    let hy = Hydrostatics::new(&ball).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let xi = unit_dir(&mut rng, 3);
        let wl = hy.find_waterline(&xi, hy.volume() / 2.0, TOL_VOL).unwrap();
        assert!(wl.t.abs() < 1e-9, "central cut must sit at t = 0");
    }
}

#[test]
fn hemisphere_buoyancy_center() {
    let ball = zoo::make_ball(3, 1.0, 1024).unwrap();
    let hy = Hydrostatics::new(&ball).unwrap();
    let rec = hy
        .buoyancy_center(&pt(&[0.0, 0.0, 1.0]), hy.volume() / 2.0)
        .unwrap();
    assert!((rec.center[2] + 0.375).abs() < 3e-3, "z = {}", rec.center[2]);
    // Transverse coordinates vanish only up to mesh noise.
    assert!(rec.center[0].abs() < 2e-4 && rec.center[1].abs() < 2e-4);
    assert!(rec.residual < 1e-3);
}

#[test]
fn ellipsoid_buoyancy_center_and_mc_oracle() {
    // Half of the (2,1,1) ellipsoid below x = 0: affine image of the half
    // ball, centroid at (-3/4, 0, 0).
    let ell = zoo::make_ellipsoid(2.0, 1.0, 1.0, 1024).unwrap();
    let hy = Hydrostatics::new(&ell).unwrap();
    let rec = hy
        .buoyancy_center(&pt(&[1.0, 0.0, 0.0]), hy.volume() / 2.0)
        .unwrap();
    assert!((rec.center[0] + 0.75).abs() < 0.01, "x = {}", rec.center[0]);

    // Brute-force integration oracle for the same centroid coordinate.
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let n = 400_000usize;
    let mut acc = 0.0;
    let mut hits = 0usize;
    for _ in 0..n {
        let x: f64 = rng.gen_range(-2.0..0.0);
        let y: f64 = rng.gen_range(-1.0..1.0);
        let z: f64 = rng.gen_range(-1.0..1.0);
        if x * x / 4.0 + y * y + z * z <= 1.0 {
            acc += x;
            hits += 1;
        }
    }
    let mc = acc / hits as f64;
    let tol = 3.0 * 2.0 / (hits as f64).sqrt();
    assert!((mc + 0.75).abs() <= tol, "mc {mc} (3σ {tol})");
}

#[test]
fn ellipsoid_oblique_residual_matches_affine_formula() {
    // For an ellipsoid with axis matrix A at half volume, the buoyancy line
    // points along A²ξ, so the residual is the angle between ξ and A²ξ.
    // At ξ = (1,1,0)/√2 and A = diag(2,1,1): acos(5/√34) ≈ 0.540420.
    let ell = zoo::make_ellipsoid(2.0, 1.0, 1.0, 1024).unwrap();
    let hy = Hydrostatics::new(&ell).unwrap();
    let xi = pt(&[1.0, 1.0, 0.0]).normalize();
    let r = hy.equilibrium_residual(&xi, hy.volume() / 2.0).unwrap();
    let expected = (5.0 / 34.0f64.sqrt()).acos();
    assert!((r - expected).abs() < 5e-3, "residual {r} vs {expected}");
}

#[test]
fn duality_between_complementary_levels() {
    // vol·C(K) = δ·C_δ(ξ) + (vol-δ)·C_{vol-δ}(-ξ).
    let body = zoo::make_random_polytope(28, 12).unwrap();
    let hy = Hydrostatics::new(&body).unwrap();
    let vol = hy.volume();
    let delta = 0.37 * vol;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..6 {
        let xi = unit_dir(&mut rng, 3);
        let lo = hy.buoyancy_center(&xi, delta).unwrap();
        let hi = hy.buoyancy_center(&(-&xi), vol - delta).unwrap();
        let lhs = hy.body_centroid() * vol;
        let rhs = &lo.center * lo.volume + &hi.center * hi.volume;
        assert!(
            (&lhs - &rhs).norm() <= 1e-9 * vol * body.diameter(),
            "duality violated by {:e}",
            (&lhs - &rhs).norm()
        );
    }
}

#[test]
fn residuals_invariant_under_rotation() {
    let body = zoo::make_random_polytope(24, 9).unwrap();
    let hy = Hydrostatics::new(&body).unwrap();
    let delta = 0.4 * hy.volume();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let rot = random_rotation3(&mut rng);
    let moved = body.linear_map(&rot).unwrap();
    let hy2 = Hydrostatics::new(&moved).unwrap();
    for _ in 0..5 {
        let xi = unit_dir(&mut rng, 3);
        let r1 = hy.equilibrium_residual(&xi, delta).unwrap();
        let r2 = hy2
            .equilibrium_residual(&(&rot * &xi).normalize(), delta)
            .unwrap();
        assert!((r1 - r2).abs() < 1e-9, "{r1} vs {r2}");
        let c1 = hy.buoyancy_center(&xi, delta).unwrap().center;
        let c2 = hy2
            .buoyancy_center(&(&rot * &xi).normalize(), delta)
            .unwrap()
            .center;
        assert!(((&rot * &c1) - c2).norm() < 1e-9 * body.diameter());
    }
}

#[test]
fn symmetric_bodies_fit_center_at_centroid() {
    // Centrally symmetric bodies: the fitted center of the surface of centers
    // sits at the body centroid, at any level. Sampled over an antipodally
    // symmetric direction set so the least-squares fit is unbiased even when
    // the surface of centers is far from a sphere.
    let mut dirs = grid::fibonacci_sphere(48);
    let flipped: Vec<_> = dirs.iter().map(|d| -d).collect();
    dirs.extend(flipped);

    let boxy = zoo::make_box(2.0, 1.0, 0.7).unwrap();
    let hy = Hydrostatics::new(&boxy).unwrap();
    let soc = hy.surface_of_centers(0.3 * hy.volume(), &dirs).unwrap();
    assert!(soc.fitted_center.norm() < 1e-9, "{}", soc.fitted_center.norm());

    let ball = zoo::make_ball(3, 1.0, 512).unwrap();
    let hb = Hydrostatics::new(&ball).unwrap();
    let soc = hb.surface_of_centers(0.25 * hb.volume(), &dirs).unwrap();
    assert!(soc.fitted_center.norm() < 1e-6, "{}", soc.fitted_center.norm());
}

#[test]
fn dupin1_support_inequality_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for seed in [1u64, 2, 3] {
        let body = zoo::make_random_polytope(20, seed).unwrap();
        let hy = Hydrostatics::new(&body).unwrap();
        let delta = 0.5 * hy.volume();
        for _ in 0..10 {
            let xi = unit_dir(&mut rng, 3);
            let eta = unit_dir(&mut rng, 3);
            let a = hy.buoyancy_center(&xi, delta).unwrap();
            let b = hy.buoyancy_center(&eta, delta).unwrap();
            let violation = (&b.center - &a.center).dot(&a.xi);
            assert!(
                violation >= -1e-10 * body.diameter(),
                "support inequality violated: {violation:e}"
            );
        }
    }
}

#[test]
fn dupin1_ball_violation_is_second_order() {
    // On the ball at half volume the centers sit at depth 3/8, so the probe
    // height is (3/8)(1 - cos θ).
    let ball = zoo::make_ball(3, 1.0, 1024).unwrap();
    let theta = 0.1;
    let rep = check_dupin1(
        &ball,
        Hydrostatics::new(&ball).unwrap().volume() / 2.0,
        &pt(&[0.0, 0.0, 1.0]),
        &[theta],
    )
    .unwrap();
    let expected = 0.375 * (1.0 - theta.cos());
    for (_, _, v) in &rep.probes {
        assert!((v - expected).abs() < 3e-4, "violation {v} vs {expected}");
    }
    assert!(rep.worst_violation > 0.0);
}

#[test]
fn metacentric_radius_sweeps_eigenvalue_range() {
    // R_pred over in-plane directions covers [λmin, λmax]/δ of the section
    // moment matrix.
    let boxy = zoo::make_box(2.0, 1.0, 1.0).unwrap();
    let hy = Hydrostatics::new(&boxy).unwrap();
    let delta = hy.volume() / 2.0;
    let wl = hy.find_waterline(&pt(&[0.0, 0.0, 1.0]), delta, TOL_VOL).unwrap();
    let sec = section(
        &boxy,
        &HalfSpace {
            normal: wl.xi.clone(),
            offset: wl.t,
        },
    )
    .unwrap();
    let eig = sec.moment.clone().symmetric_eigen().eigenvalues;
    let (lo, hi) = (eig.min(), eig.max());
    let mut seen_lo = f64::INFINITY;
    let mut seen_hi = f64::NEG_INFINITY;
    for j in 0..64 {
        let phi = PI * j as f64 / 64.0;
        let zeta = &sec.frame[0] * phi.cos() + &sec.frame[1] * phi.sin();
        let m = moment_about_axis(&sec, &zeta).unwrap();
        seen_lo = seen_lo.min(m);
        seen_hi = seen_hi.max(m);
        assert!(m >= lo - 1e-12 && m <= hi + 1e-12);
    }
    assert_relative_eq!(seen_lo / delta, lo / delta, max_relative = 1e-3);
    assert_relative_eq!(seen_hi / delta, hi / delta, max_relative = 1e-3);
    assert_relative_eq!(lo / delta, 1.0 / 6.0, max_relative = 1e-10);
    assert_relative_eq!(hi / delta, 2.0 / 3.0, max_relative = 1e-10);
}

#[test]
fn prism_metacentric_radius_matches_2d_curvature_formula() {
    // A log with disk cross-section: rolling about the prism axis must match
    // the planar chord³/(12·area) prediction, finite differences included.
    let disk = zoo::make_ball(2, 1.0, 512).unwrap();
    let prism = zoo::make_prism(&disk, 1.0).unwrap();
    let hyd = Hydrostatics::new(&disk).unwrap();
    let delta2 = hyd.volume() * 0.5;
    let planar = davidov_2d_check(&disk, delta2, &pt(&[0.0, 1.0]), 1e-3).unwrap();
    let est = metacentric_radius_fd(
        &prism,
        delta2 * 1.0,
        &pt(&[0.0, 1.0, 0.0]),
        &pt(&[1.0, 0.0, 0.0]),
        1e-3,
    )
    .unwrap();
    assert_relative_eq!(est.r_pred, planar.r_pred, max_relative = 1e-9);
    assert_relative_eq!(est.r_fd, planar.r_fd, max_relative = 1e-6);
    assert_relative_eq!(planar.r_pred, 4.0 / (3.0 * PI), max_relative = 1e-4);
}

#[test]
fn ball_scan_floats_everywhere() {
    let ball = zoo::make_ball(3, 1.0, 700).unwrap();
    let hy = Hydrostatics::new(&ball).unwrap();
    let tol = tol_eq_default(3, ball.facets().len(), ball.vertices().len());
    let scan = hy.equilibrium_scan(hy.volume() / 2.0, 128, tol).unwrap();
    assert!(scan.floats_all_directions, "max residual {}", scan.max_residual);
    assert!(scan.equilibria.is_empty());
    assert_eq!(scan.records.len(), 128);
}

#[test]
fn zindler_profile_floats_at_half_density_only() {
    let params = zoo::ZindlerParams {
        chord_length: 2.0,
        harmonics: vec![zoo::ZindlerHarmonic {
            k: 1,
            cos_amp: 0.15,
            sin_amp: 0.0,
        }],
    };
    let z = zoo::make_zindler(&params, 2048).unwrap();
    let hy = Hydrostatics::new(&z).unwrap();
    let tol = tol_eq_default(2, z.facets().len(), z.vertices().len());
    let at_half = hy.equilibrium_scan(hy.volume() * 0.5, 128, tol).unwrap();
    assert!(
        at_half.floats_all_directions,
        "half-density max residual {} vs tol {tol}",
        at_half.max_residual
    );
    let off_half = hy.equilibrium_scan(hy.volume() * 0.3, 128, tol).unwrap();
    assert!(
        !off_half.floats_all_directions,
        "off-density max residual {} vs tol {tol}",
        off_half.max_residual
    );
}

#[test]
fn degenerate_buoyancy_line_is_reported() {
    // At δ -> vol the buoyancy center approaches the body centroid.
    let cube = zoo::unit_cube().unwrap();
    let hy = Hydrostatics::new(&cube).unwrap();
    let res = hy.equilibrium_residual(&pt(&[0.0, 0.0, 1.0]), hy.volume() * (1.0 - 1e-13));
    assert!(res.is_err());
}

#[test]
fn ball_floating_body_shrinks_to_predicted_ball() {
    // δ = 5π/24 cuts caps of depth 1/2: the floating body is close to the
    // concentric ball of radius 1/2.
    let ball = zoo::make_ball(3, 1.0, 1024).unwrap();
    let fb = buoyancy_lab::diagnostics::floating_body(
        &ball,
        5.0 * PI / 24.0,
        &grid::fibonacci_sphere(512),
    )
    .unwrap();
    let inner = fb.body.expect("non-empty");
    let d = hausdorff_to_ball(&inner, &pt(&[0.0, 0.0, 0.0]), 0.5, 2048);
    assert!(d < 0.012, "distance to predicted ball: {d}");
}
