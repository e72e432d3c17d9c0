//! Dev calibration harness (temporary).

use buoyancy_lab::body::Point;
use buoyancy_lab::diagnostics::*;
use buoyancy_lab::dupin::*;
use buoyancy_lab::flotation::Hydrostatics;
use buoyancy_lab::{grid, zoo};
use nalgebra::DVector;

fn pt(v: &[f64]) -> Point {
    DVector::from_row_slice(v)
}

fn main() {
    let t0 = std::time::Instant::now();
    let pi = std::f64::consts::PI;

    // --- ball mesh, ~2000 facets
    let ball = zoo::make_ball(3, 1.0, 1024).unwrap();
    println!(
        "ball: V={} F={} vol={:.6} (exact {:.6})",
        ball.vertices().len(),
        ball.facets().len(),
        ball.volume(),
        4.0 * pi / 3.0
    );
    let hy = Hydrostatics::new(&ball).unwrap();
    let delta = hy.volume() / 2.0;

    // residuals over 200 dirs
    let scan = hy.equilibrium_scan(delta, 200, 1.0).unwrap();
    println!(
        "ball scan(200): max_residual={:.3e}  (30/F = {:.3e})  t={:?}",
        scan.max_residual,
        1.0 / ball.facets().len() as f64,
        t0.elapsed()
    );

    // waterline for cap volume 5pi/24 (exact t=-1/2 for smooth ball)
    let wl = hy
        .find_waterline(&pt(&[0.0, 0.0, 1.0]), 5.0 * pi / 24.0, 1e-10)
        .unwrap();
    println!("ball cap t for 5pi/24: {:.6} (exact -0.5), err {:.2e}", wl.t, (wl.t + 0.5).abs());

    // hemisphere buoyancy center
    let rec = hy.buoyancy_center(&pt(&[0.0, 0.0, 1.0]), delta).unwrap();
    println!(
        "ball hemisphere center z: {:.6} (exact -0.375), err {:.2e}",
        rec.center[2],
        (rec.center[2] + 0.375).abs()
    );

    // sphere of centers fit over 200 dirs
    let soc = hy.surface_of_centers(delta, &grid::fibonacci_sphere(200)).unwrap();
    println!(
        "ball soc: R={:.6} dev={:.3e} |center|={:.2e}  t={:?}",
        soc.mean_radius,
        soc.max_rel_deviation,
        soc.fitted_center.norm(),
        t0.elapsed()
    );

    // FD metacentric radius at several h
    for h in [1e-3, 1e-2, 0.05, 0.1] {
        match metacentric_radius_fd(&ball, delta, &pt(&[0.0, 0.0, 1.0]), &pt(&[1.0, 0.0, 0.0]), h) {
            Ok(est) => println!(
                "ball FD h={h}: r_fd={:.6} r_fd_2h={:.6} r_pred={:.6} gap={:.3e}",
                est.r_fd, est.r_fd_2h, est.r_pred, est.rel_gap
            ),
            Err(e) => println!("ball FD h={h}: error {e}"),
        }
    }

    // --- ellipsoid
    let ell = zoo::make_ellipsoid(2.0, 1.0, 1.0, 1024).unwrap();
    let hye = Hydrostatics::new(&ell).unwrap();
    let de = hye.volume() / 2.0;
    let t1 = std::time::Instant::now();
    let scan_e = hye.equilibrium_scan(de, 500, 1.0 / ell.facets().len() as f64).unwrap();
    println!(
        "ellipsoid scan(500): max_res={:.3e} floats={} equilibria={} t={:?}",
        scan_e.max_residual,
        scan_e.floats_all_directions,
        scan_e.equilibria.len(),
        t1.elapsed()
    );
    for (xi, r) in &scan_e.equilibria {
        // nearest axis angle
        let mut best = f64::INFINITY;
        for k in 0..3 {
            let mut a = vec![0.0; 3];
            a[k] = 1.0;
            let ang = xi.dot(&pt(&a)).abs().clamp(-1.0, 1.0).acos();
            best = best.min(ang);
        }
        println!("  equilibrium: res={:.3e} axis_angle={:.4} deg={:.3}", r, best, best * 180.0 / pi);
    }
    // residual at exact axis and nearby
    for d in [
        pt(&[1.0, 0.0, 0.0]),
        pt(&[0.0, 1.0, 0.0]),
        pt(&[0.0, 0.0, 1.0]),
        pt(&[1.0, 0.02, 0.0]).normalize(),
        pt(&[(0.5f64).sqrt(), (0.5f64).sqrt(), 0.0]),
    ] {
        let r = hye.equilibrium_residual(&d, de).unwrap();
        println!("  ellipsoid residual at {:?}: {:.4e}", d.as_slice(), r);
    }

    // --- zindler and circle (2D)
    let zp = zoo::ZindlerParams {
        chord_length: 2.0,
        harmonics: vec![zoo::ZindlerHarmonic { k: 1, cos_amp: 0.15, sin_amp: 0.0 }],
    };
    let z = zoo::make_zindler(&zp, 4096).unwrap();
    let hz = Hydrostatics::new(&z).unwrap();
    let az = hz.volume();
    let t2 = std::time::Instant::now();
    let szh = hz.equilibrium_scan(az * 0.5, 256, 1.0).unwrap();
    let szl = hz.equilibrium_scan(az * 0.3, 256, 1.0).unwrap();
    let circle = zoo::make_ball(2, 1.0, 4096).unwrap();
    let hc = Hydrostatics::new(&circle).unwrap();
    let sc = hc.equilibrium_scan(hc.volume() * 0.5, 256, 1.0).unwrap();
    println!(
        "zindler scan: D=.5 max={:.3e}  D=.3 max={:.3e}  circle max={:.3e}  t={:?}",
        szh.max_residual, szl.max_residual, sc.max_residual, t2.elapsed()
    );
    println!(
        "  2d tol formula 50*(2pi/N)^2 = {:.3e}",
        50.0 * (2.0 * pi / 4096.0).powi(2)
    );

    // --- davidov on disk
    let rep = davidov_2d_check(&circle, hc.volume() * 0.5, &pt(&[0.0, 1.0]), 1e-3).unwrap();
    println!(
        "davidov disk: L={:.6} r_pred={:.6} (exact {:.6}) r_fd={:.6} gap={:.3e}",
        rep.chord_length,
        rep.r_pred,
        4.0 / (3.0 * pi),
        rep.r_fd,
        rep.rel_gap
    );
    let rec2 = hc.buoyancy_center(&pt(&[0.0, 1.0]), hc.volume() * 0.5).unwrap();
    println!(
        "  half-disk center dist: {:.6} vs r_pred gap {:.3e}",
        rec2.center.norm(),
        (rec2.center.norm() - rep.r_pred).abs() / rep.r_pred
    );

    // --- ball limit levels
    let t3 = std::time::Instant::now();
    let vol = hy.volume();
    let deltas: Vec<f64> = (1..=5).map(|n| vol / 2f64.powi(n)).collect();
    let opts = BallLimitOptions {
        scan_dirs: 128,
        floating_dirs: 800,
        hausdorff_dirs: 2048,
        tol_eq: 1.0 / ball.facets().len() as f64,
    };
    let rep = ball_limit_test(&ball, &deltas, &opts).unwrap();
    let mesh_tol = hausdorff_to_ball(&ball, &pt(&[0.0, 0.0, 0.0]), 1.0, 2048);
    println!("mesh_tol (ball vs unit sphere): {:.4e}", mesh_tol);
    for l in &rep.levels {
        // cap depth h for this delta: pi h^2 (3-h)/3 = delta
        let mut h = 0.5f64;
        for _ in 0..60 {
            let f = pi * h * h * (3.0 - h) / 3.0 - l.delta;
            let df = pi * (2.0 * h * (3.0 - h) - h * h) / 3.0;
            h -= f / df;
        }
        let r_pred = 3.0 * (2.0 - h).powi(2) / (4.0 * (3.0 - h));
        println!(
            "  delta={:.4} floats={} maxres={:.2e} r={:.4} (pred {:.4}) dev={:.2e} dK={:.4} (pred h={:.4}) dBall={:.4}",
            l.delta,
            l.scan.floats_all_directions,
            l.scan.max_residual,
            l.fit_radius,
            r_pred,
            l.fit_max_rel_dev,
            l.d_floating_to_body,
            h,
            l.d_fitted_ball_to_body
        );
    }
    println!("ball limit total t={:?} pass={}", t3.elapsed(), rep.pass);

    println!("TOTAL {:?}", t0.elapsed());
}
