//! Deterministic direction grids on the unit sphere and circle.

use nalgebra::DVector;

/// Golden angle in radians, `pi * (3 - sqrt(5))`.
pub(crate) const GOLDEN_ANGLE: f64 = 2.399963229728653;

/// `n` unit directions: Fibonacci lattice for d = 3, uniform angles for d = 2.
///
/// Both grids are deterministic. The Fibonacci lattice never hits the poles
/// or repeats a direction; the circle grid starts at (1, 0).
pub fn directions(dim: usize, n: usize) -> Vec<DVector<f64>> {
    match dim {
        2 => circle(n),
        3 => fibonacci_sphere(n),
        _ => panic!("direction grids are provided for d = 2 and d = 3 only"),
    }
}

/// Fibonacci sphere lattice with `n` points.
pub fn fibonacci_sphere(n: usize) -> Vec<DVector<f64>> {
    (0..n)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let phi = GOLDEN_ANGLE * i as f64;
            DVector::from_vec(vec![r * phi.cos(), r * phi.sin(), z])
        })
        .collect()
}

/// `n` uniformly spaced unit directions on the circle.
pub fn circle(n: usize) -> Vec<DVector<f64>> {
    (0..n)
        .map(|i| {
            let theta = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
            DVector::from_vec(vec![theta.cos(), theta.sin()])
        })
        .collect()
}
