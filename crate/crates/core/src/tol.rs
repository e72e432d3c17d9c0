//! Tolerance defaults used across the toolkit.
//!
//! Geometric predicates scale with the body diameter; volume stops scale with
//! the total volume; angular tolerances depend on whether the body is an exact
//! polytope or a mesh approximation of a smooth body (meshing breaks exact
//! symmetry, so equilibrium residuals on meshes bottom out at the mesh error).

/// Relative tolerance for vertex-vs-plane classification. Vertices closer to a
/// cutting plane than `EPS_GEOM_REL * diameter` are snapped onto it.
pub const EPS_GEOM_REL: f64 = 1e-9;

/// Default relative volume tolerance for the waterline solver: bisection stops
/// once the submerged volume matches the target within `TOL_VOL * volume(K)`.
pub const TOL_VOL: f64 = 1e-10;

/// Equilibrium residual tolerance (radians) for exact polytopes.
pub const TOL_EQ_EXACT: f64 = 1e-6;

/// Default finite-difference step (radians) for curvature and tilt probes on
/// exact polytopes.
pub const FD_STEP: f64 = 1e-3;

/// Finite-difference step (radians) for meshed smooth bodies. Curvature
/// estimates divide point noise by h^2, so h must sit well above the mesh
/// error scale.
pub const FD_STEP_MESH: f64 = 5e-2;

/// Coefficient for the mesh-scaled equilibrium tolerance in 3D:
/// `tol_eq = MESH_TOL_EQ_3D / n_facets`. Calibrated on Fibonacci ball meshes:
/// a ~2000-facet ball scans at max residual ~1e-4, five times under this
/// tolerance, while spurious saddle minima sit an order of magnitude above.
pub const MESH_TOL_EQ_3D: f64 = 1.0;

/// Coefficient for the mesh-scaled equilibrium tolerance in 2D:
/// `tol_eq = MESH_TOL_EQ_2D * (2*pi / n_vertices)^2`. Polygonization of a
/// smooth curve perturbs centroids at second order in the edge angle.
pub const MESH_TOL_EQ_2D: f64 = 50.0;

/// Relative tolerance for the central-symmetry precondition of the equator
/// isotropy test. Loose enough for meshed symmetric bodies (a Fibonacci ball
/// mesh is only symmetric up to the facet sagitta).
pub const SYM_TOL: f64 = 0.02;

/// Default relative tolerance for the diagnostic verdicts (principal moments,
/// equichordality, equator isotropy).
pub const TOL_TEST: f64 = 0.01;

/// Facet count above which a body is presumed to be a mesh of a smooth body
/// rather than an exact polytope, for the purpose of picking `tol_eq`.
pub const MESH_FACET_THRESHOLD: usize = 100;

/// Mesh-aware default equilibrium tolerance.
pub fn tol_eq_default(dim: usize, n_facets: usize, n_vertices: usize) -> f64 {
    if n_facets < MESH_FACET_THRESHOLD {
        return TOL_EQ_EXACT;
    }
    match dim {
        2 => {
            let h = 2.0 * std::f64::consts::PI / n_vertices as f64;
            (MESH_TOL_EQ_2D * h * h).max(TOL_EQ_EXACT)
        }
        _ => (MESH_TOL_EQ_3D / n_facets as f64).max(TOL_EQ_EXACT),
    }
}
