//! Hydrostatics of convex bodies.
//!
//! The toolkit cuts convex polytopes by hyperplanes at prescribed submerged
//! volume, tracks buoyancy centers and the surface they sweep, estimates
//! metacentric radii both by finite differences and from waterplane moments,
//! and runs the classical characterization tests (principal-moment constancy,
//! chord-power sums, equator isotropy, floating bodies) that decide whether a
//! body can float in equilibrium in every orientation.
//!
//! Everything operates on one representation: a `ConvexBody` (vertices plus
//! facet planes). Smooth bodies are meshed by the generators in [`zoo`] and
//! all quantities are exact on the mesh up to floating-point rounding.

pub mod body;
pub mod bodyfile;
pub mod clip;
pub mod diagnostics;
pub mod dupin;
pub mod error;
pub mod flotation;
pub mod grid;
pub mod hull;
pub mod measure;
pub mod section;
pub mod tol;
pub mod zoo;

pub use body::{ConvexBody, Facet, HalfSpace, Point};
pub use clip::clip;
pub use error::{Error, Result};
pub use flotation::{BuoyancyRecord, Hydrostatics, ScanResult, SurfaceOfCenters, Waterline};
pub use section::{moment_about_axis, section, Section};
