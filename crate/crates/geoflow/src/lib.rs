//! Geodesic flow on three-dimensional ellipsoids with coinciding semi-axes.
//!
//! The dynamics lives on the cotangent bundle of the ellipsoid, realized as
//! a Dirac bracket on R^8 subject to the two constraints C1 (on the surface)
//! and C2 (momentum tangent to it). Depending on which semi-axes coincide the
//! flow acquires extra symmetry; the modules below cover conserved quantities,
//! symmetry reduction, separation of variables, action integrals, bifurcation
//! diagrams, and Poincare sections for each case.

pub mod actions;
pub mod bifurcation;
pub mod conserved;
pub mod ellipsoid;
pub mod elliptic;
pub mod error;
pub mod integrate;
pub mod observables;
pub mod reduction;
pub mod sample;
pub mod sections;
pub mod separation;

pub use ellipsoid::{EllipsoidSpec, PhasePoint, SymmetryCase};
pub use error::{GeoflowError, Result};
