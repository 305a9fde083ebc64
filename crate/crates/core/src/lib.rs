//! Exact polyhedral machinery for pulling subdivisions of strictly convex
//! rational cones, the integral support functions they induce, and the
//! monomial ideals whose blowups realize them.
//!
//! All arithmetic is arbitrary-precision rational; there is no floating
//! point anywhere in this crate. The algorithms are exhaustive and exact,
//! sized for small ambient ranks rather than large instances.

pub mod cartier;
pub mod exactq;
pub mod fans;
pub mod newton;
pub mod polyhedra;
pub mod pulling;

mod error;
mod hrep;

pub use error::Error;

pub use cartier::{CartierData, MonomialIdealData, SupportFunction};
pub use exactq::{Int, LinSystem, Rat};
pub use fans::{Cone, Fan};
pub use newton::NewtonPolyhedron;
pub use polyhedra::{HPolyhedron, HalfSpace, VPolytope};
pub use pulling::{ConicalSubdivision, HeightedConfig};

pub type Result<T> = std::result::Result<T, Error>;
