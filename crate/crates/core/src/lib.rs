//! Exact computations with finite polynomial morphisms of `p`-adic open unit
//! discs over `K_N = Q(pi)`, `pi^N = p`: valuation polygons, radiality,
//! fiber count functions, multiradii and residual reduction.

pub mod corpus;
pub mod disc_morphism;
pub mod error;
pub mod fiber;
pub mod json;
pub mod polygon;
pub mod polynomial;
pub mod pushforward;
pub mod radiality;
pub mod reduction;
pub mod render;
pub mod valued_field;

pub use disc_morphism::{DiscMorphism, DiscPoint};
pub use error::{Error, Result};
pub use fiber::{CountFunction, FiberData};
pub use polygon::{Domain, InverseProfile, NewtonPolygon};
pub use polynomial::{FpPoly, Poly};
pub use pushforward::Multiradius;
pub use radiality::{RadialStatus, RadialityVerdict};
pub use reduction::{ResidualClass, ResidualReport};
pub use valued_field::{FieldElement, FieldParams, Rational, Valuation};
