//! Exact local algebra of umbilic points on surfaces in Euclidean 3-space and
//! Minkowski 3-space.
//!
//! Surfaces are polynomial graph patches with rational coefficients. The
//! principal-curvature binary differential equation, its discriminant, the
//! locus of degeneracy and the umbilic multiplicity are all computed exactly;
//! only the phase portraits use floating point.

#![no_std]

extern crate alloc;

mod bivar;
pub mod deform;
pub mod error;
pub mod interval;
pub mod jet;
pub mod linalg;
pub mod local;
pub mod models;
pub mod portrait;
pub mod strata;
pub mod surface;
pub mod umbilic;
pub mod upoly;
pub mod versality;

pub use error::{Error, Result};
pub use jet::{q, qi, JetPoly, Scalar, Var};
pub use local::{Mult, MultiplicityResult, Sign, SingularityClass};
