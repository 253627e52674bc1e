//! Truncated singular integrals, principal values, and one-sided
//! non-tangential limits of odd Calderón–Zygmund operators on
//! rectifiable curves and surfaces, together with numerical
//! verification of the jump identities relating them.

pub mod error;
pub mod geometry;
pub mod harness;
pub mod kernel;
pub mod measure;
pub mod operators;
pub mod vec3;

pub use error::{Error, Result};
pub use vec3::Vec3;
