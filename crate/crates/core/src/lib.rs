//! Equivariant Ehrhart theory, H/G and S-tilde polynomials of cones with
//! finite symmetry, and equivariant stringy invariants of reflexive
//! hypersurfaces, all in exact arithmetic.

pub mod algebra;
pub mod combinatorics;
pub mod error;
pub mod groups;
pub mod hypersurface;
pub mod polytope;

pub use error::{Error, Result};
