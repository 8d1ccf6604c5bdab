//! Torus-invariant monomial combinatorics for the low-degree cohomology of
//! finite groups of Lie type: finite fields, free graded-commutative algebras
//! with torus weights, the GL2/SL2 and GL_n models, root systems, and the
//! verification grid tying them together.

pub mod error;
pub mod ffq;
pub mod gl2;
pub mod grgln;
pub mod invalg;
pub mod report;
pub mod rootsys;
pub mod verify;

pub use error::{Error, Result};
