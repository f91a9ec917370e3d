//! Exact computations with quivers with relations: representations,
//! 0-generated stability, cornering `e_C A e_C`, the induced module
//! `A e_C ⊗ N` and torus-fixed-point combinatorics.

pub mod algebra;
pub mod classes;
pub mod corner;
pub mod corpus;
pub mod error;
pub mod linalg;
pub mod rep;
pub mod toric;

pub use error::{Error, Result};
