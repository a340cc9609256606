//! Finite-depth computations for the boundary theory of finitely 1-generated
//! monoids presented by commutation graphs.
//!
//! The crate is organised by subsystem:
//!
//! * [`monoid`]: presentations, lexicographic normal forms, the left
//!   divisibility order, spheres, cocones and intervals.
//! * [`boundary`]: eventually periodic boundary words, the bounded order
//!   between them and Laca-boundary characters.
//! * [`measure`]: exact cylinder measures on the free boundary and their
//!   pushforward to the monoid boundary.
//! * [`graph`]: opposite graphs and coconnected decomposition.
//! * [`operators`]: weighted sphere spaces and the truncated boundary
//!   operators together with their relation defects.
//! * [`fractal`]: affine monoid actions, attractors, the boundary-to-attractor
//!   map and contact measures.

pub mod boundary;
pub mod error;
pub mod fmt;
pub mod fractal;
pub mod graph;
pub mod measure;
pub mod monoid;
pub mod operators;

pub use error::{Error, Result};
pub use graph::UGraph;
pub use monoid::{FreeWord, Presentation, TraceElement};
