//! Truncated operator models on weighted spheres.
//!
//! `W_k` is the space of functions on `sphere(k)` weighted by the fiber
//! measure `ν_k`. The isometries `S_x : W_{k-1} → W_k` satisfy the
//! boundary-quotient relations as exact identities; the literal composition
//! operators `T_z` are kept alongside them so their normalization can be
//! compared. Entries live in [`Surd`], so vanishing defects are exactly zero.

mod chain;
mod defects;
mod model;
mod surd;

pub use chain::ChainOperator;
pub use defects::{relation_defects, DefectReport};
pub use model::{spectral_norm, TruncatedModel, WeightedSphereSpace, NORM_MAX_ITERATIONS, NORM_TOLERANCE};
pub use surd::{squarefree_split, Surd};
