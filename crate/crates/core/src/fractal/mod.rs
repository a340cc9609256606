//! Contracting affine actions of a presentation and their attractors.
//!
//! An [`IfsAction`] assigns an affine contraction to each generator so that
//! commuting generators act by commuting maps. Points of the attractor are
//! reached along boundary words by [`kappa`]; pushing the sphere masses
//! through the action gives the contact measure, tabulated on a grid with
//! lower and upper bounds.

mod action;
mod attractor;
mod contact;
mod geometry;

pub use action::{distance, validate_action, AffineMap, IfsAction, RELATION_TOLERANCE};
pub use attractor::{attractor_points, kappa, kappa_basepoint_independence, KappaValue, PointCloud, ROUNDING_GUARD};
pub use contact::{
    contact_measure, gamma_norm_check, region_mass, DensityGrid, GridSpec, MassInterval, BOUNDARY_SLACK, DEFAULT_MAX_CELLS,
};
pub use geometry::{box_counting_dimension, hausdorff_distance, BoxCount};
