//! Finitely 1-generated monoids presented by a commutation graph.
//!
//! Every element is stored as the lexicographically least word of its
//! commutation class, with the generator order fixed by the presentation.
//! Free monoids (no commuting pairs) and right-angled Artin monoids are the
//! two ends of the same family.

mod letters;
mod order;
mod presentation;
mod sphere;
mod word;

pub use letters::LetterSet;
pub use order::Strip;
pub use presentation::{Presentation, DEFAULT_MAX_SPHERE, MAX_GENERATORS};
pub use word::{FreeWord, TraceElement};
