//! Points of the universal boundary represented by eventually periodic words.
//!
//! A boundary word `u·v^∞` stands for the decreasing sequence of its prefix
//! elements. Comparisons between such sequences are answered with a
//! [`TriState`] carrying a finite certificate, and characters of the Laca
//! boundary are evaluated against a bounded horizon.

mod character;
mod order;
mod word;

pub use character::{char_eval, char_pullback, char_valid, Character, PulledCharacter};
pub use order::{
    approx_equiv, leq_bounded, leq_bounded_with, tilde_related, Certificate, LeqWitness, Obstruction, Refutation,
    TriState, DEFAULT_SEARCH_FACTOR,
};
pub use word::BoundaryWord;
