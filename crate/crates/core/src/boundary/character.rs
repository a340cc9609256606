//! Characters on the semigroup of principal right ideals.
//!
//! A boundary word `ω` defines `χ_ω(τM) = 1` iff `τ` left-divides some
//! prefix element of `ω`. Evaluation searches prefixes up to
//! `horizon·|τ|` letters; a `1` is always exact, a `0` is exact for free
//! monoids and horizon-qualified otherwise.

use std::collections::HashMap;

use super::word::BoundaryWord;
use crate::monoid::{FreeWord, Presentation, Strip, TraceElement};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub word: BoundaryWord,
    pub horizon: usize,
}

impl Character {
    pub fn new(word: BoundaryWord, horizon: usize) -> Result<Self> {
        if horizon == 0 {
            return Err(Error::invalid("character horizon must be positive"));
        }
        Ok(Character { word, horizon })
    }
}

/// `χ(τM)` for the character's boundary word.
pub fn char_eval(p: &Presentation, c: &Character, t: &TraceElement) -> bool {
    if t.is_identity() {
        return true;
    }
    let mut window = c.word.prefix(c.horizon * t.len());
    t.letters().iter().all(|&g| matches!(p.strip_front(&mut window, g), Strip::Found(_)))
}

/// Whether a finite assignment of values to principal ideals is hereditary:
/// whenever `u` has value 1 and `v` left-divides `u`, `v` has value 1.
///
/// Repeated elements must agree; conflicting repeats are an input error.
pub fn char_valid(p: &Presentation, assignment: &[(TraceElement, bool)]) -> Result<bool> {
    let mut values: HashMap<&TraceElement, bool> = HashMap::new();
    for (t, v) in assignment {
        if let Some(prev) = values.insert(t, *v) {
            if prev != *v {
                return Err(Error::invalid(format!("conflicting values for {}", p.format(t))));
            }
        }
    }
    Ok(values
        .iter()
        .filter(|(_, &v)| v)
        .all(|(u, _)| values.iter().all(|(w, &vw)| vw || !p.left_divides(w, u))))
}

/// A character of the source monoid obtained by composing a character of the
/// target with a graded surjection `φ`: `(φ*χ)(qQ) = χ(φ(q)M)`.
#[derive(Clone, Debug)]
pub struct PulledCharacter {
    source: Presentation,
    target: Presentation,
    images: Vec<u8>,
    character: Character,
}

/// Pulls `c` back along the homomorphism sending source generator `i` to
/// `images[i]`.
///
/// Each image must be a single generator (the map is graded), every target
/// generator must be hit, and commuting source generators must map to equal
/// or commuting target generators.
pub fn char_pullback(
    source: &Presentation,
    target: &Presentation,
    images: &[FreeWord],
    c: &Character,
) -> Result<PulledCharacter> {
    if images.len() != source.rank() {
        return Err(Error::invalid(format!(
            "{} images given for {} source generators",
            images.len(),
            source.rank()
        )));
    }
    let mut letters = Vec::with_capacity(images.len());
    for (i, img) in images.iter().enumerate() {
        target.check_letters(img.letters())?;
        match img.letters() {
            [g] => letters.push(*g),
            _ => {
                return Err(Error::invalid(format!(
                    "image of {} has length {}, expected a single generator",
                    source.name(i as u8),
                    img.len()
                )))
            }
        }
    }
    if let Some(missed) = target.generators().find(|g| !letters.contains(g)) {
        return Err(Error::invalid(format!("generator {} is not in the image", target.name(missed))));
    }
    for (a, b) in source.edges() {
        let (x, y) = (letters[a], letters[b]);
        if x != y && !target.commutes(x, y) {
            return Err(Error::invalid(format!(
                "{} and {} commute but their images do not",
                source.name(a as u8),
                source.name(b as u8)
            )));
        }
    }
    Ok(PulledCharacter { source: source.clone(), target: target.clone(), images: letters, character: c.clone() })
}

impl PulledCharacter {
    pub fn source(&self) -> &Presentation {
        &self.source
    }

    /// The image of a source element in the target monoid.
    pub fn push(&self, q: &TraceElement) -> TraceElement {
        let mapped: Vec<u8> = q.letters().iter().map(|&l| self.images[l as usize]).collect();
        self.target.normal_form(&mapped.into()).expect("images are validated")
    }

    pub fn eval(&self, q: &TraceElement) -> bool {
        char_eval(&self.target, &self.character, &self.push(q))
    }
}
