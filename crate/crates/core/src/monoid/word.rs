use std::cmp::Ordering;

use super::letters::LetterSet;
use super::presentation::Presentation;
use crate::Result;

/// An arbitrary word over the generators, i.e. an element of the free monoid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FreeWord(Vec<u8>);

impl FreeWord {
    pub fn new(letters: Vec<u8>) -> Self {
        FreeWord(letters)
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.0
    }
}

impl From<Vec<u8>> for FreeWord {
    fn from(v: Vec<u8>) -> Self {
        FreeWord(v)
    }
}

impl From<&[u8]> for FreeWord {
    fn from(v: &[u8]) -> Self {
        FreeWord(v.to_vec())
    }
}

/// A monoid element, held as the lexicographically least word of its
/// commutation class. Its length is the grading.
///
/// Elements are ordered shortlex (length first, then lexicographically), so
/// sorted collections list spheres in increasing depth.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TraceElement(Vec<u8>);

impl TraceElement {
    pub fn identity() -> Self {
        TraceElement(Vec::new())
    }

    /// Wraps letters already known to be in normal form.
    pub(crate) fn from_normal(letters: Vec<u8>) -> Self {
        TraceElement(letters)
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    /// The grading `|x|`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_free(&self) -> FreeWord {
        FreeWord(self.0.clone())
    }
}

impl Ord for TraceElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for TraceElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Presentation {
    /// The lexicographically least word equivalent to `w` under swaps of
    /// adjacent commuting letters.
    pub fn normal_form(&self, w: &FreeWord) -> Result<TraceElement> {
        self.check_letters(w.letters())?;
        Ok(TraceElement(self.lex_normal(w.letters())))
    }

    /// The canonical graded homomorphism from the free monoid on the
    /// generators onto this monoid. Identical to [`Presentation::normal_form`].
    pub fn canonical_hom(&self, w: &FreeWord) -> Result<TraceElement> {
        self.normal_form(w)
    }

    pub fn multiply(&self, a: &TraceElement, b: &TraceElement) -> TraceElement {
        if a.is_identity() {
            return b.clone();
        }
        if b.is_identity() {
            return a.clone();
        }
        let mut w = Vec::with_capacity(a.len() + b.len());
        w.extend_from_slice(a.letters());
        w.extend_from_slice(b.letters());
        TraceElement(self.lex_normal(&w))
    }

    /// Greedy construction: the least representative starts with the least
    /// letter that can be moved to the front, followed by the least
    /// representative of what remains.
    pub(crate) fn lex_normal(&self, letters: &[u8]) -> Vec<u8> {
        let mut rest: Vec<u8> = letters.to_vec();
        let mut out = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            let mut seen = LetterSet::empty();
            let mut best: Option<(u8, usize)> = None;
            for (i, &c) in rest.iter().enumerate() {
                if !seen.intersects(self.dependent(c)) && best.is_none_or(|(b, _)| c < b) {
                    best = Some((c, i));
                }
                seen.insert(c);
            }
            let (c, i) = best.expect("a nonempty word has a minimal letter");
            out.push(c);
            rest.remove(i);
        }
        out
    }

    /// Whether `letters` is already the least word of its class.
    ///
    /// A word fails exactly when some letter `a` can travel left past a
    /// larger letter `b` through letters all commuting with `a`.
    pub fn is_normal(&self, letters: &[u8]) -> bool {
        (1..letters.len()).all(|end| self.extends_normally(&letters[..end], letters[end]))
    }

    /// For `prefix` in normal form, whether `prefix · g` is in normal form.
    #[inline]
    pub(crate) fn extends_normally(&self, prefix: &[u8], g: u8) -> bool {
        let dep = self.dependent(g);
        for &d in prefix.iter().rev() {
            if dep.contains(d) {
                return true;
            }
            if d > g {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{HashSet, VecDeque};

    fn xyz() -> Presentation {
        Presentation::from_names(&["x", "y", "z"], &[("x", "z")]).unwrap()
    }

    /// Swap-closure oracle: all words reachable by swapping adjacent
    /// commuting letters.
    fn swap_class(p: &Presentation, w: &[u8]) -> HashSet<Vec<u8>> {
        let mut seen = HashSet::from([w.to_vec()]);
        let mut queue = VecDeque::from([w.to_vec()]);
        while let Some(u) = queue.pop_front() {
            for i in 0..u.len().saturating_sub(1) {
                if p.commutes(u[i], u[i + 1]) {
                    let mut v = u.clone();
                    v.swap(i, i + 1);
                    if seen.insert(v.clone()) {
                        queue.push_back(v);
                    }
                }
            }
        }
        seen
    }

    fn all_words(n: u8, len: usize) -> Vec<Vec<u8>> {
        (0..len).fold(vec![vec![]], |acc, _| {
            acc.iter().flat_map(|w| (0..n).map(move |g| [w.clone(), vec![g]].concat())).collect()
        })
    }

    #[test]
    fn normal_form_examples() {
        let f2 = Presentation::from_names(&["x", "y"], &[]).unwrap();
        assert_eq!(f2.parse_element("xy").unwrap().letters(), &[0, 1]);
        let p = xyz();
        assert_eq!(p.format(&p.parse_element("zx").unwrap()), "xz");
        assert_eq!(p.format(&p.parse_element("zyx").unwrap()), "zyx");
        assert_eq!(swap_class(&p, &[2, 1, 0]).len(), 1);
    }

    #[test]
    fn unknown_letters_are_rejected() {
        let p = xyz();
        assert!(p.normal_form(&FreeWord::new(vec![0, 3])).is_err());
    }

    #[test]
    fn greedy_matches_swap_closure_minimum() {
        // x<y<z with y commuting with both others: zxy must become yzx,
        // which adjacent bubble passes cannot reach.
        let tricky = Presentation::from_names(&["x", "y", "z"], &[("x", "y"), ("y", "z")]).unwrap();
        assert_eq!(tricky.format(&tricky.parse_element("zxy").unwrap()), "yzx");

        let presentations = [
            xyz(),
            tricky,
            Presentation::from_names(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]).unwrap(),
            Presentation::from_names(&["a", "b", "c", "d"], &[("a", "c"), ("b", "d"), ("a", "d")]).unwrap(),
        ];
        for p in &presentations {
            for len in 0..=6usize {
                if p.rank().pow(len as u32) > 5000 {
                    continue;
                }
                for w in all_words(p.rank() as u8, len) {
                    let class = swap_class(p, &w);
                    let min = class.iter().min().unwrap();
                    let nf = p.normal_form(&FreeWord::new(w.clone())).unwrap();
                    assert_eq!(nf.letters(), min.as_slice(), "{p:?} word {w:?}");
                    assert_eq!(p.is_normal(&w), &w == min);
                }
            }
        }
    }

    #[test]
    fn multiply_examples() {
        let p = xyz();
        let x = p.generator(0);
        assert_eq!(p.multiply(&x, &TraceElement::identity()), x);
        assert_eq!(p.format(&p.multiply(&p.generator(2), &x)), "xz");
        let f2 = Presentation::free(2).unwrap();
        assert_eq!(f2.multiply(&f2.generator(0), &f2.generator(1)).letters(), &[0, 1]);
    }

    #[test]
    fn shortlex_order() {
        let a = TraceElement::from_normal(vec![1]);
        let b = TraceElement::from_normal(vec![0, 0]);
        assert!(a < b);
        assert!(TraceElement::identity() < a);
    }
}
