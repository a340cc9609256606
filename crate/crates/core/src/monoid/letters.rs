use super::presentation::MAX_GENERATORS;

/// Fixed-size bitset over generator indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct LetterSet([u64; MAX_GENERATORS / 64]);

impl LetterSet {
    pub const fn empty() -> Self {
        LetterSet([0; MAX_GENERATORS / 64])
    }

    #[inline]
    pub fn insert(&mut self, letter: u8) {
        self.0[(letter >> 6) as usize] |= 1 << (letter & 63);
    }

    #[inline]
    pub fn contains(&self, letter: u8) -> bool {
        self.0[(letter >> 6) as usize] & (1 << (letter & 63)) != 0
    }

    #[inline]
    pub fn intersects(&self, other: &LetterSet) -> bool {
        self.0.iter().zip(other.0.iter()).any(|(a, b)| a & b != 0)
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|w| *w == 0)
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = u8> + '_ {
        (0..MAX_GENERATORS).map(|i| i as u8).filter(|&l| self.contains(l))
    }
}

impl FromIterator<u8> for LetterSet {
    fn from_iter<I: IntoIterator<Item = u8>>(iter: I) -> Self {
        let mut s = LetterSet::empty();
        for l in iter {
            s.insert(l);
        }
        s
    }
}
