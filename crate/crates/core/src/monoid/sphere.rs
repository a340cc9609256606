use super::presentation::Presentation;
use super::word::TraceElement;
use crate::{Error, Result};

impl Presentation {
    /// All elements of length exactly `k`, in lexicographic order.
    ///
    /// Built by extending each element of the previous sphere by one
    /// generator and keeping the extensions that are still in normal form;
    /// prefixes of normal forms are normal, so nothing is missed and nothing
    /// is produced twice. Fails with a capacity error once a sphere would
    /// exceed [`Presentation::max_sphere`].
    pub fn sphere(&self, k: usize) -> Result<Vec<TraceElement>> {
        let mut level: Vec<Vec<u8>> = vec![Vec::new()];
        for depth in 1..=k {
            level = self.extend_level(&level, depth)?;
        }
        Ok(level.into_iter().map(TraceElement::from_normal).collect())
    }

    /// Sphere cardinalities `|M_0|, …, |M_k|`.
    pub fn growth(&self, k: usize) -> Result<Vec<usize>> {
        let mut sizes = vec![1];
        let mut level: Vec<Vec<u8>> = vec![Vec::new()];
        for depth in 1..=k {
            level = self.extend_level(&level, depth)?;
            sizes.push(level.len());
        }
        Ok(sizes)
    }

    fn extend_level(&self, level: &[Vec<u8>], depth: usize) -> Result<Vec<Vec<u8>>> {
        let limit = self.max_sphere();
        let mut next = Vec::with_capacity(level.len().saturating_mul(2).min(limit));
        for u in level {
            for g in self.generators() {
                if self.extends_normally(u, g) {
                    if next.len() == limit {
                        return Err(Error::Capacity { depth, size: limit + 1, limit });
                    }
                    let mut w = Vec::with_capacity(depth);
                    w.extend_from_slice(u);
                    w.push(g);
                    next.push(w);
                }
            }
        }
        Ok(next)
    }
}
