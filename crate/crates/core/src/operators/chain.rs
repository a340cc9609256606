use super::surd::Surd;
use crate::{Error, Result};

/// A sparse linear map between two truncated spaces `W_source → W_target`.
///
/// Entries are stored column by column (one column per source basis
/// element), sorted by row, with no explicit zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainOperator {
    pub source_depth: usize,
    pub target_depth: usize,
    source_dim: usize,
    target_dim: usize,
    cols: Vec<Vec<(usize, Surd)>>,
}

impl ChainOperator {
    pub fn zero(source_depth: usize, source_dim: usize, target_depth: usize, target_dim: usize) -> Self {
        ChainOperator { source_depth, target_depth, source_dim, target_dim, cols: vec![Vec::new(); source_dim] }
    }

    pub fn identity(depth: usize, dim: usize) -> Self {
        let cols = (0..dim).map(|j| vec![(j, Surd::one())]).collect();
        ChainOperator { source_depth: depth, target_depth: depth, source_dim: dim, target_dim: dim, cols }
    }

    /// Builds an operator from `(row, col, value)` triples; repeated
    /// positions are summed.
    pub fn from_triples(
        source_depth: usize,
        source_dim: usize,
        target_depth: usize,
        target_dim: usize,
        triples: impl IntoIterator<Item = (usize, usize, Surd)>,
    ) -> Self {
        let mut op = ChainOperator::zero(source_depth, source_dim, target_depth, target_dim);
        for (i, j, v) in triples {
            assert!(i < target_dim && j < source_dim, "entry ({i}, {j}) out of range");
            op.accumulate(i, j, &v);
        }
        op
    }

    fn accumulate(&mut self, i: usize, j: usize, v: &Surd) {
        if v.is_zero() {
            return;
        }
        let col = &mut self.cols[j];
        match col.binary_search_by_key(&i, |(r, _)| *r) {
            Ok(pos) => {
                col[pos].1.add_assign_ref(v);
                if col[pos].1.is_zero() {
                    col.remove(pos);
                }
            }
            Err(pos) => col.insert(pos, (i, v.clone())),
        }
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn column(&self, j: usize) -> &[(usize, Surd)] {
        &self.cols[j]
    }

    /// Nonzero entries as `(row, col, value)`, column-major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Surd)> {
        self.cols.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |(i, v)| (*i, j, v)))
    }

    pub fn get(&self, i: usize, j: usize) -> Surd {
        let col = &self.cols[j];
        match col.binary_search_by_key(&i, |(r, _)| *r) {
            Ok(pos) => col[pos].1.clone(),
            Err(_) => Surd::zero(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    /// Source basis indices whose column is nonzero.
    pub fn support(&self) -> Vec<usize> {
        (0..self.source_dim).filter(|&j| !self.cols[j].is_empty()).collect()
    }

    fn same_shape(&self, other: &ChainOperator) -> Result<()> {
        if self.source_depth != other.source_depth
            || self.target_depth != other.target_depth
            || self.source_dim != other.source_dim
            || self.target_dim != other.target_dim
        {
            return Err(Error::invalid(format!(
                "shape mismatch: W_{} -> W_{} versus W_{} -> W_{}",
                self.source_depth, self.target_depth, other.source_depth, other.target_depth
            )));
        }
        Ok(())
    }

    /// `self ∘ rhs`; requires `rhs` to land where `self` starts.
    pub fn compose(&self, rhs: &ChainOperator) -> Result<ChainOperator> {
        if rhs.target_depth != self.source_depth || rhs.target_dim != self.source_dim {
            return Err(Error::invalid(format!(
                "cannot compose W_{} -> W_{} after W_{} -> W_{}",
                self.source_depth, self.target_depth, rhs.source_depth, rhs.target_depth
            )));
        }
        let mut out = ChainOperator::zero(rhs.source_depth, rhs.source_dim, self.target_depth, self.target_dim);
        for (j, col) in rhs.cols.iter().enumerate() {
            for (k, b) in col {
                for (i, a) in &self.cols[*k] {
                    out.accumulate(*i, j, &(a * b));
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &ChainOperator) -> Result<ChainOperator> {
        self.same_shape(rhs)?;
        let mut out = self.clone();
        for (i, j, v) in rhs.entries() {
            out.accumulate(i, j, v);
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &ChainOperator) -> Result<ChainOperator> {
        self.same_shape(rhs)?;
        let mut out = self.clone();
        for (i, j, v) in rhs.entries() {
            out.accumulate(i, j, &(-v));
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Surd]) -> Vec<Surd> {
        assert_eq!(v.len(), self.source_dim, "vector length");
        let mut out = vec![Surd::zero(); self.target_dim];
        for (j, col) in self.cols.iter().enumerate() {
            if v[j].is_zero() {
                continue;
            }
            for (i, a) in col {
                out[*i].add_assign_ref(&(a * &v[j]));
            }
        }
        out
    }

    /// Whether every nonzero entry lies on the diagonal.
    pub fn is_diagonal(&self) -> bool {
        self.entries().all(|(i, j, _)| i == j)
    }
}
