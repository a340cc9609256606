//! Exact cylinder measures.
//!
//! On the boundary of the free monoid with `n` generators the cylinder of a
//! word `v` has measure `n^{-|v|}`. The boundary measure of a monoid `M` is
//! the pushforward along the canonical map from the free monoid, so at depth
//! `k` the mass of the cylinder over `τ` is bounded below by the fraction of
//! length-`k` free words whose image is divisible by `τ`. These fractions are
//! computed exactly from fiber counts of the canonical map, obtained by a
//! depth-by-depth dynamic program over normal forms.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::monoid::{FreeWord, Presentation, TraceElement};
use crate::{Error, Result};

/// Fiber sizes of the canonical map on one sphere.
#[derive(Clone, Debug)]
pub struct SphereWeights {
    pub depth: usize,
    /// `sphere(depth)` in lexicographic order.
    pub elements: Vec<TraceElement>,
    /// `counts[i] = #{w : |w| = depth, φ(w) = elements[i]}`.
    pub counts: Vec<BigUint>,
    /// `n^depth`; equals the sum of `counts`.
    pub total: BigUint,
    index: HashMap<TraceElement, usize>,
}

impl SphereWeights {
    fn new(depth: usize, mut entries: Vec<(TraceElement, BigUint)>, total: BigUint) -> Self {
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let index = entries.iter().enumerate().map(|(i, (e, _))| (e.clone(), i)).collect();
        let (elements, counts) = entries.into_iter().unzip();
        SphereWeights { depth, elements, counts, total, index }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, e: &TraceElement) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// `ν_k(τ) = count / n^k`.
    pub fn weight(&self, i: usize) -> BigRational {
        BigRational::new(BigInt::from(self.counts[i].clone()), BigInt::from(self.total.clone()))
    }

    pub fn weights(&self) -> Vec<BigRational> {
        (0..self.len()).map(|i| self.weight(i)).collect()
    }
}

/// Fiber counts for every depth `0..=k`.
pub fn fiber_tower(p: &Presentation, k: usize) -> Result<Vec<SphereWeights>> {
    let n = BigUint::from(p.rank());
    let mut tower = Vec::with_capacity(k + 1);
    let mut level: Vec<(TraceElement, BigUint)> = vec![(TraceElement::identity(), BigUint::one())];
    let mut total = BigUint::one();
    tower.push(SphereWeights::new(0, level.clone(), total.clone()));
    for depth in 1..=k {
        let mut next: HashMap<Vec<u8>, BigUint> = HashMap::new();
        let mut buf = Vec::with_capacity(depth);
        for (sigma, count) in &level {
            for g in p.generators() {
                buf.clear();
                buf.extend_from_slice(sigma.letters());
                buf.push(g);
                let key = p.lex_normal(&buf);
                *next.entry(key).or_insert_with(BigUint::zero) += count;
            }
            if next.len() > p.max_sphere() {
                return Err(Error::Capacity { depth, size: next.len(), limit: p.max_sphere() });
            }
        }
        total *= &n;
        level = next.into_iter().map(|(w, c)| (TraceElement::from_normal(w), c)).collect();
        let sw = SphereWeights::new(depth, level, total.clone());
        level = sw.elements.iter().cloned().zip(sw.counts.iter().cloned()).collect();
        tower.push(sw);
    }
    Ok(tower)
}

/// `ν_k` on `sphere(k)`: positive rationals summing to 1.
pub fn sphere_weights(p: &Presentation, k: usize) -> Result<SphereWeights> {
    Ok(fiber_tower(p, k)?.pop().expect("tower has depth k"))
}

/// `n^{-|v|}`.
pub fn free_cylinder_measure(n: usize, v: &FreeWord) -> BigRational {
    assert!(n >= 1, "free monoid needs a generator");
    let denom = num_traits::pow(BigInt::from(n), v.len());
    BigRational::new(BigInt::one(), denom)
}

/// Depth-`k` lower bound for the boundary mass of the cylinder over `τ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderMeasure {
    pub target: TraceElement,
    pub depth: usize,
    /// `N_k(τ) = #{w ∈ F_k : τ left-divides φ(w)}`.
    pub count: BigUint,
    /// `n^k`.
    pub denominator: BigUint,
    pub lower_bound: BigRational,
}

impl CylinderMeasure {
    pub const CSV_HEADER: &'static str = "tau,depth,count,denominator,lower_bound";

    pub fn csv_row(&self, p: &Presentation) -> String {
        format!(
            "{},{},{},{},{}",
            p.format(&self.target),
            self.depth,
            self.count,
            self.denominator,
            crate::fmt::rational(&self.lower_bound)
        )
    }
}

/// Exact count of depth-`k` free words whose image lies in the cylinder of
/// `τ`. Requires `k ≥ |τ|`.
pub fn monoid_cylinder_measure(p: &Presentation, tau: &TraceElement, k: usize) -> Result<CylinderMeasure> {
    p.check_letters(tau.letters())?;
    if k < tau.len() {
        return Err(Error::invalid(format!("depth {k} is below the length {} of the target", tau.len())));
    }
    let sw = sphere_weights(p, k)?;
    Ok(cylinder_from_weights(p, tau, &sw))
}

/// Cylinder lower bound from precomputed fiber counts.
pub fn cylinder_from_weights(p: &Presentation, tau: &TraceElement, sw: &SphereWeights) -> CylinderMeasure {
    let count: BigUint = sw
        .elements
        .iter()
        .zip(&sw.counts)
        .filter(|(sigma, _)| p.left_divides(tau, sigma))
        .map(|(_, c)| c)
        .sum();
    let lower_bound = BigRational::new(BigInt::from(count.clone()), BigInt::from(sw.total.clone()));
    CylinderMeasure { target: tau.clone(), depth: sw.depth, count, denominator: sw.total.clone(), lower_bound }
}
