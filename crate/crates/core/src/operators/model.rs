use std::collections::HashMap;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::chain::ChainOperator;
use super::surd::{rational_to_f64, Surd};
use crate::measure::{fiber_tower, SphereWeights};
use crate::monoid::{Presentation, TraceElement};
use crate::{Error, Result};

/// Power-iteration settings for operator norms.
pub const NORM_TOLERANCE: f64 = 1e-10;
pub const NORM_MAX_ITERATIONS: usize = 10_000;
const NORM_SEED: u64 = 0x6d66_7261_635f_6e72;

/// Functions on `sphere(K)` with `⟨f, g⟩ = Σ_τ f(τ)·g(τ)·ν_K(τ)`.
#[derive(Clone, Debug)]
pub struct WeightedSphereSpace {
    pub depth: usize,
    pub basis: Vec<TraceElement>,
    pub weights: Vec<BigRational>,
    index: HashMap<TraceElement, usize>,
}

impl WeightedSphereSpace {
    fn from_weights(sw: &SphereWeights) -> Self {
        let basis = sw.elements.clone();
        let index = basis.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        WeightedSphereSpace { depth: sw.depth, basis, weights: sw.weights(), index }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, e: &TraceElement) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// The indicator of basis element `i`.
    pub fn unit(&self, i: usize) -> Vec<Surd> {
        let mut v = vec![Surd::zero(); self.dim()];
        v[i] = Surd::one();
        v
    }

    pub fn constant_one(&self) -> Vec<Surd> {
        vec![Surd::one(); self.dim()]
    }

    pub fn inner(&self, f: &[Surd], g: &[Surd]) -> Surd {
        let mut acc = Surd::zero();
        for ((a, b), w) in f.iter().zip(g).zip(&self.weights) {
            if !a.is_zero() && !b.is_zero() {
                acc.add_assign_ref(&(a * b).scale(w));
            }
        }
        acc
    }
}

/// The truncated spaces `W_0, …, W_K` of one presentation and the operators
/// between them.
///
/// `S_x : W_{k-1} → W_k` sends `f` to `τ ↦ ρ_x(τ)·f(x⁻¹τ)` on the cylinder of
/// `x` (zero elsewhere), with `ρ_x(τ) = √(ν_{k-1}(x⁻¹τ)/ν_k(τ))`. The weight
/// factor makes every `S_x` an exact isometry.
#[derive(Clone, Debug)]
pub struct TruncatedModel {
    presentation: Presentation,
    spaces: Vec<WeightedSphereSpace>,
}

impl TruncatedModel {
    pub fn new(p: &Presentation, depth: usize) -> Result<Self> {
        let tower = fiber_tower(p, depth)?;
        let spaces = tower.iter().map(WeightedSphereSpace::from_weights).collect();
        Ok(TruncatedModel { presentation: p.clone(), spaces })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn depth(&self) -> usize {
        self.spaces.len() - 1
    }

    pub fn space(&self, k: usize) -> &WeightedSphereSpace {
        &self.spaces[k]
    }

    fn check_depth(&self, k: usize) -> Result<()> {
        if k > self.depth() {
            return Err(Error::invalid(format!("depth {k} exceeds the model depth {}", self.depth())));
        }
        Ok(())
    }

    fn check_generator(&self, x: u8) -> Result<()> {
        self.presentation.check_letters(&[x])
    }

    /// The isometry `S_x : W_{k-1} → W_k`.
    pub fn iso_s(&self, x: u8, k: usize) -> Result<ChainOperator> {
        self.check_generator(x)?;
        self.check_depth(k)?;
        if k == 0 {
            return Err(Error::invalid("S_x needs depth at least 1"));
        }
        let (src, dst) = (&self.spaces[k - 1], &self.spaces[k]);
        let gx = self.presentation.generator(x);
        let triples = src.basis.iter().enumerate().map(|(j, v)| {
            let tau = self.presentation.multiply(&gx, v);
            let i = dst.index_of(&tau).expect("x·v lies on the next sphere");
            let ratio = &src.weights[j] / &dst.weights[i];
            (i, j, Surd::sqrt_of(&ratio))
        });
        Ok(ChainOperator::from_triples(k - 1, src.dim(), k, dst.dim(), triples))
    }

    /// `S_x^* : W_k → W_{k-1}`.
    pub fn adjoint_s(&self, x: u8, k: usize) -> Result<ChainOperator> {
        Ok(self.adjoint(&self.iso_s(x, k)?))
    }

    /// The adjoint with respect to the weighted inner products:
    /// `A*[j, i] = A[i, j]·ν_target(i)/ν_source(j)`.
    pub fn adjoint(&self, a: &ChainOperator) -> ChainOperator {
        let (src, dst) = (&self.spaces[a.source_depth], &self.spaces[a.target_depth]);
        let triples: Vec<_> = a
            .entries()
            .map(|(i, j, v)| (j, i, v.scale(&(&dst.weights[i] / &src.weights[j]))))
            .collect();
        ChainOperator::from_triples(a.target_depth, a.target_dim(), a.source_depth, a.source_dim(), triples)
    }

    /// The composition operator `(T_z f)(w) = f(z·w)`, `W_k → W_{k-|z|}`,
    /// with no weight correction.
    pub fn op_t(&self, z: &TraceElement, k: usize) -> Result<ChainOperator> {
        self.presentation.check_letters(z.letters())?;
        self.check_depth(k)?;
        if z.len() > k {
            return Err(Error::invalid(format!("|z| = {} exceeds depth {k}", z.len())));
        }
        let (src, dst) = (&self.spaces[k], &self.spaces[k - z.len()]);
        let triples = dst.basis.iter().enumerate().map(|(i, w)| {
            let j = src.index_of(&self.presentation.multiply(z, w)).expect("z·w lies on sphere k");
            (i, j, Surd::one())
        });
        Ok(ChainOperator::from_triples(k, src.dim(), k - z.len(), dst.dim(), triples))
    }

    /// Extension by zero, `(T_z^† g)(z·w) = g(w)`, `W_{k-|z|} → W_k`: the
    /// adjoint formula without a density factor. It is the weighted adjoint
    /// of `T_z` only up to the factor `ν_{k-|z|}(w)/ν_k(z·w)`.
    pub fn op_t_literal_adjoint(&self, z: &TraceElement, k: usize) -> Result<ChainOperator> {
        let t = self.op_t(z, k)?;
        let triples: Vec<_> = t.entries().map(|(i, j, v)| (j, i, v.clone())).collect();
        Ok(ChainOperator::from_triples(t.target_depth, t.target_dim(), t.source_depth, t.source_dim(), triples))
    }

    /// `β_{*,s}`: `(β g)(w) = g(s·w)`, `W_k → W_{k-|s|}`.
    pub fn beta_action(&self, s: &TraceElement, k: usize) -> Result<ChainOperator> {
        self.op_t(s, k)
    }

    /// `Π_{x ∈ subset} (1 − S_x S_x^*)` on `W_k`, assembled from the
    /// isometries.
    pub fn range_projection(&self, subset: &[u8], k: usize) -> Result<ChainOperator> {
        self.check_depth(k)?;
        let dim = self.spaces[k].dim();
        let id = ChainOperator::identity(k, dim);
        let mut acc = id.clone();
        if k == 0 {
            return Ok(acc);
        }
        for &x in subset {
            let s = self.iso_s(x, k)?;
            let proj = s.compose(&self.adjoint(&s))?;
            acc = id.sub(&proj)?.compose(&acc)?;
        }
        Ok(acc)
    }

    /// `Σ_j ν_source(j)` over the nonzero columns of `a`: the mass of the set
    /// where `a` acts.
    pub fn support_mass(&self, a: &ChainOperator) -> BigRational {
        let w = &self.spaces[a.source_depth].weights;
        a.support().into_iter().map(|j| w[j].clone()).sum()
    }

    /// Squared weighted Hilbert–Schmidt norm `Σ A_ij²·ν_t(i)/ν_s(j)`.
    pub fn hs_norm_sq(&self, a: &ChainOperator) -> Surd {
        let (src, dst) = (&self.spaces[a.source_depth], &self.spaces[a.target_depth]);
        let mut acc = Surd::zero();
        for (i, j, v) in a.entries() {
            acc.add_assign_ref(&(v * v).scale(&(&dst.weights[i] / &src.weights[j])));
        }
        acc
    }

    /// Operator norm between the weighted spaces, by power iteration on
    /// `BᵀB` with `B = D_t^{1/2} A D_s^{-1/2}`.
    pub fn operator_norm(&self, a: &ChainOperator) -> f64 {
        if a.is_zero() {
            return 0.0;
        }
        let (src, dst) = (&self.spaces[a.source_depth], &self.spaces[a.target_depth]);
        let cols: Vec<Vec<(usize, f64)>> = (0..a.source_dim())
            .map(|j| {
                a.column(j)
                    .iter()
                    .map(|(i, v)| (*i, v.to_f64() * rational_to_f64(&(&dst.weights[*i] / &src.weights[j])).sqrt()))
                    .collect()
            })
            .collect();
        spectral_norm(&cols, a.target_dim())
    }

    /// Inner product on `W_k`.
    pub fn inner(&self, k: usize, f: &[Surd], g: &[Surd]) -> Surd {
        self.spaces[k].inner(f, g)
    }
}

/// Largest singular value of a column-major sparse real matrix.
pub fn spectral_norm(cols: &[Vec<(usize, f64)>], rows: usize) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(NORM_SEED);
    let mut v: Vec<f64> = (0..cols.len()).map(|_| rng.gen_range(0.5..1.5)).collect();
    normalize(&mut v);
    let mut sigma = 0.0;
    for _ in 0..NORM_MAX_ITERATIONS {
        let mut u = vec![0.0; rows];
        for (j, col) in cols.iter().enumerate() {
            for (i, a) in col {
                u[*i] += a * v[j];
            }
        }
        let mut w: Vec<f64> = cols.iter().map(|col| col.iter().map(|(i, a)| a * u[*i]).sum()).collect();
        let next = dot(&u, &u).sqrt();
        if normalize(&mut w) == 0.0 {
            return next;
        }
        v = w;
        if (next - sigma).abs() <= NORM_TOLERANCE * next.max(f64::MIN_POSITIVE) {
            return next;
        }
        sigma = next;
    }
    sigma
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) -> f64 {
    let n = dot(v, v).sqrt();
    if n > 0.0 {
        v.iter_mut().for_each(|x| *x /= n);
    }
    n
}
