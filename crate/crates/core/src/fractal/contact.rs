use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::action::{distance, IfsAction};
use crate::measure::sphere_weights;
use crate::monoid::TraceElement;
use crate::{Error, Result};

pub const DEFAULT_MAX_CELLS: usize = 1 << 22;

/// Relative slack, as a fraction of the largest box side, absorbing
/// floating-point error when a ball touches a cell face.
pub const BOUNDARY_SLACK: f64 = 1e-9;

/// A box split into `resolution` cells per axis.
#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub resolution: usize,
    pub max_cells: usize,
}

impl GridSpec {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>, resolution: usize) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::invalid("grid corners must have the same positive dimension"));
        }
        if lo.iter().zip(&hi).any(|(l, h)| !(l < h) || !l.is_finite() || !h.is_finite()) {
            return Err(Error::invalid("grid box must have positive finite extent on every axis"));
        }
        if resolution == 0 {
            return Err(Error::invalid("grid resolution must be positive"));
        }
        Ok(GridSpec { lo, hi, resolution, max_cells: DEFAULT_MAX_CELLS })
    }

    /// The cube around the invariant ball, widened to contain the seed.
    pub fn around(a: &IfsAction, x: &[f64], resolution: usize) -> Result<Self> {
        a.check_point(x)?;
        let mut half = a.radius().max(distance(x, a.center()));
        if half == 0.0 {
            half = 1.0;
        }
        let lo = a.center().iter().map(|c| c - half).collect();
        let hi = a.center().iter().map(|c| c + half).collect();
        GridSpec::new(lo, hi, resolution)
    }

    pub fn with_max_cells(mut self, max_cells: usize) -> Self {
        self.max_cells = max_cells;
        self
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn cell_count(&self) -> Option<usize> {
        self.resolution.checked_pow(self.dim() as u32)
    }

    fn side(&self, axis: usize) -> f64 {
        (self.hi[axis] - self.lo[axis]) / self.resolution as f64
    }

    fn slack(&self) -> f64 {
        BOUNDARY_SLACK * (0..self.dim()).map(|i| self.hi[i] - self.lo[i]).fold(0.0, f64::max)
    }

    /// Cell coordinate of `v` on `axis`, unclamped.
    fn axis_index(&self, axis: usize, v: f64) -> i64 {
        ((v - self.lo[axis]) / self.side(axis)).floor() as i64
    }

    /// Flat index of the cell containing `p`; the upper faces of the box
    /// belong to the last cells.
    pub fn locate(&self, p: &[f64]) -> Option<usize> {
        let mut flat = 0usize;
        for axis in (0..self.dim()).rev() {
            if p[axis] < self.lo[axis] || p[axis] > self.hi[axis] {
                return None;
            }
            let i = self.axis_index(axis, p[axis]).clamp(0, self.resolution as i64 - 1) as usize;
            flat = flat * self.resolution + i;
        }
        Some(flat)
    }

    /// Per-axis cell coordinates of a flat index; axis 0 varies fastest.
    pub fn unflatten(&self, mut flat: usize) -> Vec<usize> {
        (0..self.dim())
            .map(|_| {
                let i = flat % self.resolution;
                flat /= self.resolution;
                i
            })
            .collect()
    }

    pub fn cell_bounds(&self, flat: usize) -> (Vec<f64>, Vec<f64>) {
        let idx = self.unflatten(flat);
        let lo: Vec<f64> = idx.iter().enumerate().map(|(a, &i)| self.lo[a] + i as f64 * self.side(a)).collect();
        let hi = idx.iter().enumerate().map(|(a, &i)| self.lo[a] + (i + 1) as f64 * self.side(a)).collect();
        (lo, hi)
    }
}

/// Mass bounds for one region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MassInterval {
    pub lower: BigRational,
    pub upper: BigRational,
}

/// Cell masses of the contact measure at one depth.
#[derive(Clone, Debug)]
pub struct DensityGrid {
    pub spec: GridSpec,
    pub depth: usize,
    lower: Vec<BigUint>,
    upper: Vec<BigUint>,
    total: BigUint,
}

fn ratio(n: &BigUint, d: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(n.clone()), BigInt::from(d.clone()))
}

fn to_f64(r: &BigRational) -> f64 {
    super::super::operators::Surd::from_rational(r.clone()).to_f64()
}

/// Squared distance from `p` to the box `[lo, hi]`.
fn box_distance_sq(p: &[f64], lo: &[f64], hi: &[f64]) -> f64 {
    p.iter()
        .zip(lo.iter().zip(hi))
        .map(|(&v, (&l, &h))| {
            let d = if v < l { l - v } else if v > h { v - h } else { 0.0 };
            d * d
        })
        .sum()
}

fn ball_inside(p: &[f64], r: f64, lo: &[f64], hi: &[f64], slack: f64) -> bool {
    p.iter().zip(lo.iter().zip(hi)).all(|(&v, (&l, &h))| v - r >= l - slack && v + r <= h + slack)
}

/// Whether the ball overlaps the box shrunk by `slack`.
fn ball_meets(p: &[f64], r: f64, lo: &[f64], hi: &[f64], slack: f64) -> bool {
    let lo: Vec<f64> = lo.iter().map(|l| l + slack).collect();
    let hi: Vec<f64> = hi.iter().map(|h| h - slack).collect();
    lo.iter().zip(&hi).all(|(l, h)| l <= h) && box_distance_sq(p, &lo, &hi) < r * r
}

/// The weighted images `(α(τ)(x), fiber count)` over `sphere(k)`.
fn weighted_images(a: &IfsAction, x: &[f64], k: usize) -> Result<(Vec<(Vec<f64>, BigUint)>, BigUint)> {
    a.check_point(x)?;
    let sw = sphere_weights(a.presentation(), k)?;
    let pts = sw.elements.iter().zip(&sw.counts).map(|(t, c)| (a.act(t, x), c.clone())).collect();
    Ok((pts, sw.total))
}

/// Pushes the depth-`k` sphere masses through `α(·)(x)` onto a grid.
///
/// Every element `τ` carries mass `ν_k(τ)`, spread over `α(τ)(K)`, which lies
/// in the ball of radius `δ^k·(R + ‖x − c‖)` about `α(τ)(x)`. A cell's lower
/// bound counts the balls inside it, its upper bound the balls meeting it.
pub fn contact_measure(a: &IfsAction, x: &[f64], k: usize, spec: &GridSpec) -> Result<DensityGrid> {
    if spec.dim() != a.dim() {
        return Err(Error::invalid(format!("grid dimension {} differs from action dimension {}", spec.dim(), a.dim())));
    }
    let cells = spec.cell_count().filter(|&c| c <= spec.max_cells).ok_or(Error::Capacity {
        depth: k,
        size: spec.cell_count().unwrap_or(usize::MAX),
        limit: spec.max_cells,
    })?;
    let (images, total) = weighted_images(a, x, k)?;
    let r = a.delta().powi(k as i32) * a.reach(x);
    let slack = spec.slack();
    let mut lower = vec![BigUint::zero(); cells];
    let mut upper = vec![BigUint::zero(); cells];
    let res = spec.resolution as i64;
    for (p, count) in &images {
        let home = spec.locate(p);
        if let Some(h) = home {
            let (lo, hi) = spec.cell_bounds(h);
            if ball_inside(p, r, &lo, &hi, slack) {
                lower[h] += count;
                upper[h] += count;
                continue;
            }
        }
        let ranges: Vec<(i64, i64)> = (0..spec.dim())
            .map(|ax| (spec.axis_index(ax, p[ax] - r).max(0), spec.axis_index(ax, p[ax] + r).min(res - 1)))
            .collect();
        if ranges.iter().any(|(s, e)| s > e) {
            continue;
        }
        let mut cur: Vec<i64> = ranges.iter().map(|r| r.0).collect();
        'cells: loop {
            let flat = cur.iter().rev().fold(0usize, |acc, &i| acc * spec.resolution + i as usize);
            let (lo, hi) = spec.cell_bounds(flat);
            if Some(flat) == home || ball_meets(p, r, &lo, &hi, slack) {
                upper[flat] += count;
            }
            for ax in 0..cur.len() {
                if cur[ax] < ranges[ax].1 {
                    cur[ax] += 1;
                    continue 'cells;
                }
                cur[ax] = ranges[ax].0;
            }
            break;
        }
    }
    Ok(DensityGrid { spec: spec.clone(), depth: k, lower, upper, total })
}

/// Mass bounds for an arbitrary box, with the same enclosure rule as
/// [`contact_measure`].
pub fn region_mass(a: &IfsAction, x: &[f64], k: usize, lo: &[f64], hi: &[f64]) -> Result<MassInterval> {
    let region = GridSpec::new(lo.to_vec(), hi.to_vec(), 1)?;
    if region.dim() != a.dim() {
        return Err(Error::invalid("region dimension differs from action dimension"));
    }
    let (images, total) = weighted_images(a, x, k)?;
    let r = a.delta().powi(k as i32) * a.reach(x);
    let slack = region.slack();
    let (mut low, mut up) = (BigUint::zero(), BigUint::zero());
    for (p, count) in &images {
        if ball_inside(p, r, lo, hi, slack) {
            low += count;
            up += count;
        } else if region.locate(p).is_some() || ball_meets(p, r, lo, hi, slack) {
            up += count;
        }
    }
    Ok(MassInterval { lower: ratio(&low, &total), upper: ratio(&up, &total) })
}

impl DensityGrid {
    pub fn cells(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self, cell: usize) -> BigRational {
        ratio(&self.lower[cell], &self.total)
    }

    pub fn upper(&self, cell: usize) -> BigRational {
        ratio(&self.upper[cell], &self.total)
    }

    pub fn total_lower(&self) -> BigRational {
        ratio(&self.lower.iter().sum(), &self.total)
    }

    pub fn total_upper(&self) -> BigRational {
        ratio(&self.upper.iter().sum(), &self.total)
    }

    /// `i0,…,lo0,hi0,…,lower,upper`, one row per cell.
    pub fn csv_header(&self) -> String {
        let d = self.spec.dim();
        let mut cols: Vec<String> = (0..d).map(|a| format!("i{a}")).collect();
        for a in 0..d {
            cols.push(format!("lo{a}"));
            cols.push(format!("hi{a}"));
        }
        cols.push("lower".into());
        cols.push("upper".into());
        cols.join(",")
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.csv_header();
        out.push('\n');
        for cell in 0..self.cells() {
            let mut cols: Vec<String> = self.spec.unflatten(cell).iter().map(|i| i.to_string()).collect();
            let (lo, hi) = self.spec.cell_bounds(cell);
            for (l, h) in lo.iter().zip(&hi) {
                cols.push(crate::fmt::sig12(*l));
                cols.push(crate::fmt::sig12(*h));
            }
            cols.push(crate::fmt::rational(&self.lower(cell)));
            cols.push(crate::fmt::rational(&self.upper(cell)));
            out.push_str(&cols.join(","));
            out.push('\n');
        }
        out
    }

    /// Binary greymap of the midpoint masses, scaled so the heaviest cell is
    /// 255. One row for a line; for the plane, axis 1 points up.
    pub fn to_pgm(&self) -> Result<Vec<u8>> {
        let res = self.spec.resolution;
        let (w, h) = match self.spec.dim() {
            1 => (res, 1),
            2 => (res, res),
            d => return Err(Error::invalid(format!("cannot render a {d}-dimensional grid as an image"))),
        };
        let mid: Vec<BigUint> = self.lower.iter().zip(&self.upper).map(|(l, u)| l + u).collect();
        let max = mid.iter().max().cloned().unwrap_or_default();
        let mut out = format!("P5\n{w} {h}\n255\n").into_bytes();
        for row in (0..h).rev() {
            for col in 0..w {
                let m = &mid[row * w + col];
                let v = if max.is_zero() { 0 } else { ((m * 255u32 * 2u32 + &max) / (&max * 2u32)).to_u8().unwrap_or(255) };
                out.push(v);
            }
        }
        Ok(out)
    }
}

/// `max_C ‖γ_t 1_C‖ / ‖1_C‖` over grid cells of positive mass, where
/// `(γ_t g)(y) = g(α(t)(y))` and norms are taken in the depth-`k` contact
/// measure with each mass placed at its representative point.
///
/// The squared ratio for a cell is `μ(α(t)^{-1}C) / μ(C)`, the Jacobian of
/// `α(t)` with respect to the contact measure on `C`.
pub fn gamma_norm_check(a: &IfsAction, x: &[f64], t: &TraceElement, k: usize, spec: &GridSpec) -> Result<f64> {
    a.presentation().check_letters(t.letters())?;
    if spec.dim() != a.dim() {
        return Err(Error::invalid("grid dimension differs from action dimension"));
    }
    let (images, _) = weighted_images(a, x, k)?;
    let mut base: std::collections::BTreeMap<usize, BigUint> = Default::default();
    let mut pulled: std::collections::BTreeMap<usize, BigUint> = Default::default();
    for (p, c) in &images {
        if let Some(cell) = spec.locate(p) {
            *base.entry(cell).or_default() += c;
        }
        if let Some(cell) = spec.locate(&a.act(t, p)) {
            *pulled.entry(cell).or_default() += c;
        }
    }
    let mut worst = 0.0f64;
    for (cell, m) in &base {
        let q = pulled.get(cell).cloned().unwrap_or_default();
        worst = worst.max(to_f64(&ratio(&q, m)).sqrt());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fractal::fixtures::*;
    use num_traits::One;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn cantor_first_third() {
        let a = cantor();
        let x = a.center().to_vec();
        let m = region_mass(&a, &x, 12, &[0.0], &[1.0 / 3.0]).unwrap();
        assert_eq!(m, MassInterval { lower: q(1, 2), upper: q(1, 2) });
        let gap = region_mass(&a, &x, 12, &[1.0 / 3.0], &[2.0 / 3.0]).unwrap();
        assert!(gap.upper.is_zero());
        let all = region_mass(&a, &x, 12, &[0.0], &[1.0]).unwrap();
        assert!(all.lower.is_one() && all.upper.is_one());
    }

    #[test]
    fn grid_sandwich() {
        let a = sierpinski();
        let x = a.center().to_vec();
        let spec = GridSpec::around(&a, &x, 16).unwrap();
        let g = contact_measure(&a, &x, 6, &spec).unwrap();
        assert!(g.total_lower() <= BigRational::one());
        assert!(g.total_upper() >= BigRational::one());
        for c in 0..g.cells() {
            assert!(g.lower(c) <= g.upper(c));
        }
        let finer = contact_measure(&a, &x, 8, &spec).unwrap();
        for c in 0..g.cells() {
            assert!(finer.lower(c) >= g.lower(c));
            assert!(finer.upper(c) <= g.upper(c));
        }
        let tight = GridSpec::around(&a, &x, 16).unwrap().with_max_cells(100);
        assert!(contact_measure(&a, &x, 2, &tight).unwrap_err().is_capacity());
    }

    #[test]
    fn non_free_weights() {
        let a = n2_line();
        let spec = GridSpec::around(&a, &[1.0], 8).unwrap();
        let g = contact_measure(&a, &[1.0], 4, &spec).unwrap();
        assert!(g.total_lower() <= BigRational::one() && g.total_upper() >= BigRational::one());
    }

    #[test]
    fn pgm_and_csv() {
        let a = cantor();
        let x = a.center().to_vec();
        let spec = GridSpec::around(&a, &x, 9).unwrap();
        let g = contact_measure(&a, &x, 6, &spec).unwrap();
        let pgm = g.to_pgm().unwrap();
        assert!(pgm.starts_with(b"P5\n9 1\n255\n"));
        assert_eq!(pgm.len(), b"P5\n9 1\n255\n".len() + 9);
        let body = &pgm[pgm.len() - 9..];
        assert_eq!(body, &[255, 0, 255, 0, 0, 0, 255, 0, 255]);
        let csv = g.to_csv();
        assert!(csv.starts_with("i0,lo0,hi0,lower,upper\n0,0,0.111111111111,1/4,1/4\n"));
        assert_eq!(csv.lines().count(), 10);
    }

    #[test]
    fn gamma_ratios() {
        let a = cantor();
        let x = a.center().to_vec();
        let spec = GridSpec::around(&a, &x, 27).unwrap();
        assert_eq!(gamma_norm_check(&a, &x, &TraceElement::identity(), 12, &spec).unwrap(), 1.0);
        let g0 = a.presentation().generator(0);
        assert!((gamma_norm_check(&a, &x, &g0, 12, &spec).unwrap() - 2f64.sqrt()).abs() < 1e-12);

        // the right-angled gasket is aligned with dyadic cells, so every
        // occupied cell sees the full Jacobian 3 of a generator
        let s = right_sierpinski();
        let x = s.center().to_vec();
        let spec = GridSpec::new(vec![0.0, 0.0], vec![1.0, 1.0], 8).unwrap();
        for g in 0..3u8 {
            let r = gamma_norm_check(&s, &x, &s.presentation().generator(g), 8, &spec).unwrap();
            assert!((r - 3f64.sqrt()).abs() < 1e-12, "{r}");
        }
    }
}
