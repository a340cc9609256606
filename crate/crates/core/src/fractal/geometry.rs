use std::collections::HashSet;

use kiddo::{ImmutableKdTree, SquaredEuclidean};

use super::action::distance;
use crate::{Error, Result};

/// Hausdorff distance between two finite point sets of equal dimension.
pub fn hausdorff_distance(a: &[Vec<f64>], b: &[Vec<f64>]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::invalid("Hausdorff distance needs two non-empty sets"));
    }
    let d = a[0].len();
    if a.iter().chain(b).any(|p| p.len() != d) {
        return Err(Error::invalid("points of different dimensions"));
    }
    Ok(match d {
        1 => directed_tree::<1>(a, b).max(directed_tree::<1>(b, a)),
        2 => directed_tree::<2>(a, b).max(directed_tree::<2>(b, a)),
        3 => directed_tree::<3>(a, b).max(directed_tree::<3>(b, a)),
        _ => directed_brute(a, b).max(directed_brute(b, a)),
    })
}

fn to_array<const K: usize>(p: &[f64]) -> [f64; K] {
    p.try_into().expect("dimension checked")
}

/// `max_{p ∈ from} min_{q ∈ to} ‖p − q‖`.
fn directed_tree<const K: usize>(from: &[Vec<f64>], to: &[Vec<f64>]) -> f64 {
    let entries: Vec<[f64; K]> = to.iter().map(|p| to_array(p)).collect();
    let tree: ImmutableKdTree<f64, K> = ImmutableKdTree::new_from_slice(&entries).expect("non-empty point set");
    from.iter()
        .map(|p| tree.query(&to_array::<K>(p)).nearest_one::<SquaredEuclidean<f64>>().execute().distance)
        .fold(0.0, f64::max)
        .sqrt()
}

fn directed_brute(from: &[Vec<f64>], to: &[Vec<f64>]) -> f64 {
    from.iter()
        .map(|p| to.iter().map(|q| distance(p, q)).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}

/// Occupied-box counts and the fitted dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct BoxCount {
    /// `(j, N)`: `N` boxes of side `L/2^j` meet the set, `L` the bounding
    /// cube side.
    pub counts: Vec<(u32, usize)>,
    /// Least-squares slope of `log N` against `j·log 2`.
    pub dimension: f64,
}

/// Box-counting dimension over the resolutions `2^j`, `j ∈ exponents`, on the
/// smallest axis-aligned cube containing the points.
pub fn box_counting_dimension(points: &[Vec<f64>], exponents: std::ops::RangeInclusive<u32>) -> Result<BoxCount> {
    if points.is_empty() {
        return Err(Error::invalid("box counting needs points"));
    }
    if exponents.clone().count() < 2 {
        return Err(Error::invalid("box counting needs at least two resolutions"));
    }
    let d = points[0].len();
    let lo: Vec<f64> = (0..d).map(|a| points.iter().map(|p| p[a]).fold(f64::INFINITY, f64::min)).collect();
    let hi: Vec<f64> = (0..d).map(|a| points.iter().map(|p| p[a]).fold(f64::NEG_INFINITY, f64::max)).collect();
    let side = lo.iter().zip(&hi).map(|(l, h)| h - l).fold(0.0, f64::max);
    if side <= 0.0 {
        return Err(Error::invalid("points are all equal"));
    }
    let counts: Vec<(u32, usize)> = exponents
        .map(|j| {
            let n = (1u64 << j) as f64;
            let cells: HashSet<Vec<i64>> = points
                .iter()
                .map(|p| p.iter().zip(&lo).map(|(v, l)| (((v - l) / side * n).floor() as i64).min(n as i64 - 1)).collect())
                .collect();
            (j, cells.len())
        })
        .collect();
    let xs: Vec<f64> = counts.iter().map(|(j, _)| *j as f64 * std::f64::consts::LN_2).collect();
    let ys: Vec<f64> = counts.iter().map(|(_, c)| (*c as f64).ln()).collect();
    let m = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / m, ys.iter().sum::<f64>() / m);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(BoxCount { counts, dimension: sxy / sxx })
}
