use nalgebra::{DMatrix, DVector};

use crate::monoid::{Presentation, TraceElement};
use crate::{Error, Result};

/// Tolerance for the matrix identities expressing relation compatibility.
pub const RELATION_TOLERANCE: f64 = 1e-9;

/// `t ↦ A·t + b` on `R^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineMap {
    matrix: DMatrix<f64>,
    translation: DVector<f64>,
    lipschitz: f64,
}

impl AffineMap {
    pub fn new(matrix: DMatrix<f64>, translation: DVector<f64>) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() != translation.len() || matrix.nrows() == 0 {
            return Err(Error::invalid(format!(
                "affine map needs a square matrix matching the translation, got {}x{} and {}",
                matrix.nrows(),
                matrix.ncols(),
                translation.len()
            )));
        }
        if matrix.iter().chain(translation.iter()).any(|v| !v.is_finite()) {
            return Err(Error::invalid("affine map has a non-finite coefficient"));
        }
        let lipschitz = matrix.clone().svd(false, false).singular_values.max();
        Ok(AffineMap { matrix, translation, lipschitz })
    }

    /// Row-major coefficients followed by the translation.
    pub fn from_row_slice(dim: usize, coeffs: &[f64]) -> Result<Self> {
        if coeffs.len() != dim * dim + dim {
            return Err(Error::invalid(format!("expected {} coefficients, got {}", dim * dim + dim, coeffs.len())));
        }
        AffineMap::new(DMatrix::from_row_slice(dim, dim, &coeffs[..dim * dim]), DVector::from_row_slice(&coeffs[dim * dim..]))
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn translation(&self) -> &DVector<f64> {
        &self.translation
    }

    /// The operator norm of the linear part.
    pub fn lipschitz(&self) -> f64 {
        self.lipschitz
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim()];
        self.apply_into(x, &mut out);
        out
    }

    pub(crate) fn apply_into(&self, x: &[f64], out: &mut [f64]) {
        let d = self.dim();
        for i in 0..d {
            let mut acc = self.translation[i];
            for j in 0..d {
                acc += self.matrix[(i, j)] * x[j];
            }
            out[i] = acc;
        }
    }

    /// The unique fixed point, for a map with `lipschitz < 1`.
    pub fn fixed_point(&self) -> Option<DVector<f64>> {
        let d = self.dim();
        (DMatrix::identity(d, d) - &self.matrix).lu().solve(&self.translation)
    }
}

/// A contracting action of a presentation by affine maps: one map per
/// generator, with commuting generators acting by commuting maps.
#[derive(Clone, Debug)]
pub struct IfsAction {
    presentation: Presentation,
    maps: Vec<AffineMap>,
    delta: f64,
    center: Vec<f64>,
    radius: f64,
    residual: f64,
}

/// Checks contraction and relation compatibility and computes the invariant
/// ball.
///
/// The ball is centred at the mean `c` of the generator fixed points, with
/// radius `max_s ‖α(s)(c) − c‖ / (1 − δ)`.
pub fn validate_action(p: &Presentation, maps: Vec<AffineMap>) -> Result<IfsAction> {
    if maps.len() != p.rank() {
        return Err(Error::invalid(format!("{} maps given for {} generators", maps.len(), p.rank())));
    }
    let dim = maps[0].dim();
    if let Some(m) = maps.iter().find(|m| m.dim() != dim) {
        return Err(Error::invalid(format!("maps of dimensions {dim} and {} mixed", m.dim())));
    }
    for (g, m) in maps.iter().enumerate() {
        if !(m.lipschitz() < 1.0) {
            return Err(Error::NonContracting { generator: p.name(g as u8).to_string(), lipschitz: m.lipschitz() });
        }
    }
    let mut residual = 0.0f64;
    for (x, y) in p.edges() {
        let (a, b) = (&maps[x], &maps[y]);
        let lin = &a.matrix * &b.matrix - &b.matrix * &a.matrix;
        let trans = (&a.matrix * &b.translation + &a.translation) - (&b.matrix * &a.translation + &b.translation);
        let r = lin.amax().max(trans.amax());
        if !(r <= RELATION_TOLERANCE) {
            return Err(Error::IncompatibleRelation {
                x: p.name(x as u8).to_string(),
                y: p.name(y as u8).to_string(),
                residual: r,
            });
        }
        residual = residual.max(r);
    }
    let delta = maps.iter().map(AffineMap::lipschitz).fold(0.0, f64::max);
    let mut center = DVector::zeros(dim);
    for m in &maps {
        center += m.fixed_point().expect("contractions have a fixed point");
    }
    center /= maps.len() as f64;
    let center: Vec<f64> = center.iter().copied().collect();
    let radius = maps.iter().map(|m| distance(&m.apply(&center), &center)).fold(0.0, f64::max) / (1.0 - delta);
    Ok(IfsAction { presentation: p.clone(), maps, delta, center, radius, residual })
}

impl IfsAction {
    /// Parses the map file for `p`:
    ///
    /// ```text
    /// dim: 2
    /// map x: 0.5 0 0 0.5  0 0
    /// ```
    ///
    /// Each map lists the matrix row by row, then the translation.
    /// Coefficients may be decimals or fractions such as `1/3`.
    pub fn parse(p: &Presentation, text: &str) -> Result<Self> {
        let mut dim: Option<usize> = None;
        let mut maps: Vec<Option<AffineMap>> = vec![None; p.rank()];
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line.split_once(':').ok_or_else(|| Error::parse(line_no, "expected `key: value`"))?;
            let key = key.trim();
            if key == "dim" {
                if dim.is_some() {
                    return Err(Error::parse(line_no, "duplicate dim line"));
                }
                let d: usize = rest.trim().parse().map_err(|_| Error::parse(line_no, "dim must be a positive integer"))?;
                if d == 0 {
                    return Err(Error::parse(line_no, "dim must be a positive integer"));
                }
                dim = Some(d);
            } else if let Some(name) = key.strip_prefix("map ") {
                let d = dim.ok_or_else(|| Error::parse(line_no, "map before dim line"))?;
                let g = p.index_of(name.trim()).ok_or_else(|| Error::parse(line_no, format!("unknown generator {:?}", name.trim())))?;
                let coeffs = rest
                    .split_whitespace()
                    .map(parse_number)
                    .collect::<Option<Vec<f64>>>()
                    .ok_or_else(|| Error::parse(line_no, "coefficients must be numbers"))?;
                if coeffs.len() != d * d + d {
                    return Err(Error::parse(line_no, format!("expected {} coefficients, got {}", d * d + d, coeffs.len())));
                }
                if maps[g as usize].is_some() {
                    return Err(Error::parse(line_no, format!("duplicate map for {}", name.trim())));
                }
                maps[g as usize] = Some(AffineMap::from_row_slice(d, &coeffs).map_err(|e| Error::parse(line_no, e.to_string()))?);
            } else {
                return Err(Error::parse(line_no, format!("unknown key {key:?}")));
            }
        }
        let mut out = Vec::with_capacity(maps.len());
        for (g, m) in maps.into_iter().enumerate() {
            out.push(m.ok_or_else(|| Error::parse(text.lines().count().max(1), format!("no map for generator {}", p.name(g as u8))))?);
        }
        validate_action(p, out)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn map(&self, g: u8) -> &AffineMap {
        &self.maps[g as usize]
    }

    /// Largest generator Lipschitz constant.
    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    /// Radius `R` of the invariant ball.
    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Largest relation residual seen during validation.
    pub fn relation_residual(&self) -> f64 {
        self.residual
    }

    /// `α(τ)(x)`: the last letter acts first.
    pub fn act(&self, t: &TraceElement, x: &[f64]) -> Vec<f64> {
        self.act_letters(t.letters(), x)
    }

    pub fn act_letters(&self, letters: &[u8], x: &[f64]) -> Vec<f64> {
        let mut cur = x.to_vec();
        let mut next = vec![0.0; x.len()];
        for &g in letters.iter().rev() {
            self.maps[g as usize].apply_into(&cur, &mut next);
            std::mem::swap(&mut cur, &mut next);
        }
        cur
    }

    /// `R + ‖x − c‖`: every point of the attractor lies this close to `x`.
    pub fn reach(&self, x: &[f64]) -> f64 {
        self.radius + distance(x, &self.center)
    }

    pub(crate) fn check_point(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::invalid(format!("point has {} coordinates, action has dimension {}", x.len(), self.dim())));
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("point has a non-finite coordinate"));
        }
        Ok(())
    }
}

pub(crate) fn parse_number(s: &str) -> Option<f64> {
    match s.split_once('/') {
        Some((n, d)) => {
            let (n, d): (f64, f64) = (n.parse().ok()?, d.parse().ok()?);
            (d != 0.0).then(|| n / d)
        }
        None => s.parse().ok().filter(|v: &f64| v.is_finite()),
    }
}

pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fractal::fixtures::*;

    #[test]
    fn cantor_is_valid() {
        let a = cantor();
        assert!((a.delta() - 1.0 / 3.0).abs() < 1e-15);
        assert!((a.center()[0] - 0.5).abs() < 1e-15);
        assert!((a.radius() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn sierpinski_is_valid() {
        let a = sierpinski();
        assert!((a.delta() - 0.5).abs() < 1e-15);
        assert!((a.radius() - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        for g in 0..3u8 {
            let m = a.map(g);
            assert!(distance(&m.apply(a.center()), a.center()) <= a.radius() * (1.0 - a.delta()) + 1e-12);
        }
    }

    #[test]
    fn commuting_line_maps() {
        let a = n2_line();
        assert!((a.delta() - 0.5).abs() < 1e-15);
        assert_eq!(a.radius(), 0.0);
        assert_eq!(a.center(), &[0.0]);
        let x = [0.7];
        let xy = a.act_letters(&[0, 1], &x);
        let yx = a.act_letters(&[1, 0], &x);
        assert!((xy[0] - yx[0]).abs() < 1e-15);
    }

    #[test]
    fn rejections() {
        let p = Presentation::from_names(&["x", "y"], &[("x", "y")]).unwrap();
        let err = IfsAction::parse(&p, "dim: 1\nmap x: 1/2 0\nmap y: 1/2 1/2\n").unwrap_err();
        assert!(matches!(err, Error::IncompatibleRelation { .. }), "{err}");
        let err = IfsAction::parse(&p, "dim: 1\nmap x: 1 0\nmap y: 1/2 0\n").unwrap_err();
        assert!(matches!(err, Error::NonContracting { ref generator, .. } if generator == "x"));
        let free = Presentation::from_names(&["x", "y"], &[]).unwrap();
        assert!(matches!(IfsAction::parse(&free, "dim: 1\nmap x: 1/2 0\n"), Err(Error::Parse { .. })));
        assert!(matches!(IfsAction::parse(&free, "map x: 1/2 0\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(IfsAction::parse(&free, "dim: 1\nmap x: 1/2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(IfsAction::parse(&free, "dim: 1\nmap z: 1/2 0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(IfsAction::parse(&free, "dim: 1\nmap x: a 0\n"), Err(Error::Parse { .. })));
        // a rotation by a right angle has norm 1 though its entries are small
        let rot = AffineMap::from_row_slice(2, &[0.0, -1.0, 1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!((rot.lipschitz() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn numbers() {
        assert_eq!(parse_number("1/4"), Some(0.25));
        assert_eq!(parse_number("-0.5"), Some(-0.5));
        assert_eq!(parse_number("1/0"), None);
        assert_eq!(parse_number("inf"), None);
    }
}
