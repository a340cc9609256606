use super::action::{distance, IfsAction};
use crate::boundary::BoundaryWord;
use crate::Result;

/// The images `α(τ)(x)` of a seed over one sphere.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    pub depth: usize,
    pub dim: usize,
    /// In the order of `sphere(depth)`.
    pub points: Vec<Vec<f64>>,
}

impl PointCloud {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub const CSV_HEADER_PREFIX: &'static str = "element";

    /// `element,x0,x1,…` followed by one row per point.
    pub fn to_csv(&self, a: &IfsAction) -> Result<String> {
        let p = a.presentation();
        let mut out = String::from(Self::CSV_HEADER_PREFIX);
        for i in 0..self.dim {
            out.push_str(&format!(",x{i}"));
        }
        out.push('\n');
        for (t, pt) in p.sphere(self.depth)?.iter().zip(&self.points) {
            out.push_str(&p.format(t));
            for v in pt {
                out.push(',');
                out.push_str(&crate::fmt::sig12(*v));
            }
            out.push('\n');
        }
        Ok(out)
    }
}

/// `{α(τ)(x) : τ ∈ sphere(k)}`: within Hausdorff distance `δ^k·(R + ‖x − c‖)`
/// of the attractor.
pub fn attractor_points(a: &IfsAction, k: usize, x: &[f64]) -> Result<PointCloud> {
    a.check_point(x)?;
    let sphere = a.presentation().sphere(k)?;
    let points = sphere.iter().map(|t| a.act(t, x)).collect();
    Ok(PointCloud { depth: k, dim: a.dim(), points })
}

/// A point of the attractor approximated along a boundary word.
#[derive(Clone, Debug, PartialEq)]
pub struct KappaValue {
    pub point: Vec<f64>,
    /// Certified bound on the distance to the limit point.
    pub bound: f64,
}

/// Allowance for round-off in the certified bound, relative to the scale
/// `1 + ‖c‖ + R + ‖x − c‖` of the coordinates involved.
pub const ROUNDING_GUARD: f64 = 1e-12;

/// `α(f(k))(x)` for the length-`k` prefix of `f`, with the bound
/// `δ^k·(R + ‖x − c‖)` on its distance to `κ_x(f)`, plus [`ROUNDING_GUARD`]
/// times the coordinate scale.
pub fn kappa(a: &IfsAction, f: &BoundaryWord, x: &[f64], k: usize) -> Result<KappaValue> {
    a.check_point(x)?;
    f.check(a.presentation())?;
    let point = a.act_letters(&f.prefix(k), x);
    let scale = 1.0 + a.center().iter().map(|v| v * v).sum::<f64>().sqrt() + a.reach(x);
    Ok(KappaValue { point, bound: a.delta().powi(k as i32) * a.reach(x) + ROUNDING_GUARD * scale })
}

/// Distance between the depth-`k` approximations from two seeds; at most
/// `δ^k·‖x − y‖`.
pub fn kappa_basepoint_independence(a: &IfsAction, f: &BoundaryWord, x: &[f64], y: &[f64], k: usize) -> Result<f64> {
    let kx = kappa(a, f, x, k)?;
    let ky = kappa(a, f, y, k)?;
    Ok(distance(&kx.point, &ky.point))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fractal::fixtures::*;

    fn sorted(mut v: Vec<f64>) -> Vec<f64> {
        v.sort_by(f64::total_cmp);
        v
    }

    #[test]
    fn cantor_points() {
        let a = cantor();
        let one: Vec<f64> = attractor_points(&a, 1, &[0.0]).unwrap().points.into_iter().map(|p| p[0]).collect();
        assert_eq!(one, vec![0.0, 2.0 / 3.0]);
        let two = sorted(attractor_points(&a, 2, &[0.0]).unwrap().points.into_iter().map(|p| p[0]).collect());
        for (got, want) in two.iter().zip([0.0, 2.0 / 9.0, 2.0 / 3.0, 8.0 / 9.0]) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn commuting_monomials() {
        let a = n2_line();
        for k in 0..6 {
            let got = sorted(attractor_points(&a, k, &[1.0]).unwrap().points.into_iter().map(|p| p[0]).collect());
            let want = sorted((0..=k).map(|i| 0.5f64.powi(i as i32) * (1.0 / 3.0f64).powi((k - i) as i32)).collect());
            assert_eq!(got.len(), k + 1);
            for (g, w) in got.iter().zip(&want) {
                assert!((g - w).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn self_similarity() {
        let a = sierpinski();
        let x = a.center().to_vec();
        let next = attractor_points(&a, 5, &x).unwrap().points;
        let cur = attractor_points(&a, 4, &x).unwrap().points;
        let a = &a;
        let mut images: Vec<Vec<f64>> = (0..3u8).flat_map(|g| cur.iter().map(move |pt| a.map(g).apply(pt))).collect();
        let key = |v: &Vec<f64>| ((v[0] * 1e9).round() as i64, (v[1] * 1e9).round() as i64);
        images.sort_by_key(key);
        let mut next = next;
        next.sort_by_key(key);
        assert_eq!(images.len(), next.len());
        for (p, q) in images.iter().zip(&next) {
            assert!(distance(p, q) < 1e-12);
        }
    }

    #[test]
    fn kappa_examples() {
        let a = cantor();
        let p = a.presentation().clone();
        let left = BoundaryWord::parse(&p, "(x)^inf").unwrap();
        for k in [1, 5, 9] {
            let v = kappa(&a, &left, &[0.0], k).unwrap();
            assert_eq!(v.point, vec![0.0]);
            assert!((v.bound - (1.0f64 / 3.0).powi(k as i32)).abs() < 1e-11);
        }
        let right = BoundaryWord::parse(&p, "(y)^inf").unwrap();
        let v = kappa(&a, &right, &[0.0], 8).unwrap();
        assert!((v.point[0] - 1.0).abs() <= v.bound);
        assert_eq!(kappa_basepoint_independence(&a, &right, &[0.3], &[0.3], 4).unwrap(), 0.0);
        let d = kappa_basepoint_independence(&a, &right, &[0.0], &[1.0], 10).unwrap();
        assert!(d <= (1.0f64 / 3.0).powi(10) * (1.0 + 1e-9));
    }

    #[test]
    fn kappa_bound_is_certified() {
        let a = sierpinski();
        let p = a.presentation().clone();
        let f = BoundaryWord::parse(&p, "(xy)^inf").unwrap();
        let x = a.center().to_vec();
        let v10 = kappa(&a, &f, &x, 10).unwrap();
        assert!((v10.bound - 0.5f64.powi(10) * a.radius()).abs() < 1e-11);
        assert!(v10.bound >= 0.5f64.powi(10) * a.radius());
        for extra in 1..=8 {
            let far = kappa(&a, &f, &x, 10 + extra).unwrap();
            assert!(distance(&far.point, &v10.point) <= v10.bound);
        }
        let d = kappa_basepoint_independence(&a, &f, &[0.0, 0.0], &[1.0, 0.0], 12).unwrap();
        assert!(d <= 0.5f64.powi(12) + 1e-15);
    }

    #[test]
    fn seeds_outside_the_ball() {
        let a = n2_line();
        let f = BoundaryWord::parse(a.presentation(), "(xy)^inf").unwrap();
        let v = kappa(&a, &f, &[1.0], 6).unwrap();
        assert!(v.point[0].abs() <= v.bound);
        assert!(attractor_points(&a, 2, &[1.0, 2.0]).is_err());
    }
}
