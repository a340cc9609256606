use num_rational::BigRational;

use super::chain::ChainOperator;
use super::model::TruncatedModel;
use super::surd::Surd;
use crate::fmt::sig12;
use crate::monoid::Presentation;
use crate::{Error, Result};

/// How far one operator identity is from holding on the truncated spaces.
#[derive(Clone, Debug, PartialEq)]
pub struct DefectReport {
    pub label: String,
    /// Operator norm of the defect between the weighted spaces.
    pub norm_defect: f64,
    /// Squared weighted Hilbert–Schmidt norm of the defect.
    pub hs_defect: Surd,
    /// Source mass on which the defect operator is nonzero.
    pub exceptional_mass: BigRational,
}

impl DefectReport {
    pub const CSV_HEADER: &'static str = "label,norm_defect,hs_defect_num,hs_defect_den,exceptional_mass";

    fn measure(model: &TruncatedModel, label: String, defect: &ChainOperator) -> Self {
        DefectReport {
            label,
            norm_defect: model.operator_norm(defect),
            hs_defect: model.hs_norm_sq(defect),
            exceptional_mass: model.support_mass(defect),
        }
    }

    /// Whether the identity holds exactly.
    pub fn is_exact(&self) -> bool {
        self.hs_defect.is_zero()
    }

    /// Irrational Hilbert–Schmidt values are written as a float in the
    /// numerator column with an empty denominator.
    pub fn csv_row(&self) -> String {
        let (num, den) = match self.hs_defect.as_rational() {
            Some(r) => (r.numer().to_string(), r.denom().to_string()),
            None => (sig12(self.hs_defect.to_f64()), String::new()),
        };
        format!("{},{},{},{},{}", self.label, sig12(self.norm_defect), num, den, crate::fmt::rational(&self.exceptional_mass))
    }
}

/// Defects of the boundary-quotient relations at depth `k`.
///
/// Rows, in order:
/// * `i:S*S=1:x` for every generator;
/// * `eqdelta:x:y` for every ordered pair, measuring `S_x^*S_y − δ_xy`;
/// * `eqsum`, measuring `Σ_x S_xS_x^* − 1` (free monoids only);
/// * `ii:commute:x:y` and `ii:adjoint:x:y` for commuting pairs (`k ≥ 2`);
/// * `iii:x:y` for distinct non-commuting pairs;
/// * `iv:<component>` for every coconnected component, the defect being the
///   projection `Π_{x}(1 − S_xS_x^*)` itself;
/// * `T:eqdelta:x`, measuring `T_x^†T_x − 1` for the literal operators;
/// * `T:adjoint-gap:x`, the difference between the weighted adjoint of
///   `T_x` and the literal extension by zero.
pub fn relation_defects(p: &Presentation, k: usize) -> Result<Vec<DefectReport>> {
    if k == 0 {
        return Err(Error::invalid("relation defects need depth at least 1"));
    }
    let model = TruncatedModel::new(p, k)?;
    let gens: Vec<u8> = p.generators().collect();
    let s: Vec<ChainOperator> = gens.iter().map(|&x| model.iso_s(x, k)).collect::<Result<_>>()?;
    let s_adj: Vec<ChainOperator> = s.iter().map(|op| model.adjoint(op)).collect();
    let name = |x: u8| p.name(x).to_string();
    let mut out = Vec::new();

    let id_low = ChainOperator::identity(k - 1, model.space(k - 1).dim());
    let id_top = ChainOperator::identity(k, model.space(k).dim());
    for (xi, &x) in gens.iter().enumerate() {
        let d = s_adj[xi].compose(&s[xi])?.sub(&id_low)?;
        out.push(DefectReport::measure(&model, format!("i:S*S=1:{}", name(x)), &d));
    }
    for (xi, &x) in gens.iter().enumerate() {
        for (yi, &y) in gens.iter().enumerate() {
            let mut d = s_adj[xi].compose(&s[yi])?;
            if xi == yi {
                d = d.sub(&id_low)?;
            }
            out.push(DefectReport::measure(&model, format!("eqdelta:{}:{}", name(x), name(y)), &d));
        }
    }
    if p.is_free() {
        let mut sum = ChainOperator::zero(k, id_top.source_dim(), k, id_top.target_dim());
        for xi in 0..gens.len() {
            sum = sum.add(&s[xi].compose(&s_adj[xi])?)?;
        }
        out.push(DefectReport::measure(&model, "eqsum".into(), &sum.sub(&id_top)?));
    }
    if k >= 2 {
        let s_prev: Vec<ChainOperator> = gens.iter().map(|&x| model.iso_s(x, k - 1)).collect::<Result<_>>()?;
        let s_prev_adj: Vec<ChainOperator> = s_prev.iter().map(|op| model.adjoint(op)).collect();
        for (a, b) in p.edges() {
            let d = s[a].compose(&s_prev[b])?.sub(&s[b].compose(&s_prev[a])?)?;
            out.push(DefectReport::measure(&model, format!("ii:commute:{}:{}", name(a as u8), name(b as u8)), &d));
            let d = s_adj[a].compose(&s[b])?.sub(&s_prev[b].compose(&s_prev_adj[a])?)?;
            out.push(DefectReport::measure(&model, format!("ii:adjoint:{}:{}", name(a as u8), name(b as u8)), &d));
        }
    }
    for (xi, &x) in gens.iter().enumerate() {
        for (yi, &y) in gens.iter().enumerate() {
            if xi < yi && !p.commutes(x, y) {
                let d = s_adj[xi].compose(&s[yi])?;
                out.push(DefectReport::measure(&model, format!("iii:{}:{}", name(x), name(y)), &d));
            }
        }
    }
    for comp in p.graph().coconnected_partition() {
        let subset: Vec<u8> = comp.iter().map(|&v| v as u8).collect();
        let proj = model.range_projection(&subset, k)?;
        let label = subset.iter().map(|&x| name(x)).collect::<Vec<_>>().join("+");
        out.push(DefectReport::measure(&model, format!("iv:{label}"), &proj));
    }
    for &x in &gens {
        let gx = p.generator(x);
        let t = model.op_t(&gx, k)?;
        let lit = model.op_t_literal_adjoint(&gx, k)?;
        let d = lit.compose(&t)?.sub(&id_top)?;
        out.push(DefectReport::measure(&model, format!("T:eqdelta:{}", name(x)), &d));
        let gap = model.adjoint(&t).sub(&lit)?;
        out.push(DefectReport::measure(&model, format!("T:adjoint-gap:{}", name(x)), &gap));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::Zero;

    fn row<'a>(rows: &'a [DefectReport], label: &str) -> &'a DefectReport {
        rows.iter().find(|r| r.label == label).unwrap_or_else(|| panic!("missing {label}"))
    }

    #[test]
    fn free_monoid_rows_are_exact() {
        let p = Presentation::from_names(&["x", "y"], &[]).unwrap();
        let rows = relation_defects(&p, 4).unwrap();
        for r in rows.iter().filter(|r| !r.label.starts_with("T:") && !r.label.starts_with("iv:")) {
            assert!(r.is_exact() && r.norm_defect == 0.0, "{r:?}");
            assert!(r.exceptional_mass.is_zero());
        }
        assert!(rows.iter().any(|r| r.label == "eqsum"));
        assert!(rows.iter().any(|r| r.label == "iii:x:y"));
        // x and y are one coconnected component; its projection vanishes
        assert!(row(&rows, "iv:x+y").is_exact());
        let t = row(&rows, "T:eqdelta:x");
        assert!((t.norm_defect - 1.0).abs() < 1e-9);
        assert_eq!(t.exceptional_mass, BigRational::new(BigInt::from(1), BigInt::from(2)));
        assert!(!row(&rows, "T:adjoint-gap:x").is_exact());
    }

    #[test]
    fn raam_rows() {
        let p = Presentation::from_names(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]).unwrap();
        let rows = relation_defects(&p, 4).unwrap();
        assert!(rows.iter().all(|r| r.label != "eqsum"));
        for r in rows.iter().filter(|r| r.label.starts_with("i:") || r.label.starts_with("ii:") || r.label.starts_with("iii:")) {
            assert!(r.is_exact(), "{r:?}");
        }
        assert_eq!(row(&rows, "iv:a+c").exceptional_mass, BigRational::new(BigInt::from(1), BigInt::from(16)));
        assert!(row(&rows, "ii:adjoint:a:b").is_exact());
        // commuting generators do not have orthogonal ranges
        assert!(!row(&rows, "eqdelta:a:b").is_exact());
        assert!(row(&rows, "eqdelta:a:c").is_exact());
    }

    #[test]
    fn csv_rows() {
        let p = Presentation::from_names(&["x", "y"], &[]).unwrap();
        let rows = relation_defects(&p, 2).unwrap();
        assert_eq!(row(&rows, "i:S*S=1:x").csv_row(), "i:S*S=1:x,0,0,1,0");
        for r in &rows {
            assert_eq!(r.csv_row().split(',').count(), 5);
        }
        assert!(relation_defects(&p, 0).is_err());
    }
}
