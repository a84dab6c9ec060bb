//! Weighted cluster of base points of an ideal: the values forced by the
//! generators on the singular points of their product, completed with the
//! missing free and satellite points and stripped of the points of
//! multiplicity zero.

mod table;

pub use table::{
    complete_free_points, complete_satellite_points, min_value_weights, prune_null_points, Continuation, ValueTable,
};

use crate::algebra::{div_exact, gcd_many, normalize, AlgebraError, BiPoly, Rational};
use crate::cluster::{
    dual_graph, excesses, proximity_matrix, singular_cluster, Cluster, ClusterError, DualGraph, WeightMode,
    WeightedCluster,
};
use crate::puiseux::{expand_product, PuiseuxError};

#[derive(Clone, Debug, thiserror::Error)]
pub enum BasePointsError {
    #[error("the ideal has no generators")]
    EmptyIdeal,
    #[error("zero polynomial among the generators")]
    ZeroGenerator,
    #[error("value table has h_p > v_p at point {0}")]
    InconsistentTable(usize),
    #[error("removing points left a point without its predecessor")]
    BrokenClosure,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error(transparent)]
    Puiseux(#[from] PuiseuxError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Intermediate clusters, kept for auditing. Point ids of the first three
/// tables agree on common points: each extends the previous one.
#[derive(Clone, Debug, Default)]
pub struct Audit {
    /// Greatest common divisor of the generators.
    pub fixed_part: String,
    /// Singular points of the reduced product, with the first simple point
    /// of every branch.
    pub singular: Option<ValueTable>,
    /// After adding the missing free base points.
    pub free_completed: Option<ValueTable>,
    /// After adding the missing satellite base points.
    pub satellite_completed: Option<ValueTable>,
    /// Multiplicities of the minimum values on `satellite_completed`.
    pub multiplicities: Vec<i64>,
    /// Ids in `satellite_completed` of the base points of the quotient ideal.
    pub kept: Vec<usize>,
    /// Ids in `singular` of the singular points of the reduced fixed part.
    pub fixed_singular: Vec<usize>,
}

/// Weighted cluster of base points.
#[derive(Clone, Debug)]
pub struct BasePointsResult {
    pub cluster: Cluster,
    pub values: Vec<i64>,
    pub multiplicities: Vec<i64>,
    pub dual_graph: DualGraph,
    /// Id in `audit.satellite_completed` of every point.
    pub origins: Vec<usize>,
    pub audit: Audit,
}

impl BasePointsResult {
    fn empty(audit: Audit) -> Self {
        BasePointsResult {
            cluster: Cluster::default(),
            values: Vec::new(),
            multiplicities: Vec::new(),
            dual_graph: DualGraph { labels: Vec::new(), edges: Vec::new() },
            origins: Vec::new(),
            audit,
        }
    }

    pub fn weighted(&self) -> WeightedCluster {
        WeightedCluster { cluster: self.cluster.clone(), weights: self.values.clone(), mode: WeightMode::Values }
    }
}

/// Base points of the ideal generated by `generators` at the origin.
///
/// The ideal is split as `(g) a'` with `g` the gcd of the generators. The
/// base points of `a'` come from the value table on the singular points of
/// the reduced product; those of `(g)` are the singular points of the
/// reduced curve `g = 0`. Values then add up on the union.
pub fn base_points(generators: &[BiPoly<Rational>]) -> Result<BasePointsResult, BasePointsError> {
    if generators.is_empty() {
        return Err(BasePointsError::EmptyIdeal);
    }
    if generators.iter().any(|a| a.is_zero()) {
        return Err(BasePointsError::ZeroGenerator);
    }
    if generators.iter().any(|a| a.constant_term().is_some()) {
        return Ok(BasePointsResult::empty(Audit::default()));
    }
    let g = normalize(&gcd_many(generators)?);
    let quotients: Vec<BiPoly<Rational>> = generators
        .iter()
        .map(|a| div_exact(a, &g).ok_or_else(|| BasePointsError::Invariant("gcd does not divide".into())))
        .collect::<Result<_, _>>()?;
    let r = quotients.len();
    let mut audit = Audit { fixed_part: g.to_string(), ..Audit::default() };

    let records = expand_product(&quotients, &g)?;
    let sc = singular_cluster(&records)?;
    let kbar = ValueTable::new(sc.cluster.clone(), sc.values[..r].to_vec(), sc.values[r].clone())?;
    if let Some(p) = kbar.inconsistency() {
        return Err(BasePointsError::InconsistentTable(p));
    }
    let (fixed_cluster, fixed_ids) = sc.fixed_subcluster()?;
    audit.fixed_singular = fixed_ids.clone();

    // Base points of the quotient ideal; none if it is the unit ideal.
    let unit_quotient = quotients.iter().any(|f| f.constant_term().is_some());
    let full = if unit_quotient {
        audit.singular = Some(kbar.clone());
        kbar
    } else {
        let continuations: Vec<Continuation> = sc
            .branches
            .iter()
            .map(|b| Continuation {
                point: b.last.expect("every branch goes through the origin"),
                mults: b.mults.clone(),
            })
            .collect();
        let free = complete_free_points(&kbar, &continuations)?;
        let full = complete_satellite_points(&free);
        audit.singular = Some(kbar);
        audit.free_completed = Some(free);
        full
    };
    if let Some(p) = full.inconsistency() {
        return Err(BasePointsError::InconsistentTable(p));
    }
    let mut e_quotient = vec![0i64; full.len()];
    if !unit_quotient {
        let (pruned, kept) = prune_null_points(&full.weighted())?;
        let (by_h, by_h_ids) = min_value_weights(&full)?;
        if by_h_ids != kept || by_h.weights != pruned.weights {
            return Err(BasePointsError::Invariant("zero multiplicities differ from h_p = v_p".into()));
        }
        let pm = proximity_matrix(&full.cluster)?;
        audit.multiplicities = pm.apply(&full.min_values);
        for &p in &kept {
            e_quotient[p] = audit.multiplicities[p];
        }
        audit.kept = kept;
    }

    // B = K u S, with the quotient multiplicities extended by zero.
    let mut keep = vec![false; full.len()];
    for &p in audit.kept.iter().chain(&fixed_ids) {
        keep[p] = true;
    }
    let (cluster, origins) = full.cluster.restrict(&keep).map_err(|_| BasePointsError::BrokenClosure)?;
    debug_assert_eq!(fixed_cluster.len(), fixed_ids.len());
    audit.satellite_completed = Some(full.clone());
    if cluster.is_empty() {
        return Ok(BasePointsResult::empty(audit));
    }
    let e_restricted: Vec<i64> = origins.iter().map(|&p| e_quotient[p]).collect();
    let pm = proximity_matrix(&cluster)?;
    let v_quotient = pm.solve(&e_restricted);
    let values: Vec<i64> = origins.iter().zip(&v_quotient).map(|(&p, v)| v + full.fixed_values[p]).collect();
    let multiplicities = pm.apply(&values);
    let w = WeightedCluster::new(cluster.clone(), multiplicities.clone(), WeightMode::Multiplicities)?;
    if let Some(p) = excesses(&w)?.iter().position(|&x| x < 0) {
        return Err(BasePointsError::Invariant(format!("negative excess at point {p}")));
    }
    if let Some(p) = multiplicities.iter().position(|&x| x <= 0) {
        return Err(BasePointsError::Invariant(format!("non-positive multiplicity at point {p}")));
    }
    let dual_graph = dual_graph(&cluster, &values)?;
    Ok(BasePointsResult { cluster, values, multiplicities, dual_graph, origins, audit })
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = BiPoly<Rational>;

    #[test]
    fn maximal_ideal() {
        let r = base_points(&[Q::x(), Q::y()]).unwrap();
        assert_eq!(r.cluster.len(), 1);
        assert_eq!(r.values, vec![1]);
        assert_eq!(r.multiplicities, vec![1]);
    }

    #[test]
    fn principal_cusp() {
        let r = base_points(&[Q::y().pow(2).sub(&Q::x().pow(3))]).unwrap();
        assert_eq!(r.values, vec![2, 3, 6]);
        assert_eq!(r.multiplicities, vec![2, 1, 1]);
        assert_eq!(r.dual_graph.edges, vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn monomial_ideal() {
        let r = base_points(&[Q::y().pow(2), Q::x().pow(3)]).unwrap();
        assert_eq!(r.values, vec![2, 3, 6]);
    }

    #[test]
    fn unit_generator_gives_no_points() {
        let r = base_points(&[Q::x(), Q::int(1).add(&Q::y())]).unwrap();
        assert!(r.cluster.is_empty());
    }

    #[test]
    fn errors() {
        assert!(matches!(base_points(&[]), Err(BasePointsError::EmptyIdeal)));
        assert!(matches!(base_points(&[Q::x(), Q::zero()]), Err(BasePointsError::ZeroGenerator)));
    }

    #[test]
    fn fixed_part_adds_values() {
        // (x y, y^2) = (y) (x, y): the line y = 0 is smooth, so only O, with
        // value 1 from (x, y) plus 1 from y.
        let r = base_points(&[Q::x().mul(&Q::y()), Q::y().pow(2)]).unwrap();
        assert_eq!(r.values, vec![2]);
    }
}
