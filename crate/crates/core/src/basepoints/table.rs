use crate::cluster::{base_change, proximity_matrix, Cluster, ClusterError, WeightMode, WeightedCluster};

use super::BasePointsError;

/// Values of every generator and of the fixed part at the points of a
/// cluster, with the derived minimum values `v_p` and `h_p`, the sum of the
/// minimum values of the points `p` is proximate to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueTable {
    pub cluster: Cluster,
    /// `generator_values[i][p] = v_p(f_i)`.
    pub generator_values: Vec<Vec<i64>>,
    pub fixed_values: Vec<i64>,
    pub min_values: Vec<i64>,
    pub h_values: Vec<i64>,
}

impl ValueTable {
    pub fn new(
        cluster: Cluster,
        generator_values: Vec<Vec<i64>>,
        fixed_values: Vec<i64>,
    ) -> Result<Self, ClusterError> {
        let n = cluster.len();
        for row in generator_values.iter().chain(std::iter::once(&fixed_values)) {
            if row.len() != n {
                return Err(ClusterError::DimensionMismatch { expected: n, got: row.len() });
            }
        }
        let mut t = ValueTable {
            cluster: Cluster::default(),
            generator_values: vec![Vec::with_capacity(n); generator_values.len()],
            fixed_values: Vec::with_capacity(n),
            min_values: Vec::with_capacity(n),
            h_values: Vec::with_capacity(n),
        };
        for p in cluster.points() {
            let vals: Vec<i64> = generator_values.iter().map(|r| r[p.id]).collect();
            t.append(p.first_parent, p.second_parent, vals, fixed_values[p.id]);
        }
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.cluster.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cluster.is_empty()
    }

    pub fn generators(&self) -> usize {
        self.generator_values.len()
    }

    /// `v_p(f_i)` for every generator.
    pub fn values_at(&self, p: usize) -> Vec<i64> {
        self.generator_values.iter().map(|r| r[p]).collect()
    }

    /// Append a point with the given generator and fixed-part values.
    pub(crate) fn append(&mut self, first: Option<usize>, second: Option<usize>, vals: Vec<i64>, fixed: i64) -> usize {
        let id = match first {
            None => self.cluster.push_origin(),
            Some(f) => self.cluster.push(f, second),
        };
        let min = vals.iter().copied().min().unwrap_or(0);
        for (row, v) in self.generator_values.iter_mut().zip(vals) {
            row.push(v);
        }
        self.fixed_values.push(fixed);
        self.min_values.push(min);
        let h = self.cluster.point(id).proximate_to().map(|q| self.min_values[q]).sum();
        self.h_values.push(h);
        id
    }

    /// First point with `h_p > v_p`, which no table built from an ideal has.
    pub fn inconsistency(&self) -> Option<usize> {
        (0..self.len()).find(|&p| self.h_values[p] > self.min_values[p])
    }

    /// Minimum values as a weighted cluster.
    pub fn weighted(&self) -> WeightedCluster {
        WeightedCluster { cluster: self.cluster.clone(), weights: self.min_values.clone(), mode: WeightMode::Values }
    }
}

/// The points with `h_p < v_p` weighted by `v_p`, and for each of them its id
/// in the table.
pub fn min_value_weights(table: &ValueTable) -> Result<(WeightedCluster, Vec<usize>), BasePointsError> {
    if let Some(p) = table.inconsistency() {
        return Err(BasePointsError::InconsistentTable(p));
    }
    let keep: Vec<bool> = (0..table.len()).map(|p| table.h_values[p] < table.min_values[p]).collect();
    let (cluster, ids) = table.cluster.restrict(&keep).map_err(|_| BasePointsError::BrokenClosure)?;
    let weights = ids.iter().map(|&p| table.min_values[p]).collect();
    Ok((WeightedCluster { cluster, weights, mode: WeightMode::Values }, ids))
}

/// Continue along a branch beyond the cluster: `point` is the last cluster
/// point on it and `mults` its multiplicity in each generator, followed by
/// the one in the fixed part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Continuation {
    pub point: usize,
    pub mults: Vec<u32>,
}

/// Append the free base points beyond the cluster. Along each branch, the
/// next point is a base point iff every generator reaching the minimum value
/// at the current point goes through it; the walk stops at the first point
/// that is not.
pub fn complete_free_points(table: &ValueTable, continuations: &[Continuation]) -> Result<ValueTable, BasePointsError> {
    let mut t = table.clone();
    let r = t.generators();
    for c in continuations {
        if c.mults[..r].iter().all(|&m| m > 0) {
            return Err(BasePointsError::Invariant("a branch lies on every generator".into()));
        }
        let mut p = c.point;
        loop {
            let vp = t.min_values[p];
            let vals = t.values_at(p);
            if vals.iter().zip(&c.mults).any(|(&v, &m)| v == vp && m == 0) {
                break;
            }
            let next: Vec<i64> = vals.iter().zip(&c.mults).map(|(&v, &m)| v + i64::from(m)).collect();
            let fixed = t.fixed_values[p] + i64::from(c.mults[r]);
            p = t.append(Some(p), None, next, fixed);
        }
    }
    Ok(t)
}

/// Append the missing satellite base points. The satellite proximate to
/// `p` and `p'` is a base point iff no generator reaches the minimum value at
/// both; new satellites lie on no generator, so their values are the sums of
/// the values at `p` and `p'`.
pub fn complete_satellite_points(table: &ValueTable) -> ValueTable {
    let mut t = table.clone();
    let mut work: Vec<(usize, usize)> = Vec::new();
    for p in t.cluster.points() {
        for q in p.proximate_to() {
            work.push((p.id, q));
        }
    }
    work.reverse();
    while let Some((p, q)) = work.pop() {
        if t.cluster.satellite_of(p, q).is_some() {
            continue;
        }
        let (vp, vq) = (t.min_values[p], t.min_values[q]);
        let (ap, aq) = (t.values_at(p), t.values_at(q));
        if ap.iter().zip(&aq).any(|(&a, &b)| a == vp && b == vq) {
            continue;
        }
        let vals = ap.iter().zip(&aq).map(|(a, b)| a + b).collect();
        let fixed = t.fixed_values[p] + t.fixed_values[q];
        let s = t.append(Some(p), Some(q), vals, fixed);
        work.push((s, q));
        work.push((s, p));
    }
    t
}

/// Remove the points of multiplicity zero. Returns the values on the
/// remaining points and, for each of them, its id in the input.
pub fn prune_null_points(w: &WeightedCluster) -> Result<(WeightedCluster, Vec<usize>), BasePointsError> {
    let pm = proximity_matrix(&w.cluster)?;
    let (values, mults) = match w.mode {
        WeightMode::Values => (w.weights.clone(), base_change(&pm, w)?.weights),
        WeightMode::Multiplicities => (base_change(&pm, w)?.weights, w.weights.clone()),
    };
    let keep: Vec<bool> = mults.iter().map(|&e| e != 0).collect();
    let (cluster, ids) = w.cluster.restrict(&keep).map_err(|_| BasePointsError::BrokenClosure)?;
    let weights = ids.iter().map(|&p| values[p]).collect();
    Ok((WeightedCluster { cluster, weights, mode: WeightMode::Values }, ids))
}
