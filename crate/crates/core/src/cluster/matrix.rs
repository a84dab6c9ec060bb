use super::{Cluster, ClusterError, WeightMode, WeightedCluster};

/// Unitriangular matrix with `-1` at `(i, j)` iff point `i` is proximate to
/// point `j`. Multiplicities and values are related by `e = P v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProximityMatrix {
    rows: Vec<Vec<i64>>,
}

impl ProximityMatrix {
    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    /// Validate and wrap a raw matrix.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self, ClusterError> {
        let n = rows.len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(ClusterError::DimensionMismatch { expected: n, got: r.len() });
            }
            let minus = r.iter().filter(|&&x| x == -1).count();
            let ok = r[i] == 1
                && r[i + 1..].iter().all(|&x| x == 0)
                && r[..i].iter().all(|&x| x == 0 || x == -1)
                && minus <= 2;
            if !ok {
                return Err(ClusterError::UnorderedCluster(i));
            }
        }
        Ok(ProximityMatrix { rows })
    }

    /// `P v`
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.rows.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// Solve `P v = e` by forward substitution.
    pub fn solve(&self, e: &[i64]) -> Vec<i64> {
        let mut v = Vec::with_capacity(e.len());
        for (i, r) in self.rows.iter().enumerate() {
            let s: i64 = (0..i).map(|j| r[j] * v[j]).sum();
            v.push(e[i] - s);
        }
        v
    }

    /// Rebuild the cluster the matrix describes (the later parent is taken
    /// as the first parent).
    pub fn to_cluster(&self) -> Result<Cluster, ClusterError> {
        let parents: Vec<(Option<usize>, Option<usize>)> = self
            .rows
            .iter()
            .map(|r| {
                let prox: Vec<usize> = (0..r.len()).filter(|&j| r[j] == -1).collect();
                match prox.as_slice() {
                    [] => (None, None),
                    [a] => (Some(*a), None),
                    [a, b] => (Some(*b), Some(*a)),
                    _ => unreachable!("validated"),
                }
            })
            .collect();
        Cluster::from_parents(&parents)
    }
}

pub fn proximity_matrix(c: &Cluster) -> Result<ProximityMatrix, ClusterError> {
    let n = c.len();
    let mut rows = vec![vec![0i64; n]; n];
    for p in c.points() {
        rows[p.id][p.id] = 1;
        for q in p.proximate_to() {
            if q >= p.id {
                return Err(ClusterError::UnorderedCluster(p.id));
            }
            rows[p.id][q] = -1;
        }
    }
    Ok(ProximityMatrix { rows })
}

/// Switch a weighted cluster between values and multiplicities.
pub fn base_change(p: &ProximityMatrix, w: &WeightedCluster) -> Result<WeightedCluster, ClusterError> {
    if p.dim() != w.weights.len() {
        return Err(ClusterError::DimensionMismatch { expected: p.dim(), got: w.weights.len() });
    }
    let (weights, mode) = match w.mode {
        WeightMode::Values => (p.apply(&w.weights), WeightMode::Multiplicities),
        WeightMode::Multiplicities => (p.solve(&w.weights), WeightMode::Values),
    };
    Ok(WeightedCluster { cluster: w.cluster.clone(), weights, mode })
}

/// `N = -P^T P`, the intersection matrix of the total transforms of the
/// exceptional components.
pub fn intersection_matrix(p: &ProximityMatrix) -> Vec<Vec<i64>> {
    let n = p.dim();
    let mut out = vec![vec![0i64; n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = -(0..n).map(|k| p.rows[k][i] * p.rows[k][j]).sum::<i64>();
        }
    }
    out
}

/// `rho_p = e_p - sum_{q -> p} e_q`.
pub fn excesses(w: &WeightedCluster) -> Result<Vec<i64>, ClusterError> {
    if w.mode != WeightMode::Multiplicities {
        return Err(ClusterError::WrongMode(WeightMode::Multiplicities));
    }
    let mut rho = w.weights.clone();
    for q in w.cluster.points() {
        for p in q.proximate_to() {
            rho[p] -= w.weights[q.id];
        }
    }
    Ok(rho)
}
