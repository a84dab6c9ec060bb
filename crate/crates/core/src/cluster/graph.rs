use std::fmt::Write;

use super::{Cluster, ClusterError};

/// Dual graph of the exceptional divisor after blowing up every point of a
/// cluster. Node `p` is the last strict transform of the exceptional
/// component of point `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    pub labels: Vec<i64>,
    /// Pairs `(p, q)` with `p < q`, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl DualGraph {
    pub fn degree(&self, p: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == p || b == p).count()
    }

    pub fn neighbours(&self, p: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == p {
                    Some(b)
                } else if b == p {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    /// DOT text with 1-based node names `n1, n2, ...` labelled by weight.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph {\n");
        for (i, l) in self.labels.iter().enumerate() {
            writeln!(s, "  n{} [label=\"{}\"];", i + 1, l).unwrap();
        }
        for (a, b) in &self.edges {
            writeln!(s, "  n{} -- n{};", a + 1, b + 1).unwrap();
        }
        s.push_str("}\n");
        s
    }
}

/// Components `E_p` and `E_q` meet iff `q` is proximate to `p` and no point
/// is proximate to both.
pub fn dual_graph(c: &Cluster, labels: &[i64]) -> Result<DualGraph, ClusterError> {
    if labels.len() != c.len() {
        return Err(ClusterError::DimensionMismatch { expected: c.len(), got: labels.len() });
    }
    let mut edges = Vec::new();
    for q in c.points() {
        for p in q.proximate_to() {
            if c.satellite_of(p, q.id).is_none() {
                edges.push((p, q.id));
            }
        }
    }
    edges.sort_unstable();
    Ok(DualGraph { labels: labels.to_vec(), edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::fixtures::cusp;

    #[test]
    fn cusp_graph() {
        let g = dual_graph(&cusp(), &[2, 3, 6]).unwrap();
        assert_eq!(g.edges, vec![(0, 2), (1, 2)]);
        assert_eq!(g.degree(2), 2);
    }

    #[test]
    fn single_point_dot() {
        let c = Cluster::from_parents(&[(None, None)]).unwrap();
        let g = dual_graph(&c, &[1]).unwrap();
        assert_eq!(g.to_dot(), "graph {\n  n1 [label=\"1\"];\n}\n");
    }
}
