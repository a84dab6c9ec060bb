//! Clusters of infinitely near points, proximity matrices and the singular
//! cluster of a reduced germ.

mod canon;
mod graph;
mod matrix;
mod singular;

pub use canon::{canonical_form, isomorphism};
pub use graph::{dual_graph, DualGraph};
pub use matrix::{base_change, excesses, intersection_matrix, proximity_matrix, ProximityMatrix};
pub use singular::{noether_sum, singular_cluster, GeometricBranch, SingularClusterResult};

use crate::puiseux::PuiseuxError;

#[derive(Clone, Debug, thiserror::Error)]
pub enum ClusterError {
    #[error("point {0} is listed before one of its parents")]
    UnorderedCluster(usize),
    #[error("weight vector has length {got}, cluster has {expected} points")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("expected weights given as {0:?}")]
    WrongMode(WeightMode),
    #[error("branches are not separated")]
    NotSeparated,
    #[error(transparent)]
    Puiseux(#[from] PuiseuxError),
}

/// An infinitely near point. Ids are positions in the owning [`Cluster`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    pub id: usize,
    /// The point whose blow-up created this one (absent for the origin).
    pub first_parent: Option<usize>,
    /// The other point this one is proximate to, for satellite points.
    pub second_parent: Option<usize>,
    /// Order of the neighbourhood: 0 for the origin.
    pub level: u32,
}

impl Point {
    pub fn is_satellite(&self) -> bool {
        self.second_parent.is_some()
    }

    /// Points this one is proximate to.
    pub fn proximate_to(&self) -> impl Iterator<Item = usize> {
        self.first_parent.into_iter().chain(self.second_parent)
    }
}

/// A finite set of infinitely near points closed under predecessors, listed
/// so that every point comes after its parents.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cluster {
    points: Vec<Point>,
}

impl Cluster {
    /// Build a cluster, checking ids and the parents-first ordering.
    pub fn new(points: Vec<Point>) -> Result<Cluster, ClusterError> {
        for (i, p) in points.iter().enumerate() {
            assert_eq!(p.id, i, "point ids must be their positions");
            if p.proximate_to().any(|q| q >= i) {
                return Err(ClusterError::UnorderedCluster(i));
            }
        }
        Ok(Cluster { points })
    }

    /// Build from `(first_parent, second_parent)` pairs, deriving levels.
    pub fn from_parents(parents: &[(Option<usize>, Option<usize>)]) -> Result<Cluster, ClusterError> {
        let mut points: Vec<Point> = Vec::with_capacity(parents.len());
        for (i, &(first, second)) in parents.iter().enumerate() {
            if first.is_some_and(|f| f >= i) || second.is_some_and(|s| s >= i) || (first.is_none() && second.is_some())
            {
                return Err(ClusterError::UnorderedCluster(i));
            }
            let level = first.map_or(0, |f| points[f].level + 1);
            points.push(Point { id: i, first_parent: first, second_parent: second, level });
        }
        Ok(Cluster { points })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, id: usize) -> &Point {
        &self.points[id]
    }

    /// Append a point; returns its id.
    pub fn push(&mut self, first_parent: usize, second_parent: Option<usize>) -> usize {
        let id = self.points.len();
        let level = self.points[first_parent].level + 1;
        self.points.push(Point { id, first_parent: Some(first_parent), second_parent, level });
        id
    }

    pub fn push_origin(&mut self) -> usize {
        assert!(self.points.is_empty(), "origin must come first");
        self.points.push(Point { id: 0, first_parent: None, second_parent: None, level: 0 });
        0
    }

    /// Ids of the points proximate to `p`.
    pub fn proximate_points(&self, p: usize) -> impl Iterator<Item = usize> + '_ {
        self.points.iter().filter(move |q| q.proximate_to().any(|r| r == p)).map(|q| q.id)
    }

    /// The unique point proximate to both `p` and `q`, if present.
    pub fn satellite_of(&self, p: usize, q: usize) -> Option<usize> {
        self.points
            .iter()
            .find(|s| {
                let mut prox: Vec<usize> = s.proximate_to().collect();
                prox.sort_unstable();
                let mut want = vec![p, q];
                want.sort_unstable();
                prox == want
            })
            .map(|s| s.id)
    }

    /// Keep the points with `keep[id]`, renumbering in order. Returns the new
    /// cluster and, for each new id, the old one.
    pub fn restrict(&self, keep: &[bool]) -> Result<(Cluster, Vec<usize>), ClusterError> {
        let mut new_id = vec![None; self.points.len()];
        let mut old_ids = Vec::new();
        let mut points = Vec::new();
        for p in &self.points {
            if !keep[p.id] {
                continue;
            }
            let map = |q: Option<usize>| -> Result<Option<usize>, ClusterError> {
                match q {
                    None => Ok(None),
                    Some(q) => new_id[q].map(Some).ok_or(ClusterError::UnorderedCluster(p.id)),
                }
            };
            let id = points.len();
            points.push(Point {
                id,
                first_parent: map(p.first_parent)?,
                second_parent: map(p.second_parent)?,
                level: p.level,
            });
            new_id[p.id] = Some(id);
            old_ids.push(p.id);
        }
        Ok((Cluster { points }, old_ids))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightMode {
    Values,
    Multiplicities,
}

/// A cluster with integer weights, either virtual values or virtual
/// multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedCluster {
    pub cluster: Cluster,
    pub weights: Vec<i64>,
    pub mode: WeightMode,
}

impl WeightedCluster {
    pub fn new(cluster: Cluster, weights: Vec<i64>, mode: WeightMode) -> Result<Self, ClusterError> {
        if weights.len() != cluster.len() {
            return Err(ClusterError::DimensionMismatch { expected: cluster.len(), got: weights.len() });
        }
        Ok(WeightedCluster { cluster, weights, mode })
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::Cluster;

    /// O, a free point on it, and the satellite between them.
    pub fn cusp() -> Cluster {
        Cluster::from_parents(&[(None, None), (Some(0), None), (Some(1), Some(0))]).unwrap()
    }
}
