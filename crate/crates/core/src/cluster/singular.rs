use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};

use crate::algebra::{BiPoly, Rational};
use crate::puiseux::{expand_product, BranchKind, BranchRecord, ChartStep};

use super::{Cluster, ClusterError};

/// Direction of the next point on the exceptional divisor of the current one,
/// in the coordinates of the current chart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Move {
    /// Towards the curve `Y = 0`.
    R,
    /// Towards the curve `X = 0`.
    L,
    /// A point off both axes, given by a root of a side polynomial and the
    /// choice of conjugate.
    F(usize, usize),
    /// The point after the end of the given walk, for a smooth branch.
    Beyond(usize),
}

/// All points visited by the branches, shared where the branches agree.
struct Trie {
    cluster: Cluster,
    /// Exceptional components, if any, that are the `X = 0` and `Y = 0` axes
    /// of the chart centred at each point.
    axes: Vec<(Option<usize>, Option<usize>)>,
    children: Vec<BTreeMap<Move, usize>>,
}

impl Trie {
    fn new() -> Self {
        let mut cluster = Cluster::default();
        cluster.push_origin();
        Trie { cluster, axes: vec![(None, None)], children: vec![BTreeMap::new()] }
    }

    fn get(&self, p: usize, mv: Move) -> Option<usize> {
        self.children[p].get(&mv).copied()
    }

    fn step(&mut self, p: usize, mv: Move) -> usize {
        if let Some(q) = self.get(p, mv) {
            return q;
        }
        let (a, b) = self.axes[p];
        let (second, axes) = match mv {
            Move::R => (b, (Some(p), b)),
            Move::L => (a, (a, Some(p))),
            Move::F(..) | Move::Beyond(_) => (None, (Some(p), None)),
        };
        let q = self.cluster.push(p, second);
        self.axes.push(axes);
        self.children.push(BTreeMap::new());
        self.children[p].insert(mv, q);
        q
    }
}

/// Moves from the origin along one geometric branch and the branch
/// multiplicity at every visited point (one more entry than moves).
///
/// In the chart of step `j` the branch is `X = T^a`, `Y = c T^b + ...` with
/// `a` the product of the remaining ramification indices; blowing up runs the
/// Euclidean algorithm on `(a, b)`.
fn euclid_path(steps: &[ChartStep], conj: &[usize]) -> (Vec<Move>, Vec<u32>) {
    let mut rho = vec![1u64; steps.len() + 1];
    for j in (0..steps.len()).rev() {
        rho[j] = rho[j + 1] * u64::from(steps[j].n);
    }
    let mut moves = Vec::new();
    let mut es = Vec::new();
    for (j, s) in steps.iter().enumerate() {
        let (mut a, mut b) = (rho[j], rho[j + 1] * u64::from(s.m));
        loop {
            es.push(a.min(b) as u32);
            match a.cmp(&b) {
                Ordering::Less => {
                    moves.push(Move::R);
                    b -= a;
                }
                Ordering::Greater => {
                    moves.push(Move::L);
                    a -= b;
                }
                Ordering::Equal => {
                    moves.push(Move::F(s.child, conj[j]));
                    break;
                }
            }
        }
    }
    es.push(1);
    (moves, es)
}

/// One geometric branch of the reduced germ, seen from the singular cluster.
#[derive(Clone, Debug)]
pub struct GeometricBranch {
    /// Index of the branch record it comes from.
    pub record: usize,
    pub kind: BranchKind,
    /// Multiplicity in each generator and, last, in the fixed part.
    pub mults: Vec<u32>,
    /// Cluster points on the branch with the branch multiplicity there.
    pub points: Vec<(usize, u32)>,
    /// Last cluster point on the branch. Every later point of the branch is
    /// free, simple on the reduced germ and proximate only to its predecessor.
    pub last: Option<usize>,
}

/// Singular points of a reduced germ with the values of every input.
#[derive(Clone, Debug)]
pub struct SingularClusterResult {
    pub cluster: Cluster,
    /// `values[i][p] = v_p(f_i)`; the last row is the fixed part.
    pub values: Vec<Vec<i64>>,
    /// `multiplicities[i][p] = e_p(f_i)`, same layout as `values`.
    pub multiplicities: Vec<Vec<i64>>,
    /// Multiplicities of the reduced germ.
    pub reduced_multiplicities: Vec<i64>,
    /// Whether each point is singular on the reduced germ; the others are
    /// the first simple points of the branches.
    pub singular: Vec<bool>,
    pub branches: Vec<GeometricBranch>,
}

impl SingularClusterResult {
    /// Number of generators (the fixed part not counted).
    pub fn generators(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    /// The singular points alone, as a subcluster: returns the cluster and,
    /// for each of its points, the id here.
    pub fn singular_subcluster(&self) -> Result<(Cluster, Vec<usize>), ClusterError> {
        self.cluster.restrict(&self.singular)
    }

    /// Singular points of the reduced fixed part, in the same form.
    pub fn fixed_subcluster(&self) -> Result<(Cluster, Vec<usize>), ClusterError> {
        let n = self.cluster.len();
        let mut red = vec![0u32; n];
        let mut on = vec![false; n];
        for b in self.branches.iter().filter(|b| b.mults.last().is_some_and(|&m| m > 0)) {
            for &(p, e) in &b.points {
                red[p] += e;
                on[p] = true;
            }
        }
        let mut keep: Vec<bool> =
            (0..n).map(|p| on[p] && (red[p] >= 2 || self.cluster.point(p).is_satellite())).collect();
        close_under_predecessors(&self.cluster, &mut keep);
        self.cluster.restrict(&keep)
    }
}

fn close_under_predecessors(c: &Cluster, keep: &mut [bool]) {
    for p in (0..c.len()).rev() {
        if keep[p] {
            for q in c.point(p).proximate_to() {
                keep[q] = true;
            }
        }
    }
}

/// Singular points (multiple, satellite, or preceding a satellite) of the
/// reduced germ whose branches are `records`, together with the first simple
/// point of every branch, and the values of each input at these points.
///
/// The extra points make the branches separated and smooth inside the
/// cluster, so that every later point of a branch is free and lies on no
/// other branch.
pub fn singular_cluster(records: &[BranchRecord]) -> Result<SingularClusterResult, ClusterError> {
    let owners = records.first().map_or(0, |r| r.mults.len());
    let mut trie = Trie::new();
    let mut walks = Vec::new();

    for (ri, rec) in records.iter().enumerate() {
        let steps = &rec.branch.steps;
        let mut conj = vec![0usize; steps.len()];
        'combos: loop {
            let (moves, es) = euclid_path(steps, &conj);
            let mut p = 0;
            let mut points = vec![(0, es[0])];
            for (&mv, &e) in moves.iter().zip(&es[1..]) {
                p = trie.step(p, mv);
                points.push((p, e));
            }
            walks.push(Walk { record: ri, points });
            let mut k = steps.len();
            loop {
                if k == 0 {
                    break 'combos;
                }
                k -= 1;
                conj[k] += 1;
                if conj[k] < steps[k].conjugates.max(1) {
                    break;
                }
                conj[k] = 0;
            }
        }
    }

    // Branches that are a chart axis continue along that axis; follow them
    // through the points already there and one point further.
    for w in &mut walks {
        let mv = match records[w.record].branch.kind {
            BranchKind::YZero => Move::R,
            BranchKind::YAxis => Move::L,
            BranchKind::Leaf => continue,
        };
        let mut p = w.points.last().unwrap().0;
        loop {
            match trie.get(p, mv) {
                Some(q) => {
                    p = q;
                    w.points.push((q, 1));
                }
                None => {
                    let q = trie.step(p, mv);
                    w.points.push((q, 1));
                    break;
                }
            }
        }
    }

    // Separated branches end at distinct points.
    let mut ends = HashSet::new();
    for w in &walks {
        if !ends.insert(w.points.last().unwrap().0) {
            return Err(ClusterError::NotSeparated);
        }
    }

    let mut red = vec![0i64; trie.cluster.len()];
    for w in &walks {
        for &(p, e) in &w.points {
            red[p] += i64::from(e);
        }
    }
    let mut singular: Vec<bool> = (0..red.len()).map(|p| red[p] >= 2 || trie.cluster.point(p).is_satellite()).collect();
    close_under_predecessors(&trie.cluster, &mut singular);

    // A smooth branch through the origin may still meet the line x = 0 there;
    // give it its first simple point explicitly.
    for (k, w) in walks.iter_mut().enumerate() {
        let end = w.points.last().unwrap().0;
        if records[w.record].branch.kind == BranchKind::Leaf && singular[end] {
            let q = trie.step(end, Move::Beyond(k));
            w.points.push((q, 1));
            singular.push(false);
        }
    }

    let n = trie.cluster.len();
    let mut mult = vec![vec![0i64; n]; owners];
    red = vec![0i64; n];
    for w in &walks {
        let mults = &records[w.record].mults;
        for &(p, e) in &w.points {
            red[p] += i64::from(e);
            for (i, &m) in mults.iter().enumerate() {
                mult[i][p] += i64::from(m) * i64::from(e);
            }
        }
    }
    let values: Vec<Vec<i64>> = mult.iter().map(|e| values_from(&trie.cluster, e)).collect();

    let mut keep = singular.clone();
    for w in &walks {
        if let Some(&(p, _)) = w.points.iter().find(|&&(p, _)| !singular[p]) {
            keep[p] = true;
        }
    }
    let (cluster, old_ids) = trie.cluster.restrict(&keep)?;
    let mut new_id = vec![None; n];
    for (k, &o) in old_ids.iter().enumerate() {
        new_id[o] = Some(k);
    }
    let pick = |row: &Vec<i64>| old_ids.iter().map(|&o| row[o]).collect::<Vec<_>>();

    let branches = walks
        .iter()
        .map(|w| {
            let points: Vec<(usize, u32)> = w.points.iter().filter_map(|&(p, e)| new_id[p].map(|q| (q, e))).collect();
            GeometricBranch {
                record: w.record,
                kind: records[w.record].branch.kind,
                mults: records[w.record].mults.clone(),
                last: points.last().map(|x| x.0),
                points,
            }
        })
        .collect();

    Ok(SingularClusterResult {
        values: values.iter().map(pick).collect(),
        multiplicities: mult.iter().map(pick).collect(),
        reduced_multiplicities: pick(&red),
        singular: old_ids.iter().map(|&o| singular[o]).collect(),
        cluster,
        branches,
    })
}

struct Walk {
    record: usize,
    points: Vec<(usize, u32)>,
}

/// `v_p = e_p + sum of v_q over the points q that p is proximate to`.
pub(crate) fn values_from(c: &Cluster, e: &[i64]) -> Vec<i64> {
    let mut v = Vec::with_capacity(e.len());
    for p in c.points() {
        let s: i64 = p.proximate_to().map(|q| v[q]).sum();
        v.push(e[p.id] + s);
    }
    v
}

/// `sum_p e_p(f) e_p(g)` over the singular cluster of `f g`.
pub fn noether_sum(f: &BiPoly<Rational>, g: &BiPoly<Rational>) -> Result<i64, ClusterError> {
    let records = expand_product(&[f.clone(), g.clone()], &BiPoly::constant(Rational::from_integer(1.into())))?;
    let s = singular_cluster(&records)?;
    Ok(s.multiplicities[0].iter().zip(&s.multiplicities[1]).map(|(a, b)| a * b).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, BiPoly};

    type Q = BiPoly<Rational>;

    fn records(gens: &[Q]) -> Vec<BranchRecord> {
        expand_product(gens, &Q::int(1)).unwrap()
    }

    fn parents(c: &Cluster) -> Vec<(Option<usize>, Option<usize>)> {
        c.points().iter().map(|p| (p.first_parent, p.second_parent)).collect()
    }

    #[test]
    fn smooth_branch_keeps_only_the_origin() {
        let s = singular_cluster(&records(&[Q::y().sub(&Q::x())])).unwrap();
        assert_eq!(s.cluster.len(), 1);
        assert_eq!(s.singular, vec![false]);
        assert!(s.singular_subcluster().unwrap().0.is_empty());
        assert_eq!(s.values[0], vec![1]);
        assert_eq!(s.branches[0].last, Some(0));
    }

    #[test]
    fn cusp() {
        let f = Q::y().pow(2).sub(&Q::x().pow(3));
        let s = singular_cluster(&records(&[f])).unwrap();
        assert_eq!(parents(&s.cluster), vec![(None, None), (Some(0), None), (Some(1), Some(0)), (Some(2), None)]);
        assert_eq!(s.values[0], vec![2, 3, 6, 7]);
        assert_eq!(s.multiplicities[0], vec![2, 1, 1, 1]);
        let (strict, ids) = s.singular_subcluster().unwrap();
        assert_eq!(parents(&strict), vec![(None, None), (Some(0), None), (Some(1), Some(0))]);
        assert_eq!(ids, vec![0, 1, 2]);
    }

    #[test]
    fn tacnode_through_axis_branch() {
        // y (y - x^2): the line y = 0 shares its first free point with the parabola.
        let f = Q::y().mul(&Q::y().sub(&Q::x().pow(2)));
        let s = singular_cluster(&records(&[f])).unwrap();
        assert_eq!(s.singular, vec![true, true, false, false]);
        assert_eq!(s.reduced_multiplicities, vec![2, 2, 1, 1]);
        assert_eq!(s.values[0], vec![2, 4, 5, 5]);
    }

    #[test]
    fn conjugate_branches_split_at_the_free_point() {
        // y^2 - x^4 + x^5 has two branches y = +-x^2 + ...: e = 2, 2 then they separate.
        let f = Q::y().pow(2).sub(&Q::x().pow(4)).add(&Q::x().pow(5));
        let s = singular_cluster(&records(&[f])).unwrap();
        assert_eq!(s.reduced_multiplicities, vec![2, 2, 1, 1]);
        assert_eq!(s.branches.len(), 2);
        assert_ne!(s.branches[0].last, s.branches[1].last);
    }

    #[test]
    fn axis_values() {
        // x and y: two transverse lines.
        let s = singular_cluster(&records(&[Q::x(), Q::y()])).unwrap();
        assert_eq!(s.singular, vec![true, false, false]);
        assert_eq!(s.values, vec![vec![1, 2, 1], vec![1, 1, 2], vec![0, 0, 0]]);
    }

    #[test]
    fn noether_for_tangent_parabolas() {
        let f = Q::y().sub(&Q::x().pow(2));
        let g = Q::y().add(&Q::x().pow(2));
        assert_eq!(noether_sum(&f, &g).unwrap(), 2);
        // Substituting y = x^2 into y^2 - x^3 leaves x^4 - x^3.
        let h = Q::y().pow(2).sub(&Q::x().pow(3));
        assert_eq!(noether_sum(&h, &f.scale(&rat(3))).unwrap(), 3);
    }
}
