use super::Cluster;

/// Label of every subtree of the first-parent tree. A node is described by
/// its weights and the level of its second parent, which is always one of
/// its ancestors, so equal labels mean isomorphic weighted subclusters.
fn subtree_labels(c: &Cluster, weights: &[Vec<i64>]) -> Vec<String> {
    let n = c.len();
    let mut kids: Vec<Vec<usize>> = vec![Vec::new(); n];
    for p in c.points() {
        if let Some(f) = p.first_parent {
            kids[f].push(p.id);
        }
    }
    let mut label = vec![String::new(); n];
    for p in (0..n).rev() {
        let w: Vec<String> = weights.iter().map(|row| row[p].to_string()).collect();
        let sat = c.point(p).second_parent.map_or("-".to_string(), |s| c.point(s).level.to_string());
        let mut sub: Vec<&str> = kids[p].iter().map(|&k| label[k].as_str()).collect();
        sub.sort_unstable();
        label[p] = format!("({};{})[{}]", w.join(" "), sat, sub.join(","));
    }
    label
}

fn roots(c: &Cluster) -> Vec<usize> {
    c.points().iter().filter(|p| p.first_parent.is_none()).map(|p| p.id).collect()
}

/// A string that two weighted clusters share iff they are isomorphic by a
/// proximity-preserving bijection that also preserves every weight row.
pub fn canonical_form(c: &Cluster, weights: &[Vec<i64>]) -> String {
    let labels = subtree_labels(c, weights);
    let mut top: Vec<&str> = roots(c).into_iter().map(|r| labels[r].as_str()).collect();
    top.sort_unstable();
    top.join(",")
}

/// A bijection `map` from the points of `a` to those of `b` with
/// `map[p] = q`, preserving proximities and weights, if one exists.
pub fn isomorphism(a: &Cluster, wa: &[Vec<i64>], b: &Cluster, wb: &[Vec<i64>]) -> Option<Vec<usize>> {
    if a.len() != b.len() || wa.len() != wb.len() {
        return None;
    }
    let la = subtree_labels(a, wa);
    let lb = subtree_labels(b, wb);
    let children = |c: &Cluster, p: Option<usize>| -> Vec<usize> {
        c.points().iter().filter(|q| q.first_parent == p).map(|q| q.id).collect()
    };
    let mut map = vec![usize::MAX; a.len()];
    let mut stack = vec![(None, None)];
    while let Some((pa, pb)) = stack.pop() {
        let mut ka = children(a, pa);
        let mut kb = children(b, pb);
        if ka.len() != kb.len() {
            return None;
        }
        ka.sort_by(|x, y| la[*x].cmp(&la[*y]));
        kb.sort_by(|x, y| lb[*x].cmp(&lb[*y]));
        for (x, y) in ka.into_iter().zip(kb) {
            if la[x] != lb[y] {
                return None;
            }
            map[x] = y;
            stack.push((Some(x), Some(y)));
        }
    }
    Some(map)
}
