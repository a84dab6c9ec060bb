//! Base points by explicit blow-ups in affine charts, straight from the
//! definition: `v_p = min_i v_p(f_i)`, `h_p = sum of v_q over the points p is
//! proximate to`, and `p` is a base point when `h_p < v_p`. The fixed part
//! contributes its values on the union with the singular points of its
//! reduced curve.
//!
//! Every point carries local coordinates `(u, w)` in which the exceptional
//! divisors through it are among `u = 0` (the newest one) and `w = 0`. Only
//! rational points are visited, so every tangent cone met on the way must
//! split over Q.

use basepoints_core::algebra::{rat, BiPoly, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

type Q = BiPoly<Rational>;

#[derive(Clone, Debug)]
pub struct OraclePoint {
    /// `(first, second)` parents in the usual sense: the point whose blow-up
    /// created it, and the older divisor it lies on, if any.
    pub parents: (Option<usize>, Option<usize>),
    pub level: u32,
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub points: Vec<OraclePoint>,
    pub values: Vec<i64>,
}

struct Node {
    level: u32,
    u_owner: Option<usize>,
    w_owner: Option<usize>,
    /// Strict transforms: quotient generators, then the fixed part, then its
    /// reduced curve.
    strict: Vec<Q>,
    values: Vec<i64>,
    reduced_e: i64,
}

fn ord(f: &Q) -> u32 {
    f.order().unwrap_or(0)
}

/// `f(u, u (w + c)) / u^m` with `m = ord f`.
fn chart_a(f: &Q, c: &Rational) -> Q {
    let m = ord(f);
    let shift = Q::y().add(&Q::constant(c.clone()));
    let mut out = Q::zero();
    for (&(a, b), coef) in f.terms() {
        out = out.add(&shift.pow(b).shift(a + b, 0).scale(coef));
    }
    out.unshift(m, 0)
}

/// `f(u w, u) / u^m`: the point at infinity, with the coordinates swapped
/// so that the new divisor is again `u = 0`.
fn chart_b(f: &Q) -> Q {
    let m = ord(f);
    Q::from_terms(f.terms().map(|(&(a, b), c)| ((a + b, a), c.clone()))).unshift(m, 0)
}

/// Directions of the tangent cone of `f`: finite slopes `w = c u` and
/// whether `u = 0` is tangent.
fn tangent_directions(f: &Q) -> (Vec<Rational>, bool) {
    let m = ord(f);
    if m == 0 {
        return (Vec::new(), false);
    }
    let cone: Vec<Rational> = (0..=m).map(|b| f.coeff(m - b, b).cloned().unwrap_or_else(Rational::zero)).collect();
    let infinite = cone[m as usize].is_zero();
    (rational_roots(&cone), infinite)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs().to_u64().expect("small coefficients");
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(BigInt::from(d));
            out.push(BigInt::from(n / d));
        }
        d += 1;
    }
    out
}

fn eval(p: &[Rational], t: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
}

fn deflate(p: &[Rational], t: &Rational) -> Vec<Rational> {
    let n = p.len() - 1;
    let mut q = vec![Rational::zero(); n];
    let mut carry = Rational::zero();
    for k in (0..n).rev() {
        carry = &carry * t + &p[k + 1];
        q[k] = carry.clone();
    }
    q
}

/// Distinct rational roots of `sum p[k] t^k`; panics unless it splits.
fn rational_roots(p: &[Rational]) -> Vec<Rational> {
    let mut p: Vec<Rational> = p.to_vec();
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    let degree = p.len().saturating_sub(1);
    let mut roots = Vec::new();
    let mut found = 0;
    while p.len() > 1 && p[0].is_zero() {
        p.remove(0);
        found += 1;
    }
    if found > 0 {
        roots.push(Rational::zero());
    }
    if p.len() > 1 {
        let den = p.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = p.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
        let mut candidates = Vec::new();
        for a in divisors(&ints[0]) {
            for b in divisors(ints.last().unwrap()) {
                let r = Rational::new(a.clone(), b);
                candidates.push(-r.clone());
                candidates.push(r);
            }
        }
        candidates.sort();
        candidates.dedup();
        for r in candidates {
            let mut hit = false;
            while p.len() > 1 && eval(&p, &r).is_zero() {
                p = deflate(&p, &r);
                found += 1;
                hit = true;
            }
            if hit {
                roots.push(r);
            }
        }
    }
    assert_eq!(found, degree, "tangent cone does not split over Q");
    roots
}

/// Base points of `(g) (f_1, ..., f_r)` with every blow-up up to `max_level`.
/// Panics if a base point could lie deeper.
pub fn base_points_by_blowups(quotient: &[Q], fixed: &Q, fixed_reduced: &Q, max_level: u32) -> OracleResult {
    let r = quotient.len();
    let mut nodes: Vec<Node> = Vec::new();
    let mut parents = Vec::new();
    let mut strict: Vec<Q> = quotient.to_vec();
    strict.push(fixed.clone());
    strict.push(fixed_reduced.clone());
    let origin_values: Vec<i64> = strict[..=r].iter().map(|f| ord(f) as i64).collect();
    nodes.push(Node {
        level: 0,
        u_owner: None,
        w_owner: None,
        reduced_e: ord(&strict[r + 1]) as i64,
        strict,
        values: origin_values,
    });
    parents.push((None, None));

    let in_k = |nodes: &[Node], p: usize| {
        let n = &nodes[p];
        let v = n.values[..r].iter().copied().min().unwrap_or(0);
        let h: i64 = [n.u_owner, n.w_owner].iter().flatten().map(|&q| nodes[q].values[..r].iter().min().unwrap()).sum();
        h < v
    };
    // A simple free point of the reduced fixed curve, transverse to the
    // divisor: every later point of that branch is free and simple.
    let settled = |n: &Node| {
        let s = &n.strict[r + 1];
        n.reduced_e == 0
            || (n.reduced_e == 1
                && n.w_owner.is_none()
                && (n.u_owner.is_none() || s.coeff(0, 1).is_some_and(|c| !c.is_zero())))
    };

    let mut next = 0;
    while next < nodes.len() {
        let p = next;
        next += 1;
        let expand = in_k(&nodes, p) || !settled(&nodes[p]);
        if !expand {
            continue;
        }
        assert!(nodes[p].level < max_level, "base points deeper than level {max_level}");
        let mut finite: Vec<Rational> = Vec::new();
        let mut infinite = nodes[p].u_owner.is_some();
        if nodes[p].w_owner.is_some() {
            finite.push(Rational::zero());
        }
        for f in &nodes[p].strict {
            let (roots, inf) = tangent_directions(f);
            finite.extend(roots);
            infinite |= inf;
        }
        finite.sort();
        finite.dedup();
        let mut children: Vec<(Vec<Q>, Option<usize>)> = finite
            .iter()
            .map(|c| {
                let s = nodes[p].strict.iter().map(|f| chart_a(f, c)).collect();
                (s, if c.is_zero() { nodes[p].w_owner } else { None })
            })
            .collect();
        if infinite {
            children.push((nodes[p].strict.iter().map(chart_b).collect(), nodes[p].u_owner));
        }
        for (s, second) in children {
            let mut values: Vec<i64> = s[..=r].iter().map(|f| ord(f) as i64).collect();
            for q in std::iter::once(p).chain(second) {
                for (v, w) in values.iter_mut().zip(&nodes[q].values) {
                    *v += w;
                }
            }
            parents.push((Some(p), second));
            nodes.push(Node {
                level: nodes[p].level + 1,
                u_owner: Some(p),
                w_owner: second,
                reduced_e: ord(&s[r + 1]) as i64,
                strict: s,
                values,
            });
        }
    }

    let n = nodes.len();
    let mut keep: Vec<bool> = (0..n).map(|p| in_k(&nodes, p)).collect();
    let mut singular: Vec<bool> =
        (0..n).map(|p| nodes[p].reduced_e >= 2 || (nodes[p].reduced_e >= 1 && nodes[p].w_owner.is_some())).collect();
    for p in (0..n).rev() {
        if singular[p] {
            for q in [nodes[p].u_owner, nodes[p].w_owner].into_iter().flatten() {
                singular[q] = true;
            }
        }
    }
    for p in 0..n {
        if keep[p] {
            for q in [nodes[p].u_owner, nodes[p].w_owner].into_iter().flatten() {
                assert!(keep[q], "base points not closed under predecessors");
            }
        }
    }

    // Quotient multiplicities extended by zero, back to values, plus the
    // values of the fixed part.
    let mut quotient_values = vec![0i64; n];
    for p in 0..n {
        let near: i64 = [nodes[p].u_owner, nodes[p].w_owner].iter().flatten().map(|&q| quotient_values[q]).sum();
        let e = if keep[p] { nodes[p].values[..r].iter().copied().min().unwrap() - near } else { 0 };
        quotient_values[p] = e + near;
    }
    for p in 0..n {
        keep[p] |= singular[p];
    }
    let mut new_id = vec![usize::MAX; n];
    let mut points = Vec::new();
    let mut values = Vec::new();
    for p in (0..n).filter(|&p| keep[p]) {
        new_id[p] = points.len();
        let (a, b) = parents[p];
        points.push(OraclePoint { parents: (a.map(|a| new_id[a]), b.map(|b| new_id[b])), level: nodes[p].level });
        values.push(quotient_values[p] + nodes[p].values[r]);
    }
    OracleResult { points, values }
}

/// Shorthand for rational constants in test polynomials.
pub fn c(n: i64) -> Q {
    Q::constant(rat(n))
}
