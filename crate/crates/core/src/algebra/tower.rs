//! Algebraic extension towers `Q(w1)(w2)...` with dynamic evaluation.
//!
//! A level is adjoined with a monic square-free polynomial that need not be
//! irreducible, so the tower is in general a product of fields. Arithmetic
//! proceeds as if it were a field; the first time an inversion hits a zero
//! divisor, the offending minimal polynomial has been found to factor and a
//! [`Split`] is returned instead. The caller that adjoined the level then
//! redoes its work once per factor.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::field::{Field, Rational};
use super::unipoly::UniPoly;
use super::AlgebraError;

/// Recursive dense representation of a tower element.
///
/// `Poly { level, coeffs }` is a polynomial in the variable of `level`
/// (1-based) whose coefficients only involve lower levels. Canonical form:
/// at least two coefficients, the last one nonzero, and degree below the
/// degree of the level's minimal polynomial. Structural equality is
/// therefore equality of elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Rat(Rational),
    Poly { level: usize, coeffs: Vec<Node> },
}

impl Node {
    fn zero() -> Node {
        Node::Rat(Rational::zero())
    }

    fn level(&self) -> usize {
        match self {
            Node::Rat(_) => 0,
            Node::Poly { level, .. } => *level,
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Node::Rat(q) if Zero::is_zero(q))
    }

    /// Coefficients with respect to the variable of `level` (which must be at
    /// least this node's level).
    fn coeffs_at(&self, level: usize) -> Vec<Node> {
        match self {
            Node::Poly { level: l, coeffs } if *l == level => coeffs.clone(),
            _ => vec![self.clone()],
        }
    }

    fn from_coeffs(level: usize, mut coeffs: Vec<Node>) -> Node {
        while coeffs.last().is_some_and(Node::is_zero) {
            coeffs.pop();
        }
        match coeffs.len() {
            0 => Node::zero(),
            1 => coeffs.pop().unwrap(),
            _ => Node::Poly { level, coeffs },
        }
    }

    fn add(&self, other: &Node) -> Node {
        if let (Node::Rat(a), Node::Rat(b)) = (self, other) {
            return Node::Rat(a + b);
        }
        let l = self.level().max(other.level());
        let (a, b) = (self.coeffs_at(l), other.coeffs_at(l));
        let n = a.len().max(b.len());
        let sum = (0..n)
            .map(|i| match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) => x.add(y),
                (Some(x), None) | (None, Some(x)) => x.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Node::from_coeffs(l, sum)
    }

    fn neg(&self) -> Node {
        match self {
            Node::Rat(q) => Node::Rat(-q),
            Node::Poly { level, coeffs } => {
                Node::Poly { level: *level, coeffs: coeffs.iter().map(Node::neg).collect() }
            }
        }
    }

    fn mul(&self, other: &Node, tower: &ExtensionTower) -> Node {
        let (la, lb) = (self.level(), other.level());
        match (self, other) {
            (Node::Rat(a), Node::Rat(b)) => Node::Rat(a * b),
            _ if la > lb => self.scale(other, tower),
            _ if lb > la => other.scale(self, tower),
            (Node::Poly { level, coeffs: a }, Node::Poly { coeffs: b, .. }) => {
                let mut out = vec![Node::zero(); a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    for (j, y) in b.iter().enumerate() {
                        out[i + j] = out[i + j].add(&x.mul(y, tower));
                    }
                }
                tower.reduce(*level, out)
            }
            _ => unreachable!(),
        }
    }

    /// Multiply a top-level polynomial by an element of strictly lower level.
    fn scale(&self, c: &Node, tower: &ExtensionTower) -> Node {
        match self {
            Node::Poly { level, coeffs } => Node::from_coeffs(*level, coeffs.iter().map(|x| x.mul(c, tower)).collect()),
            Node::Rat(_) => unreachable!(),
        }
    }

    fn fmt_in(&self, tower: &ExtensionTower, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Rat(q) => write!(f, "{q}"),
            Node::Poly { level, coeffs } => {
                let name = &tower.levels[*level - 1].name;
                let mut first = true;
                for (k, c) in coeffs.iter().enumerate().rev() {
                    if c.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    let wrap = match c {
                        Node::Poly { .. } => true,
                        Node::Rat(q) => q.is_negative() || !q.is_integer(),
                    };
                    let unit = matches!(c, Node::Rat(q) if One::is_one(q));
                    if k == 0 || !unit {
                        if wrap {
                            write!(f, "(")?;
                            c.fmt_in(tower, f)?;
                            write!(f, ")")?;
                        } else {
                            c.fmt_in(tower, f)?;
                        }
                        if k > 0 {
                            write!(f, "*")?;
                        }
                    }
                    match k {
                        0 => {}
                        1 => write!(f, "{name}")?,
                        _ => write!(f, "{name}^{k}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
struct Level {
    name: String,
    /// Monic; coefficients live strictly below this level.
    minpoly: Vec<Node>,
}

/// An ordered list of adjoined algebraic elements over the rationals.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ExtensionTower {
    levels: Vec<Level>,
}

impl ExtensionTower {
    pub fn rationals() -> Arc<ExtensionTower> {
        Arc::new(ExtensionTower::default())
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn level_name(&self, level: usize) -> &str {
        &self.levels[level - 1].name
    }

    /// Minimal polynomial of `level` (1-based) as a polynomial over the tower.
    pub fn minimal_polynomial(self: &Arc<Self>, level: usize) -> UniPoly<TowerElement> {
        UniPoly::new(
            self.levels[level - 1]
                .minpoly
                .iter()
                .map(|n| TowerElement { tower: self.clone(), node: n.clone() })
                .collect(),
        )
    }

    /// Degree of the tower over the rationals (product of level degrees).
    pub fn degree(&self) -> usize {
        self.levels.iter().map(|l| l.minpoly.len() - 1).product()
    }

    pub fn level_degree(&self, level: usize) -> usize {
        self.levels[level - 1].minpoly.len() - 1
    }

    pub fn element(self: &Arc<Self>, q: Rational) -> TowerElement {
        TowerElement { tower: self.clone(), node: Node::Rat(q) }
    }

    /// The generator of `level`.
    pub fn generator(self: &Arc<Self>, level: usize) -> TowerElement {
        let node = Node::from_coeffs(level, vec![Node::zero(), Node::Rat(Rational::one())]);
        let node = self.reduce(level, node.coeffs_at(level));
        TowerElement { tower: self.clone(), node }
    }

    fn reduce(&self, level: usize, mut coeffs: Vec<Node>) -> Node {
        let mp = &self.levels[level - 1].minpoly;
        let d = mp.len() - 1;
        for k in (d..coeffs.len()).rev() {
            let c = std::mem::replace(&mut coeffs[k], Node::zero());
            if c.is_zero() {
                continue;
            }
            for (j, m) in mp[..d].iter().enumerate() {
                coeffs[k - d + j] = coeffs[k - d + j].add(&c.mul(m, self).neg());
            }
        }
        Node::from_coeffs(level, coeffs)
    }

    fn extend(self: &Arc<Self>, minpoly: Vec<Node>) -> Arc<ExtensionTower> {
        let mut levels = self.levels.clone();
        let name = format!("w{}", levels.len() + 1);
        levels.push(Level { name, minpoly });
        Arc::new(ExtensionTower { levels })
    }
}

/// Raised when a supposedly invertible element turns out to be a zero
/// divisor: the minimal polynomial of `level` equals `factor * cofactor`,
/// both monic of positive degree and coprime.
#[derive(Clone, Debug)]
pub struct Split {
    pub level: usize,
    pub factor: UniPoly<TowerElement>,
    pub cofactor: UniPoly<TowerElement>,
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "minimal polynomial of level {} splits as ({}) * ({})", self.level, self.factor, self.cofactor)
    }
}

impl std::error::Error for Split {}

/// An element of an [`ExtensionTower`], kept in normal form.
///
/// Elements built over a tower remain valid in every extension of it; binary
/// operations use the deeper of the two towers.
#[derive(Clone, Debug)]
pub struct TowerElement {
    tower: Arc<ExtensionTower>,
    node: Node,
}

impl TowerElement {
    pub fn tower(&self) -> &Arc<ExtensionTower> {
        &self.tower
    }

    pub fn node(&self) -> &Node {
        &self.node
    }

    /// Highest level this element involves (0 for rationals).
    pub fn level(&self) -> usize {
        self.node.level()
    }

    /// Reinterpret in a (compatible) extension of this element's tower.
    pub fn lift(&self, tower: &Arc<ExtensionTower>) -> TowerElement {
        debug_assert!(tower.depth() >= self.node.level());
        TowerElement { tower: tower.clone(), node: self.node.clone() }
    }

    fn with(&self, other: &Self, node: Node) -> Self {
        let tower = if other.tower.depth() > self.tower.depth() { &other.tower } else { &self.tower };
        TowerElement { tower: tower.clone(), node }
    }

    fn deeper<'a>(&'a self, other: &'a Self) -> &'a ExtensionTower {
        if other.tower.depth() > self.tower.depth() {
            &other.tower
        } else {
            &self.tower
        }
    }
}

impl PartialEq for TowerElement {
    fn eq(&self, other: &Self) -> bool {
        self.node == other.node
    }
}

impl fmt::Display for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.node.fmt_in(&self.tower, f)
    }
}

impl Field for TowerElement {
    fn is_zero(&self) -> bool {
        self.node.is_zero()
    }
    fn zero_like(&self) -> Self {
        self.tower.element(Rational::zero())
    }
    fn one_like(&self) -> Self {
        self.tower.element(Rational::one())
    }
    fn rational_like(&self, q: &Rational) -> Self {
        self.tower.element(q.clone())
    }
    fn plus(&self, other: &Self) -> Self {
        self.with(other, self.node.add(&other.node))
    }
    fn minus(&self, other: &Self) -> Self {
        self.with(other, self.node.add(&other.node.neg()))
    }
    fn times(&self, other: &Self) -> Self {
        let node = self.node.mul(&other.node, self.deeper(other));
        self.with(other, node)
    }
    fn negated(&self) -> Self {
        TowerElement { tower: self.tower.clone(), node: self.node.neg() }
    }
    fn inverse(&self) -> Result<Self, Split> {
        match &self.node {
            Node::Rat(q) => {
                assert!(!Zero::is_zero(q), "inverse of zero");
                Ok(self.tower.element(q.recip()))
            }
            Node::Poly { level, coeffs } => {
                let a = UniPoly::new(
                    coeffs.iter().map(|c| TowerElement { tower: self.tower.clone(), node: c.clone() }).collect(),
                );
                let m = self.tower.minimal_polynomial(*level);
                let (g, s, _) = a.xgcd(&m)?;
                if g.degree() == Some(0) {
                    let node = Node::from_coeffs(*level, s.into_coeffs().into_iter().map(|c| c.node).collect());
                    Ok(TowerElement { tower: self.tower.clone(), node })
                } else {
                    let cofactor = m.div_exact(&g)?.expect("gcd divides the minimal polynomial");
                    Err(Split { level: *level, factor: g, cofactor })
                }
            }
        }
    }
    fn to_rational(&self) -> Option<Rational> {
        match &self.node {
            Node::Rat(q) => Some(q.clone()),
            Node::Poly { .. } => None,
        }
    }
    fn needs_parens(&self) -> bool {
        match &self.node {
            Node::Rat(q) => q.is_negative() || !q.is_integer(),
            Node::Poly { .. } => true,
        }
    }
}

/// Adjoin a root of the square-free polynomial `p` to `tower`.
///
/// Linear polynomials give their root directly and leave the tower unchanged.
/// Otherwise a new level with minimal polynomial `p / lc(p)` is created; `p`
/// need not be irreducible (see the module docs).
pub fn adjoin_root(
    tower: &Arc<ExtensionTower>,
    p: &UniPoly<TowerElement>,
) -> Result<(Arc<ExtensionTower>, TowerElement), AlgebraError> {
    let deg = p.degree().filter(|&d| d >= 1).ok_or(AlgebraError::ConstantInput)?;
    let p = p.map(|c| c.lift(tower)).monic()?;
    if deg == 1 {
        return Ok((tower.clone(), p.coeffs()[0].negated()));
    }
    if p.gcd(&p.derivative())?.degree() != Some(0) {
        return Err(AlgebraError::NotSquareFree);
    }
    let ext = tower.extend(p.coeffs().iter().map(|c| c.node.clone()).collect());
    let root = ext.generator(ext.depth());
    Ok((ext, root))
}
