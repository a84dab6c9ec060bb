use std::sync::Arc;

use num_bigint::BigInt;

use crate::algebra::gcd::{lcm, squarefree_factorization};
use crate::algebra::{
    adjoin_root, AlgebraError, BiPoly, ExtensionTower, Field, Rational, Split, TowerElement, UniPoly,
};

use super::branch::{BranchRecord, ChartParam, ChartStep, PuiseuxBranch, TPoly};
use super::polygon::{newton_polygon, NewtonPolygonSide};
use super::PuiseuxError;

/// Terms computed past the separating chart of each branch.
const LEAF_EXTRA_TERMS: u32 = 2;

/// A square-free factor of generator `owner` (or of the fixed part, whose
/// index is the number of generators), carried through the chart changes.
#[derive(Clone, Debug)]
pub struct TrackedFactor {
    pub owner: usize,
    pub multiplicity: usize,
    pub poly: TPoly,
    /// Total power of the chart variable `X` stripped so far.
    pub beta: u32,
}

/// Rational Newton-Puiseux chart change `X = z^v X'^n`, `Y = X'^m (z^u + Y')`,
/// where `u n - v m = 1` and `0 <= v < n`.
#[derive(Clone, Debug)]
pub struct ChartChange {
    pub m: u32,
    pub n: u32,
    pub u: u32,
    pub v: u32,
    pub z: TowerElement,
}

impl ChartChange {
    pub fn new(m: u32, n: u32, z: TowerElement) -> Self {
        assert!(m >= 1 && n >= 1 && num_integer::gcd(m, n) == 1);
        let v = (0..n).find(|&v| (v as u64 * m as u64 + 1).is_multiple_of(n as u64)).expect("m is invertible mod n");
        let u = ((v as u64 * m as u64 + 1) / n as u64) as u32;
        ChartChange { m, n, u, v, z }
    }
}

fn binomial_rows(max: usize) -> Vec<Vec<Rational>> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::from(1)]];
    for b in 1..=max {
        let prev = &rows[b - 1];
        let mut row = vec![BigInt::from(1); b + 1];
        for k in 1..b {
            row[k] = &prev[k - 1] + &prev[k];
        }
        rows.push(row);
    }
    rows.into_iter().map(|r| r.into_iter().map(Rational::from_integer).collect()).collect()
}

/// Apply the chart change and divide by the largest power `X'^beta` that
/// divides the result; returns the quotient and `beta`.
pub fn substitute(f: &TPoly, ch: &ChartChange) -> Result<(TPoly, u32), Split> {
    let Some(template) = f.sample() else { return Ok((TPoly::zero(), 0)) };
    let z = ch.z.clone();
    let max_a = f.degree_x().unwrap();
    let max_b = f.degree_y().unwrap();
    let zmax = (ch.v * max_a + ch.u * max_b) as usize;
    let mut zpow = vec![template.one_like()];
    for i in 1..=zmax {
        zpow.push(zpow[i - 1].times(&z));
    }
    let binom = binomial_rows(max_b as usize);

    let beta = f.terms().map(|(&(a, b), _)| ch.n * a + ch.m * b).min().unwrap();
    // The point of the lowest slice with the largest y-exponent survives with
    // coefficient c z^(v a); make sure c is a unit on every component.
    let (_, c) = f.terms().filter(|(&(a, b), _)| ch.n * a + ch.m * b == beta).max_by_key(|(&(_, b), _)| b).unwrap();
    c.inverse()?;

    let mut out = TPoly::zero();
    for (&(a, b), c) in f.terms() {
        let xe = ch.n * a + ch.m * b - beta;
        for k in 0..=b {
            let zi = (ch.v * a + ch.u * (b - k)) as usize;
            let coeff = c.times(&zpow[zi]).times(&template.rational_like(&binom[b as usize][k as usize]));
            out.add_term((xe, k), coeff);
        }
    }
    Ok((out, beta))
}

/// Transform every tracked factor by the chart change, strip the power of
/// the new `X`, and drop the factors that became units.
pub fn advance_tracked_factors(s: &[TrackedFactor], ch: &ChartChange) -> Result<Vec<TrackedFactor>, Split> {
    let mut out = Vec::new();
    for t in s {
        let (poly, beta) = substitute(&t.poly, ch)?;
        if let Some(c) = poly.constant_term() {
            c.inverse()?;
            continue;
        }
        out.push(TrackedFactor { owner: t.owner, multiplicity: t.multiplicity, poly, beta: t.beta + beta });
    }
    Ok(out)
}

struct State {
    f: TPoly,
    tracked: Vec<TrackedFactor>,
    param: ChartParam,
    tower: Arc<ExtensionTower>,
    steps: Vec<ChartStep>,
}

/// Why a subtree expansion stopped early.
enum Stop {
    /// A zero divisor: the subtree is redone by whoever adjoined `level`.
    Split(Split),
    Failed(PuiseuxError),
}

impl From<Split> for Stop {
    fn from(s: Split) -> Self {
        Stop::Split(s)
    }
}

impl From<PuiseuxError> for Stop {
    fn from(e: PuiseuxError) -> Self {
        Stop::Failed(e)
    }
}

impl From<AlgebraError> for Stop {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Split(s) => Stop::Split(s),
            other => Stop::Failed(other.into()),
        }
    }
}

struct Expander {
    owners: usize,
    next_id: usize,
}

impl Expander {
    fn mults_of<'a>(&self, factors: impl Iterator<Item = &'a TrackedFactor>) -> Result<Vec<u32>, PuiseuxError> {
        let mut mults = vec![0u32; self.owners];
        for t in factors {
            if mults[t.owner] != 0 {
                return Err(PuiseuxError::Invariant(format!(
                    "two square-free factors of input {} contain the same branch",
                    t.owner + 1
                )));
            }
            mults[t.owner] = t.multiplicity as u32;
        }
        if mults.iter().all(|&m| m == 0) {
            return Err(PuiseuxError::Invariant("branch lies on no tracked factor".into()));
        }
        Ok(mults)
    }

    fn node(&mut self, st: &State) -> Result<Vec<BranchRecord>, Stop> {
        let fy0 = st.f.at_x_zero();
        let b0 = fy0.coeffs().iter().position(|c| !c.is_zero()).expect("x does not divide f");
        fy0.coeffs()[b0].inverse()?;
        assert!(b0 >= 1, "chart is centred on the curve");
        if b0 == 1 {
            let branch = PuiseuxBranch::leaf(st.f.clone(), st.param.clone(), st.steps.clone(), LEAF_EXTRA_TERMS)?;
            let mults = self.mults_of(st.tracked.iter())?;
            return Ok(vec![BranchRecord { branch: Arc::new(branch), mults }]);
        }
        let mut out = Vec::new();
        if st.f.ord_y().unwrap() >= 1 {
            let mults = self.mults_of(st.tracked.iter().filter(|t| t.poly.ord_y().unwrap() >= 1))?;
            let branch = PuiseuxBranch::y_zero(&st.param, st.steps.clone());
            out.push(BranchRecord { branch: Arc::new(branch), mults });
        }
        let sides = newton_polygon(&st.f).expect("f vanishes at the chart centre");
        for side in &sides {
            side.polynomial.coeffs()[0].inverse()?;
            side.polynomial.leading().unwrap().inverse()?;
            for (q, mult) in side.polynomial.squarefree()? {
                out.extend(self.factor(st, side, &q, mult)?);
            }
        }
        Ok(out)
    }

    /// Follow every root of the factor `q` of a side polynomial.
    fn factor(
        &mut self,
        st: &State,
        side: &NewtonPolygonSide<TowerElement>,
        q: &UniPoly<TowerElement>,
        mult: usize,
    ) -> Result<Vec<BranchRecord>, Stop> {
        let (tower, z) = adjoin_root(&st.tower, q)?;
        let degree = q.degree().unwrap();
        match self.child(st, side, z, tower.clone(), degree, mult) {
            Err(Stop::Split(s)) if degree >= 2 && s.level == tower.depth() => {
                let lift = |p: &UniPoly<TowerElement>| p.map(|c| c.lift(&st.tower));
                let mut out = self.factor(st, side, &lift(&s.factor), mult)?;
                out.extend(self.factor(st, side, &lift(&s.cofactor), mult)?);
                Ok(out)
            }
            other => other,
        }
    }

    fn child(
        &mut self,
        st: &State,
        side: &NewtonPolygonSide<TowerElement>,
        z: TowerElement,
        tower: Arc<ExtensionTower>,
        degree: usize,
        mult: usize,
    ) -> Result<Vec<BranchRecord>, Stop> {
        let ch = ChartChange::new(side.m(), side.n(), z);
        let (f, beta) = substitute(&st.f, &ch)?;
        debug_assert_eq!(beta, ch.n * side.start.0 + ch.m * side.start.1);
        debug_assert!(f.at_x_zero().coeffs().iter().position(|c| !c.is_zero()) == Some(mult));
        let tracked = advance_tracked_factors(&st.tracked, &ch)?;
        let mut steps = st.steps.clone();
        self.next_id += 1;
        steps.push(ChartStep {
            child: self.next_id,
            m: ch.m,
            n: ch.n,
            conjugates: degree,
            exponent: st.param.step_exponent(ch.m, ch.n),
        });
        let param = st.param.advance(ch.m, ch.n, ch.u, ch.v, &ch.z);
        self.node(&State { f, tracked, param, tower, steps })
    }
}

fn to_tower(p: &BiPoly<Rational>, tower: &Arc<ExtensionTower>) -> TPoly {
    p.map(|c| tower.element(c.clone()))
}

/// Newton-Puiseux expansion of `fixed * prod(generators)` at the origin,
/// recording for each branch its multiplicity in every factor.
///
/// Returns one record per conjugacy class of branches through the origin,
/// including the line `x = 0` when some input is divisible by `x`. The
/// `mults` vector has one entry per generator followed by one for `fixed`.
pub fn expand_product(
    generators: &[BiPoly<Rational>],
    fixed: &BiPoly<Rational>,
) -> Result<Vec<BranchRecord>, PuiseuxError> {
    if generators.iter().any(|g| g.is_zero()) || fixed.is_zero() {
        return Err(PuiseuxError::ZeroGenerator);
    }
    let q = ExtensionTower::rationals();
    let one = q.element(Rational::from_integer(1.into()));
    let inputs: Vec<&BiPoly<Rational>> = generators.iter().chain(std::iter::once(fixed)).collect();
    let owners = inputs.len();

    let mut x_powers = vec![0u32; owners];
    let mut tracked = Vec::new();
    let mut reduced = BiPoly::constant(Rational::from_integer(1.into()));
    for (k, p) in inputs.iter().enumerate() {
        let alpha = p.ord_x().unwrap();
        x_powers[k] = alpha;
        let rest = p.unshift(alpha, 0);
        if rest.is_constant() {
            continue;
        }
        for (h, j) in squarefree_factorization(&rest)? {
            if h.constant_term().is_none() {
                reduced = lcm(&reduced, &h);
                tracked.push(TrackedFactor { owner: k, multiplicity: j, poly: to_tower(&h, &q), beta: 0 });
            }
        }
    }

    let mut records = Vec::new();
    if !reduced.is_constant() {
        let mut ex = Expander { owners, next_id: 0 };
        let root = State {
            f: to_tower(&reduced, &q),
            tracked,
            param: ChartParam::root(one.clone()),
            tower: q.clone(),
            steps: Vec::new(),
        };
        match ex.node(&root) {
            Ok(r) => records.extend(r),
            Err(Stop::Failed(e)) => return Err(e),
            Err(Stop::Split(s)) => return Err(PuiseuxError::Invariant(format!("unhandled zero divisor: {s}"))),
        }
    }
    if x_powers.iter().any(|&a| a > 0) {
        records.push(BranchRecord { branch: Arc::new(PuiseuxBranch::y_axis(one)), mults: x_powers });
    }
    Ok(records)
}
