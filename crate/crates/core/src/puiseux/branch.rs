use std::fmt;
use std::sync::Arc;

use crate::algebra::{BiPoly, Field, Rational, Split, TowerElement, UniPoly};

use super::PuiseuxError;

pub(crate) type TPoly = BiPoly<TowerElement>;

/// One Newton-Puiseux step on the path from the origin to a branch.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartStep {
    /// Identifies the root of the side polynomial that was followed; two
    /// branches took the same step iff they share this id.
    pub child: usize,
    pub m: u32,
    pub n: u32,
    /// Number of conjugate roots represented by this step (degree of the
    /// adjoined level, 1 for a rational root).
    pub conjugates: usize,
    /// Exponent of the term this step contributes to the series.
    pub exponent: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchKind {
    /// Separated: the last chart sees a smooth curve transverse to `X = 0`.
    Leaf,
    /// The branch `Y = 0` of the last chart; its series is finite and exact.
    YZero,
    /// The line `x = 0`.
    YAxis,
}

/// Parametrization of the current chart: `x = gamma T^N`,
/// `y = P(T) + kappa T^M Y`, with `X = T`.
#[derive(Clone, Debug)]
pub(crate) struct ChartParam {
    pub gamma: TowerElement,
    pub big_n: u32,
    pub p: UniPoly<TowerElement>,
    pub kappa: TowerElement,
    pub big_m: u32,
}

impl ChartParam {
    pub fn root(one: TowerElement) -> Self {
        ChartParam { gamma: one.clone(), big_n: 1, p: UniPoly::zero(), kappa: one, big_m: 0 }
    }

    /// Compose with `X = z^v X'^n`, `Y = X'^m (z^u + Y')`.
    pub fn advance(&self, m: u32, n: u32, u: u32, v: u32, z: &TowerElement) -> Self {
        let zv = z.pow(v);
        let mut p = Vec::new();
        for (k, c) in self.p.coeffs().iter().enumerate() {
            let idx = n as usize * k;
            if p.len() <= idx {
                p.resize(idx + 1, z.zero_like());
            }
            p[idx] = c.times(&zv.pow(k as u32));
        }
        let big_m = n * self.big_m + m;
        if p.len() <= big_m as usize {
            p.resize(big_m as usize + 1, z.zero_like());
        }
        let kappa = self.kappa.times(&zv.pow(self.big_m));
        p[big_m as usize] = kappa.times(&z.pow(u));
        ChartParam {
            gamma: self.gamma.times(&zv.pow(self.big_n)),
            big_n: n * self.big_n,
            p: UniPoly::new(p),
            kappa,
            big_m,
        }
    }

    /// Exponent (in `x`) of the term contributed by a step `(m, n)` taken from here.
    pub fn step_exponent(&self, m: u32, n: u32) -> Rational {
        Rational::new((n * self.big_m + m).into(), (n * self.big_n).into())
    }
}

/// A Puiseux series `y = sum c_e (x / gamma)^e`, up to conjugation.
///
/// The `x`-scale `gamma` is 1 unless a ramified step picked a root other than
/// 1; it is kept explicit so the series stays over the tower without taking
/// further roots.
#[derive(Clone, Debug)]
pub struct PuiseuxBranch {
    pub ramification: u32,
    pub x_scale: TowerElement,
    pub terms: Vec<(Rational, TowerElement)>,
    /// Terms are exact for exponents strictly below this bound; `None` means
    /// the series is exact (finite).
    pub truncation: Option<Rational>,
    pub y_axis: bool,
    pub kind: BranchKind,
    pub steps: Vec<ChartStep>,
    /// Number of geometric branches in the conjugacy class.
    pub conjugates: usize,
    leaf: Option<Arc<(TPoly, ChartParam)>>,
}

impl PuiseuxBranch {
    pub(crate) fn y_axis(one: TowerElement) -> Self {
        PuiseuxBranch {
            ramification: 1,
            x_scale: one,
            terms: Vec::new(),
            truncation: None,
            y_axis: true,
            kind: BranchKind::YAxis,
            steps: Vec::new(),
            conjugates: 1,
            leaf: None,
        }
    }

    pub(crate) fn y_zero(param: &ChartParam, steps: Vec<ChartStep>) -> Self {
        let mut b = Self::from_series(param, &param.p, None, steps);
        b.kind = BranchKind::YZero;
        b
    }

    pub(crate) fn leaf(f: TPoly, param: ChartParam, steps: Vec<ChartStep>, extra: u32) -> Result<Self, Split> {
        let (series, exact) = leaf_series(&f, &param, extra)?;
        let truncation =
            if exact { None } else { Some(Rational::new((param.big_m + extra + 1).into(), param.big_n.into())) };
        let mut b = Self::from_series(&param, &series, truncation, steps);
        b.leaf = Some(Arc::new((f, param)));
        Ok(b)
    }

    fn from_series(
        param: &ChartParam,
        series: &UniPoly<TowerElement>,
        truncation: Option<Rational>,
        steps: Vec<ChartStep>,
    ) -> Self {
        let n = param.big_n;
        let terms = series
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (Rational::new((k as i64).into(), (n as i64).into()), c.clone()))
            .collect();
        let conjugates = steps.iter().map(|s| s.conjugates).product();
        PuiseuxBranch {
            ramification: n,
            x_scale: param.gamma.clone(),
            terms,
            truncation,
            y_axis: false,
            kind: BranchKind::Leaf,
            steps,
            conjugates,
            leaf: None,
        }
    }

    /// Recompute the series with `extra` terms past the separating chart.
    pub fn extended(&self, extra: u32) -> Result<PuiseuxBranch, PuiseuxError> {
        match &self.leaf {
            None => Ok(self.clone()),
            Some(data) => {
                let (f, param) = (&data.0, &data.1);
                PuiseuxBranch::leaf(f.clone(), param.clone(), self.steps.clone(), extra).map_err(PuiseuxError::from)
            }
        }
    }

    /// `y(T)` with `x = x_scale * T^ramification`, as a polynomial in `T`.
    pub fn series_in_t(&self) -> UniPoly<TowerElement> {
        let n = self.ramification as i64;
        let mut coeffs: Vec<TowerElement> = Vec::new();
        for (e, c) in &self.terms {
            let k = (e * Rational::from_integer(n.into())).to_integer();
            let k: usize = k.try_into().expect("nonnegative exponent");
            if coeffs.len() <= k {
                coeffs.resize(k + 1, c.zero_like());
            }
            coeffs[k] = c.clone();
        }
        UniPoly::new(coeffs)
    }

    /// Exponent of the first term, `None` for the zero series.
    pub fn first_exponent(&self) -> Option<&Rational> {
        self.terms.first().map(|(e, _)| e)
    }
}

impl fmt::Display for PuiseuxBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y_axis {
            return write!(f, "x = 0");
        }
        let x = if self.x_scale.is_one() { "x".to_string() } else { format!("(x/({}))", self.x_scale) };
        write!(f, "y = ")?;
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let cs = if c.needs_parens() { format!("({c})") } else { c.to_string() };
            if e.is_integer() {
                write!(f, "{cs}*{x}^{e}")?;
            } else {
                write!(f, "{cs}*{x}^({e})")?;
            }
        }
        if let Some(t) = &self.truncation {
            write!(f, " + O({x}^({t}))")?;
        }
        Ok(())
    }
}

/// A conjugacy class of branches together with its multiplicity in each
/// generator and, in the last entry, in the fixed part.
#[derive(Clone, Debug)]
pub struct BranchRecord {
    pub branch: Arc<PuiseuxBranch>,
    pub mults: Vec<u32>,
}

fn truncate(p: &UniPoly<TowerElement>, order: usize) -> UniPoly<TowerElement> {
    UniPoly::new(p.coeffs().iter().take(order + 1).cloned().collect())
}

/// Solve `f(X, h(X)) = 0` modulo `X^(order+1)` at a separated chart, and
/// return `y(T)` together with an exactness flag.
fn leaf_series(f: &TPoly, param: &ChartParam, order: u32) -> Result<(UniPoly<TowerElement>, bool), Split> {
    let template = f.sample().expect("nonzero").clone();
    let exact = f.terms().all(|(e, _)| e.1 >= 1);
    let mut h = UniPoly::zero();
    if !exact {
        let inv = f.coeff(0, 1).expect("separated chart has a linear y-term").inverse()?;
        let ord = order as usize;
        let b_max = f.degree_y().unwrap() as usize;
        for _ in 0..order {
            let mut powers = vec![UniPoly::constant(template.one_like())];
            for b in 1..=b_max {
                powers.push(truncate(&powers[b - 1].mul(&h), ord));
            }
            let mut residual = UniPoly::zero();
            for (&(a, b), c) in f.terms() {
                if a as usize > ord {
                    continue;
                }
                let shifted = UniPoly::monomial(c.clone(), a as usize).mul(&powers[b as usize]);
                residual = residual.add(&shifted);
            }
            h = truncate(&h.sub(&residual.scale(&inv)), ord);
        }
    }
    let tail = UniPoly::monomial(param.kappa.clone(), param.big_m as usize).mul(&h);
    Ok((param.p.add(&tail), exact))
}

/// Largest exponent up to which some conjugates of `b1` and `b2` agree.
///
/// Both branches must come from the same expansion. For the `x = 0` branch
/// the coordinates are swapped: it becomes the zero series and the other
/// branch `x = (y / c)^(1/e) + ...`, so the contact is `1/e` for a first
/// exponent `e` (1 for the zero series, which is transverse).
pub fn coincidence(b1: &PuiseuxBranch, b2: &PuiseuxBranch) -> Result<Rational, PuiseuxError> {
    match (b1.y_axis, b2.y_axis) {
        (true, true) => return Err(PuiseuxError::NotSeparated),
        (true, false) | (false, true) => {
            let other = if b1.y_axis { b2 } else { b1 };
            return Ok(match other.first_exponent() {
                Some(e) => e.recip(),
                None => Rational::from_integer(1.into()),
            });
        }
        _ => {}
    }
    let (s1, s2) = (&b1.steps, &b2.steps);
    let mut i = 0;
    loop {
        match (s1.get(i), s2.get(i)) {
            (Some(a), Some(b)) if a.child == b.child => i += 1,
            (Some(a), Some(b)) => return Ok(a.exponent.clone().min(b.exponent.clone())),
            (Some(a), None) | (None, Some(a)) => return Ok(a.exponent.clone()),
            (None, None) => return Err(PuiseuxError::NotSeparated),
        }
    }
}
