use std::collections::BTreeMap;
use std::fmt;

use super::field::{rat, Field, Rational};
use super::unipoly::UniPoly;

/// Sparse bivariate polynomial in `x` and `y`.
///
/// Keys are exponent pairs `(a, b)` for `x^a y^b`; zero coefficients are never
/// stored. The map order is lexicographic with `x > y`, so the last entry is
/// the lex-leading term.
#[derive(Clone, Debug, PartialEq)]
pub struct BiPoly<F> {
    terms: BTreeMap<(u32, u32), F>,
}

impl<F: Field> Default for BiPoly<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> BiPoly<F> {
    pub fn zero() -> Self {
        BiPoly { terms: BTreeMap::new() }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), F)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn monomial(c: F, a: u32, b: u32) -> Self {
        Self::from_terms([((a, b), c)])
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn add_term(&mut self, e: (u32, u32), c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = old.plus(&c);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&(u32, u32), &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, a: u32, b: u32) -> Option<&F> {
        self.terms.get(&(a, b))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == (0, 0))
    }

    /// Lex-leading term (`x > y`).
    pub fn leading(&self) -> Option<((u32, u32), &F)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    /// Any coefficient, used as a template for constants.
    pub fn sample(&self) -> Option<&F> {
        self.terms.values().next()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).max()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.1).max()
    }

    /// Order at the origin (lowest total degree); `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).min()
    }

    /// Largest `k` with `x^k` dividing the polynomial.
    pub fn ord_x(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0).min()
    }

    pub fn ord_y(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.1).min()
    }

    pub fn constant_term(&self) -> Option<&F> {
        self.coeff(0, 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        BiPoly { terms: self.terms.iter().map(|(e, c)| (*e, c.negated())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.negated());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &other.terms {
                out.add_term((a1 + a2, b1 + b2), c1.times(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, a)| (*e, a.times(c))))
    }

    pub fn pow(&self, e: u32) -> Self {
        let one = match self.sample() {
            Some(c) => c.one_like(),
            None => return if e == 0 { panic!("0^0") } else { Self::zero() },
        };
        let mut acc = Self::constant(one);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiply by `x^a y^b`.
    pub fn shift(&self, a: u32, b: u32) -> Self {
        BiPoly { terms: self.terms.iter().map(|(&(i, j), c)| ((i + a, j + b), c.clone())).collect() }
    }

    /// Divide by `x^a y^b`; panics if that monomial does not divide.
    pub fn unshift(&self, a: u32, b: u32) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| {
                    assert!(i >= a && j >= b, "monomial does not divide");
                    ((i - a, j - b), c.clone())
                })
                .collect(),
        }
    }

    pub fn derivative_x(&self) -> Self {
        Self::from_terms(
            self.terms.iter().filter(|(e, _)| e.0 > 0).map(|(&(a, b), c)| ((a - 1, b), c.times(&c.int_like(a as i64)))),
        )
    }

    pub fn derivative_y(&self) -> Self {
        Self::from_terms(
            self.terms.iter().filter(|(e, _)| e.1 > 0).map(|(&(a, b), c)| ((a, b - 1), c.times(&c.int_like(b as i64)))),
        )
    }

    /// `f(0, y)` as a univariate polynomial in `y`.
    pub fn at_x_zero(&self) -> UniPoly<F> {
        self.slice_x(0)
    }

    /// Coefficient of `x^a`, as a polynomial in `y`.
    pub fn slice_x(&self, a: u32) -> UniPoly<F> {
        let Some(t) = self.sample() else { return UniPoly::zero() };
        let mut coeffs = Vec::new();
        for (&(i, j), c) in self.terms.range((a, 0)..=(a, u32::MAX)) {
            debug_assert_eq!(i, a);
            coeffs.resize(j as usize + 1, t.zero_like());
            coeffs[j as usize] = c.clone();
        }
        UniPoly::new(coeffs)
    }

    /// Coefficients with respect to `y`: entry `b` is the polynomial in `x`
    /// multiplying `y^b`.
    pub fn y_coeffs(&self) -> Vec<UniPoly<F>> {
        let Some(t) = self.sample() else { return Vec::new() };
        let dy = self.degree_y().unwrap() as usize;
        let mut dense = vec![Vec::<F>::new(); dy + 1];
        for (&(a, b), c) in &self.terms {
            let row = &mut dense[b as usize];
            if row.len() <= a as usize {
                row.resize(a as usize + 1, t.zero_like());
            }
            row[a as usize] = c.clone();
        }
        dense.into_iter().map(UniPoly::new).collect()
    }

    pub fn from_y_coeffs(coeffs: &[UniPoly<F>]) -> Self {
        let mut out = Self::zero();
        for (b, p) in coeffs.iter().enumerate() {
            for (a, c) in p.coeffs().iter().enumerate() {
                out.add_term((a as u32, b as u32), c.clone());
            }
        }
        out
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> BiPoly<G> {
        BiPoly::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    /// Evaluate at `(x0, y0)`.
    pub fn eval(&self, x0: &F, y0: &F) -> F {
        let mut acc = x0.zero_like();
        for (&(a, b), c) in &self.terms {
            acc = acc.plus(&c.times(&x0.pow(a)).times(&y0.pow(b)));
        }
        acc
    }

    /// Substitute `x -> x + lambda * y`.
    pub fn shear(&self, lambda: &F) -> Self {
        let mut out = Self::zero();
        let Some(t) = self.sample() else { return out };
        for (&(a, b), c) in &self.terms {
            // (x + l y)^a = sum_k C(a,k) x^(a-k) l^k y^k
            let mut binom = t.one_like();
            for k in 0..=a {
                out.add_term((a - k, b + k), c.times(&binom).times(&lambda.pow(k)));
                binom = binom
                    .times(&t.int_like((a - k) as i64))
                    .times(&t.int_like(k as i64 + 1).inverse().expect("nonzero integer"));
            }
        }
        out
    }

    /// Swap the roles of `x` and `y`.
    pub fn swap_xy(&self) -> Self {
        BiPoly { terms: self.terms.iter().map(|(&(a, b), c)| ((b, a), c.clone())).collect() }
    }

    pub fn fmt_with(&self, x: &str, y: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&(a, b), c)) in self.terms.iter().rev().enumerate() {
            let mut parts = Vec::new();
            let rational = c.to_rational();
            let negative = rational.as_ref().is_some_and(|q| q < &rat(0));
            let magnitude = if negative { c.negated() } else { c.clone() };
            if i > 0 {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            } else if negative {
                write!(f, "-")?;
            }
            if !magnitude.is_one() || (a, b) == (0, 0) {
                parts.push(if magnitude.needs_parens() && (a, b) != (0, 0) {
                    format!("({magnitude})")
                } else {
                    magnitude.to_string()
                });
            }
            for (v, e) in [(x, a), (y, b)] {
                match e {
                    0 => {}
                    1 => parts.push(v.to_string()),
                    _ => parts.push(format!("{v}^{e}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Display for BiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with("x", "y", f)
    }
}

impl BiPoly<Rational> {
    pub fn x() -> Self {
        Self::monomial(rat(1), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(rat(1), 0, 1)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(rat(n))
    }
}
