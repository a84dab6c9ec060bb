use std::fmt;

use super::field::Field;
use super::tower::Split;

/// Dense univariate polynomial, coefficients in ascending degree order.
///
/// The coefficient vector never carries trailing zeros; the zero polynomial
/// has no coefficients at all.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(c: F, k: usize) -> Self {
        let mut coeffs = vec![c.zero_like(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> Option<&F> {
        self.coeffs.get(k)
    }

    pub fn eval(&self, t: &F) -> Option<F> {
        let mut it = self.coeffs.iter().rev();
        let mut acc = it.next()?.clone();
        for c in it {
            acc = acc.times(t).plus(c);
        }
        Some(acc)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(|c| c.negated()).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.times(&c.int_like(i as i64))).collect())
    }

    pub fn monic(&self) -> Result<Self, Split> {
        match self.leading() {
            None => Ok(Self::zero()),
            Some(lc) => Ok(self.scale(&lc.inverse()?)),
        }
    }

    /// Euclidean division. Panics on a zero divisor polynomial.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self), Split> {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.coeffs[dd].inverse()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let zero = inv.zero_like();
        let mut quot = vec![zero; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].times(&inv);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].minus(&c.times(dc));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Result<Self, Split> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b)?;
            a = b;
            // Monic remainders keep rational coefficients small.
            b = r.monic()?;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, other: &Self) -> Result<(Self, Self, Self), Split> {
        let one = self
            .coeffs
            .first()
            .or_else(|| other.coeffs.first())
            .map(|c| c.one_like())
            .expect("xgcd of two zero polynomials");
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::constant(one.clone()), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::constant(one));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let lc_inv = r0.leading().expect("nonzero gcd").inverse()?;
        Ok((r0.scale(&lc_inv), s0.scale(&lc_inv), t0.scale(&lc_inv)))
    }

    /// Exact quotient; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Result<Option<Self>, Split> {
        let (q, r) = self.divrem(d)?;
        Ok(if r.is_zero() { Some(q) } else { None })
    }

    /// Yun's square-free factorization: `(factor, multiplicity)` pairs with monic,
    /// pairwise coprime, square-free, non-constant factors.
    pub fn squarefree(&self) -> Result<Vec<(Self, usize)>, Split> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return Ok(out);
        }
        let f = self.monic()?;
        let df = f.derivative();
        let a0 = f.gcd(&df)?;
        let mut b = f.div_exact(&a0)?.expect("gcd divides");
        let mut c = df.div_exact(&a0)?.expect("gcd divides");
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d)?;
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a)?.expect("gcd divides");
            c = d.div_exact(&a)?.expect("gcd divides");
            d = c.sub(&b.derivative());
            i += 1;
        }
        Ok(out)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> UniPoly<G> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn fmt_with(&self, var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = if c.needs_parens() { format!("({c})") } else { c.to_string() };
            match k {
                0 => write!(f, "{cs}")?,
                1 if c.is_one() => write!(f, "{var}")?,
                1 => write!(f, "{cs}*{var}")?,
                _ if c.is_one() => write!(f, "{var}^{k}")?,
                _ => write!(f, "{cs}*{var}^{k}")?,
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with("t", f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{rat, Rational};

    fn q(c: &[i64]) -> UniPoly<Rational> {
        UniPoly::new(c.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn gcd_and_division() {
        // (t-1)(t+2) and (t-1)(t-3)
        let a = q(&[-2, 1, 1]);
        let b = q(&[3, -4, 1]);
        assert_eq!(a.gcd(&b).unwrap(), q(&[-1, 1]));
        let (g, s, t) = a.xgcd(&b).unwrap();
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn yun_squarefree() {
        // (t-1) (t+1)^2 t^3
        let p = q(&[-1, 1]).mul(&q(&[1, 1]).mul(&q(&[1, 1]))).mul(&q(&[0, 0, 0, 1]));
        let sqf = p.squarefree().unwrap();
        assert_eq!(sqf, vec![(q(&[-1, 1]), 1), (q(&[1, 1]), 2), (q(&[0, 1]), 3)]);
    }

    #[test]
    fn trailing_zeros_trimmed() {
        assert_eq!(q(&[1, 0, 0]).degree(), Some(0));
        assert!(q(&[0, 0]).is_zero());
    }
}
