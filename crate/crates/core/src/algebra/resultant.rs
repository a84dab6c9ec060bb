use std::fmt;

use super::bipoly::BiPoly;
use super::field::{rat, Field, Rational};
use super::gcd::{div_exact, gcd};
use super::unipoly::UniPoly;
use super::AlgebraError;

type QPoly = BiPoly<Rational>;
type XPoly = UniPoly<Rational>;

/// Local intersection number at the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Intersection {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Intersection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Intersection::Finite(n) => write!(f, "{n}"),
            Intersection::Infinite => write!(f, "inf"),
        }
    }
}

/// Determinant over `Q[x]` by fraction-free (Bareiss) elimination.
fn determinant(mut m: Vec<Vec<XPoly>>) -> XPoly {
    let n = m.len();
    if n == 0 {
        return XPoly::constant(rat(1));
    }
    let mut sign_negative = false;
    let mut prev = XPoly::constant(rat(1));
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign_negative = !sign_negative;
                }
                None => return XPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev).unwrap().expect("Bareiss division is exact");
            }
            m[i][k] = XPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_negative {
        d.neg()
    } else {
        d
    }
}

/// Resultant of `f` and `g` with respect to `y`, as a polynomial in `x`.
pub fn resultant_y(f: &QPoly, g: &QPoly) -> XPoly {
    let (fr, gr) = (f.y_coeffs(), g.y_coeffs());
    let (df, dg) = (fr.len() - 1, gr.len() - 1);
    let n = df + dg;
    if n == 0 {
        return XPoly::constant(rat(1));
    }
    let mut m = vec![vec![XPoly::zero(); n]; n];
    // Coefficients in descending y-degree along each row.
    for i in 0..dg {
        for (k, c) in fr.iter().rev().enumerate() {
            m[i][i + k] = c.clone();
        }
    }
    for i in 0..df {
        for (k, c) in gr.iter().rev().enumerate() {
            m[dg + i][i + k] = c.clone();
        }
    }
    determinant(m)
}

fn ord(p: &XPoly) -> Option<u64> {
    p.coeffs().iter().position(|c| !c.is_zero()).map(|k| k as u64)
}

fn is_power_of_t(p: &XPoly) -> bool {
    p.coeffs().iter().filter(|c| !c.is_zero()).count() == 1
}

/// Intersection multiplicity `[f . g]_O` of two plane curves at the origin.
///
/// Shares a branch through the origin: infinite. Otherwise the coordinates
/// are sheared (`x -> x + l y`) until the projection to the `x`-axis is
/// proper near the `y`-axis and the origin is the only common point on
/// `x = 0`; then the multiplicity is the `x`-order of the `y`-resultant.
pub fn intersection_multiplicity(f: &QPoly, g: &QPoly) -> Result<Intersection, AlgebraError> {
    if f.is_zero() || g.is_zero() {
        return Err(AlgebraError::ZeroInput);
    }
    let d = gcd(f, g);
    let (f, g) = if d.is_constant() {
        (f.clone(), g.clone())
    } else if d.constant_term().is_none() {
        return Ok(Intersection::Infinite);
    } else {
        (div_exact(f, &d).unwrap(), div_exact(g, &d).unwrap())
    };
    if f.constant_term().is_some() || g.constant_term().is_some() {
        return Ok(Intersection::Finite(0));
    }
    for step in 0i64.. {
        let lambda = rat(if step % 2 == 1 { (step + 1) / 2 } else { -step / 2 });
        let (fs, gs) = (f.shear(&lambda), g.shear(&lambda));
        let proper = |p: &QPoly| p.y_coeffs().last().is_some_and(|lc| lc.coeff(0).is_some_and(|c| !c.is_zero()));
        if !proper(&fs) || !proper(&gs) {
            continue;
        }
        let common = fs.at_x_zero().gcd(&gs.at_x_zero()).expect("rational arithmetic never splits");
        if !is_power_of_t(&common) {
            continue;
        }
        let r = resultant_y(&fs, &gs);
        return Ok(Intersection::Finite(ord(&r).expect("coprime polynomials have nonzero resultant")));
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> QPoly {
        QPoly::x()
    }
    fn y() -> QPoly {
        QPoly::y()
    }

    fn im(f: &QPoly, g: &QPoly) -> Intersection {
        intersection_multiplicity(f, g).unwrap()
    }

    #[test]
    fn examples() {
        let cusp = y().pow(2).sub(&x().pow(3));
        assert_eq!(im(&y(), &cusp), Intersection::Finite(3));
        assert_eq!(im(&x(), &y()), Intersection::Finite(1));
        let a = y().sub(&x().pow(2));
        let b = y().add(&x().pow(2));
        assert_eq!(im(&a, &b), Intersection::Finite(2));
    }

    #[test]
    fn degenerate_cases() {
        let cusp = y().pow(2).sub(&x().pow(3));
        assert_eq!(im(&cusp, &cusp.mul(&x())), Intersection::Infinite);
        assert_eq!(im(&x().add(&QPoly::int(1)), &y()), Intersection::Finite(0));
        // x is not proper over the x-axis; the shear handles it.
        assert_eq!(im(&x(), &cusp), Intersection::Finite(2));
        // shared factor away from the origin is ignored
        let u = x().add(&QPoly::int(1));
        assert_eq!(im(&u.mul(&x()), &u.mul(&y())), Intersection::Finite(1));
    }

    #[test]
    fn sylvester_resultant() {
        // Res_y(y, y^2 - x^3) = -x^3
        let r = resultant_y(&y(), &y().pow(2).sub(&x().pow(3)));
        assert_eq!(r, XPoly::monomial(rat(-1), 3));
    }
}
