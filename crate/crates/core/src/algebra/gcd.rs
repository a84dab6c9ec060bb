//! Gcd, exact division and square-free decomposition in `Q[x, y]`.
//!
//! Polynomials are viewed in `Q[x][y]`: a gcd is the gcd of the `x`-contents
//! times the gcd of the primitive parts, the latter obtained from a primitive
//! pseudo-remainder sequence in `y`.

use super::bipoly::BiPoly;
use super::field::Rational;
use super::unipoly::UniPoly;
use super::AlgebraError;

type QPoly = BiPoly<Rational>;
type XPoly = UniPoly<Rational>;

/// Scale so that the lex-leading coefficient (`x > y`) is 1.
pub fn normalize(f: &QPoly) -> QPoly {
    match f.leading() {
        None => QPoly::zero(),
        Some((_, c)) => f.scale(&c.recip()),
    }
}

fn xgcd_uni(a: &XPoly, b: &XPoly) -> XPoly {
    a.gcd(b).expect("rational arithmetic never splits")
}

fn content(rows: &[XPoly]) -> XPoly {
    rows.iter().fold(XPoly::zero(), |g, r| xgcd_uni(&g, r))
}

fn divide_rows(rows: &[XPoly], c: &XPoly) -> Vec<XPoly> {
    rows.iter().map(|r| r.div_exact(c).unwrap().expect("content divides")).collect()
}

fn trim(mut rows: Vec<XPoly>) -> Vec<XPoly> {
    while rows.last().is_some_and(|r| r.is_zero()) {
        rows.pop();
    }
    rows
}

fn primitive(rows: &[XPoly]) -> Vec<XPoly> {
    let c = content(rows);
    if c.is_zero() {
        return Vec::new();
    }
    divide_rows(rows, &c)
}

/// Pseudo-remainder of `a` by `b` with respect to `y`: the remainder of
/// `lc(b)^(deg a - deg b + 1) a`.
fn prem(a: &[XPoly], b: &[XPoly]) -> Vec<XPoly> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut steps = (a.len() + 1).saturating_sub(b.len());
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for row in r.iter_mut() {
            *row = row.mul(lb);
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = r[shift + j].sub(&lr.mul(bj));
        }
        r = trim(r);
        steps -= 1;
    }
    if steps > 0 {
        let scale = pow(lb, steps);
        r = r.iter().map(|row| row.mul(&scale)).collect();
    }
    r
}

fn pow(p: &XPoly, e: usize) -> XPoly {
    (0..e).fold(XPoly::constant(Rational::from_integer(1.into())), |acc, _| acc.mul(p))
}

fn divide_rows_exact(rows: &[XPoly], d: &XPoly) -> Vec<XPoly> {
    rows.iter().map(|r| r.div_exact(d).unwrap().expect("subresultant division is exact")).collect()
}

fn max_x_degree(rows: &[XPoly]) -> usize {
    rows.iter().filter_map(|r| r.degree()).max().unwrap_or(0)
}

/// Newton interpolation through `(t_i, v_i)`.
fn interpolate(points: &[Rational], values: &[Rational]) -> XPoly {
    let mut coef = values.to_vec();
    for j in 1..points.len() {
        for i in (j..points.len()).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&points[i] - &points[i - j]);
        }
    }
    let mut acc = XPoly::zero();
    for i in (0..points.len()).rev() {
        let linear = XPoly::new(vec![-points[i].clone(), Rational::from_integer(1.into())]);
        acc = acc.mul(&linear).add(&XPoly::constant(coef[i].clone()));
    }
    acc
}

/// Gcd of two primitive polynomials from their gcds at integer values of
/// `x`, scaled by the gcd `gamma` of the leading coefficients and
/// interpolated. Values where the degree is not minimal are discarded; the
/// result is checked by division, `None` if the check fails.
fn interpolated_gcd(a: &[XPoly], b: &[XPoly]) -> Option<Vec<XPoly>> {
    let zero = Rational::from_integer(0.into());
    let (la, lb) = (a.last()?, b.last()?);
    let gamma = xgcd_uni(la, lb);
    let needed = gamma.degree().unwrap_or(0) + max_x_degree(a).min(max_x_degree(b)) + 1;
    let at = |rows: &[XPoly], t: &Rational| -> XPoly {
        XPoly::new(rows.iter().map(|r| r.eval(t).unwrap_or_else(|| zero.clone())).collect())
    };
    let mut best = usize::MAX;
    let mut points: Vec<Rational> = Vec::new();
    let mut images: Vec<XPoly> = Vec::new();
    let mut tried = 0;
    for k in 1i64.. {
        if points.len() == needed {
            break;
        }
        tried += 1;
        if tried > 4 * needed + 20 {
            return None;
        }
        let t = Rational::from_integer((if k % 2 == 0 { -(k / 2) } else { k / 2 + 1 }).into());
        let g_t = gamma.eval(&t).unwrap_or_else(|| zero.clone());
        if g_t == zero || la.eval(&t).is_some_and(|v| v == zero) || lb.eval(&t).is_some_and(|v| v == zero) {
            continue;
        }
        let image = xgcd_uni(&at(a, &t), &at(b, &t));
        let d = image.degree().unwrap_or(0);
        if d == 0 {
            return Some(vec![XPoly::constant(Rational::from_integer(1.into()))]);
        }
        if d > best {
            continue;
        }
        if d < best {
            best = d;
            points.clear();
            images.clear();
        }
        points.push(t);
        images.push(image.scale(&g_t));
    }
    let rows: Vec<XPoly> = (0..=best)
        .map(|j| {
            let values: Vec<Rational> =
                images.iter().map(|u| u.coeff(j).cloned().unwrap_or_else(|| zero.clone())).collect();
            interpolate(&points, &values)
        })
        .collect();
    let g = primitive(&trim(rows));
    let divides = |f: &[XPoly]| div_exact(&QPoly::from_y_coeffs(f), &QPoly::from_y_coeffs(&g)).is_some();
    (divides(a) && divides(b)).then_some(g)
}

/// Gcd of two primitive polynomials in `Q[x][y]`, `deg_y a >= deg_y b`, by
/// the subresultant remainder sequence: the divisions by `g h^delta` are
/// exact and keep the growth of the `x`-degrees linear.
fn subresultant_gcd(mut a: Vec<XPoly>, mut b: Vec<XPoly>) -> Vec<XPoly> {
    let one = XPoly::constant(Rational::from_integer(1.into()));
    let (mut g, mut h) = (one.clone(), one.clone());
    loop {
        if b.len() == 1 {
            return vec![one];
        }
        let delta = a.len() - b.len();
        let r = prem(&a, &b);
        if r.is_empty() {
            return primitive(&b);
        }
        let divisor = g.mul(&pow(&h, delta));
        a = b;
        b = divide_rows_exact(&r, &divisor);
        g = a.last().expect("nonzero").clone();
        h = if delta == 0 {
            h
        } else {
            pow(&g, delta).div_exact(&pow(&h, delta - 1)).unwrap().expect("subresultant division is exact")
        };
    }
}

/// Normalized gcd of two polynomials; gcd(0, 0) = 0.
pub fn gcd(f: &QPoly, g: &QPoly) -> QPoly {
    if f.is_zero() {
        return normalize(g);
    }
    if g.is_zero() {
        return normalize(f);
    }
    let (fr, gr) = (f.y_coeffs(), g.y_coeffs());
    let c = xgcd_uni(&content(&fr), &content(&gr));
    let (mut a, mut b) = (primitive(&fr), primitive(&gr));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let pg = if b.len() == 1 {
        vec![XPoly::constant(Rational::from_integer(1.into()))]
    } else {
        interpolated_gcd(&a, &b).unwrap_or_else(|| subresultant_gcd(a, b))
    };
    let rows: Vec<XPoly> = pg.iter().map(|r| r.mul(&c)).collect();
    normalize(&QPoly::from_y_coeffs(&rows))
}

/// Gcd of a nonempty family of nonzero polynomials.
pub fn gcd_many(polys: &[QPoly]) -> Result<QPoly, AlgebraError> {
    if polys.is_empty() || polys.iter().any(|p| p.is_zero()) {
        return Err(AlgebraError::ZeroInput);
    }
    Ok(polys.iter().fold(QPoly::zero(), |g, p| gcd(&g, p)))
}

/// Exact quotient `f / d`, or `None` when `d` does not divide `f`.
pub fn div_exact(f: &QPoly, d: &QPoly) -> Option<QPoly> {
    assert!(!d.is_zero(), "division by zero polynomial");
    if f.is_zero() {
        return Some(QPoly::zero());
    }
    let drows = d.y_coeffs();
    let dd = drows.len() - 1;
    let mut r = f.y_coeffs();
    if r.len() <= dd {
        return None;
    }
    let mut q = vec![XPoly::zero(); r.len() - dd];
    while !r.is_empty() {
        let dr = r.len() - 1;
        if dr < dd {
            return None;
        }
        let (t, rem) = r[dr].divrem(&drows[dd]).unwrap();
        if !rem.is_zero() {
            return None;
        }
        for (j, dj) in drows.iter().enumerate() {
            r[dr - dd + j] = r[dr - dd + j].sub(&t.mul(dj));
        }
        q[dr - dd] = t;
        r = trim(r);
    }
    Some(QPoly::from_y_coeffs(&q))
}

pub fn lcm(f: &QPoly, g: &QPoly) -> QPoly {
    let d = gcd(f, g);
    normalize(&div_exact(&f.mul(g), &d).expect("gcd divides the product"))
}

/// Square-free decomposition `h = c * prod factor^mult`.
///
/// Factors are normalized, pairwise coprime, square-free and non-constant;
/// at most one factor per multiplicity, sorted by multiplicity.
pub fn squarefree_factorization(h: &QPoly) -> Result<Vec<(QPoly, usize)>, AlgebraError> {
    if h.is_zero() {
        return Err(AlgebraError::ZeroInput);
    }
    if h.is_constant() {
        return Err(AlgebraError::ConstantInput);
    }
    let rows = h.y_coeffs();
    let c = content(&rows);
    let pp = QPoly::from_y_coeffs(&divide_rows(&rows, &c));

    let mut by_mult: Vec<QPoly> = Vec::new();
    let mut put = |p: QPoly, i: usize| {
        if by_mult.len() < i {
            by_mult.resize(i, QPoly::constant(Rational::from_integer(1.into())));
        }
        by_mult[i - 1] = by_mult[i - 1].mul(&p);
    };

    for (p, i) in c.squarefree().unwrap() {
        put(QPoly::from_y_coeffs(&[p]), i);
    }

    if !pp.is_constant() {
        // Yun's algorithm with respect to y; valid since pp has no factor free of y.
        let dp = pp.derivative_y();
        let a0 = gcd(&pp, &dp);
        let mut b = div_exact(&pp, &a0).expect("gcd divides");
        let c0 = div_exact(&dp, &a0).expect("gcd divides");
        let mut d = c0.sub(&b.derivative_y());
        let mut i = 1;
        while !b.is_constant() {
            let a = gcd(&b, &d);
            if !a.is_constant() {
                put(a.clone(), i);
            }
            b = div_exact(&b, &a).expect("gcd divides");
            let c = div_exact(&d, &a).expect("gcd divides");
            d = c.sub(&b.derivative_y());
            i += 1;
        }
    }

    Ok(by_mult.into_iter().enumerate().filter(|(_, p)| !p.is_constant()).map(|(i, p)| (normalize(&p), i + 1)).collect())
}

/// `f / gcd(f, f_y, f_x)`: the product of the distinct irreducible factors.
pub fn reduced_part(f: &QPoly) -> Result<QPoly, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroInput);
    }
    if f.is_constant() {
        return Err(AlgebraError::ConstantInput);
    }
    let g = gcd(&gcd(f, &f.derivative_y()), &f.derivative_x());
    Ok(normalize(&div_exact(f, &g).expect("gcd divides")))
}

/// True if `f` is a nonzero constant multiple of `g`.
pub fn associated(f: &QPoly, g: &QPoly) -> bool {
    normalize(f) == normalize(g) && !f.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::rat;

    fn x() -> QPoly {
        QPoly::x()
    }
    fn y() -> QPoly {
        QPoly::y()
    }

    fn a1() -> QPoly {
        y().pow(5).add(&x().pow(7)).pow(2).add(&y().pow(10).mul(&x()))
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_many(&[x().mul(&y()), x().pow(2)]).unwrap(), x());
        let d = x().sub(&y());
        assert_eq!(gcd_many(&[x().pow(2).sub(&y().pow(2)), d.clone()]).unwrap(), d);
        let a2 = x().pow(8).mul(&y().pow(3).add(&x().pow(5)));
        let a3 = y().pow(8).mul(&y().pow(2).sub(&x().pow(3)));
        assert_eq!(gcd_many(&[a1(), a2, a3]).unwrap(), QPoly::int(1));
        assert!(matches!(gcd_many(&[x(), QPoly::zero()]), Err(AlgebraError::ZeroInput)));
    }

    #[test]
    fn interpolation_agrees_with_subresultants() {
        // Leading coefficient in y depends on x, so the images need rescaling.
        let common = x().mul(&y().pow(2)).add(&y()).sub(&x().pow(3));
        let f = common.mul(&y().sub(&x().pow(2)).pow(2)).mul(&x().add(&QPoly::int(1)));
        let g = common.pow(2).mul(&y().add(&x()));
        let want = normalize(&common);
        assert_eq!(gcd(&f, &g), want);
        let rows = |p: &QPoly| primitive(&p.y_coeffs());
        let sub = QPoly::from_y_coeffs(&subresultant_gcd(rows(&g), rows(&f)));
        assert!(associated(&sub, &want));
        assert_eq!(interpolated_gcd(&rows(&g), &rows(&f)).map(|r| normalize(&QPoly::from_y_coeffs(&r))), Some(want));
    }

    #[test]
    fn unlucky_values_are_skipped() {
        // The two lines meet over x = 1, the first value tried.
        assert_eq!(gcd(&y().sub(&x()), &y().sub(&QPoly::int(1))), QPoly::int(1));
        let f = y().sub(&x()).mul(&y().add(&x()));
        assert_eq!(gcd(&f, &y().sub(&x()).mul(&y().sub(&QPoly::int(1)))), normalize(&y().sub(&x())));
    }

    #[test]
    fn squarefree_examples() {
        let h = y().mul(&x().pow(2)).mul(&y().sub(&x()).pow(3));
        let sqf = squarefree_factorization(&h).unwrap();
        assert_eq!(sqf, vec![(y(), 1), (x(), 2), (normalize(&y().sub(&x())), 3)]);
        assert_eq!(squarefree_factorization(&a1()).unwrap(), vec![(normalize(&a1()), 1)]);
        let cusp = y().pow(2).sub(&x().pow(3));
        assert_eq!(squarefree_factorization(&cusp.pow(2)).unwrap(), vec![(normalize(&cusp), 2)]);
        assert!(matches!(squarefree_factorization(&QPoly::int(3)), Err(AlgebraError::ConstantInput)));
    }

    #[test]
    fn reduced_part_examples() {
        assert_eq!(reduced_part(&x().pow(2).mul(&y().pow(3))).unwrap(), x().mul(&y()));
        let cusp = y().pow(2).sub(&x().pow(3));
        let line = y().sub(&x());
        let f = cusp.pow(2).mul(&line);
        assert!(associated(&reduced_part(&f).unwrap(), &cusp.mul(&line)));
    }

    #[test]
    fn division() {
        let f = x().add(&y()).mul(&x().pow(2).sub(&rat(3).into_poly()));
        assert_eq!(div_exact(&f, &x().add(&y())).unwrap(), x().pow(2).sub(&rat(3).into_poly()));
        assert!(div_exact(&f, &x().sub(&y())).is_none());
    }

    trait IntoPoly {
        fn into_poly(self) -> QPoly;
    }
    impl IntoPoly for Rational {
        fn into_poly(self) -> QPoly {
            QPoly::constant(self)
        }
    }
}
