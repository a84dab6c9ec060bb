use crate::algebra::{BiPoly, Field, UniPoly};

use super::PuiseuxError;

/// One edge of the lower-left boundary of a Newton polygon.
///
/// `start` is the end closer to the x-axis (larger x-exponent), `end` the one
/// closer to the y-axis. The edge has lattice width `width = start.0 - end.0`
/// and height `height = end.1 - start.1`; a branch cut out by it looks like
/// `y ~ c x^(width / height)`.
#[derive(Clone, Debug, PartialEq)]
pub struct NewtonPolygonSide<F> {
    pub start: (u32, u32),
    pub end: (u32, u32),
    pub height: u32,
    pub width: u32,
    /// `sum_k coef(start.0 - m k, start.1 + n k) Z^k` for `k = 0..=g`.
    pub polynomial: UniPoly<F>,
}

impl<F> NewtonPolygonSide<F> {
    /// Number of lattice segments on the edge.
    pub fn lattice_length(&self) -> u32 {
        num_integer::gcd(self.height, self.width)
    }

    /// x-step between consecutive lattice points (numerator of the exponent).
    pub fn m(&self) -> u32 {
        self.width / self.lattice_length()
    }

    /// y-step between consecutive lattice points (denominator of the exponent).
    pub fn n(&self) -> u32 {
        self.height / self.lattice_length()
    }
}

/// Sides of the lower-left Newton polygon of `f`, ordered from the x-axis end
/// (increasing `height / width`).
///
/// A polynomial whose polygon is a single vertex, such as `x^a y^b` times a
/// unit, has no sides.
pub fn newton_polygon<F: Field>(f: &BiPoly<F>) -> Result<Vec<NewtonPolygonSide<F>>, PuiseuxError> {
    if f.is_zero() || f.constant_term().is_some() {
        return Err(PuiseuxError::NotVanishingAtOrigin);
    }
    let support: Vec<(u32, u32)> = f.terms().map(|(e, _)| *e).collect();
    let b_min = support.iter().map(|e| e.1).min().unwrap();
    let a_min = support.iter().map(|e| e.0).min().unwrap();
    let mut current = support.iter().filter(|e| e.1 == b_min).map(|e| e.0).min().map(|a| (a, b_min)).unwrap();
    let mut sides = Vec::new();
    while current.0 > a_min {
        // Next vertex: maximize (a - a') / (b' - b); ties go to the farthest point.
        let mut best: Option<(u32, u32)> = None;
        for &(a, b) in &support {
            if a >= current.0 || b <= current.1 {
                continue;
            }
            best = match best {
                None => Some((a, b)),
                Some((ba, bb)) => {
                    let lhs = (current.0 - a) as u64 * (bb - current.1) as u64;
                    let rhs = (current.0 - ba) as u64 * (b - current.1) as u64;
                    if lhs > rhs || (lhs == rhs && b > bb) {
                        Some((a, b))
                    } else {
                        Some((ba, bb))
                    }
                }
            };
        }
        let next = best.expect("a point with smaller x-exponent exists");
        let width = current.0 - next.0;
        let height = next.1 - current.1;
        let g = num_integer::gcd(width, height);
        let (m, n) = (width / g, height / g);
        let template = f.sample().unwrap();
        let coeffs = (0..=g)
            .map(|k| f.coeff(current.0 - m * k, current.1 + n * k).cloned().unwrap_or_else(|| template.zero_like()))
            .collect();
        sides.push(NewtonPolygonSide { start: current, end: next, height, width, polynomial: UniPoly::new(coeffs) });
        current = next;
    }
    Ok(sides)
}
