#![allow(dead_code)]

pub mod blowup;

use basepoints_core::algebra::{rat, BiPoly, Rational};
use basepoints_core::cluster::Cluster;
use rand::Rng;

pub type Q = BiPoly<Rational>;

pub fn x() -> Q {
    Q::x()
}

pub fn y() -> Q {
    Q::y()
}

/// `((y^5 + x^7)^2 + y^10 x, x^8 (y^3 + x^5), y^8 (y^2 - x^3))`.
pub fn golden_ideal() -> Vec<Q> {
    vec![
        y().pow(5).add(&x().pow(7)).pow(2).add(&y().pow(10).mul(&x())),
        x().pow(8).mul(&y().pow(3).add(&x().pow(5))),
        y().pow(8).mul(&y().pow(2).sub(&x().pow(3))),
    ]
}

/// Cluster from 1-based proximity lists: `[]` for the origin, `[p]` for a
/// free point, `[p, q]` for a satellite (either order).
pub fn cluster_from_proximities(prox: &[&[usize]]) -> Cluster {
    let parents: Vec<_> = prox
        .iter()
        .map(|l| match *l {
            [] => (None, None),
            [a] => (Some(a - 1), None),
            [a, b] => (Some(a.max(b) - 1), Some(a.min(b) - 1)),
            _ => panic!("at most two proximities"),
        })
        .collect();
    Cluster::from_parents(&parents).unwrap()
}

/// Random polynomial through the origin with at most `terms` monomials of
/// total degree in `1..=max_degree`.
pub fn random_poly(rng: &mut impl Rng, terms: usize, max_degree: u32) -> Q {
    loop {
        let mut f = Q::zero();
        for _ in 0..rng.gen_range(1..=terms) {
            let d = rng.gen_range(1..=max_degree);
            let a = rng.gen_range(0..=d);
            let c = rng.gen_range(-3i64..=3);
            f = f.add(&Q::monomial(rat(c), a, d - a));
        }
        if !f.is_zero() {
            return f;
        }
    }
}
