//! Properties of values and multiplicities on singular clusters.

use basepoints_core::algebra::{rat, reduced_part, BiPoly, Rational};
use basepoints_core::basepoints::base_points;
use basepoints_core::cluster::{base_change, excesses, proximity_matrix, singular_cluster};
use basepoints_core::puiseux::expand_product;
use proptest::prelude::*;

type Q = BiPoly<Rational>;

/// Polynomials through the origin with small support.
fn poly() -> impl Strategy<Value = Q> {
    prop::collection::vec((0u32..=4, 0u32..=4, -3i64..=3), 1..=4)
        .prop_map(|terms| {
            let mut f = Q::zero();
            for (a, b, c) in terms {
                if a + b > 0 {
                    f = f.add(&Q::monomial(rat(c), a, b));
                }
            }
            f
        })
        .prop_filter("nonzero", |f| !f.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn values_add_under_products(f in poly(), g in poly()) {
        let fg = f.mul(&g);
        let records = expand_product(&[f, g, fg], &Q::int(1)).unwrap();
        let s = singular_cluster(&records).unwrap();
        for p in 0..s.cluster.len() {
            prop_assert_eq!(s.values[2][p], s.values[0][p] + s.values[1][p]);
            prop_assert_eq!(s.multiplicities[2][p], s.multiplicities[0][p] + s.multiplicities[1][p]);
        }
    }

    #[test]
    fn proximity_equalities_on_reduced_curves(f in poly()) {
        let f = reduced_part(&f).unwrap();
        let records = expand_product(&[f], &Q::int(1)).unwrap();
        let s = singular_cluster(&records).unwrap();
        let e = &s.multiplicities[0];
        for p in (0..s.cluster.len()).filter(|&p| s.singular[p]) {
            let proximate: i64 = s.cluster.proximate_points(p).map(|q| e[q]).sum();
            prop_assert_eq!(e[p], proximate, "at point {}", p);
        }
        // Values are multiplicities accumulated along proximities.
        for q in s.cluster.points() {
            let near: i64 = q.proximate_to().map(|r| s.values[0][r]).sum();
            prop_assert_eq!(s.values[0][q.id], e[q.id] + near);
        }
    }

    #[test]
    fn combinations_do_not_drop_below_the_minimum(f1 in poly(), f2 in poly(), g1 in poly(), g2 in poly(), k in -2i64..=2) {
        let h = g1.add(&Q::constant(rat(k))).mul(&f1).add(&g2.mul(&f2));
        prop_assume!(!h.is_zero());
        let r = base_points(&[f1, f2, h]).unwrap();
        if let Some(t) = &r.audit.satellite_completed {
            let v = &t.generator_values;
            for (p, ((&a, &b), &c)) in v[0].iter().zip(&v[1]).zip(&v[2]).enumerate() {
                prop_assert!(c >= a.min(b), "at point {}", p);
                prop_assert!(t.h_values[p] <= t.min_values[p]);
            }
        }
    }

    #[test]
    fn base_points_are_strictly_consistent(f1 in poly(), f2 in poly()) {
        let r = base_points(&[f1, f2]).unwrap();
        prop_assert!(r.multiplicities.iter().all(|&e| e > 0));
        if !r.cluster.is_empty() {
            let p = proximity_matrix(&r.cluster).unwrap();
            let w = base_change(&p, &r.weighted()).unwrap();
            prop_assert_eq!(&w.weights, &r.multiplicities);
            prop_assert!(excesses(&w).unwrap().iter().all(|&rho| rho >= 0));
        }
    }
}
