//! Properties over arbitrary small pure complexes.

use hdx_core::cochain::{coboundary, delta_partition, norm};
use hdx_core::cohomology::{cohomology_dim, is_minimal};
use hdx_core::expansion::link_sums;
use hdx_core::rational::{binomial, int};
use hdx_core::spectral::{complement_walk_graph, quadratic_mass, restriction_profile};
use hdx_core::{Cochain, Rational, SimplicialComplex, DEFAULT_BUDGET};
use proptest::prelude::*;

/// Pure 2-complexes on up to 7 vertices, given as a nonempty subset of the 35 triangles.
fn complex2() -> impl Strategy<Value = SimplicialComplex> {
    proptest::collection::vec(any::<bool>(), 35).prop_filter_map("empty", |pick| {
        let mut tops = Vec::new();
        let mut i = 0;
        for a in 0..7u32 {
            for b in a + 1..7 {
                for c in b + 1..7 {
                    if pick[i] {
                        tops.push(vec![a, b, c]);
                    }
                    i += 1;
                }
            }
        }
        SimplicialComplex::from_top_faces(tops, 2).ok()
    })
}

fn cochain(x: &SimplicialComplex, k: usize, bits: &[bool]) -> Cochain {
    Cochain::from_indices(x, k, (0..x.count(k)).filter(|&i| bits[i % bits.len()])).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn calculus_identities(x in complex2(), bits in proptest::collection::vec(any::<bool>(), 1..40)) {
        for k in 0..=2 {
            let total: Rational = x.faces(k).iter().map(|s| x.face_weight(s).unwrap()).sum();
            prop_assert_eq!(total, int(1));
        }
        let f0 = cochain(&x, 0, &bits);
        prop_assert!(coboundary(&x, &coboundary(&x, &f0).unwrap()).unwrap().is_zero());
        let f = cochain(&x, 1, &bits);
        let p = restriction_profile(&x, &f).unwrap();
        prop_assert_eq!(&p.mean, &norm(&x, &f));
        prop_assert_eq!(&p.second_moment, &quadratic_mass(&complement_walk_graph(&x, 1).unwrap(), f.support()));
        let sums = link_sums(&x, &f).unwrap();
        let parts = delta_partition(&x, &f).unwrap();
        let c = int(binomial(3, 2) as u64);
        let eq1 = (int(2) * norm(&x, &parts[1]) + int(2) * norm(&x, &parts[2])) / &c;
        let eq2 = (norm(&x, &parts[2]) + int(3) * norm(&x, &parts[3])) / &c;
        prop_assert_eq!(sums.delta1, eq1);
        prop_assert_eq!(sums.delta2, eq2);
    }

    #[test]
    fn euler_characteristic_matches_betti_numbers(x in complex2()) {
        let b: Vec<i64> = (0..=2).map(|k| cohomology_dim(&x, k).unwrap() as i64).collect();
        // Cohomology here is reduced in degree 0.
        prop_assert_eq!(x.euler_characteristic(), 1 + b[0] - b[1] + b[2]);
    }

    #[test]
    fn minimality_matches_brute_force(x in complex2(), bits in proptest::collection::vec(any::<bool>(), 1..40)) {
        let f = cochain(&x, 1, &bits);
        let n = x.count(0);
        let best = (0u32..1 << n)
            .map(|mask| {
                let g = Cochain::from_indices(&x, 0, (0..n).filter(|i| mask >> i & 1 == 1)).unwrap();
                norm(&x, &f.add(&coboundary(&x, &g).unwrap()).unwrap())
            })
            .min()
            .unwrap();
        prop_assert_eq!(is_minimal(&x, &f, DEFAULT_BUDGET).unwrap(), best == norm(&x, &f));
    }
}
