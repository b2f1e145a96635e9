//! Exact identities of the cochain calculus, checked against naive oracles.

mod oracle;

use std::collections::BTreeSet;

use hdx_core::cochain::{coboundary, delta_partition, mutual_norm, norm};
use hdx_core::expansion::link_sums;
use hdx_core::generators::{complete_complex, rp2_six, torus_seven};
use hdx_core::rational::{binomial, int};
use hdx_core::rng::SeededStream;
use hdx_core::spectral::{complement_walk_graph, quadratic_mass, restriction_profile};
use hdx_core::{Cochain, Rational, SimplicialComplex};
use num_traits::Zero;
use oracle::{Naive, Set};

fn naive(x: &SimplicialComplex) -> Naive {
    Naive::new(x.top_faces().iter().map(|f| f.vertices().to_vec()).collect())
}

fn as_sets(x: &SimplicialComplex, f: &Cochain) -> BTreeSet<Set> {
    f.faces(x).into_iter().map(|s| s.vertices().to_vec()).collect()
}

fn fixtures() -> Vec<SimplicialComplex> {
    vec![complete_complex(6, 2).unwrap(), complete_complex(7, 3).unwrap(), rp2_six(), torus_seven()]
}

#[test]
fn coboundary_matches_definition_and_squares_to_zero() {
    let mut rng = SeededStream::new(11);
    for x in fixtures() {
        let o = naive(&x);
        for k in 0..x.dim() {
            for _ in 0..40 {
                let f = rng.mixed_density_cochain(&x, k);
                let df = coboundary(&x, &f).unwrap();
                assert_eq!(as_sets(&x, &df), o.coboundary(&as_sets(&x, &f), k));
                if k + 2 <= x.dim() {
                    assert!(coboundary(&x, &df).unwrap().is_zero());
                }
                let parts = delta_partition(&x, &f).unwrap();
                for (i, p) in parts.iter().enumerate() {
                    assert_eq!(as_sets(&x, p), o.delta_i(&as_sets(&x, &f), k, i));
                }
            }
        }
    }
}

#[test]
fn norms_match_definition() {
    let mut rng = SeededStream::new(12);
    for x in fixtures() {
        let o = naive(&x);
        for k in 0..=x.dim() {
            let total: Rational = x.faces(k).iter().map(|s| x.face_weight(s).unwrap()).sum();
            assert_eq!(total, int(1));
            let f = rng.mixed_density_cochain(&x, k);
            assert_eq!(norm(&x, &f), o.norm(&as_sets(&x, &f)));
        }
    }
}

#[test]
fn link_sums_equal_weighted_delta_sums() {
    let mut rng = SeededStream::new(13);
    for x in fixtures() {
        let o = naive(&x);
        for k in 1..x.dim() {
            let c = int(binomial(k + 2, 2) as u64);
            for _ in 0..25 {
                let f = rng.mixed_density_cochain(&x, k);
                let sums = link_sums(&x, &f).unwrap();
                let fs = as_sets(&x, &f);
                assert_eq!(sums.delta1, o.link_delta_sum(&fs, k, 1));
                assert_eq!(sums.delta2, o.link_delta_sum(&fs, k, 2));
                let d: Vec<Rational> = (0..=k + 2).map(|i| o.norm(&o.delta_i(&fs, k, i))).collect();
                let eq1: Rational = (1..=k + 1).map(|i| int((i * (k + 2 - i)) as u64) * &d[i] / &c).sum();
                let eq2: Rational = (2..=k + 2).map(|i| int(binomial(i, 2) as u64) * &d[i] / &c).sum();
                assert_eq!(sums.delta1, eq1);
                assert_eq!(sums.delta2, eq2);
            }
        }
    }
}

#[test]
fn mutual_weight_splits_over_complements() {
    let mut rng = SeededStream::new(14);
    for x in fixtures() {
        let o = naive(&x);
        for k in 1..=x.dim() {
            for l in 0..k {
                let f = rng.mixed_density_cochain(&x, k);
                let s = rng.mixed_density_cochain(&x, l);
                let a = mutual_norm(&x, &f, &s).unwrap();
                let b = mutual_norm(&x, &f, &s.complement()).unwrap();
                assert_eq!(&a + &b, norm(&x, &f));
                assert_eq!(a, o.mutual(&as_sets(&x, &f), k, &as_sets(&x, &s), l));
            }
        }
    }
}

#[test]
fn restriction_moments() {
    let mut rng = SeededStream::new(15);
    for x in fixtures() {
        let o = naive(&x);
        for k in 0..x.dim() {
            let g = complement_walk_graph(&x, k).unwrap();
            for _ in 0..10 {
                let f = rng.mixed_density_cochain(&x, k);
                let p = restriction_profile(&x, &f).unwrap();
                let fs = as_sets(&x, &f);
                let mean: Rational =
                    x.faces(0).iter().map(|v| o.weight(v.vertices()) * o.mu(v.vertices()[0], &fs)).sum();
                assert_eq!(p.mean, mean);
                assert_eq!(p.mean, norm(&x, &f));
                assert_eq!(p.second_moment, quadratic_mass(&g, f.support()));
                assert!(p.variance >= Rational::zero());
            }
        }
    }
}
