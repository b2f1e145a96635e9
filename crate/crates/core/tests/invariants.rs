//! Structural invariants checked exhaustively or on seeded samples.

mod oracle;

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use hdx_core::balance::{balance_profile, check_dense_face_bound, dense_hierarchy, verify_inheritance};
use hdx_core::cochain::{coboundary, norm};
use hdx_core::cohomology::{cohomology_classes, is_locally_minimal, is_minimal};
use hdx_core::expansion::{coboundary_expansion, delta1_ratio, min_link_coboundary_expansion};
use hdx_core::generators::{complete_complex, cycle, linial_meshulam, rp2_six, torus_seven};
use hdx_core::rational::{int, ExtRational};
use hdx_core::rng::SeededStream;
use hdx_core::spectral::{edge_bounds, local_spectral_lambda, underlying_graph};
use hdx_core::{Cochain, Face, Rational, SimplicialComplex, Verdict, DEFAULT_BUDGET};
use num_traits::{One, Zero};
use oracle::{q, Naive};

fn naive(x: &SimplicialComplex) -> Naive {
    Naive::new(x.top_faces().iter().map(|f| f.vertices().to_vec()).collect())
}

#[test]
fn link_weights_match_conditional_probabilities() {
    for x in [complete_complex(6, 3).unwrap(), rp2_six(), torus_seven()] {
        let o = naive(&x);
        for size in 1..x.dim() + 1 {
            for sigma in x.faces_of_size(size) {
                let link = x.link(sigma).unwrap();
                for j in 0..=link.complex().dim() {
                    let mut total = Rational::zero();
                    for tau in link.complex().faces(j) {
                        let w = link.complex().face_weight(tau).unwrap();
                        assert_eq!(w, link.conditional_weight(tau).unwrap());
                        assert_eq!(w, o.link_weight(sigma.vertices(), tau.vertices()));
                        total += w;
                    }
                    assert!(total.is_one());
                }
            }
        }
    }
}

#[test]
fn single_faces_have_optimal_delta1() {
    for n in 5..=8 {
        for d in 2..=3 {
            let x = complete_complex(n, d).unwrap();
            for k in 0..d {
                let f = Cochain::from_indices(&x, k, [x.count(k) / 2]).unwrap();
                // n-k-1 completions, each a (k+1)-face with exactly one facet in f.
                let lhs = q((n - k - 1) as u128, oracle::choose(n, k + 2));
                let rhs = q(1, oracle::choose(n, k + 1));
                assert_eq!(delta1_ratio(&x, &f).unwrap(), lhs / rhs);
                assert_eq!(delta1_ratio(&x, &f).unwrap(), int(k as u64 + 2));
            }
        }
    }
}

#[test]
fn invariants_survive_relabelling() {
    let x = rp2_six();
    let y = x.relabel(|v| 100 - 3 * v).unwrap();
    assert_eq!(x.euler_characteristic(), y.euler_characteristic());
    let lx = local_spectral_lambda(&x).unwrap();
    let ly = local_spectral_lambda(&y).unwrap();
    assert!((lx.lambda_one_sided - ly.lambda_one_sided).abs() < 1e-12);
    let bx = min_link_coboundary_expansion(&x, 1, DEFAULT_BUDGET).unwrap();
    let by = min_link_coboundary_expansion(&y, 1, DEFAULT_BUDGET).unwrap();
    assert_eq!(bx.beta, by.beta);
    let wx: BTreeSet<Rational> =
        cohomology_classes(&x, 1, DEFAULT_BUDGET).unwrap().into_iter().map(|c| c.weight).collect();
    let wy: BTreeSet<Rational> =
        cohomology_classes(&y, 1, DEFAULT_BUDGET).unwrap().into_iter().map(|c| c.weight).collect();
    assert_eq!(wx, wy);
}

/// `‖δf‖ / dist(f, B^k)` by enumerating every cochain and every coboundary.
fn brute_expansion(x: &SimplicialComplex, k: usize) -> ExtRational {
    let n = x.count(k);
    let m = if k == 0 { 0 } else { x.count(k - 1) };
    let boundaries: Vec<FixedBitSet> = if k == 0 {
        vec![FixedBitSet::with_capacity(n), Cochain::full(x, 0).support().clone()]
    } else {
        (0u64..1 << m)
            .map(|mask| {
                let g = Cochain::from_indices(x, k - 1, (0..m).filter(|i| mask >> i & 1 == 1)).unwrap();
                coboundary(x, &g).unwrap().support().clone()
            })
            .collect()
    };
    let mut best = ExtRational::Infinite;
    for mask in 0u64..1 << n {
        let f = Cochain::from_indices(x, k, (0..n).filter(|i| mask >> i & 1 == 1)).unwrap();
        if boundaries.contains(f.support()) {
            continue;
        }
        let dist = boundaries
            .iter()
            .map(|b| {
                let mut s = f.support().clone();
                s.symmetric_difference_with(b);
                norm(x, &Cochain::from_support(x, k, s).unwrap())
            })
            .min()
            .unwrap();
        let r = ExtRational::ratio(&norm(x, &coboundary(x, &f).unwrap()), &dist);
        if r < best {
            best = r;
        }
    }
    best
}

#[test]
fn expansion_matches_brute_force_and_witness() {
    let cases = [
        (complete_complex(4, 2).unwrap(), 0),
        (complete_complex(4, 2).unwrap(), 1),
        (complete_complex(5, 2).unwrap(), 0),
        (cycle(5).unwrap(), 0),
        (cycle(6).unwrap(), 0),
        (rp2_six().link(&Face::vertex(0)).unwrap().complex().clone(), 0),
    ];
    for (x, k) in cases {
        let e = coboundary_expansion(&x, k, DEFAULT_BUDGET).unwrap();
        assert_eq!(e.value, brute_expansion(&x, k));
        let w = e.witness.unwrap();
        assert_eq!(Some(norm(&x, &w)), e.distance);
        assert_eq!(Some(norm(&x, &coboundary(&x, &w).unwrap())), e.delta_norm);
        assert!(is_minimal(&x, &w, DEFAULT_BUDGET).unwrap());
    }
}

#[test]
fn minimal_implies_locally_minimal() {
    let mut rng = SeededStream::new(21);
    for x in [rp2_six(), complete_complex(6, 2).unwrap(), torus_seven()] {
        let mut seen = 0;
        for _ in 0..60 {
            let size = 1 + rng.below(5) as usize;
            let f = rng.cochain_of_size(&x, 1, size);
            if is_minimal(&x, &f, DEFAULT_BUDGET).unwrap() {
                seen += 1;
                assert!(is_locally_minimal(&x, &f, DEFAULT_BUDGET).unwrap());
            }
        }
        assert!(seen > 0);
        for class in cohomology_classes(&x, 1, DEFAULT_BUDGET).unwrap() {
            for f in &class.minimal_elements {
                assert!(is_locally_minimal(&x, f, DEFAULT_BUDGET).unwrap());
            }
        }
    }
}

#[test]
fn edge_bounds_hold_on_every_link_subset() {
    for x in [complete_complex(6, 2).unwrap(), rp2_six(), torus_seven(), complete_complex(6, 3).unwrap()] {
        for size in 0..x.dim() {
            for idx in 0..x.faces_of_size(size).len() {
                let g = underlying_graph(x.link_at(size, idx)).unwrap();
                let lambda = g.spectrum().second().max(0.0);
                let n = g.num_vertices();
                assert!(n <= 20);
                for mask in 0u32..1 << n {
                    let mut a = FixedBitSet::with_capacity(n);
                    a.extend((0..n).filter(|i| mask >> i & 1 == 1));
                    let b = edge_bounds(&g, &a, lambda);
                    assert!(b.e1_holds(1e-9) && b.e2_holds(1e-9), "mask {mask:b}: {b:?}");
                }
            }
        }
    }
}

#[test]
fn perfect_balance_descends() {
    // α_ℓ = 1 forces α_j = 1 for all j < ℓ.
    let mut rng = SeededStream::new(22);
    let mut hits = 0;
    for x in [complete_complex(6, 3).unwrap(), complete_complex(7, 3).unwrap()] {
        for _ in 0..150 {
            let f = rng.mixed_density_cochain(&x, 2);
            if f.is_zero() {
                continue;
            }
            let p = balance_profile(&x, &f).unwrap();
            for l in 1..p.levels.len() {
                if p.levels[l].alpha == ExtRational::one() {
                    hits += 1;
                    assert!(p.levels[..l].iter().all(|lv| lv.alpha == ExtRational::one()));
                }
                let inh = verify_inheritance(&x, &f, l).unwrap();
                assert_ne!(inh.verdict, Verdict::Violated);
            }
        }
        let full = Cochain::full(&x, 2);
        let p = balance_profile(&x, &full).unwrap();
        assert!(p.levels.iter().all(|lv| lv.alpha == ExtRational::one()));
    }
    assert!(hits > 0);
}

#[test]
fn dense_bounds_on_random_complexes() {
    let mut rng = SeededStream::new(23);
    for seed in 0..4 {
        let x = linial_meshulam(8, 2, 0.7, seed).unwrap().complex;
        let lam = local_spectral_lambda(&x).unwrap().lambda_eff();
        let eps = q(9, 10);
        for _ in 0..20 {
            let size = 1 + rng.below(4) as usize;
            let f = rng.cochain_of_size(&x, 1, size);
            let Some(alpha) = balance_profile(&x, &f).unwrap().max_alpha().finite().cloned() else { continue };
            let alpha = alpha.max(Rational::one());
            let h = dense_hierarchy(&x, &f, &(&eps / int(2)), &alpha, &eps).unwrap();
            let r = check_dense_face_bound(&x, &f, &h, lam, lam).unwrap();
            assert!(r.records().all(|c| c.verdict != Verdict::Violated), "{r:#?}");
        }
    }
}
