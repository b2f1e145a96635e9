//! Cocycles, coboundaries and minimum-weight coset search.
//!
//! The coboundary spaces use the augmented convention `X(-1) = {∅}`, so
//! `B^0` is spanned by the all-ones vector (the constants).
//!
//! Every exhaustive scan is charged against a budget of candidate
//! evaluations and reports [`Error::Infeasible`] instead of truncating.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::cochain::{localize, weight_units, Cochain};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::gf2::{complement_basis, gray_walk, kernel, lex_cmp, EchelonBasis};
use crate::rational::{ratio_u128, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceKind {
    Cocycles,
    Coboundaries,
}

/// An F2 basis of `Z^k` or `B^k`.
#[derive(Clone, Debug)]
pub struct CochainSpaceBasis {
    pub k: usize,
    pub kind: SpaceKind,
    pub basis: Vec<Cochain>,
    echelon: EchelonBasis,
}

impl CochainSpaceBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, f: &Cochain) -> bool {
        f.dim() == self.k && self.echelon.contains(f.support())
    }

    pub fn echelon(&self) -> &EchelonBasis {
        &self.echelon
    }

    pub fn vectors(&self) -> Vec<FixedBitSet> {
        self.basis.iter().map(|c| c.support().clone()).collect()
    }

    fn new(x: &SimplicialComplex, k: usize, kind: SpaceKind, vectors: Vec<FixedBitSet>) -> Result<Self> {
        let echelon = EchelonBasis::spanned_by(x.count(k), vectors.iter());
        let basis = echelon.rows().map(|r| Cochain::from_support(x, k, r.clone())).collect::<Result<Vec<_>>>()?;
        Ok(CochainSpaceBasis { k, kind, basis, echelon })
    }
}

fn check_dim(x: &SimplicialComplex, k: usize) -> Result<()> {
    if k > x.dim() {
        return Err(Error::dim(k, "cochain dimension exceeds d"));
    }
    Ok(())
}

/// `B^k = δ(C^{k-1})`, with `C^{-1}` spanned by the empty face.
pub fn coboundary_space(x: &SimplicialComplex, k: usize) -> Result<CochainSpaceBasis> {
    check_dim(x, k)?;
    let n = x.count(k);
    let images =
        (0..x.faces_of_size(k).len()).map(|i| crate::gf2::bits_from(n, x.cofaces_of(k, i).iter().copied())).collect();
    CochainSpaceBasis::new(x, k, SpaceKind::Coboundaries, images)
}

/// `Z^k = ker δ`; `Z^d = C^d`.
pub fn cocycle_space(x: &SimplicialComplex, k: usize) -> Result<CochainSpaceBasis> {
    check_dim(x, k)?;
    let n = x.count(k);
    let vectors = if k == x.dim() {
        (0..n).map(|i| crate::gf2::bits_from(n, [i])).collect()
    } else {
        let m = x.count(k + 1);
        let images: Vec<FixedBitSet> =
            (0..n).map(|i| crate::gf2::bits_from(m, x.cofaces_of(k + 1, i).iter().copied())).collect();
        kernel(&images, m)
    };
    CochainSpaceBasis::new(x, k, SpaceKind::Cocycles, vectors)
}

/// `dim H^k = dim Z^k - dim B^k`.
pub fn cohomology_dim(x: &SimplicialComplex, k: usize) -> Result<usize> {
    Ok(cocycle_space(x, k)?.dim() - coboundary_space(x, k)?.dim())
}

pub(crate) fn charge(span_dim: usize, cosets: u128, budget: u64) -> Result<()> {
    let needed = if span_dim >= 127 { u128::MAX } else { cosets.saturating_mul(1u128 << span_dim) };
    if needed > budget as u128 {
        return Err(Error::Infeasible { needed, budget, context: None });
    }
    Ok(())
}

/// Result of scanning one coset `start + span(basis)`.
#[derive(Clone, Debug)]
pub struct CosetScan {
    /// Minimum weight in cover units (see [`weight_units`]).
    pub min_units: u128,
    /// Every element attaining the minimum, in lexicographic support order.
    pub minimizers: Vec<FixedBitSet>,
}

impl CosetScan {
    pub fn representative(&self) -> &FixedBitSet {
        &self.minimizers[0]
    }
}

/// Exhaustive minimum-weight search over `start + span(basis)` for `k`-cochains.
pub fn scan_coset(
    x: &SimplicialComplex,
    k: usize,
    start: &FixedBitSet,
    basis: &[FixedBitSet],
    budget: u64,
) -> Result<CosetScan> {
    charge(basis.len(), 1, budget)?;
    let covers: Vec<u128> = (0..x.count(k)).map(|i| x.cover(k + 1, i) as u128).collect();
    let mut units: u128 = start.ones().map(|i| covers[i]).sum();
    let mut best = CosetScan { min_units: u128::MAX, minimizers: Vec::new() };
    gray_walk(start, basis, |cur, toggled| {
        if let Some(j) = toggled {
            for i in basis[j].ones() {
                if cur.contains(i) {
                    units += covers[i];
                } else {
                    units -= covers[i];
                }
            }
        }
        if units < best.min_units {
            best.min_units = units;
            best.minimizers.clear();
            best.minimizers.push(cur.clone());
        } else if units == best.min_units {
            best.minimizers.push(cur.clone());
        }
    });
    best.minimizers.sort_by(lex_cmp);
    Ok(best)
}

/// Minimum weight (in cover units) over `start + span(basis)` together with
/// the lexicographically smallest element attaining it. Unlike
/// [`scan_coset`] this keeps a single candidate.
pub fn coset_minimum(
    x: &SimplicialComplex,
    k: usize,
    start: &FixedBitSet,
    basis: &[FixedBitSet],
    budget: u64,
) -> Result<(u128, FixedBitSet)> {
    charge(basis.len(), 1, budget)?;
    let covers: Vec<u128> = (0..x.count(k)).map(|i| x.cover(k + 1, i) as u128).collect();
    let mut units: u128 = start.ones().map(|i| covers[i]).sum();
    let mut best = (u128::MAX, start.clone());
    gray_walk(start, basis, |cur, toggled| {
        if let Some(j) = toggled {
            for i in basis[j].ones() {
                if cur.contains(i) {
                    units += covers[i];
                } else {
                    units -= covers[i];
                }
            }
        }
        if units < best.0 || (units == best.0 && lex_cmp(cur, &best.1).is_lt()) {
            best = (units, cur.clone());
        }
    });
    Ok(best)
}

/// `dist(f, B^k)` or `dist(f, Z^k)` by scanning `f + space`.
pub fn dist_to_space(x: &SimplicialComplex, f: &Cochain, space: &CochainSpaceBasis, budget: u64) -> Result<Rational> {
    let scan = scan_coset(x, f.dim(), f.support(), &space.vectors(), budget)?;
    Ok(ratio_u128(scan.min_units, x.weight_denominator(f.dim() + 1)))
}

/// One coset of `B^k` inside `Z^k`.
#[derive(Clone, Debug)]
pub struct CohomologyClass {
    pub k: usize,
    /// Bitmask over the chosen basis of `H^k`; 0 is the trivial class.
    pub class_id: u64,
    /// Lexicographically smallest minimum-weight element.
    pub representative: Cochain,
    pub weight: Rational,
    /// All minimum-weight elements of the coset.
    pub minimal_elements: Vec<Cochain>,
}

impl CohomologyClass {
    pub fn is_trivial(&self) -> bool {
        self.class_id == 0
    }
}

/// Enumerates `H^k = Z^k / B^k`, with minimum-weight representatives.
///
/// Costs `2^{dim Z^k}` evaluations.
pub fn cohomology_classes(x: &SimplicialComplex, k: usize, budget: u64) -> Result<Vec<CohomologyClass>> {
    let z = cocycle_space(x, k)?;
    let b = coboundary_space(x, k)?;
    charge(z.dim(), 1, budget).map_err(|e| e.with_context(format!("H^{k}")))?;
    let h = complement_basis(b.echelon(), &z.vectors());
    let bvec = b.vectors();
    let n = x.count(k);
    let denom = x.weight_denominator(k + 1);
    let mut classes = Vec::with_capacity(1 << h.len());
    for mask in 0u64..(1u64 << h.len()) {
        let mut start = FixedBitSet::with_capacity(n);
        for (j, hv) in h.iter().enumerate() {
            if mask >> j & 1 == 1 {
                start.symmetric_difference_with(hv);
            }
        }
        let scan = scan_coset(x, k, &start, &bvec, budget)?;
        let minimal_elements =
            scan.minimizers.iter().map(|s| Cochain::from_support(x, k, s.clone())).collect::<Result<Vec<_>>>()?;
        classes.push(CohomologyClass {
            k,
            class_id: mask,
            representative: minimal_elements[0].clone(),
            weight: ratio_u128(scan.min_units, denom),
            minimal_elements,
        });
    }
    Ok(classes)
}

/// `‖f‖ = dist(f, B^k)`.
pub fn is_minimal(x: &SimplicialComplex, f: &Cochain, budget: u64) -> Result<bool> {
    let b = coboundary_space(x, f.dim())?;
    let scan = scan_coset(x, f.dim(), f.support(), &b.vectors(), budget)?;
    Ok(scan.min_units == weight_units(x, f))
}

/// Every vertex localization `f_v` is minimal in its link. A 0-cochain
/// localizes to the empty face, where only `0` is a coboundary, so every
/// 0-cochain is locally minimal.
pub fn is_locally_minimal(x: &SimplicialComplex, f: &Cochain, budget: u64) -> Result<bool> {
    if f.dim() == 0 {
        return Ok(true);
    }
    for v in x.faces(0) {
        let lx = x.link(v)?.complex();
        let fv = localize(x, f, v)?;
        if !is_minimal(lx, &fv, budget).map_err(|e| e.with_context(format!("link of {v}")))? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::{coboundary, norm};
    use crate::complex::Face;
    use crate::generators::{complete_complex, rp2_six};
    use crate::DEFAULT_BUDGET;

    #[test]
    fn b0_is_the_constants() {
        let x = complete_complex(4, 2).unwrap();
        let b0 = coboundary_space(&x, 0).unwrap();
        assert_eq!(b0.dim(), 1);
        assert!(b0.contains(&Cochain::full(&x, 0)));
        assert!(b0.contains(&Cochain::zero(&x, 0)));
    }

    #[test]
    fn projective_plane_first_cohomology() {
        let x = rp2_six();
        assert_eq!(cocycle_space(&x, 1).unwrap().dim(), 6);
        assert_eq!(coboundary_space(&x, 1).unwrap().dim(), 5);
        assert_eq!(cohomology_dim(&x, 1).unwrap(), 1);
        let classes = cohomology_classes(&x, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(classes.len(), 2);
        assert!(classes[0].is_trivial() && classes[0].representative.is_zero());
        let rep = &classes[1].representative;
        assert!(coboundary(&x, rep).unwrap().is_zero());
        assert!(!coboundary_space(&x, 1).unwrap().contains(rep));
        assert!(is_minimal(&x, rep, DEFAULT_BUDGET).unwrap());
        assert!(is_locally_minimal(&x, rep, DEFAULT_BUDGET).unwrap());
        assert_eq!(norm(&x, rep), classes[1].weight);
    }

    #[test]
    fn complete_complexes_have_no_middle_cohomology() {
        for (n, d) in [(5, 2), (6, 3)] {
            let x = complete_complex(n, d).unwrap();
            for k in 1..d {
                assert_eq!(cohomology_dim(&x, k).unwrap(), 0, "Δ({n},{d}) k={k}");
            }
        }
        let x = complete_complex(5, 2).unwrap();
        let classes = cohomology_classes(&x, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(classes.len(), 1);
    }

    #[test]
    fn adding_a_coboundary_breaks_minimality() {
        let x = complete_complex(4, 2).unwrap();
        let e01 = Face::new(vec![0, 1]).unwrap();
        let h = Cochain::from_faces(&x, 1, [&e01]).unwrap();
        let star = coboundary(&x, &Cochain::from_faces(&x, 0, [&Face::vertex(2)]).unwrap()).unwrap();
        let f = h.add(&star).unwrap();
        assert!(norm(&x, &h) < norm(&x, &f));
        assert!(!is_minimal(&x, &f, DEFAULT_BUDGET).unwrap());
        assert!(is_minimal(&x, &Cochain::zero(&x, 1), DEFAULT_BUDGET).unwrap());
        assert!(is_locally_minimal(&x, &Cochain::zero(&x, 1), DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let x = rp2_six();
        let err = cohomology_classes(&x, 1, 10).unwrap_err();
        assert!(err.is_infeasible());
    }
}
