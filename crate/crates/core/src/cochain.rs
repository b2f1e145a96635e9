//! F2 cochains and the operators acting on them.
//!
//! A [`Cochain`] is a support bitset over the face list `X(k)` of some
//! complex. The complex is not stored inside the cochain; every operation
//! takes it explicitly, and cochains produced by [`localize`] and
//! [`restrict`] index the face lists of the corresponding link complex
//! (see [`SimplicialComplex::link`]).

use fixedbitset::FixedBitSet;
use num_traits::Zero;

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::gf2::bits_from;
use crate::rational::{binomial, ratio_u128, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    k: usize,
    support: FixedBitSet,
}

impl Cochain {
    pub fn zero(x: &SimplicialComplex, k: usize) -> Self {
        Cochain { k, support: FixedBitSet::with_capacity(x.count(k)) }
    }

    pub fn full(x: &SimplicialComplex, k: usize) -> Self {
        let mut support = FixedBitSet::with_capacity(x.count(k));
        support.insert_range(..);
        Cochain { k, support }
    }

    /// Wraps a support bitset; its length must be `|X(k)|`.
    pub fn from_support(x: &SimplicialComplex, k: usize, support: FixedBitSet) -> Result<Self> {
        if k > x.dim() || support.len() != x.count(k) {
            return Err(Error::DimensionMismatch(format!(
                "support of length {} does not index X({k}) of size {}",
                support.len(),
                x.count(k)
            )));
        }
        Ok(Cochain { k, support })
    }

    pub fn from_indices(x: &SimplicialComplex, k: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let n = x.count(k);
        let support = bits_from(n, indices);
        if support.len() != n {
            return Err(Error::DimensionMismatch(format!("index out of range for X({k})")));
        }
        Self::from_support(x, k, support)
    }

    /// Indicator of the given `k`-faces.
    pub fn from_faces<'a>(x: &SimplicialComplex, k: usize, faces: impl IntoIterator<Item = &'a Face>) -> Result<Self> {
        let mut c = Self::zero(x, k);
        for f in faces {
            if f.len() != k + 1 {
                return Err(Error::DimensionMismatch(format!("face {f} is not a {k}-face")));
            }
            c.support.insert(x.require(f)?);
        }
        Ok(c)
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn support(&self) -> &FixedBitSet {
        &self.support
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.support.contains(idx)
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_clear()
    }

    /// Number of faces in the support.
    pub fn len(&self) -> usize {
        self.support.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.support.ones()
    }

    pub fn faces<'x>(&self, x: &'x SimplicialComplex) -> Vec<&'x Face> {
        self.support.ones().map(|i| &x.faces(self.k)[i]).collect()
    }

    pub fn toggle(&mut self, idx: usize) {
        self.support.toggle(idx);
    }

    /// F2 addition (symmetric difference).
    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        if self.k != other.k || self.support.len() != other.support.len() {
            return Err(Error::DimensionMismatch("adding cochains of different spaces".into()));
        }
        let mut support = self.support.clone();
        support.symmetric_difference_with(&other.support);
        Ok(Cochain { k: self.k, support })
    }

    /// The complement `X(k) \ f`.
    pub fn complement(&self) -> Cochain {
        let mut support = self.support.clone();
        support.toggle_range(..);
        Cochain { k: self.k, support }
    }
}

fn check_below_top(x: &SimplicialComplex, f: &Cochain) -> Result<()> {
    if f.k >= x.dim() {
        return Err(Error::dim(f.k, "coboundary needs k < d"));
    }
    Ok(())
}

/// For each `(k+1)`-face, the number of its facets lying in `f`.
pub fn facet_counts(x: &SimplicialComplex, f: &Cochain) -> Result<Vec<usize>> {
    check_below_top(x, f)?;
    let s = f.k + 2;
    Ok((0..x.faces_of_size(s).len())
        .map(|i| x.facets_of(s, i).iter().filter(|&&j| f.support.contains(j)).count())
        .collect())
}

/// `δf(τ) = Σ_{v ∈ τ} f(τ \ v) mod 2`.
pub fn coboundary(x: &SimplicialComplex, f: &Cochain) -> Result<Cochain> {
    let counts = facet_counts(x, f)?;
    Cochain::from_indices(x, f.k + 1, counts.iter().enumerate().filter(|(_, c)| *c % 2 == 1).map(|(i, _)| i))
}

/// The `(k+1)`-faces containing exactly `i` facets from `f`.
pub fn delta_i(x: &SimplicialComplex, f: &Cochain, i: usize) -> Result<Cochain> {
    check_below_top(x, f)?;
    if i > f.k + 2 {
        return Err(Error::InvalidParameter(format!("i = {i} exceeds k + 2 = {}", f.k + 2)));
    }
    let counts = facet_counts(x, f)?;
    Cochain::from_indices(x, f.k + 1, counts.iter().enumerate().filter(|(_, c)| **c == i).map(|(j, _)| j))
}

/// All of `δ_0(f), …, δ_{k+2}(f)` from a single pass.
pub fn delta_partition(x: &SimplicialComplex, f: &Cochain) -> Result<Vec<Cochain>> {
    let counts = facet_counts(x, f)?;
    let mut parts: Vec<Cochain> = (0..=f.k + 2).map(|_| Cochain::zero(x, f.k + 1)).collect();
    for (j, c) in counts.into_iter().enumerate() {
        parts[c].support.insert(j);
    }
    Ok(parts)
}

/// Sum of the cover counts over the support; `‖f‖` is this over
/// `x.weight_denominator(k + 1)`.
pub fn weight_units(x: &SimplicialComplex, f: &Cochain) -> u128 {
    f.support.ones().map(|i| x.cover(f.k + 1, i) as u128).sum()
}

/// `‖f‖ = Pr_{σ ~ P_k}[f(σ) ≠ 0]`, exact.
pub fn norm(x: &SimplicialComplex, f: &Cochain) -> Rational {
    ratio_u128(weight_units(x, f), x.weight_denominator(f.k + 1))
}

/// Localization `f_σ(τ) = f(σ ∪ τ)`, a `(k - |σ|)`-cochain on `X_σ`.
pub fn localize(x: &SimplicialComplex, f: &Cochain, sigma: &Face) -> Result<Cochain> {
    if sigma.len() > f.k {
        return Err(Error::dim(sigma.dim(), "localization needs |σ| ≤ k"));
    }
    let link = x.link(sigma)?;
    let lx = link.complex();
    let j = f.k - sigma.len();
    let fk = x.faces(f.k);
    let ones = lx.faces(j).iter().enumerate().filter_map(|(i, tau)| {
        let idx = x.index_of(&sigma.union(tau))?;
        debug_assert_eq!(fk[idx].len(), f.k + 1);
        f.support.contains(idx).then_some(i)
    });
    Cochain::from_indices(lx, j, ones)
}

/// Restriction `f^σ = f ∩ X_σ(k)`, a `k`-cochain on `X_σ`.
pub fn restrict(x: &SimplicialComplex, f: &Cochain, sigma: &Face) -> Result<Cochain> {
    if f.k + sigma.len() > x.dim() {
        return Err(Error::dim(f.k, "restriction needs k + |σ| ≤ d"));
    }
    let link = x.link(sigma)?;
    let lx = link.complex();
    let ones = lx
        .faces(f.k)
        .iter()
        .enumerate()
        .filter_map(|(i, tau)| x.index_of(tau).filter(|&idx| f.support.contains(idx)).map(|_| i));
    Cochain::from_indices(lx, f.k, ones)
}

/// Mutual weight `‖(f, g)‖ = Pr[f(σ_k) ≠ 0 ∧ g(σ_ℓ) ≠ 0]`, where `σ_ℓ` is a
/// uniform `ℓ`-subface of `σ_k ~ P_k`.
pub fn mutual_norm(x: &SimplicialComplex, f: &Cochain, g: &Cochain) -> Result<Rational> {
    if g.k >= f.k {
        return Err(Error::DimensionMismatch(format!("mutual weight needs ℓ = {} < k = {}", g.k, f.k)));
    }
    let (k, l) = (f.k, g.k);
    let mut units: u128 = 0;
    for i in f.support.ones() {
        let face = &x.faces(k)[i];
        let hits = subsets(face.vertices(), l + 1)
            .filter(|sub| x.index_of(sub).is_some_and(|j| g.support.contains(j)))
            .count() as u128;
        units += hits * x.cover(k + 1, i) as u128;
    }
    Ok(ratio_u128(units, x.weight_denominator(k + 1) * binomial(k + 1, l + 1)))
}

/// `Pr[ρ = σ ∧ τ \ σ ∈ g]` where `τ ~ P_{|σ|+j}` and `ρ` is a uniform
/// `|σ|`-vertex subface of `τ`; `g` is a `j`-cochain on the link `X_σ`.
///
/// Equals `P(σ) · ‖g‖_{X_σ}`.
pub fn link_joint_norm(x: &SimplicialComplex, sigma: &Face, g: &Cochain) -> Result<Rational> {
    let link = x.link(sigma)?;
    let lx = link.complex();
    if g.k > lx.dim() || g.support.len() != lx.count(g.k) {
        return Err(Error::DimensionMismatch(format!("{}-cochain does not live on the link of {sigma}", g.k)));
    }
    let size = sigma.len() + g.k + 1;
    let mut units: u128 = 0;
    for i in g.support.ones() {
        let tau = sigma.union(&lx.faces(g.k)[i]);
        units += x.cover_of(&tau).expect("link faces lift to the parent") as u128;
    }
    if units.is_zero() {
        return Ok(Rational::zero());
    }
    Ok(ratio_u128(units, x.weight_denominator(size) * binomial(size, sigma.len())))
}

/// The `size`-subsets of `vertices` (sorted) in lexicographic order.
pub(crate) fn subsets(vertices: &[u32], size: usize) -> impl Iterator<Item = Face> + '_ {
    let n = vertices.len();
    let mut idx: Option<Vec<usize>> = (size <= n).then(|| (0..size).collect());
    std::iter::from_fn(move || {
        let cur = idx.as_mut()?;
        let face = Face::from_sorted(cur.iter().map(|&i| vertices[i]).collect());
        match (0..size).rev().find(|&i| cur[i] < n - size + i) {
            Some(i) => {
                cur[i] += 1;
                for j in i + 1..size {
                    cur[j] = cur[j - 1] + 1;
                }
            }
            None => idx = None,
        }
        Some(face)
    })
}
