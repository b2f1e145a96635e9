//! Naive reference computations straight from the definitions, working on
//! sorted vertex lists and the list of top faces only.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use hdx_core::Rational;
use num_bigint::BigInt;
use num_traits::Zero;

pub type Set = Vec<u32>;

pub fn q(n: u128, d: u128) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn choose(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= (n - i) as u128;
        den *= (i + 1) as u128;
    }
    num / den
}

pub fn subsets_of(v: &[u32], size: usize) -> Vec<Set> {
    let n = v.len();
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == size)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).map(|i| v[i]).collect())
        .collect()
}

pub fn is_sub(a: &[u32], b: &[u32]) -> bool {
    a.iter().all(|v| b.contains(v))
}

pub fn union(a: &[u32], b: &[u32]) -> Set {
    let mut u: Set = a.iter().chain(b).copied().collect();
    u.sort_unstable();
    u.dedup();
    u
}

pub struct Naive {
    pub d: usize,
    pub tops: Vec<Set>,
}

impl Naive {
    pub fn new(tops: Vec<Set>) -> Self {
        let d = tops[0].len() - 1;
        Naive { d, tops }
    }

    pub fn cover(&self, s: &[u32]) -> u128 {
        self.tops.iter().filter(|t| is_sub(s, t)).count() as u128
    }

    /// `P(σ)` for a face with `|σ|` vertices.
    pub fn weight(&self, s: &[u32]) -> Rational {
        q(self.cover(s), self.tops.len() as u128 * choose(self.d + 1, s.len()))
    }

    pub fn faces(&self, k: usize) -> BTreeSet<Set> {
        self.tops.iter().flat_map(|t| subsets_of(t, k + 1)).collect()
    }

    pub fn norm(&self, f: &BTreeSet<Set>) -> Rational {
        f.iter().map(|s| self.weight(s)).sum()
    }

    /// For each `(k+1)`-face, how many of its facets lie in `f`.
    pub fn facet_hits(&self, f: &BTreeSet<Set>, k: usize) -> BTreeMap<Set, usize> {
        self.faces(k + 1)
            .into_iter()
            .map(|t| {
                let hits = subsets_of(&t, k + 1).iter().filter(|s| f.contains(*s)).count();
                (t, hits)
            })
            .collect()
    }

    pub fn delta_i(&self, f: &BTreeSet<Set>, k: usize, i: usize) -> BTreeSet<Set> {
        self.facet_hits(f, k).into_iter().filter(|(_, h)| *h == i).map(|(t, _)| t).collect()
    }

    pub fn coboundary(&self, f: &BTreeSet<Set>, k: usize) -> BTreeSet<Set> {
        self.facet_hits(f, k).into_iter().filter(|(_, h)| h % 2 == 1).map(|(t, _)| t).collect()
    }

    /// Weight of `τ` in the link of `σ`: `Pr[τ ∪ σ | σ]` with `τ` a uniform
    /// `|τ|`-subset of the rest of a random top face through `σ`.
    pub fn link_weight(&self, sigma: &[u32], tau: &[u32]) -> Rational {
        let c = self.cover(sigma);
        if c == 0 {
            return Rational::zero();
        }
        q(self.cover(&union(sigma, tau)), c * choose(self.d + 1 - sigma.len(), tau.len()))
    }

    /// `μ(u) = ‖f^u‖`: weight in the link of `u` of the faces of `f` avoiding `u`.
    pub fn mu(&self, u: u32, f: &BTreeSet<Set>) -> Rational {
        f.iter().filter(|t| !t.contains(&u)).map(|t| self.link_weight(&[u], t)).sum()
    }

    /// `‖(f, S)‖`: `σ ~ P_k` in `f` and a uniform `ℓ`-subface in `S`.
    pub fn mutual(&self, f: &BTreeSet<Set>, k: usize, s: &BTreeSet<Set>, l: usize) -> Rational {
        f.iter()
            .map(|t| {
                let hits = subsets_of(t, l + 1).iter().filter(|r| s.contains(*r)).count() as u128;
                self.weight(t) * q(hits, choose(k + 1, l + 1))
            })
            .sum()
    }

    /// `Σ_{σ ∈ X(k-1)} P(σ) ‖δ_j(f_σ)‖_{X_σ}` for the vertex set `f_σ`.
    pub fn link_delta_sum(&self, f: &BTreeSet<Set>, k: usize, j: usize) -> Rational {
        let mut total = Rational::zero();
        for sigma in self.faces(k - 1) {
            let fs: BTreeSet<u32> = f
                .iter()
                .filter(|t| is_sub(&sigma, t))
                .map(|t| *t.iter().find(|v| !sigma.contains(v)).unwrap())
                .collect();
            let edges: BTreeSet<Set> = self
                .faces(k + 1)
                .into_iter()
                .filter(|t| is_sub(&sigma, t))
                .map(|t| t.into_iter().filter(|v| !sigma.contains(v)).collect::<Set>())
                .collect();
            let link_norm: Rational = edges
                .iter()
                .filter(|e| e.iter().filter(|v| fs.contains(v)).count() == j)
                .map(|e| self.link_weight(&sigma, e))
                .sum();
            total += self.weight(&sigma) * link_norm;
        }
        total
    }
}

impl Naive {
    /// `‖f_σ‖` in the link of `σ`.
    pub fn localized(&self, f: &BTreeSet<Set>, sigma: &[u32]) -> Rational {
        f.iter()
            .filter(|t| is_sub(sigma, t))
            .map(|t| {
                let rest: Set = t.iter().copied().filter(|v| !sigma.contains(v)).collect();
                self.link_weight(sigma, &rest)
            })
            .sum()
    }

    /// `E_{u∈σ} ‖(f_{σ\u})^u‖`: faces `ρ ⊇ σ\u` of `f` avoiding `u`, weighed
    /// in the link of `σ` after removing `σ\u`.
    pub fn restricted_mean(&self, f: &BTreeSet<Set>, sigma: &[u32]) -> Rational {
        let mut total = Rational::zero();
        for &u in sigma {
            let base: Set = sigma.iter().copied().filter(|&v| v != u).collect();
            for rho in f.iter().filter(|r| is_sub(&base, r) && !r.contains(&u)) {
                let rest: Set = rho.iter().copied().filter(|v| !base.contains(v)).collect();
                total += self.link_weight(sigma, &rest);
            }
        }
        total / q(sigma.len() as u128, 1)
    }

    /// Double-balance constant in dimension `ell` with `0/0 = 1`, `x/0 = inf` (`None`).
    pub fn alpha(&self, f: &BTreeSet<Set>, ell: usize) -> Option<Rational> {
        let mut best = q(0, 1);
        for sigma in self.faces(ell) {
            let a = self.localized(f, &sigma);
            let b = self.restricted_mean(f, &sigma);
            if b.is_zero() {
                if a.is_zero() {
                    best = best.max(q(1, 1));
                    continue;
                }
                return None;
            }
            best = best.max(a / b);
        }
        Some(best)
    }
}

/// GF(2) rank of rows given as bitmasks.
pub fn rank(mut rows: Vec<u128>) -> usize {
    let mut r = 0;
    for bit in 0..128 {
        let Some(p) = (r..rows.len()).find(|&i| rows[i] >> bit & 1 == 1) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i] >> bit & 1 == 1 {
                rows[i] ^= rows[r];
            }
        }
        r += 1;
    }
    r
}

impl Naive {
    /// Rank of the coboundary map from `k`-faces to `(k+1)`-faces.
    pub fn coboundary_rank(&self, k: usize) -> usize {
        let up: Vec<Set> = self.faces(k + 1).into_iter().collect();
        let rows = self
            .faces(k)
            .iter()
            .map(|s| up.iter().enumerate().filter(|(_, t)| is_sub(s, t)).fold(0u128, |m, (i, _)| m | 1 << i))
            .collect();
        rank(rows)
    }

    /// `dim H^k(X; F2)` for `k ≥ 1`.
    pub fn betti(&self, k: usize) -> usize {
        let upper = if k < self.d { self.coboundary_rank(k) } else { 0 };
        self.faces(k).len() - upper - self.coboundary_rank(k - 1)
    }
}
