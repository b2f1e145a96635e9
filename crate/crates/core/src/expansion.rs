//! δ₁ ratios, coboundary and cosystolic expansion, and theorem-level checks.
//!
//! Expansion constants are exact minima over all cochains. The scans walk the
//! cosets of the relevant subspace (`B^k` or `Z^k`) in `C^k`: `δ` is
//! constant on each coset, so one coboundary per coset plus a minimum-weight
//! search inside it covers every cochain, `2^{|X(k)|}` evaluations in total.

use fixedbitset::FixedBitSet;
use num_traits::{One, Zero};

use crate::balance::{balance_profile, balance_terms, localized_norms, BalanceProfile, FLOAT_TOL};
use crate::cochain::{coboundary, delta_partition, link_joint_norm, localize, mutual_norm, norm, Cochain};
use crate::cohomology::{
    charge, coboundary_space, cocycle_space, cohomology_classes, coset_minimum, CochainSpaceBasis, CohomologyClass,
};
use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::gf2::{bits_from, complement_basis, gray_walk, lex_cmp};
use crate::rational::{binomial, factorial, format, int, ratio_u128, to_f64, ExtRational, Rational};
use crate::verdict::{fmt_float, CheckRecord, Verdict};

/// Spectral threshold for the near-optimal δ₁ bound:
/// `ε / (d^3 α^{d-1}) · sqrt(ε / (3 d!))`.
pub fn lambda_threshold_near_optimal(d: usize, alpha: f64, eps: f64) -> f64 {
    lambda_threshold_with(d, alpha.powi(d as i32 - 1), eps, 3.0 * factorial(d) as f64)
}

/// Spectral threshold for positive δ₁:
/// `ε / (d^3 α^{d-1}) · sqrt(ε / (d+1)!)`.
pub fn lambda_threshold_positive(d: usize, alpha: f64, eps: f64) -> f64 {
    lambda_threshold_with(d, alpha.powi(d as i32 - 1), eps, factorial(d + 1) as f64)
}

fn lambda_threshold_with(d: usize, alpha_pow: f64, eps: f64, denom: f64) -> f64 {
    eps / ((d.pow(3) as f64) * alpha_pow) * (eps / denom).sqrt()
}

/// `‖δ₁(f)‖ / ‖f‖`.
pub fn delta1_ratio(x: &SimplicialComplex, f: &Cochain) -> Result<Rational> {
    if f.is_zero() {
        return Err(Error::ZeroCochain);
    }
    let parts = delta_partition(x, f)?;
    Ok(norm(x, &parts[1]) / norm(x, f))
}

/// A minimum of `‖δf‖ / dist(f, S)` over cochains outside a subspace `S`.
#[derive(Clone, Debug)]
pub struct ExpansionConstant {
    pub k: usize,
    /// `+inf` when every cochain lies in the subspace.
    pub value: ExtRational,
    /// Lexicographically smallest minimum-weight cochain of the optimal coset.
    pub witness: Option<Cochain>,
    pub delta_norm: Option<Rational>,
    pub distance: Option<Rational>,
}

fn min_ratio_outside(
    x: &SimplicialComplex,
    k: usize,
    space: &CochainSpaceBasis,
    budget: u64,
) -> Result<ExpansionConstant> {
    if k >= x.dim() {
        return Err(Error::dim(k, "expansion needs k < d"));
    }
    let n = x.count(k);
    charge(n, 1, budget)?;
    let standard: Vec<FixedBitSet> = (0..n).map(|i| bits_from(n, [i])).collect();
    let quotient = complement_basis(space.echelon(), &standard);
    let sub = space.vectors();
    let m = x.count(k + 1);
    let up_covers: Vec<u128> = (0..m).map(|i| x.cover(k + 2, i) as u128).collect();
    let images: Vec<FixedBitSet> = quotient
        .iter()
        .map(|q| {
            let f = Cochain::from_support(x, k, q.clone()).expect("length matches");
            coboundary(x, &f).expect("k < d").support().clone()
        })
        .collect();
    let mut delta = FixedBitSet::with_capacity(m);
    // Best ratio as (delta units, distance units, witness).
    let mut best: Option<(u128, u128, FixedBitSet)> = None;
    let mut failure = None;
    gray_walk(&FixedBitSet::with_capacity(n), &quotient, |cur, toggled| {
        let Some(j) = toggled else { return };
        if failure.is_some() {
            return;
        }
        delta.symmetric_difference_with(&images[j]);
        let du: u128 = delta.ones().map(|i| up_covers[i]).sum();
        let (dist, min_elem) = match coset_minimum(x, k, cur, &sub, budget) {
            Ok(r) => r,
            Err(e) => {
                failure = Some(e);
                return;
            }
        };
        let better = match &best {
            None => true,
            Some((bd, bdist, bw)) => {
                // du/dist vs bd/bdist (common per-dimension denominators cancel).
                let (l, r) = (du * bdist, bd * dist);
                l < r || (l == r && lex_cmp(&min_elem, bw).is_lt())
            }
        };
        if better {
            best = Some((du, dist, min_elem));
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let dk = x.weight_denominator(k + 1);
    let dk1 = x.weight_denominator(k + 2);
    Ok(match best {
        None => ExpansionConstant { k, value: ExtRational::Infinite, witness: None, delta_norm: None, distance: None },
        Some((du, dist, w)) => {
            let delta_norm = ratio_u128(du, dk1);
            let distance = ratio_u128(dist, dk);
            ExpansionConstant {
                k,
                value: ExtRational::ratio(&delta_norm, &distance),
                witness: Some(Cochain::from_support(x, k, w)?),
                delta_norm: Some(delta_norm),
                distance: Some(distance),
            }
        }
    })
}

/// `min_{f ∉ B^k} ‖δf‖ / dist(f, B^k)`.
pub fn coboundary_expansion(x: &SimplicialComplex, k: usize, budget: u64) -> Result<ExpansionConstant> {
    min_ratio_outside(x, k, &coboundary_space(x, k)?, budget)
}

/// The smallest coboundary expansion over the links that localizations of
/// `k`-cochains inhabit: `X_σ` at dimension `k - |σ|` for `1 ≤ |σ| ≤ k`.
#[derive(Clone, Debug)]
pub struct LinkExpansion {
    pub k: usize,
    pub beta: ExtRational,
    /// Face whose link attains `beta`.
    pub sigma: Option<Face>,
    pub witness: Option<Cochain>,
    /// Per link: face, cochain dimension in the link, expansion.
    pub per_link: Vec<(Face, usize, ExtRational)>,
}

impl LinkExpansion {
    /// Some scanned link has a disconnected-style zero expansion.
    pub fn has_zero(&self) -> bool {
        self.per_link.iter().any(|(_, _, b)| b.finite().is_some_and(|r| r.is_zero()))
    }
}

pub fn min_link_coboundary_expansion(x: &SimplicialComplex, k: usize, budget: u64) -> Result<LinkExpansion> {
    if k >= x.dim() {
        return Err(Error::dim(k, "link expansion is taken for k < d"));
    }
    let mut out = LinkExpansion { k, beta: ExtRational::Infinite, sigma: None, witness: None, per_link: Vec::new() };
    for size in 1..=k {
        for (idx, sigma) in x.faces_of_size(size).iter().enumerate() {
            let link = x.link_at(size, idx);
            let j = k - size;
            let e = coboundary_expansion(link, j, budget).map_err(|e| e.with_context(format!("link of {sigma}")))?;
            out.per_link.push((sigma.clone(), j, e.value.clone()));
            if out.sigma.is_none() || e.value < out.beta {
                out.beta = e.value;
                out.sigma = Some(sigma.clone());
                out.witness = e.witness;
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct CosystolicExpansion {
    pub k: usize,
    /// `min_{f ∉ Z^k} ‖δf‖ / dist(f, Z^k)`.
    pub epsilon: ExpansionConstant,
    /// Minimum weight of a cocycle outside `B^k`; `+inf` when `H^k = 0`.
    pub mu: ExtRational,
    pub mu_witness: Option<Cochain>,
}

pub fn cosystolic_expansion(x: &SimplicialComplex, k: usize, budget: u64) -> Result<CosystolicExpansion> {
    let epsilon = min_ratio_outside(x, k, &cocycle_space(x, k)?, budget)?;
    let classes = cohomology_classes(x, k, budget)?;
    let best = classes.iter().filter(|c| !c.is_trivial()).min_by(|a, b| {
        a.weight.cmp(&b.weight).then_with(|| lex_cmp(a.representative.support(), b.representative.support()))
    });
    Ok(CosystolicExpansion {
        k,
        epsilon,
        mu: best.map_or(ExtRational::Infinite, |c| ExtRational::Finite(c.weight.clone())),
        mu_witness: best.map(|c| c.representative.clone()),
    })
}

/// Quantities behind the dense-face lower bound on `‖δ₁(f)‖`.
#[derive(Clone, Debug)]
pub struct LinkSums {
    /// `Σ_{σ ∈ X(k-1)} ‖(δ₁(f_σ), σ)‖`.
    pub delta1: Rational,
    /// `Σ_{σ ∈ X(k-1)} ‖(δ₂(f_σ), σ)‖`.
    pub delta2: Rational,
}

/// Sums of the per-link `δ₁` and `δ₂` of the vertex sets `f_σ`, `σ ∈ X(k-1)`.
pub fn link_sums(x: &SimplicialComplex, f: &Cochain) -> Result<LinkSums> {
    let k = f.dim();
    if k == 0 || k >= x.dim() {
        return Err(Error::dim(k, "link sums need 1 ≤ k < d"));
    }
    let mut delta1 = Rational::zero();
    let mut delta2 = Rational::zero();
    for sigma in x.faces(k - 1) {
        let fs = localize(x, f, sigma)?;
        if fs.is_zero() {
            continue;
        }
        let lx = x.link(sigma)?.complex();
        let parts = delta_partition(lx, &fs)?;
        delta1 += link_joint_norm(x, sigma, &parts[1])?;
        delta2 += link_joint_norm(x, sigma, &parts[2])?;
    }
    Ok(LinkSums { delta1, delta2 })
}

/// `Σ_{i=lo}^{k+2} c_i ‖δ_i(f)‖` with `c_i = coef(i) / C(k+2, 2)`.
fn weighted_delta_sum(
    x: &SimplicialComplex,
    parts: &[Cochain],
    k: usize,
    lo: usize,
    hi: usize,
    coef: impl Fn(usize) -> u64,
) -> Rational {
    let c = int(binomial(k + 2, 2) as u64);
    (lo..=hi).map(|i| int(coef(i)) * norm(x, &parts[i]) / &c).sum()
}

fn exact_record(name: &str, anchor: &str, lhs: &Rational, rhs: &Rational, holds: bool) -> CheckRecord {
    CheckRecord::new(name, anchor, Verdict::of(holds)).sides(format(lhs), format(rhs)).margin(format(&(rhs - lhs)))
}

fn float_record(name: &str, anchor: &str, lhs: f64, rhs: f64, holds: bool) -> CheckRecord {
    CheckRecord::new(name, anchor, Verdict::of(holds))
        .sides(fmt_float(lhs), fmt_float(rhs))
        .margin(fmt_float(rhs - lhs))
}

/// Checks `‖δ₁(f)‖ ≥ (k+2)‖f‖(1 - (k+1)(λ + η + ‖DENSE_{k-1}‖/‖f‖))` with
/// `DENSE_{k-1} = {σ : ‖f_σ‖ > η}`, and every step it is derived from:
///
/// 1. the two exact link-sum identities in terms of `‖δ_i(f)‖`;
/// 2. `‖δ₁(f)‖ ≥ (k+2)(S₁/2 - k S₂)`;
/// 3. the per-link edge bounds summed over `σ`:
///    `S₁ ≥ 2(1-λ-η)‖(f, SPARSE)‖` and `S₂ ≤ ‖(f, DENSE)‖ + (λ+η)‖(f, SPARSE)‖`;
/// 4. the substituted bound `(k+2)(‖f‖(1-(k+1)(λ+η)) - (k+1)‖(f, DENSE)‖)`,
///    which dominates the final right-hand side.
pub fn check_delta1_dense_bound(
    x: &SimplicialComplex,
    f: &Cochain,
    eta: &Rational,
    lambda: f64,
) -> Result<Vec<CheckRecord>> {
    if f.is_zero() {
        return Err(Error::ZeroCochain);
    }
    if *eta <= Rational::zero() || *eta >= Rational::one() {
        return Err(Error::InvalidParameter(format!("η must lie in (0, 1), got {}", format(eta))));
    }
    let k = f.dim();
    let sums = link_sums(x, f)?;
    let parts = delta_partition(x, f)?;
    let nf = norm(x, f);
    let d1 = norm(x, &parts[1]);
    let mut out = Vec::new();

    let eq1 = weighted_delta_sum(x, &parts, k, 1, k + 1, |i| (i * (k + 2 - i)) as u64);
    out.push(exact_record(
        "link_sum_delta1_identity",
        "link sum of δ₁(f_σ) equals Σ i(k+2-i)/C(k+2,2) ‖δ_i f‖",
        &sums.delta1,
        &eq1,
        sums.delta1 == eq1,
    ));
    let eq2 = weighted_delta_sum(x, &parts, k, 2, k + 2, |i| binomial(i, 2) as u64);
    out.push(exact_record(
        "link_sum_delta2_identity",
        "link sum of δ₂(f_σ) equals Σ C(i,2)/C(k+2,2) ‖δ_i f‖",
        &sums.delta2,
        &eq2,
        sums.delta2 == eq2,
    ));
    let kk = int(k as u64);
    let tail = weighted_delta_sum(x, &parts, k, 2, k + 1, |i| (i * (k + 2 - i)) as u64);
    let doubled = int(2) * &kk * &sums.delta2;
    out.push(exact_record(
        "link_sum_delta2_dominates_tail",
        "2k S₂ ≥ Σ_{i≥2} i(k+2-i)/C(k+2,2) ‖δ_i f‖",
        &tail,
        &doubled,
        doubled >= tail,
    ));
    let k2 = int(k as u64 + 2);
    let composed = &k2 * (&sums.delta1 / int(2) - &kk * &sums.delta2);
    out.push(exact_record("delta1_link_composition", "‖δ₁f‖ ≥ (k+2)(S₁/2 - k S₂)", &composed, &d1, d1 >= composed));

    let local = localized_norms(x, f, k)?;
    let dense_idx: Vec<usize> = (0..local.len()).filter(|&s| local[s] > *eta).collect();
    let dense = Cochain::from_indices(x, k - 1, dense_idx.iter().copied())?;
    let sparse = dense.complement();
    let dense_weight = norm(x, &dense);
    let (f_dense, f_sparse) = (mutual_norm(x, f, &dense)?, mutual_norm(x, f, &sparse)?);
    let (le, lf) = (lambda + to_f64(eta), to_f64(&nf));
    let s1 = to_f64(&sums.delta1);
    let s2 = to_f64(&sums.delta2);
    let b1 = 2.0 * (1.0 - le) * to_f64(&f_sparse);
    out.push(float_record("link_sum_delta1_lower", "S₁ ≥ 2(1-λ-η)‖(f, SPARSE)‖", b1, s1, s1 >= b1 - FLOAT_TOL));
    let b2 = to_f64(&f_dense) + le * to_f64(&f_sparse);
    out.push(float_record(
        "link_sum_delta2_upper",
        "S₂ ≤ ‖(f, DENSE)‖ + (λ+η)‖(f, SPARSE)‖",
        s2,
        b2,
        s2 <= b2 + FLOAT_TOL,
    ));

    let kf = k as f64;
    let substituted = (kf + 2.0) * (lf * (1.0 - (kf + 1.0) * le) - (kf + 1.0) * to_f64(&f_dense));
    let rhs = (kf + 2.0) * lf * (1.0 - (kf + 1.0) * (le + to_f64(&dense_weight) / lf));
    out.push(float_record(
        "dense_bound_substitution",
        "substituted bound dominates the dense-face bound",
        rhs,
        substituted,
        substituted >= rhs - FLOAT_TOL,
    ));

    let d1f = to_f64(&d1);
    let mut main = float_record(
        "delta1_dense_bound",
        "‖δ₁f‖ ≥ (k+2)‖f‖(1 - (k+1)(λ + η + ‖DENSE‖/‖f‖))",
        rhs,
        d1f,
        d1f >= rhs - FLOAT_TOL,
    )
    .witness(format!("|DENSE_k-1| = {}", dense_idx.len()));
    if rhs < 0.0 {
        main = main.detail("right-hand side is negative; the bound is vacuous");
    }
    out.push(main);
    Ok(out)
}

/// How the balance constant enters a δ₁ theorem.
#[derive(Clone, Debug)]
pub enum BalanceAssumption {
    /// A single α for every dimension (from the measured profile when `None`).
    Uniform(Option<Rational>),
    /// One constant per dimension `ℓ = 0, 1, …`; `α^k` becomes `Π_{ℓ<k} α_ℓ`
    /// and `α^{d-1}` becomes `Π_{ℓ≤d-2} max(1, α_ℓ)`.
    PerDimension(Vec<Rational>),
}

struct Resolved {
    label: String,
    alpha_k: Rational,
    alpha_d1: f64,
    unmet: Vec<String>,
}

fn resolve(assumption: &BalanceAssumption, profile: &BalanceProfile, k: usize, d: usize) -> Option<Resolved> {
    let mut unmet = Vec::new();
    match assumption {
        BalanceAssumption::Uniform(given) => {
            let alpha = match given {
                Some(a) => {
                    if profile.max_alpha() > ExtRational::Finite(a.clone()) {
                        unmet.push(format!("balance constant {} exceeds α = {}", profile.max_alpha(), format(a)));
                    }
                    a.clone()
                }
                None => profile.max_alpha().finite()?.clone(),
            };
            Some(Resolved {
                label: format!("alpha = {}", format(&alpha)),
                alpha_k: num_traits::pow(alpha.clone(), k),
                alpha_d1: to_f64(&alpha).powi(d as i32 - 1),
                unmet,
            })
        }
        BalanceAssumption::PerDimension(alphas) => {
            if alphas.len() + 1 < d.max(k + 1) {
                unmet.push("per-dimension constants do not cover every dimension".into());
            }
            for level in &profile.levels {
                let bound = alphas.get(level.ell)?;
                // Compare the raw inequality: the assumed constant may be below 1.
                let terms_hold = level.alpha.finite().is_some_and(|a| a <= bound) || level.local.is_zero();
                if !terms_hold {
                    unmet.push(format!("balance constant {} exceeds α_{} = {}", level.alpha, level.ell, format(bound)));
                }
            }
            let alpha_k = alphas.iter().take(k).fold(Rational::one(), |acc, a| acc * a);
            let alpha_d1 = alphas.iter().take(d.saturating_sub(1)).map(|a| to_f64(a).max(1.0)).product();
            let label = alphas.iter().map(format).collect::<Vec<_>>().join(", ");
            Some(Resolved { label: format!("alpha_l = [{label}]"), alpha_k, alpha_d1, unmet })
        }
    }
}

fn theorem_common(x: &SimplicialComplex, f: &Cochain, eps: &Rational) -> Result<(BalanceProfile, Rational, Rational)> {
    let k = f.dim();
    if k == 0 || k >= x.dim() || x.dim() < 2 {
        return Err(Error::dim(k, "δ₁ theorems need 1 ≤ k < d and d ≥ 2"));
    }
    if *eps <= Rational::zero() || *eps >= Rational::one() {
        return Err(Error::InvalidParameter(format!("ε must lie in (0, 1), got {}", format(eps))));
    }
    let d1 = norm(x, &delta_partition(x, f)?[1]);
    Ok((balance_profile(x, f)?, norm(x, f), d1))
}

/// Small balanced sets expand almost optimally: with
/// `‖f‖ ≤ ε/((k+1)^2 α^k)` and `λ ≤ ε/(d^3 α^{d-1}) sqrt(ε/(3 d!))`,
/// `‖δ₁(f)‖ ≥ (k+2)(1-3ε)‖f‖`.
pub fn check_near_optimal_delta1(
    x: &SimplicialComplex,
    f: &Cochain,
    eps: &Rational,
    lambda_eff: f64,
    assumption: &BalanceAssumption,
) -> Result<CheckRecord> {
    let (profile, nf, d1) = theorem_common(x, f, eps)?;
    let k = f.dim();
    let rhs = int(k as u64 + 2) * (Rational::one() - int(3) * eps) * &nf;
    let anchor = "small balanced sets have ‖δ₁f‖ ≥ (k+2)(1-3ε)‖f‖";
    let rec = CheckRecord::new("near_optimal_delta1", anchor, Verdict::Verified)
        .sides(format(&rhs), format(&d1))
        .margin(format(&(&d1 - &rhs)));
    let Some(r) = resolve(assumption, &profile, k, x.dim()) else {
        return Ok(CheckRecord { verdict: Verdict::HypothesisNotMet, ..rec }.detail("balance constant is infinite"));
    };
    let mut unmet = r.unmet;
    let cap = eps / (int(((k + 1) * (k + 1)) as u64) * &r.alpha_k);
    if nf > cap {
        unmet.push(format!("‖f‖ = {} exceeds {}", format(&nf), format(&cap)));
    }
    let thr = lambda_threshold_with(x.dim(), r.alpha_d1, to_f64(eps), 3.0 * factorial(x.dim()) as f64);
    if lambda_eff > thr {
        unmet.push(format!("λ = {} exceeds threshold {}", fmt_float(lambda_eff), fmt_float(thr)));
    }
    Ok(finish(rec, d1 >= rhs, r.label, unmet))
}

/// Larger balanced sets still expand: with `‖f‖ ≤ (1-ε)/((k+1) α^k)` and
/// `λ ≤ ε/(d^3 α^{d-1}) sqrt(ε/(d+1)!)`, `‖δ₁(f)‖ > 0`.
pub fn check_positive_delta1(
    x: &SimplicialComplex,
    f: &Cochain,
    eps: &Rational,
    lambda_eff: f64,
    assumption: &BalanceAssumption,
) -> Result<CheckRecord> {
    let (profile, nf, d1) = theorem_common(x, f, eps)?;
    let k = f.dim();
    let rec = CheckRecord::new("positive_delta1", "small balanced sets have ‖δ₁f‖ > 0", Verdict::Verified)
        .sides("0", format(&d1))
        .margin(format(&d1));
    let Some(r) = resolve(assumption, &profile, k, x.dim()) else {
        return Ok(CheckRecord { verdict: Verdict::HypothesisNotMet, ..rec }.detail("balance constant is infinite"));
    };
    let mut unmet = r.unmet;
    let cap = (Rational::one() - eps) / (int(k as u64 + 1) * &r.alpha_k);
    if nf > cap {
        unmet.push(format!("‖f‖ = {} exceeds {}", format(&nf), format(&cap)));
    }
    let thr = lambda_threshold_with(x.dim(), r.alpha_d1, to_f64(eps), factorial(x.dim() + 1) as f64);
    if lambda_eff > thr {
        unmet.push(format!("λ = {} exceeds threshold {}", fmt_float(lambda_eff), fmt_float(thr)));
    }
    Ok(finish(rec, d1 > Rational::zero(), r.label, unmet))
}

fn finish(rec: CheckRecord, holds: bool, label: String, unmet: Vec<String>) -> CheckRecord {
    if unmet.is_empty() {
        CheckRecord { verdict: Verdict::of(holds), ..rec }.detail(label)
    } else {
        let conclusion = if holds { "conclusion holds" } else { "conclusion fails" };
        CheckRecord { verdict: Verdict::HypothesisNotMet, ..rec }
            .detail(format!("{label}; {}; {conclusion} (informational)", unmet.join("; ")))
    }
}

/// Shared inputs of the cohomology checks.
#[derive(Clone, Debug)]
pub struct CohomologyContext {
    pub k: usize,
    pub links: LinkExpansion,
    pub classes: Vec<CohomologyClass>,
}

impl CohomologyContext {
    pub fn nontrivial(&self) -> impl Iterator<Item = &CohomologyClass> {
        self.classes.iter().filter(|c| !c.is_trivial())
    }
}

pub fn cohomology_context(x: &SimplicialComplex, k: usize, budget: u64) -> Result<CohomologyContext> {
    Ok(CohomologyContext {
        k,
        links: min_link_coboundary_expansion(x, k, budget)?,
        classes: cohomology_classes(x, k, budget)?,
    })
}

/// When every link is a β-coboundary expander, every minimum-weight element
/// `f` of a nontrivial class satisfies `‖f_σ‖ ≤ (ℓ+1)/β · E_{v∈σ}‖(f_{σ\v})^v‖`
/// for all `σ ∈ X(ℓ)`, `ℓ < k`; along the way
/// `‖δ(f_σ)‖ ≤ Σ_{v∈σ} ‖(f_{σ\v})^v‖`.
///
/// Returns one balance record and one covering record per class and `ℓ`.
pub fn check_cohomology_balance(x: &SimplicialComplex, ctx: &CohomologyContext) -> Result<Vec<CheckRecord>> {
    let k = ctx.k;
    let anchor_bal = "minimal cohomology elements are (ℓ+1)/β-double balanced";
    let anchor_cov = "‖δ(f_σ)‖ ≤ Σ_{v∈σ} ‖(f_{σ\\v})^v‖ for cocycles";
    let beta = match ctx.links.beta.finite() {
        Some(b) if !b.is_zero() => b.clone(),
        _ => {
            return Ok(vec![CheckRecord::new("cohomology_balance", anchor_bal, Verdict::HypothesisNotMet)
                .detail(format!("link coboundary expansion β = {} is not positive and finite", ctx.links.beta))]);
        }
    };
    if ctx.nontrivial().next().is_none() {
        return Ok(vec![CheckRecord::new("cohomology_balance", anchor_bal, Verdict::HypothesisNotMet)
            .detail(format!("vacuous: H^{k} = 0"))]);
    }
    let mut out = Vec::new();
    for class in ctx.nontrivial() {
        for ell in 0..k {
            let bound = int(ell as u64 + 1) / &beta;
            let mut bal_ok = true;
            let mut cov_ok = true;
            let mut worst_alpha = ExtRational::Finite(Rational::zero());
            let mut bal_witness = None;
            let mut cov_witness = None;
            let mut worst_cov = None::<(Rational, Rational)>;
            for f in &class.minimal_elements {
                let terms = balance_terms(x, f, ell)?;
                for (s, sigma) in x.faces(ell).iter().enumerate() {
                    let mean = terms.restricted_mean(s);
                    let ratio = ExtRational::ratio(&terms.local[s], &mean);
                    if terms.local[s] > &bound * &mean {
                        bal_ok = false;
                        bal_witness.get_or_insert_with(|| format!("{} at {sigma}", support_string(x, f)));
                    }
                    if ratio > worst_alpha {
                        worst_alpha = ratio;
                    }
                    let lx = x.link(sigma)?.complex();
                    let dfs = norm(lx, &coboundary(lx, &localize(x, f, sigma)?)?);
                    let slack = &terms.restricted_sum[s] - &dfs;
                    if slack < Rational::zero() {
                        cov_ok = false;
                        cov_witness.get_or_insert_with(|| format!("{} at {sigma}", support_string(x, f)));
                    }
                    if worst_cov.as_ref().is_none_or(|(l, r)| slack < (r - l)) {
                        worst_cov = Some((dfs, terms.restricted_sum[s].clone()));
                    }
                }
            }
            let tag = format!("[class={},ell={ell}]", class.class_id);
            let mut bal = CheckRecord::new(format!("cohomology_balance{tag}"), anchor_bal, Verdict::of(bal_ok))
                .sides(worst_alpha.to_string(), format(&bound))
                .detail(format!(
                    "beta = {}; {} minimal elements of weight {}",
                    format(&beta),
                    class.minimal_elements.len(),
                    format(&class.weight)
                ));
            if let Some(a) = worst_alpha.finite() {
                bal = bal.margin(format(&(&bound - a)));
            }
            if let Some(w) = bal_witness {
                bal = bal.witness(w);
            }
            out.push(bal);
            let (l, r) = worst_cov.expect("X(ell) is non-empty");
            let mut cov = CheckRecord::new(format!("cohomology_covering{tag}"), anchor_cov, Verdict::of(cov_ok))
                .sides(format(&l), format(&r))
                .margin(format(&(&r - &l)));
            if let Some(w) = cov_witness {
                cov = cov.witness(w);
            }
            out.push(cov);
        }
    }
    Ok(out)
}

fn support_string(x: &SimplicialComplex, f: &Cochain) -> String {
    let faces: Vec<String> = f.faces(x).iter().map(|s| s.to_string()).collect();
    format!("[{}]", faces.join(" "))
}

/// `(1-ε) β^k / (k+1)!`.
pub fn cosystole_bound(beta: &Rational, k: usize, eps: &Rational) -> Rational {
    (Rational::one() - eps) * num_traits::pow(beta.clone(), k) / int(factorial(k + 1) as u64)
}

/// `(β^k / k!)^{2^k}`.
pub fn prior_cosystole_bound(beta: &Rational, k: usize) -> Rational {
    let base = num_traits::pow(beta.clone(), k) / int(factorial(k) as u64);
    num_traits::pow(base, 1usize << k)
}

/// Every nontrivial class has weight at least `(1-ε) β^k / (k+1)!` once the
/// spectral bound is below the positive-δ₁ threshold. Evaluated with the
/// uniform constant `α = max(1, k/β)` and with per-dimension constants
/// `(ℓ+1)/β`; the conclusion is always reported, asserted only when the
/// threshold holds.
pub fn check_cosystole_lower_bound(
    x: &SimplicialComplex,
    ctx: &CohomologyContext,
    eps: &Rational,
    lambda_eff: f64,
) -> Result<Vec<CheckRecord>> {
    let k = ctx.k;
    let d = x.dim();
    let anchor = "nontrivial cohomology has weight ≥ (1-ε)β^k/(k+1)!";
    if k == 0 || d < 2 {
        return Err(Error::dim(k, "the cosystole bound needs 1 ≤ k < d and d ≥ 2"));
    }
    if *eps <= Rational::zero() || *eps >= Rational::one() {
        return Err(Error::InvalidParameter(format!("ε must lie in (0, 1), got {}", format(eps))));
    }
    let beta = match ctx.links.beta.finite() {
        Some(b) if !b.is_zero() => b.clone(),
        _ => {
            return Ok(vec![CheckRecord::new("cosystole_lower_bound", anchor, Verdict::HypothesisNotMet)
                .detail(format!("link coboundary expansion β = {} is not positive and finite", ctx.links.beta))]);
        }
    };
    let bound = cosystole_bound(&beta, k, eps);
    let prior = prior_cosystole_bound(&beta, k);
    let comparison = format!(
        "beta = {}; bound = {}; prior bound = {}; bound / prior = {}",
        format(&beta),
        format(&bound),
        format(&prior),
        format(&(&bound / &prior))
    );
    let lightest = ctx.nontrivial().min_by(|a, b| a.weight.cmp(&b.weight));
    let Some(lightest) = lightest else {
        return Ok(vec![CheckRecord::new("cosystole_lower_bound", anchor, Verdict::HypothesisNotMet)
            .detail(format!("vacuous: H^{k} = 0; {comparison}"))]);
    };
    let holds = lightest.weight >= bound;
    let uniform = int(k as u64) / &beta;
    let uniform = if uniform < Rational::one() { Rational::one() } else { uniform };
    let per_dim: f64 = (0..d - 1).map(|l| to_f64(&(int(l as u64 + 1) / &beta)).max(1.0)).product();
    let variants = [
        (
            "uniform",
            lambda_threshold_positive(d, to_f64(&uniform), to_f64(eps)),
            format!("alpha = {}", format(&uniform)),
        ),
        (
            "per_dimension",
            lambda_threshold_with(d, per_dim, to_f64(eps), factorial(d + 1) as f64),
            "alpha_l = (l+1)/beta".into(),
        ),
    ];
    Ok(variants
        .into_iter()
        .map(|(tag, thr, label)| {
            let rec = CheckRecord::new(format!("cosystole_lower_bound[{tag}]"), anchor, Verdict::Verified)
                .sides(format(&bound), format(&lightest.weight))
                .margin(format(&(&lightest.weight - &bound)))
                .witness(support_string(x, &lightest.representative));
            let unmet = if lambda_eff > thr {
                vec![format!("λ = {} exceeds threshold {}", fmt_float(lambda_eff), fmt_float(thr))]
            } else {
                Vec::new()
            };
            finish(rec, holds, format!("{label}; {comparison}"), unmet)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_complex, cycle, rp2_six};
    use crate::rational::rat;
    use crate::DEFAULT_BUDGET;

    #[test]
    fn single_faces_expand_optimally() {
        for (n, d, k) in [(5, 2, 1), (7, 2, 1), (6, 3, 2), (6, 3, 0)] {
            let x = complete_complex(n, d).unwrap();
            let f = Cochain::from_indices(&x, k, [0]).unwrap();
            assert_eq!(delta1_ratio(&x, &f).unwrap(), int(k as u64 + 2));
        }
        let x = complete_complex(5, 2).unwrap();
        assert_eq!(delta1_ratio(&x, &Cochain::full(&x, 1)).unwrap(), rat(0, 1));
        assert!(delta1_ratio(&x, &Cochain::zero(&x, 1)).is_err());
    }

    #[test]
    fn coboundary_expansion_examples() {
        let x = complete_complex(4, 2).unwrap();
        let e = coboundary_expansion(&x, 0, DEFAULT_BUDGET).unwrap();
        assert_eq!(e.value, ExtRational::Finite(rat(4, 3)));
        assert_eq!(e.witness.unwrap().len(), 2);
        let c5 = cycle(5).unwrap();
        let e = coboundary_expansion(&c5, 0, DEFAULT_BUDGET).unwrap();
        assert_eq!(e.value, ExtRational::Finite(rat(1, 1)));
        assert_eq!(e.witness.unwrap().indices().collect::<Vec<_>>(), vec![0, 1]);
        let split = SimplicialComplex::from_top_faces(vec![vec![0, 1], vec![2, 3]], 1).unwrap();
        assert_eq!(coboundary_expansion(&split, 0, DEFAULT_BUDGET).unwrap().value, ExtRational::Finite(rat(0, 1)));
    }

    #[test]
    fn link_expansion_examples() {
        let r = min_link_coboundary_expansion(&rp2_six(), 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.beta, ExtRational::Finite(rat(1, 1)));
        let r = min_link_coboundary_expansion(&complete_complex(6, 2).unwrap(), 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.beta, ExtRational::Finite(rat(3, 2)));
    }

    #[test]
    fn cosystolic_examples() {
        let c = cosystolic_expansion(&complete_complex(5, 2).unwrap(), 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.mu, ExtRational::Infinite);
        let c = cosystolic_expansion(&rp2_six(), 1, DEFAULT_BUDGET).unwrap();
        assert!(c.mu_witness.is_some());
        assert!(!c.mu.is_infinite());
    }

    #[test]
    fn dense_bound_on_one_edge() {
        let x = complete_complex(8, 2).unwrap();
        let f = Cochain::from_indices(&x, 1, [0]).unwrap();
        let recs = check_delta1_dense_bound(&x, &f, &rat(3, 10), 0.0).unwrap();
        assert!(recs.iter().all(|r| r.verdict == Verdict::Verified), "{recs:#?}");
        let full = Cochain::full(&x, 1);
        let recs = check_delta1_dense_bound(&x, &full, &rat(1, 10), 0.0).unwrap();
        assert!(recs.iter().all(|r| r.verdict == Verdict::Verified));
    }

    #[test]
    fn theorem_gating() {
        let x = complete_complex(9, 2).unwrap();
        let f = Cochain::from_indices(&x, 1, [0]).unwrap();
        let r = check_near_optimal_delta1(&x, &f, &rat(1, 10), 0.0, &BalanceAssumption::Uniform(None)).unwrap();
        assert_eq!(r.verdict, Verdict::HypothesisNotMet);
        let full = Cochain::full(&x, 1);
        let r = check_positive_delta1(&x, &full, &rat(1, 10), 0.0, &BalanceAssumption::Uniform(None)).unwrap();
        assert_eq!(r.verdict, Verdict::HypothesisNotMet);
    }

    #[test]
    fn cohomology_balance_on_projective_plane() {
        let x = rp2_six();
        let ctx = cohomology_context(&x, 1, DEFAULT_BUDGET).unwrap();
        let recs = check_cohomology_balance(&x, &ctx).unwrap();
        assert_eq!(recs.len(), 2);
        assert!(recs.iter().all(|r| r.verdict == Verdict::Verified), "{recs:#?}");
        let ctx = cohomology_context(&complete_complex(5, 2).unwrap(), 1, DEFAULT_BUDGET).unwrap();
        let recs = check_cohomology_balance(&complete_complex(5, 2).unwrap(), &ctx).unwrap();
        assert_eq!(recs[0].verdict, Verdict::HypothesisNotMet);
    }

    #[test]
    fn tail_coefficients_dominated() {
        for k in 1..=8usize {
            for i in 2..=k + 2 {
                assert!(i * (i - 1) * k >= i * (k + 2 - i), "k={k} i={i}");
            }
        }
    }

    #[test]
    fn cosystole_bound_arithmetic() {
        assert_eq!(cosystole_bound(&rat(1, 1), 1, &rat(1, 10)), rat(9, 20));
        assert_eq!(prior_cosystole_bound(&rat(1, 1), 1), rat(1, 1));
        let x = rp2_six();
        let ctx = cohomology_context(&x, 1, DEFAULT_BUDGET).unwrap();
        let recs = check_cosystole_lower_bound(&x, &ctx, &rat(1, 10), 0.309).unwrap();
        assert!(recs.iter().all(|r| r.verdict == Verdict::HypothesisNotMet));
    }
}
