//! Double-balance constants, their inheritance, the dense-face hierarchy and
//! the pseudorandomness fraction.
//!
//! For a `k`-cochain `f` and `σ ∈ X(ℓ)` with `ℓ < k`, the two sides compared
//! are `‖f_σ‖` (a `(k-ℓ-1)`-cochain on `X_σ`) and the mean over `u ∈ σ` of
//! `‖(f_{σ\u})^u‖`, which is a `(k-ℓ)`-cochain on `X_σ`: the faces `τ` with
//! `(σ\u) ∪ τ ∈ f`. Both are accumulated in one pass over the support.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::cochain::{norm, subsets, Cochain};
use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::expansion::lambda_threshold_near_optimal;
use crate::rational::{binomial, factorial, format, int, ratio_u128, to_f64, ExtRational, Rational};
use crate::verdict::{fmt_float, CheckRecord, Verdict};

/// Comparison slack for inequalities with a floating side.
pub const FLOAT_TOL: f64 = 1e-9;

fn check_below_top(x: &SimplicialComplex, f: &Cochain) -> Result<()> {
    if f.dim() >= x.dim() {
        return Err(Error::dim(f.dim(), "double balance needs k < d"));
    }
    Ok(())
}

/// `‖f_σ‖` for every face `σ` with `size` vertices (`size <= k + 1`).
pub fn localized_norms(x: &SimplicialComplex, f: &Cochain, size: usize) -> Result<Vec<Rational>> {
    let k = f.dim();
    if size > k + 1 || size > x.dim() {
        return Err(Error::dim(size as isize - 1, "localization needs |σ| ≤ k + 1 and a non-top face"));
    }
    let mut units = vec![0u128; x.faces_of_size(size).len()];
    for i in f.indices() {
        let rho = x.face_at(k + 1, i);
        let c = x.cover(k + 1, i) as u128;
        for sigma in subsets(rho.vertices(), size) {
            units[x.index_of(&sigma).expect("subfaces are faces")] += c;
        }
    }
    let free = binomial(x.dim() + 1 - size, k + 1 - size);
    Ok(units.iter().enumerate().map(|(s, &u)| ratio_u128(u, x.cover(size, s) as u128 * free)).collect())
}

/// Per-face sides of the double-balance inequality in dimension `ell`.
#[derive(Clone, Debug)]
pub struct BalanceTerms {
    pub ell: usize,
    /// `‖f_σ‖` for each `σ ∈ X(ell)`.
    pub local: Vec<Rational>,
    /// `Σ_{u∈σ} ‖(f_{σ\u})^u‖` for each `σ ∈ X(ell)`.
    pub restricted_sum: Vec<Rational>,
}

impl BalanceTerms {
    pub fn restricted_mean(&self, s: usize) -> Rational {
        &self.restricted_sum[s] / int(self.ell as u64 + 1)
    }

    pub fn ratio(&self, s: usize) -> ExtRational {
        ExtRational::ratio(&self.local[s], &self.restricted_mean(s))
    }
}

pub fn balance_terms(x: &SimplicialComplex, f: &Cochain, ell: usize) -> Result<BalanceTerms> {
    check_below_top(x, f)?;
    let k = f.dim();
    if ell >= k {
        return Err(Error::dim(ell, "double balance is defined for 0 ≤ ℓ ≤ k - 1"));
    }
    let local = localized_norms(x, f, ell + 1)?;
    let mut units = vec![0u128; x.count(ell)];
    for i in f.indices() {
        let rho = x.face_at(k + 1, i);
        for &t in x.cofaces_of(k + 1, i) {
            let tau = x.face_at(k + 2, t);
            let u = *tau.vertices().iter().find(|v| !rho.contains(**v)).expect("coface adds a vertex");
            let c = x.cover(k + 2, t) as u128;
            for s in subsets(rho.vertices(), ell) {
                units[x.index_of(&s.with(u)).expect("subfaces are faces")] += c;
            }
        }
    }
    let free = binomial(x.dim() - ell, k - ell + 1);
    let restricted_sum =
        units.iter().enumerate().map(|(s, &u)| ratio_u128(u, x.cover(ell + 1, s) as u128 * free)).collect();
    Ok(BalanceTerms { ell, local, restricted_sum })
}

#[derive(Clone, Debug, Serialize)]
pub struct BalanceLevel {
    pub ell: usize,
    /// Smallest `α ≥ 1` for which `f` is α-double balanced in this dimension.
    pub alpha: ExtRational,
    /// Lexicographically first face attaining the maximal ratio.
    pub witness: Face,
    #[serde(with = "crate::rational::serde_pq")]
    pub local: Rational,
    #[serde(with = "crate::rational::serde_pq")]
    pub restricted_mean: Rational,
}

pub fn balance_constant(x: &SimplicialComplex, f: &Cochain, ell: usize) -> Result<BalanceLevel> {
    let terms = balance_terms(x, f, ell)?;
    let mut best = 0;
    let mut best_ratio = terms.ratio(0);
    for s in 1..terms.local.len() {
        let r = terms.ratio(s);
        if r > best_ratio {
            best = s;
            best_ratio = r;
        }
    }
    Ok(BalanceLevel {
        ell,
        alpha: best_ratio.max(ExtRational::one()),
        witness: x.face_at(ell + 1, best).clone(),
        restricted_mean: terms.restricted_mean(best),
        local: terms.local[best].clone(),
    })
}

/// Balance constants of `f` in every dimension `0..k`.
#[derive(Clone, Debug, Serialize)]
pub struct BalanceProfile {
    pub k: usize,
    pub levels: Vec<BalanceLevel>,
}

impl BalanceProfile {
    /// Largest constant over all dimensions (1 when `k = 0`).
    pub fn max_alpha(&self) -> ExtRational {
        self.levels.iter().map(|l| l.alpha.clone()).fold(ExtRational::one(), ExtRational::max)
    }
}

pub fn balance_profile(x: &SimplicialComplex, f: &Cochain) -> Result<BalanceProfile> {
    check_below_top(x, f)?;
    let levels = (0..f.dim()).map(|ell| balance_constant(x, f, ell)).collect::<Result<_>>()?;
    Ok(BalanceProfile { k: f.dim(), levels })
}

/// Inheritance of balance from dimension `ell` to `ell - 1`.
#[derive(Clone, Debug)]
pub struct Inheritance {
    pub upper: BalanceLevel,
    pub lower: BalanceLevel,
    /// `α ℓ / (ℓ + 1 - α)`, when the hypothesis `α < ℓ + 1` holds.
    pub predicted: Option<Rational>,
    pub verdict: Verdict,
}

impl Inheritance {
    pub fn record(&self) -> CheckRecord {
        let ell = self.upper.ell;
        let mut rec = CheckRecord::new(
            format!("balance_inheritance[ell={ell}]"),
            "balance in dimension ℓ implies balance αℓ/(ℓ+1-α) in dimension ℓ-1",
            self.verdict,
        )
        .witness(self.lower.witness.to_string())
        .detail(format!("alpha_{ell} = {}", self.upper.alpha));
        if let Some(p) = &self.predicted {
            rec = rec.sides(self.lower.alpha.to_string(), format(p));
            if let Some(l) = self.lower.alpha.finite() {
                rec = rec.margin(format(&(p - l)));
            }
        }
        rec
    }
}

pub fn verify_inheritance(x: &SimplicialComplex, f: &Cochain, ell: usize) -> Result<Inheritance> {
    if ell == 0 {
        return Err(Error::dim(ell, "inheritance needs ℓ ≥ 1"));
    }
    let upper = balance_constant(x, f, ell)?;
    let lower = balance_constant(x, f, ell - 1)?;
    let l = int(ell as u64);
    let predicted = match upper.alpha.finite() {
        Some(a) if *a < &l + Rational::one() => Some(a * &l / (&l + Rational::one() - a)),
        _ => None,
    };
    let verdict = match &predicted {
        None => Verdict::HypothesisNotMet,
        Some(p) => Verdict::of(lower.alpha <= ExtRational::Finite(p.clone())),
    };
    Ok(Inheritance { upper, lower, predicted, verdict })
}

/// Thresholds `η_i` and dense faces `DENSE_i = {σ ∈ X(i) : ‖f_σ‖ > η_i}` for
/// `i = -1..=k-1`. Vectors are indexed by `i + 1`.
#[derive(Clone, Debug)]
pub struct DenseHierarchy {
    pub k: usize,
    pub eta: Rational,
    pub alpha: Rational,
    pub epsilon: Rational,
    pub etas: Vec<Rational>,
    /// Face indices of `DENSE_i` within `X(i)`; `DENSE_{-1}` is `[0]` or empty.
    pub dense: Vec<Vec<usize>>,
    /// `‖DENSE_i‖` under `P_i`.
    pub dense_weight: Vec<Rational>,
    pub norm: Rational,
}

impl DenseHierarchy {
    pub fn eta_at(&self, i: isize) -> &Rational {
        &self.etas[(i + 1) as usize]
    }

    pub fn dense_at(&self, i: isize) -> &[usize] {
        &self.dense[(i + 1) as usize]
    }

    pub fn dense_weight_at(&self, i: isize) -> &Rational {
        &self.dense_weight[(i + 1) as usize]
    }

    /// `‖f‖ ≤ η_{-1}`.
    pub fn size_hypothesis(&self) -> bool {
        self.norm <= self.etas[0]
    }

    /// Indices `i` with `η_i ≤ 0`.
    pub fn nonpositive_thresholds(&self) -> Vec<isize> {
        (0..self.etas.len()).filter(|&j| self.etas[j] <= Rational::zero()).map(|j| j as isize - 1).collect()
    }
}

/// `η_{k-1} = η`, `η_{i-1} = η_i / α - ε / ((k+1)^2 α^{k-i})`.
pub fn eta_sequence(k: usize, eta: &Rational, alpha: &Rational, epsilon: &Rational) -> Vec<Rational> {
    let mut etas = vec![Rational::zero(); k + 1];
    etas[k] = eta.clone();
    let sq = int(((k + 1) * (k + 1)) as u64);
    for i in (0..k).rev() {
        let next = &etas[i + 1];
        etas[i] = next / alpha - epsilon / (&sq * num_traits::pow(alpha.clone(), k - i));
    }
    etas
}

pub fn dense_hierarchy(
    x: &SimplicialComplex,
    f: &Cochain,
    eta: &Rational,
    alpha: &Rational,
    epsilon: &Rational,
) -> Result<DenseHierarchy> {
    check_below_top(x, f)?;
    if *eta <= Rational::zero() || *eta >= Rational::one() {
        return Err(Error::InvalidParameter(format!("η must lie in (0, 1), got {}", format(eta))));
    }
    if *alpha < Rational::one() {
        return Err(Error::InvalidParameter(format!("α must be at least 1, got {}", format(alpha))));
    }
    if *epsilon <= Rational::zero() {
        return Err(Error::InvalidParameter(format!("ε must be positive, got {}", format(epsilon))));
    }
    let k = f.dim();
    let etas = eta_sequence(k, eta, alpha, epsilon);
    let mut dense = Vec::with_capacity(k + 1);
    let mut dense_weight = Vec::with_capacity(k + 1);
    for size in 0..=k {
        let norms = localized_norms(x, f, size)?;
        let members: Vec<usize> = (0..norms.len()).filter(|&s| norms[s] > etas[size]).collect();
        dense_weight.push(members.iter().map(|&s| x.weight_at(size, s)).sum());
        dense.push(members);
    }
    Ok(DenseHierarchy {
        k,
        eta: eta.clone(),
        alpha: alpha.clone(),
        epsilon: epsilon.clone(),
        etas,
        dense,
        dense_weight,
        norm: norm(x, f),
    })
}

/// The top-level dense bound and its per-dimension steps.
#[derive(Clone, Debug)]
pub struct DenseBoundReport {
    pub main: CheckRecord,
    pub steps: Vec<CheckRecord>,
}

impl DenseBoundReport {
    pub fn records(&self) -> impl Iterator<Item = &CheckRecord> {
        std::iter::once(&self.main).chain(&self.steps)
    }
}

/// Bounds the weight of `DENSE_{k-1}`:
///
/// - overall, `‖DENSE_{k-1}‖ ≤ 3 k! ((k+1)^3 α^k λ / ε)^2 ‖f‖`, under
///   α-balance, `‖f‖ ≤ η_{-1}` and `λ ≥` the measured spectral bound;
/// - per step, `‖DENSE_i‖ ≤ (i+1)‖DENSE_{i-1}‖ + (i+1)((k+1-i)(k+1)^2 α^{k-i} λ/ε)^2 ‖f‖`,
///   under α-balance and the spectral condition.
pub fn check_dense_face_bound(
    x: &SimplicialComplex,
    f: &Cochain,
    h: &DenseHierarchy,
    lambda: f64,
    lambda_measured: f64,
) -> Result<DenseBoundReport> {
    let profile = balance_profile(x, f)?;
    let balanced = profile.max_alpha() <= ExtRational::Finite(h.alpha.clone());
    let spectral = lambda >= lambda_measured.max(0.0);
    let k = h.k;
    let (a, e, nf) = (to_f64(&h.alpha), to_f64(&h.epsilon), to_f64(&h.norm));
    let mut unmet = Vec::new();
    if !balanced {
        unmet.push(format!("max balance constant {} exceeds α = {}", profile.max_alpha(), format(&h.alpha)));
    }
    if !spectral {
        unmet.push(format!("λ = {} is below the measured bound {}", fmt_float(lambda), fmt_float(lambda_measured)));
    }
    let step_unmet = unmet.clone();
    if !h.size_hypothesis() {
        unmet.push(format!("‖f‖ = {} exceeds η_-1 = {}", format(&h.norm), format(h.eta_at(-1))));
    }

    let top = to_f64(h.dense_weight_at(k as isize - 1));
    let rhs = 3.0 * factorial(k) as f64 * (((k + 1).pow(3) as f64) * a.powi(k as i32) * lambda / e).powi(2) * nf;
    let main = bound_record(
        "dense_face_bound",
        "weight of dense (k-1)-faces is at most 3k!((k+1)^3 α^k λ/ε)^2 ‖f‖",
        top,
        rhs,
        &unmet,
    )
    .witness(format!("|DENSE_k-1| = {}", h.dense_at(k as isize - 1).len()));

    let mut steps = Vec::with_capacity(k);
    for i in 0..k {
        let lower = to_f64(h.dense_weight_at(i as isize - 1));
        let coef = ((k + 1 - i) * (k + 1) * (k + 1)) as f64 * a.powi((k - i) as i32) * lambda / e;
        let rhs = (i + 1) as f64 * lower + (i + 1) as f64 * coef * coef * nf;
        steps.push(bound_record(
            &format!("dense_face_step[i={i}]"),
            "dense i-faces are bounded by dense (i-1)-faces plus a spectral term",
            to_f64(h.dense_weight_at(i as isize)),
            rhs,
            &step_unmet,
        ));
    }
    Ok(DenseBoundReport { main, steps })
}

fn bound_record(name: &str, anchor: &str, lhs: f64, rhs: f64, unmet: &[String]) -> CheckRecord {
    let verdict = if unmet.is_empty() { Verdict::of(lhs <= rhs + FLOAT_TOL) } else { Verdict::HypothesisNotMet };
    let rec =
        CheckRecord::new(name, anchor, verdict).sides(fmt_float(lhs), fmt_float(rhs)).margin(fmt_float(rhs - lhs));
    if unmet.is_empty() {
        rec
    } else {
        rec.detail(unmet.join("; "))
    }
}

/// `Pr_{σ ~ P_ell}[‖f_σ‖ ≤ eps]`, exact.
pub fn pseudorandom_fraction(x: &SimplicialComplex, f: &Cochain, ell: usize, eps: &Rational) -> Result<Rational> {
    if ell >= f.dim() {
        return Err(Error::dim(ell, "pseudorandomness is measured in dimensions ℓ < k"));
    }
    let norms = localized_norms(x, f, ell + 1)?;
    Ok((0..norms.len()).filter(|&s| norms[s] <= *eps).map(|s| x.weight_at(ell + 1, s)).sum())
}

/// Small balanced sets are almost pseudorandom: if `f` is α-double balanced,
/// `‖f‖ ≤ ε / ((ℓ+1) α^ℓ)` and the spectral bound is below the near-optimal
/// threshold, then `Pr_σ[‖f_σ‖ ≤ ε] ≥ 1 - ε‖f‖`.
pub fn check_pseudorandomness(
    x: &SimplicialComplex,
    f: &Cochain,
    ell: usize,
    eps: &Rational,
    lambda_eff: f64,
) -> Result<CheckRecord> {
    let fraction = pseudorandom_fraction(x, f, ell, eps)?;
    let nf = norm(x, f);
    let bound = Rational::one() - eps * &nf;
    let alpha = balance_profile(x, f)?.max_alpha();
    let mut unmet = Vec::new();
    match alpha.finite() {
        None => unmet.push("balance constant is infinite".to_string()),
        Some(a) => {
            let cap = eps / (int(ell as u64 + 1) * num_traits::pow(a.clone(), ell));
            if nf > cap {
                unmet.push(format!("‖f‖ = {} exceeds {}", format(&nf), format(&cap)));
            }
            let thr = lambda_threshold_near_optimal(x.dim(), to_f64(a), to_f64(eps));
            if lambda_eff > thr {
                unmet.push(format!("λ = {} exceeds threshold {}", fmt_float(lambda_eff), fmt_float(thr)));
            }
        }
    }
    let verdict = if unmet.is_empty() { Verdict::of(fraction >= bound) } else { Verdict::HypothesisNotMet };
    let detail = std::iter::once(format!("alpha = {alpha}")).chain(unmet).collect::<Vec<_>>().join("; ");
    Ok(CheckRecord::new(
        format!("pseudorandomness[ell={ell}]"),
        "small double-balanced sets are almost pseudorandom",
        verdict,
    )
    .sides(format(&fraction), format(&bound))
    .margin(format(&(&fraction - &bound)))
    .detail(detail))
}
