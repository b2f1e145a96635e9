//! Check families run by the analysis subcommands.
//!
//! Sampled cochains are drawn once, single-threaded, from one seeded stream
//! before any family runs, so reports do not depend on the worker count.
//! Per-sample records are folded into one record per check name.

use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use hdx_core::balance::{
    balance_constant, balance_profile, check_dense_face_bound, check_pseudorandomness, dense_hierarchy,
    verify_inheritance,
};
use hdx_core::cochain::{coboundary, norm};
use hdx_core::cohomology::{cohomology_dim, is_minimal};
use hdx_core::expansion::{
    check_cohomology_balance, check_cosystole_lower_bound, check_delta1_dense_bound, check_near_optimal_delta1,
    check_positive_delta1, coboundary_expansion, cohomology_context, cosystolic_expansion, delta1_ratio,
    min_link_coboundary_expansion, BalanceAssumption, CohomologyContext, ExpansionConstant,
};
use hdx_core::rational::{format, to_f64, ExtRational};
use hdx_core::rng::SeededStream;
use hdx_core::spectral::{
    complement_walk_graph, edge_bounds, quadratic_mass, restriction_profile, underlying_graph, SpectralReport,
    WeightedGraph,
};
use hdx_core::verdict::{fmt_float, CheckRecord};
use hdx_core::{Cochain, Error, Rational, SimplicialComplex, Verdict};
use num_traits::One;

use crate::config::RunConfig;

const TOL: f64 = 1e-9;

/// Largest sampled cochain used for the small-set theorems.
const SMALL_MAX: u64 = 4;

pub struct Context {
    pub x: SimplicialComplex,
    pub cfg: RunConfig,
    pub cochain: Option<Cochain>,
    pub spectral: SpectralReport,
    /// The λ plugged into every bound.
    pub lambda: f64,
    /// `cfg.samples` mixed-density cochains per dimension `j < d`.
    mixed: Vec<Vec<Cochain>>,
    /// `cfg.samples` cochains of 1 to 4 faces in dimension `k`.
    small: Vec<Cochain>,
    cohomology: OnceLock<Result<CohomologyContext, Error>>,
}

impl Context {
    pub fn new(x: SimplicialComplex, cfg: RunConfig, cochain: Option<Cochain>, spectral: SpectralReport) -> Self {
        let mut rng = SeededStream::new(cfg.seed);
        let mixed =
            (0..x.dim()).map(|j| (0..cfg.samples).map(|_| rng.mixed_density_cochain(&x, j)).collect()).collect();
        let small = (0..cfg.samples)
            .map(|_| {
                let size = 1 + rng.below(SMALL_MAX) as usize;
                rng.cochain_of_size(&x, cfg.k, size)
            })
            .collect();
        let lambda = cfg.lambda.unwrap_or_else(|| spectral.lambda_eff());
        Context { x, cfg, cochain, spectral, lambda, mixed, small, cohomology: OnceLock::new() }
    }

    fn k(&self) -> usize {
        self.cfg.k
    }

    fn d(&self) -> usize {
        self.x.dim()
    }

    /// The given cochain when it has dimension `j`, else the mixed samples.
    fn subjects(&self, j: usize) -> Vec<&Cochain> {
        match &self.cochain {
            Some(f) if f.dim() == j => vec![f],
            _ => self.mixed[j].iter().collect(),
        }
    }

    /// The given cochain, else the small samples followed by the mixed ones.
    fn theorem_subjects(&self) -> Vec<&Cochain> {
        match &self.cochain {
            Some(f) => vec![f],
            None => self.small.iter().chain(&self.mixed[self.k()]).collect(),
        }
    }

    fn ells(&self, from: usize) -> Vec<usize> {
        match self.cfg.ell {
            Some(l) if l >= from => vec![l],
            Some(_) => Vec::new(),
            None => (from..self.k()).collect(),
        }
    }

    fn cohomology(&self) -> &Result<CohomologyContext, Error> {
        self.cohomology.get_or_init(|| cohomology_context(&self.x, self.k(), self.cfg.budget))
    }
}

#[derive(Default)]
pub struct Outcome {
    pub records: Vec<CheckRecord>,
    pub measurements: Vec<(String, String)>,
}

impl Outcome {
    fn measure(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.measurements.push((key.into(), value.into()));
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Weights,
    CohomologyDims,
    EigenSolver,
    CoboundarySquare,
    Restriction,
    EdgeBounds,
    ComplementWalkClaim,
    CochainBalance,
    Inheritance,
    PerfectBalance,
    DenseFaces,
    Pseudorandom,
    Delta1Chain,
    Delta1Theorems,
    ExpansionConstants,
    CohomologyBalance,
    Cosystole,
}

impl Family {
    pub fn for_command(command: &str, has_cochain: bool) -> Vec<Family> {
        use Family::*;
        let mut out = match command {
            "analyze" => vec![Weights, CohomologyDims, EigenSolver, CoboundarySquare, Restriction],
            "balance" => vec![CochainBalance, Inheritance, PerfectBalance, DenseFaces, Pseudorandom],
            "spectra" => vec![EigenSolver, EdgeBounds, Restriction, ComplementWalkClaim],
            "expansion" => vec![ExpansionConstants, Delta1Chain, Delta1Theorems, CohomologyBalance, Cosystole],
            _ => vec![
                Weights,
                CohomologyDims,
                EigenSolver,
                CoboundarySquare,
                Restriction,
                EdgeBounds,
                CochainBalance,
                Inheritance,
                PerfectBalance,
                DenseFaces,
                Pseudorandom,
                Delta1Chain,
                Delta1Theorems,
                ExpansionConstants,
                CohomologyBalance,
                Cosystole,
            ],
        };
        if !has_cochain {
            out.retain(|f| *f != CochainBalance);
        }
        out
    }

    pub fn name(self) -> &'static str {
        use Family::*;
        match self {
            Weights => "weights",
            CohomologyDims => "cohomology_dims",
            EigenSolver => "eigen_solver",
            CoboundarySquare => "coboundary_square",
            Restriction => "restriction",
            EdgeBounds => "edge_bounds",
            ComplementWalkClaim => "complement_walk_claim",
            CochainBalance => "cochain_balance",
            Inheritance => "inheritance",
            PerfectBalance => "perfect_balance",
            DenseFaces => "dense_faces",
            Pseudorandom => "pseudorandom",
            Delta1Chain => "delta1_chain",
            Delta1Theorems => "delta1_theorems",
            ExpansionConstants => "expansion_constants",
            CohomologyBalance => "cohomology_balance",
            Cosystole => "cosystole",
        }
    }

    /// Runs the family; infeasible scans become `infeasible` records, other
    /// errors are returned.
    pub fn run(self, ctx: &Context) -> Result<Outcome, Error> {
        use Family::*;
        let result = match self {
            Weights => weights(ctx),
            CohomologyDims => cohomology_dims(ctx),
            EigenSolver => eigen_solver(ctx),
            CoboundarySquare => coboundary_square(ctx),
            Restriction => restriction(ctx),
            EdgeBounds => edge_bound_family(ctx),
            ComplementWalkClaim => complement_walk_claim(ctx),
            CochainBalance => cochain_balance(ctx),
            Inheritance => inheritance(ctx),
            PerfectBalance => perfect_balance(ctx),
            DenseFaces => dense_faces(ctx),
            Pseudorandom => pseudorandom(ctx),
            Delta1Chain => delta1_chain(ctx),
            Delta1Theorems => delta1_theorems(ctx),
            ExpansionConstants => expansion_constants(ctx),
            CohomologyBalance => cohomology_balance(ctx),
            Cosystole => cosystole(ctx),
        };
        match result {
            Err(e) if e.is_infeasible() => {
                Ok(Outcome { records: vec![infeasible(self.name(), &e)], ..Default::default() })
            }
            other => other,
        }
    }
}

fn infeasible(name: &str, e: &Error) -> CheckRecord {
    CheckRecord::new(name, "exhaustive scan", Verdict::Infeasible).detail(e.to_string())
}

fn not_applicable(name: &str, anchor: &str, why: impl Into<String>) -> CheckRecord {
    CheckRecord::new(name, anchor, Verdict::HypothesisNotMet).detail(why)
}

/// A record tagged with the index of the sample it came from.
type Tagged = (Option<usize>, CheckRecord);

/// Folds per-sample records into one record per name, in first-seen order.
/// The representative is the first violation, else the first verified
/// instance, else the first record; counts go into `detail`.
pub fn fold(items: Vec<Tagged>) -> Vec<CheckRecord> {
    let mut groups: Vec<(String, Vec<Tagged>)> = Vec::new();
    for (i, rec) in items {
        match groups.iter_mut().find(|(n, _)| *n == rec.name) {
            Some((_, g)) => g.push((i, rec)),
            None => groups.push((rec.name.clone(), vec![(i, rec)])),
        }
    }
    groups
        .into_iter()
        .map(|(_, g)| {
            if g.len() == 1 && g[0].0.is_none() {
                return g.into_iter().next().unwrap().1;
            }
            let count = |v: Verdict| g.iter().filter(|(_, r)| r.verdict == v).count();
            let counts = format!(
                "instances: verified={}, violated={}, hypothesis_not_met={}, infeasible={}",
                count(Verdict::Verified),
                count(Verdict::Violated),
                count(Verdict::HypothesisNotMet),
                count(Verdict::Infeasible)
            );
            let verdict = [Verdict::Violated, Verdict::Verified, Verdict::Infeasible]
                .into_iter()
                .find(|v| count(*v) > 0)
                .unwrap_or(Verdict::HypothesisNotMet);
            let (idx, mut rep) = g.iter().find(|(_, r)| r.verdict == verdict).cloned().expect("group is non-empty");
            rep.verdict = verdict;
            if let Some(i) = idx {
                let w = rep.witness.take().map(|w| format!("sample {i}: {w}")).unwrap_or_else(|| format!("sample {i}"));
                rep.witness = Some(w);
            }
            rep.detail = Some(match rep.detail.take() {
                Some(d) => format!("{counts}; {d}"),
                None => counts,
            });
            rep
        })
        .collect()
}

fn exact(name: &str, anchor: &str, lhs: &Rational, rhs: &Rational) -> CheckRecord {
    CheckRecord::new(name, anchor, Verdict::of(lhs == rhs)).sides(format(lhs), format(rhs)).margin(format(&(rhs - lhs)))
}

fn float_le(name: &str, anchor: &str, lhs: f64, rhs: f64) -> CheckRecord {
    CheckRecord::new(name, anchor, Verdict::of(lhs <= rhs + TOL))
        .sides(fmt_float(lhs), fmt_float(rhs))
        .margin(fmt_float(rhs - lhs))
}

fn weights(ctx: &Context) -> Result<Outcome, Error> {
    let x = &ctx.x;
    let mut items = Vec::new();
    for k in 0..=x.dim() {
        let total: Rational = (0..x.count(k)).map(|s| x.weight_at(k + 1, s)).sum();
        items.push((Some(k), exact("weights_sum_to_one", "Σ_{σ∈X(k)} P_k(σ) = 1", &total, &Rational::one())));
    }
    let mut out = Outcome { records: fold(items), ..Default::default() };
    out.records[0].witness = None;
    Ok(out)
}

fn cohomology_dims(ctx: &Context) -> Result<Outcome, Error> {
    let mut out = Outcome::default();
    for k in 0..=ctx.d() {
        out.measure(format!("cohomology_dim[k={k}]"), cohomology_dim(&ctx.x, k)?.to_string());
    }
    Ok(out)
}

fn eigen_solver(ctx: &Context) -> Result<Outcome, Error> {
    let mut out = Outcome::default();
    let g = complement_walk_graph(&ctx.x, ctx.k())?;
    let sg = g.spectrum();
    let residual = ctx.spectral.max_residual.max(sg.max_residual);
    out.records.push(float_le("eigen_residual", "‖Mv - λv‖∞ of every reported eigenpair", residual, TOL));
    for l in &ctx.spectral.links {
        out.measure(format!("link_lambda2[{}]", l.sigma), fmt_float(l.lambda2));
    }
    out.measure(format!("complement_walk_lambda2[k={}]", ctx.k()), fmt_float(sg.second()));
    Ok(out)
}

fn coboundary_square(ctx: &Context) -> Result<Outcome, Error> {
    let x = &ctx.x;
    if x.dim() < 2 {
        let rec = not_applicable("coboundary_squared_zero", "δδf = 0", "needs d ≥ 2");
        return Ok(Outcome { records: vec![rec], ..Default::default() });
    }
    let mut items = Vec::new();
    for j in 0..=x.dim() - 2 {
        for (i, f) in ctx.subjects(j).into_iter().enumerate() {
            let dd = coboundary(x, &coboundary(x, f)?)?;
            let rec = CheckRecord::new("coboundary_squared_zero", "δδf = 0", Verdict::of(dd.is_zero()))
                .sides(dd.len().to_string(), "0");
            items.push((Some(i), rec));
        }
    }
    Ok(Outcome { records: fold(items), ..Default::default() })
}

fn restriction(ctx: &Context) -> Result<Outcome, Error> {
    let x = &ctx.x;
    let k = ctx.k();
    let g = complement_walk_graph(x, k)?;
    let lg = g.spectrum().second();
    let eps = &ctx.cfg.epsilon;
    let mut items = Vec::new();
    for (i, f) in ctx.subjects(k).into_iter().enumerate() {
        let p = restriction_profile(x, f)?;
        let nf = norm(x, f);
        items.push((Some(i), exact("restriction_mean", "E_u ‖f^u‖ = ‖f‖", &p.mean, &nf)));
        let q = quadratic_mass(&g, f.support());
        items.push((
            Some(i),
            exact(
                "restriction_second_moment",
                "E_u ‖f^u‖² = ‖E(f)‖ on the complement-walk graph",
                &p.second_moment,
                &q,
            ),
        ));
        items.push((
            Some(i),
            float_le("restriction_variance", "Var_u ‖f^u‖ ≤ λ₂(G) ‖f‖", to_f64(&p.variance), lg * to_f64(&nf)),
        ));
        let tail = p.tail(x, eps);
        let e = to_f64(eps);
        items.push((
            Some(i),
            float_le(
                "restriction_tail",
                "Pr_u[‖f^u‖ > ‖f‖ + ε] ≤ λ₂(G) ‖f‖ / ε²",
                to_f64(&tail),
                lg * to_f64(&nf) / (e * e),
            ),
        ));
    }
    let mut out = Outcome { records: fold(items), ..Default::default() };
    out.measure(format!("complement_walk_lambda2[k={k}]"), fmt_float(lg));
    Ok(out)
}

fn link_graphs(x: &SimplicialComplex) -> Result<Vec<(String, WeightedGraph)>, Error> {
    let mut out = Vec::new();
    for size in 0..x.dim() {
        for idx in 0..x.faces_of_size(size).len() {
            out.push((x.face_at(size, idx).to_string(), underlying_graph(x.link_at(size, idx))?));
        }
    }
    Ok(out)
}

fn edge_bound_family(ctx: &Context) -> Result<Outcome, Error> {
    let graphs = link_graphs(&ctx.x)?;
    let needed: u128 = graphs.iter().map(|(_, g)| 1u128 << g.num_vertices().min(127)).sum();
    if graphs.iter().any(|(_, g)| g.num_vertices() > 62) || needed > ctx.cfg.budget as u128 {
        let e = Error::Infeasible { needed, budget: ctx.cfg.budget, context: Some("link subsets".into()) };
        return Ok(Outcome { records: vec![infeasible("edge_bounds", &e)], ..Default::default() });
    }
    let mut items = Vec::new();
    let mut raw_failures = 0usize;
    for (li, (name, g)) in graphs.iter().enumerate() {
        let raw = g.spectrum().second();
        let lambda = raw.max(0.0);
        let n = g.num_vertices();
        for mask in 0u64..1 << n {
            let mut a = FixedBitSet::with_capacity(n);
            a.extend((0..n).filter(|i| mask >> i & 1 == 1));
            let b = edge_bounds(g, &a, lambda);
            let witness = format!("link of {name}, A = {:?}", a.ones().collect::<Vec<_>>());
            let e1 = to_f64(&b.e1);
            items.push((
                Some(li),
                CheckRecord::new("edge_bound_e1", "e1(A) ≥ 2‖A‖(1 - λ - ‖A‖)", Verdict::of(b.e1_holds(TOL)))
                    .sides(fmt_float(b.e1_lower), fmt_float(e1))
                    .margin(fmt_float(e1 - b.e1_lower))
                    .witness(witness.clone()),
            ));
            let e2 = to_f64(&b.e2);
            items.push((
                Some(li),
                CheckRecord::new("edge_bound_e2", "e2(A) ≤ ‖A‖(λ + ‖A‖)", Verdict::of(b.e2_holds(TOL)))
                    .sides(fmt_float(e2), fmt_float(b.e2_upper))
                    .margin(fmt_float(b.e2_upper - e2))
                    .witness(witness),
            ));
            if raw < 0.0 {
                let r = edge_bounds(g, &a, raw);
                if !(r.e1_holds(TOL) && r.e2_holds(TOL)) {
                    raw_failures += 1;
                }
            }
        }
    }
    let mut records = fold(items);
    for r in &mut records {
        r.detail = r.detail.take().map(|d| format!("{d}; λ = max(0, λ₂) of each link; instances are subsets"));
        r.witness = r.witness.take().map(|w| w.split_once(": ").map_or(w.clone(), |(_, rest)| rest.to_string()));
    }
    let mut out = Outcome { records, ..Default::default() };
    out.measure("edge_bound_failures_with_negative_lambda2", raw_failures.to_string());
    Ok(out)
}

fn complement_walk_claim(ctx: &Context) -> Result<Outcome, Error> {
    let k = ctx.k();
    let lg = complement_walk_graph(&ctx.x, k)?.spectrum().second();
    let kk = (k + 1) as f64;
    let one = (kk * ctx.lambda).powi(2);
    let two = (kk * ctx.spectral.lambda_two_sided).powi(2);
    let rec = float_le(
        "complement_walk_spectral_claim",
        "λ₂(G) ≤ ((k+1)λ)² for the complement-walk graph of a one-sided expander",
        lg,
        one,
    )
    .detail(format!("two-sided comparison: λ₂(G) ≤ ((k+1)λ_two)² = {} is {}", fmt_float(two), lg <= two + TOL));
    Ok(Outcome { records: vec![rec], ..Default::default() })
}

fn cochain_balance(ctx: &Context) -> Result<Outcome, Error> {
    let mut out = Outcome::default();
    let Some(f) = &ctx.cochain else { return Ok(out) };
    let x = &ctx.x;
    for ell in ctx.ells(0) {
        let level = balance_constant(x, f, ell)?;
        out.measure(format!("alpha_{ell}"), level.alpha.to_string());
        out.measure(format!("alpha_{ell}_witness"), level.witness.to_string());
    }
    out.measure("norm", format(&norm(x, f)));
    if !f.is_zero() {
        out.measure("delta1_ratio", format(&delta1_ratio(x, f)?));
    }
    Ok(out)
}

fn inheritance(ctx: &Context) -> Result<Outcome, Error> {
    let anchor = "balance in dimension ℓ implies balance αℓ/(ℓ+1-α) in dimension ℓ-1";
    let ells = ctx.ells(1);
    if ells.is_empty() {
        return Ok(Outcome {
            records: vec![not_applicable("balance_inheritance", anchor, "needs 1 ≤ ℓ < k")],
            ..Default::default()
        });
    }
    let mut items = Vec::new();
    for (i, f) in ctx.subjects(ctx.k()).into_iter().enumerate() {
        for &ell in &ells {
            items.push((Some(i), verify_inheritance(&ctx.x, f, ell)?.record()));
        }
    }
    Ok(Outcome { records: fold(items), ..Default::default() })
}

fn perfect_balance(ctx: &Context) -> Result<Outcome, Error> {
    let anchor = "perfect balance in dimension ℓ forces perfect balance below ℓ";
    let mut items = Vec::new();
    for (i, f) in ctx.subjects(ctx.k()).into_iter().enumerate() {
        let p = balance_profile(&ctx.x, f)?;
        let top = (1..p.levels.len()).rev().find(|&l| p.levels[l].alpha == ExtRational::one());
        let rec = match top {
            None => not_applicable("perfect_balance_descends", anchor, "no ℓ ≥ 1 with α_ℓ = 1"),
            Some(l) => {
                let bad = p.levels[..l].iter().find(|lv| lv.alpha != ExtRational::one());
                let rec = CheckRecord::new("perfect_balance_descends", anchor, Verdict::of(bad.is_none()))
                    .detail(format!("α_{l} = 1"));
                match bad {
                    Some(lv) => rec.witness(format!("α_{} = {} at {}", lv.ell, lv.alpha, lv.witness)),
                    None => rec,
                }
            }
        };
        items.push((Some(i), rec));
    }
    Ok(Outcome { records: fold(items), ..Default::default() })
}

fn measured_alpha(ctx: &Context, f: &Cochain) -> Result<Option<Rational>, Error> {
    if let Some(a) = &ctx.cfg.alpha {
        return Ok(Some(a.clone()));
    }
    let a = balance_profile(&ctx.x, f)?.max_alpha();
    Ok(a.finite().map(|a| if *a < Rational::one() { Rational::one() } else { a.clone() }))
}

fn dense_faces(ctx: &Context) -> Result<Outcome, Error> {
    let anchor = "weight of dense (k-1)-faces is at most 3k!((k+1)^3 α^k λ/ε)^2 ‖f‖";
    if ctx.k() == 0 {
        return Ok(Outcome {
            records: vec![not_applicable("dense_face_bound", anchor, "needs k ≥ 1")],
            ..Default::default()
        });
    }
    let mut items = Vec::new();
    for (i, f) in ctx.theorem_subjects().into_iter().enumerate() {
        let Some(alpha) = measured_alpha(ctx, f)? else {
            items.push((Some(i), not_applicable("dense_face_bound", anchor, "balance constant is infinite")));
            continue;
        };
        let h = dense_hierarchy(&ctx.x, f, &ctx.cfg.eta, &alpha, &ctx.cfg.epsilon)?;
        let r = check_dense_face_bound(&ctx.x, f, &h, ctx.lambda, ctx.spectral.lambda_eff())?;
        items.extend(r.records().cloned().map(|c| (Some(i), c)));
    }
    Ok(Outcome { records: fold(items), ..Default::default() })
}

fn pseudorandom(ctx: &Context) -> Result<Outcome, Error> {
    let ells = ctx.ells(0);
    if ells.is_empty() {
        let rec =
            not_applicable("pseudorandomness", "small double-balanced sets are almost pseudorandom", "needs k ≥ 1");
        return Ok(Outcome { records: vec![rec], ..Default::default() });
    }
    let mut items = Vec::new();
    for (i, f) in ctx.theorem_subjects().into_iter().enumerate() {
        for &ell in &ells {
            items.push((Some(i), check_pseudorandomness(&ctx.x, f, ell, &ctx.cfg.epsilon, ctx.lambda)?));
        }
    }
    Ok(Outcome { records: fold(items), ..Default::default() })
}

fn delta1_chain(ctx: &Context) -> Result<Outcome, Error> {
    let anchor = "‖δ₁f‖ ≥ (k+2)‖f‖(1 - (k+1)(λ + η + ‖DENSE‖/‖f‖))";
    if ctx.k() == 0 {
        return Ok(Outcome {
            records: vec![not_applicable("delta1_dense_bound", anchor, "needs 1 ≤ k < d")],
            ..Default::default()
        });
    }
    let mut items = Vec::new();
    let subjects = ctx.subjects(ctx.k()).into_iter().chain(if ctx.cochain.is_some() {
        Vec::new()
    } else {
        ctx.small.iter().collect()
    });
    for (i, f) in subjects.enumerate() {
        if f.is_zero() {
            continue;
        }
        items.extend(check_delta1_dense_bound(&ctx.x, f, &ctx.cfg.eta, ctx.lambda)?.into_iter().map(|r| (Some(i), r)));
    }
    Ok(Outcome { records: fold(items), ..Default::default() })
}

fn delta1_theorems(ctx: &Context) -> Result<Outcome, Error> {
    if ctx.k() == 0 || ctx.d() < 2 {
        let rec =
            not_applicable("near_optimal_delta1", "small balanced sets have ‖δ₁f‖ ≥ (k+2)(1-3ε)‖f‖", "needs 1 ≤ k < d");
        return Ok(Outcome { records: vec![rec], ..Default::default() });
    }
    let assumption = BalanceAssumption::Uniform(ctx.cfg.alpha.clone());
    let mut items = Vec::new();
    for (i, f) in ctx.theorem_subjects().into_iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        let eps = &ctx.cfg.epsilon;
        items.push((Some(i), check_near_optimal_delta1(&ctx.x, f, eps, ctx.lambda, &assumption)?));
        items.push((Some(i), check_positive_delta1(&ctx.x, f, eps, ctx.lambda, &assumption)?));
    }
    Ok(Outcome { records: fold(items), ..Default::default() })
}

/// Re-evaluates a reported minimiser: its coboundary and distance must give
/// the reported ratio, and it must be a minimum-weight coset element.
fn witness_record(x: &SimplicialComplex, name: &str, e: &ExpansionConstant, budget: u64) -> Result<CheckRecord, Error> {
    let anchor = "expansion witnesses re-evaluate to the reported ratio";
    let Some(w) = &e.witness else {
        return Ok(not_applicable(name, anchor, "every cochain lies in the subspace; the constant is +inf"));
    };
    let delta = norm(x, &coboundary(x, w)?);
    let dist = norm(x, w);
    let ratio = ExtRational::ratio(&delta, &dist);
    let minimal_ok = !name.starts_with("coboundary") || is_minimal(x, w, budget)?;
    let holds = ratio == e.value && minimal_ok;
    Ok(CheckRecord::new(name, anchor, Verdict::of(holds))
        .sides(ratio.to_string(), e.value.to_string())
        .witness(w.faces(x).iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" ")))
}

fn expansion_constants(ctx: &Context) -> Result<Outcome, Error> {
    let x = &ctx.x;
    let budget = ctx.cfg.budget;
    let mut out = Outcome::default();
    for j in 0..x.dim() {
        let name = format!("coboundary_expansion[k={j}]");
        match coboundary_expansion(x, j, budget) {
            Ok(e) => {
                out.measure(name.clone(), e.value.to_string());
                out.records.push(witness_record(x, &name, &e, budget)?);
            }
            Err(e) if e.is_infeasible() => out.records.push(infeasible(&name, &e)),
            Err(e) => return Err(e),
        }
    }
    let k = ctx.k();
    if k >= 1 {
        match min_link_coboundary_expansion(x, k, budget) {
            Ok(b) => {
                out.measure(format!("link_beta[k={k}]"), b.beta.to_string());
                if let Some(s) = &b.sigma {
                    out.measure(format!("link_beta_face[k={k}]"), s.to_string());
                }
            }
            Err(e) if e.is_infeasible() => out.records.push(infeasible(&format!("link_beta[k={k}]"), &e)),
            Err(e) => return Err(e),
        }
    }
    let name = format!("cosystolic_expansion[k={k}]");
    match cosystolic_expansion(x, k, budget) {
        Ok(c) => {
            out.measure(format!("cosystolic_epsilon[k={k}]"), c.epsilon.value.to_string());
            out.measure(format!("cosystole_mu[k={k}]"), c.mu.to_string());
            out.records.push(witness_record(x, &name, &c.epsilon, budget)?);
        }
        Err(e) if e.is_infeasible() => out.records.push(infeasible(&name, &e)),
        Err(e) => return Err(e),
    }
    Ok(out)
}

fn cohomology_balance(ctx: &Context) -> Result<Outcome, Error> {
    let anchor = "minimal cohomology elements are (ℓ+1)/β-double balanced";
    if ctx.k() == 0 {
        return Ok(Outcome {
            records: vec![not_applicable("cohomology_balance", anchor, "needs k ≥ 1")],
            ..Default::default()
        });
    }
    let co = match ctx.cohomology() {
        Ok(c) => c,
        Err(e) if e.is_infeasible() => {
            return Ok(Outcome { records: vec![infeasible("cohomology_balance", e)], ..Default::default() })
        }
        Err(e) => return Err(e.clone()),
    };
    let mut records = check_cohomology_balance(&ctx.x, co)?;
    if let Some(ell) = ctx.cfg.ell {
        let tag = format!("ell={ell}]");
        records.retain(|r| !r.name.contains("ell=") || r.name.ends_with(&tag));
    }
    Ok(Outcome { records, ..Default::default() })
}

fn cosystole(ctx: &Context) -> Result<Outcome, Error> {
    let anchor = "nontrivial cohomology has weight ≥ (1-ε)β^k/(k+1)!";
    if ctx.k() == 0 || ctx.d() < 2 {
        return Ok(Outcome {
            records: vec![not_applicable("cosystole_lower_bound", anchor, "needs 1 ≤ k < d")],
            ..Default::default()
        });
    }
    let co = match ctx.cohomology() {
        Ok(c) => c,
        Err(e) if e.is_infeasible() => {
            return Ok(Outcome { records: vec![infeasible("cosystole_lower_bound", e)], ..Default::default() })
        }
        Err(e) => return Err(e.clone()),
    };
    let records = check_cosystole_lower_bound(&ctx.x, co, &ctx.cfg.epsilon, ctx.lambda)?;
    Ok(Outcome { records, ..Default::default() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(name: &str, v: Verdict) -> CheckRecord {
        CheckRecord::new(name, "a", v)
    }

    #[test]
    fn folding_prefers_violations_and_counts() {
        let items = vec![
            (Some(0), rec("x", Verdict::Verified)),
            (Some(1), rec("y", Verdict::HypothesisNotMet)),
            (Some(2), rec("x", Verdict::Violated)),
            (Some(3), rec("x", Verdict::HypothesisNotMet)),
        ];
        let out = fold(items);
        assert_eq!(out.len(), 2);
        assert_eq!(out[0].verdict, Verdict::Violated);
        assert_eq!(out[0].witness.as_deref(), Some("sample 2"));
        assert!(out[0].detail.as_deref().unwrap().contains("verified=1, violated=1, hypothesis_not_met=1"));
        assert_eq!(out[1].verdict, Verdict::HypothesisNotMet);
    }

    #[test]
    fn single_unsampled_records_pass_through() {
        let out = fold(vec![(None, rec("z", Verdict::Verified))]);
        assert_eq!(out[0].detail, None);
    }
}
