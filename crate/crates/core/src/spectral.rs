//! Walk spectra of weighted graphs attached to a complex.
//!
//! A [`WeightedGraph`] stores a symmetric edge measure: an edge `{u, v}` of
//! weight `w` contributes `w / 2` to each ordered pair, a loop at `u`
//! contributes `w` to `(u, u)`. Vertex weights must be the marginals of that
//! measure, which makes the walk `P(u, v) = W(u, v) / w(u)` reversible.
//! Spectra are those of `D^{-1/2} W D^{-1/2}`, computed by cyclic Jacobi.

use fixedbitset::FixedBitSet;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::cochain::{norm, restrict, Cochain};
use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::rational::{to_f64, Rational};

#[derive(Clone, Debug)]
pub struct WeightedGraph {
    vertex_weights: Vec<Rational>,
    edges: Vec<(usize, usize, Rational)>,
}

impl WeightedGraph {
    /// Validates that vertex weights are the marginals of the edge measure.
    pub fn new(vertex_weights: Vec<Rational>, edges: Vec<(usize, usize, Rational)>) -> Result<Self> {
        let n = vertex_weights.len();
        let mut marginal = vec![Rational::zero(); n];
        for (u, v, w) in &edges {
            if *u >= n || *v >= n || w.is_negative() {
                return Err(Error::InvalidParameter(format!("bad edge ({u}, {v})")));
            }
            if u == v {
                marginal[*u] += w;
            } else {
                let half = w / Rational::from_integer(2.into());
                marginal[*u] += &half;
                marginal[*v] += half;
            }
        }
        if marginal != vertex_weights {
            return Err(Error::NonReversible);
        }
        Ok(WeightedGraph { vertex_weights, edges })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_weights.len()
    }

    pub fn vertex_weights(&self) -> &[Rational] {
        &self.vertex_weights
    }

    pub fn edges(&self) -> &[(usize, usize, Rational)] {
        &self.edges
    }

    /// Ordered-pair mass `W(u, v)` as a dense exact matrix.
    pub fn pair_mass(&self) -> Vec<Vec<Rational>> {
        let n = self.num_vertices();
        let mut w = vec![vec![Rational::zero(); n]; n];
        let two = Rational::from_integer(2.into());
        for (u, v, x) in &self.edges {
            if u == v {
                w[*u][*u] += x;
            } else {
                let half = x / &two;
                w[*u][*v] += &half;
                w[*v][*u] += half;
            }
        }
        w
    }

    pub fn is_connected(&self) -> bool {
        let n = self.num_vertices();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut components = n;
        for (u, v, w) in &self.edges {
            if u != v && !w.is_zero() {
                let (a, b) = (find(&mut parent, *u), find(&mut parent, *v));
                if a != b {
                    parent[a] = b;
                    components -= 1;
                }
            }
        }
        components <= 1
    }

    /// `D^{-1/2} W D^{-1/2}` in floating point.
    pub fn symmetrized_operator(&self) -> Vec<Vec<f64>> {
        let d: Vec<f64> = self.vertex_weights.iter().map(|w| to_f64(w).sqrt()).collect();
        self.pair_mass()
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, w)| if d[i] > 0.0 && d[j] > 0.0 { to_f64(w) / (d[i] * d[j]) } else { 0.0 })
                    .collect()
            })
            .collect()
    }

    pub fn spectrum(&self) -> Spectrum {
        let s = self.symmetrized_operator();
        let (values, vectors) = jacobi_eigen(&s);
        let max_residual = residual(&s, &values, &vectors);
        Spectrum { eigenvalues: values, eigenvectors: vectors, max_residual, connected: self.is_connected() }
    }

    /// Measure of `A`: the total weight of its vertices.
    pub fn set_weight(&self, a: &FixedBitSet) -> Rational {
        a.ones().map(|v| &self.vertex_weights[v]).sum()
    }
}

#[derive(Clone, Debug)]
pub struct Spectrum {
    /// Descending.
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[i]` belongs to `eigenvalues[i]`.
    pub eigenvectors: Vec<Vec<f64>>,
    /// Largest `|Sx - λx|_∞` over all pairs.
    pub max_residual: f64,
    pub connected: bool,
}

impl Spectrum {
    /// Second largest eigenvalue, or 1 for a disconnected graph.
    pub fn second(&self) -> f64 {
        if !self.connected {
            return 1.0;
        }
        self.eigenvalues.get(1).copied().unwrap_or(f64::NEG_INFINITY)
    }

    pub fn smallest(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }
}

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations,
/// run until the off-diagonal Frobenius mass drops below `1e-12`.
/// Returns eigenvalues in descending order with unit eigenvectors.
pub fn jacobi_eigen(m: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut v: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    let off = |a: &Vec<Vec<f64>>| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i][j] * a[i][j];
                }
            }
        }
        s.sqrt()
    };
    for _sweep in 0..100 {
        if off(&a) <= 1e-12 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (akp, akq) = (row[p], row[q]);
                    row[p] = c * akp - s * akq;
                    row[q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vkp, vkq) = (row[p], row[q]);
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j][j].total_cmp(&a[i][i]));
    let values = order.iter().map(|&i| a[i][i]).collect();
    let vectors = order.iter().map(|&i| (0..n).map(|k| v[k][i]).collect()).collect();
    (values, vectors)
}

fn residual(m: &[Vec<f64>], values: &[f64], vectors: &[Vec<f64>]) -> f64 {
    let mut worst: f64 = 0.0;
    for (lambda, x) in values.iter().zip(vectors) {
        for (row, xi) in m.iter().zip(x) {
            let mx: f64 = row.iter().zip(x).map(|(a, b)| a * b).sum();
            worst = worst.max((mx - lambda * xi).abs());
        }
    }
    worst
}

/// The 1-skeleton of `x` weighted by `P_0` and `P_1`.
pub fn underlying_graph(x: &SimplicialComplex) -> Result<WeightedGraph> {
    if x.dim() < 1 {
        return Err(Error::dim(x.dim(), "the underlying graph needs a complex of dimension at least 1"));
    }
    let vertex_weights = (0..x.count(0)).map(|i| x.weight_at(1, i)).collect();
    let edges = (0..x.count(1))
        .map(|j| {
            let ends = x.facets_of(2, j);
            (ends[0], ends[1], x.weight_at(2, j))
        })
        .collect();
    WeightedGraph::new(vertex_weights, edges)
}

/// Second largest walk eigenvalue with solver diagnostics.
#[derive(Clone, Debug, Serialize)]
pub struct SecondEigenvalue {
    pub value: f64,
    /// False when the graph is disconnected and `value` was forced to 1.
    pub connected: bool,
    pub residual: f64,
}

pub fn second_eigenvalue(g: &WeightedGraph) -> SecondEigenvalue {
    let s = g.spectrum();
    SecondEigenvalue { value: s.second(), connected: s.connected, residual: s.max_residual }
}

#[derive(Clone, Debug, Serialize)]
pub struct LinkSpectrum {
    pub sigma: Face,
    pub lambda2: f64,
    pub lambda_min: f64,
    pub connected: bool,
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralReport {
    pub links: Vec<LinkSpectrum>,
    /// Max of `lambda2` over all scanned links.
    pub lambda_one_sided: f64,
    /// Max of `max(lambda2, |lambda_min|)` over all scanned links.
    pub lambda_two_sided: f64,
    pub max_residual: f64,
}

impl SpectralReport {
    /// `max(0, lambda_one_sided)`, the value used wherever a statement asks
    /// for a positive spectral bound.
    pub fn lambda_eff(&self) -> f64 {
        self.lambda_one_sided.max(0.0)
    }
}

/// Scans the links of every face of dimension `-1..=d-2`.
pub fn local_spectral_lambda(x: &SimplicialComplex) -> Result<SpectralReport> {
    let mut links = Vec::new();
    for size in 0..x.dim() {
        for idx in 0..x.faces_of_size(size).len() {
            let g = underlying_graph(x.link_at(size, idx))?;
            let s = g.spectrum();
            links.push(LinkSpectrum {
                sigma: x.face_at(size, idx).clone(),
                lambda2: s.second(),
                lambda_min: s.smallest(),
                connected: s.connected,
                residual: s.max_residual,
            });
        }
    }
    let lambda_one_sided = links.iter().map(|l| l.lambda2).fold(f64::NEG_INFINITY, f64::max);
    let lambda_two_sided = links.iter().map(|l| l.lambda2.max(l.lambda_min.abs())).fold(f64::NEG_INFINITY, f64::max);
    let max_residual = links.iter().map(|l| l.residual).fold(0.0, f64::max);
    Ok(SpectralReport { links, lambda_one_sided, lambda_two_sided, max_residual })
}

/// The graph on `X(k)` with ordered-pair mass
/// `W(s1, s2) = Σ_u P_0(u) Pr[s1 ∪ u | u] Pr[s2 ∪ u | u]`, loops included.
pub fn complement_walk_graph(x: &SimplicialComplex, k: usize) -> Result<WeightedGraph> {
    if k >= x.dim() {
        return Err(Error::dim(k, "the complement-walk graph needs k < d"));
    }
    let n = x.count(k);
    let mut w = vec![vec![Rational::zero(); n]; n];
    for u in 0..x.count(0) {
        let pu = x.weight_at(1, u);
        let link = x.link_at(1, u);
        let members: Vec<(usize, Rational)> = (0..link.count(k))
            .map(|i| (x.index_of(link.face_at(k + 1, i)).expect("link faces lie in X"), link.weight_at(k + 1, i)))
            .collect();
        for (a, pa) in &members {
            let scaled = &pu * pa;
            for (b, pb) in &members {
                w[*a][*b] += &scaled * pb;
            }
        }
    }
    let two = Rational::from_integer(2.into());
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a..n {
            if !w[a][b].is_zero() {
                edges.push((a, b, if a == b { w[a][a].clone() } else { &w[a][b] * &two }));
            }
        }
    }
    let vertex_weights = (0..n).map(|i| x.weight_at(k + 1, i)).collect();
    WeightedGraph::new(vertex_weights, edges)
}

/// Statistics of `mu(u) = ‖f^u‖` under `u ~ P_0`.
#[derive(Clone, Debug)]
pub struct RestrictionProfile {
    pub mu: Vec<Rational>,
    pub norm: Rational,
    pub mean: Rational,
    pub second_moment: Rational,
    pub variance: Rational,
}

pub fn restriction_profile(x: &SimplicialComplex, f: &Cochain) -> Result<RestrictionProfile> {
    let k = f.dim();
    if k >= x.dim() {
        return Err(Error::dim(k, "restriction to vertex links needs k < d"));
    }
    let mut mu = Vec::with_capacity(x.count(0));
    for u in 0..x.count(0) {
        let fu = restrict(x, f, x.face_at(1, u))?;
        mu.push(norm(x.link_at(1, u), &fu));
    }
    let mut mean = Rational::zero();
    let mut second_moment = Rational::zero();
    for (u, m) in mu.iter().enumerate() {
        let p = x.weight_at(1, u);
        mean += &p * m;
        second_moment += p * m * m;
    }
    let variance = &second_moment - &mean * &mean;
    Ok(RestrictionProfile { mu, norm: norm(x, f), mean, second_moment, variance })
}

impl RestrictionProfile {
    /// `Pr_u[mu(u) > ‖f‖ + eps]`.
    pub fn tail(&self, x: &SimplicialComplex, eps: &Rational) -> Rational {
        let cut = &self.norm + eps;
        self.mu.iter().enumerate().filter(|(_, m)| **m > cut).map(|(u, _)| x.weight_at(1, u)).sum()
    }
}

/// `Σ_{s1, s2 ∈ f} W(s1, s2)`: the quadratic form of `f` under `g`'s mass.
pub fn quadratic_mass(g: &WeightedGraph, f: &FixedBitSet) -> Rational {
    let w = g.pair_mass();
    let mut total = Rational::zero();
    for a in f.ones() {
        for b in f.ones() {
            total += &w[a][b];
        }
    }
    total
}

#[derive(Clone, Debug)]
pub struct EdgeBounds {
    pub set_weight: Rational,
    /// Measure of edges with exactly one endpoint in `A`.
    pub e1: Rational,
    /// Measure of edges (and loops) inside `A`.
    pub e2: Rational,
    pub lambda: f64,
    /// `2‖A‖(1 - λ - ‖A‖)`.
    pub e1_lower: f64,
    /// `‖A‖(λ + ‖A‖)`.
    pub e2_upper: f64,
}

impl EdgeBounds {
    pub fn e1_holds(&self, tol: f64) -> bool {
        to_f64(&self.e1) >= self.e1_lower - tol
    }

    pub fn e2_holds(&self, tol: f64) -> bool {
        to_f64(&self.e2) <= self.e2_upper + tol
    }
}

/// Edge measures around `A` and their spectral bounds with parameter `lambda`.
pub fn edge_bounds(g: &WeightedGraph, a: &FixedBitSet, lambda: f64) -> EdgeBounds {
    let mut e1 = Rational::zero();
    let mut e2 = Rational::zero();
    for (u, v, w) in g.edges() {
        match (a.contains(*u), a.contains(*v)) {
            (true, true) => e2 += w,
            (true, false) | (false, true) => e1 += w,
            _ => {}
        }
    }
    let set_weight = g.set_weight(a);
    let s = to_f64(&set_weight);
    EdgeBounds { e1, e2, lambda, e1_lower: 2.0 * s * (1.0 - lambda - s), e2_upper: s * (lambda + s), set_weight }
}
