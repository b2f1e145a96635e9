//! Pure simplicial complexes with induced face weights.
//!
//! A complex is stored as one lexicographically sorted face list per face
//! size, from the empty face (size 0) up to the top faces (size `d + 1`).
//! The top faces carry the uniform distribution; a `k`-face `s` has weight
//!
//! ```text
//! P_k(s) = #{top faces containing s} / (|X(d)| * C(d + 1, k + 1))
//! ```
//!
//! which is exactly the law of "pick a top face uniformly, then a uniform
//! `k`-subface". Weights are therefore kept as integer cover counts over a
//! per-dimension common denominator.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{binomial, ratio_u128, Rational};

/// A face: a strictly increasing list of vertex labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct Face(Vec<u32>);

impl Face {
    /// Sorts the vertices; rejects repeats.
    pub fn new(mut vertices: Vec<u32>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::RepeatedVertex(Face(vertices)));
        }
        Ok(Face(vertices))
    }

    pub fn empty() -> Self {
        Face(Vec::new())
    }

    pub fn vertex(v: u32) -> Self {
        Face(vec![v])
    }

    pub(crate) fn from_sorted(vertices: Vec<u32>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Face(vertices)
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|vertices| - 1`; the empty face has dimension -1.
    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Face) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    pub fn is_disjoint(&self, other: &Face) -> bool {
        self.0.iter().all(|v| !other.contains(*v))
    }

    pub fn without(&self, v: u32) -> Face {
        Face(self.0.iter().copied().filter(|&x| x != v).collect())
    }

    pub fn with(&self, v: u32) -> Face {
        let mut out = self.0.clone();
        if let Err(pos) = out.binary_search(&v) {
            out.insert(pos, v);
        }
        Face(out)
    }

    pub fn union(&self, other: &Face) -> Face {
        let mut out: Vec<u32> = self.0.iter().chain(other.0.iter()).copied().collect();
        out.sort_unstable();
        out.dedup();
        Face(out)
    }

    pub fn minus(&self, other: &Face) -> Face {
        Face(self.0.iter().copied().filter(|v| !other.contains(*v)).collect())
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// A pure, downward-closed complex with uniform weight on its top faces.
///
/// Built complexes are immutable; links are materialized lazily and cached,
/// so every query is safe to call from concurrent readers.
#[derive(Debug, Clone)]
pub struct SimplicialComplex {
    top_size: usize,
    /// Faces by size (`faces[s]` holds the `(s - 1)`-faces), sorted.
    faces: Vec<Vec<Face>>,
    index: Vec<HashMap<Face, usize>>,
    /// Number of top faces containing each face.
    cover: Vec<Vec<u64>>,
    facets: Vec<Vec<Vec<usize>>>,
    cofaces: Vec<Vec<Vec<usize>>>,
    links: Vec<OnceLock<Vec<SimplicialComplex>>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.top_size == other.top_size && self.faces == other.faces
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// Builds the downward closure of `top_faces`, each of which must have
    /// exactly `dim + 1` distinct vertices.
    pub fn from_top_faces<I, F>(top_faces: I, dim: usize) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: Into<Vec<u32>>,
    {
        let top_size = dim + 1;
        let mut tops = Vec::new();
        let mut seen = HashSet::new();
        for raw in top_faces {
            let face = Face::new(raw.into())?;
            if face.len() != top_size {
                let found = face.len();
                return Err(Error::MixedFaceSize { face, found, expected: top_size });
            }
            if !seen.insert(face.clone()) {
                return Err(Error::DuplicateTopFace(face));
            }
            tops.push(face);
        }
        if tops.is_empty() {
            return Err(Error::EmptyComplex);
        }
        Ok(Self::from_checked_tops(tops, top_size))
    }

    fn from_checked_tops(tops: Vec<Face>, top_size: usize) -> Self {
        let mut counts: Vec<HashMap<Face, u64>> = vec![HashMap::new(); top_size + 1];
        for top in &tops {
            let verts = top.vertices();
            for mask in 0u32..(1u32 << top_size) {
                let sub: Vec<u32> = (0..top_size).filter(|i| mask >> i & 1 == 1).map(|i| verts[i]).collect();
                *counts[sub.len()].entry(Face::from_sorted(sub)).or_insert(0) += 1;
            }
        }
        let mut faces = Vec::with_capacity(top_size + 1);
        let mut cover = Vec::with_capacity(top_size + 1);
        let mut index = Vec::with_capacity(top_size + 1);
        for level in counts {
            let mut entries: Vec<(Face, u64)> = level.into_iter().collect();
            entries.sort_unstable_by(|a, b| a.0.cmp(&b.0));
            index.push(entries.iter().enumerate().map(|(i, (f, _))| (f.clone(), i)).collect());
            cover.push(entries.iter().map(|(_, c)| *c).collect());
            faces.push(entries.into_iter().map(|(f, _)| f).collect::<Vec<_>>());
        }
        let mut facets: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top_size + 1];
        let mut cofaces: Vec<Vec<Vec<usize>>> =
            faces.iter().map(|level: &Vec<Face>| vec![Vec::new(); level.len()]).collect();
        for s in 1..=top_size {
            let below: &HashMap<Face, usize> = &index[s - 1];
            facets[s] = faces[s]
                .iter()
                .map(|face| face.vertices().iter().map(|&v| below[&face.without(v)]).collect())
                .collect();
            for (i, fs) in facets[s].iter().enumerate() {
                for &j in fs {
                    cofaces[s - 1][j].push(i);
                }
            }
        }
        let links = (0..=top_size).map(|_| OnceLock::new()).collect();
        SimplicialComplex { top_size, faces, index, cover, facets, cofaces, links }
    }

    /// Dimension `d` of the top faces.
    pub fn dim(&self) -> usize {
        self.top_size - 1
    }

    pub fn top_faces(&self) -> &[Face] {
        &self.faces[self.top_size]
    }

    pub fn num_top_faces(&self) -> usize {
        self.faces[self.top_size].len()
    }

    /// The `k`-faces `X(k)`; empty when `k > d`.
    pub fn faces(&self, k: usize) -> &[Face] {
        self.faces.get(k + 1).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Faces with exactly `size` vertices (`size == 0` gives `[{}]`).
    pub fn faces_of_size(&self, size: usize) -> &[Face] {
        self.faces.get(size).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.faces[1].iter().map(|f| f.vertices()[0])
    }

    pub fn num_vertices(&self) -> usize {
        self.faces[1].len()
    }

    pub fn count(&self, k: usize) -> usize {
        self.faces(k).len()
    }

    pub fn index_of(&self, face: &Face) -> Option<usize> {
        self.index.get(face.len())?.get(face).copied()
    }

    pub fn contains(&self, face: &Face) -> bool {
        self.index_of(face).is_some()
    }

    pub(crate) fn require(&self, face: &Face) -> Result<usize> {
        self.index_of(face).ok_or_else(|| Error::FaceNotFound(face.clone()))
    }

    pub fn face_at(&self, size: usize, idx: usize) -> &Face {
        &self.faces[size][idx]
    }

    /// Number of top faces containing the face.
    pub fn cover(&self, size: usize, idx: usize) -> u64 {
        self.cover[size][idx]
    }

    pub fn cover_of(&self, face: &Face) -> Option<u64> {
        self.index_of(face).map(|i| self.cover[face.len()][i])
    }

    /// Common denominator of the weights of faces with `size` vertices.
    pub fn weight_denominator(&self, size: usize) -> u128 {
        self.num_top_faces() as u128 * binomial(self.top_size, size)
    }

    pub fn weight_at(&self, size: usize, idx: usize) -> Rational {
        ratio_u128(self.cover[size][idx] as u128, self.weight_denominator(size))
    }

    /// Exact `P_k(face)` for `k = |face| - 1`.
    pub fn face_weight(&self, face: &Face) -> Result<Rational> {
        let idx = self.require(face)?;
        Ok(self.weight_at(face.len(), idx))
    }

    /// Indices (one level down) of the facets of a face, in order of the
    /// removed vertex.
    pub fn facets_of(&self, size: usize, idx: usize) -> &[usize] {
        &self.facets[size][idx]
    }

    /// Indices (one level up) of the faces having this face as a facet.
    pub fn cofaces_of(&self, size: usize, idx: usize) -> &[usize] {
        &self.cofaces[size][idx]
    }

    pub fn euler_characteristic(&self) -> i64 {
        (1..=self.top_size).map(|s| if s % 2 == 1 { 1 } else { -1 } * self.faces[s].len() as i64).sum()
    }

    /// All links of faces with `size` vertices, in face order.
    ///
    /// Only proper, non-top faces have a materialized link; the link of the
    /// empty face is the complex itself and is not stored here.
    pub fn links_of_size(&self, size: usize) -> &[SimplicialComplex] {
        assert!(size >= 1 && size < self.top_size, "no stored links for faces of size {size}");
        self.links[size].get_or_init(|| {
            self.faces[size]
                .iter()
                .map(|sigma| {
                    let tops: Vec<Face> =
                        self.top_faces().iter().filter(|t| sigma.is_subset_of(t)).map(|t| t.minus(sigma)).collect();
                    SimplicialComplex::from_checked_tops(tops, self.top_size - size)
                })
                .collect()
        })
    }

    /// The link complex of the face with index `idx` among faces of `size`.
    pub fn link_at(&self, size: usize, idx: usize) -> &SimplicialComplex {
        if size == 0 {
            self
        } else {
            &self.links_of_size(size)[idx]
        }
    }

    /// The link `X_sigma = { t \ sigma : sigma ⊆ t ∈ X }` with its induced
    /// (conditional) weights.
    pub fn link(&self, sigma: &Face) -> Result<LinkView<'_>> {
        let idx = self.require(sigma)?;
        if sigma.len() == self.top_size {
            return Err(Error::dim(sigma.dim(), "the link of a top face is {∅} and has no faces to analyse"));
        }
        Ok(LinkView { parent: self, sigma: sigma.clone(), complex: self.link_at(sigma.len(), idx) })
    }

    /// Reindexes every vertex through `map`; the map must be injective.
    pub fn relabel(&self, map: impl Fn(u32) -> u32) -> Result<Self> {
        let tops: Vec<Vec<u32>> =
            self.top_faces().iter().map(|f| f.vertices().iter().map(|&v| map(v)).collect()).collect();
        Self::from_top_faces(tops, self.dim())
    }
}

/// A link `X_sigma` together with its parent.
#[derive(Debug, Clone)]
pub struct LinkView<'a> {
    parent: &'a SimplicialComplex,
    sigma: Face,
    complex: &'a SimplicialComplex,
}

impl<'a> LinkView<'a> {
    pub fn sigma(&self) -> &Face {
        &self.sigma
    }

    pub fn parent(&self) -> &'a SimplicialComplex {
        self.parent
    }

    pub fn complex(&self) -> &'a SimplicialComplex {
        self.complex
    }

    /// `Pr[sigma ∪ tau | sigma]` computed in the parent: the chance that a
    /// uniform top face through `sigma`, then a uniform subset of its other
    /// vertices of size `|tau|`, yields `tau`.
    pub fn conditional_weight(&self, tau: &Face) -> Result<Rational> {
        let joint = self.sigma.union(tau);
        if !tau.is_disjoint(&self.sigma) {
            return Err(Error::FaceNotFound(tau.clone()));
        }
        let c = self.parent.cover_of(&joint).ok_or_else(|| Error::FaceNotFound(tau.clone()))?;
        let base = self.parent.cover_of(&self.sigma).ok_or_else(|| Error::FaceNotFound(self.sigma.clone()))?;
        let free = self.parent.top_size - self.sigma.len();
        Ok(ratio_u128(c as u128, base as u128 * binomial(free, tau.len())))
    }
}
