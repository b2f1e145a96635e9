//! Test complexes with known topology and spectra.

use serde::Serialize;

use crate::cochain::subsets;
use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::rng::SeededStream;

/// All `(d + 1)`-subsets of `{0, .., n - 1}`.
pub fn complete_complex(n: usize, d: usize) -> Result<SimplicialComplex> {
    if n <= d {
        return Err(Error::InvalidParameter(format!("complete complex needs n > d, got n = {n}, d = {d}")));
    }
    let verts: Vec<u32> = (0..n as u32).collect();
    let tops: Vec<Vec<u32>> = subsets(&verts, d + 1).map(|f| f.vertices().to_vec()).collect();
    SimplicialComplex::from_top_faces(tops, d)
}

/// A single `d`-simplex on `{0, .., d}`.
pub fn single_simplex(d: usize) -> SimplicialComplex {
    complete_complex(d + 1, d).expect("d + 1 > d")
}

/// The cycle graph `C_n` as a 1-dimensional complex.
pub fn cycle(n: usize) -> Result<SimplicialComplex> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("a cycle needs at least 3 vertices, got {n}")));
    }
    let n32 = n as u32;
    SimplicialComplex::from_top_faces((0..n32).map(|i| vec![i, (i + 1) % n32]), 1)
}

/// The 6-vertex real projective plane (antipodal quotient of the icosahedron).
pub fn rp2_six() -> SimplicialComplex {
    let tops =
        [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1], [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3]];
    SimplicialComplex::from_top_faces(tops.iter().map(|t| t.to_vec()), 2).expect("fixed triangulation")
}

/// The 7-vertex (Möbius–Kantor) torus: triangles `{i, i+1, i+3}` and
/// `{i, i+2, i+3}` mod 7.
pub fn torus_seven() -> SimplicialComplex {
    let tops = (0..7u32).flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]]);
    SimplicialComplex::from_top_faces(tops, 2).expect("fixed triangulation")
}

#[derive(Clone, Debug)]
pub struct RandomComplex {
    pub complex: SimplicialComplex,
    /// `(d - 1)`-faces of the full skeleton left uncovered and dropped.
    pub dropped_faces: usize,
}

/// Linial–Meshulam: the full `(d - 1)`-skeleton on `n` vertices with each
/// `d`-face kept independently with probability `p`.
///
/// Candidates are visited in lexicographic order, one Bernoulli draw each.
/// Faces of the skeleton that no kept `d`-face covers are discarded so the
/// result is pure; their number is reported.
pub fn linial_meshulam(n: usize, d: usize, p: f64, seed: u64) -> Result<RandomComplex> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("probability must lie in [0, 1], got {p}")));
    }
    if n <= d || d == 0 {
        return Err(Error::InvalidParameter(format!("need n > d >= 1, got n = {n}, d = {d}")));
    }
    let verts: Vec<u32> = (0..n as u32).collect();
    let mut rng = SeededStream::new(seed);
    let tops: Vec<Vec<u32>> =
        subsets(&verts, d + 1).filter(|_| rng.bernoulli(p)).map(|f| f.vertices().to_vec()).collect();
    if tops.is_empty() {
        return Err(Error::EmptyComplex);
    }
    let complex = SimplicialComplex::from_top_faces(tops, d)?;
    let dropped_faces = subsets(&verts, d).filter(|f: &Face| !complex.contains(f)).count();
    Ok(RandomComplex { complex, dropped_faces })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    Complete,
    Rp2Six,
    TorusSeven,
    SingleSimplex,
    LinialMeshulam,
}

impl std::str::FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "complete" => GeneratorKind::Complete,
            "rp2_6" | "rp2_six" => GeneratorKind::Rp2Six,
            "torus_7" | "torus_seven" => GeneratorKind::TorusSeven,
            "single_simplex" => GeneratorKind::SingleSimplex,
            "linial_meshulam" => GeneratorKind::LinialMeshulam,
            other => return Err(Error::InvalidParameter(format!("unknown generator kind {other:?}"))),
        })
    }
}

/// A generator invocation; identical specs give identical complexes.
#[derive(Clone, Debug, Serialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: Option<usize>,
    pub d: Option<usize>,
    pub p: Option<f64>,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<RandomComplex> {
        let need = |v: Option<usize>, name: &str| {
            v.ok_or_else(|| Error::InvalidParameter(format!("generator {:?} needs --{name}", self.kind)))
        };
        let plain = |complex| Ok(RandomComplex { complex, dropped_faces: 0 });
        match self.kind {
            GeneratorKind::Complete => plain(complete_complex(need(self.n, "n")?, need(self.d, "d")?)?),
            GeneratorKind::Rp2Six => plain(rp2_six()),
            GeneratorKind::TorusSeven => plain(torus_seven()),
            GeneratorKind::SingleSimplex => plain(single_simplex(need(self.d, "d")?)),
            GeneratorKind::LinialMeshulam => {
                let p = self.p.ok_or_else(|| Error::InvalidParameter("generator linial_meshulam needs --p".into()))?;
                linial_meshulam(need(self.n, "n")?, need(self.d, "d")?, p, self.seed)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::cohomology_dim;

    fn is_cycle(x: &SimplicialComplex, n: usize) -> bool {
        x.dim() == 1
            && x.num_vertices() == n
            && x.count(1) == n
            && (0..n).all(|i| x.cofaces_of(1, i).len() == 2)
            && cohomology_dim(x, 0).unwrap() == 0
    }

    #[test]
    fn complete_counts() {
        let x = complete_complex(4, 2).unwrap();
        assert_eq!((x.count(0), x.count(1), x.count(2)), (4, 6, 4));
        assert_eq!(complete_complex(8, 3).unwrap().count(3), 70);
        assert!(complete_complex(3, 3).is_err());
    }

    #[test]
    fn projective_plane_self_test() {
        let x = rp2_six();
        assert_eq!((x.count(0), x.count(1), x.count(2)), (6, 15, 10));
        assert_eq!(x.euler_characteristic(), 1);
        assert_eq!(cohomology_dim(&x, 1).unwrap(), 1);
        for v in 0..6 {
            assert!(is_cycle(x.link_at(1, v), 5));
        }
    }

    #[test]
    fn torus_self_test() {
        let x = torus_seven();
        assert_eq!((x.count(0), x.count(1), x.count(2)), (7, 21, 14));
        assert_eq!(x.euler_characteristic(), 0);
        assert_eq!(cohomology_dim(&x, 1).unwrap(), 2);
        for v in 0..7 {
            assert!(is_cycle(x.link_at(1, v), 6));
        }
    }

    #[test]
    fn linial_meshulam_extremes_and_determinism() {
        assert_eq!(linial_meshulam(6, 2, 1.0, 3).unwrap().complex, complete_complex(6, 2).unwrap());
        assert!(linial_meshulam(6, 2, 0.0, 3).is_err());
        let a = linial_meshulam(8, 2, 0.4, 11).unwrap();
        let b = linial_meshulam(8, 2, 0.4, 11).unwrap();
        assert_eq!(a.complex, b.complex);
        assert_eq!(a.dropped_faces, b.dropped_faces);
    }
}
