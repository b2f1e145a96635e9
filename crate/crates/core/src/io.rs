//! Text formats: `.cplx` complexes, `.cochain` cochains, graph edge lists.
//!
//! `.cplx`: `#` starts a comment; the first content line is `dim d`, then
//! one top face per line as space-separated vertex labels.
//!
//! `.cochain`: first content line `k <dim>`, then one support face per line.
//!
//! Writers emit a canonical form (sorted vertices, sorted faces, no
//! comments), so `write(read(file)) == file` for canonical files.

use std::fmt::Write as _;

use crate::cochain::Cochain;
use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::rational::format;
use crate::spectral::WeightedGraph;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_header(line: Option<(usize, &str)>, key: &str) -> Result<usize> {
    let (no, line) = line.ok_or(Error::Parse { line: 0, message: format!("missing `{key} <n>` header") })?;
    let mut parts = line.split_whitespace();
    match (parts.next(), parts.next().map(str::parse::<usize>), parts.next()) {
        (Some(k), Some(Ok(n)), None) if k == key => Ok(n),
        _ => Err(Error::Parse { line: no, message: format!("expected `{key} <n>`, found {line:?}") }),
    }
}

fn parse_face(no: usize, line: &str) -> Result<Vec<u32>> {
    line.split_whitespace()
        .map(|t| t.parse::<u32>().map_err(|_| Error::Parse { line: no, message: format!("bad vertex {t:?}") }))
        .collect()
}

pub fn read_complex(text: &str) -> Result<SimplicialComplex> {
    let mut lines = content_lines(text);
    let d = parse_header(lines.next(), "dim")?;
    let mut tops = Vec::new();
    for (no, line) in lines {
        tops.push(parse_face(no, line)?);
    }
    SimplicialComplex::from_top_faces(tops, d)
}

fn push_face(out: &mut String, face: &Face) {
    let verts: Vec<String> = face.vertices().iter().map(u32::to_string).collect();
    out.push_str(&verts.join(" "));
    out.push('\n');
}

pub fn write_complex(x: &SimplicialComplex) -> String {
    let mut out = format!("dim {}\n", x.dim());
    for face in x.top_faces() {
        push_face(&mut out, face);
    }
    out
}

pub fn read_cochain(x: &SimplicialComplex, text: &str) -> Result<Cochain> {
    let mut lines = content_lines(text);
    let k = parse_header(lines.next(), "k")?;
    let mut faces = Vec::new();
    for (no, line) in lines {
        let face = Face::new(parse_face(no, line)?)?;
        if face.len() != k + 1 {
            return Err(Error::Parse { line: no, message: format!("face {face} is not a {k}-face") });
        }
        faces.push(face);
    }
    Cochain::from_faces(x, k, faces.iter())
}

pub fn write_cochain(x: &SimplicialComplex, f: &Cochain) -> String {
    let mut out = format!("k {}\n", f.dim());
    for face in f.faces(x) {
        push_face(&mut out, face);
    }
    out
}

/// Plain edge list: `vertices <n>`, one `v weight` line per vertex, then
/// `edges <m>` and one `u v weight` line per edge (loops have `u == v`).
pub fn write_graph(g: &WeightedGraph) -> String {
    let mut out = format!("vertices {}\n", g.num_vertices());
    for (v, w) in g.vertex_weights().iter().enumerate() {
        let _ = writeln!(out, "{v} {}", format(w));
    }
    let _ = writeln!(out, "edges {}", g.edges().len());
    for (u, v, w) in g.edges() {
        let _ = writeln!(out, "{u} {v} {}", format(w));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_complex, rp2_six};

    #[test]
    fn complex_round_trip() {
        let x = rp2_six();
        let text = write_complex(&x);
        let y = read_complex(&text).unwrap();
        assert_eq!(x, y);
        assert_eq!(write_complex(&y), text);
    }

    #[test]
    fn comments_and_errors() {
        let x = read_complex("# triangle\n dim 2 \n\n2 1 0 # one face\n").unwrap();
        assert_eq!(x.count(2), 1);
        assert!(read_complex("dim 2\n0 1\n").is_err());
        assert!(read_complex("dimension 2\n0 1 2\n").is_err());
        assert!(read_complex("dim 2\n0 1 x\n").is_err());
        assert!(read_complex("").is_err());
    }

    #[test]
    fn cochain_round_trip() {
        let x = complete_complex(5, 2).unwrap();
        let f = Cochain::from_indices(&x, 1, [0, 3, 7]).unwrap();
        let text = write_cochain(&x, &f);
        assert_eq!(read_cochain(&x, &text).unwrap(), f);
        assert!(read_cochain(&x, "k 1\n0 1 2\n").is_err());
        assert!(read_cochain(&x, "k 1\n0 9\n").is_err());
    }
}
