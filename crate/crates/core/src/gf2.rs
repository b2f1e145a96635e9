//! Dense bitset linear algebra over GF(2).

use fixedbitset::FixedBitSet;

/// A subspace of GF(2)^n kept in reduced row echelon form: every pivot
/// column is set in exactly one stored row, and it is that row's lowest bit.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    len: usize,
    rows: Vec<Row>,
}

#[derive(Clone, Debug)]
struct Row {
    pivot: usize,
    bits: FixedBitSet,
    /// Combination of the inserted vectors that produced `bits`.
    combo: FixedBitSet,
}

impl EchelonBasis {
    pub fn new(len: usize) -> Self {
        EchelonBasis { len, rows: Vec::new() }
    }

    pub fn spanned_by<'a>(len: usize, vectors: impl IntoIterator<Item = &'a FixedBitSet>) -> Self {
        let mut basis = Self::new(len);
        for v in vectors {
            basis.insert(v.clone());
        }
        basis
    }

    pub fn ambient_len(&self) -> usize {
        self.len
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = &FixedBitSet> {
        self.rows.iter().map(|r| &r.bits)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.pivot)
    }

    /// Reduces `v` modulo the subspace in place. The result is the canonical
    /// representative of the coset `v + span`: it has no pivot bits set.
    pub fn reduce(&self, v: &mut FixedBitSet) {
        for row in &self.rows {
            if v.contains(row.pivot) {
                v.symmetric_difference_with(&row.bits);
            }
        }
    }

    pub fn contains(&self, v: &FixedBitSet) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_clear()
    }

    /// Adds `v` to the spanning set; returns false when it was already in the
    /// span.
    pub fn insert(&mut self, v: FixedBitSet) -> bool {
        let combo = FixedBitSet::with_capacity(0);
        self.insert_tracked(v, combo).is_none()
    }

    /// Inserts `v` carrying a label vector `combo`. When `v` reduces to zero,
    /// returns the correspondingly reduced combo (a relation among labels).
    fn insert_tracked(&mut self, mut v: FixedBitSet, mut combo: FixedBitSet) -> Option<FixedBitSet> {
        for row in &self.rows {
            if v.contains(row.pivot) {
                v.symmetric_difference_with(&row.bits);
                combo.symmetric_difference_with(&row.combo);
            }
        }
        let Some(pivot) = v.minimum() else {
            return Some(combo);
        };
        for row in &mut self.rows {
            if row.bits.contains(pivot) {
                row.bits.symmetric_difference_with(&v);
                row.combo.symmetric_difference_with(&combo);
            }
        }
        self.rows.push(Row { pivot, bits: v, combo });
        None
    }
}

/// Kernel of the linear map sending the `i`-th standard basis vector of
/// GF(2)^`images.len()` to `images[i]` (each of length `codomain_len`).
pub fn kernel(images: &[FixedBitSet], codomain_len: usize) -> Vec<FixedBitSet> {
    let n = images.len();
    let mut basis = EchelonBasis::new(codomain_len);
    let mut out = Vec::new();
    for (i, img) in images.iter().enumerate() {
        let mut e = FixedBitSet::with_capacity(n);
        e.insert(i);
        if let Some(rel) = basis.insert_tracked(img.clone(), e) {
            out.push(rel);
        }
    }
    out
}

/// Picks, from `vectors`, a maximal subset independent modulo `sub`. These
/// represent a basis of `span(sub ∪ vectors) / sub`.
pub fn complement_basis(sub: &EchelonBasis, vectors: &[FixedBitSet]) -> Vec<FixedBitSet> {
    let mut ext = sub.clone();
    vectors.iter().filter(|v| ext.insert((*v).clone())).cloned().collect()
}

/// Visits all `2^basis.len()` elements of `start + span(basis)` in Gray-code
/// order. The callback receives the current vector and, after the first
/// visit, the index of the basis vector just added.
pub fn gray_walk(start: &FixedBitSet, basis: &[FixedBitSet], mut visit: impl FnMut(&FixedBitSet, Option<usize>)) {
    let mut cur = start.clone();
    visit(&cur, None);
    let m = basis.len();
    assert!(m < 64, "span of dimension {m} is not enumerable");
    for step in 1u64..(1u64 << m) {
        let j = step.trailing_zeros() as usize;
        cur.symmetric_difference_with(&basis[j]);
        visit(&cur, Some(j));
    }
}

pub fn bits_from(len: usize, ones: impl IntoIterator<Item = usize>) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(len);
    for i in ones {
        b.insert(i);
    }
    b
}

/// Lexicographic order on sorted support lists (`[0, 3] < [1]`, a proper
/// prefix comes first).
pub fn lex_cmp(a: &FixedBitSet, b: &FixedBitSet) -> std::cmp::Ordering {
    a.ones().cmp(b.ones())
}
