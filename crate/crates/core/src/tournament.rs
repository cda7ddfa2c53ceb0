//! Finite tournaments stored as dense bit matrices, plus the construction
//! primitives everything else is built from: duals, restrictions,
//! lexicographical sums and skew products of the 2-chain by a chain.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};

/// Largest vertex count a [`Tournament`] can hold (one `u64` row per vertex).
pub const MAX_VERTICES: usize = 64;

/// Bit mask with the low `n` bits set.
#[inline]
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bits of a mask in increasing order.
#[inline]
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

pub(crate) fn mask_of(n: usize, vertices: &[usize]) -> Result<u64> {
    let mut mask = 0u64;
    for &v in vertices {
        if v >= n {
            return Err(Error::OutOfRange { vertex: v, n });
        }
        if mask & (1 << v) != 0 {
            return Err(Error::DuplicateVertex(v));
        }
        mask |= 1 << v;
    }
    Ok(mask)
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "tournament",
            size: n,
            max: MAX_VERTICES,
        });
    }
    Ok(())
}

/// A finite tournament on the vertices `0..n`.
///
/// Row `i` of the matrix is the out-neighbourhood of `i`. The constructors
/// guarantee irreflexivity, antisymmetry and completeness.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    out: Vec<u64>,
}

impl Tournament {
    /// Builds a tournament from an edge list covering every unordered pair
    /// exactly once.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        check_size(n)?;
        let mut out = vec![0u64; n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::OutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if out[u] & (1 << v) != 0 || out[v] & (1 << u) != 0 {
                return Err(Error::DuplicatePair(u.min(v), u.max(v)));
            }
            out[u] |= 1 << v;
        }
        for u in 0..n {
            for v in u + 1..n {
                if out[u] & (1 << v) == 0 && out[v] & (1 << u) == 0 {
                    return Err(Error::MissingPair(u, v));
                }
            }
        }
        Ok(Tournament { n, out })
    }

    /// Builds a tournament from a predicate on ordered pairs `i < j`:
    /// `forward(i, j)` decides whether the edge is `i -> j` (otherwise `j -> i`).
    pub fn from_fn(n: usize, mut forward: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        check_size(n)?;
        let mut out = vec![0u64; n];
        for i in 0..n {
            for j in i + 1..n {
                if forward(i, j) {
                    out[i] |= 1 << j;
                } else {
                    out[j] |= 1 << i;
                }
            }
        }
        Ok(Tournament { n, out })
    }

    /// Builds a tournament from out-neighbourhood rows, validating the axioms.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        check_size(n)?;
        let full = full_mask(n);
        for (i, &row) in rows.iter().enumerate() {
            if row & !full != 0 {
                let v = bits(row & !full).next().unwrap_or(n);
                return Err(Error::OutOfRange { vertex: v, n });
            }
            if row & (1 << i) != 0 {
                return Err(Error::SelfLoop(i));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let ij = rows[i] >> j & 1;
                let ji = rows[j] >> i & 1;
                match ij + ji {
                    0 => return Err(Error::MissingPair(i, j)),
                    2 => return Err(Error::DuplicatePair(i, j)),
                    _ => {}
                }
            }
        }
        Ok(Tournament { n, out: rows })
    }

    /// The tournament with no vertices.
    pub fn empty() -> Self {
        Tournament { n: 0, out: Vec::new() }
    }

    /// Transitive tournament `0 -> 1 -> ... -> n-1`.
    pub fn chain(n: usize) -> Self {
        ChainSpec::ascending(n).tournament()
    }

    /// The 3-cycle `0 -> 1 -> 2 -> 0`.
    pub fn cycle3() -> Self {
        Tournament {
            n: 3,
            out: vec![0b010, 0b100, 0b001],
        }
    }

    /// The positive diamond on `a=0, b=1, c=2, d=3`: a 3-cycle `a -> b -> c -> a`
    /// dominating `d`.
    pub fn diamond() -> Self {
        Tournament::from_edges(4, &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)])
            .expect("diamond is a tournament")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// True iff `i -> j` is an edge.
    #[inline]
    pub fn edge(&self, i: usize, j: usize) -> bool {
        self.out[i] >> j & 1 == 1
    }

    #[inline]
    pub fn out_mask(&self, i: usize) -> u64 {
        self.out[i]
    }

    #[inline]
    pub fn in_mask(&self, i: usize) -> u64 {
        self.vertex_mask() & !self.out[i] & !(1 << i)
    }

    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        full_mask(self.n)
    }

    pub fn rows(&self) -> &[u64] {
        &self.out
    }

    #[inline]
    pub fn out_degree(&self, i: usize) -> usize {
        self.out[i].count_ones() as usize
    }

    pub fn score_sequence(&self) -> Vec<usize> {
        let mut s: Vec<usize> = (0..self.n).map(|i| self.out_degree(i)).collect();
        s.sort_unstable();
        s
    }

    /// All edges `(i, j)` in row-major order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e = Vec::with_capacity(self.n * self.n.saturating_sub(1) / 2);
        for i in 0..self.n {
            e.extend(bits(self.out[i]).map(|j| (i, j)));
        }
        e
    }

    /// The dual tournament: every edge reversed.
    pub fn dual(&self) -> Self {
        let out = (0..self.n).map(|i| self.in_mask(i)).collect();
        Tournament { n: self.n, out }
    }

    /// Induced tournament on `vertices`, relabelled `0..k` in the given order.
    pub fn restrict(&self, vertices: &[usize]) -> Result<Self> {
        mask_of(self.n, vertices)?;
        Ok(self.restrict_unchecked(vertices))
    }

    pub(crate) fn restrict_unchecked(&self, vertices: &[usize]) -> Self {
        let k = vertices.len();
        let mut out = vec![0u64; k];
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate() {
                if self.out[u] >> v & 1 == 1 {
                    out[a] |= 1 << b;
                }
            }
        }
        Tournament { n: k, out }
    }

    /// Induced tournament on the vertices of `mask`, in increasing order.
    pub fn restrict_mask(&self, mask: u64) -> Self {
        let vs: Vec<usize> = bits(mask & self.vertex_mask()).collect();
        self.restrict_unchecked(&vs)
    }

    /// Removes one vertex.
    pub fn remove_vertex(&self, v: usize) -> Result<Self> {
        if v >= self.n {
            return Err(Error::OutOfRange { vertex: v, n: self.n });
        }
        Ok(self.restrict_mask(self.vertex_mask() & !(1 << v)))
    }

    /// `σ·T`: vertex `i` of `self` becomes vertex `perm[i]` of the result.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                got: perm.len(),
            });
        }
        mask_of(self.n, perm)?;
        let mut out = vec![0u64; self.n];
        for i in 0..self.n {
            for j in bits(self.out[i]) {
                out[perm[i]] |= 1 << perm[j];
            }
        }
        Ok(Tournament { n: self.n, out })
    }

    /// A tournament is acyclic (transitive) iff its scores are `0, 1, ..., n-1`.
    pub fn is_acyclic(&self) -> bool {
        let mut seen = 0u64;
        for i in 0..self.n {
            seen |= 1 << self.out_degree(i);
        }
        seen == full_mask(self.n)
    }

    /// Whether the restriction to `mask` is acyclic.
    pub fn is_acyclic_on(&self, mask: u64) -> bool {
        let mut seen = 0u64;
        for i in bits(mask) {
            seen |= 1 << (self.out[i] & mask).count_ones();
        }
        seen == full_mask(mask.count_ones() as usize)
    }

    /// Whether `{a, b, c}` is a 3-cycle.
    #[inline]
    pub fn is_cycle(&self, a: usize, b: usize, c: usize) -> bool {
        let ab = self.edge(a, b);
        ab == self.edge(b, c) && ab == self.edge(c, a)
    }

    /// Lexicographically smallest sorted 3-cycle inside `mask`.
    pub fn find_cycle_in(&self, mask: u64) -> Option<[usize; 3]> {
        for a in bits(mask) {
            let above_a = mask & !full_mask(a + 1);
            for b in bits(above_a) {
                let thirds = if self.edge(a, b) {
                    self.out[b] & self.in_mask(a)
                } else {
                    self.out[a] & self.in_mask(b)
                };
                let thirds = thirds & above_a & !full_mask(b + 1);
                if thirds != 0 {
                    return Some([a, b, thirds.trailing_zeros() as usize]);
                }
            }
        }
        None
    }

    pub fn count_cycles(&self) -> usize {
        // n choose 3 minus transitive triples, counted at their source vertex.
        let n = self.n;
        let total = n * n.saturating_sub(1) * n.saturating_sub(2) / 6;
        let transitive: usize = (0..n)
            .map(|i| {
                let d = self.out_degree(i);
                d * d.saturating_sub(1) / 2
            })
            .sum();
        total - transitive
    }
}

impl fmt::Debug for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Tournament({})", self.n)?;
        for i in 0..self.n {
            let row: String = (0..self.n)
                .map(|j| if self.edge(i, j) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Ascending,
    Descending,
}

/// A finite chain: a truncation of ω (ascending) or ω* (descending).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChainSpec {
    pub length: usize,
    pub orientation: Orientation,
}

impl ChainSpec {
    pub fn ascending(length: usize) -> Self {
        ChainSpec {
            length,
            orientation: Orientation::Ascending,
        }
    }

    pub fn descending(length: usize) -> Self {
        ChainSpec {
            length,
            orientation: Orientation::Descending,
        }
    }

    pub fn reversed(self) -> Self {
        let orientation = match self.orientation {
            Orientation::Ascending => Orientation::Descending,
            Orientation::Descending => Orientation::Ascending,
        };
        ChainSpec { orientation, ..self }
    }

    /// Whether `x` comes before `y` (i.e. `x -> y` in the chain).
    #[inline]
    pub fn precedes(&self, x: usize, y: usize) -> bool {
        match self.orientation {
            Orientation::Ascending => x < y,
            Orientation::Descending => x > y,
        }
    }

    pub fn tournament(&self) -> Tournament {
        let mut out = vec![0u64; self.length];
        for (x, row) in out.iter_mut().enumerate() {
            for y in 0..self.length {
                if self.precedes(x, y) {
                    *row |= 1 << y;
                }
            }
        }
        Tournament {
            n: self.length,
            out,
        }
    }
}

/// Result of a lexicographical sum: the tournament and the contiguous vertex
/// range occupied by each block.
#[derive(Debug, Clone)]
pub struct LexSum {
    pub tournament: Tournament,
    pub blocks: Vec<Range<usize>>,
}

/// Lexicographical sum of `blocks` indexed by `index`.
pub fn lex_sum(index: &Tournament, blocks: &[Tournament]) -> Result<LexSum> {
    if blocks.len() != index.order() {
        return Err(Error::ArityMismatch {
            expected: index.order(),
            got: blocks.len(),
        });
    }
    let total: usize = blocks.iter().map(Tournament::order).sum();
    check_size(total)?;
    let mut ranges = Vec::with_capacity(blocks.len());
    let mut start = 0;
    for b in blocks {
        ranges.push(start..start + b.order());
        start += b.order();
    }
    let range_mask = |r: &Range<usize>| full_mask(r.end) & !full_mask(r.start);
    let mut out = vec![0u64; total];
    for (i, (bi, ri)) in blocks.iter().zip(&ranges).enumerate() {
        let mut across = 0u64;
        for j in bits(index.out_mask(i)) {
            across |= range_mask(&ranges[j]);
        }
        for (local, row) in out[ri.clone()].iter_mut().enumerate() {
            *row = across | (bi.out_mask(local) << ri.start);
        }
    }
    Ok(LexSum {
        tournament: Tournament { n: total, out },
        blocks: ranges,
    })
}

/// Lexicographical product `T.D`: every vertex of `index` replaced by a copy of `t`.
pub fn lex_product(t: &Tournament, index: &Tournament) -> Result<Tournament> {
    let blocks = vec![t.clone(); index.order()];
    Ok(lex_sum(index, &blocks)?.tournament)
}

/// Lexicographical sum of chains of the given lengths indexed by `index`.
pub fn sum_of_chains(index: &Tournament, lengths: &[usize]) -> Result<Tournament> {
    let blocks: Vec<Tournament> = lengths.iter().map(|&m| Tournament::chain(m)).collect();
    Ok(lex_sum(index, &blocks)?.tournament)
}

/// Base generators of the skew product of the 2-chain by a chain.
///
/// A generator is a pair of template vertices `(p, i) -> (q, j)` where `p, q`
/// are positions in a 2-element chain and `i, j` are fibre coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorKind {
    /// `h_i = ((0,i),(1,i))`
    H0,
    H1,
    /// `v_0 = ((0,0),(0,1))`
    V0,
    /// `d_i = ((0,i),(1,1-i))`
    D0,
    D1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub inverse: bool,
}

impl Generator {
    pub const fn new(kind: GeneratorKind) -> Self {
        Generator { kind, inverse: false }
    }

    pub const fn inv(kind: GeneratorKind) -> Self {
        Generator { kind, inverse: true }
    }

    /// The template pair `((p, i), (q, j))`.
    pub fn template(self) -> ((u8, u8), (u8, u8)) {
        let pair = match self.kind {
            GeneratorKind::H0 => ((0, 0), (1, 0)),
            GeneratorKind::H1 => ((0, 1), (1, 1)),
            GeneratorKind::V0 => ((0, 0), (0, 1)),
            GeneratorKind::D0 => ((0, 0), (1, 1)),
            GeneratorKind::D1 => ((0, 1), (1, 0)),
        };
        if self.inverse {
            (pair.1, pair.0)
        } else {
            pair
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            GeneratorKind::H0 => "h0",
            GeneratorKind::H1 => "h1",
            GeneratorKind::V0 => "v0",
            GeneratorKind::D0 => "d0",
            GeneratorKind::D1 => "d1",
        };
        if self.inverse {
            write!(f, "{name}^-1")
        } else {
            f.write_str(name)
        }
    }
}

/// Vertex index of `(x, i)` in a skew product over a chain.
#[inline]
pub fn skew_vertex(x: usize, i: usize) -> usize {
    2 * x + i
}

/// The skew product Δ(C, X) on `C × {0, 1}`, with `(x, i)` stored at index `2x + i`.
///
/// Edge rules for a template `((p,i),(q,j))` in X:
/// same position `p = q = 0` gives `(x,i) -> (x,j)`;
/// `p = 0, q = 1` gives `(x,i) -> (y,j)` whenever `x` precedes `y` in C;
/// `p = 1, q = 0` gives `(x,i) -> (y,j)` whenever `y` precedes `x`.
pub fn skew_product(chain: &ChainSpec, generators: &[Generator]) -> Result<Tournament> {
    let len = chain.length;
    let n = 2 * len;
    check_size(n)?;
    let set: BTreeSet<Generator> = generators.iter().copied().collect();
    let mut count = vec![vec![0u8; n]; n];
    let mut out = vec![0u64; n];
    for g in &set {
        let ((p, i), (q, j)) = g.template();
        let (i, j) = (i as usize, j as usize);
        for x in 0..len {
            for y in 0..len {
                let applies = match (p, q) {
                    (0, 0) => x == y,
                    (0, 1) => chain.precedes(x, y),
                    (1, 0) => chain.precedes(y, x),
                    _ => false,
                };
                if applies {
                    let (u, v) = (skew_vertex(x, i), skew_vertex(y, j));
                    out[u] |= 1 << v;
                    count[u.min(v)][u.max(v)] += 1;
                }
            }
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if count[u][v] != 1 {
                return Err(Error::NotATournament {
                    u,
                    v,
                    times: count[u][v],
                });
            }
        }
    }
    Ok(Tournament { n, out })
}
