//! Canonical forms for tournaments.
//!
//! The code of a tournament is the row-major upper triangle of its adjacency
//! matrix under the relabelling that makes this bit string lexicographically
//! smallest among all leaves of an individualization-refinement search tree.
//! Refinement starts from out-degrees and splits cells by out-neighbour counts
//! into every other cell until the partition is equitable. Every leaf of the
//! (unpruned) tree is explored, so the result is exact.

use std::cmp::Ordering;

use crate::tournament::{bits, Tournament};

/// Identifies an isomorphism class of tournaments of a given size.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode {
    n: usize,
    words: Vec<u64>,
}

impl CanonicalCode {
    pub fn order(&self) -> usize {
        self.n
    }

    /// Bit `k` of the upper triangle, in row-major order `(0,1), (0,2), ..., (1,2), ...`.
    pub fn bit(&self, k: usize) -> bool {
        self.words[k / 64] >> (63 - k % 64) & 1 == 1
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Hex rendering, used in reports.
    pub fn to_hex(&self) -> String {
        let mut s = format!("{}:", self.n);
        for w in &self.words {
            s.push_str(&format!("{w:016x}"));
        }
        s
    }

    /// The canonical representative whose upper triangle is this code.
    pub fn to_tournament(&self) -> Tournament {
        let mut k = 0;
        Tournament::from_fn(self.n, |_, _| {
            let b = self.bit(k);
            k += 1;
            b
        })
        .expect("code length is within tournament limits")
    }
}

fn code_words(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(64).max(1)
}

fn encode(t: &Tournament, order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let mut words = vec![0u64; code_words(n)];
    let mut k = 0;
    for i in 0..n {
        let row = t.out_mask(order[i]);
        for &oj in &order[i + 1..] {
            if row >> oj & 1 == 1 {
                words[k / 64] |= 1 << (63 - k % 64);
            }
            k += 1;
        }
    }
    words
}

/// Canonical code plus the labelling that realises it: `order[p]` is the
/// original vertex placed at canonical position `p`.
#[derive(Debug, Clone)]
pub struct Labeling {
    pub code: CanonicalCode,
    pub order: Vec<usize>,
}

/// Ordered partition of the vertex set.
type Cells = Vec<Vec<usize>>;

fn refine(t: &Tournament, cells: &mut Cells) {
    loop {
        let masks: Vec<u64> = cells
            .iter()
            .map(|c| c.iter().fold(0u64, |m, &v| m | 1 << v))
            .collect();
        let mut split = None;
        for (ci, cell) in cells.iter().enumerate() {
            if cell.len() < 2 {
                continue;
            }
            let mut keyed: Vec<(Vec<u8>, usize)> = cell
                .iter()
                .map(|&v| {
                    let row = t.out_mask(v);
                    let sig = masks.iter().map(|m| (row & m).count_ones() as u8).collect();
                    (sig, v)
                })
                .collect();
            keyed.sort();
            if keyed.first().map(|k| &k.0) != keyed.last().map(|k| &k.0) {
                let mut parts: Vec<Vec<usize>> = Vec::new();
                let mut prev: Option<&Vec<u8>> = None;
                for (sig, v) in &keyed {
                    if prev != Some(sig) {
                        parts.push(Vec::new());
                        prev = Some(sig);
                    }
                    parts.last_mut().unwrap().push(*v);
                }
                split = Some((ci, parts));
                break;
            }
        }
        match split {
            Some((ci, parts)) => {
                cells.splice(ci..=ci, parts);
            }
            None => return,
        }
    }
}

struct Search<'a> {
    t: &'a Tournament,
    best: Option<(Vec<u64>, Vec<usize>)>,
    leaves_at_best: u64,
}

impl Search<'_> {
    fn run(&mut self, mut cells: Cells) {
        refine(self.t, &mut cells);
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i);
        match target {
            None => {
                let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
                let words = encode(self.t, &order);
                let ord = match &self.best {
                    None => Ordering::Less,
                    Some((b, _)) => words.cmp(b),
                };
                match ord {
                    Ordering::Less => {
                        self.best = Some((words, order));
                        self.leaves_at_best = 1;
                    }
                    Ordering::Equal => self.leaves_at_best += 1,
                    Ordering::Greater => {}
                }
            }
            Some(ti) => {
                for &v in &cells[ti] {
                    let mut next = cells.clone();
                    let rest: Vec<usize> = cells[ti].iter().copied().filter(|&w| w != v).collect();
                    next.splice(ti..=ti, [vec![v], rest]);
                    self.run(next);
                }
            }
        }
    }
}

fn search(t: &Tournament) -> Search<'_> {
    let mut s = Search {
        t,
        best: None,
        leaves_at_best: 0,
    };
    let n = t.order();
    if n == 0 {
        s.best = Some((vec![0], Vec::new()));
        s.leaves_at_best = 1;
    } else {
        s.run(vec![(0..n).collect()]);
    }
    s
}

pub fn canonical_labeling(t: &Tournament) -> Labeling {
    let s = search(t);
    let (words, order) = s.best.expect("search visits at least one leaf");
    Labeling {
        code: CanonicalCode {
            n: t.order(),
            words,
        },
        order,
    }
}

pub fn canonical_form(t: &Tournament) -> CanonicalCode {
    canonical_labeling(t).code
}

/// The canonical representative of the isomorphism class of `t`.
pub fn canonical_representative(t: &Tournament) -> Tournament {
    canonical_form(t).to_tournament()
}

pub fn is_isomorphic(a: &Tournament, b: &Tournament) -> bool {
    a.order() == b.order() && canonical_form(a) == canonical_form(b)
}

/// Number of search-tree leaves attaining the canonical code. With an
/// unpruned tree this equals the order of the automorphism group.
pub fn leaves_at_canonical_code(t: &Tournament) -> u64 {
    search(t).leaves_at_best
}

/// Out-degree sequence of the induced subtournament on `mask`, a cheap
/// isomorphism invariant.
pub fn score_signature(t: &Tournament, mask: u64) -> Vec<u32> {
    let mut s: Vec<u32> = bits(mask).map(|v| (t.out_mask(v) & mask).count_ones()).collect();
    s.sort_unstable();
    s
}
