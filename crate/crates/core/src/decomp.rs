//! Autonomous sets, the separation predicate, acyclic components with their
//! quotient, indecomposability, and monomorphic components.
//!
//! Two distinct vertices lie in a common acyclic autonomous set unless they
//! lie in a 3-cycle, in a diamond, or are the end-vertices of a self-dual
//! double diamond. The acyclic components are the classes of the complement
//! of that relation.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::tournament::{bits, full_mask, mask_of, Tournament};

/// Whether every vertex outside `mask` relates uniformly to all of `mask`.
pub fn is_autonomous_mask(t: &Tournament, mask: u64) -> bool {
    let mask = mask & t.vertex_mask();
    bits(t.vertex_mask() & !mask).all(|y| {
        let hit = t.out_mask(y) & mask;
        hit == 0 || hit == mask
    })
}

pub fn is_autonomous(t: &Tournament, vertices: &[usize]) -> Result<bool> {
    Ok(is_autonomous_mask(t, mask_of(t.order(), vertices)?))
}

/// Smallest autonomous set containing `seed`.
pub fn autonomous_closure(t: &Tournament, seed: u64) -> u64 {
    let mut a = seed & t.vertex_mask();
    if a.count_ones() <= 1 {
        return a;
    }
    loop {
        let splitters = bits(t.vertex_mask() & !a).fold(0u64, |s, y| {
            let hit = t.out_mask(y) & a;
            if hit == 0 || hit == a {
                s
            } else {
                s | 1 << y
            }
        });
        if splitters == 0 {
            return a;
        }
        a |= splitters;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SeparationKind {
    ThreeCycle,
    Diamond,
    DoubleDiamond,
}

/// A configuration certifying that two vertices share no acyclic autonomous set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparationWitness {
    pub kind: SeparationKind,
    /// Witness vertices, sorted ascending.
    pub vertices: Vec<usize>,
}

fn sorted<const N: usize>(mut v: [usize; N]) -> Vec<usize> {
    v.sort_unstable();
    v.to_vec()
}

/// Vertices dominated by `x` and dominating `y`.
fn between(t: &Tournament, x: usize, y: usize) -> u64 {
    t.out_mask(x) & t.in_mask(y)
}

fn cycle_witness(t: &Tournament, x: usize, y: usize) -> Option<Vec<usize>> {
    let thirds = if t.edge(x, y) { between(t, y, x) } else { between(t, x, y) };
    (thirds != 0).then(|| sorted([x, y, thirds.trailing_zeros() as usize]))
}

/// Diamonds in which `apex` is the vertex outside the 3-cycle and `other`
/// lies on the cycle.
fn diamonds_with_apex(t: &Tournament, apex: usize, other: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
    let side = if t.edge(apex, other) {
        t.out_mask(apex)
    } else {
        t.in_mask(apex)
    } & !(1 << other);
    bits(side & t.out_mask(other)).flat_map(move |u| {
        bits(side & t.out_mask(u) & t.in_mask(other)).map(move |w| sorted([apex, other, u, w]))
    })
}

fn diamond_witness(t: &Tournament, x: usize, y: usize) -> Option<Vec<usize>> {
    diamonds_with_apex(t, y, x)
        .chain(diamonds_with_apex(t, x, y))
        .min()
}

fn double_diamond_witness(t: &Tournament, x: usize, y: usize) -> Option<Vec<usize>> {
    let (src, dst) = if t.edge(x, y) { (x, y) } else { (y, x) };
    let [a, b, c] = t.find_cycle_in(between(t, src, dst))?;
    Some(sorted([x, y, a, b, c]))
}

/// Returns a witness iff `x` and `y` share no acyclic autonomous set.
///
/// Kinds are tried in the order 3-cycle, diamond, double diamond; within a
/// kind the lexicographically smallest vertex set is returned. Equal
/// vertices are never separated.
pub fn separated(t: &Tournament, x: usize, y: usize) -> Option<SeparationWitness> {
    if x == y {
        return None;
    }
    if let Some(vertices) = cycle_witness(t, x, y) {
        return Some(SeparationWitness {
            kind: SeparationKind::ThreeCycle,
            vertices,
        });
    }
    if let Some(vertices) = diamond_witness(t, x, y) {
        return Some(SeparationWitness {
            kind: SeparationKind::Diamond,
            vertices,
        });
    }
    double_diamond_witness(t, x, y).map(|vertices| SeparationWitness {
        kind: SeparationKind::DoubleDiamond,
        vertices,
    })
}

/// Checks that the restriction to a witness is the claimed configuration
/// and contains both queried vertices.
pub fn verify_witness(t: &Tournament, x: usize, y: usize, w: &SeparationWitness) -> bool {
    if !w.vertices.contains(&x) || !w.vertices.contains(&y) {
        return false;
    }
    let Ok(sub) = t.restrict(&w.vertices) else {
        return false;
    };
    match w.kind {
        SeparationKind::ThreeCycle => sub.order() == 3 && sub.count_cycles() == 1,
        SeparationKind::Diamond => {
            // Exactly one 3-cycle, with the remaining vertex uniform to it.
            sub.order() == 4
                && sub.count_cycles() == 1
                && (0..4).any(|v| {
                    let rest = 0b1111 & !(1 << v);
                    sub.find_cycle_in(rest).is_some() && is_autonomous_mask(&sub, rest)
                })
        }
        SeparationKind::DoubleDiamond => {
            if sub.order() != 5 {
                return false;
            }
            let (px, py) = (
                w.vertices.iter().position(|&v| v == x).unwrap(),
                w.vertices.iter().position(|&v| v == y).unwrap(),
            );
            let (src, dst) = if sub.edge(px, py) { (px, py) } else { (py, px) };
            let mid = 0b11111 & !(1 << src) & !(1 << dst);
            sub.out_mask(src) & mid == mid
                && sub.in_mask(dst) & mid == mid
                && sub.find_cycle_in(mid).is_some()
        }
    }
}

/// Acyclic decomposition: components, quotient and spectrum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// Components ordered by their least vertex; each sorted ascending.
    pub blocks: Vec<Vec<usize>>,
    /// Tournament induced on the components, in block order.
    pub quotient: Tournament,
    /// Block sizes in decreasing order.
    pub spectrum: Vec<usize>,
}

impl Decomposition {
    /// Index of the block containing each vertex.
    pub fn block_of(&self) -> Vec<usize> {
        let n: usize = self.blocks.iter().map(Vec::len).sum();
        let mut of = vec![0; n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &v in block {
                of[v] = b;
            }
        }
        of
    }

    pub fn block_masks(&self) -> Vec<u64> {
        self.blocks
            .iter()
            .map(|b| b.iter().fold(0u64, |m, &v| m | 1 << v))
            .collect()
    }
}

/// Bit `y` of row `x` is set iff `x` and `y` share an acyclic autonomous set.
pub fn non_separation_matrix(t: &Tournament) -> Vec<u64> {
    let n = t.order();
    let mut rel: Vec<u64> = (0..n).map(|x| 1u64 << x).collect();
    for x in 0..n {
        for y in x + 1..n {
            if separated(t, x, y).is_none() {
                rel[x] |= 1 << y;
                rel[y] |= 1 << x;
            }
        }
    }
    rel
}

pub fn acyclic_components(t: &Tournament) -> Result<Decomposition> {
    let n = t.order();
    let rel = non_separation_matrix(t);
    let mut assigned = 0u64;
    let mut masks = Vec::new();
    for x in 0..n {
        if assigned >> x & 1 == 1 {
            continue;
        }
        let class = rel[x];
        for y in bits(class) {
            if rel[y] != class {
                return Err(Error::InternalInconsistency(format!(
                    "non-separation is not transitive at vertices {x} and {y}"
                )));
            }
        }
        if class & assigned != 0 {
            return Err(Error::InternalInconsistency(format!(
                "class of vertex {x} overlaps an earlier class"
            )));
        }
        assigned |= class;
        masks.push(class);
    }
    for &m in &masks {
        if !t.is_acyclic_on(m) || !is_autonomous_mask(t, m) {
            return Err(Error::InternalInconsistency(format!(
                "class {:?} is not an acyclic autonomous set",
                bits(m).collect::<Vec<_>>()
            )));
        }
    }
    let reps: Vec<usize> = masks.iter().map(|m| m.trailing_zeros() as usize).collect();
    let quotient = t.restrict_unchecked(&reps);
    let blocks: Vec<Vec<usize>> = masks.iter().map(|&m| bits(m).collect()).collect();
    let mut spectrum: Vec<usize> = blocks.iter().map(Vec::len).collect();
    spectrum.sort_unstable_by(|a, b| b.cmp(a));
    Ok(Decomposition {
        blocks,
        quotient,
        spectrum,
    })
}

pub fn spectrum(t: &Tournament) -> Result<Vec<usize>> {
    Ok(acyclic_components(t)?.spectrum)
}

/// No acyclic autonomous set has more than one element.
pub fn is_acyclically_indecomposable(t: &Tournament) -> bool {
    let n = t.order();
    (0..n).all(|x| (x + 1..n).all(|y| separated(t, x, y).is_some()))
}

/// No autonomous set `A` with `1 < |A| < n`.
pub fn is_indecomposable(t: &Tournament) -> bool {
    let n = t.order();
    let all = t.vertex_mask();
    (0..n).all(|x| (x + 1..n).all(|y| autonomous_closure(t, 1 << x | 1 << y) == all))
}

/// Vertices `z` with `{a, b, z}` a 3-cycle.
pub fn cycle_completions(t: &Tournament, a: usize, b: usize) -> u64 {
    if t.edge(a, b) {
        between(t, b, a)
    } else {
        between(t, a, b)
    }
}

/// Monomorphic components from the structural characterisation: the largest
/// of the acyclic component, the autonomous 3-cycles and the admissible pairs
/// `{a, b}` (with `C(a, b)` acyclic and `{a, b} ∪ C(a, b)` autonomous)
/// containing each vertex.
pub fn monomorphic_components(t: &Tournament) -> Result<Vec<Vec<usize>>> {
    let n = t.order();
    let dec = acyclic_components(t)?;
    let block_of = dec.block_of();
    let block_masks = dec.block_masks();
    let mut candidates: Vec<Vec<u64>> = (0..n).map(|x| vec![block_masks[block_of[x]]]).collect();
    for a in 0..n {
        for b in a + 1..n {
            let comp = cycle_completions(t, a, b);
            if comp == 0 {
                continue;
            }
            let pair = 1u64 << a | 1 << b;
            if t.is_acyclic_on(comp) && is_autonomous_mask(t, pair | comp) {
                candidates[a].push(pair);
                candidates[b].push(pair);
            }
            for c in bits(comp & !full_mask(b + 1)) {
                let tri = pair | 1 << c;
                if is_autonomous_mask(t, tri) {
                    for v in [a, b, c] {
                        candidates[v].push(tri);
                    }
                }
            }
        }
    }
    let mut comps = BTreeSet::new();
    for (x, cands) in candidates.iter().enumerate() {
        let best = *cands.iter().max_by_key(|m| m.count_ones()).unwrap();
        if cands.iter().any(|&m| m & !best != 0) {
            return Err(Error::InternalInconsistency(format!(
                "monomorphic parts containing vertex {x} have no largest member"
            )));
        }
        comps.insert(best);
    }
    partition_from_masks(n, comps)
}

fn partition_from_masks(n: usize, comps: BTreeSet<u64>) -> Result<Vec<Vec<usize>>> {
    let mut seen = 0u64;
    let mut out: Vec<Vec<usize>> = Vec::new();
    for m in comps {
        if m & seen != 0 {
            return Err(Error::InternalInconsistency(
                "monomorphic components overlap".into(),
            ));
        }
        seen |= m;
        out.push(bits(m).collect());
    }
    if seen != full_mask(n) {
        return Err(Error::InternalInconsistency(
            "monomorphic components do not cover the vertex set".into(),
        ));
    }
    out.sort_by_key(|b| b[0]);
    Ok(out)
}

/// Largest vertex count accepted by the exhaustive monomorphic-part check.
pub const ORACLE_MAX_VERTICES: usize = 10;

/// Direct check of the monomorphic-part definition: for every pair of
/// equal-size vertex sets agreeing outside `part`, the induced tournaments
/// are isomorphic.
pub fn is_monomorphic_part_oracle(t: &Tournament, part: &[usize]) -> Result<bool> {
    let n = t.order();
    if n > ORACLE_MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "tournament for the monomorphic oracle",
            size: n,
            max: ORACLE_MAX_VERTICES,
        });
    }
    let b = mask_of(n, part)?;
    Ok(oracle_mask(t, b))
}

fn oracle_mask(t: &Tournament, b: u64) -> bool {
    let outside = t.vertex_mask() & !b;
    let inside: Vec<usize> = bits(b).collect();
    let mut o = 0u64;
    loop {
        // All subsets S of `b`, grouped by size.
        let mut per_size: Vec<Option<crate::canon::CanonicalCode>> = vec![None; inside.len() + 1];
        for s in 0u64..1 << inside.len() {
            let sub = inside
                .iter()
                .enumerate()
                .filter(|(k, _)| s >> k & 1 == 1)
                .fold(o, |m, (_, &v)| m | 1 << v);
            let code = canonical_form(&t.restrict_mask(sub));
            let slot = &mut per_size[s.count_ones() as usize];
            match slot {
                None => *slot = Some(code),
                Some(c) if *c != code => return false,
                _ => {}
            }
        }
        if o == outside {
            return true;
        }
        o = (o.wrapping_sub(outside)) & outside;
    }
}

/// Monomorphic components computed from the definition alone: the component
/// of `x` is `x` together with every `y` such that `{x, y}` is a monomorphic part.
pub fn monomorphic_components_oracle(t: &Tournament) -> Result<Vec<Vec<usize>>> {
    let n = t.order();
    if n > ORACLE_MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "tournament for the monomorphic oracle",
            size: n,
            max: ORACLE_MAX_VERTICES,
        });
    }
    let mut comp: Vec<u64> = (0..n).map(|x| 1u64 << x).collect();
    for x in 0..n {
        for y in x + 1..n {
            if oracle_mask(t, 1 << x | 1 << y) {
                comp[x] |= 1 << y;
                comp[y] |= 1 << x;
            }
        }
    }
    for &c in &comp {
        if !oracle_mask(t, c) {
            return Err(Error::InternalInconsistency(
                "union of monomorphic pairs is not a monomorphic part".into(),
            ));
        }
    }
    partition_from_masks(n, comp.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;
    use crate::tournament::{lex_sum, sum_of_chains};

    fn c3() -> Tournament {
        Tournament::cycle3()
    }

    /// Maximal acyclic autonomous sets by exhaustive subset search.
    fn brute_force_components(t: &Tournament) -> Vec<Vec<usize>> {
        let n = t.order();
        let good: Vec<u64> = (1u64..1 << n)
            .filter(|&m| t.is_acyclic_on(m) && is_autonomous_mask(t, m))
            .collect();
        let mut comps: BTreeSet<Vec<usize>> = BTreeSet::new();
        for x in 0..n {
            let best = good
                .iter()
                .filter(|&&m| m >> x & 1 == 1)
                .max_by_key(|m| m.count_ones())
                .unwrap();
            comps.insert(bits(*best).collect());
        }
        comps.into_iter().collect()
    }

    #[test]
    fn autonomous_examples() {
        let t = sum_of_chains(&c3(), &[2, 1, 1]).unwrap();
        assert!(is_autonomous(&t, &[0, 1]).unwrap());
        for pair in [[0, 1], [1, 2], [0, 2]] {
            assert!(!is_autonomous(&c3(), &pair).unwrap());
        }
        assert!(is_autonomous(&c3(), &[]).unwrap());
        assert!(is_autonomous(&c3(), &[1]).unwrap());
        assert!(is_autonomous(&c3(), &[0, 1, 2]).unwrap());
    }

    #[test]
    fn separation_examples() {
        let w = separated(&c3(), 0, 1).unwrap();
        assert_eq!(w.kind, SeparationKind::ThreeCycle);
        assert_eq!(w.vertices, vec![0, 1, 2]);

        let d = Tournament::diamond();
        let w = separated(&d, 0, 3).unwrap();
        assert_eq!(w.kind, SeparationKind::Diamond);
        assert_eq!(w.vertices, vec![0, 1, 2, 3]);
        assert!(verify_witness(&d, 0, 3, &w));

        assert_eq!(separated(&Tournament::chain(4), 0, 3), None);
    }

    #[test]
    fn double_diamond_separation() {
        // Chain of three with the middle vertex replaced by a 3-cycle.
        let t = lex_sum(&Tournament::chain(3), &[Tournament::chain(1), c3(), Tournament::chain(1)])
            .unwrap()
            .tournament;
        let w = separated(&t, 0, 4).unwrap();
        assert_eq!(w.kind, SeparationKind::DoubleDiamond);
        assert_eq!(w.vertices, vec![0, 1, 2, 3, 4]);
        assert!(verify_witness(&t, 0, 4, &w));
    }

    #[test]
    fn component_examples() {
        let d = acyclic_components(&Tournament::chain(5)).unwrap();
        assert_eq!(d.blocks, vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(d.quotient.order(), 1);

        let tau1 = lex_sum(&Tournament::chain(2), &[c3(), c3()]).unwrap().tournament;
        let d = acyclic_components(&tau1).unwrap();
        assert_eq!(d.spectrum, vec![1; 6]);
        assert!(is_isomorphic(&d.quotient, &tau1));

        let t = sum_of_chains(&c3(), &[2, 1, 1]).unwrap();
        let d = acyclic_components(&t).unwrap();
        assert_eq!(d.blocks, brute_force_components(&t));
        assert_eq!(d.spectrum, vec![2, 1, 1]);
        assert!(is_isomorphic(&d.quotient, &c3()));
    }

    #[test]
    fn spectrum_examples() {
        assert_eq!(spectrum(&Tournament::chain(7)).unwrap(), vec![7]);
        let nine = lex_sum(&c3(), &[c3(), c3(), c3()]).unwrap().tournament;
        assert_eq!(spectrum(&nine).unwrap(), vec![1; 9]);
        let t = sum_of_chains(&c3(), &[3, 2, 1]).unwrap();
        assert_eq!(brute_force_components(&t).iter().map(Vec::len).max(), Some(3));
        assert_eq!(spectrum(&t).unwrap(), vec![3, 2, 1]);
    }

    #[test]
    fn indecomposability_examples() {
        assert!(is_acyclically_indecomposable(&c3()));
        assert!(!is_acyclically_indecomposable(&Tournament::chain(2)));
        assert!(!is_indecomposable(&Tournament::chain(3)));
        assert!(is_indecomposable(&c3()));
        assert!(!is_indecomposable(&Tournament::diamond()));
    }

    #[test]
    fn monomorphic_examples() {
        assert_eq!(
            monomorphic_components(&Tournament::chain(5)).unwrap(),
            vec![vec![0, 1, 2, 3, 4]]
        );
        assert_eq!(monomorphic_components(&c3()).unwrap(), vec![vec![0, 1, 2]]);
        assert_eq!(monomorphic_components_oracle(&c3()).unwrap(), vec![vec![0, 1, 2]]);
        let d = Tournament::diamond();
        assert_eq!(monomorphic_components(&d).unwrap(), vec![vec![0, 1, 2], vec![3]]);
        assert_eq!(monomorphic_components_oracle(&d).unwrap(), vec![vec![0, 1, 2], vec![3]]);
    }

    #[test]
    fn oracle_examples() {
        let d = Tournament::diamond();
        for v in 0..4 {
            assert!(is_monomorphic_part_oracle(&d, &[v]).unwrap());
        }
        assert!(!is_monomorphic_part_oracle(&d, &[0, 3]).unwrap());
        assert!(is_monomorphic_part_oracle(&Tournament::chain(4), &[0, 1, 2, 3]).unwrap());
        assert!(matches!(
            is_monomorphic_part_oracle(&Tournament::chain(11), &[0]),
            Err(Error::TooLarge { .. })
        ));
    }
}
