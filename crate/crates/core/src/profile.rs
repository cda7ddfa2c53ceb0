//! Profiles: the number of isomorphism types of induced subtournaments of
//! each size, for finite tournaments, family truncations and lexicographic
//! sums of (possibly unbounded) chains; plus generating-series fitting.
//!
//! Subsets are enumerated depth-first in increasing vertex order. The labelled
//! upper triangle of the current subset is kept as a `u128` (pair `(i, j)`,
//! `i < j`, at bit `j(j-1)/2 + i`), so equal labelled restrictions collapse
//! before any canonical form is computed. Work is split across rayon workers
//! by the two smallest vertices; per-level sets are merged, so results do not
//! depend on scheduling.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonical_form, CanonicalCode};
use crate::decomp::acyclic_components;
use crate::error::{Error, Result};
use crate::families::{family, FamilyKind};
use crate::tournament::{sum_of_chains, ChainSpec, Tournament};

/// Largest subset size whose labelled code fits in a `u128`.
pub const MAX_SUBSET_SIZE: usize = 16;
/// Default cap on the number of subsets visited by one census.
pub const DEFAULT_BUDGET: u128 = 2_000_000_000;
/// Largest index tournament accepted by [`sum_profile`].
pub const MAX_INDEX: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusOptions {
    pub budget: u128,
    /// Collapse equal labelled restrictions before canonicalizing. Only
    /// affects speed.
    pub cache: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            budget: DEFAULT_BUDGET,
            cache: true,
        }
    }
}

pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Number of subsets of size at most `k_max` of an `n`-set.
pub fn subset_count(n: usize, k_max: usize) -> u128 {
    (0..=k_max.min(n)).fold(0u128, |s, k| s.saturating_add(binomial(n as u128, k as u128)))
}

fn raw_to_tournament(k: usize, code: u128) -> Tournament {
    Tournament::from_fn(k, |i, j| code >> (j * (j - 1) / 2 + i) & 1 == 1)
        .expect("subset sizes are small")
}

struct Walker<'a> {
    t: &'a Tournament,
    n_max: usize,
    stack: Vec<usize>,
    raw: Vec<HashSet<u128>>,
    direct: Vec<BTreeSet<CanonicalCode>>,
    cache: bool,
}

impl Walker<'_> {
    fn record(&mut self, code: u128) {
        let k = self.stack.len();
        if self.cache {
            self.raw[k].insert(code);
        } else {
            self.direct[k].insert(canonical_form(&self.t.restrict_unchecked(&self.stack)));
        }
    }

    fn descend(&mut self, code: u128, next: usize) {
        self.record(code);
        let j = self.stack.len();
        if j == self.n_max {
            return;
        }
        let base = j * j.saturating_sub(1) / 2;
        for v in next..self.t.order() {
            let mut c = code;
            for (i, &s) in self.stack.iter().enumerate() {
                if self.t.edge(s, v) {
                    c |= 1 << (base + i);
                }
            }
            self.stack.push(v);
            self.descend(c, v + 1);
            self.stack.pop();
        }
    }
}

/// Canonical codes of the induced subtournaments of each size `0..=n_max`.
pub fn age_codes_with(t: &Tournament, n_max: usize, opts: CensusOptions) -> Result<Vec<BTreeSet<CanonicalCode>>> {
    if n_max > MAX_SUBSET_SIZE {
        return Err(Error::TooLarge {
            what: "subset size",
            size: n_max,
            max: MAX_SUBSET_SIZE,
        });
    }
    let n = t.order();
    let needed = subset_count(n, n_max);
    if needed > opts.budget {
        return Err(Error::BudgetExceeded {
            needed,
            budget: opts.budget,
        });
    }
    let levels = n_max + 1;
    let walker = |stack: Vec<usize>| Walker {
        t,
        n_max,
        stack,
        raw: vec![HashSet::new(); levels],
        direct: vec![BTreeSet::new(); levels],
        cache: opts.cache,
    };

    // Subsets of size <= 1 are handled here; larger ones by their two smallest vertices.
    let mut roots = walker(Vec::new());
    roots.record(0);
    if n_max >= 1 {
        for v in 0..n {
            roots.stack.push(v);
            roots.record(0);
            roots.stack.pop();
        }
    }
    let pairs: Vec<(usize, usize)> = if n_max >= 2 {
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
    } else {
        Vec::new()
    };
    let parts: Vec<Walker> = pairs
        .into_par_iter()
        .map(|(a, b)| {
            let mut w = walker(vec![a, b]);
            w.descend(u128::from(t.edge(a, b)), b + 1);
            w
        })
        .collect();

    let mut out: Vec<BTreeSet<CanonicalCode>> = roots.direct;
    if opts.cache {
        let mut raw = roots.raw;
        for p in parts {
            for (k, set) in p.raw.into_iter().enumerate() {
                raw[k].extend(set);
            }
        }
        for (k, set) in raw.into_iter().enumerate() {
            let codes: Vec<u128> = set.into_iter().collect();
            out[k] = codes
                .into_par_iter()
                .map(|c| canonical_form(&raw_to_tournament(k, c)))
                .collect();
        }
    } else {
        for p in parts {
            for (k, set) in p.direct.into_iter().enumerate() {
                out[k].extend(set);
            }
        }
    }
    Ok(out)
}

pub fn age_codes(t: &Tournament, n_max: usize) -> Result<Vec<BTreeSet<CanonicalCode>>> {
    age_codes_with(t, n_max, CensusOptions::default())
}

/// `φ_T(n)`: the number of isomorphism types of `n`-vertex induced subtournaments.
pub fn profile_count(t: &Tournament, n: usize) -> Result<u128> {
    Ok(age_codes(t, n)?[n].len() as u128)
}

/// A profile prefix `φ(0..=n_max)`, optionally with a fitted numerator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProfileSeries {
    pub values: Vec<u128>,
    pub k: Option<usize>,
    pub numerator: Option<Vec<i128>>,
}

impl ProfileSeries {
    pub fn new(values: Vec<u128>) -> Self {
        ProfileSeries {
            values,
            k: None,
            numerator: None,
        }
    }

    /// Fits the numerator for `k` and stores it when the fit succeeds.
    pub fn fit(&mut self, k: usize) -> Result<SeriesFit> {
        let fit = series_fit(&self.values, k)?;
        self.k = Some(k);
        self.numerator = match &fit {
            SeriesFit::Polynomial(p) => Some(p.clone()),
            SeriesFit::NotPolynomial => None,
        };
        Ok(fit)
    }
}

pub fn profile_sequence_with(t: &Tournament, n_max: usize, opts: CensusOptions) -> Result<ProfileSeries> {
    let levels = age_codes_with(t, n_max, opts)?;
    Ok(ProfileSeries::new(levels.iter().map(|l| l.len() as u128).collect()))
}

pub fn profile_sequence(t: &Tournament, n_max: usize) -> Result<ProfileSeries> {
    profile_sequence_with(t, n_max, CensusOptions::default())
}

/// Whether every type of size at most `n_max` embeddable in `a` is embeddable in `b`.
pub fn age_leq(a: &Tournament, b: &Tournament, n_max: usize) -> Result<bool> {
    let (la, lb) = (age_codes(a, n_max)?, age_codes(b, n_max)?);
    Ok(la.iter().zip(&lb).all(|(x, y)| x.is_subset(y)))
}

/// Profile of a family in the limit of long chains.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LimitProfile {
    pub kind: FamilyKind,
    pub values: Vec<u128>,
    /// Smallest chain length at which the prefix stopped changing.
    pub n_stable: usize,
    /// Next chain length, which reproduced the same prefix.
    pub n_confirm: usize,
}

/// Increases the chain length one step at a time until two consecutive
/// truncations give the same profile prefix.
pub fn limit_profile(kind: FamilyKind, n_max: usize, opts: CensusOptions) -> Result<LimitProfile> {
    let mut prev: Option<Vec<u128>> = None;
    for len in 1.. {
        let t = family(kind, &ChainSpec::ascending(len))?;
        let values = profile_sequence_with(&t, n_max, opts)?.values;
        if let Some(p) = &prev {
            if p.iter().zip(&values).any(|(a, b)| a > b) {
                return Err(Error::InternalInconsistency(format!(
                    "profile of {kind} decreased between chain lengths {} and {len}",
                    len - 1
                )));
            }
            if *p == values {
                return Ok(LimitProfile {
                    kind,
                    values,
                    n_stable: len - 1,
                    n_confirm: len,
                });
            }
        }
        prev = Some(values);
    }
    unreachable!("the loop only exits by returning")
}

/// Capacity of one block of a sum of chains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Cap {
    Finite(usize),
    Unbounded,
}

impl Cap {
    pub fn allows(self, m: usize) -> bool {
        match self {
            Cap::Finite(c) => m <= c,
            Cap::Unbounded => true,
        }
    }
}

impl std::str::FromStr for Cap {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") {
            return Ok(Cap::Unbounded);
        }
        s.parse()
            .map(Cap::Finite)
            .map_err(|_| format!("capacity `{s}` is neither `inf` nor a non-negative integer"))
    }
}

/// A lexicographic sum of chains indexed by a small tournament.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumSpec {
    pub index: Tournament,
    pub caps: Vec<Cap>,
}

impl SumSpec {
    pub fn new(index: Tournament, caps: Vec<Cap>) -> Result<Self> {
        if caps.len() != index.order() {
            return Err(Error::ArityMismatch {
                expected: index.order(),
                got: caps.len(),
            });
        }
        if index.order() > MAX_INDEX {
            return Err(Error::IndexTooLarge {
                size: index.order(),
                max: MAX_INDEX,
            });
        }
        Ok(SumSpec { index, caps })
    }

    pub fn unbounded(index: Tournament) -> Self {
        let caps = vec![Cap::Unbounded; index.order()];
        SumSpec { index, caps }
    }

    /// The finite tournament described when every cap is finite.
    pub fn materialize(&self) -> Result<Option<Tournament>> {
        let lengths: Option<Vec<usize>> = self
            .caps
            .iter()
            .map(|c| match c {
                Cap::Finite(m) => Some(*m),
                Cap::Unbounded => None,
            })
            .collect();
        lengths.map(|l| sum_of_chains(&self.index, &l)).transpose()
    }
}

fn compositions(caps: &[Cap], n: usize) -> Vec<Vec<usize>> {
    fn rec(caps: &[Cap], left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let i = cur.len();
        if i == caps.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for m in (0..=left).filter(|&m| caps[i].allows(m)) {
            cur.push(m);
            rec(caps, left - m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(caps, n, &mut Vec::new(), &mut out);
    out
}

/// `φ_T(n)` for the sum described by `spec`, by materializing every block-size
/// vector summing to `n`.
pub fn sum_profile(spec: &SumSpec, n: usize) -> Result<u128> {
    if spec.index.order() > MAX_INDEX {
        return Err(Error::IndexTooLarge {
            size: spec.index.order(),
            max: MAX_INDEX,
        });
    }
    let comps = compositions(&spec.caps, n);
    let codes: Result<HashSet<CanonicalCode>> = comps
        .into_par_iter()
        .map(|m| Ok(canonical_form(&sum_of_chains(&spec.index, &m)?)))
        .collect();
    Ok(codes?.len() as u128)
}

pub fn sum_profile_sequence(spec: &SumSpec, n_max: usize) -> Result<ProfileSeries> {
    let values = (0..=n_max).map(|n| sum_profile(spec, n)).collect::<Result<_>>()?;
    Ok(ProfileSeries::new(values))
}

/// Block counts of a sum of chains after merging blocks that form acyclic
/// autonomous sets of the index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Growth {
    /// Number of acyclic components.
    pub p: usize,
    /// Number of infinite acyclic components.
    pub k: usize,
    /// Polynomial growth degree `k - 1`; `None` for finite tournaments.
    pub degree: Option<usize>,
}

pub fn growth_of_sum(spec: &SumSpec) -> Result<Growth> {
    let support: Vec<usize> = (0..spec.index.order())
        .filter(|&i| spec.caps[i] != Cap::Finite(0))
        .collect();
    let d = spec.index.restrict(&support)?;
    let dec = acyclic_components(&d)?;
    let k = dec
        .blocks
        .iter()
        .filter(|b| b.iter().any(|&i| spec.caps[support[i]] == Cap::Unbounded))
        .count();
    Ok(Growth {
        p: dec.blocks.len(),
        k,
        degree: k.checked_sub(1),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SeriesFit {
    Polynomial(Vec<i128>),
    NotPolynomial,
}

/// Multiplies the truncated series by `(1-x)(1-x^2)...(1-x^k)` and returns the
/// product if it ends in at least `max(k(k+1)/2, 1)` zero coefficients.
///
/// A product whose tail is zero but shorter than that window is reported as
/// [`Error::TooFewTerms`]; a nonzero last coefficient means no fit.
pub fn series_fit(values: &[u128], k: usize) -> Result<SeriesFit> {
    let needed = 2 * k + 4;
    if values.len() < needed {
        return Err(Error::TooFewTerms {
            got: values.len(),
            needed,
        });
    }
    let mut q: Vec<i128> = values
        .iter()
        .map(|&v| i128::try_from(v).map_err(|_| Error::Overflow("series_fit")))
        .collect::<Result<_>>()?;
    for i in 1..=k {
        for m in (i..q.len()).rev() {
            q[m] = q[m].checked_sub(q[m - i]).ok_or(Error::Overflow("series_fit"))?;
        }
    }
    let window = (k * (k + 1) / 2).max(1);
    let zeros = q.iter().rev().take_while(|&&c| c == 0).count();
    if zeros >= window {
        q.truncate(q.len() - zeros);
        Ok(SeriesFit::Polynomial(q))
    } else if zeros > 0 {
        Err(Error::TooFewTerms {
            got: values.len(),
            needed: values.len() + window - zeros,
        })
    } else {
        Ok(SeriesFit::NotPolynomial)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{formula_value, FormulaKind};
    use crate::tournament::lex_sum;

    #[test]
    fn chain_profile_is_one() {
        let s = profile_sequence(&Tournament::chain(9), 9).unwrap();
        assert_eq!(s.values, vec![1; 10]);
    }

    #[test]
    fn diamond_has_two_triples() {
        // Four 3-subsets: the cycle {a,b,c} and three transitive triples.
        assert_eq!(profile_count(&Tournament::diamond(), 3).unwrap(), 2);
        assert_eq!(profile_sequence(&Tournament::cycle3(), 3).unwrap().values, vec![1, 1, 1, 1]);
    }

    #[test]
    fn k_family_census() {
        let k8 = family(FamilyKind::K, &ChainSpec::ascending(8)).unwrap();
        assert_eq!(profile_count(&k8, 4).unwrap(), 4);
    }

    #[test]
    fn c3_family_prefix() {
        let t = family(FamilyKind::C3, &ChainSpec::ascending(4)).unwrap();
        assert_eq!(profile_sequence(&t, 8).unwrap().values, vec![1, 1, 1, 2, 3, 4, 6, 9, 13]);
        let v = family(FamilyKind::V, &ChainSpec::ascending(7)).unwrap();
        assert_eq!(profile_sequence(&v, 7).unwrap().values, vec![1, 1, 1, 2, 4, 9, 21, 48]);
    }

    #[test]
    fn cache_does_not_change_results() {
        let t = family(FamilyKind::H, &ChainSpec::ascending(4)).unwrap();
        let plain = CensusOptions {
            cache: false,
            ..CensusOptions::default()
        };
        assert_eq!(age_codes(&t, 6).unwrap(), age_codes_with(&t, 6, plain).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let t = Tournament::chain(20);
        let tight = CensusOptions {
            budget: 100,
            ..CensusOptions::default()
        };
        assert!(matches!(
            profile_sequence_with(&t, 3, tight),
            Err(Error::BudgetExceeded { needed: 1351, budget: 100 })
        ));
    }

    #[test]
    fn age_examples() {
        let c3 = family(FamilyKind::C3, &ChainSpec::ascending(4)).unwrap();
        let k8 = family(FamilyKind::K, &ChainSpec::ascending(8)).unwrap();
        assert!(!age_leq(&c3, &k8, 6).unwrap());
        // The longest chain inside T over an m-chain has m + 1 vertices.
        let t4 = family(FamilyKind::T, &ChainSpec::ascending(4)).unwrap();
        let t5 = family(FamilyKind::T, &ChainSpec::ascending(5)).unwrap();
        assert!(!age_leq(&Tournament::chain(6), &t4, 6).unwrap());
        assert!(age_leq(&Tournament::chain(6), &t5, 6).unwrap());
        assert!(age_leq(&k8.restrict(&[0, 3, 5, 6, 9]).unwrap(), &k8, 5).unwrap());
    }

    #[test]
    fn sum_profile_examples() {
        let one = SumSpec::unbounded(Tournament::chain(1));
        for n in 0..8 {
            assert_eq!(sum_profile(&one, n).unwrap(), 1);
        }
        let c3 = SumSpec::unbounded(Tournament::cycle3());
        assert_eq!(sum_profile(&c3, 3).unwrap(), 2);
        assert_eq!(sum_profile(&c3, 5).unwrap(), 3);
        let nine = SumSpec {
            index: Tournament::chain(9),
            caps: vec![Cap::Unbounded; 9],
        };
        assert!(matches!(sum_profile(&nine, 2), Err(Error::IndexTooLarge { size: 9, max: 8 })));
    }

    #[test]
    fn sum_profile_brute_force_small() {
        // Independent count: all 3-subsets of the materialized sum, compared
        // pairwise by isomorphism.
        let spec = SumSpec::new(
            Tournament::cycle3(),
            vec![Cap::Finite(2), Cap::Finite(2), Cap::Finite(1)],
        )
        .unwrap();
        let t = spec.materialize().unwrap().unwrap();
        for n in 0..=5 {
            let mut reps: Vec<Tournament> = Vec::new();
            for mask in 0u64..1 << t.order() {
                if mask.count_ones() as usize != n {
                    continue;
                }
                let s = t.restrict_mask(mask);
                if !reps.iter().any(|r| crate::canon::is_isomorphic(r, &s)) {
                    reps.push(s);
                }
            }
            assert_eq!(sum_profile(&spec, n).unwrap(), reps.len() as u128, "n = {n}");
        }
    }

    #[test]
    fn growth_examples() {
        let g = growth_of_sum(&SumSpec::unbounded(Tournament::chain(1))).unwrap();
        assert_eq!(g, Growth { p: 1, k: 1, degree: Some(0) });
        let g = growth_of_sum(&SumSpec::unbounded(Tournament::cycle3())).unwrap();
        assert_eq!(g, Growth { p: 3, k: 3, degree: Some(2) });
        let g = growth_of_sum(&SumSpec::unbounded(Tournament::chain(2))).unwrap();
        assert_eq!(g, Growth { p: 1, k: 1, degree: Some(0) });
        let mixed = SumSpec::new(
            Tournament::cycle3(),
            vec![Cap::Unbounded, Cap::Finite(0), Cap::Finite(3)],
        )
        .unwrap();
        assert_eq!(growth_of_sum(&mixed).unwrap(), Growth { p: 1, k: 1, degree: Some(0) });
    }

    #[test]
    fn fit_examples() {
        assert_eq!(series_fit(&[1; 8], 1).unwrap(), SeriesFit::Polynomial(vec![1]));
        let a: Vec<u128> = (0..=14)
            .map(|n| formula_value(FormulaKind::C3Recurrence, n).unwrap())
            .collect();
        for k in 0..=3 {
            assert_eq!(series_fit(&a, k).unwrap(), SeriesFit::NotPolynomial, "k = {k}");
        }
        assert!(matches!(series_fit(&[1; 5], 1), Err(Error::TooFewTerms { .. })));
        // 1/(1-x)^2 times (1-x)(1-x^2) is 1 + x; with k = 1 the tail is nonzero.
        let lin: Vec<u128> = (1..=12).collect();
        assert_eq!(series_fit(&lin, 1).unwrap(), SeriesFit::NotPolynomial);
        assert_eq!(series_fit(&lin, 2).unwrap(), SeriesFit::Polynomial(vec![1, 1]));
    }

    #[test]
    fn c3_index_fit() {
        let spec = SumSpec::unbounded(Tournament::cycle3());
        let mut s = sum_profile_sequence(&spec, 14).unwrap();
        let fit = s.fit(3).unwrap();
        let SeriesFit::Polynomial(p) = fit else {
            panic!("no fit for {:?}", s.values);
        };
        assert_eq!(p[0], 1);
        assert_eq!(s.numerator.as_ref(), Some(&p));
    }

    #[test]
    fn isolated_lex_sum_check() {
        let t = lex_sum(&Tournament::chain(2), &[Tournament::cycle3(), Tournament::chain(2)])
            .unwrap()
            .tournament;
        assert_eq!(profile_count(&t, 0).unwrap(), 1);
        assert_eq!(profile_count(&t, 5).unwrap(), 1);
    }
}
