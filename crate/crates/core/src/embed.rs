//! Induced-subtournament embedding by backtracking over bit masks.
//!
//! Pattern vertices are placed in order of decreasing degree imbalance; a host
//! vertex is a candidate for a pattern vertex only if it has at least as many
//! out- and in-neighbours. Each placed vertex narrows the candidates of all
//! later ones to its out- or in-neighbourhood.

use crate::tournament::{bits, Tournament};

struct Matcher<'a> {
    pattern: &'a Tournament,
    host: &'a Tournament,
    order: Vec<usize>,
    allowed: Vec<u64>,
    image: Vec<usize>,
}

impl<'a> Matcher<'a> {
    fn new(pattern: &'a Tournament, host: &'a Tournament) -> Option<Self> {
        let (p, h) = (pattern.order(), host.order());
        if p > h {
            return None;
        }
        let mut order: Vec<usize> = (0..p).collect();
        let imbalance = |v: usize| {
            let out = pattern.out_degree(v) as isize;
            (2 * out - (p as isize - 1)).unsigned_abs()
        };
        order.sort_by_key(|&v| (std::cmp::Reverse(imbalance(v)), v));
        let host_deg: Vec<(usize, usize)> = (0..h)
            .map(|v| (host.out_degree(v), h - 1 - host.out_degree(v)))
            .collect();
        let allowed = (0..p)
            .map(|v| {
                let out = pattern.out_degree(v);
                let inn = p - 1 - out;
                host_deg
                    .iter()
                    .enumerate()
                    .filter(|(_, &(ho, hi))| ho >= out && hi >= inn)
                    .fold(0u64, |m, (w, _)| m | 1 << w)
            })
            .collect();
        Some(Matcher {
            pattern,
            host,
            order,
            allowed,
            image: vec![usize::MAX; p],
        })
    }

    fn candidates(&self, depth: usize, used: u64) -> u64 {
        let pv = self.order[depth];
        let mut cand = self.allowed[pv] & !used;
        for &prev in &self.order[..depth] {
            let hv = self.image[prev];
            cand &= if self.pattern.edge(prev, pv) {
                self.host.out_mask(hv)
            } else {
                self.host.in_mask(hv)
            };
            if cand == 0 {
                break;
            }
        }
        cand
    }

    /// Visits embeddings; `visit` returns `false` to stop the search.
    fn search(&mut self, depth: usize, used: u64, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if depth == self.order.len() {
            return visit(&self.image);
        }
        let pv = self.order[depth];
        for hv in bits(self.candidates(depth, used)) {
            self.image[pv] = hv;
            if !self.search(depth + 1, used | 1 << hv, visit) {
                return false;
            }
        }
        self.image[pv] = usize::MAX;
        true
    }
}

/// An embedding of `pattern` into `host` as an induced subtournament:
/// `witness[v]` is the host vertex assigned to pattern vertex `v`.
pub fn find_embedding(pattern: &Tournament, host: &Tournament) -> Option<Vec<usize>> {
    let mut m = Matcher::new(pattern, host)?;
    let mut found = None;
    m.search(0, 0, &mut |img| {
        found = Some(img.to_vec());
        false
    });
    found
}

pub fn embeds(pattern: &Tournament, host: &Tournament) -> bool {
    find_embedding(pattern, host).is_some()
}

/// Number of injective maps carrying `pattern` onto an induced subtournament of `host`.
pub fn count_embeddings(pattern: &Tournament, host: &Tournament) -> u64 {
    let Some(mut m) = Matcher::new(pattern, host) else {
        return 0;
    };
    let mut count = 0u64;
    m.search(0, 0, &mut |_| {
        count += 1;
        true
    });
    count
}

/// Order of the automorphism group.
pub fn automorphism_count(t: &Tournament) -> u64 {
    count_embeddings(t, t)
}

/// Checks that `map` is an embedding of `pattern` into `host`.
pub fn is_embedding(pattern: &Tournament, host: &Tournament, map: &[usize]) -> bool {
    if map.len() != pattern.order() || map.iter().any(|&v| v >= host.order()) {
        return false;
    }
    let mut seen = 0u64;
    for &v in map {
        if seen >> v & 1 == 1 {
            return false;
        }
        seen |= 1 << v;
    }
    (0..pattern.order()).all(|i| {
        (0..pattern.order()).all(|j| i == j || pattern.edge(i, j) == host.edge(map[i], map[j]))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tournament::lex_sum;

    #[test]
    fn cycle_in_tau1() {
        let c3 = Tournament::cycle3();
        let tau1 = lex_sum(&Tournament::chain(2), &[c3.clone(), c3.clone()])
            .unwrap()
            .tournament;
        let w = find_embedding(&c3, &tau1).unwrap();
        assert!(is_embedding(&c3, &tau1, &w));
    }

    #[test]
    fn chain_not_in_cycle() {
        assert!(!embeds(&Tournament::chain(3), &Tournament::cycle3()));
        assert!(!embeds(&Tournament::chain(4), &Tournament::chain(3)));
        assert!(embeds(&Tournament::empty(), &Tournament::cycle3()));
    }

    #[test]
    fn automorphism_orders() {
        assert_eq!(automorphism_count(&Tournament::cycle3()), 3);
        for n in 0..7 {
            assert_eq!(automorphism_count(&Tournament::chain(n)), 1);
        }
        assert_eq!(automorphism_count(&Tournament::diamond()), 3);
        let c3 = Tournament::cycle3();
        let c3c3 = lex_sum(&c3, &[c3.clone(), c3.clone(), c3.clone()]).unwrap().tournament;
        assert_eq!(automorphism_count(&c3c3), 81);
    }

    #[test]
    fn embedding_count_of_chain_in_chain() {
        // Order-preserving injections from 2 into 5: choose 2 of 5.
        assert_eq!(count_embeddings(&Tournament::chain(2), &Tournament::chain(5)), 10);
    }
}
