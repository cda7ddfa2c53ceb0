//! The six obstruction families over finite chains, their acyclically
//! indecomposable quotients, the Schmerl–Trotter tournaments and the named
//! incomparability witnesses.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::decomp::acyclic_components;
use crate::error::{Error, Result};
use crate::tournament::{lex_sum, skew_product, skew_vertex, ChainSpec, Generator, GeneratorKind, Tournament};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FamilyKind {
    C3,
    V,
    T,
    U,
    H,
    K,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 6] = [
        FamilyKind::C3,
        FamilyKind::V,
        FamilyKind::T,
        FamilyKind::U,
        FamilyKind::H,
        FamilyKind::K,
    ];

    /// Generator set for the skew-product families; `None` for C3 and V.
    pub fn generators(self) -> Option<[Generator; 5]> {
        use GeneratorKind::*;
        let y = [Generator::new(H0), Generator::new(V0)];
        let rest = match self {
            FamilyKind::C3 | FamilyKind::V => return None,
            FamilyKind::T => [Generator::inv(D0), Generator::inv(D1), Generator::new(H1)],
            FamilyKind::U => [Generator::new(D0), Generator::new(D1), Generator::inv(H1)],
            FamilyKind::H => [Generator::inv(D0), Generator::new(D1), Generator::new(H1)],
            FamilyKind::K => [Generator::inv(D0), Generator::new(D1), Generator::inv(H1)],
        };
        Some([rest[0], rest[1], rest[2], y[0], y[1]])
    }

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::C3 => "C3",
            FamilyKind::V => "V",
            FamilyKind::T => "T",
            FamilyKind::U => "U",
            FamilyKind::H => "H",
            FamilyKind::K => "K",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown family `{s}` (expected c3, v, t, u, h or k)"))
    }
}

/// Vertex count of `family(kind, chain of length len)`.
pub fn family_order(kind: FamilyKind, len: usize) -> usize {
    match kind {
        FamilyKind::C3 => 3 * len,
        FamilyKind::V => 2 * len + 1,
        _ => 2 * len,
    }
}

fn v_family(chain: &ChainSpec) -> Result<Tournament> {
    let len = chain.length;
    let apex = 2 * len;
    let pos = |v: usize| (v / 2, v % 2);
    Tournament::from_fn(apex + 1, |u, w| {
        if w == apex {
            // (x,1) -> a, a -> (x,0)
            return u % 2 == 1;
        }
        let ((x, i), (y, j)) = (pos(u), pos(w));
        if x == y {
            i < j
        } else {
            chain.precedes(x, y)
        }
    })
}

/// The family member over a finite chain. Vertex `(x, i)` is stored at
/// `2x + i`; for V the extra vertex is last. A descending chain yields the
/// member over the reversed order.
pub fn family(kind: FamilyKind, chain: &ChainSpec) -> Result<Tournament> {
    if chain.length == 0 {
        return Err(Error::EmptyChain);
    }
    match kind {
        FamilyKind::C3 => {
            let blocks = vec![Tournament::cycle3(); chain.length];
            Ok(lex_sum(&chain.tournament(), &blocks)?.tournament)
        }
        FamilyKind::V => v_family(chain),
        _ => skew_product(chain, &kind.generators().expect("skew family")),
    }
}

/// Acyclic quotient of the family member.
pub fn checked_family(kind: FamilyKind, chain: &ChainSpec) -> Result<Tournament> {
    Ok(acyclic_components(&family(kind, chain)?)?.quotient)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum StKind {
    T,
    U,
    V,
}

impl FromStr for StKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "t" => Ok(StKind::T),
            "u" => Ok(StKind::U),
            "v" => Ok(StKind::V),
            _ => Err(format!("unknown tournament `{s}` (expected t, u or v)")),
        }
    }
}

/// The critically indecomposable tournaments `T_{2h+1}`, `U_{2h+1}`, `V_{2h+1}` on `0..=2h`.
pub fn schmerl_trotter(kind: StKind, h: usize) -> Result<Tournament> {
    if h < 2 {
        return Err(Error::HTooSmall(h));
    }
    let n = 2 * h + 1;
    match kind {
        StKind::V => Tournament::from_fn(n, |a, b| {
            if b == 2 * h {
                a % 2 == 1
            } else {
                true
            }
        }),
        StKind::T | StKind::U => Tournament::from_fn(n, |a, b| {
            if b <= h {
                true
            } else if a > h {
                kind == StKind::T
            } else {
                // b = i + h + 1 beats 0..=i and loses to i+1..=h.
                let i = b - h - 1;
                a > i
            }
        }),
    }
}

/// Names accepted by [`witness`].
pub const WITNESS_NAMES: [&str; 6] = ["tau1", "tau2", "T5", "U7", "V7", "H3"];

/// The named witness tournaments separating the six ages.
///
/// `tau2` is a 3-cycle with a single vertex replaced by a 3-cycle.
pub fn witness(name: &str) -> Result<Tournament> {
    let c3 = Tournament::cycle3();
    let one = Tournament::chain(1);
    match name.to_ascii_lowercase().as_str() {
        "tau1" => Ok(lex_sum(&Tournament::chain(2), &[c3.clone(), c3])?.tournament),
        "tau2" => Ok(lex_sum(&c3.clone(), &[c3, one.clone(), one])?.tournament),
        "t5" => schmerl_trotter(StKind::T, 2),
        "u7" => schmerl_trotter(StKind::U, 3),
        "v7" => schmerl_trotter(StKind::V, 3),
        "h3" => family(FamilyKind::H, &ChainSpec::ascending(3)),
        _ => Err(Error::UnknownWitness(name.to_string())),
    }
}

/// The family whose age the witness belongs to.
pub fn witness_family(name: &str) -> Result<FamilyKind> {
    match name.to_ascii_lowercase().as_str() {
        "tau1" => Ok(FamilyKind::C3),
        "tau2" => Ok(FamilyKind::K),
        "t5" => Ok(FamilyKind::T),
        "u7" => Ok(FamilyKind::U),
        "v7" => Ok(FamilyKind::V),
        "h3" => Ok(FamilyKind::H),
        _ => Err(Error::UnknownWitness(name.to_string())),
    }
}

/// Index of `(x, i)` in a skew-product family member.
pub fn family_vertex(x: usize, i: usize) -> usize {
    skew_vertex(x, i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;
    use crate::decomp::{is_acyclically_indecomposable, is_indecomposable};
    use crate::embed::{automorphism_count, embeds};

    fn asc(n: usize) -> ChainSpec {
        ChainSpec::ascending(n)
    }

    #[test]
    fn c3_over_one_point() {
        assert_eq!(family(FamilyKind::C3, &asc(1)).unwrap(), Tournament::cycle3());
        assert_eq!(family(FamilyKind::K, &asc(0)), Err(Error::EmptyChain));
    }

    #[test]
    fn v_family_is_schmerl_trotter_v() {
        for h in 2..=4 {
            let st = schmerl_trotter(StKind::V, h).unwrap();
            assert_eq!(family(FamilyKind::V, &asc(h)).unwrap(), st);
        }
    }

    #[test]
    fn k_over_two_points() {
        let k = family(FamilyKind::K, &asc(2)).unwrap();
        let expected =
            Tournament::from_edges(4, &[(0, 1), (2, 3), (0, 2), (3, 1), (3, 0), (1, 2)]).unwrap();
        assert_eq!(k, expected);
        assert_eq!(k.count_cycles(), 2);
        assert!(is_isomorphic(&k, &k.dual()));
    }

    #[test]
    fn every_generator_set_gives_a_tournament() {
        for kind in FamilyKind::ALL {
            for n in 1..=6 {
                let t = family(kind, &asc(n)).unwrap();
                assert_eq!(t.order(), family_order(kind, n));
                let d = family(kind, &ChainSpec::descending(n)).unwrap();
                assert!(is_isomorphic(&t, &d));
            }
        }
    }

    #[test]
    fn checked_family_sizes() {
        for n in 1..=5 {
            let c = family(FamilyKind::C3, &asc(n)).unwrap();
            assert_eq!(checked_family(FamilyKind::C3, &asc(n)).unwrap(), c);
            let v = family(FamilyKind::V, &asc(n)).unwrap();
            assert_eq!(checked_family(FamilyKind::V, &asc(n)).unwrap(), v);
            assert_eq!(checked_family(FamilyKind::K, &asc(n)).unwrap().order(), 2 * n - 1);
        }
    }

    #[test]
    fn k_least_pair_is_autonomous() {
        let k = family(FamilyKind::K, &asc(3)).unwrap();
        let d = acyclic_components(&k).unwrap();
        assert!(d.blocks.contains(&vec![family_vertex(0, 0), family_vertex(0, 1)]));
        assert_eq!(d.spectrum[0], 2);
    }

    #[test]
    fn t_acyclic_pair_joins_opposite_fibres() {
        // For T the certified pair is {(m,1), (M,0)}.
        for n in 2..=5 {
            let t = family(FamilyKind::T, &asc(n)).unwrap();
            let d = acyclic_components(&t).unwrap();
            let pair = vec![family_vertex(0, 1), family_vertex(n - 1, 0)];
            assert!(d.blocks.contains(&pair), "n = {n}: {:?}", d.blocks);
            assert_eq!(d.spectrum, {
                let mut s = vec![1; 2 * n - 2];
                s.insert(0, 2);
                s
            });
        }
    }

    #[test]
    fn schmerl_trotter_basics() {
        assert_eq!(schmerl_trotter(StKind::T, 1), Err(Error::HTooSmall(1)));
        for h in 2..=3 {
            for kind in [StKind::T, StKind::U, StKind::V] {
                let t = schmerl_trotter(kind, h).unwrap();
                assert_eq!(t.order(), 2 * h + 1);
                assert!(is_indecomposable(&t));
            }
        }
        assert!(!embeds(&witness("T5").unwrap(), &witness("U7").unwrap()));
        assert_eq!(automorphism_count(&schmerl_trotter(StKind::U, 2).unwrap()), 1);
        assert_eq!(automorphism_count(&schmerl_trotter(StKind::U, 3).unwrap()), 1);
    }

    #[test]
    fn witnesses() {
        let tau1 = witness("tau1").unwrap();
        assert_eq!(tau1.order(), 6);
        assert!(is_acyclically_indecomposable(&tau1));
        let h3 = witness("H3").unwrap();
        assert_eq!(h3.order(), 6);
        assert!(is_indecomposable(&h3));
        let tau2 = witness("tau2").unwrap();
        assert_eq!(tau2.order(), 5);
        assert!(is_acyclically_indecomposable(&tau2));
        assert!(embeds(&tau2, &family(FamilyKind::K, &asc(4)).unwrap()));
        assert_eq!(witness("tau3"), Err(Error::UnknownWitness("tau3".into())));
    }

    #[test]
    fn tau_block_order_is_irrelevant() {
        let c3 = Tournament::cycle3();
        let one = Tournament::chain(1);
        let a = lex_sum(&c3, &[c3.clone(), one.clone(), one.clone()]).unwrap().tournament;
        let b = lex_sum(&c3, &[one.clone(), c3.clone(), one.clone()]).unwrap().tournament;
        let c = lex_sum(&c3, &[one.clone(), one, c3.clone()]).unwrap().tournament;
        assert!(is_isomorphic(&a, &b) && is_isomorphic(&b, &c));
    }

    #[test]
    fn nine_vertex_cycle_of_cycles_avoids_k() {
        // Strongly connected parts of K members are too small for it.
        let c3 = Tournament::cycle3();
        let nine = lex_sum(&c3, &[c3.clone(), c3.clone(), c3.clone()]).unwrap().tournament;
        assert!(!embeds(&nine, &family(FamilyKind::K, &asc(8)).unwrap()));
    }
}
