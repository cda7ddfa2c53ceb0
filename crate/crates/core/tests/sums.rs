use proptest::prelude::*;

use tournament_core::formulas::partition_count;
use tournament_core::profile::{
    growth_of_sum, profile_sequence, profile_sequence_with, series_fit, sum_profile, CensusOptions, Cap, SeriesFit,
    SumSpec,
};
use tournament_core::*;

#[test]
fn family_profiles_grow_monotonically_and_settle() {
    let opts = CensusOptions::default();
    for kind in FamilyKind::ALL {
        let seqs: Vec<Vec<u128>> = (1..=8)
            .map(|len| profile_sequence_with(&family(kind, &ChainSpec::ascending(len)).unwrap(), 6, opts).unwrap().values)
            .collect();
        for w in seqs.windows(2) {
            assert!(w[0].iter().zip(&w[1]).all(|(a, b)| a <= b), "{kind}: {:?} then {:?}", w[0], w[1]);
        }
        // Six vertices meet at most six chain points.
        assert!(seqs[5..].windows(2).all(|w| w[0] == w[1]), "{kind}");
    }
}

/// Expands `P(x) / prod_{i<=k} (1 - x^i)` to `len` coefficients.
fn expand(numerator: &[i128], k: usize, len: usize) -> Vec<i128> {
    let mut s = vec![0i128; len];
    s[..numerator.len().min(len)].copy_from_slice(&numerator[..numerator.len().min(len)]);
    for i in 1..=k {
        for m in i..len {
            s[m] += s[m - i];
        }
    }
    s
}

fn fitted(spec: &SumSpec, k: usize) -> Vec<i128> {
    let mut values = Vec::new();
    loop {
        values.push(sum_profile(spec, values.len()).unwrap());
        if values.len() >= 2 * k + 4 {
            if let Ok(SeriesFit::Polynomial(p)) = series_fit(&values, k) {
                return p;
            }
        }
        assert!(values.len() <= 40, "no fit for {spec:?}");
    }
}

#[test]
fn growth_follows_the_unbounded_components() {
    let c3 = Tournament::cycle3();
    let inf = Cap::Unbounded;
    let g = growth_of_sum(&SumSpec::unbounded(c3.clone())).unwrap();
    assert_eq!((g.p, g.k, g.degree), (3, 3, Some(2)));
    let g = growth_of_sum(&SumSpec::unbounded(Tournament::chain(2))).unwrap();
    assert_eq!((g.p, g.k, g.degree), (1, 1, Some(0)));
    let g = growth_of_sum(&SumSpec::new(c3, vec![inf, Cap::Finite(0), Cap::Finite(4)]).unwrap()).unwrap();
    assert_eq!((g.p, g.k), (1, 1));
}

#[test]
fn fitted_series_grow_with_the_predicted_degree() {
    let inf = Cap::Unbounded;
    let specs = [
        SumSpec::unbounded(Tournament::cycle3()),
        SumSpec::new(Tournament::cycle3(), vec![inf, inf, Cap::Finite(2)]).unwrap(),
        SumSpec::unbounded(Tournament::diamond()),
    ];
    for spec in &specs {
        let k = growth_of_sum(spec).unwrap().k;
        let s = expand(&fitted(spec, k), k, 402);
        // phi(n) / n^(k-1) settles: consecutive ratios near the end stay within 10%.
        let scaled = |n: usize| s[n] as f64 / (n as f64).powi(k as i32 - 1);
        for n in 390..400 {
            let r = scaled(n + 1) / scaled(n);
            assert!((0.9..=1.1).contains(&r), "{spec:?} at {n}: {r}");
        }
        assert!(scaled(400) > 0.0);
    }
}

fn small_index() -> impl Strategy<Value = Tournament> {
    (1usize..=4).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut k = 0;
            Tournament::from_fn(n, |_, _| {
                k += 1;
                bits[k - 1]
            })
            .unwrap()
        })
    })
}

fn cap() -> impl Strategy<Value = Cap> {
    prop_oneof![(0usize..=3).prop_map(Cap::Finite), Just(Cap::Unbounded)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sum_profile_respects_the_partition_bound(
        (index, caps) in small_index().prop_flat_map(|d| {
            let n = d.order();
            (Just(d), prop::collection::vec(cap(), n))
        })
    ) {
        let spec = SumSpec::new(index, caps).unwrap();
        let g = growth_of_sum(&spec).unwrap();
        for n in g.p..=12 {
            let lower = partition_count(g.k as u64, (n - g.p) as u64).unwrap();
            prop_assert!(sum_profile(&spec, n).unwrap() >= lower);
        }
    }

    #[test]
    fn finite_sums_match_their_materialization(
        (index, caps) in small_index().prop_flat_map(|d| {
            let n = d.order();
            (Just(d), prop::collection::vec(0usize..=3, n))
        })
    ) {
        let spec = SumSpec::new(index, caps.into_iter().map(Cap::Finite).collect()).unwrap();
        let t = spec.materialize().unwrap().unwrap();
        let direct = profile_sequence(&t, t.order()).unwrap().values;
        for (n, d) in direct.iter().enumerate() {
            prop_assert_eq!(sum_profile(&spec, n).unwrap(), *d);
        }
    }
}
