//! Desk-scale verification suites. Each returns a deterministic
//! [`SuiteReport`]; failures are recorded in the report, not raised.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::canon::{canonical_form, is_isomorphic, CanonicalCode};
use crate::decomp::{
    acyclic_components, is_acyclically_indecomposable, is_autonomous_mask, monomorphic_components,
    monomorphic_components_oracle, separated, verify_witness,
};
use crate::embed::{embeds, find_embedding};
use crate::error::{Error, Result};
use crate::families::{checked_family, family, witness, witness_family, FamilyKind, WITNESS_NAMES};
use crate::formulas::{formula_value, FormulaKind};
use crate::io::write_tournament;
use crate::profile::{limit_profile, profile_sequence_with, CensusOptions};
use crate::tournament::{lex_sum, ChainSpec, Tournament};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x7072_6f66_696c_6573;
/// Largest size enumerated exhaustively by [`check_decomposition`].
pub const EXHAUSTIVE_MAX: usize = 6;
/// Largest size accepted by [`enumerate_tournaments`].
pub const ENUMERATION_MAX: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub check: String,
    /// The offending tournament in the plain-text file format.
    pub tournament: String,
}

/// Outcome of one suite. Serializes to JSON without timing, so that runs
/// with equal parameters produce identical output.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub parameters: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub counterexamples: Vec<Counterexample>,
    pub data: BTreeMap<String, Value>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            passed: true,
            parameters: BTreeMap::new(),
            checks: Vec::new(),
            counterexamples: Vec::new(),
            data: BTreeMap::new(),
            elapsed: Duration::ZERO,
        }
    }

    fn param(&mut self, key: &str, value: impl Serialize) {
        self.parameters.insert(key.to_string(), json!(value));
    }

    fn datum(&mut self, key: &str, value: impl Serialize) {
        self.data.insert(key.to_string(), json!(value));
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: Option<String>) {
        self.passed &= passed;
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail,
        });
    }

    fn counterexample(&mut self, check: impl Into<String>, t: &Tournament) {
        self.passed = false;
        self.counterexamples.push(Counterexample {
            check: check.into(),
            tournament: write_tournament(t, &[]),
        });
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports are plain data")
    }
}

/// Runs `f` on a dedicated rayon pool with the given number of threads.
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InternalInconsistency(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

pub fn random_tournament(n: usize, rng: &mut impl Rng) -> Tournament {
    Tournament::from_fn(n, |_, _| rng.gen()).expect("sizes are bounded by the caller")
}

/// One canonical representative per isomorphism class on `n` vertices,
/// sorted by canonical code. Classes on `n` vertices are obtained by adding
/// a vertex in every possible way to the representatives on `n - 1`.
pub fn enumerate_tournaments(n: usize) -> Result<Vec<Tournament>> {
    if n > ENUMERATION_MAX {
        return Err(Error::TooLarge {
            what: "enumeration size",
            size: n,
            max: ENUMERATION_MAX,
        });
    }
    let mut reps = vec![Tournament::empty()];
    for m in 0..n {
        let tasks: Vec<(&Tournament, u64)> = reps
            .iter()
            .flat_map(|r| (0u64..1 << m).map(move |mask| (r, mask)))
            .collect();
        let codes: BTreeSet<CanonicalCode> = tasks
            .into_par_iter()
            .map(|(r, mask)| canonical_form(&extend(r, mask)))
            .collect();
        reps = codes.into_iter().map(|c| c.to_tournament()).collect();
    }
    Ok(reps)
}

/// Adds a vertex `m` beating exactly the vertices in `beats`.
fn extend(t: &Tournament, beats: u64) -> Tournament {
    let m = t.order();
    let mut rows = t.rows().to_vec();
    for (v, row) in rows.iter_mut().enumerate() {
        if beats >> v & 1 == 0 {
            *row |= 1 << m;
        }
    }
    rows.push(beats);
    Tournament::from_rows(rows).expect("extension of a tournament")
}

/// Every decomposition law that fails for `t`, as messages. With `oracle`,
/// monomorphic components are also compared with the definition-based
/// computation.
pub fn decomposition_violations(t: &Tournament, oracle: bool) -> Vec<String> {
    let mut v = Vec::new();
    let n = t.order();
    for x in 0..n {
        for y in x + 1..n {
            if let Some(w) = separated(t, x, y) {
                if !verify_witness(t, x, y, &w) {
                    v.push(format!("unsound {:?} witness for {x}, {y}", w.kind));
                }
            }
        }
    }
    let dec = match acyclic_components(t) {
        Ok(d) => d,
        Err(e) => {
            v.push(e.to_string());
            return v;
        }
    };
    let masks = dec.block_masks();
    let union = masks.iter().fold(0u64, |u, m| u | m);
    let total: u32 = masks.iter().map(|m| m.count_ones()).sum();
    if union != t.vertex_mask() || total as usize != n {
        v.push("blocks do not partition the vertex set".into());
    }
    for &m in &masks {
        if !t.is_acyclic_on(m) || !is_autonomous_mask(t, m) {
            v.push("a block is not acyclic and autonomous".into());
        }
    }
    if !is_acyclically_indecomposable(&dec.quotient) {
        v.push("quotient is not acyclically indecomposable".into());
    }
    let blocks: Vec<Tournament> = dec.blocks.iter().map(|b| t.restrict_unchecked(b)).collect();
    match lex_sum(&dec.quotient, &blocks) {
        Ok(s) if is_isomorphic(&s.tournament, t) => {}
        _ => v.push("quotient sum of blocks is not isomorphic to the input".into()),
    }
    match monomorphic_components(t) {
        Err(e) => v.push(e.to_string()),
        Ok(mono) => {
            let acyc: BTreeSet<&Vec<usize>> = dec.blocks.iter().filter(|b| b.len() >= 4).collect();
            let big: BTreeSet<&Vec<usize>> = mono.iter().filter(|b| b.len() >= 4).collect();
            if acyc != big {
                v.push("large monomorphic and acyclic components differ".into());
            }
            if oracle {
                match monomorphic_components_oracle(t) {
                    Ok(o) if o == mono => {}
                    Ok(_) => v.push("monomorphic components differ from the oracle".into()),
                    Err(e) => v.push(e.to_string()),
                }
            }
        }
    }
    v
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecompositionParams {
    pub n_max: usize,
    /// Random tournaments checked for each size above the exhaustive range.
    pub samples: usize,
    pub seed: u64,
}

impl DecompositionParams {
    pub fn new(n_max: usize) -> Self {
        DecompositionParams {
            n_max,
            samples: 500,
            seed: DEFAULT_SEED,
        }
    }
}

/// Decomposition laws on every tournament up to `min(n_max, 6)` vertices and
/// on `samples` seeded random tournaments with sizes in `7..=n_max`.
pub fn check_decomposition(p: DecompositionParams) -> Result<SuiteReport> {
    if p.n_max > 64 {
        return Err(Error::TooLarge {
            what: "tournament",
            size: p.n_max,
            max: 64,
        });
    }
    let start = Instant::now();
    let mut r = SuiteReport::new("decomposition");
    r.param("n_max", p.n_max);
    r.param("samples", p.samples);
    r.param("seed", p.seed);

    let mut inputs: Vec<(String, Tournament, bool)> = Vec::new();
    let mut per_size = BTreeMap::new();
    for n in 1..=p.n_max.min(EXHAUSTIVE_MAX) {
        let reps = enumerate_tournaments(n)?;
        per_size.insert(n, reps.len());
        inputs.extend(reps.into_iter().map(|t| (format!("exhaustive n={n}"), t, true)));
    }
    if p.n_max > EXHAUSTIVE_MAX {
        let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
        for _ in 0..p.samples {
            let n = rng.gen_range(EXHAUSTIVE_MAX + 1..=p.n_max);
            inputs.push((format!("sample n={n}"), random_tournament(n, &mut rng), false));
        }
    }
    let results: Vec<Vec<String>> = inputs
        .par_iter()
        .map(|(_, t, oracle)| decomposition_violations(t, *oracle))
        .collect();
    let exhaustive = inputs.iter().filter(|i| i.2).count();
    for ((label, t, _), violations) in inputs.iter().zip(results) {
        for msg in violations {
            r.check(label.clone(), false, Some(msg.clone()));
            r.counterexample(msg, t);
        }
    }
    r.check(
        "decomposition laws",
        r.counterexamples.is_empty(),
        Some(format!("{} tournaments", inputs.len())),
    );
    r.datum("classes_per_size", per_size);
    r.datum("tournaments_checked", exhaustive);
    r.datum("samples_checked", inputs.len() - exhaustive);
    r.elapsed = start.elapsed();
    Ok(r)
}

/// Listed prefix of the V profile.
pub const V_PROFILE_PREFIX: [u128; 8] = [1, 1, 1, 2, 4, 9, 21, 48];
/// Largest `n_max` accepted by [`check_profile_formulas`].
pub const PROFILE_FORMULAS_MAX: usize = 9;

/// Expected value and comparison for one family at size `n`.
fn family_oracle(kind: FamilyKind, n: usize) -> Result<(u128, bool)> {
    let n64 = n as u64;
    // (value, exact): exact means equality, otherwise a lower bound.
    Ok(match kind {
        FamilyKind::C3 => (formula_value(FormulaKind::C3Recurrence, n64)?, true),
        FamilyKind::K if n >= 2 => (formula_value(FormulaKind::KClosed, n64)?, true),
        FamilyKind::T if n >= 1 => (formula_value(FormulaKind::CameronDiamondFree, n64)?, true),
        FamilyKind::V if n < V_PROFILE_PREFIX.len() => (V_PROFILE_PREFIX[n], true),
        FamilyKind::V => (formula_value(FormulaKind::VLower, n64)?, false),
        FamilyKind::U => (formula_value(FormulaKind::ULower, n64)?, false),
        FamilyKind::H => (formula_value(FormulaKind::HLower, n64)?, false),
        _ => (1, true),
    })
}

/// Limit profiles of the six families against the closed forms, listed
/// values and lower bounds.
pub fn check_profile_formulas(n_max: usize) -> Result<SuiteReport> {
    if n_max > PROFILE_FORMULAS_MAX {
        return Err(Error::TooLarge {
            what: "profile prefix",
            size: n_max,
            max: PROFILE_FORMULAS_MAX,
        });
    }
    let start = Instant::now();
    let mut r = SuiteReport::new("formulas");
    r.param("n_max", n_max);
    let opts = CensusOptions::default();
    for kind in FamilyKind::ALL {
        let lp = limit_profile(kind, n_max, opts)?;
        // Every n-subset lies over at most n chain points.
        let at_n = profile_sequence_with(&family(kind, &ChainSpec::ascending(n_max.max(1)))?, n_max, opts)?;
        r.check(
            format!("{kind} stabilized prefix equals the chain-length-{} profile", n_max.max(1)),
            at_n.values == lp.values,
            (at_n.values != lp.values).then(|| format!("{:?} vs {:?}", at_n.values, lp.values)),
        );
        let mut bad = Vec::new();
        for (n, &value) in lp.values.iter().enumerate() {
            let (expected, exact) = family_oracle(kind, n)?;
            let ok = if exact { value == expected } else { value >= expected };
            if !ok {
                bad.push(format!("n={n}: {value} vs {expected}"));
            }
        }
        let what = match kind {
            FamilyKind::C3 => "matches the recurrence",
            FamilyKind::K => "matches 2^(n-2)",
            FamilyKind::T => "matches the totient formula",
            FamilyKind::V => "matches the listed prefix and its lower bound",
            FamilyKind::U | FamilyKind::H => "dominates its lower bound",
        };
        r.check(format!("{kind} profile {what}"), bad.is_empty(), (!bad.is_empty()).then(|| bad.join("; ")));
        r.datum(&format!("{kind}"), &lp);
    }
    r.elapsed = start.elapsed();
    Ok(r)
}

/// Largest chain length accepted by [`check_incomparability`].
pub const INCOMPARABILITY_MAX: usize = 14;

/// Each witness embeds in its own family and in no member of another
/// family over a chain of length `host_size`, in either orientation.
pub fn check_incomparability(host_size: usize) -> Result<SuiteReport> {
    if host_size > INCOMPARABILITY_MAX || host_size == 0 {
        return Err(Error::TooLarge {
            what: "host chain length",
            size: host_size,
            max: INCOMPARABILITY_MAX,
        });
    }
    let start = Instant::now();
    let mut r = SuiteReport::new("incomparability");
    r.param("host_size", host_size);

    let mut own = BTreeMap::new();
    let mut tasks = Vec::new();
    for name in WITNESS_NAMES {
        let w = witness(name)?;
        let kind = witness_family(name)?;
        let mut found = None;
        for len in 1..=host_size {
            if let Some(map) = find_embedding(&w, &family(kind, &ChainSpec::ascending(len))?) {
                found = Some((len, map));
                break;
            }
        }
        r.check(
            format!("{name} embeds in {kind}"),
            found.is_some(),
            found.as_ref().map(|(len, _)| format!("chain length {len}")),
        );
        own.insert(name, found.map(|(len, map)| json!({ "chain_length": len, "embedding": map })));
        for other in FamilyKind::ALL.into_iter().filter(|&k| k != kind) {
            for desc in [false, true] {
                tasks.push((name, w.clone(), other, desc));
            }
        }
    }
    let outcomes: Vec<Result<bool>> = tasks
        .par_iter()
        .map(|(_, w, other, desc)| {
            let chain = if *desc {
                ChainSpec::descending(host_size)
            } else {
                ChainSpec::ascending(host_size)
            };
            Ok(embeds(w, &family(*other, &chain)?))
        })
        .collect();
    let mut violations = 0;
    for ((name, w, other, desc), hit) in tasks.iter().zip(outcomes) {
        if hit? {
            violations += 1;
            let o = if *desc { "descending" } else { "ascending" };
            r.check(format!("{name} avoids {other} ({o})"), false, None);
            r.counterexample(format!("{name} embeds in {other} ({o})"), w);
        }
    }
    r.check(
        "no witness embeds in another family",
        violations == 0,
        Some(format!("{} host checks", tasks.len())),
    );
    r.datum("own_family", own);
    r.datum("violations", violations);
    r.elapsed = start.elapsed();
    Ok(r)
}

/// Acyclically indecomposable tournaments of each size up to `size_bound`
/// that contain no acyclically indecomposable quotient of a family member
/// over the `n`-chain.
pub fn check_compactness(n: usize, size_bound: usize) -> Result<SuiteReport> {
    if !(2..=3).contains(&n) {
        return Err(Error::Domain {
            formula: "check_compactness",
            n: n as u64,
        });
    }
    if size_bound > ENUMERATION_MAX {
        return Err(Error::TooLarge {
            what: "compactness size bound",
            size: size_bound,
            max: ENUMERATION_MAX,
        });
    }
    let start = Instant::now();
    let mut r = SuiteReport::new("compactness");
    r.param("n", n);
    r.param("size_bound", size_bound);

    let mut members: BTreeMap<CanonicalCode, (Tournament, Vec<&str>)> = BTreeMap::new();
    for kind in FamilyKind::ALL {
        let m = checked_family(kind, &ChainSpec::ascending(n))?;
        members
            .entry(canonical_form(&m))
            .or_insert_with(|| (m, Vec::new()))
            .1
            .push(kind.name());
    }
    r.datum(
        "members",
        members
            .iter()
            .map(|(c, (m, kinds))| json!({ "families": kinds, "order": m.order(), "code": c.to_hex() }))
            .collect::<Vec<_>>(),
    );
    let member_list: Vec<&Tournament> = members.values().map(|(m, _)| m).collect();

    let mut sizes = Vec::new();
    let mut nonempty = Vec::new();
    let mut all_avoiders_ok = true;
    for s in 1..=size_bound {
        let reps = enumerate_tournaments(s)?;
        let candidates: Vec<Tournament> = reps.into_iter().filter(is_acyclically_indecomposable).collect();
        let avoiders: Vec<&Tournament> = candidates
            .par_iter()
            .filter(|t| !member_list.iter().any(|m| embeds(m, t)))
            .collect();
        for t in &avoiders {
            // Re-verify each listed avoider independently of the filter.
            if !is_acyclically_indecomposable(t) || member_list.iter().any(|m| find_embedding(m, t).is_some()) {
                all_avoiders_ok = false;
                r.counterexample("listed avoider fails verification", t);
            }
        }
        if !avoiders.is_empty() {
            nonempty.push(s);
        }
        sizes.push(json!({
            "size": s,
            "acyclically_indecomposable": candidates.len(),
            "avoiders": avoiders.iter().map(|t| canonical_form(t).to_hex()).collect::<Vec<_>>(),
        }));
    }
    let first_empty = match nonempty.last() {
        None => Some(1),
        Some(&last) if last < size_bound => Some(last + 1),
        _ => None,
    };
    r.check("every avoider is acyclically indecomposable and avoids all members", all_avoiders_ok, None);
    r.datum("sizes", sizes);
    r.datum(
        "first_empty_size",
        first_empty.map_or(json!("NOT_REACHED"), |s| json!(s)),
    );
    r.elapsed = start.elapsed();
    Ok(r)
}

/// Largest chain length accepted by [`check_duality`].
pub const DUALITY_MAX: usize = 5;

/// Duals of family members against members over the reversed chain.
pub fn check_duality(n_max_chain: usize) -> Result<SuiteReport> {
    if n_max_chain > DUALITY_MAX {
        return Err(Error::TooLarge {
            what: "duality chain length",
            size: n_max_chain,
            max: DUALITY_MAX,
        });
    }
    let start = Instant::now();
    let mut r = SuiteReport::new("duality");
    r.param("n_max_chain", n_max_chain);
    for len in 2..=n_max_chain {
        let (asc, desc) = (ChainSpec::ascending(len), ChainSpec::descending(len));
        for kind in [FamilyKind::C3, FamilyKind::V, FamilyKind::T, FamilyKind::H, FamilyKind::K] {
            let dual = family(kind, &asc)?.dual();
            let ok = is_isomorphic(&dual, &family(kind, &desc)?);
            r.check(format!("dual of {kind} over {len} is {kind} over the reversed chain"), ok, None);
            if kind == FamilyKind::K {
                let same = is_isomorphic(&dual, &family(kind, &asc)?);
                r.check(format!("K over {len} is self dual"), same, None);
            }
        }
        let u_dual = family(FamilyKind::U, &asc)?.dual();
        let u_desc_long = family(FamilyKind::U, &ChainSpec::descending(2 * len))?;
        r.check(
            format!("dual of U over {len} embeds in U over the reversed {}-chain", 2 * len),
            embeds(&u_dual, &u_desc_long),
            None,
        );
        let u_desc = family(FamilyKind::U, &desc)?;
        let u_dual_long = family(FamilyKind::U, &ChainSpec::ascending(2 * len))?.dual();
        r.check(
            format!("U over the reversed {len}-chain embeds in the dual of U over {}", 2 * len),
            embeds(&u_desc, &u_dual_long),
            None,
        );
    }
    r.elapsed = start.elapsed();
    Ok(r)
}
