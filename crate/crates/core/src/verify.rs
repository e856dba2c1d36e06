//! Cross-checks of the three routes to the norm, deterministic test-input
//! generation and the invariant suite.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Signed;
use rand_xoshiro::rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::character::Character;
use crate::chordal::{
    chordality_indices, clique_tree_splitting, is_induced_cycle, is_perfect_elimination_ordering,
};
use crate::complex::FlagComplex;
use crate::error::{Error, Result};
use crate::homology::{euler_raag, reduced_betti};
use crate::l2::l2_euler_kernel;
use crate::rational::{self, q, Q};
use crate::splitting::{
    cyclic_cover_truncation, dual_splitting, euler_check, free_product_splitting,
    splitting_complexity,
};
use crate::zonotope::{l2_polytope, thurston_norm};

/// Seeded split-mix stream used for every generated input.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    inner: rand_xoshiro::SplitMix64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 {
            inner: rand_xoshiro::SplitMix64::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform in `0..n` (n > 0), by rejection.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        let zone = u64::MAX - u64::MAX % n;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % n;
            }
        }
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    pub fn coin(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }
}

fn vertex_name(i: usize) -> String {
    format!("v{i}")
}

/// Connected chordal graph on `n` vertices built by reverse perfect
/// elimination: each new vertex is attached to a nonempty subset of a
/// randomly chosen existing maximal clique.
pub fn random_chordal(n: usize, seed: u64) -> Result<FlagComplex> {
    if n == 0 {
        return Err(Error::Precondition("random_chordal needs n ≥ 1".into()));
    }
    let mut rng = SplitMix64::new(seed);
    let mut cliques: Vec<Vec<usize>> = vec![vec![0]];
    let mut edges: Vec<(String, String)> = Vec::new();
    for v in 1..n {
        let ci = rng.below(cliques.len() as u64) as usize;
        let clique = cliques[ci].clone();
        let mut subset: Vec<usize> = clique.iter().copied().filter(|_| rng.coin()).collect();
        if subset.is_empty() {
            subset.push(clique[rng.below(clique.len() as u64) as usize]);
        }
        for &u in &subset {
            edges.push((vertex_name(u), vertex_name(v)));
        }
        let mut grown = subset.clone();
        grown.push(v);
        if subset.len() == clique.len() {
            cliques[ci] = grown;
        } else {
            cliques.push(grown);
        }
    }
    let names: Vec<String> = (0..n).map(vertex_name).collect();
    FlagComplex::new(&names, &edges)
}

/// A random chordal graph with an induced cycle of length `cycle_len`
/// (≥ 4) attached. The cycle vertices are joined to the base graph but
/// never to each other beyond the cycle, so the cycle stays induced.
pub fn planted_cycle(base_n: usize, cycle_len: usize, seed: u64) -> Result<FlagComplex> {
    if cycle_len < 4 {
        return Err(Error::Precondition("planted cycle needs length ≥ 4".into()));
    }
    let base = random_chordal(base_n, seed)?;
    let mut rng = SplitMix64::new(seed ^ 0xC1C1_E000_0000_0001);
    let mut names: Vec<String> = base.names().to_vec();
    let mut edges: Vec<(String, String)> = base
        .edges()
        .into_iter()
        .map(|(u, v)| (base.name(u).to_string(), base.name(v).to_string()))
        .collect();
    let cyc: Vec<String> = (0..cycle_len).map(|i| format!("c{i}")).collect();
    names.extend(cyc.iter().cloned());
    for i in 0..cycle_len {
        edges.push((cyc[i].clone(), cyc[(i + 1) % cycle_len].clone()));
    }
    let anchor = rng.below(base_n as u64) as usize;
    edges.push((cyc[0].clone(), vertex_name(anchor)));
    for c in cyc.iter().skip(1) {
        if rng.below(4) == 0 {
            let u = rng.below(base_n as u64) as usize;
            edges.push((c.clone(), vertex_name(u)));
        }
    }
    FlagComplex::new(&names, &edges)
}

/// Integer values uniform in `[-5, 5]`, resampled until nonzero.
pub fn random_character(l: &FlagComplex, rng: &mut SplitMix64) -> Character {
    loop {
        let values: Vec<i64> = (0..l.vertex_count()).map(|_| rng.range(-5, 5)).collect();
        if values.iter().any(|&v| v != 0) {
            return Character::from_ints(l, &values).expect("length matches");
        }
    }
}

/// A random primitive character: a random character divided by its gcd.
pub fn random_primitive_character(l: &FlagComplex, rng: &mut SplitMix64) -> Character {
    random_character(l, rng)
        .primitive_part()
        .expect("nonzero integral")
        .0
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexSummary {
    pub vertices: usize,
    pub edges: usize,
    pub connected: bool,
    pub chordal: bool,
}

impl ComplexSummary {
    pub fn of(l: &FlagComplex) -> Self {
        ComplexSummary {
            vertices: l.vertex_count(),
            edges: l.edge_count(),
            connected: l.is_connected(),
            chordal: chordality_indices(l).is_ok(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheckValues {
    #[serde(with = "rational::serde_q_opt")]
    pub thickness: Option<Q>,
    #[serde(with = "rational::serde_q_opt")]
    pub minus_chi2: Option<Q>,
    #[serde(with = "rational::serde_q_opt")]
    pub complexity: Option<Q>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheckReport {
    pub complex: ComplexSummary,
    pub character: Character,
    pub primitive_gcd: BigInt,
    pub values: CrossCheckValues,
    /// Present only when applicable.
    pub equal: Option<bool>,
    pub applicable: bool,
}

impl CrossCheckReport {
    pub fn to_json(&self) -> Value {
        json!({
            "complex": self.complex,
            "character": self.character.to_json(),
            "primitive_gcd": self.primitive_gcd.to_string(),
            "values": self.values,
            "equal": self.equal,
            "applicable": self.applicable,
        })
    }
}

/// Compares thickness of the L²-polytope, `-χ^{(2)}(ker φ)` and the
/// complexity of the constructed dual splitting. The identity is asserted
/// only for connected chordal complexes on at least two vertices.
pub fn cross_check(l: &FlagComplex, phi: &Character) -> Result<CrossCheckReport> {
    phi.aligned(l)?;
    phi.require_integral_nonzero()?;
    let (primitive, g) = phi.primitive_part()?;
    let summary = ComplexSummary::of(l);
    let applicable = summary.chordal && summary.connected && summary.vertices >= 2;

    let minus_chi2 = Some(-l2_euler_kernel(l, &primitive)? * Q::from_integer(g.clone()));
    let complexity = if summary.chordal {
        Some(splitting_complexity(&dual_splitting(l, phi)?.0)?)
    } else {
        None
    };
    let thickness = if applicable {
        Some(l2_polytope(l)?.thickness(phi)?)
    } else {
        None
    };
    let equal = applicable.then(|| thickness == minus_chi2 && minus_chi2 == complexity);
    Ok(CrossCheckReport {
        complex: summary,
        character: phi.clone(),
        primitive_gcd: g,
        values: CrossCheckValues {
            thickness,
            minus_chi2,
            complexity,
        },
        equal,
        applicable,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub samples: usize,
    pub max_n: usize,
    pub seed: u64,
    /// Also push a 4-cycle through the norm pipeline and expect a domain error.
    #[serde(default)]
    pub inject_non_chordal: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            samples: 100,
            max_n: 12,
            seed: 42,
            inject_non_chordal: false,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct CheckTally {
    pub passed: usize,
    pub failed: usize,
    pub counterexamples: Vec<Value>,
}

impl CheckTally {
    fn record(&mut self, ok: bool, payload: impl FnOnce() -> Value) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.counterexamples.len() < 10 {
                self.counterexamples.push(payload());
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub checks: BTreeMap<String, CheckTally>,
    pub total_passed: usize,
    pub total_failed: usize,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.total_failed == 0
    }
}

fn case(l: &FlagComplex, phi: Option<&Character>) -> Value {
    json!({
        "complex": l.to_json(),
        "character": phi.map(Character::to_json),
    })
}

fn seed_for(base: u64, index: usize, salt: u64) -> u64 {
    let mut rng = SplitMix64::new(
        base ^ salt.rotate_left(17) ^ (index as u64).wrapping_mul(0xA24B_AED4_963E_E407),
    );
    rng.next_u64()
}

/// Runs every invariant family on generated inputs.
pub fn run_suite(config: &SuiteConfig) -> SuiteReport {
    let mut checks: BTreeMap<String, CheckTally> = BTreeMap::new();
    let max_n = config.max_n.max(1);
    for i in 0..config.samples {
        let mut rng = SplitMix64::new(seed_for(config.seed, i, 1));
        let n = 1 + rng.below(max_n as u64) as usize;
        let l = random_chordal(n, rng.next_u64()).expect("n ≥ 1");
        suite_case(&l, &mut rng, &mut checks);

        let planted = planted_cycle(n, 4 + rng.below(4) as usize, rng.next_u64()).expect("valid");
        let tally = checks.entry("chordality_soundness".into()).or_default();
        let ok = match chordality_indices(&planted) {
            Ok(_) => false,
            Err(cycle) => is_induced_cycle(&planted, &cycle),
        };
        tally.record(ok, || case(&planted, None));
    }

    let e2 = FlagComplex::edgeless(&["a", "b"]).expect("valid");
    let phi = Character::from_ints(&e2, &[1, 1]).expect("valid");
    let tally = checks.entry("negative_control".into()).or_default();
    let ok = matches!(cross_check(&e2, &phi), Ok(r) if !r.applicable && r.equal.is_none());
    tally.record(ok, || case(&e2, Some(&phi)));
    let wrapper = free_product_splitting(&e2).expect("valid");
    checks
        .entry("euler_bookkeeping".into())
        .or_default()
        .record(euler_check(&wrapper) == q(-1), || case(&e2, None));

    if config.inject_non_chordal {
        let c4 = FlagComplex::new(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
        )
        .expect("valid");
        let phi = Character::from_ints(&c4, &[1, 1, 1, 1]).expect("valid");
        let tally = checks.entry("domain_errors".into()).or_default();
        for outcome in [
            thurston_norm(&c4, &phi).map(|_| ()),
            l2_polytope(&c4).map(|_| ()),
            dual_splitting(&c4, &phi).map(|_| ()),
        ] {
            let ok = matches!(outcome, Err(Error::NotChordal { .. }));
            tally.record(ok, || case(&c4, Some(&phi)));
        }
    }

    let total_passed = checks.values().map(|t| t.passed).sum();
    let total_failed = checks.values().map(|t| t.failed).sum();
    SuiteReport {
        config: config.clone(),
        checks,
        total_passed,
        total_failed,
    }
}

fn suite_case(l: &FlagComplex, rng: &mut SplitMix64, checks: &mut BTreeMap<String, CheckTally>) {
    let mut tally = |name: &str, ok: bool, payload: &dyn Fn() -> Value| {
        checks
            .entry(name.to_string())
            .or_default()
            .record(ok, payload);
    };
    let no_phi = || case(l, None);

    let chordal_ok = matches!(chordality_indices(l), Ok(peo) if is_perfect_elimination_ordering(l, &peo))
        && l.is_connected();
    tally("chordality_soundness", chordal_ok, &no_phi);

    let contractible = reduced_betti(l).map(|b| b.is_zero()).unwrap_or(false);
    let cut_ok = l.vertex_count() < 2
        || (0..l.vertex_count()).all(|v| {
            let rank = l.cut_rank_index(v).ok();
            let b0 = reduced_betti(&l.link_indices(v)).ok().map(|b| b.get(0));
            rank.is_some() && rank == b0
        });
    tally(
        "contractibility_and_cut_rank",
        contractible && cut_ok,
        &no_phi,
    );

    let chi = euler_raag(l).ok().map(q);
    let tree_ok = clique_tree_splitting(l).ok().map(|g| euler_check(&g)) == chi;
    tally("euler_bookkeeping", tree_ok, &no_phi);

    let phi = random_primitive_character(l, rng);
    let with_phi = || case(l, Some(&phi));
    let split = dual_splitting(l, &phi);
    let split_euler_ok = matches!(&split, Ok((g, _)) if Some(euler_check(g)) == chi);
    tally("euler_bookkeeping", split_euler_ok, &with_phi);
    let wrapper_ok = free_product_splitting(l).ok().map(|g| euler_check(&g)) == chi;
    tally("euler_bookkeeping", wrapper_ok, &no_phi);

    if let Ok((g, _)) = &split {
        let max_step = g
            .stable_letters
            .values()
            .map(|t| t.abs().to_integer())
            .max()
            .and_then(|m| usize::try_from(m).ok())
            .unwrap_or(0);
        let ok = (0..=50).all(|k| match cyclic_cover_truncation(g, k) {
            Ok(t) => {
                let counts_ok = g.edges.iter().enumerate().all(|(e, _)| {
                    let step = g.stable_letters[&e].abs().to_integer();
                    let expected =
                        (2 * k as i64 + 1 - i64::try_from(step).unwrap_or(i64::MAX)).max(0);
                    t.lifts[e] as i64 == expected
                });
                counts_ok && (k < max_step || t.connected)
            }
            Err(_) => false,
        });
        tally("cover_truncation", ok, &with_phi);
    } else {
        tally("cover_truncation", false, &with_phi);
    }

    if l.vertex_count() < 2 {
        return;
    }
    let main_ok = matches!(cross_check(l, &phi), Ok(r) if r.applicable && r.equal == Some(true));
    tally("main_equality", main_ok, &with_phi);

    let base_c = split
        .as_ref()
        .ok()
        .and_then(|(g, _)| splitting_complexity(g).ok());
    let base_t = thurston_norm(l, &phi).ok();
    let mult_ok = base_c.is_some()
        && base_t.is_some()
        && [-3i64, -2, -1, 1, 2, 3].iter().all(|&k| {
            let scaled = phi.scale(&q(k));
            let c = dual_splitting(l, &scaled)
                .and_then(|(g, _)| splitting_complexity(&g))
                .ok();
            let t = thurston_norm(l, &scaled).ok();
            let factor = q(k.abs());
            c == base_c.as_ref().map(|x| x * &factor) && t == base_t.as_ref().map(|x| x * &factor)
        });
    tally("multiplicativity", mult_ok, &with_phi);

    let psi = random_character(l, rng);
    let sum = phi.add(&psi).expect("same domain");
    let norms = (
        thurston_norm(l, &phi),
        thurston_norm(l, &psi),
        thurston_norm(l, &sum),
    );
    let seminorm_ok = match norms {
        (Ok(a), Ok(b), Ok(s)) => {
            let k = rational::q_ratio(rng.range(-7, 7), rng.range(1, 5));
            let hom = thurston_norm(l, &phi.scale(&k)).ok() == Some(k.abs() * &a);
            s <= a + b && hom
        }
        _ => false,
    };
    tally("seminorm", seminorm_ok, &with_phi);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_values() {
        // Reference outputs of SplitMix64 seeded with 1234567.
        let mut rng = SplitMix64::new(1234567);
        assert_eq!(rng.next_u64(), 6457827717110365317);
        assert_eq!(rng.next_u64(), 3203168211198807973);
    }

    #[test]
    fn generator_examples() {
        assert_eq!(random_chordal(1, 9).unwrap().vertex_count(), 1);
        assert_eq!(
            random_chordal(5, 42).unwrap(),
            random_chordal(5, 42).unwrap()
        );
        for seed in 0..30 {
            let l = random_chordal(12, seed).unwrap();
            assert!(l.is_connected());
            assert!(chordality_indices(&l).is_ok());
        }
        assert!(random_chordal(0, 1).is_err());
    }

    #[test]
    fn planted_cycles_are_detected() {
        for seed in 0..20 {
            let l = planted_cycle(6, 4 + (seed as usize % 3), seed).unwrap();
            let cycle = chordality_indices(&l).unwrap_err();
            assert!(is_induced_cycle(&l, &cycle));
        }
    }

    #[test]
    fn cross_check_examples() {
        let p3 = FlagComplex::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let r = cross_check(&p3, &Character::from_ints(&p3, &[1, 1, 1]).unwrap()).unwrap();
        assert_eq!(r.values.thickness, Some(q(1)));
        assert_eq!(r.values.minus_chi2, Some(q(1)));
        assert_eq!(r.values.complexity, Some(q(1)));
        assert_eq!(r.equal, Some(true));

        let r = cross_check(&p3, &Character::from_ints(&p3, &[2, 4, 2]).unwrap()).unwrap();
        assert_eq!(r.primitive_gcd, BigInt::from(2));
        assert_eq!(r.values.minus_chi2, Some(q(4)));
        assert_eq!(r.equal, Some(true));

        let e = FlagComplex::edgeless(&["a", "b"]).unwrap();
        let r = cross_check(&e, &Character::from_ints(&e, &[1, 1]).unwrap()).unwrap();
        assert!(!r.applicable);
        assert_eq!(r.equal, None);
        let zero = Character::from_ints(&e, &[0, 0]).unwrap();
        assert_eq!(cross_check(&e, &zero).unwrap_err(), Error::ZeroCharacter);
    }

    #[test]
    fn small_suites() {
        let report = run_suite(&SuiteConfig {
            samples: 20,
            max_n: 2,
            seed: 3,
            inject_non_chordal: true,
        });
        assert!(report.ok(), "{report:#?}");
        assert_eq!(report.checks["domain_errors"].passed, 3);
    }
}
