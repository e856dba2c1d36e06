//! Acceptance criteria, one check per criterion, each printed as a single
//! PASS/FAIL line. Deterministic: every input comes from fixed seeds.

use std::collections::{BTreeSet, VecDeque};
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use raag_core::chordal::{chordality_indices, is_induced_cycle};
use raag_core::verify::{
    planted_cycle, random_character, random_chordal, random_primitive_character,
};
use raag_core::{
    clique_tree_splitting, cross_check, cyclic_cover_truncation, dual_splitting, euler_check,
    euler_raag, free_product_splitting, is_fibered, l2_euler_kernel, l2_polytope, q, q_ratio,
    reduced_betti, splitting_complexity, thurston_norm, Character, FlagComplex, SplitMix64, Q,
};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: false,
        detail: detail.into(),
    }
}

// Components of L minus one vertex, by plain BFS over the adjacency lists.
fn oracle_cut_rank(l: &FlagComplex, removed: usize) -> usize {
    let n = l.vertex_count();
    let mut seen = vec![false; n];
    seen[removed] = true;
    let mut comps = 0usize;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        comps += 1;
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in l.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    comps.saturating_sub(1)
}

fn oracle_norm(l: &FlagComplex, phi: &Character) -> Q {
    (0..l.vertex_count())
        .map(|v| q(oracle_cut_rank(l, v) as i64) * phi.get(l.name(v)).unwrap().abs())
        .sum()
}

// Chordal iff simplicial vertices can be peeled off until nothing is left.
fn oracle_chordal(l: &FlagComplex) -> bool {
    let mut alive: BTreeSet<usize> = (0..l.vertex_count()).collect();
    while !alive.is_empty() {
        let simplicial = alive.iter().copied().find(|&v| {
            let nb: Vec<usize> = l
                .neighbors(v)
                .iter()
                .copied()
                .filter(|w| alive.contains(w))
                .collect();
            nb.iter()
                .enumerate()
                .all(|(i, &x)| nb[i + 1..].iter().all(|&y| l.adjacent(x, y)))
        });
        match simplicial {
            Some(v) => {
                alive.remove(&v);
            }
            None => return false,
        }
    }
    true
}

fn oracle_peo(l: &FlagComplex, order: &[usize]) -> bool {
    let mut pos = vec![None; l.vertex_count()];
    for (i, &v) in order.iter().enumerate() {
        if v >= pos.len() || pos[v].is_some() {
            return false;
        }
        pos[v] = Some(i);
    }
    if pos.iter().any(Option::is_none) {
        return false;
    }
    order.iter().all(|&v| {
        let later: Vec<usize> = l
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| pos[w] > pos[v])
            .collect();
        later
            .iter()
            .enumerate()
            .all(|(i, &x)| later[i + 1..].iter().all(|&y| l.adjacent(x, y)))
    })
}

fn oracle_induced_cycle(l: &FlagComplex, cycle: &[usize]) -> bool {
    let k = cycle.len();
    let distinct: BTreeSet<usize> = cycle.iter().copied().collect();
    k >= 4
        && distinct.len() == k
        && (0..k).all(|i| {
            (0..k).filter(|&j| j != i).all(|j| {
                let gap = (i as i64 - j as i64).rem_euclid(k as i64);
                l.adjacent(cycle[i], cycle[j]) == (gap == 1 || gap == k as i64 - 1)
            })
        })
}

fn sample_complex(rng: &mut SplitMix64, lo: usize, hi: usize) -> FlagComplex {
    let n = lo + rng.below((hi - lo + 1) as u64) as usize;
    random_chordal(n, rng.next_u64()).unwrap()
}

fn main_equality() -> Outcome {
    let start = Instant::now();
    let mut rng = SplitMix64::new(0x5eed_0001);
    for i in 0..500 {
        let l = sample_complex(&mut rng, 2, 25);
        let phi = random_primitive_character(&l, &mut rng);
        let report = match cross_check(&l, &phi) {
            Ok(r) => r,
            Err(e) => return fail(format!("pair {i}: {e}")),
        };
        let v = &report.values;
        let oracle = Some(oracle_norm(&l, &phi));
        if report.equal != Some(true) || v.thickness != oracle {
            return fail(format!("pair {i}: {}", report.to_json()));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(60) {
        return fail(format!("500 pairs took {elapsed:?}"));
    }
    pass(format!("500 pairs equal in {:.2?}", elapsed))
}

fn reference_examples() -> Outcome {
    let t = FlagComplex::new(
        &["v1", "v2", "w1", "w2"],
        &[
            ("v1", "v2"),
            ("v1", "w1"),
            ("v2", "w1"),
            ("v1", "w2"),
            ("v2", "w2"),
        ],
    )
    .unwrap();
    if !l2_polytope(&t).unwrap().is_neutral() {
        return fail("two-triangles polytope not trivial");
    }
    let mut rng = SplitMix64::new(0x5eed_0002);
    for _ in 0..200 {
        let phi = random_character(&t, &mut rng);
        if !thurston_norm(&t, &phi).unwrap().is_zero() {
            return fail(format!("nonzero norm at {}", phi.to_json()));
        }
    }
    let listed: [[i64; 4]; 6] = [
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [0, 0, 0, 1],
        [0, 0, 1, 1],
        [1, -1, 2, 0],
    ];
    for values in listed {
        let phi = Character::from_ints(&t, &values).unwrap();
        let expected = values[0] != 0 || values[1] != 0;
        if is_fibered(&t, &phi).unwrap().fibered != expected {
            return fail(format!("fibering verdict wrong at {values:?}"));
        }
        let chi = l2_euler_kernel(&t, &phi.primitive_part().unwrap().0).unwrap();
        if expected && !chi.is_zero() {
            return fail(format!("fibered kernel with χ² = {chi}"));
        }
    }
    for n in 2..=8 {
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let k = FlagComplex::simplex(&names).unwrap();
        if !l2_polytope(&k).unwrap().is_neutral() {
            return fail(format!("K_{n} polytope not trivial"));
        }
    }
    pass("two-triangles trivial, fibering on 6 characters, K_2..K_8 trivial")
}

fn negative_control() -> Outcome {
    let l = FlagComplex::edgeless(&["a", "b"]).unwrap();
    for values in [[1, 0], [0, 1], [1, 1], [2, -3]] {
        let phi = Character::from_ints(&l, &values).unwrap();
        match cross_check(&l, &phi) {
            Ok(r) if !r.applicable && r.equal.is_none() && r.values.thickness.is_none() => {}
            other => return fail(format!("{values:?}: {other:?}")),
        }
    }
    pass("free group on two generators reported not applicable")
}

fn contractibility_and_cut_rank() -> Outcome {
    let mut rng = SplitMix64::new(0x5eed_0004);
    for i in 0..200 {
        let l = sample_complex(&mut rng, 2, 25);
        let betti = reduced_betti(&l).unwrap();
        if !betti.is_zero() {
            return fail(format!("complex {i}: nonzero reduced homology"));
        }
        for v in 0..l.vertex_count() {
            let rank = l.cut_rank_index(v).unwrap();
            let b0 = reduced_betti(&l.link_indices(v)).unwrap().get(0);
            if rank != b0 || rank != oracle_cut_rank(&l, v) {
                return fail(format!(
                    "complex {i}, vertex {}: cut {rank}, b̄₀ {b0}",
                    l.name(v)
                ));
            }
        }
    }
    pass("200 complexes acyclic, cut rank = b̄₀(link)")
}

fn multiplicativity() -> Outcome {
    let mut rng = SplitMix64::new(0x5eed_0005);
    for i in 0..100 {
        let l = sample_complex(&mut rng, 2, 25);
        let phi = random_character(&l, &mut rng);
        let c = splitting_complexity(&dual_splitting(&l, &phi).unwrap().0).unwrap();
        let t = thurston_norm(&l, &phi).unwrap();
        for k in [-3i64, -2, -1, 1, 2, 3] {
            let scaled = phi.scale(&q(k));
            let ck = splitting_complexity(&dual_splitting(&l, &scaled).unwrap().0).unwrap();
            let tk = thurston_norm(&l, &scaled).unwrap();
            if ck != &c * q(k.abs()) || tk != &t * q(k.abs()) {
                return fail(format!(
                    "sample {i}, k = {k}: complexity {ck}, thickness {tk}"
                ));
            }
        }
    }
    pass("100 samples, k in ±1..3")
}

fn connected_by_lifts(level: usize, edges: &[(i64, i64, usize)]) -> bool {
    let k = level as i64;
    let size = (2 * k + 1) as usize;
    let mut parent: Vec<usize> = (0..size).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(i, j, _) in edges {
        let (a, b) = (
            root(&mut parent, (i + k) as usize),
            root(&mut parent, (j + k) as usize),
        );
        parent[a] = b;
    }
    let r = root(&mut parent, 0);
    (0..size).all(|x| root(&mut parent, x) == r)
}

fn cover_truncation() -> Outcome {
    let mut rng = SplitMix64::new(0x5eed_0006);
    for i in 0..50 {
        let l = sample_complex(&mut rng, 2, 25);
        let phi = random_primitive_character(&l, &mut rng);
        let (g, _) = dual_splitting(&l, &phi).unwrap();
        let steps: Vec<i64> = (0..g.edges.len())
            .map(|e| i64::try_from(g.stable_letters[&e].abs().to_integer()).unwrap())
            .collect();
        let max_step = *steps.iter().max().unwrap();
        for level in 0..=50usize {
            let t = match cyclic_cover_truncation(&g, level) {
                Ok(t) => t,
                Err(e) => return fail(format!("splitting {i}, k = {level}: {e}")),
            };
            let k = level as i64;
            for (e, &s) in steps.iter().enumerate() {
                let expected = (2 * k + 1 - s).max(0) as usize;
                let present = t.edges.iter().filter(|x| x.2 == e).count();
                if t.lifts[e] != expected || present != expected {
                    return fail(format!(
                        "splitting {i}, k = {level}, edge {e}: {} lifts",
                        t.lifts[e]
                    ));
                }
            }
            let connected = connected_by_lifts(level, &t.edges);
            if connected != t.connected || (k >= max_step && !connected) {
                return fail(format!(
                    "splitting {i}, k = {level}: connectivity {connected}"
                ));
            }
        }
    }
    pass("50 splittings, k in 0..=50")
}

fn seminorm() -> Outcome {
    let mut rng = SplitMix64::new(0x5eed_0007);
    let complexes = 10;
    for c in 0..complexes {
        let l = sample_complex(&mut rng, 2, 25);
        for i in 0..500 {
            let phi = random_character(&l, &mut rng).scale(&q_ratio(1, rng.range(1, 4)));
            let psi = random_character(&l, &mut rng);
            let a = thurston_norm(&l, &phi).unwrap();
            let b = thurston_norm(&l, &psi).unwrap();
            let s = thurston_norm(&l, &phi.add(&psi).unwrap()).unwrap();
            let r = q_ratio(rng.range(-9, 9), rng.range(1, 7));
            let h = thurston_norm(&l, &phi.scale(&r)).unwrap();
            if s > &a + &b || h != r.abs() * &a || a.is_negative() {
                return fail(format!("complex {c}, pair {i}"));
            }
        }
    }
    pass(format!("{complexes} complexes × 500 pairs"))
}

fn euler_bookkeeping() -> Outcome {
    let mut rng = SplitMix64::new(0x5eed_0008);
    let mut count = 0;
    let mut check = |what: &str, got: Q, want: i64| -> Option<Outcome> {
        count += 1;
        (got != q(want)).then(|| fail(format!("{what}: {got} vs {want}")))
    };
    for i in 0..100 {
        let l = sample_complex(&mut rng, 1, 25);
        let chi = euler_raag(&l).unwrap();
        let phi = random_character(&l, &mut rng);
        let tree = euler_check(&clique_tree_splitting(&l).unwrap());
        let dual = euler_check(&dual_splitting(&l, &phi).unwrap().0);
        let wrap = euler_check(&free_product_splitting(&l).unwrap());
        for (what, got) in [
            ("clique tree", tree),
            ("dual", dual),
            ("free product", wrap),
        ] {
            if let Some(f) = check(&format!("{what} {i}"), got, chi) {
                return f;
            }
        }
    }
    // Disjoint unions exercise the hub of the dual splitting.
    for i in 0..30 {
        let a = sample_complex(&mut rng, 1, 8);
        let b = sample_complex(&mut rng, 1, 8);
        let names: Vec<String> = a
            .names()
            .iter()
            .map(|n| format!("a{n}"))
            .chain(b.names().iter().map(|n| format!("b{n}")))
            .collect();
        let edges: Vec<(String, String)> = a
            .edges()
            .into_iter()
            .map(|(u, v)| (format!("a{}", a.name(u)), format!("a{}", a.name(v))))
            .chain(
                b.edges()
                    .into_iter()
                    .map(|(u, v)| (format!("b{}", b.name(u)), format!("b{}", b.name(v)))),
            )
            .collect();
        let l = FlagComplex::new(&names, &edges).unwrap();
        let chi = euler_raag(&l).unwrap();
        let phi = random_character(&l, &mut rng);
        let dual = euler_check(&dual_splitting(&l, &phi).unwrap().0);
        let wrap = euler_check(&free_product_splitting(&l).unwrap());
        for (what, got) in [("disjoint dual", dual), ("disjoint free product", wrap)] {
            if let Some(f) = check(&format!("{what} {i}"), got, chi) {
                return f;
            }
        }
    }
    pass(format!("{count} splittings"))
}

fn chordality_soundness() -> Outcome {
    let mut rng = SplitMix64::new(0x5eed_0009);
    for i in 0..100 {
        let l = sample_complex(&mut rng, 1, 25);
        match chordality_indices(&l) {
            Ok(peo) if oracle_chordal(&l) && oracle_peo(&l, &peo) => {}
            other => return fail(format!("chordal sample {i}: {other:?}")),
        }
    }
    for i in 0..100 {
        let base = 1 + rng.below(15) as usize;
        let len = 4 + rng.below(5) as usize;
        let l = planted_cycle(base, len, rng.next_u64()).unwrap();
        match chordality_indices(&l) {
            Err(cycle)
                if !oracle_chordal(&l)
                    && oracle_induced_cycle(&l, &cycle)
                    && is_induced_cycle(&l, &cycle) => {}
            other => return fail(format!("planted sample {i}: {other:?}")),
        }
    }
    pass("100 chordal + 100 planted-cycle graphs")
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("three-way equality", main_equality),
        ("reference examples", reference_examples),
        ("negative control", negative_control),
        ("contractibility and cut rank", contractibility_and_cut_rank),
        ("multiplicativity", multiplicativity),
        ("cover truncation", cover_truncation),
        ("semi-norm axioms", seminorm),
        ("Euler bookkeeping", euler_bookkeeping),
        ("chordality soundness", chordality_soundness),
    ];
    let mut failures = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        let tag = if outcome.ok { "PASS" } else { "FAIL" };
        println!("criterion {}: {tag} {name} ({})", i + 1, outcome.detail);
        if !outcome.ok {
            failures.push(i + 1);
        }
    }
    if !failures.is_empty() {
        eprintln!("failed criteria: {failures:?}");
        std::process::exit(1);
    }
}
