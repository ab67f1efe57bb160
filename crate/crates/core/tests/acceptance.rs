//! Acceptance suite. Runs every criterion, prints one line per criterion and
//! exits non-zero if any fails. Built without the test harness so the lines
//! always reach the output.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use planedraw::augment::triangulate;
use planedraw::io::generate::{cycle, delete_edges, k4, octahedron, random_triangulation, stacked, star, wheel};
use planedraw::io::parse_document;
use planedraw::layout::{draw_with, LayoutOptions};
use planedraw::reduce::{contract, reduce_observed, select_edge_footnote, separating_triangles, Strategy};
use planedraw::{verify, Error, ExactDrawing, PlaneGraph, VertexId, Violation};
use num_rational::BigRational;
use rand::{RngExt, SeedableRng};
use rand_pcg::Pcg64;

/// Size and seed of criterion 1's corpus.
const CORPUS_SIZE: usize = 500;
const CORPUS_SEED: u64 = 0x5eed_0001;
const MIN_N: usize = 4;
const MAX_N: usize = 60;
/// Wall-clock budget for criterion 1 (both strategies), in seconds.
const CORPUS_BUDGET_SECS: f64 = 300.0;
const DELETED_FRACTION: f64 = 0.3;
const DELETION_INSTANCES: usize = 100;
const FAMILY_MAX_N: usize = 40;
const CONTRACTIONS: usize = 1000;
const ORACLE_MAX_N: usize = 12;
const ORACLE_SEEDS: u64 = 60;
const HALVING_BUDGET: u32 = 64;
const FLOAT_TOLERANCE: f64 = 1e-9;
const FLOAT_INSTANCES: usize = 200;
const FLOAT_MAX_N: usize = 20;
const FLOAT_MIN_PASS_RATE: f64 = 0.95;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn corpus() -> Vec<PlaneGraph> {
    let mut rng = Pcg64::seed_from_u64(CORPUS_SEED);
    (0..CORPUS_SIZE)
        .map(|i| {
            let n = rng.random_range(MIN_N..=MAX_N);
            random_triangulation(n, 10_000 + i as u64).expect("corpus instance")
        })
        .collect()
}

fn exact_options() -> LayoutOptions {
    LayoutOptions {
        verify_each_split: false,
        final_verify: false,
        max_halvings: HALVING_BUDGET,
        ..LayoutOptions::exact()
    }
}

fn draws_and_verifies(g: &PlaneGraph, strategy: Strategy) -> Result<Vec<u32>, String> {
    let out = draw_with::<BigRational>(g, strategy, &exact_options()).map_err(|e| e.to_string())?;
    let report = verify(g, &out.drawing).map_err(|e| e.to_string())?;
    if report.passed {
        Ok(out.halvings)
    } else {
        Err(format!("{} violation(s), first {:?}", report.violations.len(), report.violations[0]))
    }
}

/// Criteria 1 and 8 share the corpus and the drawings.
fn universal_drawing(corpus: &[PlaneGraph]) -> (Outcome, Outcome) {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut histogram: BTreeMap<u32, usize> = BTreeMap::new();
    let mut exhausted = 0;
    for (i, g) in corpus.iter().enumerate() {
        for strategy in Strategy::ALL {
            match draws_and_verifies(g, strategy) {
                Ok(halvings) => {
                    for h in halvings {
                        *histogram.entry(h).or_default() += 1;
                    }
                }
                Err(e) => {
                    if e.contains("halvings") {
                        exhausted += 1;
                    }
                    failures.push(format!("#{i} n={} {strategy}: {e}", g.vertex_count()));
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let first = failures.first().cloned().unwrap_or_default();
    let c1 = outcome(
        failures.is_empty() && secs < CORPUS_BUDGET_SECS,
        format!(
            "{} drawings, {} failures, {secs:.1}s (budget {CORPUS_BUDGET_SECS}s) {first}",
            2 * corpus.len(),
            failures.len()
        ),
    );
    let max = histogram.keys().max().copied().unwrap_or(0);
    let splits: usize = histogram.values().sum();
    let hist: Vec<String> = histogram.iter().map(|(h, c)| format!("{h}:{c}")).collect();
    let c8 = outcome(
        exhausted == 0 && max <= HALVING_BUDGET,
        format!(
            "{splits} splits, max {max} of {HALVING_BUDGET} halvings, exhausted {exhausted}; histogram {{{}}}",
            hist.join(", ")
        ),
    );
    (c1, c8)
}

fn general_graphs() -> Outcome {
    let mut instances: Vec<(String, PlaneGraph)> = Vec::new();
    for n in 3..=FAMILY_MAX_N {
        instances.push((format!("cycle({n})"), cycle(n).unwrap()));
    }
    for n in 4..=FAMILY_MAX_N {
        instances.push((format!("wheel({n})"), wheel(n).unwrap()));
    }
    for n in 2..=FAMILY_MAX_N {
        instances.push((format!("star({n})"), star(n).unwrap()));
    }
    let mut rng = Pcg64::seed_from_u64(CORPUS_SEED + 2);
    for i in 0..DELETION_INSTANCES {
        let n = rng.random_range(MIN_N..=MAX_N);
        let g = random_triangulation(n, 20_000 + i as u64).unwrap();
        let h = delete_edges(&g, DELETED_FRACTION, 30_000 + i as u64).unwrap();
        instances.push((format!("random({n}) minus {}", g.edge_count() - h.edge_count()), h));
    }
    let mut failures = Vec::new();
    for (name, g) in &instances {
        for strategy in Strategy::ALL {
            if let Err(e) = draws_and_verifies(g, strategy) {
                failures.push(format!("{name} {strategy}: {e}"));
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{} instances x 2 strategies, {} failures {}",
            instances.len(),
            failures.len(),
            failures.first().cloned().unwrap_or_default()
        ),
    )
}

fn same_cycle(a: &[VertexId], b: &[VertexId]) -> bool {
    a.len() == b.len()
        && (a.is_empty() || (0..b.len()).any(|s| a.iter().zip(b.iter().cycle().skip(s)).all(|(x, y)| x == y)))
}

/// `rot` rotated to start at `first`.
fn starting_at(rot: &[VertexId], first: VertexId) -> Vec<VertexId> {
    let i = rot.iter().position(|&u| u == first).expect("neighbour");
    rot[i..].iter().chain(&rot[..i]).copied().collect()
}

/// Merged rotation read directly off the input rotations: around `v` the
/// order is `w, q, x.., p`; around `w` it is `v, p, y.., q`.
fn merged_oracle(g: &PlaneGraph, v: VertexId, w: VertexId) -> Option<Vec<VertexId>> {
    let around_v = starting_at(g.rotation(v), w);
    let around_w = starting_at(g.rotation(w), v);
    let (q, p) = (around_v[1], *around_v.last()?);
    if around_w[1] != p || *around_w.last()? != q {
        return None;
    }
    let mut merged = vec![p];
    merged.extend(&around_w[2..around_w.len() - 1]);
    merged.push(q);
    merged.extend(&around_v[2..around_v.len() - 1]);
    Some(merged)
}

fn contraction_fidelity(corpus: &[PlaneGraph]) -> Outcome {
    let mut rng = Pcg64::seed_from_u64(CORPUS_SEED + 3);
    let mut mismatches = Vec::new();
    let mut done = 0;
    let mut attempt = 0u64;
    while done < CONTRACTIONS {
        attempt += 1;
        let n = rng.random_range(MIN_N..=MAX_N);
        let g = random_triangulation(n, 40_000 + attempt).unwrap();
        let candidates: Vec<_> = g
            .edges()
            .into_iter()
            .filter(|&(u, v)| !g.is_outer_edge(u, v) && g.common_neighbours(u, v).unwrap().len() == 2)
            .collect();
        if candidates.is_empty() {
            continue;
        }
        let (a, b) = candidates[rng.random_range(0..candidates.len())];
        let (v, w) = if rng.random_bool(0.5) { (a, b) } else { (b, a) };
        done += 1;
        let expected = merged_oracle(&g, v, w);
        match (contract(&g, v, w), expected) {
            (Ok((h, record)), Some(expected)) => {
                if !same_cycle(h.rotation(v), &expected) || record.merged_rotation() != expected {
                    mismatches.push(format!("{v}-{w} in random({n})"));
                }
            }
            (result, expected) => mismatches.push(format!("{v}-{w}: {:?} / {expected:?}", result.err())),
        }
    }
    let mut replay_failures = 0;
    let mut replays = 0;
    for g in corpus {
        for strategy in Strategy::ALL {
            let seq = reduce_observed(g, strategy, |_| {}).unwrap();
            replays += 1;
            match seq.replay() {
                Ok(graphs) if graphs.last() == Some(g) => {}
                _ => replay_failures += 1,
            }
        }
    }
    outcome(
        mismatches.is_empty() && replay_failures == 0,
        format!(
            "{done} contractions, {} formula mismatches; {replays} replays, {replay_failures} not equal to input {}",
            mismatches.len(),
            mismatches.first().cloned().unwrap_or_default()
        ),
    )
}

/// Components of `g` minus `removed`.
fn components_without(g: &PlaneGraph, removed: &[VertexId]) -> Vec<BTreeSet<VertexId>> {
    let mut seen: BTreeSet<VertexId> = removed.iter().copied().collect();
    let mut parts = Vec::new();
    for v in g.vertices() {
        if seen.contains(&v) {
            continue;
        }
        let mut part = BTreeSet::from([v]);
        seen.insert(v);
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            for &x in g.rotation(u) {
                if seen.insert(x) {
                    part.insert(x);
                    queue.push_back(x);
                }
            }
        }
        parts.push(part);
    }
    parts
}

/// Every vertex triple that forms a 3-cycle, is not a face, and splits the
/// rest of the graph; its interior is everything not connected to the outer face.
fn brute_force(g: &PlaneGraph) -> Vec<([VertexId; 3], BTreeSet<VertexId>)> {
    let faces: BTreeSet<BTreeSet<VertexId>> = g.faces().iter().map(|f| f.vertices().into_iter().collect()).collect();
    let outer: BTreeSet<VertexId> = g.outer_face().iter().map(|d| d.tail).collect();
    let vs: Vec<VertexId> = g.vertices().collect();
    let mut found = Vec::new();
    for (i, &a) in vs.iter().enumerate() {
        for (j, &b) in vs.iter().enumerate().skip(i + 1) {
            for &c in &vs[j + 1..] {
                if !(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) {
                    continue;
                }
                if faces.contains(&BTreeSet::from([a, b, c])) {
                    continue;
                }
                let parts = components_without(g, &[a, b, c]);
                if parts.len() < 2 {
                    continue;
                }
                let interior: BTreeSet<VertexId> = parts
                    .into_iter()
                    .filter(|p| p.is_disjoint(&outer))
                    .flatten()
                    .collect();
                if !interior.is_empty() {
                    found.push(([a, b, c], interior));
                }
            }
        }
    }
    found
}

fn small_triangulations() -> Vec<PlaneGraph> {
    let mut graphs = vec![k4(), octahedron()];
    for depth in 0..=ORACLE_MAX_N - 4 {
        graphs.push(stacked(depth).unwrap());
    }
    for n in MIN_N..=ORACLE_MAX_N {
        for seed in 0..ORACLE_SEEDS {
            graphs.push(random_triangulation(n, 50_000 + seed).unwrap());
        }
        graphs.push(triangulate(&cycle(n).unwrap()).unwrap().triangulated);
        graphs.push(triangulate(&wheel(n).unwrap()).unwrap().triangulated);
        graphs.push(triangulate(&star(n).unwrap()).unwrap().triangulated);
    }
    graphs
}

fn oracle_equivalence() -> Outcome {
    let graphs = small_triangulations();
    let mut mismatches = 0;
    let mut triangles = 0;
    for g in &graphs {
        let fast: Vec<_> = separating_triangles(g).unwrap().into_iter().map(|t| (t.cycle, t.interior)).collect();
        let slow = brute_force(g);
        triangles += slow.len();
        if fast != slow {
            mismatches += 1;
        }
    }
    outcome(
        mismatches == 0,
        format!("{} instances with n <= {ORACLE_MAX_N}, {triangles} separating triangles, {mismatches} mismatches", graphs.len()),
    )
}

/// Criteria 5 and 6 over every reduction of the corpus and the small instances.
fn footnote_and_euler(corpus: &[PlaneGraph]) -> (Outcome, Outcome) {
    let small = small_triangulations();
    let mut checked = 0;
    let mut footnote_errors = Vec::new();
    let mut intermediates = 0;
    let mut euler_failures = 0;
    for g in corpus.iter().chain(&small) {
        for strategy in Strategy::ALL {
            let mut graphs = Vec::new();
            let result = reduce_observed(g, strategy, |h| graphs.push(h.clone()));
            if result.is_err() {
                euler_failures += 1;
            }
            for h in &graphs {
                intermediates += 1;
                if !(h.is_triangulation() && h.edge_count() == 3 * h.vertex_count() - 6) {
                    euler_failures += 1;
                }
                if h.vertex_count() >= 4 {
                    checked += 1;
                    if let Err(e) = select_edge_footnote(h) {
                        footnote_errors.push(e);
                    }
                }
            }
        }
    }
    let c5 = outcome(
        footnote_errors.is_empty(),
        format!("{checked} triangulations with n >= 4, {} without a qualifying edge", footnote_errors.len()),
    );
    let c6 = outcome(
        euler_failures == 0,
        format!("{intermediates} graphs across all reductions, {euler_failures} failures"),
    );
    (c5, c6)
}

fn fixture(name: &str) -> (PlaneGraph, ExactDrawing) {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    let doc = parse_document(&std::fs::read_to_string(&path).unwrap()).unwrap();
    (doc.graph, doc.drawing.expect("fixture has coordinates"))
}

fn verifier_self_test() -> Outcome {
    let mut notes = Vec::new();
    let (bowtie, d) = fixture("bowtie.pg");
    let report = verify(&bowtie, &d).unwrap();
    let bowtie_ok = report.violations.len() == 1 && matches!(report.violations[0], Violation::Crossing { .. });
    notes.push(format!("bowtie {} violation(s)", report.violations.len()));

    let (k4g, d) = fixture("k4.pg");
    let mut rot = k4g.rotations().clone();
    rot.get_mut(&3).unwrap().reverse();
    let reversed = PlaneGraph::from_rotation_map_any_genus(rot, k4g.outer_dart()).unwrap();
    let report = verify(&reversed, &d).unwrap();
    let reversed_ok =
        report.violations.len() == 1 && matches!(report.violations[0], Violation::RotationMismatch { vertex: 3, .. });
    notes.push(format!("reversed k4 {} violation(s)", report.violations.len()));

    let mut valid_ok = true;
    for name in ["triangle.pg", "k4.pg", "k4-thirds.pg", "octahedron.pg"] {
        let (g, d) = fixture(name);
        let passed = verify(&g, &d).unwrap().passed;
        valid_ok &= passed;
        notes.push(format!("{name} {}", if passed { "passes" } else { "FAILS" }));
    }
    outcome(bowtie_ok && reversed_ok && valid_ok, notes.join(", "))
}

fn kernel_agreement() -> Outcome {
    let mut rng = Pcg64::seed_from_u64(CORPUS_SEED + 9);
    let float_options = LayoutOptions {
        final_verify: false,
        verify_each_split: false,
        max_halvings: HALVING_BUDGET,
        ..LayoutOptions::floating(FLOAT_TOLERANCE)
    };
    let mut passes = 0;
    let mut failures = 0;
    let mut rerun_failures = 0;
    for i in 0..FLOAT_INSTANCES {
        let n = rng.random_range(MIN_N..=FLOAT_MAX_N);
        let g = random_triangulation(n, 60_000 + i as u64).unwrap();
        let strategy = Strategy::ALL[i % 2];
        let passed = match draw_with::<f64>(&g, strategy, &float_options) {
            Ok(out) => verify(&g, &out.drawing).map(|r| r.passed).unwrap_or(false),
            Err(Error::Kernel(_) | Error::Degenerate(_)) => false,
            Err(e) => panic!("float pipeline error on random({n}): {e}"),
        };
        if passed {
            passes += 1;
        } else {
            failures += 1;
            if draws_and_verifies(&g, strategy).is_err() {
                rerun_failures += 1;
            }
        }
    }
    let rate = passes as f64 / FLOAT_INSTANCES as f64;
    outcome(
        rate >= FLOAT_MIN_PASS_RATE && rerun_failures == 0,
        format!(
            "{passes}/{FLOAT_INSTANCES} pass at tolerance {FLOAT_TOLERANCE:e} (rate {rate:.3}, need {FLOAT_MIN_PASS_RATE}); {failures} failures re-run exact, {rerun_failures} still fail"
        ),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let corpus = corpus();
    let (c1, c8) = universal_drawing(&corpus);
    let (c5, c6) = footnote_and_euler(&corpus);
    let results = [
        ("1 universal drawing property", c1),
        ("2 general plane graphs", general_graphs()),
        ("3 contraction formula fidelity", contraction_fidelity(&corpus)),
        ("4 separating-triangle oracle", oracle_equivalence()),
        ("5 footnote guarantee", c5),
        ("6 euler/structure", c6),
        ("7 verifier self-test", verifier_self_test()),
        ("8 epsilon-search robustness", c8),
        ("9 kernel agreement", kernel_agreement()),
    ];
    let mut all = true;
    for (name, o) in &results {
        all &= o.passed;
        println!("[{}] criterion {name}: {}", if o.passed { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {} in {:.1}s", if all { "all criteria pass" } else { "FAILED" }, start.elapsed().as_secs_f64());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
