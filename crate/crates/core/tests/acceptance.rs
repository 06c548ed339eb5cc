//! End-to-end acceptance run: one line per criterion, non-zero exit if any
//! criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quartic_tp::certificate::Base;
use quartic_tp::cli;
use quartic_tp::enumerate::{
    enumerate_cubic_multigraphs, enumerate_quartic_tp, random_op_walk, structure_theorem_codes, BaseChooser,
};
use quartic_tp::families::{
    five_vertex_exception, line_multigraph, squared_cycle, triple_edge, vertex_stars, NamedBlock,
};
use quartic_tp::operations::{apply, find_sites, is_eligible_triangle, Direction, OpKind, OpStep};
use quartic_tp::recognize::{classify, classify_simple, contains_k113, has_triangle_property, neighborhood_criterion};
use quartic_tp::Multigraph;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn corpus() -> Vec<Multigraph> {
    enumerate_quartic_tp(8).expect("within bound").graphs()
}

fn random_multigraph(rng: &mut ChaCha8Rng) -> Multigraph {
    let n = rng.gen_range(1..=8);
    let density = rng.gen_range(0.1..0.9);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v, rng.gen_range(1..=4u8)));
            }
        }
    }
    Multigraph::from_edges(n, edges).expect("multiplicities within range")
}

fn lemma_equivalence(corpus: &[Multigraph]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let randoms: Vec<Multigraph> = (0..1000).map(|_| random_multigraph(&mut rng)).collect();
    let with_tp = randoms.iter().filter(|g| has_triangle_property(g)).count();
    let bad = corpus
        .iter()
        .chain(&randoms)
        .filter(|g| has_triangle_property(g) != neighborhood_criterion(g))
        .count();
    let total = corpus.len() + randoms.len();
    let detail = format!("{total} graphs ({with_tp} random ones with the property), {bad} disagreements");
    if bad == 0 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn closure_suite(corpus: &[Multigraph]) -> Outcome {
    let expected = [3isize, 2, 1, 1, -2];
    let mut applied = 0;
    let mut refused = 0;
    let mut problems = Vec::new();
    for g in corpus {
        for kind in OpKind::ALL {
            for dir in [Direction::Forward, Direction::Reverse] {
                for step in find_sites(g, kind, dir) {
                    let out = match apply(g, &step) {
                        Ok(out) => out,
                        Err(e) => {
                            // Operation 4 sites whose attachments share a single
                            // edge are listed and then refused.
                            if kind == OpKind::Four && dir == Direction::Forward {
                                refused += 1;
                            } else {
                                problems.push(format!("{step} on {}: {e}", g.canonical_code().unwrap()));
                            }
                            continue;
                        }
                    };
                    applied += 1;
                    let h = &out.graph;
                    let mut delta = expected[kind.number() as usize - 1];
                    if dir == Direction::Reverse {
                        delta = -delta;
                    }
                    if h.n() as isize - g.n() as isize != delta {
                        problems.push(format!("{step}: vertex delta {}", h.n() as isize - g.n() as isize));
                    }
                    if !h.is_connected() || !h.is_k_regular(4) || !h.has_triangle_property() {
                        problems.push(format!("{step} on {}: result leaves the class", g.canonical_code().unwrap()));
                    }
                }
            }
        }
    }
    let detail = format!("{applied} applications, {refused} refused single-edge sites, {} failures", problems.len());
    if problems.is_empty() {
        pass(detail)
    } else {
        fail(format!("{detail}; first: {}", problems[0]))
    }
}

fn structure_theorem(corpus: &[Multigraph]) -> Outcome {
    let found: BTreeSet<_> = corpus.iter().map(|g| g.canonical_code().unwrap()).collect();
    let described = structure_theorem_codes(8);
    let missing = found.difference(&described).count();
    let extra = described.difference(&found).count();
    let detail = format!("{} enumerated, {} described, {missing} missing, {extra} extra", found.len(), described.len());
    if missing == 0 && extra == 0 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn cli_verify(g: &Multigraph, cert: &str) -> i32 {
    let dir = tempfile::tempdir().expect("temporary directory");
    let path = dir.path().join("g.mg1");
    std::fs::write(&path, g.to_mg1()).expect("write graph");
    let args = ["quartic-tp", "verify", path.to_str().unwrap(), "-"];
    let mut stdin = cert.as_bytes();
    cli::run(args, &mut stdin, &mut Vec::new(), &mut Vec::new())
}

fn classifier_round_trip(corpus: &[Multigraph]) -> Outcome {
    let mut walks = Vec::new();
    let mut seed = 0u64;
    while walks.len() < 500 {
        let depth = (seed % 5) as usize;
        let w = random_op_walk(seed, depth, BaseChooser::Any).expect("depth within bound");
        if w.graph.n() <= 14 {
            walks.push(w.graph);
        }
        seed += 1;
    }
    let mut failures = Vec::new();
    for (label, g) in corpus.iter().map(|g| ("corpus", g)).chain(walks.iter().map(|g| ("walk", g))) {
        match classify(g) {
            Ok(cert) => {
                if cli_verify(g, &cert.to_string()) != 0 {
                    failures.push(format!("{label}: verify rejected certificate for {}", cert.input));
                }
            }
            Err(e) => failures.push(format!("{label}: {e}")),
        }
    }
    let detail = format!(
        "{} corpus graphs and {} walk outputs (from {seed} seeds), {} failures",
        corpus.len(),
        walks.len(),
        failures.len()
    );
    if failures.is_empty() {
        pass(detail)
    } else {
        fail(format!("{detail}; first: {}", failures[0]))
    }
}

fn small_graph_identities() -> Outcome {
    let c3 = squared_cycle(3).unwrap();
    let iso = |a: &Multigraph, b: &Multigraph| a.is_isomorphic(b).unwrap();
    let op = |g: &Multigraph, kind: OpKind| {
        let site = find_sites(g, kind, Direction::Forward).into_iter().next().expect("a site exists");
        apply(g, &site).unwrap().graph
    };
    let checks = [
        ("C3^2 = L(triple edge)", iso(&c3, &line_multigraph(&triple_edge()))),
        ("Op2(C3^2) = C5^2 = K5", {
            let g = op(&c3, OpKind::Two);
            iso(&g, &squared_cycle(5).unwrap()) && iso(&g, &quartic_tp::families::complete_graph(5))
        }),
        ("Op1(C3^2) = C6^2", iso(&op(&c3, OpKind::One), &squared_cycle(6).unwrap())),
        ("Op4(C4^2) = five-vertex", iso(&op(&squared_cycle(4).unwrap(), OpKind::Four), &five_vertex_exception())),
    ];
    let held = checks.iter().filter(|c| c.1).count();
    let detail = format!("{held}/4 identities hold");
    match checks.iter().find(|c| !c.1) {
        None => pass(detail),
        Some(c) => fail(format!("{detail}; failed: {}", c.0)),
    }
}

fn triangle_partition() -> Outcome {
    let cubics = enumerate_cubic_multigraphs(8).expect("within bound");
    let mut bad = 0;
    for m in &cubics {
        let l = line_multigraph(m);
        let mut covered = Multigraph::empty(l.n());
        let mut shape_ok = true;
        for star in vertex_stars(m) {
            if star.len() != 3 {
                shape_ok = false;
                continue;
            }
            for (a, b) in [(star[0], star[1]), (star[1], star[2]), (star[0], star[2])] {
                covered = covered.with_mult_delta(a, b, 1).expect("star pairs are distinct vertices");
            }
        }
        if !shape_ok || covered != l {
            bad += 1;
        }
    }
    let detail = format!("{} cubic multigraphs, {bad} without an exact partition", cubics.len());
    if bad == 0 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn eligibility_spot_checks() -> Outcome {
    let mut wrong = Vec::new();
    for n in [4, 7, 8, 9, 10, 11, 12] {
        let g = squared_cycle(n).unwrap();
        let eligible = g.triangles().iter().filter(|t| is_eligible_triangle(&g, t.vertices)).count();
        if eligible != 0 {
            wrong.push(format!("C{n}^2 has {eligible} eligible triangles"));
        }
    }
    if !is_eligible_triangle(&squared_cycle(3).unwrap(), [0, 1, 2]) {
        wrong.push("C3^2 triangle not eligible".into());
    }
    if wrong.is_empty() {
        pass("8/8 spot checks")
    } else {
        fail(wrong.join("; "))
    }
}

fn simple_normal_form_suite(corpus: &[Multigraph]) -> Outcome {
    let simple: Vec<&Multigraph> = corpus.iter().filter(|g| g.is_simple()).collect();
    let mut squared = 0;
    let mut line = 0;
    let mut failures = Vec::new();
    for g in &simple {
        let cert = match classify_simple(g) {
            Ok(c) => c,
            Err(e) => {
                failures.push(e.to_string());
                continue;
            }
        };
        let c = &cert.classification;
        let rebuilt = match c.replay() {
            Ok(r) => r,
            Err(e) => {
                failures.push(e.to_string());
                continue;
            }
        };
        let shape_ok = match &c.base {
            Base::SquaredCycle(n) => *n >= 5 && c.steps.is_empty(),
            Base::FromCubicLineMultigraph(_) => c.steps.iter().all(|s: &OpStep| s.kind == OpKind::Two),
            Base::FiveVertexException => false,
        };
        if matches!(c.base, Base::SquaredCycle(_)) {
            squared += 1;
        } else {
            line += 1;
        }
        if !shape_ok || !rebuilt.is_simple() || !rebuilt.is_isomorphic(g).unwrap() {
            failures.push(format!("{} -> {}", cert.input, c.summary()));
        }
    }
    let detail = format!(
        "{} simple graphs: {squared} squared cycles, {line} line-of-cubic with Operation 2 only, {} failures",
        simple.len(),
        failures.len()
    );
    if failures.is_empty() {
        pass(detail)
    } else {
        fail(format!("{detail}; first: {}", failures[0]))
    }
}

/// Two copies of a block glued at their attachment vertex 0.
fn glue(a: &Multigraph, b: &Multigraph) -> Multigraph {
    let mut g = a.with_new_vertices(b.n() - 1);
    for (u, v, k) in b.pairs() {
        let lift = |w: usize| if w == 0 { 0 } else { w + a.n() - 1 };
        g = g.with_mult_delta(lift(u), lift(v), k as i64).unwrap();
    }
    g
}

/// Counts, over K_{1,1,3}-free blocks of `g`, reverse Operation 1 sites
/// inside the block, and how many of them create a K_{1,1,3} there.
/// Returns `(sites, agreeing with the lemma, created)`.
fn fig8_check(g: &Multigraph) -> (usize, usize, usize) {
    let fig8: Vec<Multigraph> = [NamedBlock::Fig8Outer, NamedBlock::Fig8Inner].iter().map(|b| b.graph()).collect();
    let (mut sites, mut agree, mut created) = (0, 0, 0);
    for block in g.blocks() {
        let bg = g.induced(&block);
        if contains_k113(&bg) {
            continue;
        }
        let named = fig8.iter().any(|f| f.n() == bg.n() && f.is_isomorphic(&bg).unwrap());
        for step in find_sites(g, OpKind::One, Direction::Reverse) {
            if !step.site.iter().all(|v| block.contains(v)) {
                continue;
            }
            let Ok(out) = apply(g, &step) else { continue };
            let image: Vec<usize> = block.iter().filter_map(|&v| out.relabel.old_to_new[v]).collect();
            let makes = contains_k113(&out.graph.induced(&image));
            sites += 1;
            created += makes as usize;
            agree += (makes == named) as usize;
        }
    }
    (sites, agree, created)
}

fn fig8_lemma(corpus: &[Multigraph]) -> Outcome {
    let (mut sites, mut agree, mut created) = (0, 0, 0);
    for g in corpus {
        let (s, a, c) = fig8_check(g);
        sites += s;
        agree += a;
        created += c;
    }
    // The two blocks need ten or more vertices in a quartic host, so the
    // corpus alone never exercises the positive direction.
    let op5 = NamedBlock::Op5Left.graph();
    let mut hosts = Vec::new();
    for b in [NamedBlock::Fig8Outer, NamedBlock::Fig8Inner] {
        hosts.push(glue(&b.graph(), &op5));
        hosts.push(glue(&b.graph(), &b.graph()));
    }
    let (mut h_sites, mut h_agree, mut h_created) = (0, 0, 0);
    for g in &hosts {
        assert!(g.is_k_regular(4) && g.has_triangle_property());
        let (s, a, c) = fig8_check(g);
        h_sites += s;
        h_agree += a;
        h_created += c;
    }
    let detail = format!(
        "corpus: {sites} reverse sites in K113-free blocks, {created} create K113; \
         glued hosts: {h_sites} sites, {h_created} create K113; disagreements {}",
        sites - agree + h_sites - h_agree
    );
    if sites == agree && h_sites == h_agree && h_created > 0 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn main() {
    let corpus = corpus();
    type Criterion<'a> = (&'a str, Duration, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("lemma equivalence", Duration::from_secs(60), Box::new(|| lemma_equivalence(&corpus))),
        ("closure suite", Duration::from_secs(300), Box::new(|| closure_suite(&corpus))),
        ("structure theorem at desk scale", Duration::from_secs(600), Box::new(|| structure_theorem(&corpus))),
        ("classifier round-trip", Duration::from_secs(600), Box::new(|| classifier_round_trip(&corpus))),
        ("small-graph identities", Duration::from_secs(1), Box::new(small_graph_identities)),
        ("line multigraph triangle partition", Duration::from_secs(60), Box::new(triangle_partition)),
        ("eligible triangle spot checks", Duration::from_secs(1), Box::new(eligibility_spot_checks)),
        ("simple-graph normal form", Duration::from_secs(120), Box::new(|| simple_normal_form_suite(&corpus))),
        ("figure-8 block lemma", Duration::from_secs(120), Box::new(|| fig8_lemma(&corpus))),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let ok = outcome.ok && took <= *limit;
        failed += (!ok) as usize;
        println!(
            "criterion {}: {} {name}: {} [{:.2?}, limit {:?}]",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            outcome.detail,
            took,
            limit
        );
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
