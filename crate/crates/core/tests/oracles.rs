//! Independent brute-force oracles for the enumerator, canonical codes,
//! block decomposition and the cubic-root search.

use std::collections::BTreeMap;

use quartic_tp::enumerate::{enumerate_cubic_multigraphs, enumerate_quartic_tp};
use quartic_tp::families::{complete_graph, five_vertex_exception, line_multigraph, squared_cycle};
use quartic_tp::recognize::cubic_root;
use quartic_tp::Multigraph;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Smallest upper-triangle multiplicity vector over all relabelings.
fn brute_code(g: &Multigraph, perms: &[Vec<usize>]) -> Vec<u8> {
    let n = g.n();
    perms
        .iter()
        .map(|p| {
            let mut v = Vec::with_capacity(n * (n - 1) / 2);
            for i in 0..n {
                for j in i + 1..n {
                    v.push(g.mult(p[i], p[j]));
                }
            }
            v
        })
        .min()
        .unwrap()
}

fn connected(n: usize, m: &[Vec<u8>]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for v in 0..n {
            if m[u][v] > 0 && !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen.iter().all(|&s| s)
}

fn every_edge_in_triangle(n: usize, m: &[Vec<u8>]) -> bool {
    (0..n).all(|u| (0..n).all(|v| m[u][v] == 0 || (0..n).any(|w| m[u][w] > 0 && m[v][w] > 0)))
}

/// All labeled `k`-regular multigraphs on `n` vertices, pair by pair with
/// no symmetry breaking, multiplicities up to `cap`.
fn labeled_regular(n: usize, k: u8, cap: u8) -> Vec<Vec<Vec<u8>>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    let mut m = vec![vec![0u8; n]; n];
    let mut deg = vec![0u8; n];
    fn go(
        at: usize,
        pairs: &[(usize, usize)],
        k: u8,
        cap: u8,
        m: &mut Vec<Vec<u8>>,
        deg: &mut Vec<u8>,
        out: &mut Vec<Vec<Vec<u8>>>,
    ) {
        if at == pairs.len() {
            if deg.iter().all(|&d| d == k) {
                out.push(m.clone());
            }
            return;
        }
        let (i, j) = pairs[at];
        for c in 0..=cap {
            if deg[i] + c > k || deg[j] + c > k {
                break;
            }
            m[i][j] = c;
            m[j][i] = c;
            deg[i] += c;
            deg[j] += c;
            go(at + 1, pairs, k, cap, m, deg, out);
            deg[i] -= c;
            deg[j] -= c;
        }
        m[i][j] = 0;
        m[j][i] = 0;
    }
    go(0, &pairs, k, cap, &mut m, &mut deg, &mut out);
    out
}

fn to_graph(m: &[Vec<u8>]) -> Multigraph {
    let n = m.len();
    let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| m[i][j] > 0);
    Multigraph::from_edges(n, edges.map(|(i, j)| (i, j, m[i][j])).collect::<Vec<_>>()).unwrap()
}

#[test]
fn quartic_counts_match_unpruned_scan() {
    let report = enumerate_quartic_tp(6).unwrap();
    for n in 2..=6 {
        let perms = permutations(n);
        let mut classes = BTreeMap::new();
        for m in labeled_regular(n, 4, 4) {
            if connected(n, &m) && every_edge_in_triangle(n, &m) {
                let g = to_graph(&m);
                classes.entry(brute_code(&g, &perms)).or_insert(g);
            }
        }
        assert_eq!(report.count(n), classes.len(), "n = {n}");
        let ours: Vec<Vec<u8>> = report.classes[&n].iter().map(|c| brute_code(&c.graph().unwrap(), &perms)).collect();
        let mut ours_sorted = ours.clone();
        ours_sorted.sort();
        ours_sorted.dedup();
        assert_eq!(ours_sorted.len(), ours.len());
        assert!(ours.iter().all(|c| classes.contains_key(c)));
    }
    assert_eq!((2..=6).map(|n| report.count(n)).collect::<Vec<_>>(), [0, 1, 1, 3, 3]);
}

#[test]
fn named_graphs_are_distinct_classes_of_the_scan() {
    let report = enumerate_quartic_tp(6).unwrap();
    for g in [squared_cycle(3).unwrap(), complete_graph(5), five_vertex_exception(), squared_cycle(6).unwrap()] {
        assert!(report.classes[&g.n()].contains(&g.canonical_code().unwrap()));
    }
}

#[test]
fn cubic_counts_match_unpruned_scan() {
    let cubics = enumerate_cubic_multigraphs(6).unwrap();
    for n in [2, 4, 6] {
        let perms = permutations(n);
        let mut classes = BTreeMap::new();
        for m in labeled_regular(n, 3, 3) {
            if connected(n, &m) {
                classes.entry(brute_code(&to_graph(&m), &perms)).or_insert(());
            }
        }
        let ours = cubics.iter().filter(|g| g.n() == n).count();
        assert_eq!(ours, classes.len(), "n = {n}");
    }
}

#[test]
fn canonical_code_agrees_with_brute_force() {
    let mut graphs = Vec::new();
    for n in 3..=6 {
        for m in labeled_regular(n, 4, 3).into_iter().step_by(7) {
            graphs.push(to_graph(&m));
        }
    }
    let perms: Vec<Vec<Vec<usize>>> = (0..=6).map(permutations).collect();
    let brute: Vec<Vec<u8>> = graphs.iter().map(|g| brute_code(g, &perms[g.n()])).collect();
    for i in 0..graphs.len() {
        for j in i..graphs.len().min(i + 40) {
            let (a, b) = (&graphs[i], &graphs[j]);
            let same = a.n() == b.n() && brute[i] == brute[j];
            assert_eq!(a.canonical_code().unwrap() == b.canonical_code().unwrap(), same);
            assert_eq!(a.is_isomorphic(b).unwrap(), same);
        }
    }
}

fn cut_vertex(g: &Multigraph) -> bool {
    g.n() > 2 && (0..g.n()).any(|v| !g.without_vertices(&[v]).0.is_connected())
}

#[test]
fn blocks_match_definition() {
    let corpus = enumerate_quartic_tp(8).unwrap().graphs();
    let mut glued = Vec::new();
    for g in &corpus {
        // Two copies sharing vertex 0, and a bridge between two copies.
        let mut two = g.with_new_vertices(g.n() - 1);
        for (u, v, k) in g.pairs() {
            let lift = |w: usize| if w == 0 { 0 } else { w + g.n() - 1 };
            two = two.with_mult_delta(lift(u), lift(v), k as i64).unwrap();
        }
        glued.push(two);
        glued.push(g.disjoint_union(g).with_mult_delta(0, g.n(), 1).unwrap());
    }
    for g in corpus.iter().chain(&glued) {
        let blocks = g.blocks();
        for b in &blocks {
            let h = g.induced(b);
            assert!(h.is_connected() && !cut_vertex(&h));
        }
        for (u, v, _) in g.pairs() {
            let owners = blocks.iter().filter(|b| b.contains(&u) && b.contains(&v)).count();
            assert_eq!(owners, 1);
        }
        for i in 0..blocks.len() {
            for j in i + 1..blocks.len() {
                if blocks[i].iter().any(|v| blocks[j].contains(v)) {
                    let mut union = blocks[i].clone();
                    union.extend(blocks[j].iter().filter(|v| !blocks[i].contains(v)));
                    assert!(cut_vertex(&g.induced(&union)));
                }
            }
        }
    }
}

#[test]
fn cubic_root_inverts_line_multigraph() {
    for m in enumerate_cubic_multigraphs(8).unwrap() {
        let l = line_multigraph(&m);
        let (root, map) = cubic_root(&l).expect("line multigraphs have cubic roots");
        assert!(root.is_k_regular(3) && root.is_connected());
        let lr = line_multigraph(&root);
        for (u, v, k) in l.pairs() {
            assert_eq!(lr.mult(map[u], map[v]), k);
        }
        assert_eq!(lr.edge_count(), l.edge_count());
        assert!(root.is_isomorphic(&m).unwrap());
    }
}
