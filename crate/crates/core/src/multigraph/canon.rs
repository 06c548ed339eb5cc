//! Canonical labeling by colour refinement and individualization.
//!
//! The search tree is the usual individualization-refinement tree: refine the
//! vertex colouring to an equitable one (multiplicity-aware), pick the first
//! non-singleton cell, branch on each of its vertices. Leaves are compared by
//! the multiplicity matrix they induce and the smallest one wins. Automorphisms
//! discovered at equal leaves prune sibling branches lying in the same orbit.

use std::fmt;

use super::{GraphError, Multigraph, MAX_CANON_VERTICES};

/// Isomorphism invariant of a multigraph: the vertex count followed by the
/// upper triangle of the canonically ordered multiplicity matrix.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Option<CanonicalCode> {
        hex::decode(s).ok().map(CanonicalCode)
    }

    /// Vertex count recorded in the code.
    pub fn vertex_count(&self) -> usize {
        self.0.first().copied().unwrap_or(0) as usize
    }

    /// The canonically labelled graph the code describes, or `None` if the
    /// bytes are not a well-formed code.
    pub fn graph(&self) -> Option<Multigraph> {
        let n = self.vertex_count();
        if self.0.len() != 1 + n * n.saturating_sub(1) / 2 {
            return None;
        }
        let mut cells = self.0[1..].iter();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let k = *cells.next()?;
                if k > 0 {
                    edges.push((i, j, k));
                }
            }
        }
        Multigraph::from_edges(n, edges).ok()
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Canonical code together with the labeling that realises it:
/// `labeling[v]` is the canonical position of vertex `v`.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub code: CanonicalCode,
    pub labeling: Vec<usize>,
}

pub(super) fn canonical_form(g: &Multigraph) -> Result<CanonicalForm, GraphError> {
    let n = g.n();
    if n > MAX_CANON_VERTICES {
        return Err(GraphError::TooLarge(n));
    }
    let mut search = Search { g, best: None, autos: Vec::new() };
    search.visit(vec![0; n], &mut Vec::new());
    let (cert, labeling) = search.best.unwrap_or_default();
    let mut bytes = Vec::with_capacity(cert.len() + 1);
    bytes.push(n as u8);
    bytes.extend(cert);
    Ok(CanonicalForm { code: CanonicalCode(bytes), labeling })
}

struct Search<'a> {
    g: &'a Multigraph,
    best: Option<(Vec<u8>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn visit(&mut self, mut colors: Vec<usize>, prefix: &mut Vec<usize>) {
        refine(self.g, &mut colors);
        let n = colors.len();
        let cells = colors.iter().copied().max().map_or(0, |m| m + 1);
        if cells == n {
            self.leaf(colors);
            return;
        }
        // First non-singleton cell in colour order.
        let mut sizes = vec![0usize; cells];
        for &c in &colors {
            sizes[c] += 1;
        }
        let target = (0..cells).find(|&c| sizes[c] > 1).expect("non-discrete colouring");
        let members: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();

        let mut explored: Vec<usize> = Vec::new();
        for &v in &members {
            if !explored.is_empty() {
                let orbit = self.orbits_fixing(prefix);
                if explored.iter().any(|&w| find(&orbit, w) == find(&orbit, v)) {
                    continue;
                }
            }
            let child = individualize(&colors, v);
            prefix.push(v);
            self.visit(child, prefix);
            prefix.pop();
            explored.push(v);
        }
    }

    fn leaf(&mut self, labeling: Vec<usize>) {
        let n = labeling.len();
        let mut inv = vec![0; n];
        for (v, &p) in labeling.iter().enumerate() {
            inv[p] = v;
        }
        let mut cert = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
        for i in 0..n {
            for j in i + 1..n {
                cert.push(self.g.mult(inv[i], inv[j]));
            }
        }
        match &self.best {
            None => self.best = Some((cert, labeling)),
            Some((best_cert, best_lab)) => {
                if cert < *best_cert {
                    self.best = Some((cert, labeling));
                } else if cert == *best_cert {
                    let mut best_inv = vec![0; n];
                    for (v, &p) in best_lab.iter().enumerate() {
                        best_inv[p] = v;
                    }
                    let auto: Vec<usize> = labeling.iter().map(|&p| best_inv[p]).collect();
                    if auto.iter().enumerate().any(|(v, &w)| v != w) {
                        self.autos.push(auto);
                    }
                }
            }
        }
    }

    /// Union-find parents for the orbits of the group generated by the known
    /// automorphisms that fix every vertex of `prefix`.
    fn orbits_fixing(&self, prefix: &[usize]) -> Vec<usize> {
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).collect();
        for auto in &self.autos {
            if prefix.iter().all(|&p| auto[p] == p) {
                for (v, &w) in auto.iter().enumerate() {
                    let (a, b) = (find(&parent, v), find(&parent, w));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        parent
    }
}

fn find(parent: &[usize], mut v: usize) -> usize {
    while parent[v] != v {
        v = parent[v];
    }
    v
}

fn individualize(colors: &[usize], v: usize) -> Vec<usize> {
    let raw: Vec<usize> = colors
        .iter()
        .enumerate()
        .map(|(u, &c)| if u == v { 2 * c } else { 2 * c + 1 })
        .collect();
    densify(&raw)
}

fn densify(raw: &[usize]) -> Vec<usize> {
    let mut values: Vec<usize> = raw.to_vec();
    values.sort_unstable();
    values.dedup();
    raw.iter().map(|c| values.binary_search(c).unwrap()).collect()
}

/// Refines `colors` (dense ranks) until the partition is equitable with respect
/// to multiplicity-weighted adjacency. New colours are ranks of sorted
/// signatures, so the result does not depend on vertex names.
fn refine(g: &Multigraph, colors: &mut Vec<usize>) {
    let n = colors.len();
    let mut cells = colors.iter().copied().max().map_or(0, |m| m + 1);
    loop {
        let sigs: Vec<(usize, Vec<(usize, u8)>)> = (0..n)
            .map(|v| {
                let mut s: Vec<(usize, u8)> =
                    g.neighbors(v).map(|u| (colors[u], g.mult(v, u))).collect();
                s.sort_unstable();
                (colors[v], s)
            })
            .collect();
        let mut sorted: Vec<&(usize, Vec<(usize, u8)>)> = sigs.iter().collect();
        sorted.sort();
        sorted.dedup();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| sorted.binary_search(&s).unwrap())
            .collect();
        let next_cells = sorted.len();
        *colors = next;
        if next_cells == cells {
            return;
        }
        cells = next_cells;
    }
}
