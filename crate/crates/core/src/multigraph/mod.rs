//! Loopless undirected multigraphs with edge multiplicities in `1..=4`.
//!
//! A [`Multigraph`] is an immutable value: every operation that changes the
//! structure returns a new graph. Vertices are the dense labels `0..n`.

mod canon;
mod mg1;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub use canon::{CanonicalCode, CanonicalForm};

/// Largest multiplicity a vertex pair may carry.
pub const MAX_MULTIPLICITY: u8 = 4;

/// Largest vertex count supported by canonical labeling and isomorphism.
pub const MAX_CANON_VERTICES: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("multiplicity {mult} on pair {u}-{v} is outside 1..=4")]
    Multiplicity { u: usize, v: usize, mult: i64 },
    #[error("graph has {0} vertices; canonical labeling supports at most 16")]
    TooLarge(usize),
    #[error("MG1 line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Loopless undirected multigraph stored as a dense symmetric multiplicity matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    n: usize,
    mult: Vec<u8>,
}

/// A vertex triple whose three pairs are all present.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triangle {
    /// Vertices in increasing order.
    pub vertices: [usize; 3],
    /// Multiplicities of the pairs `(v0,v1)`, `(v1,v2)`, `(v0,v2)`.
    pub mults: [u8; 3],
}

impl Multigraph {
    /// Graph on `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Multigraph { n, mult: vec![0; n * n] }
    }

    /// Builds a graph from `(u, v, k)` triples. Repeated pairs accumulate.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, u8)>,
    {
        let mut g = Multigraph::empty(n);
        for (u, v, k) in edges {
            g.add_mult(u, v, k as i64)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mult(&self, u: usize, v: usize) -> u8 {
        self.mult[u * self.n + v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|&k| k as usize).sum()
    }

    /// Total number of edges, counting multiplicity.
    pub fn edge_count(&self) -> usize {
        self.pairs().map(|(_, _, k)| k as usize).sum()
    }

    /// Number of vertex pairs with nonzero multiplicity.
    pub fn pair_count(&self) -> usize {
        self.pairs().count()
    }

    /// Present pairs `(u, v, k)` with `u < v`, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, u8)> + '_ {
        (0..self.n).flat_map(move |u| {
            (u + 1..self.n).filter_map(move |v| {
                let k = self.mult(u, v);
                (k > 0).then_some((u, v, k))
            })
        })
    }

    /// Distinct neighbours of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v)
            .iter()
            .enumerate()
            .filter_map(|(u, &k)| (k > 0).then_some(u))
    }

    pub fn is_k_regular(&self, k: usize) -> bool {
        (0..self.n).all(|v| self.degree(v) == k)
    }

    pub fn is_simple(&self) -> bool {
        self.mult.iter().all(|&k| k <= 1)
    }

    pub fn max_multiplicity(&self) -> u8 {
        self.mult.iter().copied().max().unwrap_or(0)
    }

    /// Connectivity of the underlying simple graph. The empty graph and a
    /// single vertex both count as connected.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for u in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n
    }

    /// Whether every present pair `{u, v}` has a common neighbour.
    pub fn has_triangle_property(&self) -> bool {
        self.pairs().all(|(u, v, _)| self.common_neighbor(u, v).is_some())
    }

    /// Smallest common neighbour of `u` and `v`, if any.
    pub fn common_neighbor(&self, u: usize, v: usize) -> Option<usize> {
        (0..self.n).find(|&w| w != u && w != v && self.mult(u, w) > 0 && self.mult(v, w) > 0)
    }

    /// Subgraph induced on `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Multigraph {
        let mut g = Multigraph::empty(vertices.len());
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                let k = self.mult(a, b);
                g.set(i, j, k);
            }
        }
        g
    }

    /// Graph induced by the distinct neighbours of `v` (excluding `v`),
    /// listed in increasing label order.
    pub fn open_neighborhood_graph(&self, v: usize) -> Multigraph {
        let nbrs: Vec<usize> = self.neighbors(v).collect();
        self.induced(&nbrs)
    }

    /// All vertex triples whose three pairs are present.
    pub fn triangles(&self) -> Vec<Triangle> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in self.neighbors(a).filter(|&b| b > a) {
                for c in self.neighbors(b).filter(|&c| c > b) {
                    let ac = self.mult(a, c);
                    if ac > 0 {
                        out.push(Triangle {
                            vertices: [a, b, c],
                            mults: [self.mult(a, b), self.mult(b, c), ac],
                        });
                    }
                }
            }
        }
        out
    }

    /// Blocks (maximal 2-connected subgraphs) of the underlying simple graph,
    /// each as a sorted vertex list. Bridges are 2-vertex blocks and isolated
    /// vertices are singleton blocks. The list is sorted.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut time = 0;
        let mut edge_stack: Vec<(usize, usize)> = Vec::new();
        let mut out: Vec<Vec<usize>> = Vec::new();

        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            if self.neighbors(root).next().is_none() {
                disc[root] = time;
                time += 1;
                out.push(vec![root]);
                continue;
            }
            // Iterative DFS: (vertex, parent, next neighbour index).
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            disc[root] = time;
            low[root] = time;
            time += 1;
            while let Some(top) = stack.last_mut() {
                let (v, parent) = (top.0, top.1);
                if top.2 < n {
                    let u = top.2;
                    top.2 += 1;
                    if u == v || self.mult(v, u) == 0 || u == parent {
                        continue;
                    }
                    if disc[u] == usize::MAX {
                        edge_stack.push((v, u));
                        disc[u] = time;
                        low[u] = time;
                        time += 1;
                        stack.push((u, v, 0));
                    } else if disc[u] < disc[v] {
                        edge_stack.push((v, u));
                        low[v] = low[v].min(disc[u]);
                    }
                } else {
                    stack.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] >= disc[parent] {
                            let mut block = BTreeSet::new();
                            while let Some((a, b)) = edge_stack.pop() {
                                block.insert(a);
                                block.insert(b);
                                if (a, b) == (parent, v) {
                                    break;
                                }
                            }
                            out.push(block.into_iter().collect());
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Graph with vertex `v` renamed to `perm[v]`. `perm` must be a permutation.
    pub fn relabeled(&self, perm: &[usize]) -> Multigraph {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let mut g = Multigraph::empty(self.n);
        for (u, v, k) in self.pairs() {
            g.set(perm[u], perm[v], k);
        }
        g
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Multigraph) -> Multigraph {
        let mut g = Multigraph::empty(self.n + other.n);
        for (u, v, k) in self.pairs() {
            g.set(u, v, k);
        }
        for (u, v, k) in other.pairs() {
            g.set(u + self.n, v + self.n, k);
        }
        g
    }

    /// Returns a copy with `delta` added to the multiplicity of `{u, v}`.
    pub fn with_mult_delta(&self, u: usize, v: usize, delta: i64) -> Result<Multigraph, GraphError> {
        let mut g = self.clone();
        g.add_mult(u, v, delta)?;
        Ok(g)
    }

    /// Removes the listed vertices and renumbers the survivors densely,
    /// preserving their relative order. Returns the old-to-new map.
    pub fn without_vertices(&self, removed: &[usize]) -> (Multigraph, Vec<Option<usize>>) {
        let mut map = vec![None; self.n];
        let mut next = 0;
        for (v, slot) in map.iter_mut().enumerate() {
            if !removed.contains(&v) {
                *slot = Some(next);
                next += 1;
            }
        }
        let mut g = Multigraph::empty(next);
        for (u, v, k) in self.pairs() {
            if let (Some(a), Some(b)) = (map[u], map[v]) {
                g.set(a, b, k);
            }
        }
        (g, map)
    }

    /// Copy with `extra` isolated vertices appended.
    pub fn with_new_vertices(&self, extra: usize) -> Multigraph {
        let mut g = Multigraph::empty(self.n + extra);
        for (u, v, k) in self.pairs() {
            g.set(u, v, k);
        }
        g
    }

    pub fn canonical_form(&self) -> Result<CanonicalForm, GraphError> {
        canon::canonical_form(self)
    }

    pub fn canonical_code(&self) -> Result<CanonicalCode, GraphError> {
        Ok(self.canonical_form()?.code)
    }

    pub fn is_isomorphic(&self, other: &Multigraph) -> Result<bool, GraphError> {
        Ok(self.isomorphism_to(other)?.is_some())
    }

    /// A multiplicity-preserving bijection `map` with `other.mult(map[u], map[v]) ==
    /// self.mult(u, v)`, if one exists.
    pub fn isomorphism_to(&self, other: &Multigraph) -> Result<Option<Vec<usize>>, GraphError> {
        if self.n != other.n || self.edge_count() != other.edge_count() {
            // Still enforce the size bound for a uniform error contract.
            if self.n > MAX_CANON_VERTICES {
                return Err(GraphError::TooLarge(self.n));
            }
            if other.n > MAX_CANON_VERTICES {
                return Err(GraphError::TooLarge(other.n));
            }
            return Ok(None);
        }
        let a = self.canonical_form()?;
        let b = other.canonical_form()?;
        if a.code != b.code {
            return Ok(None);
        }
        let mut inv_b = vec![0; other.n];
        for (v, &pos) in b.labeling.iter().enumerate() {
            inv_b[pos] = v;
        }
        Ok(Some(a.labeling.iter().map(|&pos| inv_b[pos]).collect()))
    }

    pub fn to_mg1(&self) -> String {
        mg1::write(self)
    }

    pub fn from_mg1(text: &str) -> Result<Multigraph, GraphError> {
        mg1::parse(text)
    }

    // ---- crate-internal mutation, used on private copies only ----

    fn row(&self, v: usize) -> &[u8] {
        &self.mult[v * self.n..(v + 1) * self.n]
    }

    fn set(&mut self, u: usize, v: usize, k: u8) {
        self.mult[u * self.n + v] = k;
        self.mult[v * self.n + u] = k;
    }

    pub(crate) fn add_mult(&mut self, u: usize, v: usize, delta: i64) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        let k = self.mult(u, v) as i64 + delta;
        if !(0..=MAX_MULTIPLICITY as i64).contains(&k) {
            let (u, v) = (u.min(v), u.max(v));
            return Err(GraphError::Multiplicity { u, v, mult: k });
        }
        self.set(u, v, k as u8);
        Ok(())
    }
}

impl fmt::Debug for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multigraph(n={}; ", self.n)?;
        for (i, (u, v, k)) in self.pairs().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if k == 1 {
                write!(f, "{u}-{v}")?;
            } else {
                write!(f, "{u}-{v}x{k}")?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Display for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_mg1())
    }
}

impl std::str::FromStr for Multigraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Multigraph::from_mg1(s)
    }
}
