//! Exhaustive generation of small regular multigraphs, used as an oracle.
//!
//! Graphs are generated as multiplicity vectors over the vertex pairs in
//! lexicographic order, pruned by residual degree and (for the quartic case)
//! by the triangle property as soon as a row is complete, then deduplicated
//! by canonical code. Vertex 0's row is required to be non-increasing, which
//! every isomorphism class satisfies after relabelling.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::certificate::Base;
use crate::families::{five_vertex_exception, line_multigraph, squared_cycle};
use crate::multigraph::{CanonicalCode, Multigraph};
use crate::operations::{apply, find_sites, Direction, OpKind, OpStep};

pub const MAX_QUARTIC_VERTICES: usize = 9;
pub const MAX_CUBIC_VERTICES: usize = 8;
pub const MAX_WALK_DEPTH: usize = 4;
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("vertex bound {got} exceeds the supported maximum {max}")]
    BoundExceeded { max: usize, got: usize },
    #[error("walk depth {0} exceeds the supported maximum 4")]
    DepthExceeded(usize),
}

/// Canonical codes of every class found, per vertex count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationReport {
    pub bound: usize,
    pub classes: BTreeMap<usize, Vec<CanonicalCode>>,
}

impl EnumerationReport {
    pub fn count(&self, n: usize) -> usize {
        self.classes.get(&n).map_or(0, Vec::len)
    }

    pub fn codes(&self) -> impl Iterator<Item = &CanonicalCode> {
        self.classes.values().flatten()
    }

    /// Canonically labelled representatives of every class.
    pub fn graphs(&self) -> Vec<Multigraph> {
        self.codes().map(|c| c.graph().expect("codes come from real graphs")).collect()
    }
}

impl fmt::Display for EnumerationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, codes) in &self.classes {
            writeln!(f, "n={n} classes={}", codes.len())?;
            for c in codes {
                writeln!(f, "{c}")?;
            }
        }
        Ok(())
    }
}

struct Search {
    n: usize,
    degree: usize,
    cap: u8,
    triangle_property: bool,
}

impl Search {
    /// All labelled graphs (with the row-0 restriction) as dense matrices,
    /// reduced to canonical codes of the connected ones.
    fn run(&self) -> BTreeSet<CanonicalCode> {
        let n = self.n;
        let rows = self.first_rows();
        rows.into_par_iter()
            .map(|row| {
                let mut m = vec![0u8; n * n];
                let mut residual = vec![self.degree; n];
                for (j, &k) in row.iter().enumerate() {
                    m[j + 1] = k;
                    m[(j + 1) * n] = k;
                    residual[j + 1] -= k as usize;
                }
                residual[0] = 0;
                let mut out = BTreeSet::new();
                if self.row_done(&m, 0) {
                    self.fill(&mut m, &mut residual, 1, 2, &mut out);
                }
                out
            })
            .reduce(BTreeSet::new, |mut a, b| {
                a.extend(b);
                a
            })
    }

    /// Non-increasing multiplicity rows for vertex 0 summing to the degree.
    fn first_rows(&self) -> Vec<Vec<u8>> {
        fn rec(left: usize, max: u8, len: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
            if cur.len() == len {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let slots = len - cur.len();
            for k in (0..=max.min(left as u8)).rev() {
                if (k as usize) * slots < left {
                    break;
                }
                cur.push(k);
                rec(left - k as usize, k, len, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if self.n >= 2 {
            rec(self.degree, self.cap, self.n - 1, &mut Vec::new(), &mut out);
        }
        out
    }

    fn fill(&self, m: &mut [u8], residual: &mut [usize], i: usize, j: usize, out: &mut BTreeSet<CanonicalCode>) {
        let n = self.n;
        if i + 1 >= n {
            if residual[n - 1] == 0 && (n < 2 || self.row_done(m, n - 1)) {
                self.accept(m, out);
            }
            return;
        }
        if j == n {
            if residual[i] == 0 && self.row_done(m, i) {
                self.fill(m, residual, i + 1, i + 2, out);
            }
            return;
        }
        let later: usize = residual[j + 1..].iter().sum();
        let hi = (self.cap as usize).min(residual[i]).min(residual[j]);
        for k in 0..=hi {
            if residual[i] - k > later {
                continue;
            }
            m[i * n + j] = k as u8;
            m[j * n + i] = k as u8;
            residual[i] -= k;
            residual[j] -= k;
            self.fill(m, residual, i, j + 1, out);
            residual[i] += k;
            residual[j] += k;
        }
        m[i * n + j] = 0;
        m[j * n + i] = 0;
    }

    /// Rows `0..=i` are final: every present pair inside them must already
    /// have a common neighbour.
    fn row_done(&self, m: &[u8], i: usize) -> bool {
        if !self.triangle_property {
            return true;
        }
        let n = self.n;
        (0..=i).all(|a| {
            let b = i;
            a == b || m[a * n + b] == 0 || (0..n).any(|w| w != a && w != b && m[a * n + w] > 0 && m[b * n + w] > 0)
        })
    }

    fn accept(&self, m: &[u8], out: &mut BTreeSet<CanonicalCode>) {
        let n = self.n;
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if m[i * n + j] > 0 {
                    edges.push((i, j, m[i * n + j]));
                }
            }
        }
        let g = Multigraph::from_edges(n, edges).expect("bounded multiplicities");
        if !g.is_connected() || (self.triangle_property && !g.has_triangle_property()) {
            return;
        }
        out.insert(g.canonical_code().expect("enumeration stays within the canonical range"));
    }
}

/// All connected quartic multigraphs with the triangle property on
/// `2..=max_n` vertices, up to isomorphism.
pub fn enumerate_quartic_tp(max_n: usize) -> Result<EnumerationReport, EnumerateError> {
    if max_n > MAX_QUARTIC_VERTICES {
        return Err(EnumerateError::BoundExceeded { max: MAX_QUARTIC_VERTICES, got: max_n });
    }
    let classes = (2..=max_n)
        .map(|n| {
            // Multiplicity 4 is only possible on two vertices; generate it
            // there and let the triangle property reject it.
            let cap = if n == 2 { 4 } else { 3 };
            let found = Search { n, degree: 4, cap, triangle_property: true }.run();
            (n, found.into_iter().collect())
        })
        .collect();
    Ok(EnumerationReport { bound: max_n, classes })
}

/// All connected cubic multigraphs on an even number `2..=max_n` of
/// vertices, up to isomorphism, smallest first.
pub fn enumerate_cubic_multigraphs(max_n: usize) -> Result<Vec<Multigraph>, EnumerateError> {
    if max_n > MAX_CUBIC_VERTICES {
        return Err(EnumerateError::BoundExceeded { max: MAX_CUBIC_VERTICES, got: max_n });
    }
    Ok((2..=max_n)
        .step_by(2)
        .flat_map(|n| Search { n, degree: 3, cap: 3, triangle_property: false }.run())
        .map(|c| c.graph().expect("codes come from real graphs"))
        .collect())
}

fn small_cubics() -> &'static [Multigraph] {
    static CUBICS: OnceLock<Vec<Multigraph>> = OnceLock::new();
    CUBICS.get_or_init(|| enumerate_cubic_multigraphs(MAX_CUBIC_VERTICES).expect("within bound"))
}

/// Canonical codes of every graph on at most `max_n` vertices reachable from
/// `seeds` by forward steps of the given kinds, never exceeding `max_n`
/// vertices on the way (except seeds, which may be larger and shrink).
pub fn closure_codes(seeds: &[Multigraph], kinds: &[OpKind], max_n: usize) -> BTreeSet<CanonicalCode> {
    let mut seen = BTreeSet::new();
    let mut frontier: Vec<Multigraph> = Vec::new();
    let push = |g: Multigraph, seen: &mut BTreeSet<CanonicalCode>, frontier: &mut Vec<Multigraph>| {
        if let Ok(code) = g.canonical_code() {
            if seen.insert(code) {
                frontier.push(g);
            }
        }
    };
    for g in seeds {
        push(g.clone(), &mut seen, &mut frontier);
    }
    while let Some(g) = frontier.pop() {
        for &kind in kinds {
            let grows = kind.forward_delta() > 0;
            if grows && g.n() as isize + kind.forward_delta() > max_n as isize {
                continue;
            }
            for step in find_sites(&g, kind, Direction::Forward) {
                if let Ok(out) = apply(&g, &step) {
                    push(out.graph, &mut seen, &mut frontier);
                }
            }
        }
    }
    seen.into_iter().filter(|c| c.vertex_count() <= max_n).collect()
}

/// Codes of the graphs on at most `max_n` vertices described by the
/// structure theorem: squared cycles, the 5-vertex exception, and line
/// multigraphs of cubic multigraphs on at most 8 vertices, closed under all
/// five operations.
pub fn structure_theorem_codes(max_n: usize) -> BTreeSet<CanonicalCode> {
    let mut seeds: Vec<Multigraph> = (3..=max_n.max(3)).map(|n| squared_cycle(n).expect("n >= 3")).collect();
    seeds.push(five_vertex_exception());
    seeds.extend(small_cubics().iter().map(line_multigraph));
    closure_codes(&seeds, &OpKind::ALL, max_n)
}

/// Which base graphs a random walk may start from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseChooser {
    /// Squared cycles of length 3 to 10.
    SquaredCycle,
    /// Line multigraphs of the connected cubic multigraphs on at most 8 vertices.
    LineOfCubic,
    /// Either, with equal probability.
    Any,
}

#[derive(Clone, Debug)]
pub struct Walk {
    pub base: Base,
    pub steps: Vec<OpStep>,
    pub graph: Multigraph,
    /// Set when a graph with no applicable step was reached before `depth`.
    pub stopped_early: bool,
}

/// Random forward walk of the given depth from a random base graph. The
/// generator is ChaCha8 seeded with `seed`, so walks are reproducible.
pub fn random_op_walk(seed: u64, depth: usize, chooser: BaseChooser) -> Result<Walk, EnumerateError> {
    if depth > MAX_WALK_DEPTH {
        return Err(EnumerateError::DepthExceeded(depth));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let use_cycle = match chooser {
        BaseChooser::SquaredCycle => true,
        BaseChooser::LineOfCubic => false,
        BaseChooser::Any => rng.gen_bool(0.5),
    };
    let base = if use_cycle {
        Base::SquaredCycle(rng.gen_range(3..=10))
    } else {
        let m = small_cubics().choose(&mut rng).expect("cubic list is non-empty");
        Base::FromCubicLineMultigraph(m.clone())
    };
    let mut graph = base.graph();
    let mut steps = Vec::new();
    let mut stopped_early = false;
    for _ in 0..depth {
        let options: Vec<(OpStep, Multigraph)> = OpKind::ALL
            .iter()
            .flat_map(|&k| find_sites(&graph, k, Direction::Forward))
            .filter_map(|s| apply(&graph, &s).ok().map(|out| (s, out.graph)))
            .collect();
        let Some((step, next)) = options.choose(&mut rng).cloned() else {
            stopped_early = true;
            break;
        };
        steps.push(step);
        graph = next;
    }
    Ok(Walk { base, steps, graph, stopped_early })
}
