//! Pattern catalog and subgraph matching.
//!
//! Every operation replaces a small pattern by a larger one (or the reverse).
//! The two sides are stored so that the roles of the smaller side are a prefix
//! of the roles of the larger side; the remaining roles of the larger side are
//! the vertices the operation creates or deletes. The first `named` roles of
//! each side are attachment vertices, the rest are interior.

use std::sync::OnceLock;

use crate::multigraph::Multigraph;

use super::OpKind;

#[derive(Debug)]
pub(crate) struct Pattern {
    pub n: usize,
    pub named: usize,
    pub edges: &'static [(usize, usize, u8)],
}

impl Pattern {
    pub fn graph(&self) -> Multigraph {
        Multigraph::from_edges(self.n, self.edges.iter().copied()).unwrap()
    }
}

const TRIANGLE: Pattern = Pattern { n: 3, named: 3, edges: &[(0, 1, 1), (1, 2, 1), (0, 2, 1)] };

// x y z | u (on x-y), v (on z-x), w (on y-z)
const OP1_LARGE: Pattern = Pattern {
    n: 6,
    named: 3,
    edges: &[
        (0, 3, 1), (1, 3, 1), (1, 5, 1), (2, 5, 1), (2, 4, 1), (0, 4, 1),
        (3, 4, 1), (4, 5, 1), (3, 5, 1),
    ],
};

// x y z | u v, both adjacent to x y z and to each other
const OP2_LARGE: Pattern = Pattern {
    n: 5,
    named: 3,
    edges: &[(0, 3, 1), (1, 3, 1), (2, 3, 1), (0, 4, 1), (1, 4, 1), (2, 4, 1), (3, 4, 1)],
};

// x | a b, with a-b tripled
const TRIPLE_TRIANGLE: Pattern = Pattern { n: 3, named: 1, edges: &[(0, 1, 1), (0, 2, 1), (1, 2, 3)] };

// x | a b c, with a-c and b-c doubled
const OP3_LARGE: Pattern = Pattern {
    n: 4,
    named: 1,
    edges: &[(0, 1, 1), (0, 2, 1), (1, 2, 1), (1, 3, 2), (2, 3, 2)],
};

// x y | u v, with u-v doubled
const OP4_SMALL: Pattern = Pattern {
    n: 4,
    named: 2,
    edges: &[(0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1), (2, 3, 2)],
};

// x y | u v1 v2, with v1-v2 doubled
const OP4_LARGE: Pattern = Pattern {
    n: 5,
    named: 2,
    edges: &[(0, 2, 1), (1, 2, 1), (0, 3, 1), (1, 4, 1), (2, 3, 1), (2, 4, 1), (3, 4, 2)],
};

// x | b c d e
const OP5_LARGE: Pattern = Pattern {
    n: 5,
    named: 1,
    edges: &[(0, 1, 1), (0, 2, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1), (1, 4, 1), (2, 4, 1), (3, 4, 2)],
};

/// The smaller and larger side of an operation.
pub(crate) fn sides(kind: OpKind) -> (&'static Pattern, &'static Pattern) {
    match kind {
        OpKind::One => (&TRIANGLE, &OP1_LARGE),
        OpKind::Two => (&TRIANGLE, &OP2_LARGE),
        OpKind::Three => (&TRIPLE_TRIANGLE, &OP3_LARGE),
        OpKind::Four => (&OP4_SMALL, &OP4_LARGE),
        OpKind::Five => (&TRIPLE_TRIANGLE, &OP5_LARGE),
    }
}

/// Permutations of the larger side's roles that preserve both sides, the
/// attachment roles and the shared prefix. Embeddings related by one of these
/// produce identical rewrites.
pub(crate) fn op_automorphisms(kind: OpKind) -> &'static [Vec<usize>] {
    static CACHE: OnceLock<Vec<Vec<Vec<usize>>>> = OnceLock::new();
    let all = CACHE.get_or_init(|| OpKind::ALL.iter().map(|&k| compute_op_automorphisms(k)).collect());
    &all[kind.index()]
}

fn compute_op_automorphisms(kind: OpKind) -> Vec<Vec<usize>> {
    let (small, large) = sides(kind);
    let (gs, gl) = (small.graph(), large.graph());
    permutations(large.n)
        .into_iter()
        .filter(|p| {
            (0..large.n).all(|i| (p[i] < large.named) == (i < large.named))
                && (0..large.n).all(|i| (p[i] < small.n) == (i < small.n))
                && (0..large.n).all(|i| (0..large.n).all(|j| gl.mult(p[i], p[j]) == gl.mult(i, j)))
                && (0..small.n).all(|i| (0..small.n).all(|j| gs.mult(p[i], p[j]) == gs.mult(i, j)))
        })
        .collect()
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// How host multiplicities must relate to pattern multiplicities.
#[derive(Clone, Copy, Debug)]
pub(crate) enum MatchMode {
    /// Operation site: pairs touching an interior role match exactly and
    /// interior vertices have no edges leaving the pattern; pairs of
    /// attachment roles carry at least the pattern multiplicity.
    Site { named: usize },
    /// Plain subgraph: every pattern pair carries at least its multiplicity.
    Subgraph,
    /// Induced copy of a simple pattern: present pairs present, absent absent.
    Induced,
    /// Induced copy with every present pair of multiplicity exactly one.
    InducedSimple,
    /// Every pair carries exactly the pattern multiplicity.
    Exact,
}

impl MatchMode {
    fn pair_ok(self, i: usize, j: usize, pat: u8, host: u8) -> bool {
        match self {
            MatchMode::Site { named } => {
                if i >= named || j >= named {
                    host == pat
                } else {
                    host >= pat
                }
            }
            MatchMode::Subgraph => host >= pat,
            MatchMode::Induced => (host > 0) == (pat > 0),
            MatchMode::InducedSimple => host == pat.min(1),
            MatchMode::Exact => host == pat,
        }
    }

    fn vertex_ok(self, role: usize, pat_degree: usize, host_degree: usize) -> bool {
        match self {
            MatchMode::Site { named } if role >= named => host_degree == pat_degree,
            _ => host_degree >= pat_degree,
        }
    }
}

/// All injective embeddings of `pattern` into `host` under `mode`, as vectors
/// indexed by pattern role.
pub(crate) fn embeddings(host: &Multigraph, pattern: &Multigraph, mode: MatchMode) -> Vec<Vec<usize>> {
    let order = matching_order(pattern);
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; pattern.n()];
    let mut used = vec![false; host.n()];
    extend(host, pattern, mode, &order, 0, &mut map, &mut used, &mut out);
    out
}

/// Whether `site` is an embedding of `pattern` under `mode`.
pub(crate) fn is_embedding(host: &Multigraph, pattern: &Multigraph, mode: MatchMode, site: &[usize]) -> bool {
    if site.len() != pattern.n() {
        return false;
    }
    for (i, &h) in site.iter().enumerate() {
        if h >= host.n() || site[..i].contains(&h) {
            return false;
        }
        if !mode.vertex_ok(i, pattern.degree(i), host.degree(h)) {
            return false;
        }
        for (j, &g) in site.iter().enumerate().take(i) {
            if !mode.pair_ok(i, j, pattern.mult(i, j), host.mult(h, g)) {
                return false;
            }
        }
    }
    true
}

/// Roles in BFS order from role 0 so that each later role (within a
/// component) has an already placed neighbour.
fn matching_order(pattern: &Multigraph) -> Vec<(usize, Option<usize>)> {
    let n = pattern.n();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        order.push((start, None));
        let mut head = order.len() - 1;
        while head < order.len() {
            let v = order[head].0;
            head += 1;
            for u in pattern.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    order.push((u, Some(v)));
                }
            }
        }
    }
    order
}

#[allow(clippy::too_many_arguments)]
fn extend(
    host: &Multigraph,
    pattern: &Multigraph,
    mode: MatchMode,
    order: &[(usize, Option<usize>)],
    depth: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
) {
    if depth == order.len() {
        out.push(map.clone());
        return;
    }
    let (role, anchor) = order[depth];
    let candidates: Vec<usize> = match anchor {
        Some(a) => host.neighbors(map[a]).collect(),
        None => (0..host.n()).collect(),
    };
    let pdeg = pattern.degree(role);
    for h in candidates {
        if used[h] || !mode.vertex_ok(role, pdeg, host.degree(h)) {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&(r, _)| mode.pair_ok(role, r, pattern.mult(role, r), host.mult(h, map[r])));
        if !consistent {
            continue;
        }
        map[role] = h;
        used[h] = true;
        extend(host, pattern, mode, order, depth + 1, map, used, out);
        used[h] = false;
        map[role] = usize::MAX;
    }
}

/// Lexicographically smallest image of `site` under the given role permutations.
pub(crate) fn canonical_site(site: &[usize], autos: &[Vec<usize>]) -> Vec<usize> {
    let k = site.len();
    autos
        .iter()
        .map(|p| (0..k).map(|i| site[p[i]]).collect::<Vec<_>>())
        .min()
        .unwrap_or_else(|| site.to_vec())
}
