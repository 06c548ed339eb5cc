//! Named graphs and families: squared cycles, line multigraphs, the 5-vertex
//! exceptional graph and the small blocks used by the rewriting operations.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::multigraph::Multigraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("squared cycle needs n >= 3, got {0}")]
    CycleTooShort(usize),
    #[error("unknown named block {0:?}")]
    UnknownBlock(String),
}

/// The Cayley multigraph on `Z_n` with connection multiset `{+1, -1, +2, -2}`.
///
/// The multiplicity of `{i, j}` is the number of connection elements `s` with
/// `j - i = s (mod n)`. For `n = 3` every pair is doubled, for `n = 4` both
/// diagonals are doubled, and from `n = 5` on the graph is simple.
pub fn squared_cycle(n: usize) -> Result<Multigraph, FamilyError> {
    if n < 3 {
        return Err(FamilyError::CycleTooShort(n));
    }
    let n_i = n as i64;
    let connection = [1i64, -1, 2, -2];
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let diff = (j - i) as i64;
            let k = connection
                .iter()
                .filter(|&&s| (diff - s).rem_euclid(n_i) == 0)
                .count();
            if k > 0 {
                edges.push((i, j, k as u8));
            }
        }
    }
    Ok(Multigraph::from_edges(n, edges).expect("squared cycle multiplicities are at most 2"))
}

/// Edge instances of `g` in the order used as line-multigraph vertices:
/// lexicographic by endpoint pair, then by copy index.
pub fn edge_instances(g: &Multigraph) -> Vec<(usize, usize)> {
    g.pairs()
        .flat_map(|(u, v, k)| std::iter::repeat_n((u, v), k as usize))
        .collect()
}

/// Index of copy `copy` of pair `{u, v}` in [`edge_instances`] order.
pub fn edge_instance_index(g: &Multigraph, u: usize, v: usize, copy: usize) -> Option<usize> {
    let (u, v) = (u.min(v), u.max(v));
    if copy >= g.mult(u, v) as usize {
        return None;
    }
    let before: usize = g
        .pairs()
        .take_while(|&(a, b, _)| (a, b) < (u, v))
        .map(|(_, _, k)| k as usize)
        .sum();
    Some(before + copy)
}

/// Line multigraph: one vertex per edge instance, two vertices joined by as
/// many edges as the instances share endpoints. Parallel edges of `g` become
/// double edges. Vertex order follows [`edge_instances`].
pub fn line_multigraph(g: &Multigraph) -> Multigraph {
    let inst = edge_instances(g);
    let mut edges = Vec::new();
    for (a, &(u1, v1)) in inst.iter().enumerate() {
        for (b, &(u2, v2)) in inst.iter().enumerate().skip(a + 1) {
            let shared = [u1, v1].iter().filter(|&&x| x == u2 || x == v2).count();
            if shared > 0 {
                edges.push((a, b, shared as u8));
            }
        }
    }
    Multigraph::from_edges(inst.len(), edges).expect("line multigraph multiplicities are at most 2")
}

/// For each vertex `v` of `g`, the line-multigraph vertices of the edge
/// instances at `v`. In a cubic multigraph these are triangles, and every
/// edge of `L(g)` lies in exactly one of them.
pub fn vertex_stars(g: &Multigraph) -> Vec<Vec<usize>> {
    let mut stars = vec![Vec::new(); g.n()];
    for (i, (u, v)) in edge_instances(g).into_iter().enumerate() {
        stars[u].push(i);
        stars[v].push(i);
    }
    stars
}

/// The 5-vertex quartic multigraph with two double edges.
///
/// Labels: `0 = x`, `1 = y` (joined by a double edge), `2 = u` (adjacent to
/// all others), `3 = v1`, `4 = v2` (joined by a double edge), with `x-v1` and
/// `y-v2`.
pub fn five_vertex_exception() -> Multigraph {
    Multigraph::from_edges(
        5,
        [(0, 1, 2), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 4, 1), (2, 3, 1), (2, 4, 1), (3, 4, 2)],
    )
    .unwrap()
}

/// Catalog of small named graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedBlock {
    /// `K_{1,1,3}`: apexes `0, 1` (adjacent), independent vertices `2, 3, 4`.
    K113,
    /// Five-vertex block: `0 = x` attachment, `1 = b`, `2 = c`, `3 = d`, `4 = e`
    /// with triangle `x b c`, `b, c` both adjacent to `d, e`, and `d-e` doubled.
    Op5Left,
    /// Triangle with a tripled edge: `0 = x` attachment, `1-2` tripled.
    Op5Right,
    /// [`NamedBlock::Op5Left`] after subdividing triangle `{b, d, e}`:
    /// new vertices `5` on `d-e`, `6` on `e-b`, `7` on `b-d`, forming a triangle.
    Fig8Outer,
    /// [`NamedBlock::Op5Left`] after subdividing triangle `{x, b, c}`:
    /// new vertices `5` on `x-b`, `6` on `b-c`, `7` on `c-x`, forming a triangle.
    Fig8Inner,
}

impl NamedBlock {
    pub const ALL: [NamedBlock; 5] = [
        NamedBlock::K113,
        NamedBlock::Op5Left,
        NamedBlock::Op5Right,
        NamedBlock::Fig8Outer,
        NamedBlock::Fig8Inner,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedBlock::K113 => "k113",
            NamedBlock::Op5Left => "op5-left",
            NamedBlock::Op5Right => "op5-right",
            NamedBlock::Fig8Outer => "fig8-outer",
            NamedBlock::Fig8Inner => "fig8-inner",
        }
    }

    /// Attachment vertex, for blocks that have one.
    pub fn attachment(self) -> Option<usize> {
        match self {
            NamedBlock::K113 => None,
            _ => Some(0),
        }
    }

    pub fn graph(self) -> Multigraph {
        let edges: &[(usize, usize, u8)] = match self {
            NamedBlock::K113 => &[(0, 1, 1), (0, 2, 1), (0, 3, 1), (0, 4, 1), (1, 2, 1), (1, 3, 1), (1, 4, 1)],
            NamedBlock::Op5Left => &[
                (0, 1, 1), (0, 2, 1), (1, 2, 1), (1, 3, 1), (1, 4, 1), (2, 3, 1), (2, 4, 1), (3, 4, 2),
            ],
            NamedBlock::Op5Right => &[(0, 1, 1), (0, 2, 1), (1, 2, 3)],
            NamedBlock::Fig8Outer => &[
                (0, 1, 1), (0, 2, 1), (1, 2, 1), (2, 3, 1), (2, 4, 1), (3, 4, 1),
                (3, 5, 1), (4, 5, 1), (4, 6, 1), (1, 6, 1), (1, 7, 1), (3, 7, 1),
                (5, 6, 1), (6, 7, 1), (5, 7, 1),
            ],
            NamedBlock::Fig8Inner => &[
                (1, 3, 1), (1, 4, 1), (2, 3, 1), (2, 4, 1), (3, 4, 2),
                (0, 5, 1), (1, 5, 1), (1, 6, 1), (2, 6, 1), (2, 7, 1), (0, 7, 1),
                (5, 6, 1), (6, 7, 1), (5, 7, 1),
            ],
        };
        let n = match self {
            NamedBlock::K113 | NamedBlock::Op5Left => 5,
            NamedBlock::Op5Right => 3,
            NamedBlock::Fig8Outer | NamedBlock::Fig8Inner => 8,
        };
        Multigraph::from_edges(n, edges.iter().copied()).unwrap()
    }
}

impl fmt::Display for NamedBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedBlock {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NamedBlock::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| FamilyError::UnknownBlock(s.to_string()))
    }
}

pub fn named_block(name: &str) -> Result<Multigraph, FamilyError> {
    Ok(name.parse::<NamedBlock>()?.graph())
}

pub fn complete_graph(n: usize) -> Multigraph {
    Multigraph::from_edges(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b, 1)))).unwrap()
}

pub fn cycle(n: usize) -> Multigraph {
    Multigraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n, 1))).unwrap()
}

/// Two vertices joined by three parallel edges.
pub fn triple_edge() -> Multigraph {
    Multigraph::from_edges(2, [(0, 1, 3)]).unwrap()
}

/// The cubic multigraph of the usual line-multigraph illustration: six
/// vertices, one doubled pair.
///
/// Labels: the doubled pair is `0-1`; then `0-4`, `1-2`, `2-3`, `2-5`, `3-4`,
/// `3-5`, `4-5`.
pub fn doubled_pair_cubic() -> Multigraph {
    Multigraph::from_edges(
        6,
        [(0, 1, 2), (0, 4, 1), (1, 2, 1), (2, 3, 1), (2, 5, 1), (3, 4, 1), (3, 5, 1), (4, 5, 1)],
    )
    .unwrap()
}
