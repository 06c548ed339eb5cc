//! The five subgraph-replacement operations, forward and reverse.
//!
//! Operations 1 to 4 grow the graph in the forward direction (by 3, 2, 1 and
//! 1 vertices); Operation 5 shrinks it by 2. A step is anchored by its *site*:
//! the host vertices playing the roles of the side being replaced, in catalog
//! order.
//!
//! | op | smaller side (roles)            | larger side (roles)                       |
//! |----|---------------------------------|-------------------------------------------|
//! | 1  | triangle `x y z`                | `x y z u v w`; paths `x-u-y`, `y-w-z`, `z-v-x`, triangle `u v w` |
//! | 2  | triangle `x y z`                | `x y z u v`; `K_{1,1,3}` with apexes `u v` |
//! | 3  | `x a b`, `a-b` tripled          | `x a b c`; `a-c`, `b-c` doubled            |
//! | 4  | `x y u v`, `u-v` doubled        | `x y u v1 v2`; `v1-v2` doubled             |
//! | 5  | `x a b`, `a-b` tripled          | `x b c d e`; `d-e` doubled                 |
//!
//! Forward is smaller-to-larger for Operations 1 to 4 and larger-to-smaller for
//! Operation 5.

mod catalog;
mod patterns;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::multigraph::{GraphError, Multigraph, Triangle};

use patterns::{canonical_site, embeddings, is_embedding, op_automorphisms, sides, MatchMode};

pub use catalog::{contains, find_matches, CatalogPattern, PatternMatch};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OpKind {
    One,
    Two,
    Three,
    Four,
    Five,
}

impl OpKind {
    pub const ALL: [OpKind; 5] = [OpKind::One, OpKind::Two, OpKind::Three, OpKind::Four, OpKind::Five];

    pub fn number(self) -> u8 {
        self.index() as u8 + 1
    }

    pub fn from_number(k: u8) -> Option<OpKind> {
        (1..=5).contains(&k).then(|| OpKind::ALL[k as usize - 1])
    }

    pub(crate) fn index(self) -> usize {
        match self {
            OpKind::One => 0,
            OpKind::Two => 1,
            OpKind::Three => 2,
            OpKind::Four => 3,
            OpKind::Five => 4,
        }
    }

    /// Change in vertex count of a forward application.
    pub fn forward_delta(self) -> isize {
        let (small, large) = sides(self);
        let d = (large.n - small.n) as isize;
        if self == OpKind::Five {
            -d
        } else {
            d
        }
    }

    /// Whether the forward direction replaces the smaller side by the larger.
    fn forward_grows(self) -> bool {
        self != OpKind::Five
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Forward,
    Reverse,
}

impl Direction {
    pub fn flipped(self) -> Direction {
        match self {
            Direction::Forward => Direction::Reverse,
            Direction::Reverse => Direction::Forward,
        }
    }

    fn token(self) -> &'static str {
        match self {
            Direction::Forward => "fwd",
            Direction::Reverse => "rev",
        }
    }
}

/// One application of an operation at a site of the current graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpStep {
    pub kind: OpKind,
    pub direction: Direction,
    pub site: Vec<usize>,
}

impl OpStep {
    pub fn new(kind: OpKind, direction: Direction, site: Vec<usize>) -> OpStep {
        OpStep { kind, direction, site }
    }

    /// Whether this step replaces the smaller side by the larger one.
    pub fn grows(&self) -> bool {
        self.kind.forward_grows() == (self.direction == Direction::Forward)
    }

    /// Number of site vertices the step expects.
    pub fn site_len(kind: OpKind, direction: Direction) -> usize {
        let (small, large) = sides(kind);
        if kind.forward_grows() == (direction == Direction::Forward) {
            small.n
        } else {
            large.n
        }
    }

    /// Same step with every site vertex renamed through `map`.
    pub fn mapped(&self, map: &[usize]) -> OpStep {
        OpStep { site: self.site.iter().map(|&v| map[v]).collect(), ..self.clone() }
    }
}

impl fmt::Display for OpStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "op {} {}", self.kind.number(), self.direction.token())?;
        for v in &self.site {
            write!(f, " {v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StepParseError {
    #[error("expected 'op <kind> <fwd|rev> <site...>'")]
    Shape,
    #[error("unknown operation kind {0:?}")]
    Kind(String),
    #[error("unknown direction {0:?}")]
    Direction(String),
    #[error("invalid vertex {0:?}")]
    Vertex(String),
    #[error("operation {kind} {direction} takes {expected} site vertices, got {got}")]
    SiteLength { kind: u8, direction: &'static str, expected: usize, got: usize },
}

impl FromStr for OpStep {
    type Err = StepParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let toks: Vec<&str> = s.split(' ').collect();
        if toks.len() < 3 || toks[0] != "op" {
            return Err(StepParseError::Shape);
        }
        let kind = toks[1]
            .parse::<u8>()
            .ok()
            .and_then(OpKind::from_number)
            .ok_or_else(|| StepParseError::Kind(toks[1].to_string()))?;
        let direction = match toks[2] {
            "fwd" => Direction::Forward,
            "rev" => Direction::Reverse,
            other => return Err(StepParseError::Direction(other.to_string())),
        };
        let site = toks[3..]
            .iter()
            .map(|t| {
                let ok = !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit()) && !(t.len() > 1 && t.starts_with('0'));
                ok.then(|| t.parse::<usize>().ok()).flatten().ok_or_else(|| StepParseError::Vertex(t.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let expected = OpStep::site_len(kind, direction);
        if site.len() != expected {
            return Err(StepParseError::SiteLength {
                kind: kind.number(),
                direction: direction.token(),
                expected,
                got: site.len(),
            });
        }
        Ok(OpStep { kind, direction, site })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OpError {
    #[error("site has {got} vertices, operation expects {expected}")]
    SiteLength { expected: usize, got: usize },
    #[error("site vertex {0} is out of range or repeated")]
    SiteVertex(usize),
    #[error("site does not match the pattern of {0}")]
    NotASite(String),
    #[error("triangle {0:?} is not eligible")]
    Ineligible([usize; 3]),
    #[error("attachments {0} and {1} are joined by a single edge")]
    SingleEdgeBetweenAttachments(usize, usize),
    #[error("reverse step left an edge outside every triangle")]
    TriangleLost,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Vertex bookkeeping for one application.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabel {
    /// New label of each old vertex, `None` for deleted vertices.
    pub old_to_new: Vec<Option<usize>>,
    /// Labels of created vertices, in role order.
    pub added: Vec<usize>,
    /// Old labels of deleted vertices, in role order.
    pub removed: Vec<usize>,
}

/// Result of [`apply`].
#[derive(Clone, Debug)]
pub struct Applied {
    pub graph: Multigraph,
    pub relabel: Relabel,
    /// The step that undoes this one, anchored in the new graph.
    pub inverse: OpStep,
}

/// All triangles of `g` with their pair multiplicities.
pub fn triangles(g: &Multigraph) -> Vec<Triangle> {
    g.triangles()
}

/// A triangle is eligible if deleting one copy of each of its three edges
/// keeps every remaining edge in a triangle, or if one of its pairs is a
/// triple edge.
pub fn is_eligible_triangle(g: &Multigraph, t: [usize; 3]) -> bool {
    let [a, b, c] = t;
    if a == b || b == c || a == c || t.iter().any(|&v| v >= g.n()) {
        return false;
    }
    let pairs = [(a, b), (b, c), (a, c)];
    if pairs.iter().any(|&(u, v)| g.mult(u, v) == 0) {
        return false;
    }
    if pairs.iter().any(|&(u, v)| g.mult(u, v) >= 3) {
        return true;
    }
    let mut h = g.clone();
    for (u, v) in pairs {
        h.add_mult(u, v, -1).expect("pair is present");
    }
    h.has_triangle_property()
}

fn site_mode(named: usize) -> MatchMode {
    MatchMode::Site { named }
}

/// All applicable sites of the given operation and direction, one per
/// equivalence class under the operation's role symmetries, sorted.
pub fn find_sites(g: &Multigraph, kind: OpKind, direction: Direction) -> Vec<OpStep> {
    let (small, large) = sides(kind);
    let autos = op_automorphisms(kind);
    let grows = kind.forward_grows() == (direction == Direction::Forward);
    let mut sites: Vec<Vec<usize>> = if grows {
        let small_autos: Vec<Vec<usize>> = autos.iter().map(|p| p[..small.n].to_vec()).collect();
        embeddings(g, &small.graph(), site_mode(small.named))
            .into_iter()
            .filter(|s| small.n != 3 || small.named != 3 || is_eligible_triangle(g, [s[0], s[1], s[2]]))
            .map(|s| canonical_site(&s, &small_autos))
            .collect()
    } else {
        embeddings(g, &large.graph(), site_mode(large.named))
            .into_iter()
            .map(|s| canonical_site(&s, autos))
            .collect()
    };
    sites.sort();
    sites.dedup();
    sites.into_iter().map(|site| OpStep { kind, direction, site }).collect()
}

/// Applies `step` to `g`.
///
/// Growing steps append the new vertices after the existing ones; shrinking
/// steps delete the extra vertices and renumber the rest in order.
pub fn apply(g: &Multigraph, step: &OpStep) -> Result<Applied, OpError> {
    let (small, large) = sides(step.kind);
    let grows = step.grows();
    let expected = if grows { small.n } else { large.n };
    if step.site.len() != expected {
        return Err(OpError::SiteLength { expected, got: step.site.len() });
    }
    for (i, &v) in step.site.iter().enumerate() {
        if v >= g.n() || step.site[..i].contains(&v) {
            return Err(OpError::SiteVertex(v));
        }
    }
    let site = &step.site;
    let side_name = || format!("op {} {}", step.kind.number(), step.direction.token());

    if grows {
        if !is_embedding(g, &small.graph(), site_mode(small.named), site) {
            return Err(OpError::NotASite(side_name()));
        }
        if small.named == 3 && small.n == 3 && !is_eligible_triangle(g, [site[0], site[1], site[2]]) {
            return Err(OpError::Ineligible([site[0], site[1], site[2]]));
        }
        if step.kind == OpKind::Four && g.mult(site[0], site[1]) == 1 {
            return Err(OpError::SingleEdgeBetweenAttachments(site[0], site[1]));
        }
        let extra = large.n - small.n;
        let mut h = g.with_new_vertices(extra);
        for &(a, b, k) in small.edges {
            h.add_mult(site[a], site[b], -(k as i64))?;
        }
        let added: Vec<usize> = (g.n()..g.n() + extra).collect();
        let role = |r: usize| if r < small.n { site[r] } else { added[r - small.n] };
        for &(a, b, k) in large.edges {
            h.add_mult(role(a), role(b), k as i64)?;
        }
        let full: Vec<usize> = (0..large.n).map(role).collect();
        Ok(Applied {
            graph: h,
            relabel: Relabel { old_to_new: (0..g.n()).map(Some).collect(), added, removed: Vec::new() },
            inverse: OpStep { kind: step.kind, direction: step.direction.flipped(), site: full },
        })
    } else {
        if !is_embedding(g, &large.graph(), site_mode(large.named), site) {
            return Err(OpError::NotASite(side_name()));
        }
        let mut h = g.clone();
        for &(a, b, k) in large.edges {
            h.add_mult(site[a], site[b], -(k as i64))?;
        }
        for &(a, b, k) in small.edges {
            h.add_mult(site[a], site[b], k as i64)?;
        }
        let removed: Vec<usize> = site[small.n..].to_vec();
        let (h, old_to_new) = h.without_vertices(&removed);
        if small.named == 3 && g.has_triangle_property() && !h.has_triangle_property() {
            return Err(OpError::TriangleLost);
        }
        let prefix: Vec<usize> = site[..small.n].iter().map(|&v| old_to_new[v].unwrap()).collect();
        Ok(Applied {
            graph: h,
            relabel: Relabel { old_to_new, added: Vec::new(), removed },
            inverse: OpStep { kind: step.kind, direction: step.direction.flipped(), site: prefix },
        })
    }
}

/// Failure of step `index` during a replay.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("step {index} ({step}) failed: {source}")]
pub struct ReplayError {
    pub index: usize,
    pub step: OpStep,
    #[source]
    pub source: OpError,
}

/// Applies `steps` in order, starting from `base`.
pub fn replay(base: &Multigraph, steps: &[OpStep]) -> Result<Multigraph, ReplayError> {
    Ok(replay_trace(base, steps)?.0)
}

/// Like [`replay`], also returning the relabeling of every step.
pub fn replay_trace(base: &Multigraph, steps: &[OpStep]) -> Result<(Multigraph, Vec<Relabel>), ReplayError> {
    let mut g = base.clone();
    let mut trail = Vec::with_capacity(steps.len());
    for (index, step) in steps.iter().enumerate() {
        let applied = apply(&g, step).map_err(|source| ReplayError { index, step: step.clone(), source })?;
        g = applied.graph;
        trail.push(applied.relabel);
    }
    Ok((g, trail))
}

/// Transports a step sequence valid from `from` to one valid from `to`,
/// given an isomorphism `iso` (`to.mult(iso[u], iso[v]) == from.mult(u, v)`).
/// Both replays run side by side, so the final graphs are isomorphic too.
pub fn rebase_steps(
    from: &Multigraph,
    to: &Multigraph,
    iso: &[usize],
    steps: &[OpStep],
) -> Result<Vec<OpStep>, ReplayError> {
    let mut a = from.clone();
    let mut b = to.clone();
    let mut map = iso.to_vec();
    let mut out = Vec::with_capacity(steps.len());
    for (index, step) in steps.iter().enumerate() {
        let wrap = |source| ReplayError { index, step: step.clone(), source };
        let moved = step.mapped(&map);
        let ra = apply(&a, step).map_err(wrap)?;
        let rb = apply(&b, &moved).map_err(wrap)?;
        map = compose_after(&map, &ra.relabel, &rb.relabel);
        a = ra.graph;
        b = rb.graph;
        out.push(moved);
    }
    Ok(out)
}

/// Given `map: V(A) -> V(B)` and the relabelings of the same step applied to
/// both, the induced map between the two results.
pub(crate) fn compose_after(map: &[usize], ra: &Relabel, rb: &Relabel) -> Vec<usize> {
    let n_new = ra.old_to_new.iter().flatten().count() + ra.added.len();
    let mut next = vec![usize::MAX; n_new];
    for (v, new_a) in ra.old_to_new.iter().enumerate() {
        if let Some(new_a) = new_a {
            next[*new_a] = rb.old_to_new[map[v]].expect("corresponding vertex survives");
        }
    }
    for (a, b) in ra.added.iter().zip(&rb.added) {
        next[*a] = *b;
    }
    next
}
