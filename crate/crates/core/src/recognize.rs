//! Triangle-property tests and the structural classifier.
//!
//! [`classify`] rewrites a connected quartic graph with the triangle property
//! back to one of three kinds of base graph (a squared cycle, the 5-vertex
//! exception, or the line multigraph of a cubic multigraph) and returns the
//! forward steps that rebuild it. The route:
//!
//! 1. undo Operations 1 to 4 while any of their larger sides occurs;
//! 2. if what is left has no simple induced diamond, strip it to a simple
//!    line graph by deleting one vertex of every double edge and thinning
//!    every triple edge, and invert that line graph through its clique
//!    partition;
//! 3. restore the deleted twins and triple edges on the root, which turns it
//!    into a cubic multigraph `M`; Operation 5 on `L(M)` brings the triple
//!    edges back.
//!
//! [`classify_simple`] follows the stricter route for simple graphs, where
//! every Operation 1 is folded into the cubic root and only Operation 2
//! remains.

use thiserror::Error;

use crate::certificate::{Base, Certificate, Classification};
use crate::families::{edge_instance_index, five_vertex_exception, line_multigraph, squared_cycle};
use crate::multigraph::{GraphError, Multigraph};
use crate::operations::{
    apply, contains, find_sites, rebase_steps, Applied, CatalogPattern, Direction, OpKind, OpStep, Relabel,
    ReplayError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph is not 4-regular")]
    NotQuartic,
    #[error("some edge lies in no triangle")]
    NoTriangleProperty,
    #[error("graph has {0} vertices, need at least {1}")]
    TooSmall(usize, usize),
    #[error("graph has multiple edges")]
    NotSimple,
    #[error("vertex {0} lies on two multiple edges")]
    MultipleEdgesNotMatching(usize),
    #[error("double edge {0}-{1} joins vertices with different neighbourhoods")]
    NotTwins(usize, usize),
    #[error("not a line graph of a triangle-free graph: {0}")]
    NotLineGraph(String),
    #[error("not in class: {0}")]
    NotInClass(String),
    #[error(transparent)]
    Replay(#[from] ReplayError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Every present pair has a common neighbour.
pub fn has_triangle_property(g: &Multigraph) -> bool {
    g.has_triangle_property()
}

/// No open neighbourhood graph has an isolated vertex. Equivalent to the
/// triangle property; kept separate so the two can be checked against
/// each other.
pub fn neighborhood_criterion(g: &Multigraph) -> bool {
    (0..g.n()).all(|v| {
        let h = g.open_neighborhood_graph(v);
        (0..h.n()).all(|u| h.degree(u) > 0)
    })
}

pub fn contains_k113(g: &Multigraph) -> bool {
    contains(g, CatalogPattern::K113)
}

fn validate(g: &Multigraph, min_n: usize) -> Result<(), ClassifyError> {
    if g.n() < min_n {
        return Err(ClassifyError::TooSmall(g.n(), min_n));
    }
    if !g.is_connected() {
        return Err(ClassifyError::NotConnected);
    }
    if !g.is_k_regular(4) {
        return Err(ClassifyError::NotQuartic);
    }
    if !g.has_triangle_property() {
        return Err(ClassifyError::NoTriangleProperty);
    }
    Ok(())
}

/// Order in which reverse operations are tried during reduction.
pub const REDUCTION_ORDER: [OpKind; 4] = [OpKind::Two, OpKind::One, OpKind::Three, OpKind::Four];

/// Outcome of undoing operations until none applies.
#[derive(Clone, Debug)]
pub struct Reduction {
    /// The reduced graph.
    pub graph: Multigraph,
    /// Reverse steps, in the order they were applied to the input.
    pub reverse_steps: Vec<OpStep>,
    /// Forward steps that rebuild the input when replayed from `graph`.
    pub forward_steps: Vec<OpStep>,
    /// `map[v]` is the vertex of the rebuilt graph that plays input vertex `v`.
    pub map: Vec<usize>,
}

/// Undoes Operations 1 to 4 until none of their larger sides is left.
pub fn reduce(g: &Multigraph) -> Result<Reduction, ClassifyError> {
    validate(g, 3)?;
    Ok(reduce_with(g, &REDUCTION_ORDER))
}

/// Applies a reverse step only if the matching forward step is valid on the
/// result, so that the recorded chain can always be replayed.
fn guarded(g: &Multigraph, step: &OpStep) -> Option<Applied> {
    let out = apply(g, step).ok()?;
    if !out.graph.has_triangle_property() || apply(&out.graph, &out.inverse).is_err() {
        return None;
    }
    Some(out)
}

fn reduce_with(g: &Multigraph, kinds: &[OpKind]) -> Reduction {
    let mut cur = g.clone();
    let mut history = Vec::new();
    let mut reverse_steps = Vec::new();
    'outer: loop {
        for &kind in kinds {
            for step in find_sites(&cur, kind, Direction::Reverse) {
                if let Some(out) = guarded(&cur, &step) {
                    reverse_steps.push(step);
                    cur = out.graph.clone();
                    history.push(out);
                    continue 'outer;
                }
            }
        }
        break;
    }
    let (forward_steps, map) = unwind(&cur, &history);
    Reduction { graph: cur, reverse_steps, forward_steps, map }
}

/// Replays the inverses of `history` from `last` and tracks which vertex of
/// the replay corresponds to each vertex of the first graph.
fn unwind(last: &Multigraph, history: &[Applied]) -> (Vec<OpStep>, Vec<usize>) {
    let mut cur = last.clone();
    let mut phi: Vec<usize> = (0..last.n()).collect();
    let mut steps = Vec::with_capacity(history.len());
    for done in history.iter().rev() {
        let step = done.inverse.mapped(&phi);
        let out = apply(&cur, &step).expect("guarded steps have valid inverses");
        let rel = &done.relabel;
        let mut next = vec![usize::MAX; rel.old_to_new.len()];
        for (v, w) in rel.old_to_new.iter().enumerate() {
            if let Some(w) = w {
                next[v] = out.relabel.old_to_new[phi[*w]].expect("kept vertex survives the inverse");
            }
        }
        for (&v, &a) in rel.removed.iter().zip(&out.relabel.added) {
            next[v] = a;
        }
        phi = next;
        cur = out.graph;
        steps.push(step);
    }
    (steps, phi)
}

/// `n` such that `g` is isomorphic to the squared `n`-cycle.
pub fn recognize_squared_cycle(g: &Multigraph) -> Option<usize> {
    let n = g.n();
    if n < 3 || !g.is_k_regular(4) {
        return None;
    }
    let target = squared_cycle(n).ok()?;
    if n <= crate::multigraph::MAX_CANON_VERTICES {
        return g.is_isomorphic(&target).ok()?.then_some(n);
    }
    squared_cycle_order(g).map(|_| n)
}

/// For simple graphs on at least 7 vertices: a cyclic order `order` with
/// `order[i]` adjacent exactly to `order[i ± 1]` and `order[i ± 2]`.
fn squared_cycle_order(g: &Multigraph) -> Option<Vec<usize>> {
    let n = g.n();
    if n < 7 || !g.is_simple() {
        return None;
    }
    for v1 in g.neighbors(0) {
        for v2 in g.neighbors(v1).filter(|&w| w != 0 && g.mult(0, w) > 0) {
            let mut order = vec![0, v1, v2];
            let mut used = vec![false; n];
            for &v in &order {
                used[v] = true;
            }
            while order.len() < n {
                let (a, b) = (order[order.len() - 2], order[order.len() - 1]);
                let next: Vec<usize> = g.neighbors(b).filter(|&w| !used[w] && g.mult(a, w) > 0).collect();
                if next.len() != 1 {
                    break;
                }
                used[next[0]] = true;
                order.push(next[0]);
            }
            if order.len() == n
                && (0..n).all(|i| g.mult(order[i], order[(i + 1) % n]) == 1 && g.mult(order[i], order[(i + 2) % n]) == 1)
            {
                return Some(order);
            }
        }
    }
    None
}

/// A simple graph obtained by deleting one vertex of every double edge and
/// reducing every triple edge to a single edge.
#[derive(Clone, Debug)]
pub struct Simplified {
    pub graph: Multigraph,
    /// `kept[i]` is the input vertex that became vertex `i`.
    pub kept: Vec<usize>,
    /// `(survivor, deleted)` for every double edge.
    pub twins: Vec<(usize, usize)>,
    /// Pairs whose multiplicity went from 3 to 1, in input labels.
    pub triples: Vec<(usize, usize)>,
}

pub fn simplify_for_inverse(g: &Multigraph) -> Result<Simplified, ClassifyError> {
    let mut on_multiple = vec![false; g.n()];
    let mut twins = Vec::new();
    let mut triples = Vec::new();
    for (u, v, k) in g.pairs() {
        if k < 2 {
            continue;
        }
        for w in [u, v] {
            if on_multiple[w] {
                return Err(ClassifyError::MultipleEdgesNotMatching(w));
            }
            on_multiple[w] = true;
        }
        match k {
            2 => {
                let same = (0..g.n()).filter(|&w| w != u && w != v).all(|w| g.mult(u, w) == g.mult(v, w));
                if !same {
                    return Err(ClassifyError::NotTwins(u, v));
                }
                twins.push((u, v));
            }
            3 => triples.push((u, v)),
            _ => return Err(ClassifyError::NotInClass(format!("pair {u}-{v} has multiplicity {k}"))),
        }
    }
    let deleted: Vec<usize> = twins.iter().map(|&(_, v)| v).collect();
    let mut h = g.clone();
    for &(a, b) in &triples {
        h.add_mult(a, b, -2)?;
    }
    let (graph, old_to_new) = h.without_vertices(&deleted);
    let mut kept = vec![0; graph.n()];
    for (v, new) in old_to_new.iter().enumerate() {
        if let Some(i) = new {
            kept[*i] = v;
        }
    }
    Ok(Simplified { graph, kept, twins, triples })
}

/// The triangle-free graph whose line graph is `s`.
pub fn inverse_line_graph_triangle_free(s: &Multigraph) -> Result<Multigraph, ClassifyError> {
    Ok(krausz_root(s)?.0)
}

/// Root graph of a simple line graph together with the root edge of each
/// vertex of `s`. Root vertices are the maximal cliques of `s` in sorted
/// order, followed by one pendant vertex for each vertex of `s` that lies in
/// a single clique.
fn krausz_root(s: &Multigraph) -> Result<(Multigraph, Vec<(usize, usize)>), ClassifyError> {
    let bad = |msg: &str| ClassifyError::NotLineGraph(msg.to_string());
    if !s.is_simple() {
        return Err(bad("graph has multiple edges"));
    }
    if s.n() == 0 || !s.is_connected() {
        return Err(bad("graph is empty or disconnected"));
    }
    for v in 0..s.n() {
        let nb: Vec<usize> = s.neighbors(v).collect();
        for (i, &a) in nb.iter().enumerate() {
            for (j, &b) in nb.iter().enumerate().skip(i + 1) {
                if s.mult(a, b) > 0 {
                    continue;
                }
                if nb[j + 1..].iter().any(|&c| s.mult(a, c) == 0 && s.mult(b, c) == 0) {
                    return Err(bad("induced K_{1,3}"));
                }
            }
        }
    }
    if contains(s, CatalogPattern::SimpleK4Minus) {
        return Err(bad("induced K4 minus an edge"));
    }

    let cliques = maximal_cliques(s);
    let mut member: Vec<Vec<usize>> = vec![Vec::new(); s.n()];
    for (c, clique) in cliques.iter().enumerate() {
        for &v in clique {
            member[v].push(c);
        }
    }
    let mut next = cliques.len();
    let mut edge_of = Vec::with_capacity(s.n());
    for (v, cs) in member.iter().enumerate() {
        match cs.as_slice() {
            [a, b] => edge_of.push((*a, *b)),
            [a] => {
                edge_of.push((*a, next));
                next += 1;
            }
            _ => return Err(bad(&format!("vertex {v} lies in {} maximal cliques", cs.len()))),
        }
    }
    let root = Multigraph::from_edges(next, edge_of.iter().map(|&(a, b)| (a, b, 1)))
        .map_err(|e| bad(&e.to_string()))?;
    for u in 0..s.n() {
        for v in u + 1..s.n() {
            let (a, b) = (edge_of[u], edge_of[v]);
            let shared = [a.0, a.1].iter().filter(|&&x| x == b.0 || x == b.1).count();
            if shared != s.mult(u, v) as usize {
                return Err(bad("clique partition does not reproduce the graph"));
            }
        }
    }
    Ok((root, edge_of))
}

/// Maximal cliques of a simple graph (Bron–Kerbosch with pivoting), each
/// sorted, in lexicographic order.
fn maximal_cliques(s: &Multigraph) -> Vec<Vec<usize>> {
    fn rec(s: &Multigraph, r: &mut Vec<usize>, mut p: Vec<usize>, mut x: Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if p.is_empty() && x.is_empty() {
            let mut c = r.clone();
            c.sort_unstable();
            out.push(c);
            return;
        }
        let pivot = p
            .iter()
            .chain(&x)
            .copied()
            .max_by_key(|&u| (p.iter().filter(|&&w| s.mult(u, w) > 0).count(), std::cmp::Reverse(u)))
            .expect("p or x is non-empty");
        let candidates: Vec<usize> = p.iter().copied().filter(|&v| s.mult(pivot, v) == 0).collect();
        for v in candidates {
            let np = p.iter().copied().filter(|&w| s.mult(v, w) > 0).collect();
            let nx = x.iter().copied().filter(|&w| s.mult(v, w) > 0).collect();
            r.push(v);
            rec(s, r, np, nx, out);
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
    }
    let mut out = Vec::new();
    rec(s, &mut Vec::new(), (0..s.n()).collect(), Vec::new(), &mut out);
    out.sort();
    out
}

/// A cubic root `M` and the Operation 5 steps that turn `L(M)` into a given
/// graph.
#[derive(Clone, Debug)]
pub struct LineRoot {
    pub root: Multigraph,
    /// Forward Operation 5 steps, replayed from `L(root)`.
    pub op5_steps: Vec<OpStep>,
    /// `map[v]`: vertex of the replayed graph that plays input vertex `v`.
    pub map: Vec<usize>,
}

/// Rebuilds the cubic root of a reduced graph containing no simple induced
/// diamond.
pub fn reconstruct_line_root(g: &Multigraph) -> Result<LineRoot, ClassifyError> {
    let sim = simplify_for_inverse(g)?;
    let (f, edge_of) = krausz_root(&sim.graph)?;
    let mut s_index = vec![None; g.n()];
    for (i, &v) in sim.kept.iter().enumerate() {
        s_index[v] = Some(i);
    }
    let s_of = |v: usize| s_index[v].expect("vertex survives simplification");

    let mut m = f.clone();
    for &(keep, _) in &sim.twins {
        let (p, q) = edge_of[s_of(keep)];
        m.add_mult(p, q, 1)?;
    }
    let pendant = |v: usize| {
        let (p, q) = edge_of[s_of(v)];
        [q, p].into_iter().find(|&w| f.degree(w) == 1)
    };
    let mut repairs = Vec::with_capacity(sim.triples.len());
    for &(a, b) in &sim.triples {
        let (Some(pa), Some(pb)) = (pendant(a), pendant(b)) else {
            return Err(ClassifyError::NotInClass(format!("triple edge {a}-{b} has no pendant root edges")));
        };
        m.add_mult(pa, pb, 2)?;
        repairs.push((a, b, pa, pb));
    }
    if !m.is_k_regular(3) || !m.is_connected() {
        return Err(ClassifyError::NotInClass("rebuilt root is not a connected cubic multigraph".into()));
    }

    let h = line_multigraph(&m);
    let inst = |p: usize, q: usize, copy: usize| edge_instance_index(&m, p, q, copy).expect("root edge exists");
    let mut in_h = vec![usize::MAX; g.n()];
    for (i, &v) in sim.kept.iter().enumerate() {
        let (p, q) = edge_of[i];
        in_h[v] = inst(p, q, 0);
    }
    for &(keep, gone) in &sim.twins {
        let (p, q) = edge_of[s_of(keep)];
        in_h[gone] = inst(p, q, 1);
    }

    let mut pos: Vec<Option<usize>> = (0..h.n()).map(Some).collect();
    let mut cur = h;
    let mut op5_steps = Vec::new();
    for (a, b, pa, pb) in repairs {
        let x = (0..g.n())
            .find(|&w| w != a && w != b && g.mult(a, w) > 0)
            .expect("triple edge lies in a triangle");
        let site: Vec<usize> = [in_h[x], in_h[a], in_h[b], inst(pa, pb, 0), inst(pa, pb, 1)]
            .iter()
            .map(|&v| pos[v].expect("site vertices are not deleted earlier"))
            .collect();
        let step = OpStep::new(OpKind::Five, Direction::Forward, site);
        let out = apply(&cur, &step).map_err(|e| ClassifyError::NotInClass(format!("restoring triple edge: {e}")))?;
        for p in pos.iter_mut() {
            *p = p.and_then(|v| out.relabel.old_to_new[v]);
        }
        cur = out.graph;
        op5_steps.push(step);
    }
    let map: Vec<usize> = in_h.iter().map(|&v| pos[v].expect("input vertex survives")).collect();
    if cur.n() != g.n() || !is_exact_map(g, &cur, &map) {
        return Err(ClassifyError::NotInClass("reconstruction does not reproduce the graph".into()));
    }
    Ok(LineRoot { root: m, op5_steps, map })
}

fn is_exact_map(g: &Multigraph, h: &Multigraph, map: &[usize]) -> bool {
    (0..g.n()).all(|u| (u + 1..g.n()).all(|v| g.mult(u, v) == h.mult(map[u], map[v])))
}

/// Cubic multigraph `M` with `L(M)` equal to `h` up to the returned map
/// (`map[v]` is the vertex of `line_multigraph(&M)` playing `v`), found by
/// splitting the edges of `h` into triangles.
pub fn cubic_root(h: &Multigraph) -> Option<(Multigraph, Vec<usize>)> {
    fn split(rem: &mut Multigraph, tris: &mut Vec<[usize; 3]>) -> bool {
        let n = rem.n();
        let Some(v) = (0..n).find(|&v| rem.degree(v) > 0) else {
            return true;
        };
        let w = rem.neighbors(v).next().expect("v has an edge");
        let thirds: Vec<usize> = (0..n).filter(|&u| u != v && u != w && rem.mult(v, u) > 0 && rem.mult(w, u) > 0).collect();
        for u in thirds {
            for (a, b) in [(v, w), (v, u), (w, u)] {
                rem.add_mult(a, b, -1).expect("pair is present");
            }
            tris.push([v, w, u]);
            if split(rem, tris) {
                return true;
            }
            tris.pop();
            for (a, b) in [(v, w), (v, u), (w, u)] {
                rem.add_mult(a, b, 1).expect("restoring a removed copy");
            }
        }
        false
    }
    if !h.is_k_regular(4) || !h.is_connected() {
        return None;
    }
    let mut rem = h.clone();
    let mut tris = Vec::new();
    if !split(&mut rem, &mut tris) {
        return None;
    }
    let mut ends = vec![Vec::with_capacity(2); h.n()];
    for (t, tri) in tris.iter().enumerate() {
        for &v in tri {
            ends[v].push(t);
        }
    }
    let m = Multigraph::from_edges(tris.len(), ends.iter().map(|e| (e[0], e[1], 1))).ok()?;
    let mut used = std::collections::HashMap::new();
    let map = ends
        .iter()
        .map(|e| {
            let copy = used.entry((e[0].min(e[1]), e[0].max(e[1]))).or_insert(0);
            *copy += 1;
            edge_instance_index(&m, e[0], e[1], *copy - 1).expect("root edge exists")
        })
        .collect();
    Some((m, map))
}

/// Classifies a connected quartic graph with the triangle property and
/// returns a certificate for it. Needs at most 16 vertices for the input
/// code; [`classification`] has no size limit.
pub fn classify(g: &Multigraph) -> Result<Certificate, ClassifyError> {
    let c = classification(g)?;
    Ok(Certificate::new(g.canonical_code()?, c)?)
}

pub fn classification(g: &Multigraph) -> Result<Classification, ClassifyError> {
    validate(g, 3)?;
    if let Some(n) = recognize_squared_cycle(g) {
        return Ok(Classification { base: Base::SquaredCycle(n), steps: Vec::new() });
    }
    if g.n() == 5 && g.is_isomorphic(&five_vertex_exception())? {
        return Ok(Classification { base: Base::FiveVertexException, steps: Vec::new() });
    }
    let red = reduce_with(g, &REDUCTION_ORDER);
    let reduced = &red.graph;

    let (base, prefix, iso) = match recognize_squared_cycle(reduced) {
        Some(3) => {
            let (m, map) = cubic_root(reduced).expect("the squared 3-cycle is the line multigraph of a triple edge");
            (Base::FromCubicLineMultigraph(m), Vec::new(), map)
        }
        Some(n) => {
            let map = reduced.isomorphism_to(&squared_cycle(n).expect("n >= 3"))?.expect("recognized");
            (Base::SquaredCycle(n), Vec::new(), map)
        }
        None => {
            let lr = reconstruct_line_root(reduced)?;
            (Base::FromCubicLineMultigraph(lr.root), lr.op5_steps, lr.map)
        }
    };
    let start = crate::operations::replay(&base.graph(), &prefix)?;
    let chain = rebase_steps(reduced, &start, &iso, &red.forward_steps)?;
    let mut steps = prefix;
    steps.extend(chain);
    Ok(Classification { base, steps })
}

/// Classifies a simple graph into squared cycles (length 5 or at least 7)
/// and line multigraphs of cubic multigraphs followed by Operation 2 only.
pub fn classify_simple(g: &Multigraph) -> Result<Certificate, ClassifyError> {
    let c = simple_classification(g)?;
    Ok(Certificate::new(g.canonical_code()?, c)?)
}

pub fn simple_classification(g: &Multigraph) -> Result<Classification, ClassifyError> {
    validate(g, 5)?;
    if !g.is_simple() {
        return Err(ClassifyError::NotSimple);
    }
    if let Some(n) = recognize_squared_cycle(g).filter(|&n| n != 6) {
        return Ok(Classification { base: Base::SquaredCycle(n), steps: Vec::new() });
    }
    let r1 = reduce_with(g, &[OpKind::Two]);
    let r2 = reduce_with(&r1.graph, &[OpKind::One]);
    let g2 = &r2.graph;

    let (root, psi) = if g2.n() < 5 {
        cubic_root(g2).ok_or_else(|| ClassifyError::NotInClass("small reduced graph is not a line multigraph".into()))?
    } else {
        root_through_op5_blocks(g2)?
    };

    // Forward chain from G2: Operation 1 back to G1, then Operation 2 back to G.
    let mut chain = r2.forward_steps.clone();
    let after_op1 = crate::operations::replay(g2, &chain)?;
    chain.extend(rebase_steps(&r1.graph, &after_op1, &r2.map, &r1.forward_steps)?);

    let mut root = root;
    let mut steps = rebase_steps(g2, &line_multigraph(&root), &psi, &chain)?;
    while steps.first().is_some_and(|s| s.kind == OpKind::One && s.direction == Direction::Forward) {
        let grown = apply(&line_multigraph(&root), &steps[0]).map_err(|e| ReplayError {
            index: 0,
            step: steps[0].clone(),
            source: e,
        })?;
        let Some((m, map)) = cubic_root(&grown.graph) else {
            break;
        };
        steps = rebase_steps(&grown.graph, &line_multigraph(&m), &map, &steps[1..])?;
        root = m;
    }
    if let Some(s) = steps.iter().find(|s| s.kind != OpKind::Two) {
        return Err(ClassifyError::NotInClass(format!("step '{s}' left after folding Operation 1 into the root")));
    }
    Ok(Classification { base: Base::FromCubicLineMultigraph(root), steps })
}

/// Applies Operation 5 to every block of `g2` shaped like its larger side,
/// rebuilds the cubic root of the result, and maps `g2` onto `L(root)`:
/// each collapsed block of `g2` is the image of the pendant triangle that
/// Operation 5 collapses on the root side.
fn root_through_op5_blocks(g2: &Multigraph) -> Result<(Multigraph, Vec<usize>), ClassifyError> {
    let mut g3 = g2.clone();
    let mut trail: Vec<Relabel> = Vec::new();
    let mut collapsed = Vec::new();
    while let Some(step) = find_sites(&g3, OpKind::Five, Direction::Forward).into_iter().next() {
        let out = apply(&g3, &step).map_err(|e| ClassifyError::NotInClass(e.to_string()))?;
        collapsed.push((trail.len(), out.inverse.site.clone(), out.relabel.removed.clone()));
        trail.push(out.relabel);
        g3 = out.graph;
    }
    let lr = reconstruct_line_root(&g3)?;
    let base = line_multigraph(&lr.root);

    // Root side: L(root) -> ... -> H3, with H3 vertex lr.map[v] playing G3 vertex v.
    let mut h = base.clone();
    let mut h_trail: Vec<Relabel> = Vec::new();
    let mut h_collapsed = Vec::new();
    for step in &lr.op5_steps {
        let out = apply(&h, step).map_err(|e| ClassifyError::NotInClass(e.to_string()))?;
        h_collapsed.push((h_trail.len(), out.inverse.site.clone(), out.relabel.removed.clone()));
        h_trail.push(out.relabel);
        h = out.graph;
    }
    let forward = |trail: &[Relabel], from: usize, v: usize| {
        trail[from..].iter().try_fold(v, |v, r| r.old_to_new[v])
    };
    // Labels in the first graph of each trail, per final label.
    let back = |trail: &[Relabel], n0: usize, n_final: usize| {
        let mut origin = vec![usize::MAX; n_final];
        for v in 0..n0 {
            if let Some(w) = forward(trail, 0, v) {
                origin[w] = v;
            }
        }
        origin
    };
    let h_origin = back(&h_trail, base.n(), h.n());
    let original = |trail: &[Relabel], at: usize, v: usize| {
        (0..at).rev().try_fold(v, |v, i| trail[i].old_to_new.iter().position(|&w| w == Some(v)))
    };

    let mut psi = vec![usize::MAX; g2.n()];
    for (v, slot) in psi.iter_mut().enumerate() {
        if let Some(w) = forward(&trail, 0, v) {
            *slot = h_origin[lr.map[w]];
        }
    }
    for (at, small, removed) in &collapsed {
        let pair: Vec<usize> = small[1..]
            .iter()
            .map(|&v| forward(&trail, at + 1, v).map(|w| lr.map[w]))
            .collect::<Option<_>>()
            .ok_or_else(|| ClassifyError::NotInClass("collapsed block lost".into()))?;
        let matching = h_collapsed.iter().find(|(h_at, h_small, _)| {
            let h_pair: Option<Vec<usize>> = h_small[1..].iter().map(|&v| forward(&h_trail, h_at + 1, v)).collect();
            h_pair.is_some_and(|p| (p[0] == pair[0] && p[1] == pair[1]) || (p[0] == pair[1] && p[1] == pair[0]))
        });
        let Some((h_at, _, h_removed)) = matching else {
            return Err(ClassifyError::NotInClass("no matching block on the root side".into()));
        };
        for (&v, &w) in removed.iter().zip(h_removed) {
            let v0 = original(&trail, *at, v).expect("removed vertex exists in G2");
            let w0 = original(&h_trail, *h_at, w).expect("removed vertex exists in L(root)");
            psi[v0] = w0;
        }
    }
    if psi.contains(&usize::MAX) || !is_exact_map(g2, &base, &psi) {
        return Err(ClassifyError::NotInClass("reduced graph is not the line multigraph of the root".into()));
    }
    Ok((lr.root, psi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete_graph, cycle, doubled_pair_cubic, triple_edge, NamedBlock};

    #[test]
    fn triangle_property_examples() {
        assert!(has_triangle_property(&squared_cycle(8).unwrap()));
        assert!(!has_triangle_property(&cycle(5)));
        let quad = Multigraph::from_edges(2, [(0, 1, 4)]).unwrap();
        assert!(!has_triangle_property(&quad));
        assert!(!neighborhood_criterion(&quad));
        let star = Multigraph::from_edges(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1)]).unwrap();
        assert!(!neighborhood_criterion(&star));
        assert!(neighborhood_criterion(&complete_graph(4)));
    }

    #[test]
    fn reduce_examples() {
        let k5 = complete_graph(5);
        let r = reduce(&k5).unwrap();
        assert!(r.graph.is_isomorphic(&squared_cycle(3).unwrap()).unwrap());
        assert_eq!(r.reverse_steps.len(), 1);
        assert_eq!(r.reverse_steps[0].kind, OpKind::Two);

        let c7 = squared_cycle(7).unwrap();
        let r = reduce(&c7).unwrap();
        assert_eq!(r.graph, c7);
        assert!(r.reverse_steps.is_empty());

        let r = reduce(&five_vertex_exception()).unwrap();
        assert!(r.graph.is_isomorphic(&squared_cycle(4).unwrap()).unwrap());
        assert_eq!(r.reverse_steps.len(), 1);
        assert_eq!(r.reverse_steps[0].kind, OpKind::Four);
    }

    #[test]
    fn reduce_chain_rebuilds_input_exactly() {
        let host = glue_two(&NamedBlock::Fig8Outer.graph());
        assert!(host.is_k_regular(4) && host.has_triangle_property());
        let r = reduce(&host).unwrap();
        let rebuilt = crate::operations::replay(&r.graph, &r.forward_steps).unwrap();
        assert!(is_exact_map(&host, &rebuilt, &r.map));
    }

    #[test]
    fn squared_cycle_recognition() {
        assert_eq!(recognize_squared_cycle(&squared_cycle(9).unwrap()), Some(9));
        assert_eq!(recognize_squared_cycle(&complete_graph(5)), Some(5));
        assert_eq!(recognize_squared_cycle(&five_vertex_exception()), None);
        let big = squared_cycle(20).unwrap().relabeled(&(0..20).map(|i| (i * 7) % 20).collect::<Vec<_>>());
        assert_eq!(recognize_squared_cycle(&big), Some(20));
        let two = squared_cycle(9).unwrap().disjoint_union(&squared_cycle(9).unwrap());
        assert_eq!(recognize_squared_cycle(&two), None);
    }

    #[test]
    fn simplify_logs_twins_and_triples() {
        let l = line_multigraph(&doubled_pair_cubic());
        let s = simplify_for_inverse(&l).unwrap();
        assert_eq!(s.graph.n(), 8);
        assert_eq!(s.twins.len(), 1);
        assert!(s.graph.is_simple());

        let k4 = line_multigraph(&complete_graph(4));
        let s = simplify_for_inverse(&k4).unwrap();
        assert_eq!(s.graph, k4);
        assert!(s.twins.is_empty() && s.triples.is_empty());

        let blocks = NamedBlock::Op5Left.graph();
        let host = collapse_all_op5(&glue_two(&blocks));
        let s = simplify_for_inverse(&host).unwrap();
        assert_eq!(s.triples.len(), 2);
        for &(a, b) in &s.triples {
            assert_eq!(host.mult(a, b), 3);
        }
    }

    /// Two copies of a block sharing their attachment vertex 0.
    fn glue_two(b: &Multigraph) -> Multigraph {
        let n = b.n();
        let mut g = b.with_new_vertices(n - 1);
        for (u, v, k) in b.pairs() {
            let lift = |w: usize| if w == 0 { 0 } else { w + n - 1 };
            g.add_mult(lift(u), lift(v), k as i64).unwrap();
        }
        g
    }

    fn collapse_all_op5(g: &Multigraph) -> Multigraph {
        let mut g = g.clone();
        while let Some(s) = find_sites(&g, OpKind::Five, Direction::Forward).into_iter().next() {
            g = apply(&g, &s).unwrap().graph;
        }
        g
    }

    #[test]
    fn inverse_line_graph_examples() {
        let tri = complete_graph(3);
        let root = inverse_line_graph_triangle_free(&tri).unwrap();
        assert!(root.is_isomorphic(&Multigraph::from_edges(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1)]).unwrap()).unwrap());
        let edge = complete_graph(2);
        let root = inverse_line_graph_triangle_free(&edge).unwrap();
        assert!(root.is_isomorphic(&Multigraph::from_edges(3, [(0, 1, 1), (1, 2, 1)]).unwrap()).unwrap());
        let octahedron = squared_cycle(6).unwrap();
        assert!(matches!(inverse_line_graph_triangle_free(&octahedron), Err(ClassifyError::NotLineGraph(_))));
        let claw = Multigraph::from_edges(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1)]).unwrap();
        assert!(inverse_line_graph_triangle_free(&claw).is_err());
    }

    #[test]
    fn cubic_root_recovers_line_multigraphs() {
        for m in [triple_edge(), complete_graph(4), doubled_pair_cubic()] {
            let l = line_multigraph(&m);
            let (root, map) = cubic_root(&l).unwrap();
            assert!(root.is_isomorphic(&m).unwrap());
            assert!(is_exact_map(&l, &line_multigraph(&root), &map));
        }
        assert!(cubic_root(&squared_cycle(7).unwrap()).is_none());
    }

    #[test]
    fn classify_examples() {
        let c = classification(&squared_cycle(10).unwrap()).unwrap();
        assert_eq!(c.base, Base::SquaredCycle(10));
        assert!(c.steps.is_empty());
        let c = classification(&five_vertex_exception()).unwrap();
        assert_eq!(c.base, Base::FiveVertexException);

        let l = line_multigraph(&doubled_pair_cubic());
        let c = classification(&l).unwrap();
        // The root triangle 3-4-5 is folded away by a reverse Operation 1.
        assert_eq!(c.base.root().unwrap().n(), 4);
        assert_eq!(c.steps.len(), 1);
        assert!(c.replay().unwrap().is_isomorphic(&l).unwrap());
    }

    #[test]
    fn classify_restores_triple_edges() {
        let host = collapse_all_op5(&glue_two(&NamedBlock::Op5Left.graph()));
        let c = classification(&host).unwrap();
        assert!(matches!(c.base, Base::FromCubicLineMultigraph(_)));
        assert!(c.steps.iter().any(|s| s.kind == OpKind::Five));
        assert!(c.replay().unwrap().is_isomorphic(&host).unwrap());
    }

    #[test]
    fn classify_rejects_bad_input() {
        assert_eq!(classification(&cycle(5)).unwrap_err(), ClassifyError::NotQuartic);
        let two = squared_cycle(7).unwrap().disjoint_union(&squared_cycle(7).unwrap());
        assert_eq!(classification(&two).unwrap_err(), ClassifyError::NotConnected);
    }

    #[test]
    fn classify_simple_examples() {
        let c = simple_classification(&complete_graph(5)).unwrap();
        assert_eq!(c.base, Base::SquaredCycle(5));

        let oct = line_multigraph(&complete_graph(4));
        let c = simple_classification(&oct).unwrap();
        assert!(c.base.root().unwrap().is_isomorphic(&complete_graph(4)).unwrap());
        assert!(c.steps.is_empty());

        let mut g = oct.clone();
        let mut done = 0;
        while done < 2 {
            let site = find_sites(&g, OpKind::Two, Direction::Forward)
                .into_iter()
                .find(|s| s.site.iter().all(|&v| v < oct.n()) && (done == 0 || !s.site.contains(&0)))
                .unwrap();
            g = apply(&g, &site).unwrap().graph;
            done += 1;
        }
        let c = simple_classification(&g).unwrap();
        assert!(c.base.root().unwrap().is_isomorphic(&complete_graph(4)).unwrap());
        assert_eq!(c.steps.len(), 2);
        assert!(c.replay().unwrap().is_isomorphic(&g).unwrap());
        assert!(simple_classification(&five_vertex_exception()).is_err());
    }
}
