//! Named patterns that the recognizer and the tests look for.

use std::fmt;

use crate::families::NamedBlock;
use crate::multigraph::Multigraph;

use super::patterns::{embeddings, sides, MatchMode};
use super::OpKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CatalogPattern {
    /// Smaller side of an operation, matched as an operation site.
    SmallSide(OpKind),
    /// Larger side of an operation, matched as an operation site.
    LargeSide(OpKind),
    /// Induced diamond; the diagonal may carry any multiplicity.
    K4Minus,
    /// Induced diamond with every edge single.
    SimpleK4Minus,
    /// `K_{1,1,3}` as a (not necessarily induced) subgraph.
    K113,
    DoubleEdge,
    TripleEdge,
    /// One of the named blocks, with its attachment vertex as the only
    /// vertex allowed edges leaving the match.
    Block(NamedBlock),
}

impl CatalogPattern {
    pub fn graph(self) -> Multigraph {
        match self {
            CatalogPattern::SmallSide(k) => sides(k).0.graph(),
            CatalogPattern::LargeSide(k) => sides(k).1.graph(),
            CatalogPattern::K4Minus | CatalogPattern::SimpleK4Minus => {
                // 0-1 is the diagonal, 2-3 the missing pair.
                Multigraph::from_edges(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1)]).unwrap()
            }
            CatalogPattern::K113 => NamedBlock::K113.graph(),
            CatalogPattern::DoubleEdge => Multigraph::from_edges(2, [(0, 1, 2)]).unwrap(),
            CatalogPattern::TripleEdge => Multigraph::from_edges(2, [(0, 1, 3)]).unwrap(),
            CatalogPattern::Block(b) => b.graph(),
        }
    }

    fn mode(self) -> MatchMode {
        match self {
            CatalogPattern::SmallSide(k) => MatchMode::Site { named: sides(k).0.named },
            CatalogPattern::LargeSide(k) => MatchMode::Site { named: sides(k).1.named },
            CatalogPattern::K4Minus => MatchMode::Induced,
            CatalogPattern::SimpleK4Minus => MatchMode::InducedSimple,
            CatalogPattern::K113 => MatchMode::Subgraph,
            CatalogPattern::DoubleEdge | CatalogPattern::TripleEdge => MatchMode::Exact,
            CatalogPattern::Block(b) => MatchMode::Site { named: b.attachment().map_or(0, |a| a + 1) },
        }
    }
}

impl fmt::Display for CatalogPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogPattern::SmallSide(k) => write!(f, "op{}-small", k.number()),
            CatalogPattern::LargeSide(k) => write!(f, "op{}-large", k.number()),
            CatalogPattern::K4Minus => f.write_str("k4-minus"),
            CatalogPattern::SimpleK4Minus => f.write_str("simple-k4-minus"),
            CatalogPattern::K113 => f.write_str("k113"),
            CatalogPattern::DoubleEdge => f.write_str("double-edge"),
            CatalogPattern::TripleEdge => f.write_str("triple-edge"),
            CatalogPattern::Block(b) => write!(f, "{b}"),
        }
    }
}

/// An embedding of a catalog pattern: `embedding[i]` is the host vertex
/// playing pattern vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternMatch {
    pub pattern: CatalogPattern,
    pub embedding: Vec<usize>,
}

/// Every embedding of `pattern` in `g`, automorphic images included.
pub fn find_matches(g: &Multigraph, pattern: CatalogPattern) -> Vec<PatternMatch> {
    embeddings(g, &pattern.graph(), pattern.mode())
        .into_iter()
        .map(|embedding| PatternMatch { pattern, embedding })
        .collect()
}

pub fn contains(g: &Multigraph, pattern: CatalogPattern) -> bool {
    !find_matches(g, pattern).is_empty()
}
