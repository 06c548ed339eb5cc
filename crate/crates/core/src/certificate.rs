//! Classification results and their replayable certificates.
//!
//! A certificate names a base graph and a list of operation steps. Checking
//! one needs nothing but the base constructors, [`replay`] and isomorphism,
//! so it is independent of how the classifier found it.
//!
//! ```text
//! cert v1
//! input <canonical code, hex>
//! base squared-cycle <n> | base five-vertex | base line-of-cubic
//! [MG1 block of the cubic root, only after line-of-cubic]
//! op <k> <fwd|rev> <site...>     (zero or more)
//! end
//! ```

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::families::{five_vertex_exception, line_multigraph, squared_cycle};
use crate::multigraph::{CanonicalCode, GraphError, Multigraph};
use crate::operations::{replay_trace, OpKind, OpStep, Relabel, ReplayError};

/// The starting graph of a classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Base {
    SquaredCycle(usize),
    FiveVertexException,
    /// Line multigraph of the given connected cubic multigraph.
    FromCubicLineMultigraph(Multigraph),
}

impl Base {
    pub fn graph(&self) -> Multigraph {
        match self {
            Base::SquaredCycle(n) => squared_cycle(*n).expect("squared cycle length checked on construction"),
            Base::FiveVertexException => five_vertex_exception(),
            Base::FromCubicLineMultigraph(m) => line_multigraph(m),
        }
    }

    pub fn root(&self) -> Option<&Multigraph> {
        match self {
            Base::FromCubicLineMultigraph(m) => Some(m),
            _ => None,
        }
    }
}

/// A base graph together with the steps that rebuild the classified graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub base: Base,
    pub steps: Vec<OpStep>,
}

impl Classification {
    pub fn replay(&self) -> Result<Multigraph, ReplayError> {
        Ok(replay_trace(&self.base.graph(), &self.steps)?.0)
    }

    /// One-line summary, e.g. `squared-cycle n=12` or
    /// `line-of-cubic root-n=4 op2-steps=0`.
    pub fn summary(&self) -> String {
        match &self.base {
            Base::SquaredCycle(n) if self.steps.is_empty() => format!("squared-cycle n={n}"),
            Base::SquaredCycle(n) => format!("squared-cycle n={n} steps={}", self.steps.len()),
            Base::FiveVertexException if self.steps.is_empty() => "five-vertex".to_string(),
            Base::FiveVertexException => format!("five-vertex steps={}", self.steps.len()),
            Base::FromCubicLineMultigraph(m) => {
                let mut s = format!("line-of-cubic root-n={}", m.n());
                let counts = OpKind::ALL.map(|k| self.steps.iter().filter(|st| st.kind == k).count());
                if self.steps.iter().all(|st| st.kind == OpKind::Two) {
                    s.push_str(&format!(" op2-steps={}", counts[1]));
                } else {
                    for (k, c) in OpKind::ALL.iter().zip(counts) {
                        if c > 0 {
                            s.push_str(&format!(" op{}-steps={c}", k.number()));
                        }
                    }
                }
                s
            }
        }
    }
}

/// A classification bound to the graph it classifies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub input: CanonicalCode,
    pub classification: Classification,
    /// Vertex bookkeeping of each step during replay; not serialized.
    pub trail: Vec<Relabel>,
}

impl Certificate {
    /// Builds a certificate for `classification`, recording its replay trail.
    pub fn new(input: CanonicalCode, classification: Classification) -> Result<Certificate, ReplayError> {
        let (_, trail) = replay_trace(&classification.base.graph(), &classification.steps)?;
        Ok(Certificate { input, classification, trail })
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "cert v1")?;
        writeln!(f, "input {}", self.input)?;
        match &self.classification.base {
            Base::SquaredCycle(n) => writeln!(f, "base squared-cycle {n}")?,
            Base::FiveVertexException => writeln!(f, "base five-vertex")?,
            Base::FromCubicLineMultigraph(m) => {
                writeln!(f, "base line-of-cubic")?;
                f.write_str(&m.to_mg1())?;
            }
        }
        for step in &self.classification.steps {
            writeln!(f, "{step}")?;
        }
        writeln!(f, "end")
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("certificate line {line}: {msg}")]
pub struct CertParseError {
    pub line: usize,
    pub msg: String,
}

impl FromStr for Certificate {
    type Err = CertParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = |line: usize, msg: &str| CertParseError { line, msg: msg.to_string() };
        let body = text.strip_suffix('\n').ok_or_else(|| err(0, "input must end with a newline"))?;
        let lines: Vec<&str> = body.split('\n').collect();
        let mut at = 0;
        let mut next = |what: &str| {
            let line = lines.get(at).copied().ok_or_else(|| err(at + 1, &format!("missing {what}")));
            at += 1;
            line.map(|l| (at, l))
        };

        let (ln, header) = next("header")?;
        if header != "cert v1" {
            return Err(err(ln, "expected 'cert v1'"));
        }
        let (ln, input) = next("input line")?;
        let input = input
            .strip_prefix("input ")
            .filter(|h| !h.is_empty() && h.bytes().all(|b| matches!(b, b'0'..=b'9' | b'a'..=b'f')))
            .and_then(CanonicalCode::from_hex)
            .ok_or_else(|| err(ln, "expected 'input <lowercase hex>'"))?;

        let (ln, base_line) = next("base line")?;
        let base = match base_line.split(' ').collect::<Vec<_>>().as_slice() {
            ["base", "squared-cycle", n] => {
                let n: usize = n
                    .parse()
                    .ok()
                    .filter(|v: &usize| *v >= 3 && v.to_string() == *n)
                    .ok_or_else(|| err(ln, "invalid squared cycle length"))?;
                Base::SquaredCycle(n)
            }
            ["base", "five-vertex"] => Base::FiveVertexException,
            ["base", "line-of-cubic"] => {
                let (ln, mg_header) = next("root header")?;
                let pairs: usize = mg_header
                    .split(' ')
                    .nth(2)
                    .and_then(|p| p.parse().ok())
                    .ok_or_else(|| err(ln, "expected root 'mg <n> <p>' header"))?;
                let mut block = String::from(mg_header);
                block.push('\n');
                for _ in 0..pairs {
                    let (_, l) = next("root pair line")?;
                    block.push_str(l);
                    block.push('\n');
                }
                let m = Multigraph::from_mg1(&block).map_err(|e| err(ln, &format!("root: {e}")))?;
                Base::FromCubicLineMultigraph(m)
            }
            _ => return Err(err(ln, "unknown base")),
        };

        let mut steps = Vec::new();
        loop {
            let (ln, line) = next("'end'")?;
            if line == "end" {
                if at != lines.len() {
                    return Err(err(at + 1, "content after 'end'"));
                }
                break;
            }
            steps.push(line.parse::<OpStep>().map_err(|e| err(ln, &e.to_string()))?);
        }
        Ok(Certificate { input, classification: Classification { base, steps }, trail: Vec::new() })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("root is not a connected cubic multigraph")]
    BadRoot,
    #[error("certificate does not replay: {0}")]
    Replay(#[from] ReplayError),
    #[error("replayed graph is not isomorphic to the input")]
    Mismatch,
    #[error("input code in the certificate does not match the graph")]
    InputCode,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Checks `cert` against `g`: the recorded input code must be the code of
/// `g`, and replaying the steps from the base must give a graph isomorphic
/// to `g`.
pub fn verify(g: &Multigraph, cert: &Certificate) -> Result<(), VerifyError> {
    if let Base::FromCubicLineMultigraph(m) = &cert.classification.base {
        if !m.is_k_regular(3) || !m.is_connected() {
            return Err(VerifyError::BadRoot);
        }
    }
    if g.canonical_code()? != cert.input {
        return Err(VerifyError::InputCode);
    }
    let rebuilt = cert.classification.replay()?;
    if !rebuilt.is_isomorphic(g)? {
        return Err(VerifyError::Mismatch);
    }
    Ok(())
}
