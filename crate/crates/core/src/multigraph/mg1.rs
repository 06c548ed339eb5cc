//! The `MG1` text format.
//!
//! ```text
//! mg <n> <p>
//! <u> <v> <k>      (p lines, u < v, lexicographic, 1 <= k <= 4)
//! ```

use std::fmt::Write as _;

use super::{GraphError, Multigraph, MAX_MULTIPLICITY};

pub(super) fn write(g: &Multigraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "mg {} {}", g.n(), g.pair_count());
    for (u, v, k) in g.pairs() {
        let _ = writeln!(out, "{u} {v} {k}");
    }
    out
}

fn err(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse { line, msg: msg.into() }
}

fn fields<const N: usize>(line: &str, lineno: usize) -> Result<[&str; N], GraphError> {
    let parts: Vec<&str> = line.split(' ').collect();
    if parts.len() != N || parts.iter().any(|p| p.is_empty()) {
        return Err(err(lineno, format!("expected {N} fields separated by single spaces")));
    }
    Ok(parts.try_into().unwrap())
}

fn number(tok: &str, lineno: usize) -> Result<usize, GraphError> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) || (tok.len() > 1 && tok.starts_with('0')) {
        return Err(err(lineno, format!("invalid number {tok:?}")));
    }
    tok.parse().map_err(|_| err(lineno, format!("invalid number {tok:?}")))
}

pub(super) fn parse(text: &str) -> Result<Multigraph, GraphError> {
    let body = text
        .strip_suffix('\n')
        .ok_or_else(|| err(0, "input must end with a newline"))?;
    let lines: Vec<&str> = body.split('\n').collect();
    let [tag, n, p] = fields::<3>(lines[0], 1)?;
    if tag != "mg" {
        return Err(err(1, "header must start with 'mg'"));
    }
    let n = number(n, 1)?;
    let p = number(p, 1)?;
    if lines.len() != p + 1 {
        return Err(err(lines.len().min(p + 1) + 1, format!("expected exactly {p} pair lines")));
    }
    let mut g = Multigraph::empty(n);
    let mut last: Option<(usize, usize)> = None;
    for (i, line) in lines[1..].iter().enumerate() {
        let lineno = i + 2;
        let [u, v, k] = fields::<3>(line, lineno)?;
        let (u, v, k) = (number(u, lineno)?, number(v, lineno)?, number(k, lineno)?);
        if u == v {
            return Err(err(lineno, format!("loop at vertex {u}")));
        }
        if u > v {
            return Err(err(lineno, "pair must be written with u < v"));
        }
        if v >= n {
            return Err(err(lineno, format!("vertex {v} out of range")));
        }
        if !(1..=MAX_MULTIPLICITY as usize).contains(&k) {
            return Err(err(lineno, format!("multiplicity {k} outside 1..=4")));
        }
        if let Some(prev) = last {
            if prev == (u, v) {
                return Err(err(lineno, format!("duplicate pair {u} {v}")));
            }
            if prev > (u, v) {
                return Err(err(lineno, "pairs out of lexicographic order"));
            }
        }
        last = Some((u, v));
        g.add_mult(u, v, k as i64).map_err(|e| err(lineno, e.to_string()))?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writes_exact_bytes() {
        let g = Multigraph::from_edges(3, [(1, 2, 3), (0, 1, 1)]).unwrap();
        assert_eq!(g.to_mg1(), "mg 3 2\n0 1 1\n1 2 3\n");
        assert_eq!(Multigraph::empty(2).to_mg1(), "mg 2 0\n");
    }

    #[test]
    fn parses_what_it_writes() {
        let text = "mg 4 3\n0 1 2\n0 3 1\n2 3 4\n";
        let g = parse(text).unwrap();
        assert_eq!(write(&g), text);
    }

    #[test]
    fn rejects_malformed_input() {
        let bad = [
            "mg 3 1\n0 1 1",           // no trailing newline
            "mg 3 1\n0 1 1\n\n",       // trailing blank line
            "mg 3 2\n0 1 1\n0 1 1\n",  // duplicate
            "mg 3 2\n1 2 1\n0 1 1\n",  // out of order
            "mg 3 1\n1 1 1\n",         // loop
            "mg 3 1\n1 0 1\n",         // u > v
            "mg 3 1\n0 1 5\n",         // multiplicity
            "mg 3 1\n0 1 0\n",         // multiplicity
            "mg 3 1\n0 3 1\n",         // range
            "mg 3 2\n0 1 1\n",         // count mismatch
            "mg  3 1\n0 1 1\n",        // double space
            "graph 3 0\n",
            "mg 3 1\n0 1 x\n",
        ];
        for text in bad {
            assert!(parse(text).is_err(), "accepted {text:?}");
        }
    }
}
