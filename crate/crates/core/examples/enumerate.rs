//! Enumerates the class up to a vertex bound and compares it with the
//! closure of the base families under the five operations.

use std::time::Instant;

use quartic_tp::enumerate::{enumerate_cubic_multigraphs, enumerate_quartic_tp, structure_theorem_codes};

fn main() {
    let max_n: usize = std::env::args().nth(1).map(|a| a.parse().unwrap()).unwrap_or(8);

    let start = Instant::now();
    let report = enumerate_quartic_tp(max_n).unwrap();
    for n in 2..=max_n {
        println!("n={n}: {} classes", report.count(n));
    }
    println!("enumerated in {:.2?}", start.elapsed());

    let cubics = enumerate_cubic_multigraphs(max_n.min(8)).unwrap();
    println!("{} connected cubic multigraphs on at most {} vertices", cubics.len(), max_n.min(8));

    let found: std::collections::BTreeSet<_> = report.codes().cloned().collect();
    let described = structure_theorem_codes(max_n);
    println!("closure of the base families matches: {}", found == described);
}
