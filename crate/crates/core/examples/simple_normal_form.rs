//! Simple graphs in the class are squared cycles or come from the line
//! multigraph of a cubic multigraph by Operation 2 alone.

use quartic_tp::enumerate::enumerate_quartic_tp;
use quartic_tp::recognize::classify_simple;

fn main() {
    let report = enumerate_quartic_tp(8).unwrap();
    for g in report.graphs().iter().filter(|g| g.is_simple() && g.n() >= 5) {
        let cert = classify_simple(g).unwrap();
        let c = &cert.classification;
        print!("{}: {}", cert.input, c.summary());
        if let Some(root) = c.base.root() {
            print!(" (root simple: {})", root.is_simple());
        }
        println!();
    }
}
