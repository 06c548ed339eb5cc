//! Classifies a graph given as an MG1 file (or a built-in example) and
//! prints its certificate.
//!
//! ```text
//! cargo run --example classify -- path/to/graph.mg1
//! ```

use quartic_tp::enumerate::{random_op_walk, BaseChooser};
use quartic_tp::recognize::{classify, reduce};
use quartic_tp::Multigraph;

fn main() {
    let g = match std::env::args().nth(1) {
        Some(path) => Multigraph::from_mg1(&std::fs::read_to_string(path).unwrap()).unwrap(),
        None => (0..)
            .map(|seed| random_op_walk(seed, 3, BaseChooser::LineOfCubic).unwrap().graph)
            .find(|g| g.n() <= 16)
            .unwrap(),
    };

    let r = reduce(&g).unwrap();
    println!("reduction: {} reverse step(s) down to n={}", r.reverse_steps.len(), r.graph.n());
    for s in &r.reverse_steps {
        println!("  {s}");
    }

    match classify(&g) {
        Ok(cert) => {
            println!("{}", cert.classification.summary());
            print!("{cert}");
        }
        Err(e) => println!("not classified: {e}"),
    }
}
