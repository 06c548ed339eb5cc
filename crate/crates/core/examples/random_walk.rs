//! Random forward walks, each classified and checked.

use quartic_tp::certificate::verify;
use quartic_tp::enumerate::{random_op_walk, BaseChooser};
use quartic_tp::recognize::classify;

fn main() {
    for seed in 0..8 {
        let walk = random_op_walk(seed, 3, BaseChooser::Any).unwrap();
        let steps: Vec<String> = walk.steps.iter().map(ToString::to_string).collect();
        print!("seed {seed}: n={:<2} [{}]", walk.graph.n(), steps.join(", "));
        if walk.graph.n() > 16 {
            println!(" (too large to certify)");
            continue;
        }
        let cert = classify(&walk.graph).unwrap();
        let ok = verify(&walk.graph, &cert).is_ok();
        println!(" -> {} verified={ok}", cert.classification.summary());
    }
}
