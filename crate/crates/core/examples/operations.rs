//! Lists the sites of every operation on a small graph, applies one and
//! undoes it with the recorded inverse step.

use quartic_tp::families::squared_cycle;
use quartic_tp::operations::{apply, find_sites, replay, Direction, OpKind};
use quartic_tp::OpStep;

fn main() {
    let g = squared_cycle(4).unwrap();
    for kind in OpKind::ALL {
        for dir in [Direction::Forward, Direction::Reverse] {
            let sites = find_sites(&g, kind, dir);
            if !sites.is_empty() {
                println!("{kind:?} {dir:?}: {} site(s), first: {}", sites.len(), sites[0]);
            }
        }
    }

    // Operation 4 turns C4^2 into the five-vertex exception.
    let step = find_sites(&g, OpKind::Four, Direction::Forward).remove(0);
    match apply(&g, &step) {
        Ok(out) => {
            println!("{step} gives n={}; inverse: {}", out.graph.n(), out.inverse);
            let back = apply(&out.graph, &out.inverse).unwrap();
            println!("inverse restores C4^2: {}", back.graph.is_isomorphic(&g).unwrap());
        }
        Err(e) => println!("{step} refused: {e}"),
    }

    // A short chain from C3^2.
    let steps: Vec<OpStep> = ["op 2 fwd 0 1 2", "op 1 fwd 0 1 3"].iter().map(|s| s.parse().unwrap()).collect();
    let g = replay(&squared_cycle(3).unwrap(), &steps).unwrap();
    print!("after {} steps:\n{}", steps.len(), g.to_mg1());
}
