//! Recovers cubic roots: directly from a line multigraph, and through
//! Operation 5 blocks after reduction.

use quartic_tp::enumerate::enumerate_cubic_multigraphs;
use quartic_tp::families::{doubled_pair_cubic, line_multigraph};
use quartic_tp::operations::{apply, find_sites, replay, Direction, OpKind};
use quartic_tp::recognize::{cubic_root, reconstruct_line_root, recognize_squared_cycle, reduce};

fn main() {
    let m = doubled_pair_cubic();
    let l = line_multigraph(&m);
    let (root, _) = cubic_root(&l).unwrap();
    println!("cubic root of L(M) is M: {}", root.is_isomorphic(&m).unwrap());

    // Fold one Operation 5 block of L(M), reduce, and rebuild a root whose
    // line multigraph gives the reduced graph back after the recorded folds.
    for m in enumerate_cubic_multigraphs(8).unwrap() {
        let l = line_multigraph(&m);
        let Some(step) = find_sites(&l, OpKind::Five, Direction::Forward).into_iter().next() else {
            continue;
        };
        let g = apply(&l, &step).unwrap().graph;
        let reduced = reduce(&g).unwrap().graph;
        if reduced.n() < 5 || recognize_squared_cycle(&reduced).is_some() {
            println!("root n={} -> {step}: reduces to a squared cycle", m.n());
            continue;
        }
        let r = reconstruct_line_root(&reduced).unwrap();
        let rebuilt = replay(&line_multigraph(&r.root), &r.op5_steps).unwrap();
        println!(
            "root n={} -> {step} -> reduced n={}: root n={} with {} fold(s), replay matches: {}",
            m.n(),
            reduced.n(),
            r.root.n(),
            r.op5_steps.len(),
            rebuilt.is_isomorphic(&reduced).unwrap()
        );
    }
}
