//! Builds the standard members of the class and prints their basic shape.

use quartic_tp::families::{
    complete_graph, doubled_pair_cubic, five_vertex_exception, line_multigraph, squared_cycle, vertex_stars, NamedBlock,
};
use quartic_tp::Multigraph;

fn describe(name: &str, g: &Multigraph) {
    println!(
        "{name:<22} n={:<2} edges={:<2} simple={:<5} quartic={:<5} triangle-property={}",
        g.n(),
        g.edge_count(),
        g.is_simple(),
        g.is_k_regular(4),
        g.has_triangle_property()
    );
}

fn main() {
    for n in [3, 4, 5, 8] {
        describe(&format!("C{n}^2"), &squared_cycle(n).unwrap());
    }
    describe("five-vertex exception", &five_vertex_exception());

    let k4 = complete_graph(4);
    let octahedron = line_multigraph(&k4);
    describe("L(K4)", &octahedron);
    println!("  L(K4) is C6^2: {}", octahedron.is_isomorphic(&squared_cycle(6).unwrap()).unwrap());
    println!("  triangles from the vertex stars of K4: {:?}", vertex_stars(&k4));

    let m = doubled_pair_cubic();
    describe("L(doubled-pair cubic)", &line_multigraph(&m));
    print!("  root in MG1:\n{}", m.to_mg1());

    for block in NamedBlock::ALL {
        let g = block.graph();
        println!("block {:<11} n={} attachment={:?}", block.name(), g.n(), block.attachment());
    }
}
