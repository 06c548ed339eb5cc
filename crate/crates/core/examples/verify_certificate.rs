//! Checks certificates against graphs using replay and isomorphism only.

use quartic_tp::certificate::{verify, Certificate};
use quartic_tp::families::{complete_graph, squared_cycle};

fn main() {
    let k5 = complete_graph(5);
    let text = format!(
        "cert v1\ninput {}\nbase line-of-cubic\nmg 2 1\n0 1 3\nop 2 fwd 0 1 2\nend\n",
        k5.canonical_code().unwrap()
    );
    let cert: Certificate = text.parse().unwrap();
    println!("K5 from L(triple edge) by one Operation 2: {:?}", verify(&k5, &cert));

    let c9 = squared_cycle(9).unwrap();
    println!("same certificate against C9^2: {:?}", verify(&c9, &cert).map_err(|e| e.to_string()));

    let broken = text.replace("op 2 fwd 0 1 2", "op 2 fwd 0 1 1");
    match broken.parse::<Certificate>() {
        Ok(c) => println!("broken site: {}", verify(&k5, &c).unwrap_err()),
        Err(e) => println!("broken site: {e}"),
    }
}
