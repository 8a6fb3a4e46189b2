//! State graphs of the extreme states, their odd cycles and even cycles
//! through singular edges.

use khoworks::fixtures::{k8_19, l6a2};
use khoworks::state_graph::{adequacy, build_state_graph, cycle_analysis};

fn main() {
    for d in [l6a2(), k8_19()] {
        let (plus, minus) = d.special_states();
        println!("{} {:?}", d.label.as_deref().unwrap_or("?"), adequacy(&d));
        for (name, s) in [("G+", plus), ("G-", minus)] {
            let g = build_state_graph(&d, &s);
            let c = cycle_analysis(&g);
            println!("{name}: {} vertices, edges (u v crossing):", g.vertices);
            print!("{}", g.to_edge_list());
            println!("odd cycle {} even cycle through singular edge {:?}", c.has_odd_cycle, c.even_cycle_with_singular_edge);
        }
    }
}
