//! Z_2 predictions from the extreme state graphs, compared with the
//! computed homology.

use khoworks::analysis::predict_torsion;
use khoworks::diagram::{torus2, LinkDiagram};
use khoworks::fixtures::{k10_153, k8_19, l6a2, l8a21};
use khoworks::homology::khovanov;
use khoworks::state_graph::adequacy;

fn main() -> khoworks::Result<()> {
    let cases: Vec<(&str, LinkDiagram)> = vec![
        ("trefoil", torus2(-3)?),
        ("torus2(-4)", torus2(-4)?),
        ("6^2_2", l6a2()),
        ("8^4_1", l8a21()),
        ("8_19", k8_19()),
        ("10_153", k10_153()),
    ];
    for (name, d) in cases {
        let h = khovanov(&d)?;
        let a = adequacy(&d);
        println!("{name}: plus-adequate {} minus-adequate {}", a.plus, a.minus);
        for p in predict_torsion(&d).predictions {
            println!("  predicted ({},{}) {:?}: H = {}", p.i, p.j, p.reason, h.get(p.i, p.j));
        }
        for (k, g) in h.torsion_part().iter() {
            println!("  torsion at ({},{}): {}", k[0], k[1], g);
        }
    }
    Ok(())
}
