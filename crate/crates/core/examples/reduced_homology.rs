//! Reduced and co-reduced homology at every basepoint of the trefoil, and
//! the cokernel of the connecting map between them.

use khoworks::diagram::torus2;
use khoworks::homology::{coreduced, coreduced_connecting_cokernel, reduced, HomologyConfig};

fn main() -> khoworks::Result<()> {
    let d = torus2(-3)?;
    let labels: Vec<String> = d.arc_labels().map(str::to_string).collect();
    for arc in &labels {
        let r = reduced(&d, arc)?;
        let c = coreduced(&d, arc)?;
        println!("basepoint {arc}");
        print!("reduced\n{}", r.table(None));
        print!("co-reduced\n{}", c.table(None));
    }
    let coker = coreduced_connecting_cokernel(&d, &labels[0], 3, 5, &HomologyConfig::default())?;
    println!("coker of the connecting map at (3,5): {coker}");
    Ok(())
}
