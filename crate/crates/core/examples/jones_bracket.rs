//! Kauffman bracket and Jones polynomial for a few diagrams, plus the
//! Euler characteristic of homology as a cross-check.

use khoworks::diagram::{hopf_chain, torus2, Orientation};
use khoworks::fixtures::{k8_19, l6a2};
use khoworks::homology::khovanov;
use khoworks::polynomial::{homology_euler_characteristic, jones, kauffman_bracket, unnormalized_bracket};

fn main() -> khoworks::Result<()> {
    for d in [torus2(-3)?, torus2(4)?, hopf_chain(2)?, l6a2(), k8_19()] {
        let o = Orientation::from_pd_convention(&d);
        let chi = homology_euler_characteristic(&khovanov(&d)?);
        println!("{}", d.label.as_deref().unwrap_or("?"));
        println!("  <D>    {}", kauffman_bracket(&d)?.display_in("A"));
        println!("  w      {}", d.writhe(&o));
        println!("  V      {}", jones(&d, &o)?);
        println!("  chi=[D] {}", chi == unnormalized_bracket(&d)?);
    }
    Ok(())
}
