//! The skein short exact sequence 0 → C(D∞) → C(D) → C(D₀) → 0 at each
//! crossing, checked on chains and on homology.

use khoworks::diagram::{hopf_chain, torus2};
use khoworks::homology::{skein_maps, HomologyConfig};

fn main() -> khoworks::Result<()> {
    let cfg = HomologyConfig::default();
    for d in [torus2(-3)?, hopf_chain(1)?, torus2(4)?] {
        for v in 0..d.n_crossings() {
            let m = skein_maps(&d, v, &cfg)?;
            let gradings = m.diagram.gradings();
            let exact = gradings.iter().all(|&(i, j, _)| m.exact_at(i, j));
            println!(
                "{} crossing {v}: chain maps {} short exact {} exact on homology {}",
                d.label.as_deref().unwrap_or("?"),
                m.are_chain_maps(),
                m.is_short_exact(),
                exact
            );
        }
    }
    Ok(())
}
