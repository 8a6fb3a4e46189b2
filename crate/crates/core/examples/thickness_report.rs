//! Full analysis report: adequacy, state-graph cycles, torsion predictions,
//! thickness and the alternating signature and degree identities.

use khoworks::analysis::{analyze, thickness_bound, Assumptions};
use khoworks::diagram::ComposeMode;
use khoworks::fixtures::{k8_19, l6a2, trefoil};
use khoworks::homology::khovanov;

fn main() -> khoworks::Result<()> {
    let d = l6a2();
    let h = khovanov(&d)?;
    let r = analyze(&d, &h, &Assumptions { almost_alternating: Some(0), orientation: None });
    println!("{}", serde_json::to_string_pretty(&r.to_json()).expect("report serializes"));

    // a non-alternating knot against the one-crossing-change envelope
    let k = k8_19();
    let r = analyze(&k, &khovanov(&k)?, &Assumptions { almost_alternating: Some(1), orientation: None });
    println!("8_19 thickness {:?}, all checks pass: {}", r.thickness.full, r.all_passed());

    // split sums add envelopes
    let t = trefoil();
    let split = t.compose(&t, &ComposeMode::Disjoint)?;
    let env = thickness_bound(&t, 0).split_sum(thickness_bound(&t, 0));
    let r = analyze(&split, &khovanov(&split)?, &Assumptions::default());
    println!("trefoil ⊔ trefoil admitted by {:?}: {}", env, env.admits(&r.thickness));
    Ok(())
}
