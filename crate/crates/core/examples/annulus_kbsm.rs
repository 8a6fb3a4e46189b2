//! Torus diagrams in the annulus: stratified homology H_{i,j,k} and the
//! coefficients of the diagram in the skein module basis x^m.

use khoworks::annulus::{
    kbsm_coefficients, kbsm_torus2_oracle, stratified_euler, stratified_homology, torus_annulus,
    torus_knot_skein_polynomial, AnnulusDiagram,
};
use khoworks::homology::HomologyConfig;

fn main() -> khoworks::Result<()> {
    let ad = torus_annulus(1, 2)?;
    print!("{}", stratified_homology(&ad)?.table());
    for r in [-3, -2, -1, 1, 2, 3] {
        let c = kbsm_coefficients(&torus_annulus(r, 2)?)?;
        println!("r={r:>2}: {} (closed form agrees: {})", show(&c), c == kbsm_torus2_oracle(r)?);
    }
    for (r, k) in [(1, 3), (2, 3), (3, 4)] {
        let cx = torus_annulus(r, k)?.complex(&HomologyConfig::default())?;
        let ok = stratified_euler(&cx) == torus_knot_skein_polynomial(r, k)?;
        println!("T({r},{k}) Euler characteristic matches the closed form: {ok}");
    }
    // hand-written diagram: one kink on the core circle
    let kink = AnnulusDiagram::parse("X(1,1,2,2)\nW 2 1\n")?;
    println!("kinked core: {}", show(&kbsm_coefficients(&kink)?));
    Ok(())
}

fn show(c: &std::collections::BTreeMap<u32, khoworks::polynomial::LaurentPoly>) -> String {
    c.iter().rev().map(|(m, p)| format!("({}) x^{m}", p.display_in("A"))).collect::<Vec<_>>().join(" + ")
}
