//! Khovanov homology of the left-handed trefoil, in (i, j) and in (q, t).

use khoworks::diagram::torus2;
use khoworks::homology::khovanov;
use khoworks::polynomial::{kh_generating_polynomial, qt_convert, torsion_generating_polynomial};

fn main() -> khoworks::Result<()> {
    let d = torus2(-3)?;
    let h = khovanov(&d)?;
    println!("{}", d.to_pd());
    print!("{}", h.table(None));
    println!("free     {}", kh_generating_polynomial(&h).display_in("a", "b"));
    println!("torsion  {}", torsion_generating_polynomial(&h).display_in("a", "b"));

    let qt = qt_convert(&h, -3)?;
    println!("qt free     {}", qt.display_free());
    println!("qt torsion  {}", qt.display_torsion());
    Ok(())
}
