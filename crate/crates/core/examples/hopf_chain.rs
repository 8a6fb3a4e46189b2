//! Chains of Hopf links: homology is torsion free with generating
//! polynomial (a^2 + a^-2)(a^4 b^2 + a^-4 b^-2)^n.

use khoworks::diagram::hopf_chain;
use khoworks::homology::khovanov;
use khoworks::polynomial::{kh_generating_polynomial, LaurentPoly2};

fn main() -> khoworks::Result<()> {
    let mut factor = LaurentPoly2::monomial(4, 2, 1);
    factor.add_term(-4, -2, 1.into());
    let mut unknot = LaurentPoly2::monomial(2, 0, 1);
    unknot.add_term(-2, 0, 1.into());
    for n in 1..=4 {
        let h = khovanov(&hopf_chain(n)?)?;
        let p = kh_generating_polynomial(&h);
        let expected = &unknot * &factor.pow(n as u32);
        println!("n={n} torsion-free={} matches={} : {}", h.is_torsion_free(), p == expected, p.display_in("a", "b"));
    }
    Ok(())
}
