//! Generating polynomials of bigraded homology and the oriented (q, t) grading.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use super::{LaurentPoly, LaurentPoly2};
use crate::error::{Error, Result};
use crate::homology::BigradedHomology;

/// Σ rank FH_{i,j} a^j b^i, keyed (a-exponent, b-exponent).
pub fn kh_generating_polynomial(h: &BigradedHomology) -> LaurentPoly2 {
    let mut p = LaurentPoly2::zero();
    for (&[i, j], g) in h.iter() {
        p.add_term(j, i, BigInt::from(g.free_rank));
    }
    p
}

/// Same as [`kh_generating_polynomial`] counting torsion summands.
pub fn torsion_generating_polynomial(h: &BigradedHomology) -> LaurentPoly2 {
    let mut p = LaurentPoly2::zero();
    for (&[i, j], g) in h.iter() {
        p.add_term(j, i, BigInt::from(g.torsion().len()));
    }
    p
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Σ_j A^j Σ_i (−1)^((j−i)/2) n_{i,j}.
pub fn euler_characteristic(ranks: &BTreeMap<(i64, i64), usize>) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for (&(i, j), &n) in ranks {
        p.add_term(j, BigInt::from(sign((j - i) / 2) * n as i64));
    }
    p
}

pub fn homology_euler_characteristic(h: &BigradedHomology) -> LaurentPoly {
    let ranks = h.iter().map(|(&[i, j], g)| ((i, j), g.free_rank)).collect();
    euler_characteristic(&ranks)
}

/// Khovanov homology re-indexed by q = (3w − j)/2 and t = (w − i)/2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QtTable {
    pub writhe: i64,
    /// Free ranks as Σ rank q^a t^b, keyed (q-exponent, t-exponent).
    pub free: LaurentPoly2,
    /// Torsion summand counts in the same grading.
    pub torsion: LaurentPoly2,
}

pub fn qt_grading(i: i64, j: i64, w: i64) -> Result<(i64, i64)> {
    if (3 * w - j).rem_euclid(2) != 0 || (w - i).rem_euclid(2) != 0 {
        return Err(Error::Parity(format!("writhe {w} is incompatible with the grading ({i},{j})")));
    }
    Ok(((3 * w - j) / 2, (w - i) / 2))
}

pub fn qt_convert(h: &BigradedHomology, w: i64) -> Result<QtTable> {
    let mut free = LaurentPoly2::zero();
    let mut torsion = LaurentPoly2::zero();
    for (&[i, j], g) in h.iter() {
        let (q, t) = qt_grading(i, j, w)?;
        free.add_term(q, t, BigInt::from(g.free_rank));
        torsion.add_term(q, t, BigInt::from(g.torsion().len()));
    }
    Ok(QtTable { writhe: w, free, torsion })
}

impl QtTable {
    pub fn display_free(&self) -> String {
        self.free.display_in("q", "t")
    }

    pub fn display_torsion(&self) -> String {
        self.torsion.display_in("Q", "t")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{torus2, LinkDiagram};
    use crate::homology::{khovanov, AbelianGroup, ChainComplex, HomologyConfig};
    use crate::polynomial::unnormalized_bracket;

    #[test]
    fn unknot_polynomial() {
        let h = khovanov(&LinkDiagram::unknot()).unwrap();
        let p = kh_generating_polynomial(&h);
        let expect = &LaurentPoly2::monomial(2, 0, 1) + &LaurentPoly2::monomial(-2, 0, 1);
        assert_eq!(p, expect);
        assert!(kh_generating_polynomial(&BigradedHomology::new()).is_zero());
    }

    #[test]
    fn trefoil_qt() {
        let h = khovanov(&torus2(-3).unwrap()).unwrap();
        let t = qt_convert(&h, -3).unwrap();
        // q^-1 + q^-3 + q^-5 t^-2 + q^-9 t^-3, torsion at q^-7 t^-2
        let mut free = LaurentPoly2::zero();
        for (q, tt) in [(-1, 0), (-3, 0), (-5, -2), (-9, -3)] {
            free.add_term(q, tt, 1.into());
        }
        assert_eq!(t.free, free);
        assert_eq!(t.torsion, LaurentPoly2::monomial(-7, -2, 1));
        assert!(matches!(qt_convert(&h, -2), Err(Error::Parity(_))));
        let mut origin = BigradedHomology::new();
        origin.insert(0, 0, AbelianGroup::free(1));
        assert_eq!(qt_convert(&origin, 0).unwrap().free, LaurentPoly2::one());
    }

    #[test]
    fn euler_characteristic_is_bracket() {
        for n in [-3, 2, 4] {
            let d = torus2(n).unwrap();
            let cx = ChainComplex::new(&d, &HomologyConfig::default()).unwrap();
            let bracket = unnormalized_bracket(&d).unwrap();
            assert_eq!(euler_characteristic(&cx.dimensions()), bracket);
            assert_eq!(homology_euler_characteristic(&cx.homology()), bracket);
        }
    }
}
