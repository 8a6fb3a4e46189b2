//! Torus diagrams wrapped around the annulus and closed-form skein elements.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;

use super::AnnulusDiagram;
use crate::diagram::families::braid_closure_parts;
use crate::error::{Error, Result};
use crate::polynomial::{LaurentPoly, LaurentPoly2};

/// Closure of (σ₁σ₂⋯σ_{k−1})^r on k strands. Each closing arc crosses the
/// cut once in the braid direction.
pub fn torus_annulus(r: i64, k: i64) -> Result<AnnulusDiagram> {
    if k < 1 {
        return Err(Error::InvalidParameter(format!("torus_annulus needs k >= 1, got {k}")));
    }
    let sign = r.signum() as i32;
    let word: Vec<i32> = (0..r.unsigned_abs()).flat_map(|_| (1..k as i32).map(move |g| sign * g)).collect();
    let (base, closing) = braid_closure_parts(k as usize, &word)?;
    let mut weights = BTreeMap::new();
    for (label, entry) in closing {
        let w = match entry {
            None => 1,
            Some(h) => {
                let [_, end] = base.arc_ends(&label)?;
                if end == h {
                    1
                } else {
                    -1
                }
            }
        };
        weights.insert(label, w);
    }
    let base = base.with_label(format!("torus_annulus({r},{k})"));
    AnnulusDiagram::new(base, weights)
}

/// A^r x² + (−A^r + (−1)^r A^{−3r}) ∅.
pub fn kbsm_torus2_oracle(r: i64) -> Result<BTreeMap<u32, LaurentPoly>> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be nonzero".into()));
    }
    let sign = if r % 2 == 0 { 1 } else { -1 };
    let mut empty = LaurentPoly::monomial(r, -1);
    empty.add_term(-3 * r, BigInt::from(sign));
    Ok(BTreeMap::from([(2, LaurentPoly::monomial(r, 1)), (0, empty)]))
}

/// A^{r(k−1)} (a^{k+1} − a^{−k−1} − A^{−4r}(a^{k−1} − a^{1−k})) / (a − a^{−1})
/// as a polynomial in (a, A), keyed (a-exponent, A-exponent). Torus knots only.
pub fn torus_knot_skein_polynomial(r: i64, k: i64) -> Result<LaurentPoly2> {
    if k < 1 || r.gcd(&k) != 1 {
        return Err(Error::InvalidParameter(format!("({r},{k}) is not a torus knot")));
    }
    let top = r * (k - 1);
    let slices = [
        (top, LaurentPoly::from_terms([(k + 1, 1), (-k - 1, -1)])),
        (top - 4 * r, LaurentPoly::from_terms([(k - 1, -1), (1 - k, 1)])),
    ];
    let divisor = LaurentPoly::from_terms([(1, 1), (-1, -1)]);
    let mut out = LaurentPoly2::zero();
    for (e, num) in slices {
        if num.is_zero() {
            continue;
        }
        let q = num.div_exact(&divisor).expect("a^n - a^-n is divisible by a - a^-1");
        for (ae, c) in q.terms() {
            out.add_term(ae, e, c.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_shapes() {
        for r in [-3i64, -1, 1, 2, 4] {
            let ad = torus_annulus(r, 2).unwrap();
            assert_eq!(ad.base.n_crossings(), r.unsigned_abs() as usize);
        }
        assert_eq!(torus_annulus(2, 3).unwrap().base.n_crossings(), 4);
        assert!(torus_annulus(1, 0).is_err());
        assert_eq!(torus_annulus(0, 2).unwrap().base.n_free_loops(), 2);
    }

    #[test]
    fn oracle_values() {
        let o = kbsm_torus2_oracle(2).unwrap();
        assert_eq!(o[&2], LaurentPoly::monomial(2, 1));
        assert_eq!(o[&0], LaurentPoly::from_terms([(2, -1), (-6, 1)]));
        let o = kbsm_torus2_oracle(-3).unwrap();
        assert_eq!(o[&0], LaurentPoly::from_terms([(-3, -1), (9, -1)]));
        assert!(kbsm_torus2_oracle(0).is_err());
    }

    #[test]
    fn formula_matches_the_two_strand_oracle() {
        for r in [-3i64, -1, 1, 3, 5] {
            let p = torus_knot_skein_polynomial(r, 2).unwrap();
            let c = super::super::expand_in_core_powers(&p).unwrap();
            assert_eq!(c, kbsm_torus2_oracle(r).unwrap(), "r = {r}");
        }
        assert!(torus_knot_skein_polynomial(2, 4).is_err());
    }
}
