use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use super::LaurentPoly;
use crate::diagram::{LinkDiagram, Orientation};
use crate::error::{Error, Result};
use crate::half::HalfInt;

/// Largest crossing count the plain state sum will enumerate.
pub const BRACKET_MAX_CROSSINGS: usize = 30;

/// δ = −A² − A⁻².
pub fn delta() -> LaurentPoly {
    LaurentPoly::from_terms([(2, -1), (-2, -1)])
}

/// Number of states with each (σ(s), |s|).
pub fn state_census(d: &LinkDiagram) -> Result<BTreeMap<(i64, usize), u64>> {
    let n = d.n_crossings();
    if n > BRACKET_MAX_CROSSINGS {
        return Err(Error::SizeLimit(format!("{n} crossings exceed the state-sum limit {BRACKET_MAX_CROSSINGS}")));
    }
    let mut buf = vec![0u16; 4 * n];
    let mut census = BTreeMap::new();
    for mask in 0..1u64 << n {
        let circles = d.trace_circles(mask, &mut buf) + d.n_free_loops();
        let sigma = n as i64 - 2 * mask.count_ones() as i64;
        *census.entry((sigma, circles)).or_insert(0) += 1;
    }
    Ok(census)
}

/// [D] = Σ_s A^{σ(s)} δ^{|s|}, with [∅] = 1.
pub fn unnormalized_bracket(d: &LinkDiagram) -> Result<LaurentPoly> {
    let census = state_census(d)?;
    let delta = delta();
    let mut out = LaurentPoly::zero();
    for ((sigma, circles), count) in census {
        out += &delta.pow(circles as u32).shift(sigma).scale(&BigInt::from(count));
    }
    Ok(out)
}

/// ⟨D⟩ = [D] / δ, normalized so the crossingless unknot gives 1.
pub fn kauffman_bracket(d: &LinkDiagram) -> Result<LaurentPoly> {
    if d.is_empty() {
        return Err(Error::EmptyDiagram);
    }
    let census = state_census(d)?;
    let delta = delta();
    let mut out = LaurentPoly::zero();
    for ((sigma, circles), count) in census {
        out += &delta.pow(circles as u32 - 1).shift(sigma).scale(&BigInt::from(count));
    }
    Ok(out)
}

/// Jones polynomial in u = t^{1/2}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JonesPoly {
    /// Coefficients indexed by twice the t-exponent.
    pub half: LaurentPoly,
}

impl JonesPoly {
    /// The polynomial in t, when every exponent is an integer.
    pub fn in_t(&self) -> Option<LaurentPoly> {
        self.half.compress(2)
    }

    pub fn max_degree(&self) -> Option<HalfInt> {
        self.half.max_degree().map(HalfInt)
    }

    pub fn min_degree(&self) -> Option<HalfInt> {
        self.half.min_degree().map(HalfInt)
    }

    /// t ↦ t⁻¹.
    pub fn inverted(&self) -> JonesPoly {
        JonesPoly { half: self.half.substitute_power(-1) }
    }
}

impl fmt::Display for JonesPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.in_t() {
            Some(p) => f.write_str(&p.display_in("t")),
            None => f.write_str(&self.half.display_with("t", |e| {
                if e % 2 == 0 {
                    (e / 2).to_string()
                } else {
                    format!("({e}/2)")
                }
            })),
        }
    }
}

/// V = A^{−3w}⟨D⟩ evaluated at t = A⁻⁴, following the normalization
/// V(t) = A^{-3w(D)}⟨D⟩ without an extra (−1)^w factor.
pub fn jones(d: &LinkDiagram, o: &Orientation) -> Result<JonesPoly> {
    let b = kauffman_bracket(d)?;
    let w = d.writhe(o);
    let shifted = b.shift(-3 * w);
    // A^e = t^{-e/4} = u^{-e/2}
    let half = shifted
        .compress(2)
        .ok_or_else(|| Error::Parity("bracket exponents have mixed parity".into()))?
        .substitute_power(-1);
    Ok(JonesPoly { half })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_pd, torus2, Orientation};

    /// Direct sum over states without the census shortcut.
    fn brute_bracket(d: &LinkDiagram) -> LaurentPoly {
        let n = d.n_crossings();
        let mut total = LaurentPoly::zero();
        for mask in 0..1u64 << n {
            let s = crate::diagram::KauffmanState::from_mask(n, mask);
            let k = d.smooth(&s).count();
            let mut term = LaurentPoly::monomial(s.sigma(), 1);
            for _ in 1..k {
                term = &term * &delta();
            }
            total += &term;
        }
        total
    }

    #[test]
    fn left_trefoil() {
        let d = torus2(-3).unwrap();
        let b = kauffman_bracket(&d).unwrap();
        assert_eq!(b, LaurentPoly::from_terms([(7, 1), (3, -1), (-5, -1)]));
        assert_eq!(b, brute_bracket(&d));
        assert_eq!(unnormalized_bracket(&d).unwrap(), &b * &delta());
    }

    #[test]
    fn hopf() {
        let d = torus2(-2).unwrap();
        let expect = brute_bracket(&d);
        assert_eq!(expect, LaurentPoly::from_terms([(4, -1), (-4, -1)]));
        assert_eq!(kauffman_bracket(&d).unwrap(), expect);
    }

    #[test]
    fn unknot_and_empty() {
        assert_eq!(kauffman_bracket(&LinkDiagram::unknot()).unwrap(), LaurentPoly::one());
        assert_eq!(kauffman_bracket(&LinkDiagram::empty()), Err(Error::EmptyDiagram));
        assert_eq!(unnormalized_bracket(&LinkDiagram::empty()).unwrap(), LaurentPoly::one());
        let o = Orientation::reference(&LinkDiagram::unknot());
        assert_eq!(jones(&LinkDiagram::unknot(), &o).unwrap().in_t(), Some(LaurentPoly::one()));
    }

    #[test]
    fn trefoil_jones() {
        let d = torus2(-3).unwrap();
        let v = jones(&d, &Orientation::reference(&d)).unwrap();
        // A^9 (A^7 - A^3 - A^-5) = A^16 - A^12 - A^4 at t = A^-4
        let expect = LaurentPoly::from_terms([(-4, 1), (-3, -1), (-1, -1)]);
        assert_eq!(v.in_t(), Some(expect));
        assert_eq!((v.max_degree().unwrap().0 - v.min_degree().unwrap().0) / 2, 3);
        let m = d.mirror();
        assert_eq!(jones(&m, &Orientation::reference(&m)).unwrap(), v.inverted());
    }

    #[test]
    fn pd_right_trefoil_matches_table_up_to_sign_convention() {
        // tabulated V = t + t^3 - t^4; the normalization here omits (-1)^w
        let d = parse_pd("X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)").unwrap();
        let v = jones(&d, &Orientation::from_pd_convention(&d)).unwrap();
        assert_eq!(v.in_t(), Some(LaurentPoly::from_terms([(1, -1), (3, -1), (4, 1)])));
    }

    #[test]
    fn hopf_has_half_integer_exponents() {
        let d = torus2(2).unwrap();
        let o = Orientation::all(&d).into_iter().find(|o| d.writhe(o) == 2).unwrap();
        let v = jones(&d, &o).unwrap();
        assert!(v.in_t().is_none());
        assert_eq!(v.half, LaurentPoly::from_terms([(1, -1), (5, -1)]));
    }
}
