//! Exact Laurent polynomials, the bracket state sums and generating functions.

mod bracket;
mod generating;
mod laurent;

pub use bracket::{
    delta, jones, kauffman_bracket, state_census, unnormalized_bracket, JonesPoly, BRACKET_MAX_CROSSINGS,
};
pub use generating::{
    euler_characteristic, homology_euler_characteristic, kh_generating_polynomial, qt_convert, qt_grading,
    torsion_generating_polynomial, QtTable,
};
pub use laurent::{LaurentPoly, LaurentPoly2};
pub(crate) use laurent::{coeff_from_json, coeff_to_json};
