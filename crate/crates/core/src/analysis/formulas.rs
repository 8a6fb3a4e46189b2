//! Signature and degree identities for alternating diagrams.

use serde::Serialize;

use crate::diagram::{LinkDiagram, Orientation};
use crate::error::{Error, Result};
use crate::polynomial::{jones, kauffman_bracket, unnormalized_bracket};

/// n⁻ − |s₋| + 1, cross-checked against −n⁺ + |s₊| − 1.
pub fn alternating_signature(d: &LinkDiagram, o: &Orientation) -> Result<i64> {
    let (np, nm) = d.sign_counts(o);
    let (sp, sm) = d.extreme_circle_counts();
    let a = nm as i64 - sm as i64 + 1;
    let b = -(np as i64) + sp as i64 - 1;
    if a != b {
        return Err(Error::FormulaMismatch(format!("n- - |s-| + 1 = {a} but -n+ + |s+| - 1 = {b}")));
    }
    Ok(a)
}

/// Each degree identity with the computed and the predicted value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCheck {
    pub name: &'static str,
    pub computed: i64,
    pub predicted: i64,
}

fn doubled(x: crate::HalfInt) -> i64 {
    x.doubled()
}

/// All identities; degrees of V are on the doubled scale.
pub fn murasugi_degrees(d: &LinkDiagram, o: &Orientation) -> Result<Vec<DegreeCheck>> {
    if d.n_crossings() == 0 {
        return Ok(Vec::new());
    }
    let n = d.n_crossings() as i64;
    let (sp, sm) = d.extreme_circle_counts();
    let (sp, sm) = (sp as i64, sm as i64);
    let raw = unnormalized_bracket(d)?;
    let norm = kauffman_bracket(d)?;
    let v = jones(d, o)?;
    let sigma = alternating_signature(d, o)?;
    let (np, nm) = d.sign_counts(o);
    let (np, nm) = (np as i64, nm as i64);
    let deg = |x: Option<i64>| x.unwrap_or(i64::MIN);
    let raw_max = deg(raw.max_degree());
    let raw_min = deg(raw.min_degree());
    Ok(vec![
        DegreeCheck { name: "max [D]", computed: raw_max, predicted: n + 2 * sp },
        DegreeCheck { name: "min [D]", computed: raw_min, predicted: -n - 2 * sm },
        DegreeCheck { name: "max <D>", computed: deg(norm.max_degree()), predicted: raw_max - 2 },
        DegreeCheck { name: "min <D>", computed: deg(norm.min_degree()), predicted: raw_min + 2 },
        DegreeCheck { name: "2 max V", computed: v.max_degree().map_or(i64::MIN, doubled), predicted: 2 * np - sigma },
        DegreeCheck { name: "2 min V", computed: v.min_degree().map_or(i64::MIN, doubled), predicted: -2 * nm - sigma },
    ])
}

pub fn murasugi_degree_check(d: &LinkDiagram, o: &Orientation) -> bool {
    murasugi_degrees(d, o).is_ok_and(|checks| checks.iter().all(|c| c.computed == c.predicted))
}

/// |s₊| + |s₋| = N + 2 on a connected diagram: alternating or a connected
/// sum of alternating diagrams. Advisory only.
pub fn wu_alternating_hint(d: &LinkDiagram) -> bool {
    let (sp, sm) = d.extreme_circle_counts();
    d.is_connected() && sp + sm == d.n_crossings() + 2
}
