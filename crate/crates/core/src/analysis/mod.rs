//! Torsion predictions, thickness and alternating-diagram identities,
//! checked against computed homology.

mod formulas;
mod thickness;
mod torsion;

pub use formulas::{
    alternating_signature, murasugi_degree_check, murasugi_degrees, wu_alternating_hint, DegreeCheck,
};
pub use thickness::{thickness, thickness_bound, torsion_diagonals, Envelope, Thickness, ThicknessReport};
pub use torsion::{predict_torsion, PredictedTorsion, TorsionPrediction, TorsionReason};

use serde::Serialize;

use crate::diagram::{LinkDiagram, Orientation};
use crate::homology::BigradedHomology;
use crate::state_graph::{adequacy, build_state_graph, cycle_analysis, Adequacy, CycleAnalysis};

/// What the caller knows about the diagram.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assumptions {
    /// Number of crossing changes making the diagram alternating, if known.
    pub almost_alternating: Option<i64>,
    /// Orientation for the signature and Jones checks.
    pub orientation: Option<Orientation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub crossings: usize,
    pub s_plus: usize,
    pub s_minus: usize,
    pub adequacy: Adequacy,
    pub plus_graph: CycleAnalysis,
    pub minus_graph: CycleAnalysis,
    pub wu_alternating_hint: bool,
    pub predictions: Vec<PredictedTorsion>,
    pub thickness: ThicknessReport,
    pub torsion_diagonals: Vec<i64>,
    pub signature: Option<i64>,
    pub checks: Vec<Check>,
}

impl AnalysisReport {
    pub fn violations(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn all_passed(&self) -> bool {
        self.violations().next().is_none()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

fn pair(t: Option<Thickness>) -> String {
    t.map_or("-".into(), |t| format!("({},{})", t.k1, t.k2))
}

pub fn analyze(d: &LinkDiagram, h: &BigradedHomology, a: &Assumptions) -> AnalysisReport {
    let (sp, sm) = d.extreme_circle_counts();
    let (plus, minus) = d.special_states();
    let prediction = predict_torsion(d);
    let th = thickness(h, d);
    let mut checks = Vec::new();
    for p in &prediction.predictions {
        let g = h.get(p.i, p.j);
        checks.push(Check {
            name: format!("torsion predicted at ({},{})", p.i, p.j),
            passed: g.contains_z2(),
            detail: format!("{:?}: H = {}", p.reason, g),
        });
    }
    let mut signature = None;
    if let Some(k) = a.almost_alternating {
        let env = thickness_bound(d, k);
        checks.push(Check {
            name: format!("thickness within the {k}-almost-alternating envelope"),
            passed: env.admits(&th),
            detail: format!(
                "full {} torsion {} against full {:?} torsion {:?}",
                pair(th.full),
                pair(th.torsion),
                env.full,
                env.torsion
            ),
        });
        if k == 0 && d.n_crossings() > 0 {
            let o = a.orientation.clone().unwrap_or_else(|| Orientation::reference(d));
            match alternating_signature(d, &o) {
                Ok(s) => {
                    signature = Some(s);
                    checks.push(Check { name: "signature formula".into(), passed: true, detail: format!("sigma = {s}") });
                }
                Err(e) => checks.push(Check { name: "signature formula".into(), passed: false, detail: e.to_string() }),
            }
            let detail = match murasugi_degrees(d, &o) {
                Ok(v) => v.iter().map(|c| format!("{} {}/{}", c.name, c.computed, c.predicted)).collect::<Vec<_>>().join(", "),
                Err(e) => e.to_string(),
            };
            checks.push(Check { name: "degree identities".into(), passed: murasugi_degree_check(d, &o), detail });
        }
    }
    AnalysisReport {
        crossings: d.n_crossings(),
        s_plus: sp,
        s_minus: sm,
        adequacy: adequacy(d),
        plus_graph: cycle_analysis(&build_state_graph(d, &plus)),
        minus_graph: cycle_analysis(&build_state_graph(d, &minus)),
        wu_alternating_hint: wu_alternating_hint(d),
        predictions: prediction.predictions,
        thickness: th,
        torsion_diagonals: torsion_diagonals(h),
        signature,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::torus2;
    use crate::homology::khovanov;

    #[test]
    fn trefoil_report() {
        let d = torus2(-3).unwrap();
        let h = khovanov(&d).unwrap();
        let r = analyze(&d, &h, &Assumptions { almost_alternating: Some(0), orientation: None });
        assert!(r.all_passed(), "{:?}", r.checks);
        assert_eq!(r.signature, Some(2));
        assert_eq!(r.torsion_diagonals, vec![3]);
        let j = r.to_json();
        assert_eq!(j["s_plus"], 3);
        assert_eq!(j["predictions"][0]["reason"], "odd_cycle_plus");
    }
}
