//! Z₂-torsion predictions from the extreme state graphs.

use serde::Serialize;

use crate::diagram::LinkDiagram;
use crate::homology::BigradedHomology;
use crate::state_graph::{build_state_graph, cycle_analysis};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TorsionReason {
    OddCyclePlus,
    OddCycleMinus,
    EvenCyclePlus,
    EvenCycleMinus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PredictedTorsion {
    pub i: i64,
    pub j: i64,
    pub reason: TorsionReason,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TorsionPrediction {
    pub predictions: Vec<PredictedTorsion>,
}

impl TorsionPrediction {
    pub fn is_empty(&self) -> bool {
        self.predictions.is_empty()
    }

    /// Predictions whose group lacks a Z₂ summand.
    pub fn violations(&self, h: &BigradedHomology) -> Vec<PredictedTorsion> {
        self.predictions.iter().filter(|p| !h.get(p.i, p.j).contains_z2()).copied().collect()
    }
}

pub fn predict_torsion(d: &LinkDiagram) -> TorsionPrediction {
    let n = d.n_crossings() as i64;
    let (sp, sm) = d.extreme_circle_counts();
    let (sp, sm) = (sp as i64, sm as i64);
    let (plus, minus) = d.special_states();
    let connected = d.is_connected();
    let mut out = Vec::new();
    for (state, positive) in [(plus, true), (minus, false)] {
        let g = build_state_graph(d, &state);
        if !g.is_loopless() {
            continue;
        }
        let c = cycle_analysis(&g);
        if c.has_odd_cycle {
            out.push(if positive {
                PredictedTorsion { i: n - 2, j: n + 2 * sp - 4, reason: TorsionReason::OddCyclePlus }
            } else {
                PredictedTorsion { i: -n, j: -n - 2 * sm + 4, reason: TorsionReason::OddCycleMinus }
            });
        }
        if connected && c.even_cycle_with_singular_edge.is_some() {
            out.push(if positive {
                PredictedTorsion { i: n - 4, j: n + 2 * sp - 8, reason: TorsionReason::EvenCyclePlus }
            } else {
                PredictedTorsion { i: -n + 2, j: -n - 2 * sm + 8, reason: TorsionReason::EvenCycleMinus }
            });
        }
    }
    TorsionPrediction { predictions: out }
}
