use super::{label_cmp, LinkDiagram};
use crate::error::{Error, Result};

/// A link component, listing its arcs in reference traversal order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub arcs: Vec<String>,
    /// Index into the free loops when this component has no crossings.
    pub free_loop: Option<usize>,
    /// Half-edges entered by the reference traversal.
    entries: Vec<usize>,
}

/// One direction bit per component; `true` reverses the reference
/// direction. The reference direction of a component leaves its smallest
/// arc label through that arc's first end.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orientation {
    pub reversed: Vec<bool>,
}

impl Orientation {
    pub fn reference(d: &LinkDiagram) -> Self {
        Orientation { reversed: vec![false; d.components().len()] }
    }

    pub fn new(d: &LinkDiagram, reversed: Vec<bool>) -> Result<Self> {
        let c = d.components().len();
        if reversed.len() != c {
            return Err(Error::InvalidParameter(format!(
                "orientation has {} bits but the diagram has {c} components",
                reversed.len()
            )));
        }
        Ok(Orientation { reversed })
    }

    /// Every orientation of the diagram.
    pub fn all(d: &LinkDiagram) -> Vec<Orientation> {
        let c = d.components().len();
        (0..1u64 << c)
            .map(|m| Orientation { reversed: (0..c).map(|k| m >> k & 1 == 1).collect() })
            .collect()
    }

    /// The orientation implied by reading slot 0 of every crossing as the
    /// incoming under-strand.
    pub fn from_pd_convention(d: &LinkDiagram) -> Self {
        let reversed = d
            .components()
            .iter()
            .map(|comp| comp.entries.iter().find(|&&h| h % 2 == 0).is_some_and(|&h| h % 4 == 2))
            .collect();
        Orientation { reversed }
    }
}

impl LinkDiagram {
    pub fn components(&self) -> Vec<Component> {
        let mut order: Vec<usize> = (0..self.arcs.len()).collect();
        order.sort_by(|&a, &b| label_cmp(&self.arcs[a].label, &self.arcs[b].label));
        let mut seen = vec![false; self.arcs.len()];
        let mut comps = Vec::new();
        for a0 in order {
            if seen[a0] {
                continue;
            }
            let mut arcs = Vec::new();
            let mut entries = Vec::new();
            let mut leave = self.arcs[a0].ends[0].0;
            loop {
                let a = self.arc_of[leave];
                if seen[a] {
                    break;
                }
                seen[a] = true;
                arcs.push(self.arcs[a].label.clone());
                let enter = self.partner[leave];
                entries.push(enter);
                leave = 4 * (enter / 4) + (enter % 4 + 2) % 4;
            }
            comps.push(Component { arcs, free_loop: None, entries });
        }
        for (k, l) in self.loops.iter().enumerate() {
            comps.push(Component { arcs: l.iter().cloned().collect(), free_loop: Some(k), entries: Vec::new() });
        }
        comps
    }

    /// Sign of every crossing: +1 when the over-strand, seen along the
    /// under-strand, arrives from the right.
    pub fn crossing_signs(&self, o: &Orientation) -> Vec<i64> {
        let n = self.n_crossings();
        let mut incoming = vec![false; 4 * n];
        let comps = self.components();
        assert_eq!(comps.len(), o.reversed.len(), "orientation must cover all components");
        for (comp, &rev) in comps.iter().zip(&o.reversed) {
            for &h in &comp.entries {
                let h = if rev { 4 * (h / 4) + (h % 4 + 2) % 4 } else { h };
                incoming[h] = true;
            }
        }
        (0..n)
            .map(|c| {
                let under_from_0 = incoming[4 * c];
                let over_from_3 = incoming[4 * c + 3];
                if under_from_0 == over_from_3 {
                    1
                } else {
                    -1
                }
            })
            .collect()
    }

    /// (n⁺, n⁻).
    pub fn sign_counts(&self, o: &Orientation) -> (usize, usize) {
        let s = self.crossing_signs(o);
        let p = s.iter().filter(|&&x| x > 0).count();
        (p, s.len() - p)
    }

    pub fn writhe(&self, o: &Orientation) -> i64 {
        self.crossing_signs(o).iter().sum()
    }
}
