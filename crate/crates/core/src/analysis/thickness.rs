//! Diagonal support of homology measured against the extreme states.

use serde::Serialize;

use crate::diagram::LinkDiagram;
use crate::homology::BigradedHomology;
use crate::HalfInt;

/// Minimal (k₁, k₂) with N − 2|s₋| − 4k₂ ≤ j − 2i ≤ 2|s₊| − N + 4k₁ on the
/// support, and k = k₁ + k₂ + (|s₊| + |s₋| − N)/2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Thickness {
    pub k1: HalfInt,
    pub k2: HalfInt,
    pub k: HalfInt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ThicknessReport {
    pub full: Option<Thickness>,
    pub free: Option<Thickness>,
    pub torsion: Option<Thickness>,
}

/// Guaranteed thickness for the whole and the torsion part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Envelope {
    pub full: (i64, i64),
    pub torsion: (i64, i64),
}

impl Envelope {
    /// Split sum of two diagrams. The full bounds add; torsion comes from
    /// T⊗F, F⊗T and the Tor term, which sits one step down the diagonals.
    pub fn split_sum(self, other: Envelope) -> Envelope {
        let (f1, t1, f2, t2) = (self.full, self.torsion, other.full, other.torsion);
        Envelope {
            full: (f1.0 + f2.0, f1.1 + f2.1),
            torsion: (
                (t1.0 + f2.0).max(f1.0 + t2.0).max(t1.0 + t2.0 - 1),
                (t1.1 + f2.1).max(f1.1 + t2.1).max(t1.1 + t2.1 + 1),
            ),
        }
    }

    pub fn admits(&self, r: &ThicknessReport) -> bool {
        let within = |t: &Option<Thickness>, (k1, k2): (i64, i64)| {
            t.is_none_or(|t| t.k1.doubled() <= 2 * k1 && t.k2.doubled() <= 2 * k2)
        };
        within(&r.full, self.full) && within(&r.free, self.full) && within(&r.torsion, self.torsion)
    }
}

/// Envelope for a diagram that becomes alternating after `k` crossing changes.
pub fn thickness_bound(_d: &LinkDiagram, k: i64) -> Envelope {
    Envelope { full: (k, k), torsion: (k, k - 1) }
}

fn measure(d: &LinkDiagram, diagonals: impl Iterator<Item = i64>) -> Option<Thickness> {
    let n = d.n_crossings() as i64;
    let (sp, sm) = d.extreme_circle_counts();
    let (sp, sm) = (sp as i64, sm as i64);
    let (lo, hi) = diagonals.fold(None, |acc: Option<(i64, i64)>, x| match acc {
        None => Some((x, x)),
        Some((a, b)) => Some((a.min(x), b.max(x))),
    })?;
    let k1 = HalfInt(hi - (2 * sp - n));
    let k2 = HalfInt((n - 2 * sm) - lo);
    // both differences are multiples of 4; halve once to land on the doubled scale
    let k1 = HalfInt(k1.0 / 2);
    let k2 = HalfInt(k2.0 / 2);
    Some(Thickness { k1, k2, k: k1 + k2 + HalfInt(sp + sm - n) })
}

pub fn thickness(h: &BigradedHomology, d: &LinkDiagram) -> ThicknessReport {
    let diag = |pred: fn(&crate::homology::AbelianGroup) -> bool| {
        h.iter().filter(move |(_, g)| pred(g)).map(|(&[i, j], _)| j - 2 * i)
    };
    ThicknessReport {
        full: measure(d, diag(|g| !g.is_zero())),
        free: measure(d, diag(|g| g.free_rank > 0)),
        torsion: measure(d, diag(|g| !g.torsion().is_empty())),
    }
}

/// Values of j − 2i carrying torsion, ascending.
pub fn torsion_diagonals(h: &BigradedHomology) -> Vec<i64> {
    let mut v: Vec<i64> = h.iter().filter(|(_, g)| !g.torsion().is_empty()).map(|(&[i, j], _)| j - 2 * i).collect();
    v.sort_unstable();
    v.dedup();
    v
}
