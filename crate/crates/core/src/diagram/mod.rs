//! PD-coded link diagrams, Kauffman states and their circle systems.
//!
//! A crossing lists its four arc labels counterclockwise starting from an
//! under-strand slot, so slots 0 and 2 are under and 1 and 3 are over.
//! The positive marker joins slots (0,1) and (2,3), the negative marker
//! joins (0,3) and (1,2).

pub(crate) mod families;
mod orient;
mod pd;

pub use families::{braid_closure, hopf_chain, torus2, ComposeMode, Kink};
pub use orient::{Component, Orientation};
pub use pd::parse_pd;

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};

/// One of the four slots of a crossing, addressed as `4 * crossing + slot`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfEdge(pub usize);

impl HalfEdge {
    pub fn new(crossing: usize, slot: usize) -> Self {
        HalfEdge(4 * crossing + slot)
    }
    pub fn crossing(self) -> usize {
        self.0 / 4
    }
    pub fn slot(self) -> usize {
        self.0 % 4
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Marker {
    Positive,
    Negative,
}

impl Marker {
    pub fn value(self) -> i64 {
        match self {
            Marker::Positive => 1,
            Marker::Negative => -1,
        }
    }

    /// Slot joined to `slot` by this smoothing.
    #[inline]
    pub fn pair(self, slot: usize) -> usize {
        match self {
            Marker::Positive => slot ^ 1,
            Marker::Negative => 3 - slot,
        }
    }
}

/// A marker per crossing. Bit `c` of the mask form is set when crossing `c`
/// carries a negative marker.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KauffmanState {
    markers: Vec<Marker>,
}

impl KauffmanState {
    pub fn new(markers: Vec<Marker>) -> Self {
        KauffmanState { markers }
    }

    pub fn all_positive(n: usize) -> Self {
        KauffmanState { markers: vec![Marker::Positive; n] }
    }

    pub fn all_negative(n: usize) -> Self {
        KauffmanState { markers: vec![Marker::Negative; n] }
    }

    pub fn from_mask(n: usize, mask: u64) -> Self {
        let markers = (0..n)
            .map(|c| if mask >> c & 1 == 1 { Marker::Negative } else { Marker::Positive })
            .collect();
        KauffmanState { markers }
    }

    pub fn mask(&self) -> u64 {
        assert!(self.markers.len() <= 64, "mask form needs at most 64 crossings");
        self.markers
            .iter()
            .enumerate()
            .filter(|(_, m)| **m == Marker::Negative)
            .fold(0, |acc, (c, _)| acc | 1 << c)
    }

    pub fn markers(&self) -> &[Marker] {
        &self.markers
    }

    pub fn len(&self) -> usize {
        self.markers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.markers.is_empty()
    }

    pub fn sigma(&self) -> i64 {
        self.markers.iter().map(|m| m.value()).sum()
    }

    pub fn negated(&self) -> Self {
        let markers = self
            .markers
            .iter()
            .map(|m| match m {
                Marker::Positive => Marker::Negative,
                Marker::Negative => Marker::Positive,
            })
            .collect();
        KauffmanState { markers }
    }
}

/// Circles of a smoothing. Circles through crossings come first, sorted by
/// their minimal half-edge; free loops follow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateCircles {
    pub circles: Vec<Vec<HalfEdge>>,
    pub free_loops: usize,
}

impl StateCircles {
    pub fn count(&self) -> usize {
        self.circles.len() + self.free_loops
    }

    pub fn circle_of(&self, h: HalfEdge) -> Option<usize> {
        self.circles.iter().position(|c| c.contains(&h))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub slots: [String; 4],
}

#[derive(Clone, Debug)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    loops: Vec<Option<String>>,
    pub label: Option<String>,
    // derived data
    partner: Vec<usize>,
    arc_of: Vec<usize>,
    arcs: Vec<Arc>,
}

#[derive(Clone, Debug)]
struct Arc {
    label: String,
    /// Reference direction runs from `ends[0]` to `ends[1]`.
    ends: [HalfEdge; 2],
}

impl PartialEq for LinkDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.crossings == other.crossings && self.loops == other.loops
    }
}

impl Eq for LinkDiagram {}

/// Numeric labels compare as numbers and sort before non-numeric ones.
pub fn label_cmp(a: &str, b: &str) -> Ordering {
    match (a.parse::<i128>(), b.parse::<i128>()) {
        (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        (Err(_), Err(_)) => a.cmp(b),
    }
}

impl LinkDiagram {
    pub fn empty() -> Self {
        Self::from_parts(Vec::new(), Vec::new()).expect("empty diagram is valid")
    }

    /// Crossingless unknot as a single labelled free loop.
    pub fn unknot() -> Self {
        Self::from_parts(Vec::new(), vec![Some("0".to_string())]).expect("valid")
    }

    pub fn free_loops(n: usize) -> Self {
        Self::from_parts(Vec::new(), vec![None; n]).expect("valid")
    }

    pub fn from_crossings<S: AsRef<str>>(crossings: &[[S; 4]]) -> Result<Self> {
        let cs = crossings
            .iter()
            .map(|c| Crossing { slots: c.each_ref().map(|s| s.as_ref().to_string()) })
            .collect();
        Self::from_parts(cs, Vec::new())
    }

    pub fn from_parts(crossings: Vec<Crossing>, loops: Vec<Option<String>>) -> Result<Self> {
        let n = crossings.len();
        let mut seen: HashMap<&str, Vec<HalfEdge>> = HashMap::new();
        let mut order: Vec<&str> = Vec::new();
        for (c, x) in crossings.iter().enumerate() {
            for (k, l) in x.slots.iter().enumerate() {
                let e = seen.entry(l.as_str()).or_default();
                if e.is_empty() {
                    order.push(l.as_str());
                }
                e.push(HalfEdge::new(c, k));
            }
        }
        for l in loops.iter().flatten() {
            if seen.contains_key(l.as_str()) {
                return Err(Error::ArcDegree { label: l.clone(), count: seen[l.as_str()].len() + 1 });
            }
        }
        let mut loop_labels: Vec<&str> = loops.iter().flatten().map(|s| s.as_str()).collect();
        loop_labels.sort_unstable();
        if let Some(w) = loop_labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::ArcDegree { label: w[0].to_string(), count: 2 });
        }

        let mut partner = vec![0; 4 * n];
        let mut arc_of = vec![0; 4 * n];
        let mut arcs = Vec::with_capacity(2 * n);
        for l in order {
            let hs = &seen[l];
            if hs.len() != 2 {
                return Err(Error::ArcDegree { label: l.to_string(), count: hs.len() });
            }
            let (a, b) = (hs[0], hs[1]);
            partner[a.0] = b.0;
            partner[b.0] = a.0;
            arc_of[a.0] = arcs.len();
            arc_of[b.0] = arcs.len();
            arcs.push(Arc { label: l.to_string(), ends: reference_ends(a, b) });
        }
        Ok(LinkDiagram { crossings, loops, label: None, partner, arc_of, arcs })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn n_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn n_free_loops(&self) -> usize {
        self.loops.len()
    }

    pub fn free_loop_labels(&self) -> &[Option<String>] {
        &self.loops
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty() && self.loops.is_empty()
    }

    pub fn n_arcs(&self) -> usize {
        self.arcs.len()
    }

    pub fn arc_labels(&self) -> impl Iterator<Item = &str> {
        self.arcs.iter().map(|a| a.label.as_str())
    }

    /// Every arc runs from an over slot to an under slot.
    pub fn is_alternating(&self) -> bool {
        self.arcs.iter().all(|a| a.ends[0].slot() % 2 != a.ends[1].slot() % 2)
    }

    pub fn has_label(&self, label: &str) -> bool {
        self.arcs.iter().any(|a| a.label == label) || self.loops.iter().flatten().any(|l| l == label)
    }

    /// Both slots carrying `label`, in reference order.
    pub fn arc_ends(&self, label: &str) -> Result<[HalfEdge; 2]> {
        self.arcs
            .iter()
            .find(|a| a.label == label)
            .map(|a| a.ends)
            .ok_or_else(|| Error::UnknownArc(label.to_string()))
    }

    pub fn slot_label(&self, h: HalfEdge) -> &str {
        &self.crossings[h.crossing()].slots[h.slot()]
    }

    #[inline]
    pub fn partner(&self, h: HalfEdge) -> HalfEdge {
        HalfEdge(self.partner[h.0])
    }

    pub(crate) fn arc_index(&self, h: usize) -> usize {
        self.arc_of[h]
    }

    /// +1 when leaving along the arc at `h` follows the reference direction.
    pub(crate) fn arc_direction_from(&self, h: usize) -> i64 {
        if self.arcs[self.arc_of[h]].ends[0].0 == h {
            1
        } else {
            -1
        }
    }

    /// Assign a circle id to every half-edge under the state `mask`.
    /// Returns the number of circles through crossings; free loops are not
    /// written but are counted by [`LinkDiagram::n_free_loops`].
    pub fn trace_circles(&self, mask: u64, out: &mut [u16]) -> usize {
        self.trace_circles_visit(mask, out, |_, _| {})
    }

    /// As [`LinkDiagram::trace_circles`], calling `visit(circle, h)` for every
    /// arc traversed from half-edge `h` to its partner.
    pub fn trace_circles_visit(&self, mask: u64, out: &mut [u16], mut visit: impl FnMut(u16, usize)) -> usize {
        let m = 4 * self.crossings.len();
        debug_assert!(out.len() >= m);
        out[..m].fill(u16::MAX);
        let mut count = 0u16;
        for start in 0..m {
            if out[start] != u16::MAX {
                continue;
            }
            let mut cur = start;
            loop {
                out[cur] = count;
                visit(count, cur);
                let p = self.partner[cur];
                out[p] = count;
                let nxt = pair_in_state(mask, p);
                if nxt == start {
                    break;
                }
                cur = nxt;
            }
            count += 1;
        }
        count as usize
    }

    pub fn smooth(&self, s: &KauffmanState) -> StateCircles {
        assert_eq!(s.len(), self.n_crossings(), "state length must equal the crossing count");
        let m = 4 * self.n_crossings();
        let mut visited = vec![false; m];
        let mut circles = Vec::new();
        for start in 0..m {
            if visited[start] {
                continue;
            }
            let mut circle = Vec::new();
            let mut cur = start;
            loop {
                visited[cur] = true;
                circle.push(HalfEdge(cur));
                let p = self.partner[cur];
                visited[p] = true;
                circle.push(HalfEdge(p));
                let x = HalfEdge(p);
                let nxt = HalfEdge::new(x.crossing(), s.markers[x.crossing()].pair(x.slot())).0;
                if nxt == start {
                    break;
                }
                cur = nxt;
            }
            circles.push(circle);
        }
        StateCircles { circles, free_loops: self.n_free_loops() }
    }

    pub fn circle_count(&self, s: &KauffmanState) -> usize {
        let mut buf = vec![0u16; 4 * self.n_crossings()];
        self.trace_circles(s.mask(), &mut buf) + self.n_free_loops()
    }

    pub fn special_states(&self) -> (KauffmanState, KauffmanState) {
        let n = self.n_crossings();
        (KauffmanState::all_positive(n), KauffmanState::all_negative(n))
    }

    /// (|s₊|, |s₋|).
    pub fn extreme_circle_counts(&self) -> (usize, usize) {
        let (p, m) = self.special_states();
        (self.circle_count(&p), self.circle_count(&m))
    }

    /// Swap over and under at every crossing by rotating its slots by one.
    pub fn mirror(&self) -> LinkDiagram {
        let cs = self
            .crossings
            .iter()
            .map(|x| {
                let [a, b, c, d] = x.slots.clone();
                Crossing { slots: [b, c, d, a] }
            })
            .collect();
        let mut d = Self::from_parts(cs, self.loops.clone()).expect("mirror keeps arc degrees");
        d.label = self.label.as_ref().map(|l| format!("mirror({l})"));
        d
    }

    /// Reorder crossings so that new crossing `c` is old crossing `perm[c]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<LinkDiagram> {
        let n = self.n_crossings();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidParameter("not a permutation of the crossings".into()));
        }
        let cs = perm.iter().map(|&p| self.crossings[p].clone()).collect();
        Self::from_parts(cs, self.loops.clone())
    }

    /// Number of connected pieces of the underlying 4-valent graph; each
    /// free loop is its own piece.
    pub fn split_components(&self) -> usize {
        let n = self.n_crossings();
        let mut uf = crate::util::UnionFind::new(n);
        for h in 0..4 * n {
            uf.union(h / 4, self.partner[h] / 4);
        }
        uf.classes() + self.n_free_loops()
    }

    pub fn is_connected(&self) -> bool {
        self.split_components() <= 1
    }

    /// Faces of the planar map: orbits of corners, where corner (c,k) sits
    /// between slots k and k+1.
    pub fn faces(&self) -> Vec<Vec<(usize, usize)>> {
        let n = self.n_crossings();
        let mut seen = vec![false; 4 * n];
        let mut faces = Vec::new();
        for start in 0..4 * n {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                face.push((cur / 4, cur % 4));
                let out = 4 * (cur / 4) + (cur % 4 + 1) % 4;
                cur = self.partner[out];
            }
            faces.push(face);
        }
        faces
    }

    /// Euler characteristic test of the combinatorial map.
    pub fn is_planar(&self) -> bool {
        let n = self.n_crossings();
        let pieces = self.split_components() - self.n_free_loops();
        n as i64 - 2 * n as i64 + self.faces().len() as i64 == 2 * pieces as i64
    }

    /// Remove crossing `v`, joining its slots as `marker` prescribes.
    /// Also returns where each old label went (arc or loop label).
    pub fn smooth_crossing(&self, v: usize, marker: Marker) -> Result<(LinkDiagram, HashMap<String, String>)> {
        if v >= self.n_crossings() {
            return Err(Error::InvalidParameter(format!("no crossing {v}")));
        }
        let x = &self.crossings[v].slots;
        let mut rename: HashMap<String, String> =
            self.arcs.iter().map(|a| (a.label.clone(), a.label.clone())).collect();
        let find = |r: &HashMap<String, String>, mut l: String| {
            while r[&l] != l {
                l = r[&l].clone();
            }
            l
        };
        for k in [0usize, 2] {
            let k2 = marker.pair(k);
            let (a, b) = (find(&rename, x[k].clone()), find(&rename, x[k2].clone()));
            if a != b {
                let (keep, drop) = if label_cmp(&a, &b) == Ordering::Greater { (b, a) } else { (a, b) };
                rename.insert(drop, keep);
            }
        }
        let flat: HashMap<String, String> =
            rename.keys().map(|l| (l.clone(), find(&rename, l.clone()))).collect();
        let cs: Vec<Crossing> = self
            .crossings
            .iter()
            .enumerate()
            .filter(|(c, _)| *c != v)
            .map(|(_, x)| Crossing { slots: x.slots.each_ref().map(|l| flat[l].clone()) })
            .collect();
        let mut loops = self.loops.clone();
        let mut used: Vec<&str> = cs.iter().flat_map(|x| x.slots.iter().map(|s| s.as_str())).collect();
        used.sort_unstable();
        let mut reps: Vec<&String> = flat.values().collect();
        reps.sort_by(|a, b| label_cmp(a, b));
        reps.dedup();
        for r in reps {
            if used.binary_search(&r.as_str()).is_err() {
                loops.push(Some(r.clone()));
            }
        }
        let mut map = flat;
        for l in self.loops.iter().flatten() {
            map.insert(l.clone(), l.clone());
        }
        Ok((Self::from_parts(cs, loops)?, map))
    }

    /// Renumber all labels 1, 2, ... by first appearance, labelled loops last.
    pub fn relabeled(&self, start: usize) -> (LinkDiagram, HashMap<String, String>) {
        let mut map: HashMap<String, String> = HashMap::new();
        let mut next = start;
        let mut fresh = |l: &String, map: &mut HashMap<String, String>| {
            if !map.contains_key(l) {
                map.insert(l.clone(), next.to_string());
                next += 1;
            }
        };
        for x in &self.crossings {
            for l in &x.slots {
                fresh(l, &mut map);
            }
        }
        for l in self.loops.iter().flatten() {
            fresh(l, &mut map);
        }
        let cs = self
            .crossings
            .iter()
            .map(|x| Crossing { slots: x.slots.each_ref().map(|l| map[l].clone()) })
            .collect();
        let loops = self.loops.iter().map(|l| l.as_ref().map(|l| map[l].clone())).collect();
        let mut d = Self::from_parts(cs, loops).expect("relabeling keeps validity");
        d.label = self.label.clone();
        (d, map)
    }

    /// A label not used by the diagram nor listed in `taken`.
    pub(crate) fn fresh_label(&self, taken: &[&str]) -> String {
        let mut k = 1usize;
        loop {
            let s = format!("k{k}");
            if !self.has_label(&s) && !taken.contains(&s.as_str()) {
                return s;
            }
            k += 1;
        }
    }
}

#[inline]
fn pair_in_state(mask: u64, h: usize) -> usize {
    let c = h / 4;
    let k = h % 4;
    let neg = mask >> c & 1 == 1;
    4 * c + if neg { 3 - k } else { k ^ 1 }
}

/// Reference order of an arc's two ends: lower crossing first; for an arc
/// returning to its own crossing through adjacent slots k, k+1 the slot k
/// end comes first. Both rules survive mirroring.
fn reference_ends(a: HalfEdge, b: HalfEdge) -> [HalfEdge; 2] {
    if a.crossing() != b.crossing() {
        return if a.crossing() < b.crossing() { [a, b] } else { [b, a] };
    }
    let (ka, kb) = (a.slot(), b.slot());
    if (ka + 1) % 4 == kb {
        [a, b]
    } else if (kb + 1) % 4 == ka {
        [b, a]
    } else if ka < kb {
        [a, b]
    } else {
        [b, a]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> LinkDiagram {
        torus2(-3).unwrap()
    }

    #[test]
    fn extreme_states_of_left_trefoil() {
        let d = trefoil();
        assert_eq!(d.extreme_circle_counts(), (3, 2));
    }

    #[test]
    fn zero_crossing_unknot_has_one_circle() {
        let d = LinkDiagram::unknot();
        assert_eq!(d.circle_count(&KauffmanState::all_positive(0)), 1);
        let (p, m) = d.special_states();
        assert!(p.is_empty() && m.is_empty());
    }

    #[test]
    fn alternation() {
        assert!(trefoil().is_alternating());
        assert!(LinkDiagram::unknot().is_alternating());
        // 8_19 as a closed 3-braid is not alternating
        assert!(!braid_closure(3, &[1, 2].repeat(4)).unwrap().is_alternating());
        assert!(braid_closure(3, &[1, -2, 1, -2]).unwrap().is_alternating());
    }

    #[test]
    fn torus_n_gon() {
        for n in 2..8 {
            let d = torus2(-n).unwrap();
            assert_eq!(d.extreme_circle_counts().0, n as usize);
        }
    }

    #[test]
    fn one_marker_change_moves_circle_count_by_one() {
        let d = parse_pd("X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)").unwrap();
        let n = d.n_crossings();
        for mask in 0..1u64 << n {
            let a = d.circle_count(&KauffmanState::from_mask(n, mask));
            for v in 0..n {
                let b = d.circle_count(&KauffmanState::from_mask(n, mask ^ 1 << v));
                assert_eq!((a as i64 - b as i64).abs(), 1);
            }
        }
    }

    #[test]
    fn mirror_flips_states() {
        let d = trefoil();
        let m = d.mirror();
        let mm = m.mirror();
        for mask in 0..8 {
            let s = KauffmanState::from_mask(3, mask);
            assert_eq!(d.circle_count(&s), m.circle_count(&s.negated()));
            assert_eq!(d.circle_count(&s), mm.circle_count(&s));
        }
    }

    #[test]
    fn smooth_matches_trace() {
        let d = trefoil();
        let mut buf = vec![0u16; 12];
        for mask in 0..8 {
            let s = KauffmanState::from_mask(3, mask);
            let circles = d.smooth(&s);
            let k = d.trace_circles(mask, &mut buf);
            assert_eq!(circles.count(), k);
            for (id, c) in circles.circles.iter().enumerate() {
                assert!(c.iter().all(|h| buf[h.0] as usize == id));
            }
        }
    }

    #[test]
    fn planarity() {
        assert!(trefoil().is_planar());
        assert!(parse_pd("X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)").unwrap().is_planar());
        // opposite slots joined by one arc
        assert!(!parse_pd("X(1,2,1,2)").unwrap().is_planar());
    }

    #[test]
    fn smoothing_a_kink_leaves_a_free_loop() {
        let d = parse_pd("X(1,1,2,2)").unwrap();
        let (a, _) = d.smooth_crossing(0, Marker::Positive).unwrap();
        assert_eq!((a.n_crossings(), a.n_free_loops()), (0, 2));
        let (b, _) = d.smooth_crossing(0, Marker::Negative).unwrap();
        assert_eq!((b.n_crossings(), b.n_free_loops()), (0, 1));
    }
}
