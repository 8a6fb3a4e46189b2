use std::collections::HashMap;

use super::{Crossing, HalfEdge, LinkDiagram};
use crate::error::{Error, Result};

/// Closure of a braid word on `strands` strands. Generator `i` (1-based)
/// crosses positions `i-1` and `i`; a positive generator gives a positive
/// crossing for strands oriented left to right.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<LinkDiagram> {
    Ok(braid_closure_parts(strands, word)?.0)
}

/// Also returns the label of the closing arc at every position, together
/// with the slot its braid-direction traversal enters (`None` for a
/// strand position no generator touches, which closes into a free loop).
pub(crate) fn braid_closure_parts(strands: usize, word: &[i32]) -> Result<(LinkDiagram, Vec<(String, Option<HalfEdge>)>)> {
    if strands == 0 {
        return Err(Error::InvalidParameter("a braid needs at least one strand".into()));
    }
    if let Some(g) = word.iter().find(|g| **g == 0 || g.unsigned_abs() as usize >= strands) {
        return Err(Error::InvalidParameter(format!("generator {g} on {strands} strands")));
    }
    let mut next = strands + 1;
    let init: Vec<usize> = (1..=strands).collect();
    let mut cur = init.clone();
    let mut slots: Vec<[usize; 4]> = Vec::with_capacity(word.len());
    // first crossing and slot at which each position's initial arc ends
    let mut first_entry: Vec<Option<HalfEdge>> = vec![None; strands];
    for (c, &g) in word.iter().enumerate() {
        let p = g.unsigned_abs() as usize - 1;
        let (nw, sw) = (cur[p], cur[p + 1]);
        let (ne, se) = (next, next + 1);
        next += 2;
        let x = if g > 0 { [sw, se, ne, nw] } else { [nw, sw, se, ne] };
        for (q, lbl) in [(p, nw), (p + 1, sw)] {
            if lbl == init[q] && first_entry[q].is_none() {
                first_entry[q] = Some(HalfEdge::new(c, x.iter().position(|&l| l == lbl).unwrap()));
            }
        }
        slots.push(x);
        cur[p] = ne;
        cur[p + 1] = se;
    }
    let close: HashMap<usize, usize> = (0..strands).filter(|&q| cur[q] != init[q]).map(|q| (cur[q], init[q])).collect();
    let crossings = slots
        .into_iter()
        .map(|x| Crossing { slots: x.map(|l| close.get(&l).copied().unwrap_or(l).to_string()) })
        .collect();
    let loops: Vec<Option<String>> =
        (0..strands).filter(|&q| cur[q] == init[q]).map(|q| Some(init[q].to_string())).collect();
    let d = LinkDiagram::from_parts(crossings, loops)?;
    let closing = (0..strands).map(|q| (init[q].to_string(), first_entry[q])).collect();
    Ok((d, closing))
}

/// Two-strand torus diagram with |n| crossings, negative n for the left
/// handed family.
pub fn torus2(n: i64) -> Result<LinkDiagram> {
    if n == 0 {
        return Err(Error::InvalidParameter("torus2 needs n != 0".into()));
    }
    let g = if n > 0 { 1 } else { -1 };
    let word = vec![g; n.unsigned_abs() as usize];
    Ok(braid_closure(2, &word)?.with_label(format!("torus2({n})")))
}

/// `m` copies of torus2(-2) joined in a row by connected sums.
pub fn hopf_chain(m: usize) -> Result<LinkDiagram> {
    if m == 0 {
        return Err(Error::InvalidParameter("hopf_chain needs m >= 1".into()));
    }
    let hopf = torus2(-2)?;
    // components of torus2(-2) before relabeling: {1, 4} and {2, 3}
    let (mut d, _) = hopf.relabeled(1);
    let mut tail = "2".to_string();
    for _ in 1..m {
        let (next, map) = connected_sum_parts(&d, &tail, &hopf, "1")?;
        tail = map["2"].clone();
        d = next;
    }
    Ok(d.with_label(format!("hopf_chain({m})")))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComposeMode {
    Disjoint,
    /// Cut the named arc of each diagram and reconnect the four ends.
    ConnectedSum(String, String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kink {
    /// r₊₁: the positive smoothing splits off the new loop.
    Positive,
    /// r₋₁: the negative smoothing splits off the new loop.
    Negative,
}

impl LinkDiagram {
    pub fn compose(&self, other: &LinkDiagram, mode: &ComposeMode) -> Result<LinkDiagram> {
        match mode {
            ComposeMode::Disjoint => Ok(disjoint_parts(self, other).0),
            ComposeMode::ConnectedSum(a, b) => Ok(connected_sum_parts(self, a, other, b)?.0),
        }
    }

    pub fn disjoint_union(&self, other: &LinkDiagram) -> LinkDiagram {
        self.compose(other, &ComposeMode::Disjoint).expect("disjoint union cannot fail")
    }

    /// Insert a one-crossing kink on `arc`, appended as the last crossing.
    pub fn with_kink(&self, arc: &str, kink: Kink) -> Result<LinkDiagram> {
        let n = self.n_crossings();
        let u = self.fresh_label(&[]);
        let v = self.fresh_label(&[&u]);
        let l = self.fresh_label(&[&u, &v]);
        let mut cs = self.crossings.clone();
        let mut loops = self.loops.clone();
        let new = match self.loops.iter().position(|x| x.as_deref() == Some(arc)) {
            Some(k) => {
                // the loop closes up through the kink
                loops.remove(k);
                match kink {
                    Kink::Positive => [l.clone(), l.clone(), u.clone(), u.clone()],
                    Kink::Negative => [u.clone(), l.clone(), l.clone(), u.clone()],
                }
            }
            None => {
                let [h1, h2] = self.arc_ends(arc)?;
                cs[h1.crossing()].slots[h1.slot()] = u.clone();
                cs[h2.crossing()].slots[h2.slot()] = v.clone();
                match kink {
                    Kink::Positive => [l.clone(), l.clone(), u.clone(), v.clone()],
                    Kink::Negative => [u.clone(), l.clone(), l.clone(), v.clone()],
                }
            }
        };
        cs.push(Crossing { slots: new });
        debug_assert_eq!(cs.len(), n + 1);
        LinkDiagram::from_parts(cs, loops)
    }
}

fn disjoint_parts(a: &LinkDiagram, b: &LinkDiagram) -> (LinkDiagram, HashMap<String, String>) {
    let (ra, _) = a.relabeled(1);
    let offset = ra.n_arcs() + ra.loops.iter().flatten().count() + 1;
    let (rb, map_b) = b.relabeled(offset);
    let mut cs = ra.crossings.clone();
    cs.extend(rb.crossings.iter().cloned());
    let mut loops = ra.loops.clone();
    loops.extend(rb.loops.iter().cloned());
    let d = LinkDiagram::from_parts(cs, loops).expect("disjoint labels");
    (d, map_b)
}

/// Connected sum at arc `x` of `a` and arc `y` of `b`. Returns the result
/// and the map from `b`'s labels to labels of the result.
fn connected_sum_parts(a: &LinkDiagram, x: &str, b: &LinkDiagram, y: &str) -> Result<(LinkDiagram, HashMap<String, String>)> {
    if !a.has_label(x) {
        return Err(Error::UnknownArc(x.to_string()));
    }
    if !b.has_label(y) {
        return Err(Error::UnknownArc(y.to_string()));
    }
    let (ra, map_a) = a.relabeled(1);
    let offset = ra.n_arcs() + ra.loops.iter().flatten().count() + 1;
    let (rb, map_b) = b.relabeled(offset);
    let (x, y) = (map_a[x].clone(), map_b[y].clone());
    let mut loops: Vec<Option<String>> = Vec::new();
    let mut cs = ra.crossings.clone();
    cs.extend(rb.crossings.iter().cloned());
    let a_loop = ra.loops.iter().position(|l| l.as_deref() == Some(x.as_str()));
    let b_loop = rb.loops.iter().position(|l| l.as_deref() == Some(y.as_str()));
    let n_a = ra.n_crossings();
    let mut result_b = map_b.clone();
    match (a_loop, b_loop) {
        (Some(_), _) => {
            // summing with a crossingless circle leaves the other side as is
            loops.extend(ra.loops.iter().filter(|l| l.as_deref() != Some(x.as_str())).cloned());
            loops.extend(rb.loops.iter().cloned());
        }
        (None, Some(_)) => {
            loops.extend(ra.loops.iter().cloned());
            loops.extend(rb.loops.iter().filter(|l| l.as_deref() != Some(y.as_str())).cloned());
            for v in result_b.values_mut() {
                if *v == y {
                    *v = x.clone();
                }
            }
        }
        (None, None) => {
            loops.extend(ra.loops.iter().cloned());
            loops.extend(rb.loops.iter().cloned());
            let [_, h2] = ra.arc_ends(&x)?;
            let [g1, _] = rb.arc_ends(&y)?;
            // x now joins h1 to g1 and y joins g2 to h2
            let g1 = HalfEdge::new(g1.crossing() + n_a, g1.slot());
            cs[h2.crossing()].slots[h2.slot()] = y.clone();
            cs[g1.crossing()].slots[g1.slot()] = x.clone();
        }
    }
    let d = LinkDiagram::from_parts(cs, loops)?;
    let (d, final_map) = d.relabeled(1);
    let composed = result_b.into_iter().map(|(k, v)| (k, final_map[&v].clone())).collect();
    Ok((d, composed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameters() {
        assert!(torus2(0).is_err());
        assert!(hopf_chain(0).is_err());
        assert!(braid_closure(2, &[2]).is_err());
    }

    #[test]
    fn crossing_counts_add() {
        let t = torus2(-3).unwrap();
        let h = torus2(-2).unwrap();
        let s = t.compose(&h, &ComposeMode::ConnectedSum("1".into(), "1".into())).unwrap();
        assert_eq!(s.n_crossings(), 5);
        assert!(s.is_planar());
        assert_eq!(s.components().len(), 2);
        let u = t.compose(&h, &ComposeMode::Disjoint).unwrap();
        assert_eq!(u.n_crossings(), 5);
        assert_eq!(u.split_components(), 2);
    }

    #[test]
    fn disjoint_unknots() {
        let u = LinkDiagram::unknot();
        let d = u.compose(&u, &ComposeMode::Disjoint).unwrap();
        assert_eq!((d.n_crossings(), d.n_free_loops()), (0, 2));
    }

    #[test]
    fn unknown_arc() {
        let t = torus2(-3).unwrap();
        let r = t.compose(&t, &ComposeMode::ConnectedSum("nope".into(), "1".into()));
        assert_eq!(r, Err(Error::UnknownArc("nope".into())));
    }

    #[test]
    fn hopf_chain_shape() {
        for m in 1..5 {
            let d = hopf_chain(m).unwrap();
            assert_eq!(d.n_crossings(), 2 * m);
            assert_eq!(d.components().len(), m + 1);
            assert!(d.is_connected() && d.is_planar());
        }
    }

    #[test]
    fn braid_with_idle_strand() {
        let d = braid_closure(3, &[1, 1]).unwrap();
        assert_eq!((d.n_crossings(), d.n_free_loops()), (2, 1));
    }

    #[test]
    fn kinks_shift_circle_counts() {
        let t = torus2(-3).unwrap();
        let (p, m) = t.extreme_circle_counts();
        let kp = t.with_kink("1", Kink::Positive).unwrap();
        assert!(kp.is_planar());
        assert_eq!(kp.extreme_circle_counts(), (p + 1, m));
        let km = t.with_kink("1", Kink::Negative).unwrap();
        assert_eq!(km.extreme_circle_counts(), (p, m + 1));
        let u = LinkDiagram::unknot().with_kink("0", Kink::Positive).unwrap();
        assert_eq!((u.n_crossings(), u.n_free_loops()), (1, 0));
        assert_eq!(u.extreme_circle_counts(), (2, 1));
    }
}
