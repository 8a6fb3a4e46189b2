//! State graphs G_s(D): a vertex per circle of D_s and an edge per crossing.

use std::fmt::Write as _;

use serde::Serialize;

use crate::diagram::{KauffmanState, LinkDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub crossing: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// Vertices are numbered like the circles of the state: traced circles by
/// minimal half-edge, free loops last.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StateGraph {
    pub vertices: usize,
    pub edges: Vec<Edge>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Adequacy {
    pub plus: bool,
    pub minus: bool,
    pub doubly_plus: bool,
    pub doubly_minus: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cycle {
    /// Closed walk v0 v1 ... v0 without the repeated end.
    pub vertices: Vec<usize>,
    /// Crossing index of each edge, edges[k] joining vertices[k] and vertices[k+1].
    pub crossings: Vec<usize>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleAnalysis {
    pub has_odd_cycle: bool,
    pub even_cycle_with_singular_edge: Option<Cycle>,
}

pub fn build_state_graph(d: &LinkDiagram, s: &KauffmanState) -> StateGraph {
    assert_eq!(s.len(), d.n_crossings(), "state length must equal the crossing count");
    let mut circ = vec![0u16; 4 * d.n_crossings()];
    let traced = d.trace_circles(s.mask(), &mut circ);
    // the two smoothed arcs at a crossing always contain slots 0 and 2
    let edges = (0..d.n_crossings())
        .map(|c| Edge { u: circ[4 * c] as usize, v: circ[4 * c + 2] as usize, crossing: c })
        .collect();
    StateGraph { vertices: traced + d.n_free_loops(), edges }
}

pub fn adequacy(d: &LinkDiagram) -> Adequacy {
    let (p, m) = d.special_states();
    let gp = build_state_graph(d, &p);
    let gm = build_state_graph(d, &m);
    Adequacy {
        plus: gp.is_loopless(),
        minus: gm.is_loopless(),
        doubly_plus: gp.is_loopless() && !gp.has_multi_edge(),
        doubly_minus: gm.is_loopless() && !gm.has_multi_edge(),
    }
}

pub fn cycle_analysis(g: &StateGraph) -> CycleAnalysis {
    CycleAnalysis { has_odd_cycle: !g.is_bipartite(), even_cycle_with_singular_edge: g.even_cycle_with_singular_edge() }
}

impl StateGraph {
    pub fn is_loopless(&self) -> bool {
        self.edges.iter().all(|e| !e.is_loop())
    }

    fn parallel_count(&self, e: &Edge) -> usize {
        self.edges.iter().filter(|f| (f.u, f.v) == (e.u, e.v) || (f.u, f.v) == (e.v, e.u)).count()
    }

    pub fn has_multi_edge(&self) -> bool {
        self.edges.iter().any(|e| !e.is_loop() && self.parallel_count(e) > 1)
    }

    /// A non-loop edge whose endpoint pair no other edge shares.
    pub fn is_singular(&self, e: &Edge) -> bool {
        !e.is_loop() && self.parallel_count(e) == 1
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices];
        for e in &self.edges {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices == 0 {
            return true;
        }
        let mut seen = vec![false; self.vertices];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for e in &self.edges {
                if e.u == x || e.v == x {
                    let y = e.other(x);
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    /// Two-colouring by breadth-first search; loops make a graph non-bipartite.
    pub fn is_bipartite(&self) -> bool {
        let mut colour: Vec<Option<bool>> = vec![None; self.vertices];
        for root in 0..self.vertices {
            if colour[root].is_some() {
                continue;
            }
            colour[root] = Some(false);
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                let cx = colour[x].unwrap();
                for e in self.edges.iter().filter(|e| e.u == x || e.v == x) {
                    let y = e.other(x);
                    match colour[y] {
                        None => {
                            colour[y] = Some(!cx);
                            queue.push_back(y);
                        }
                        Some(cy) if cy == cx => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// Shortest even cycle of length at least 4 through a singular edge.
    /// Ties go to the singular edge with the smallest crossing index, then
    /// to the first path found with edges tried in crossing order.
    pub fn even_cycle_with_singular_edge(&self) -> Option<Cycle> {
        let singular: Vec<&Edge> = self.edges.iter().filter(|e| self.is_singular(e)).collect();
        let mut len = 3;
        while len < self.vertices {
            for e in &singular {
                if let Some((verts, crossings)) = self.simple_path(e.v, e.u, len, e.crossing) {
                    let mut vertices = vec![e.u];
                    vertices.extend(&verts[..verts.len() - 1]);
                    let mut cs = vec![e.crossing];
                    cs.extend(crossings);
                    return Some(Cycle { vertices, crossings: cs });
                }
            }
            len += 2;
        }
        None
    }

    /// A simple path of exactly `len` edges from `a` to `b` avoiding the
    /// edge at crossing `skip`.
    fn simple_path(&self, a: usize, b: usize, len: usize, skip: usize) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut on_path = vec![false; self.vertices];
        let mut verts = vec![a];
        let mut cs = Vec::new();
        on_path[a] = true;
        if self.extend(b, len, skip, &mut on_path, &mut verts, &mut cs) {
            Some((verts, cs))
        } else {
            None
        }
    }

    fn extend(&self, b: usize, len: usize, skip: usize, on_path: &mut [bool], verts: &mut Vec<usize>, cs: &mut Vec<usize>) -> bool {
        let x = *verts.last().unwrap();
        if cs.len() == len {
            return x == b;
        }
        for e in &self.edges {
            if e.crossing == skip || e.is_loop() || !(e.u == x || e.v == x) {
                continue;
            }
            let y = e.other(x);
            let last = cs.len() + 1 == len;
            if on_path[y] || (y == b) != last {
                continue;
            }
            on_path[y] = true;
            verts.push(y);
            cs.push(e.crossing);
            if self.extend(b, len, skip, on_path, verts, cs) {
                return true;
            }
            on_path[y] = false;
            verts.pop();
            cs.pop();
        }
        false
    }

    /// One `u v crossing` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        for e in &self.edges {
            let _ = writeln!(s, "{} {} {}", e.u, e.v, e.crossing);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{braid_closure, parse_pd, torus2};

    fn graph(vertices: usize, edges: &[(usize, usize)]) -> StateGraph {
        StateGraph {
            vertices,
            edges: edges.iter().enumerate().map(|(c, &(u, v))| Edge { u, v, crossing: c }).collect(),
        }
    }

    #[test]
    fn torus_graphs_are_polygons() {
        for n in 2..7 {
            let d = torus2(-n).unwrap();
            let g = build_state_graph(&d, &d.special_states().0);
            assert_eq!((g.vertices, g.edges.len()), (n as usize, n as usize));
            assert!(g.degrees().iter().all(|&k| k == 2));
            assert!(g.is_connected());
            assert_eq!(g.is_bipartite(), n % 2 == 0);
        }
    }

    #[test]
    fn unknot_and_kinks() {
        let g = build_state_graph(&LinkDiagram::unknot(), &KauffmanState::all_positive(0));
        assert_eq!((g.vertices, g.edges.len()), (1, 0));
        let kink = parse_pd("X(1,1,2,2)").unwrap();
        let a = adequacy(&kink);
        assert!(!(a.plus && a.minus));
        let sizes: Vec<usize> =
            [KauffmanState::all_positive(1), KauffmanState::all_negative(1)].iter().map(|s| build_state_graph(&kink, s).vertices).collect();
        let mut sorted = sizes.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 2]);
    }

    #[test]
    fn adequacy_examples() {
        let a = adequacy(&torus2(-3).unwrap());
        assert!(a.plus && a.minus && !a.doubly_minus);
        let w: Vec<i32> = [1, 2].repeat(4);
        let a = adequacy(&braid_closure(3, &w).unwrap());
        assert!(a.plus && !a.minus);
    }

    #[test]
    fn cycles() {
        let tri = graph(3, &[(0, 1), (1, 2), (2, 0)]);
        assert!(cycle_analysis(&tri).has_odd_cycle);
        assert_eq!(cycle_analysis(&tri).even_cycle_with_singular_edge, None);
        let sq = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let c = cycle_analysis(&sq);
        assert!(!c.has_odd_cycle);
        let cyc = c.even_cycle_with_singular_edge.unwrap();
        assert_eq!(cyc.len(), 4);
        assert_eq!(cyc.crossings[0], 0);
        let doubled = graph(4, &[(0, 1), (0, 1), (1, 2), (1, 2), (2, 3), (2, 3), (3, 0), (3, 0)]);
        let c = cycle_analysis(&doubled);
        assert!(!c.has_odd_cycle && c.even_cycle_with_singular_edge.is_none());
        let loopy = graph(2, &[(0, 1), (1, 1)]);
        assert!(!loopy.is_bipartite() && !loopy.is_loopless());
    }

    #[test]
    fn shortest_even_cycle_is_found() {
        // hexagon with a chord making a 4-cycle
        let g = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]);
        let c = g.even_cycle_with_singular_edge().unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(g.to_edge_list().lines().count(), 7);
    }
}
