//! Enhanced states and the differential.
//!
//! Generators are pairs (state mask, sign mask). A set bit in the state
//! mask is a negative marker; a set bit in the sign mask is a negative
//! circle. Circles of a state are numbered by their minimal half-edge and
//! free loops come last.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::group::AbelianGroup;
use super::matrix::IntegerMatrix;
use super::snf::{smith_from_rows, SmithForm};
use super::HomologyConfig;
use crate::diagram::{KauffmanState, LinkDiagram};
use crate::error::{Error, Result};

pub(crate) type Gen = (u64, u64);

/// Circle structure of every Kauffman state.
pub(crate) struct StateTable {
    pub n: usize,
    pub loops: usize,
    circ: Vec<u16>,
    cc: Vec<u16>,
    /// Bit per circle set when the circle is a core circle of the annulus.
    core: Vec<u64>,
}

impl StateTable {
    pub fn build(d: &LinkDiagram, weights: Option<(&[i64], &[i64])>, cfg: &HomologyConfig) -> Result<Self> {
        let n = d.n_crossings();
        if n > cfg.max_crossings {
            return Err(Error::SizeLimit(format!("{n} crossings exceed the limit {}", cfg.max_crossings)));
        }
        if n > 40 {
            return Err(Error::SizeLimit(format!("{n} crossings cannot be enumerated")));
        }
        let loops = d.n_free_loops();
        let states = 1usize << n;
        let mut circ = vec![0u16; states * 4 * n];
        let mut cc = vec![0u16; states];
        let mut core = vec![0u64; states];
        let mut total: u128 = 0;
        let mut winding: Vec<i64> = Vec::new();
        for s in 0..states {
            let out = &mut circ[s * 4 * n..(s + 1) * 4 * n];
            winding.clear();
            let k = d.trace_circles_visit(s as u64, out, |c, h| {
                if let Some((w, _)) = weights {
                    if winding.len() <= c as usize {
                        winding.resize(c as usize + 1, 0);
                    }
                    winding[c as usize] += d.arc_direction_from(h) * w[d.arc_index(h)];
                }
            });
            let circles = k + loops;
            if circles > 64 {
                return Err(Error::SizeLimit(format!("a state has {circles} circles (at most 64 supported)")));
            }
            cc[s] = k as u16;
            if let Some((_, lw)) = weights {
                let mut bits = 0u64;
                for (c, w) in winding.iter().enumerate() {
                    match w.abs() {
                        0 => {}
                        1 => bits |= 1 << c,
                        _ => {
                            return Err(Error::InvalidAnnulus(format!(
                                "circle {c} of state {s:#b} winds {w} times around the core"
                            )))
                        }
                    }
                }
                for (l, w) in lw.iter().enumerate() {
                    match w.abs() {
                        0 => {}
                        1 => bits |= 1 << (k + l),
                        _ => return Err(Error::InvalidAnnulus(format!("free loop {l} winds {w} times"))),
                    }
                }
                core[s] = bits;
            }
            total += 1u128 << circles;
        }
        if total > cfg.max_generators as u128 {
            return Err(Error::SizeLimit(format!(
                "{total} enhanced states exceed the budget of {}",
                cfg.max_generators
            )));
        }
        Ok(StateTable { n, loops, circ, cc, core })
    }

    #[inline]
    pub fn circles(&self, s: u64) -> usize {
        self.cc[s as usize] as usize + self.loops
    }

    /// Circles through crossings, excluding free loops.
    #[inline]
    pub fn traced(&self, s: u64) -> usize {
        self.cc[s as usize] as usize
    }

    #[inline]
    pub fn circle_of(&self, s: u64, h: usize) -> usize {
        self.circ[s as usize * 4 * self.n + h] as usize
    }

    #[inline]
    pub fn core_mask(&self, s: u64) -> u64 {
        self.core[s as usize]
    }

    fn crossing_circles(&self, s: u64) -> &[u16] {
        &self.circ[s as usize * 4 * self.n..(s as usize + 1) * 4 * self.n]
    }

    /// (i, j, k) of a generator.
    #[inline]
    pub fn grading(&self, (s, signs): Gen) -> (i64, i64, i64) {
        let c = self.circles(s);
        let all = if c == 64 { u64::MAX } else { (1u64 << c) - 1 };
        let core = self.core_mask(s);
        let trivial = all & !core;
        let i = self.n as i64 - 2 * s.count_ones() as i64;
        let tau = trivial.count_ones() as i64 - 2 * (signs & trivial).count_ones() as i64;
        let k = core.count_ones() as i64 - 2 * (signs & core).count_ones() as i64;
        (i, i + 2 * tau, k)
    }

    fn transition(&self, s: u64, v: usize) -> Transition {
        let t = s | 1 << v;
        let cs = self.crossing_circles(s);
        let ct = self.crossing_circles(t);
        let mut src = vec![cs[4 * v] as usize, cs[4 * v + 2] as usize];
        src.dedup();
        let mut dst = vec![ct[4 * v] as usize, ct[4 * v + 1] as usize];
        dst.dedup();
        let mut map = vec![u8::MAX; self.circles(s)];
        for h in 0..4 * self.n {
            let c = cs[h] as usize;
            if !src.contains(&c) {
                map[c] = ct[h] as u8;
            }
        }
        let (ks, kt) = (self.cc[s as usize] as usize, self.cc[t as usize] as usize);
        for l in 0..self.loops {
            map[ks + l] = (kt + l) as u8;
        }
        let (core_s, core_t) = (self.core_mask(s), self.core_mask(t));
        // allowed touched sign patterns: trivial τ up by one, κ unchanged
        let weigh = |circles: &[usize], core: u64, bits: u64| -> (i64, i64) {
            let mut tau = 0;
            let mut kappa = 0;
            for &c in circles {
                let sgn = if bits >> c & 1 == 1 { -1 } else { 1 };
                if core >> c & 1 == 1 {
                    kappa += sgn;
                } else {
                    tau += sgn;
                }
            }
            (tau, kappa)
        };
        let mut outs = Vec::with_capacity(1 << src.len());
        for combo in 0..1u64 << src.len() {
            let src_bits = src.iter().enumerate().fold(0u64, |b, (k, &c)| b | (combo >> k & 1) << c);
            let (tau0, kappa0) = weigh(&src, core_s, src_bits);
            let mut list = Vec::new();
            for dcombo in 0..1u64 << dst.len() {
                let dst_bits = dst.iter().enumerate().fold(0u64, |b, (k, &c)| b | (dcombo >> k & 1) << c);
                let (tau1, kappa1) = weigh(&dst, core_t, dst_bits);
                if tau1 == tau0 + 1 && kappa1 == kappa0 {
                    list.push(dst_bits);
                }
            }
            outs.push(list);
        }
        let sign = if (s >> (v + 1)).count_ones() % 2 == 0 { 1 } else { -1 };
        Transition { target: t, src, map, outs, sign }
    }
}

struct Transition {
    target: u64,
    src: Vec<usize>,
    map: Vec<u8>,
    outs: Vec<Vec<u64>>,
    sign: i64,
}

impl Transition {
    fn images(&self, signs: u64, mut f: impl FnMut(u64)) {
        let mut base = 0u64;
        let mut rest = signs;
        while rest != 0 {
            let c = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let m = self.map[c];
            if m != u8::MAX {
                base |= 1 << m;
            }
        }
        let combo = self.src.iter().enumerate().fold(0usize, |b, (k, &c)| b | ((signs >> c & 1) as usize) << k);
        for &o in &self.outs[combo] {
            f(base | o);
        }
    }
}

/// Which generators span the complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Variant {
    Full,
    /// Basepoint circle positive (a subcomplex).
    Reduced(Basepoint),
    /// Basepoint circle negative (the quotient complex).
    Coreduced(Basepoint),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Basepoint {
    HalfEdge(usize),
    Loop(usize),
}

pub(crate) struct Complex {
    pub table: StateTable,
    /// (j, k) → i → generators sorted by (state, signs).
    slices: BTreeMap<(i64, i64), BTreeMap<i64, Vec<Gen>>>,
    jobs: Option<usize>,
}

impl Complex {
    pub fn build(table: StateTable, variant: Variant, cfg: &HomologyConfig) -> Self {
        let mut slices: BTreeMap<(i64, i64), BTreeMap<i64, Vec<Gen>>> = BTreeMap::new();
        for s in 0..1u64 << table.n {
            let c = table.circles(s);
            let keep = |signs: u64| -> bool {
                match variant {
                    Variant::Full => true,
                    Variant::Reduced(bp) => signs >> basepoint_circle(&table, s, bp) & 1 == 0,
                    Variant::Coreduced(bp) => signs >> basepoint_circle(&table, s, bp) & 1 == 1,
                }
            };
            let top = if c == 64 { u64::MAX } else { (1u64 << c) - 1 };
            let mut signs = 0u64;
            loop {
                if keep(signs) {
                    let (i, j, k) = table.grading((s, signs));
                    slices.entry((j, k)).or_default().entry(i).or_default().push((s, signs));
                }
                if signs == top {
                    break;
                }
                signs += 1;
            }
        }
        Complex { table, slices, jobs: cfg.jobs }
    }

    pub fn generators(&self, i: i64, j: i64, k: i64) -> &[Gen] {
        self.slices.get(&(j, k)).and_then(|m| m.get(&i)).map_or(&[], |v| v.as_slice())
    }

    pub fn gradings(&self) -> impl Iterator<Item = (i64, i64, i64)> + '_ {
        self.slices.iter().flat_map(|(&(j, k), m)| m.keys().map(move |&i| (i, j, k)))
    }

    pub fn total_generators(&self) -> usize {
        self.slices.values().flat_map(|m| m.values()).map(Vec::len).sum()
    }

    /// Rows of d: C_{i,j,k} → C_{i−2,j,k}, one row per source generator,
    /// columns indexed by target generators.
    pub fn differential_rows(&self, i: i64, j: i64, k: i64) -> Vec<Vec<(usize, i64)>> {
        let src = self.generators(i, j, k);
        let dst = self.generators(i - 2, j, k);
        if src.is_empty() || dst.is_empty() {
            return vec![Vec::new(); src.len()];
        }
        let index: HashMap<Gen, usize> = dst.iter().enumerate().map(|(x, g)| (*g, x)).collect();
        let mut rows = Vec::with_capacity(src.len());
        let mut cache: Option<(u64, Vec<Transition>)> = None;
        for &(s, signs) in src {
            if cache.as_ref().is_none_or(|(cs, _)| *cs != s) {
                let ts = (0..self.table.n).filter(|v| s >> v & 1 == 0).map(|v| self.table.transition(s, v)).collect();
                cache = Some((s, ts));
            }
            let ts = &cache.as_ref().unwrap().1;
            let mut row = Vec::new();
            for t in ts {
                t.images(signs, |target_signs| {
                    if let Some(&x) = index.get(&(t.target, target_signs)) {
                        row.push((x, t.sign));
                    }
                });
            }
            row.sort_unstable_by_key(|e| e.0);
            rows.push(row);
        }
        rows
    }

    /// Matrix with rows indexed by C_{i−2,j,k} and columns by C_{i,j,k}.
    pub fn differential(&self, i: i64, j: i64, k: i64) -> IntegerMatrix {
        let rows = self.differential_rows(i, j, k);
        let n_dst = self.generators(i - 2, j, k).len();
        let m = IntegerMatrix::from_triplets(
            rows.len(),
            n_dst,
            rows.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |&(c, v)| (r, c, v))),
        );
        m.transpose()
    }

    fn run<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match self.jobs {
            Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
                Ok(pool) => pool.install(f),
                Err(_) => f(),
            },
            None => f(),
        }
    }

    /// Homology group at every grading with nonzero chains.
    pub fn homology(&self) -> BTreeMap<(i64, i64, i64), AbelianGroup> {
        let jobs: Vec<(i64, i64, i64)> = self
            .gradings()
            .filter(|&(i, j, k)| !self.generators(i - 2, j, k).is_empty())
            .collect();
        let forms: Vec<((i64, i64, i64), SmithForm)> = self.run(|| {
            jobs.par_iter()
                .map(|&(i, j, k)| {
                    let n_dst = self.generators(i - 2, j, k).len();
                    ((i, j, k), smith_from_rows(n_dst, self.differential_rows(i, j, k)))
                })
                .collect()
        });
        let forms: HashMap<(i64, i64, i64), SmithForm> = forms.into_iter().collect();
        let mut out = BTreeMap::new();
        for (i, j, k) in self.gradings() {
            let dim = self.generators(i, j, k).len();
            let out_rank = forms.get(&(i, j, k)).map_or(0, |f| f.rank);
            let incoming = forms.get(&(i + 2, j, k));
            let in_rank = incoming.map_or(0, |f| f.rank);
            let torsion = incoming.map(|f| f.torsion()).unwrap_or_default();
            let g = AbelianGroup::new(dim - out_rank - in_rank, torsion);
            if !g.is_zero() {
                out.insert((i, j, k), g);
            }
        }
        out
    }

    pub fn markers(&self, s: u64) -> KauffmanState {
        KauffmanState::from_mask(self.table.n, s)
    }
}

pub(crate) fn basepoint_circle(table: &StateTable, s: u64, bp: Basepoint) -> usize {
    match bp {
        Basepoint::HalfEdge(h) => table.circle_of(s, h),
        Basepoint::Loop(l) => table.traced(s) + l,
    }
}
