//! Khovanov chain complexes and their integral homology.

mod engine;
mod exact;
mod group;
mod lattice;
mod matrix;
mod snf;

use std::collections::BTreeMap;

pub use exact::{coreduced_connecting_cokernel, skein_maps, viro_exact_at, SkeinMaps};
pub use group::{AbelianGroup, BigradedHomology, GradedHomology, StratifiedHomology};
pub use lattice::Lattice;
pub use matrix::IntegerMatrix;
pub use snf::{rank, smith_normal_form, SmithForm};

pub(crate) use engine::{Basepoint, Complex, StateTable, Variant};

use crate::diagram::{KauffmanState, LinkDiagram};
use crate::error::{Error, Result};

/// Size limits and parallelism for the homology engine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyConfig {
    pub max_crossings: usize,
    /// Upper bound on Σ_s 2^{|s|}.
    pub max_generators: usize,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

pub const DEFAULT_MAX_CROSSINGS: usize = 16;

impl Default for HomologyConfig {
    fn default() -> Self {
        HomologyConfig { max_crossings: DEFAULT_MAX_CROSSINGS, max_generators: 1 << 24, jobs: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CircleSign {
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EnhancedState {
    pub markers: KauffmanState,
    /// One sign per circle in canonical order.
    pub circle_signs: Vec<CircleSign>,
    pub i: i64,
    pub j: i64,
    /// Present for annulus diagrams.
    pub k: Option<i64>,
}

impl EnhancedState {
    /// (#positive) − (#negative) circles.
    pub fn tau(&self) -> i64 {
        self.circle_signs.iter().map(|s| if *s == CircleSign::Plus { 1 } else { -1 }).sum()
    }
}

/// A Khovanov chain complex, possibly reduced, co-reduced or stratified.
pub struct ChainComplex {
    pub(crate) inner: Complex,
    stratified: bool,
}

pub(crate) fn resolve_basepoint(d: &LinkDiagram, label: &str) -> Result<Basepoint> {
    if let Some(l) = d.free_loop_labels().iter().position(|x| x.as_deref() == Some(label)) {
        return Ok(Basepoint::Loop(l));
    }
    let [h, _] = d.arc_ends(label)?;
    Ok(Basepoint::HalfEdge(h.0))
}

impl ChainComplex {
    pub fn new(d: &LinkDiagram, cfg: &HomologyConfig) -> Result<Self> {
        Self::with_variant(d, Variant::Full, cfg)
    }

    pub fn reduced(d: &LinkDiagram, basepoint: &str, cfg: &HomologyConfig) -> Result<Self> {
        Self::with_variant(d, Variant::Reduced(resolve_basepoint(d, basepoint)?), cfg)
    }

    pub fn coreduced(d: &LinkDiagram, basepoint: &str, cfg: &HomologyConfig) -> Result<Self> {
        Self::with_variant(d, Variant::Coreduced(resolve_basepoint(d, basepoint)?), cfg)
    }

    fn with_variant(d: &LinkDiagram, v: Variant, cfg: &HomologyConfig) -> Result<Self> {
        let table = StateTable::build(d, None, cfg)?;
        Ok(ChainComplex { inner: Complex::build(table, v, cfg), stratified: false })
    }

    /// Complex of a diagram in the annulus; `weights` are indexed like
    /// the diagram's arcs and `loop_weights` like its free loops.
    pub(crate) fn stratified(d: &LinkDiagram, weights: &[i64], loop_weights: &[i64], cfg: &HomologyConfig) -> Result<Self> {
        let table = StateTable::build(d, Some((weights, loop_weights)), cfg)?;
        Ok(ChainComplex { inner: Complex::build(table, Variant::Full, cfg), stratified: true })
    }

    pub fn n_crossings(&self) -> usize {
        self.inner.table.n
    }

    /// Every (i, j, k) with a nonzero chain group; k is 0 off the annulus.
    pub fn gradings(&self) -> Vec<(i64, i64, i64)> {
        self.inner.gradings().collect()
    }

    pub fn dim(&self, i: i64, j: i64) -> usize {
        self.gradings().iter().filter(|g| g.0 == i && g.1 == j).map(|g| self.inner.generators(i, j, g.2).len()).sum()
    }

    pub fn dim3(&self, i: i64, j: i64, k: i64) -> usize {
        self.inner.generators(i, j, k).len()
    }

    pub fn total_dim(&self) -> usize {
        self.inner.total_generators()
    }

    /// Dimensions of the chain groups keyed by (i, j).
    pub fn dimensions(&self) -> BTreeMap<(i64, i64), usize> {
        let mut out = BTreeMap::new();
        for (i, j, k) in self.gradings() {
            *out.entry((i, j)).or_insert(0) += self.dim3(i, j, k);
        }
        out
    }

    pub fn basis3(&self, i: i64, j: i64, k: i64) -> Vec<EnhancedState> {
        self.inner.generators(i, j, k).iter().map(|&g| self.enhanced(g)).collect()
    }

    pub fn basis(&self, i: i64, j: i64) -> Vec<EnhancedState> {
        assert!(!self.stratified, "use basis3 for annulus complexes");
        self.basis3(i, j, 0)
    }

    fn enhanced(&self, (s, signs): (u64, u64)) -> EnhancedState {
        let t = &self.inner.table;
        let (i, j, k) = t.grading((s, signs));
        let circle_signs = (0..t.circles(s))
            .map(|c| if signs >> c & 1 == 1 { CircleSign::Minus } else { CircleSign::Plus })
            .collect();
        EnhancedState { markers: self.inner.markers(s), circle_signs, i, j, k: self.stratified.then_some(k) }
    }

    /// Matrix of d_{i,j}: C_{i,j} → C_{i−2,j}, rows indexed by the target
    /// basis and columns by the source basis as listed by [`Self::basis`].
    pub fn differential(&self, i: i64, j: i64) -> IntegerMatrix {
        assert!(!self.stratified, "use differential3 for annulus complexes");
        self.inner.differential(i, j, 0)
    }

    pub fn differential3(&self, i: i64, j: i64, k: i64) -> IntegerMatrix {
        self.inner.differential(i, j, k)
    }

    pub fn homology(&self) -> BigradedHomology {
        let mut h = BigradedHomology::new();
        for ((i, j, _), g) in self.inner.homology() {
            let s = h.get(i, j).direct_sum(&g);
            h.insert(i, j, s);
        }
        h
    }

    pub fn stratified_homology(&self) -> StratifiedHomology {
        let mut h = StratifiedHomology::new();
        for ((i, j, k), g) in self.inner.homology() {
            h.insert(i, j, k, g);
        }
        h
    }

    /// Every nonzero differential entry as (source, target, coefficient).
    pub fn incidences(&self) -> Vec<(EnhancedState, EnhancedState, i64)> {
        let mut out = Vec::new();
        for (i, j, k) in self.gradings() {
            let src = self.inner.generators(i, j, k);
            let dst = self.inner.generators(i - 2, j, k);
            for (r, row) in self.inner.differential_rows(i, j, k).into_iter().enumerate() {
                for (c, v) in row {
                    out.push((self.enhanced(src[r]), self.enhanced(dst[c]), v));
                }
            }
        }
        out
    }
}

/// Enhanced states bucketed by (i, j).
pub fn chain_groups(d: &LinkDiagram) -> Result<BTreeMap<(i64, i64), Vec<EnhancedState>>> {
    let cx = ChainComplex::new(d, &HomologyConfig::default())?;
    let mut out = BTreeMap::new();
    for (i, j, _) in cx.gradings() {
        out.insert((i, j), cx.basis(i, j));
    }
    Ok(out)
}

pub fn differential(d: &LinkDiagram, i: i64, j: i64) -> Result<IntegerMatrix> {
    Ok(ChainComplex::new(d, &HomologyConfig::default())?.differential(i, j))
}

pub fn khovanov(d: &LinkDiagram) -> Result<BigradedHomology> {
    khovanov_with(d, &HomologyConfig::default())
}

pub fn khovanov_with(d: &LinkDiagram, cfg: &HomologyConfig) -> Result<BigradedHomology> {
    Ok(ChainComplex::new(d, cfg)?.homology())
}

pub fn reduced(d: &LinkDiagram, basepoint: &str) -> Result<BigradedHomology> {
    reduced_with(d, basepoint, &HomologyConfig::default())
}

pub fn reduced_with(d: &LinkDiagram, basepoint: &str, cfg: &HomologyConfig) -> Result<BigradedHomology> {
    Ok(ChainComplex::reduced(d, basepoint, cfg)?.homology())
}

pub fn coreduced(d: &LinkDiagram, basepoint: &str) -> Result<BigradedHomology> {
    coreduced_with(d, basepoint, &HomologyConfig::default())
}

pub fn coreduced_with(d: &LinkDiagram, basepoint: &str, cfg: &HomologyConfig) -> Result<BigradedHomology> {
    Ok(ChainComplex::coreduced(d, basepoint, cfg)?.homology())
}

/// Rejects inputs the engine would refuse, without building anything.
pub fn check_size(d: &LinkDiagram, cfg: &HomologyConfig) -> Result<()> {
    if d.n_crossings() > cfg.max_crossings {
        return Err(Error::SizeLimit(format!("{} crossings exceed the limit {}", d.n_crossings(), cfg.max_crossings)));
    }
    Ok(())
}
