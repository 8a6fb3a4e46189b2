//! Chain maps of the skein exact sequences, checked on lattices.
//!
//! At a crossing v of D, D∞ smooths v with the negative marker and D₀ with
//! the positive one. α: C_{i+1,j+1}(D∞) → C_{i,j}(D) inserts a negative
//! marker at v with sign (−1)^(negative markers before v); β: C_{i,j}(D) →
//! C_{i−1,j−1}(D₀) keeps the states whose marker at v is positive.

use num_bigint::BigInt;
use num_traits::Zero;

use super::engine::{Gen, StateTable};
use super::lattice::{apply, Lattice};
use super::{AbelianGroup, ChainComplex, HomologyConfig, IntegerMatrix};
use crate::diagram::{LinkDiagram, Marker};
use crate::error::{Error, Result};

pub struct SkeinMaps {
    pub crossing: usize,
    pub diagram: ChainComplex,
    pub infinity: ChainComplex,
    pub zero: ChainComplex,
    d: LinkDiagram,
    d_inf: LinkDiagram,
    d_zero: LinkDiagram,
}

fn insert_bit(s: u64, v: usize, bit: u64) -> u64 {
    let low = (1u64 << v) - 1;
    (s & low) | bit << v | (s & !low) << 1
}

fn remove_bit(s: u64, v: usize) -> u64 {
    let low = (1u64 << v) - 1;
    (s & low) | (s >> 1 & !low)
}

/// For each circle of the smoothed diagram in state `s_sub`, the circle of
/// `d` in state `s` it corresponds to.
fn circle_map(d: &LinkDiagram, full: &StateTable, s: u64, sub: &LinkDiagram, subt: &StateTable, s_sub: u64, v: usize) -> Vec<usize> {
    let mut out = vec![usize::MAX; subt.circles(s_sub)];
    for h in 0..4 * subt.n {
        let c = h / 4;
        let orig = if c < v { c } else { c + 1 };
        out[subt.circle_of(s_sub, h)] = full.circle_of(s, 4 * orig + h % 4);
    }
    let k = subt.traced(s_sub);
    for (l, label) in sub.free_loop_labels().iter().enumerate() {
        out[k + l] = if l < d.n_free_loops() {
            full.traced(s) + l
        } else {
            let label = label.as_deref().expect("loops created by smoothing carry labels");
            let [h, _] = d.arc_ends(label).expect("loop labels come from arcs");
            full.circle_of(s, h.0)
        };
    }
    out
}

fn index_of(gens: &[Gen], g: Gen) -> Option<usize> {
    gens.binary_search(&g).ok()
}

fn move_signs(signs: u64, map: &[usize]) -> u64 {
    (0..map.len()).filter(|&c| signs >> c & 1 == 1).fold(0, |acc, c| acc | 1 << map[c])
}

pub fn skein_maps(d: &LinkDiagram, v: usize, cfg: &HomologyConfig) -> Result<SkeinMaps> {
    if v >= d.n_crossings() {
        return Err(Error::InvalidParameter(format!("no crossing {v}")));
    }
    let (d_inf, _) = d.smooth_crossing(v, Marker::Negative)?;
    let (d_zero, _) = d.smooth_crossing(v, Marker::Positive)?;
    Ok(SkeinMaps {
        crossing: v,
        diagram: ChainComplex::new(d, cfg)?,
        infinity: ChainComplex::new(&d_inf, cfg)?,
        zero: ChainComplex::new(&d_zero, cfg)?,
        d: d.clone(),
        d_inf,
        d_zero,
    })
}

impl SkeinMaps {
    /// α on C_{i+1,j+1}(D∞), rows indexed by C_{i,j}(D).
    pub fn alpha(&self, i: i64, j: i64) -> IntegerMatrix {
        let v = self.crossing;
        let src = self.infinity.inner.generators(i + 1, j + 1, 0);
        let dst = self.diagram.inner.generators(i, j, 0);
        let (ft, st) = (&self.diagram.inner.table, &self.infinity.inner.table);
        let entries = src.iter().enumerate().map(|(col, &(s_sub, signs))| {
            let s = insert_bit(s_sub, v, 1);
            let map = circle_map(&self.d, ft, s, &self.d_inf, st, s_sub, v);
            let row = index_of(dst, (s, move_signs(signs, &map))).expect("α preserves the bigrading");
            let sign = if (s_sub & ((1 << v) - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
            (row, col, sign)
        });
        IntegerMatrix::from_triplets(dst.len(), src.len(), entries.collect::<Vec<_>>())
    }

    /// β on C_{i,j}(D), rows indexed by C_{i−1,j−1}(D₀).
    pub fn beta(&self, i: i64, j: i64) -> IntegerMatrix {
        let v = self.crossing;
        let src = self.diagram.inner.generators(i, j, 0);
        let dst = self.zero.inner.generators(i - 1, j - 1, 0);
        let (ft, zt) = (&self.diagram.inner.table, &self.zero.inner.table);
        let mut entries = Vec::new();
        for (col, &(s, signs)) in src.iter().enumerate() {
            if s >> v & 1 == 1 {
                continue;
            }
            let s_sub = remove_bit(s, v);
            let map = circle_map(&self.d, ft, s, &self.d_zero, zt, s_sub, v);
            let mut inverse = vec![0; map.len()];
            for (a, &b) in map.iter().enumerate() {
                inverse[b] = a;
            }
            let row = index_of(dst, (s_sub, move_signs(signs, &inverse))).expect("β preserves the bigrading");
            entries.push((row, col, 1));
        }
        IntegerMatrix::from_triplets(dst.len(), src.len(), entries)
    }

    fn d_gradings(&self) -> Vec<(i64, i64)> {
        let mut g: Vec<(i64, i64)> = self.diagram.gradings().into_iter().map(|(i, j, _)| (i, j)).collect();
        for (i, j, _) in self.infinity.gradings() {
            g.push((i - 1, j - 1));
        }
        for (i, j, _) in self.zero.gradings() {
            g.push((i + 1, j + 1));
        }
        g.sort_unstable();
        g.dedup();
        g
    }

    /// d α = α d and d β = β d in every bidegree.
    pub fn are_chain_maps(&self) -> bool {
        self.d_gradings().into_iter().all(|(i, j)| {
            let left = self.diagram.differential(i, j).mul(&self.alpha(i, j));
            let right = self.alpha(i - 2, j).mul(&self.infinity.differential(i + 1, j + 1));
            let left_b = self.beta(i - 2, j).mul(&self.diagram.differential(i, j));
            let right_b = self.zero.differential(i - 1, j - 1).mul(&self.beta(i, j));
            left.to_dense() == right.to_dense() && left_b.to_dense() == right_b.to_dense()
        })
    }

    /// α injective, β surjective and im α = ker β in every bidegree.
    pub fn is_short_exact(&self) -> bool {
        self.d_gradings().into_iter().all(|(i, j)| {
            let a = self.alpha(i, j);
            let b = self.beta(i, j);
            Lattice::kernel(&a).rank() == 0
                && Lattice::image(&b) == Lattice::full(b.rows())
                && Lattice::image(&a) == Lattice::kernel(&b)
        })
    }

    /// Exactness of H_{i+1,j+1}(D∞) → H_{i,j}(D) → H_{i−1,j−1}(D₀),
    /// compared as sublattices of the cycles Z_{i,j}(D).
    pub fn exact_at(&self, i: i64, j: i64) -> bool {
        let a = self.alpha(i, j);
        let b = self.beta(i, j);
        let d_here = self.diagram.differential(i, j);
        let z_inf = Lattice::kernel(&self.infinity.differential(i + 1, j + 1));
        let boundaries = Lattice::image(&self.diagram.differential(i + 2, j));
        let image = Lattice::image_of(&a, &z_inf).sum(&boundaries);
        let cycles = Lattice::kernel(&d_here);
        let zero_bounds = Lattice::image(&self.zero.differential(i + 1, j - 1));
        let pre = Lattice::preimage(&b, &zero_bounds);
        image == cycles.intersection(&pre)
    }
}

/// Cokernel of the connecting map H^{r̄}_{i,j} → H^r_{i−2,j} of the
/// reduced / co-reduced short exact sequence: Z^r_{i−2,j} / (B^r + ∂Z^{r̄}_{i,j}).
pub fn coreduced_connecting_cokernel(d: &LinkDiagram, basepoint: &str, i: i64, j: i64, cfg: &HomologyConfig) -> Result<AbelianGroup> {
    let full = ChainComplex::new(d, cfg)?;
    let red = ChainComplex::reduced(d, basepoint, cfg)?;
    let cored = ChainComplex::coreduced(d, basepoint, cfg)?;
    let quotient_cycles = Lattice::kernel(&cored.differential(i, j));
    let q_gens = cored.inner.generators(i, j, 0);
    let f_src = full.inner.generators(i, j, 0);
    let f_dst = full.inner.generators(i - 2, j, 0);
    let r_dst = red.inner.generators(i - 2, j, 0);
    let d_full = full.differential(i, j);
    let mut images = Vec::new();
    for z in quotient_cycles.basis() {
        let mut lift = vec![BigInt::zero(); f_src.len()];
        for (x, g) in z.iter().zip(q_gens) {
            lift[index_of(f_src, *g).expect("quotient generators are generators")] = x.clone();
        }
        let dz = apply(&d_full, &lift);
        let mut restricted = vec![BigInt::zero(); r_dst.len()];
        for (x, g) in dz.into_iter().zip(f_dst) {
            match index_of(r_dst, *g) {
                Some(k) => restricted[k] = x,
                None => debug_assert!(x.is_zero(), "lift of a quotient cycle leaves the subcomplex"),
            }
        }
        images.push(restricted);
    }
    let cycles = Lattice::kernel(&red.differential(i - 2, j));
    let sub = Lattice::image(&red.differential(i, j)).sum(&Lattice::from_generators(r_dst.len(), images));
    Ok(cycles.quotient(&sub).expect("boundaries and connecting images are cycles"))
}

/// Checks exactness of the Viro sequence at H_{i,j}(D) for crossing v.
pub fn viro_exact_at(d: &LinkDiagram, v: usize, i: i64, j: i64, cfg: &HomologyConfig) -> Result<bool> {
    Ok(skein_maps(d, v, cfg)?.exact_at(i, j))
}
