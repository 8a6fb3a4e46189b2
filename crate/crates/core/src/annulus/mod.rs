//! Diagrams in the annulus, stratified homology H_{i,j,k} and the
//! coefficients of a diagram in the skein module basis {x^m}.
//!
//! A fixed radial cut arc is encoded by a signed weight on every arc: the
//! algebraic number of times the arc crosses the cut when traversed in its
//! reference direction. A state circle winds around the core once (weights
//! summing to ±1) or not at all.

mod torus;

pub use torus::{kbsm_torus2_oracle, torus_annulus, torus_knot_skein_polynomial};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::diagram::{KauffmanState, LinkDiagram};
use crate::error::{Error, Result};
use crate::homology::{ChainComplex, CircleSign, EnhancedState, HomologyConfig, StratifiedHomology};
use crate::polynomial::{LaurentPoly, LaurentPoly2};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnulusDiagram {
    pub base: LinkDiagram,
    /// Arc or free-loop label → cut weight; missing labels weigh 0.
    pub cut_weights: BTreeMap<String, i64>,
}

impl AnnulusDiagram {
    pub fn new(base: LinkDiagram, cut_weights: BTreeMap<String, i64>) -> Result<Self> {
        let loops: Vec<&str> = base.free_loop_labels().iter().flatten().map(String::as_str).collect();
        for l in cut_weights.keys() {
            if !base.has_label(l) && !loops.contains(&l.as_str()) {
                return Err(Error::UnknownArc(l.clone()));
            }
        }
        Ok(AnnulusDiagram { base, cut_weights })
    }

    /// A single free loop running once around the core.
    pub fn core_circle() -> Self {
        let base = LinkDiagram::from_parts(Vec::new(), vec![Some("c".into())]).expect("one labelled loop");
        AnnulusDiagram { base, cut_weights: BTreeMap::from([("c".into(), 1)]) }
    }

    /// PD tokens plus `W label weight` lines.
    pub fn parse(text: &str) -> Result<Self> {
        let mut pd = String::new();
        let mut weights = BTreeMap::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            let mut it = line.split_whitespace();
            if it.next() == Some("W") {
                let args: Vec<&str> = it.collect();
                let [label, w] = args[..] else {
                    return Err(Error::malformed(k + 1, "expected `W label weight`"));
                };
                let w: i64 = w.parse().map_err(|_| Error::malformed(k + 1, format!("bad weight `{w}`")))?;
                if weights.insert(label.to_string(), w).is_some() {
                    return Err(Error::malformed(k + 1, format!("weight for `{label}` given twice")));
                }
                pd.push('\n');
            } else {
                pd.push_str(raw);
                pd.push('\n');
            }
        }
        Self::new(crate::diagram::parse_pd(&pd)?, weights)
    }

    pub fn to_text(&self) -> String {
        let mut s = self.base.to_pd();
        s.push('\n');
        for (l, w) in &self.cut_weights {
            s.push_str(&format!("W {l} {w}\n"));
        }
        s
    }

    pub(crate) fn weight_vectors(&self) -> (Vec<i64>, Vec<i64>) {
        let w = |l: &str| self.cut_weights.get(l).copied().unwrap_or(0);
        let arcs = self.base.arc_labels().map(w).collect();
        let loops = self.base.free_loop_labels().iter().map(|l| l.as_deref().map_or(0, w)).collect();
        (arcs, loops)
    }

    /// Winding of every circle of the smoothing, free loops last.
    pub fn windings(&self, s: &KauffmanState) -> Vec<i64> {
        let (arcs, loops) = self.weight_vectors();
        let mut circ = vec![0u16; 4 * self.base.n_crossings()];
        let mut w = Vec::new();
        let traced = self.base.trace_circles_visit(s.mask(), &mut circ, |c, h| {
            if w.len() <= c as usize {
                w.resize(c as usize + 1, 0);
            }
            w[c as usize] += self.base.arc_direction_from(h) * arcs[self.base.arc_index(h)];
        });
        w.resize(traced, 0);
        w.extend(loops);
        w
    }

    pub fn complex(&self, cfg: &HomologyConfig) -> Result<ChainComplex> {
        let (arcs, loops) = self.weight_vectors();
        ChainComplex::stratified(&self.base, &arcs, &loops, cfg)
    }
}

pub fn stratified_homology(ad: &AnnulusDiagram) -> Result<StratifiedHomology> {
    stratified_homology_with(ad, &HomologyConfig::default())
}

pub fn stratified_homology_with(ad: &AnnulusDiagram, cfg: &HomologyConfig) -> Result<StratifiedHomology> {
    Ok(ad.complex(cfg)?.stratified_homology())
}

fn parity_sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Σ_{j,k} a^k A^j χ_{j,k}, keyed (a-exponent, A-exponent), from chain ranks.
pub fn stratified_euler(cx: &ChainComplex) -> LaurentPoly2 {
    let mut p = LaurentPoly2::zero();
    for (i, j, k) in cx.gradings() {
        p.add_term(k, j, BigInt::from(parity_sign((j - i) / 2) * cx.dim3(i, j, k) as i64));
    }
    p
}

/// The same sum from homology ranks.
pub fn stratified_euler_homology(h: &StratifiedHomology) -> LaurentPoly2 {
    let mut p = LaurentPoly2::zero();
    for (&[i, j, k], g) in h.iter() {
        p.add_term(k, j, BigInt::from(parity_sign((j - i) / 2) * g.free_rank as i64));
    }
    p
}

/// Rewrite Σ_k c_k(A) a^k as Σ_m b_m(A) (a + a^{-1})^m, working down from
/// the top a-degree.
pub fn expand_in_core_powers(p: &LaurentPoly2) -> Result<BTreeMap<u32, LaurentPoly>> {
    let mut rest: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
    for ((k, j), c) in p.terms() {
        rest.entry(k).or_insert_with(LaurentPoly::zero).add_term(j, c.clone());
    }
    rest.retain(|_, c| !c.is_zero());
    let x = LaurentPoly::from_terms([(1, 1), (-1, 1)]);
    let mut out = BTreeMap::new();
    while let Some((&m, _)) = rest.iter().next_back() {
        if m < 0 {
            return Err(Error::NonExpandable(format!("a-degree {m} left after expansion")));
        }
        let c = rest.remove(&m).expect("present");
        for (e, binom) in x.pow(m as u32).terms() {
            if e == m {
                continue;
            }
            let slot = rest.entry(e).or_insert_with(LaurentPoly::zero);
            *slot = &*slot - &c.scale(binom);
            if slot.is_zero() {
                rest.remove(&e);
            }
        }
        out.insert(m as u32, c);
    }
    Ok(out)
}

pub fn kbsm_coefficients(ad: &AnnulusDiagram) -> Result<BTreeMap<u32, LaurentPoly>> {
    kbsm_coefficients_with(ad, &HomologyConfig::default())
}

pub fn kbsm_coefficients_with(ad: &AnnulusDiagram, cfg: &HomologyConfig) -> Result<BTreeMap<u32, LaurentPoly>> {
    expand_in_core_powers(&stratified_euler(&ad.complex(cfg)?))
}

/// Differential entries inspected by [`incidence_audit`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Audit {
    pub entries: usize,
    pub kappa_preserved: bool,
    pub j_preserved: bool,
}

/// Check every nonzero differential entry against gradings recomputed from
/// the windings of its endpoints: i drops by 2, j and k are unchanged.
pub fn incidence_audit(ad: &AnnulusDiagram, cfg: &HomologyConfig) -> Result<Audit> {
    let cx = ad.complex(cfg)?;
    let grade = |e: &EnhancedState| {
        let w = ad.windings(&e.markers);
        let (mut tau, mut kappa) = (0, 0);
        for (c, sign) in e.circle_signs.iter().enumerate() {
            let v = if *sign == CircleSign::Plus { 1 } else { -1 };
            if w[c] == 0 {
                tau += v;
            } else {
                kappa += v;
            }
        }
        let i = e.markers.sigma();
        (i, i + 2 * tau, kappa)
    };
    let mut a = Audit { entries: 0, kappa_preserved: true, j_preserved: true };
    for (s, t, _) in cx.incidences() {
        a.entries += 1;
        let (gs, gt) = (grade(&s), grade(&t));
        a.kappa_preserved &= gs.2 == gt.2;
        a.j_preserved &= gs.1 == gt.1 && gs.0 == gt.0 + 2;
    }
    Ok(a)
}

/// Count of core circles of D_{s₊} for the congruence check on k.
pub fn plus_state_core_count(ad: &AnnulusDiagram) -> usize {
    let n = ad.base.n_crossings();
    ad.windings(&KauffmanState::all_positive(n)).iter().filter(|w| !w.is_zero()).count()
}
