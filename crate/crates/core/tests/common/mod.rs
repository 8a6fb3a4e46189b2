//! Test-side oracles shared by the integration suites. Nothing here calls
//! into the library beyond reading PD slots.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap, VecDeque};

use khoworks::diagram::{braid_closure, LinkDiagram};
use khoworks::homology::{AbelianGroup, BigradedHomology};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;

/// Signature of a symmetric integer matrix by congruence diagonalization.
pub fn matrix_signature(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sig = 0;
    let mut alive: Vec<usize> = (0..n).collect();
    while !alive.is_empty() {
        // a nonzero diagonal pivot, or make one from an off-diagonal entry
        let p = match alive.iter().copied().find(|&i| !a[i][i].is_zero()) {
            Some(p) => p,
            None => {
                let pair = alive.iter().flat_map(|&i| alive.iter().map(move |&j| (i, j))).find(|&(i, j)| i != j && !a[i][j].is_zero());
                let Some((i, j)) = pair else { break };
                for k in 0..n {
                    let v = a[j][k].clone();
                    a[i][k] += v;
                }
                for k in 0..n {
                    let v = a[k][j].clone();
                    a[k][i] += v;
                }
                i
            }
        };
        let piv = a[p][p].clone();
        sig += if piv.is_positive() { 1 } else { -1 };
        alive.retain(|&x| x != p);
        for &r in &alive {
            let f = a[r][p].clone();
            if f.is_zero() {
                continue;
            }
            for k in 0..n {
                let v = &piv * &a[r][k] - &f * &a[p][k];
                a[r][k] = v;
            }
            for k in 0..n {
                let v = &piv * &a[k][r] - &f * &a[k][p];
                a[k][r] = v;
            }
        }
        for &r in &alive {
            a[r][p] = BigInt::zero();
            a[p][r] = BigInt::zero();
        }
    }
    sig
}

struct Pd {
    n: usize,
    partner: Vec<usize>,
}

fn pd_of(d: &LinkDiagram) -> Pd {
    let n = d.n_crossings();
    let mut by_label: HashMap<&str, Vec<usize>> = HashMap::new();
    for (c, x) in d.crossings().iter().enumerate() {
        for k in 0..4 {
            by_label.entry(x.slots[k].as_str()).or_default().push(4 * c + k);
        }
    }
    let mut partner = vec![usize::MAX; 4 * n];
    for v in by_label.values() {
        assert_eq!(v.len(), 2);
        partner[v[0]] = v[1];
        partner[v[1]] = v[0];
    }
    Pd { n, partner }
}

/// Incoming flag per slot when slot 0 of every crossing is the incoming
/// under-strand; `None` if that is inconsistent or leaves a strand free.
pub fn pd_convention_directions(d: &LinkDiagram) -> Option<Vec<bool>> {
    let pd = pd_of(d);
    let mut dir: Vec<Option<bool>> = vec![None; 4 * pd.n];
    let mut queue = VecDeque::new();
    for c in 0..pd.n {
        queue.push_back((4 * c, true));
        queue.push_back((4 * c + 2, false));
    }
    while let Some((h, inc)) = queue.pop_front() {
        match dir[h] {
            Some(x) if x != inc => return None,
            Some(_) => continue,
            None => dir[h] = Some(inc),
        }
        queue.push_back((pd.partner[h], !inc));
        queue.push_back((4 * (h / 4) + (h % 4 + 2) % 4, !inc));
    }
    dir.into_iter().collect()
}

/// Gordon–Litherland signature from a checkerboard colouring, with the
/// orientation of [`pd_convention_directions`]. Computed for both
/// colourings; `None` when they disagree or the oracle does not apply.
pub fn gl_signature(d: &LinkDiagram) -> Option<i64> {
    if d.n_crossings() == 0 || d.n_free_loops() > 0 {
        return None;
    }
    let incoming = pd_convention_directions(d)?;
    let pd = pd_of(d);
    // faces as orbits of corners; corner (c,k) lies between slots k and k+1
    let mut face = vec![usize::MAX; 4 * pd.n];
    let mut nf = 0;
    for s in 0..4 * pd.n {
        if face[s] != usize::MAX {
            continue;
        }
        let mut cur = s;
        while face[cur] == usize::MAX {
            face[cur] = nf;
            cur = pd.partner[4 * (cur / 4) + (cur % 4 + 1) % 4];
        }
        nf += 1;
    }
    // two-colour the faces: corners k and k+1 differ
    let mut colour: Vec<Option<bool>> = vec![None; nf];
    colour[face[0]] = Some(false);
    let mut changed = true;
    while changed {
        changed = false;
        for c in 0..pd.n {
            for k in 0..4 {
                let (f, g) = (face[4 * c + k], face[4 * c + (k + 1) % 4]);
                if let (Some(x), None) = (colour[f], colour[g]) {
                    colour[g] = Some(!x);
                    changed = true;
                }
                if let (Some(x), Some(y)) = (colour[f], colour[g]) {
                    if x == y {
                        return None;
                    }
                }
            }
        }
    }
    let colour: Vec<bool> = colour.into_iter().collect::<Option<_>>()?;
    let mut results = Vec::new();
    for white in [false, true] {
        let regions: Vec<usize> = (0..nf).filter(|&f| colour[f] == white).collect();
        let idx: HashMap<usize, usize> = regions.iter().enumerate().map(|(a, &f)| (f, a)).collect();
        let r = regions.len();
        let mut g = vec![vec![0i64; r]; r];
        let mut mu = 0;
        for c in 0..pd.n {
            let wc: Vec<usize> = (0..4).filter(|&k| colour[face[4 * c + k]] == white).collect();
            // corners 1 and 3 are swept by turning the over-strand counterclockwise
            let eta = if wc == [1, 3] { -1 } else { 1 };
            let (a, b) = (idx[&face[4 * c + wc[0]]], idx[&face[4 * c + wc[1]]]);
            if a != b {
                g[a][b] -= eta;
                g[b][a] -= eta;
                g[a][a] += eta;
                g[b][b] += eta;
            }
            // the oriented smoothing merges the corners flanked by two
            // incoming or two outgoing slots; type II when those are black
            let flanked_same = |k: usize| incoming[4 * c + k] == incoming[4 * c + (k + 1) % 4];
            if !flanked_same(wc[0]) {
                mu += eta;
            }
        }
        let reduced: Vec<Vec<i64>> = g[1..].iter().map(|row| row[1..].to_vec()).collect();
        results.push(matrix_signature(&reduced) - mu);
    }
    (results[0] == results[1]).then_some(results[0])
}

/// H(D) ⊗ F for F torsion free, degree-wise.
pub fn tensor_with_free(h: &BigradedHomology, free: &BigradedHomology) -> BigradedHomology {
    let mut out = BigradedHomology::new();
    for (&[a, b], g) in h.iter() {
        for (&[c, e], f) in free.iter() {
            assert!(f.is_free());
            let mut s = out.get(a + c, b + e);
            for _ in 0..f.free_rank {
                s = s.direct_sum(g);
            }
            out.insert(a + c, b + e, s);
        }
    }
    out
}

pub fn tensor_free_parts(h: &BigradedHomology) -> BigradedHomology {
    let mut out = BigradedHomology::new();
    for (&[i, j], g) in h.iter() {
        if g.free_rank > 0 {
            out.insert(i, j, AbelianGroup::free(g.free_rank));
        }
    }
    out
}

/// Odd closed walk by brute force over 2-colourings.
pub fn brute_force_bipartite(vertices: usize, edges: &[(usize, usize)]) -> bool {
    assert!(vertices <= 16);
    (0..1u32 << vertices).any(|m| edges.iter().all(|&(u, v)| (m >> u & 1) != (m >> v & 1)))
}

/// A random braid word on 2..=4 strands of length 1..=max_len.
pub fn random_braid(rng: &mut impl Rng, max_len: usize) -> (usize, Vec<i32>) {
    let strands = rng.gen_range(2..=4usize);
    let len = rng.gen_range(1..=max_len);
    let word = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..strands as i32);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    (strands, word)
}

/// Alternating braids: generator i carries sign (−1)^i.
pub fn random_alternating_braid(rng: &mut impl Rng, max_len: usize) -> (usize, Vec<i32>) {
    let strands = rng.gen_range(2..=4usize);
    let len = rng.gen_range(1..=max_len);
    let word = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..strands as i32);
            if g % 2 == 1 {
                g
            } else {
                -g
            }
        })
        .collect();
    (strands, word)
}

pub fn braid(strands: usize, word: &[i32]) -> LinkDiagram {
    braid_closure(strands, word).expect("valid braid")
}

pub fn group_list(pairs: &[((i64, i64), AbelianGroup)]) -> BigradedHomology {
    let mut h = BigradedHomology::new();
    for (k, g) in pairs {
        h.insert(k.0, k.1, g.clone());
    }
    h
}

pub fn counts(h: &BigradedHomology) -> BTreeMap<(i64, i64), (usize, usize)> {
    h.iter().map(|(k, g)| ((k[0], k[1]), (g.free_rank, g.torsion().len()))).collect()
}
