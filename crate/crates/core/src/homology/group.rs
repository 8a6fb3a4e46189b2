use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::polynomial::{coeff_from_json, coeff_to_json};

/// ℤ^r ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_m with d₁ | d₂ | … and every dᵢ ≥ 2.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    pub free_rank: usize,
    invariant_factors: Vec<BigUint>,
}

impl AbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, invariant_factors: Vec::new() }
    }

    /// Any list of cyclic orders is accepted and brought to invariant-factor
    /// form; orders 0 count as free summands and 1 is dropped.
    pub fn new<T: Into<BigUint>>(free_rank: usize, cyclic: impl IntoIterator<Item = T>) -> Self {
        let mut free_rank = free_rank;
        let mut t = Vec::new();
        for d in cyclic {
            let d: BigUint = d.into();
            if d.is_zero() {
                free_rank += 1;
            } else if !d.is_one() {
                t.push(d);
            }
        }
        AbelianGroup { free_rank, invariant_factors: canonical_factors(t) }
    }

    pub fn torsion(&self) -> &[BigUint] {
        &self.invariant_factors
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Whether ℤ₂ embeds, i.e. some invariant factor is even.
    pub fn contains_z2(&self) -> bool {
        self.invariant_factors.iter().any(|d| d.is_even())
    }

    /// Dimension of the group tensored with ℤ/p, p prime.
    pub fn rank_mod(&self, p: u32) -> usize {
        let p = BigUint::from(p);
        self.free_rank + self.invariant_factors.iter().filter(|d| (*d % &p).is_zero()).count()
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut t = self.invariant_factors.clone();
        t.extend(other.invariant_factors.iter().cloned());
        AbelianGroup::new(self.free_rank + other.free_rank, t)
    }

    pub fn torsion_part(&self) -> AbelianGroup {
        AbelianGroup { free_rank: 0, invariant_factors: self.invariant_factors.clone() }
    }
}

/// Invariant factors of ⊕ ℤ/dᵢ via repeated gcd/lcm exchange.
fn canonical_factors(mut t: Vec<BigUint>) -> Vec<BigUint> {
    let n = t.len();
    for a in 0..n {
        for b in a + 1..n {
            let g = t[a].gcd(&t[b]);
            let l = &t[a] / &g * &t[b];
            t[a] = g;
            t[b] = l;
        }
    }
    t.retain(|d| !d.is_one());
    t
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut k = 0;
        while k < self.invariant_factors.len() {
            let d = &self.invariant_factors[k];
            let run = self.invariant_factors[k..].iter().take_while(|x| *x == d).count();
            parts.push(if run == 1 { format!("Z_{d}") } else { format!("Z_{d}^{run}") });
            k += run;
        }
        f.write_str(&parts.join("+"))
    }
}

/// Homology groups keyed by D grading indices (i, j) or (i, j, k); only
/// nonzero groups are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedHomology<const D: usize> {
    groups: BTreeMap<[i64; D], AbelianGroup>,
}

pub type BigradedHomology = GradedHomology<2>;
pub type StratifiedHomology = GradedHomology<3>;

const KEYS: [&str; 3] = ["i", "j", "k"];

impl<const D: usize> GradedHomology<D> {
    pub fn new() -> Self {
        GradedHomology { groups: BTreeMap::new() }
    }

    pub fn insert_at(&mut self, key: [i64; D], g: AbelianGroup) {
        if g.is_zero() {
            self.groups.remove(&key);
        } else {
            self.groups.insert(key, g);
        }
    }

    pub fn group_at(&self, key: [i64; D]) -> AbelianGroup {
        self.groups.get(&key).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[i64; D], &AbelianGroup)> {
        self.groups.iter()
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.groups.values().all(|g| g.is_free())
    }

    pub fn total_free_rank(&self) -> usize {
        self.groups.values().map(|g| g.free_rank).sum()
    }

    /// Only the torsion subgroups.
    pub fn torsion_part(&self) -> Self {
        let mut out = Self::new();
        for (k, g) in &self.groups {
            out.insert_at(*k, g.torsion_part());
        }
        out
    }

    /// Only the free parts.
    pub fn free_part(&self) -> Self {
        let mut out = Self::new();
        for (k, g) in &self.groups {
            out.insert_at(*k, AbelianGroup::free(g.free_rank));
        }
        out
    }

    /// Re-key every group `at` → `at + delta`.
    pub fn shifted(&self, delta: [i64; D]) -> Self {
        let mut out = Self::new();
        for (k, g) in &self.groups {
            let mut key = *k;
            for (x, d) in key.iter_mut().zip(delta) {
                *x += d;
            }
            out.insert_at(key, g.clone());
        }
        out
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, g) in &other.groups {
            let s = out.group_at(*k).direct_sum(g);
            out.insert_at(*k, s);
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let groups: Vec<Value> = self
            .groups
            .iter()
            .map(|(key, g)| {
                let mut m = serde_json::Map::new();
                for (name, v) in KEYS.iter().zip(key) {
                    m.insert(name.to_string(), json!(v));
                }
                m.insert("free_rank".into(), json!(g.free_rank));
                let t: Vec<Value> = g.torsion().iter().map(|d| coeff_to_json(&BigInt::from(d.clone()))).collect();
                m.insert("torsion".into(), Value::Array(t));
                Value::Object(m)
            })
            .collect();
        json!({ "groups": groups })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::malformed(0, format!("homology JSON: {m}"));
        let groups = v.get("groups").and_then(Value::as_array).ok_or_else(|| bad("missing groups"))?;
        let mut out = Self::new();
        for g in groups {
            let mut key = [0i64; D];
            for (slot, name) in key.iter_mut().zip(KEYS) {
                *slot = g.get(name).and_then(Value::as_i64).ok_or_else(|| bad(name))?;
            }
            let free = g.get("free_rank").and_then(Value::as_u64).ok_or_else(|| bad("free_rank"))? as usize;
            let mut tors = Vec::new();
            for t in g.get("torsion").and_then(Value::as_array).ok_or_else(|| bad("torsion"))? {
                let c = coeff_from_json(t).and_then(|c| c.to_biguint()).ok_or_else(|| bad("torsion entry"))?;
                tors.push(c);
            }
            out.insert_at(key, AbelianGroup::new(free, tors));
        }
        Ok(out)
    }

    pub fn to_csv(&self) -> String {
        let mut out = KEYS[..D].join(",");
        out.push_str(",free_rank,torsion\n");
        for (key, g) in &self.groups {
            let k: Vec<String> = key.iter().map(|x| x.to_string()).collect();
            let t: Vec<String> = g.torsion().iter().map(|d| d.to_string()).collect();
            out.push_str(&format!("{},{},{}\n", k.join(","), g.free_rank, t.join(";")));
        }
        out
    }
}

impl GradedHomology<2> {
    pub fn insert(&mut self, i: i64, j: i64, g: AbelianGroup) {
        self.insert_at([i, j], g)
    }

    pub fn get(&self, i: i64, j: i64) -> AbelianGroup {
        self.group_at([i, j])
    }

    pub fn free_rank(&self, i: i64, j: i64) -> usize {
        self.get(i, j).free_rank
    }

    /// Table with j rows descending and i columns ascending, over the
    /// given ranges or the support when `None`.
    pub fn table(&self, ranges: Option<((i64, i64), (i64, i64))>) -> String {
        let ((i0, i1), (j0, j1)) = match ranges {
            Some(r) => r,
            None => {
                if self.groups.is_empty() {
                    return "(zero)\n".to_string();
                }
                let is = self.groups.keys().map(|k| k[0]);
                let js = self.groups.keys().map(|k| k[1]);
                ((is.clone().min().unwrap(), is.max().unwrap()), (js.clone().min().unwrap(), js.max().unwrap()))
            }
        };
        render_table(|i, j| self.get(i, j), (i0, i1), (j0, j1))
    }
}

impl GradedHomology<3> {
    pub fn insert(&mut self, i: i64, j: i64, k: i64, g: AbelianGroup) {
        self.insert_at([i, j, k], g)
    }

    pub fn get(&self, i: i64, j: i64, k: i64) -> AbelianGroup {
        self.group_at([i, j, k])
    }

    /// Forget the k grading.
    pub fn collapse(&self) -> BigradedHomology {
        let mut out = BigradedHomology::new();
        for ([i, j, _], g) in &self.groups {
            let s = out.get(*i, *j).direct_sum(g);
            out.insert(*i, *j, s);
        }
        out
    }

    pub fn k_values(&self) -> Vec<i64> {
        let mut ks: Vec<i64> = self.groups.keys().map(|k| k[2]).collect();
        ks.sort_unstable();
        ks.dedup();
        ks
    }

    /// One (i, j) table per k, highest k first.
    pub fn table(&self) -> String {
        if self.groups.is_empty() {
            return "(zero)\n".to_string();
        }
        let is = self.groups.keys().map(|k| k[0]);
        let js = self.groups.keys().map(|k| k[1]);
        let ir = (is.clone().min().unwrap(), is.max().unwrap());
        let jr = (js.clone().min().unwrap(), js.max().unwrap());
        let mut out = String::new();
        for k in self.k_values().into_iter().rev() {
            out.push_str(&format!("k = {k}\n"));
            out.push_str(&render_table(|i, j| self.get(i, j, k), ir, jr));
        }
        out
    }
}

fn render_table(get: impl Fn(i64, i64) -> AbelianGroup, (i0, i1): (i64, i64), (j0, j1): (i64, i64)) -> String {
    let mut cells: Vec<Vec<String>> = Vec::new();
    let mut header = vec!["j\\i".to_string()];
    // all gradings of a complex share the parity of i and of j
    let is: Vec<i64> = (i0..=i1).step_by(2).collect();
    header.extend(is.iter().map(|i| i.to_string()));
    cells.push(header);
    for j in (j0..=j1).rev().step_by(2) {
        let mut row = vec![j.to_string()];
        row.extend(is.iter().map(|&i| get(i, j).to_string()));
        cells.push(row);
    }
    let ncol = cells[0].len();
    let widths: Vec<usize> = (0..ncol).map(|c| cells.iter().map(|r| r[c].len()).max().unwrap_or(1)).collect();
    let mut out = String::new();
    for row in cells {
        let line: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
        out.push_str(line.join(" ").trim_end());
        out.push('\n');
    }
    out
}
