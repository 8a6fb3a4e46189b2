//! Smith normal form over ℤ.
//!
//! Unit pivots are eliminated sparsely first, shortest rows first and
//! among them the sparsest column. Whatever is left has no ±1 entries and
//! goes to a dense reduction in i128, redone with big integers if any
//! intermediate value leaves the machine range.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntegerMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub rank: usize,
    /// Nonzero diagonal entries d₁ | d₂ | …, including the ones.
    pub invariant_factors: Vec<BigUint>,
}

impl SmithForm {
    /// The factors greater than one.
    pub fn torsion(&self) -> Vec<BigUint> {
        self.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    smith_from_rows(m.cols(), m.clone().into_rows())
}

/// Rank only, same elimination.
pub fn rank(m: &IntegerMatrix) -> usize {
    smith_normal_form(m).rank
}

pub(crate) fn smith_from_rows(ncols: usize, mut rows: Vec<Vec<(usize, i64)>>) -> SmithForm {
    rows.retain(|r| !r.is_empty());
    let nrows = rows.len();
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); ncols];
    for (r, row) in rows.iter().enumerate() {
        for &(c, _) in row {
            col_rows[c].push(r as u32);
        }
    }
    let mut active = vec![true; nrows];
    let mut heap: BinaryHeap<Reverse<(usize, u32)>> =
        rows.iter().enumerate().map(|(r, row)| Reverse((row.len(), r as u32))).collect();
    let mut ones = 0usize;
    let mut scratch: Vec<(usize, i64)> = Vec::new();

    while let Some(Reverse((len, r))) = heap.pop() {
        let r = r as usize;
        if !active[r] || rows[r].len() != len {
            continue;
        }
        if len == 0 {
            active[r] = false;
            continue;
        }
        // unit entry in the sparsest column
        let pivot = rows[r]
            .iter()
            .filter(|e| e.1.abs() == 1)
            .min_by_key(|e| col_rows[e.0].len())
            .copied();
        let Some((pc, pv)) = pivot else { continue };
        let targets: Vec<u32> = std::mem::take(&mut col_rows[pc]);
        let prow = std::mem::take(&mut rows[r]);
        active[r] = false;
        let mut failed = false;
        for &t in &targets {
            let t = t as usize;
            if t == r || !active[t] {
                continue;
            }
            let Ok(k) = rows[t].binary_search_by_key(&pc, |e| e.0) else { continue };
            let factor = rows[t][k].1 * pv;
            if !axpy(&rows[t], &prow, factor, &mut scratch) {
                failed = true;
                break;
            }
            for &(c, _) in &scratch {
                if rows[t].binary_search_by_key(&c, |e| e.0).is_err() {
                    col_rows[c].push(t as u32);
                }
            }
            std::mem::swap(&mut rows[t], &mut scratch);
            heap.push(Reverse((rows[t].len(), t as u32)));
        }
        if failed {
            // undo the pivot removal: the row and column stay for the dense pass
            rows[r] = prow;
            active[r] = true;
            col_rows[pc] = targets;
            break;
        }
        ones += 1;
    }

    let rest: Vec<usize> = (0..nrows).filter(|&r| active[r] && !rows[r].is_empty()).collect();
    let mut factors: Vec<BigUint> = vec![BigUint::one(); ones];
    if !rest.is_empty() {
        let mut cols: Vec<usize> = rest.iter().flat_map(|&r| rows[r].iter().map(|e| e.0)).collect();
        cols.sort_unstable();
        cols.dedup();
        let dense: Vec<Vec<i64>> = rest
            .iter()
            .map(|&r| {
                let mut line = vec![0i64; cols.len()];
                for &(c, v) in &rows[r] {
                    line[cols.binary_search(&c).unwrap()] = v;
                }
                line
            })
            .collect();
        factors.extend(dense_smith(&dense));
    }
    let factors = chain(factors);
    SmithForm { rank: factors.len(), invariant_factors: factors }
}

/// `out = a - f * b` on sorted sparse rows; false on overflow.
fn axpy(a: &[(usize, i64)], b: &[(usize, i64)], f: i64, out: &mut Vec<(usize, i64)>) -> bool {
    out.clear();
    let (mut x, mut y) = (0, 0);
    while x < a.len() || y < b.len() {
        let ca = a.get(x).map_or(usize::MAX, |e| e.0);
        let cb = b.get(y).map_or(usize::MAX, |e| e.0);
        match ca.cmp(&cb) {
            Ordering::Less => {
                out.push(a[x]);
                x += 1;
            }
            Ordering::Greater => {
                let Some(v) = b[y].1.checked_mul(f).and_then(i64::checked_neg) else { return false };
                out.push((cb, v));
                y += 1;
            }
            Ordering::Equal => {
                let Some(v) = b[y].1.checked_mul(f).and_then(|p| a[x].1.checked_sub(p)) else { return false };
                if v != 0 {
                    out.push((ca, v));
                }
                x += 1;
                y += 1;
            }
        }
    }
    true
}

/// Nonzero invariant factors of a dense matrix.
pub(crate) fn dense_smith(m: &[Vec<i64>]) -> Vec<BigUint> {
    let small: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    match dense_smith_generic(small) {
        Some(d) => d,
        None => {
            let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
            dense_smith_generic(big).expect("big integers cannot overflow")
        }
    }
}

pub(crate) fn dense_smith_big(m: Vec<Vec<BigInt>>) -> Vec<BigUint> {
    dense_smith_generic(m).expect("big integers cannot overflow")
}

trait Entry: Clone + Sized {
    fn minus_one() -> Self;
    fn is_zero(&self) -> bool;
    fn magnitude_lt(&self, other: &Self) -> bool;
    /// `(q, r)` with `self = q * d + r` and |r| < |d|.
    fn div_rem_by(&self, d: &Self) -> (Self, Self);
    /// `self - q * b`, `None` on overflow.
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn is_multiple_of(&self, d: &Self) -> bool;
    fn to_magnitude(&self) -> BigUint;
}

impl Entry for i128 {
    fn minus_one() -> Self {
        -1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn magnitude_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn div_rem_by(&self, d: &Self) -> (Self, Self) {
        (self / d, self % d)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        let v = self.checked_sub(q.checked_mul(*b)?)?;
        // keep headroom so later products cannot wrap silently
        (v.unsigned_abs() < 1u128 << 62).then_some(v)
    }
    fn is_multiple_of(&self, d: &Self) -> bool {
        self % d == 0
    }
    fn to_magnitude(&self) -> BigUint {
        BigUint::from(self.unsigned_abs())
    }
}

impl Entry for BigInt {
    fn minus_one() -> Self {
        BigInt::from(-1)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn magnitude_lt(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn div_rem_by(&self, d: &Self) -> (Self, Self) {
        Integer::div_rem(self, d)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn is_multiple_of(&self, d: &Self) -> bool {
        Zero::is_zero(&(self % d))
    }
    fn to_magnitude(&self) -> BigUint {
        self.magnitude().clone()
    }
}

fn dense_smith_generic<T: Entry>(mut a: Vec<Vec<T>>) -> Option<Vec<BigUint>> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for r in t..m {
            for c in t..n {
                if !a[r][c].is_zero() && best.is_none_or(|(br, bc)| a[r][c].magnitude_lt(&a[br][bc])) {
                    best = Some((r, c));
                }
            }
        }
        let Some((br, bc)) = best else { break };
        a.swap(t, br);
        for row in a.iter_mut() {
            row.swap(t, bc);
        }
        loop {
            let mut clean = true;
            for r in t + 1..m {
                if a[r][t].is_zero() {
                    continue;
                }
                let (q, _) = a[r][t].div_rem_by(&a[t][t]);
                for c in t..n {
                    let v = a[r][c].sub_mul(&q, &a[t][c])?;
                    a[r][c] = v;
                }
                if !a[r][t].is_zero() {
                    clean = false;
                }
            }
            for c in t + 1..n {
                if a[t][c].is_zero() {
                    continue;
                }
                let (q, _) = a[t][c].div_rem_by(&a[t][t]);
                for r in t..m {
                    let v = a[r][c].sub_mul(&q, &a[r][t])?;
                    a[r][c] = v;
                }
                if !a[t][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // pivot must divide the remaining block
                let bad = (t + 1..m).find_map(|r| (t + 1..n).find(|&c| !a[r][c].is_multiple_of(&a[t][t])).map(|_| r));
                match bad {
                    None => break,
                    Some(r) => {
                        for c in t..n {
                            let v = a[t][c].sub_mul(&T::minus_one(), &a[r][c])?;
                            a[t][c] = v;
                        }
                        continue;
                    }
                }
            }
            // move the smallest entry of row t / column t to the pivot
            let mut best = (t, t);
            for r in t..m {
                if !a[r][t].is_zero() && a[r][t].magnitude_lt(&a[best.0][best.1]) {
                    best = (r, t);
                }
            }
            for c in t..n {
                if !a[t][c].is_zero() && a[t][c].magnitude_lt(&a[best.0][best.1]) {
                    best = (t, c);
                }
            }
            if best.0 != t {
                a.swap(t, best.0);
            }
            if best.1 != t {
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        diag.push(a[t][t].to_magnitude());
        t += 1;
    }
    Some(diag)
}

/// Bring a list of nonzero diagonal entries to a divisibility chain.
fn chain(mut d: Vec<BigUint>) -> Vec<BigUint> {
    d.sort();
    let n = d.len();
    for a in 0..n {
        for b in a + 1..n {
            let g = d[a].gcd(&d[b]);
            let l = &d[a] / &g * &d[b];
            d[a] = g;
            d[b] = l;
        }
    }
    d
}
