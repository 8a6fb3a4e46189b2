//! Sublattices of Z^n in row Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::group::AbelianGroup;
use super::matrix::IntegerMatrix;
use super::snf::dense_smith_big;

/// A sublattice of Z^dim. The basis is kept in Hermite normal form, so two
/// lattices are equal exactly when their bases are.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<BigInt>>,
}

/// Row-reduce in place to Hermite normal form and drop zero rows.
fn hnf(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    let mut top = 0;
    for c in 0..ncols {
        if top == rows.len() {
            break;
        }
        loop {
            // smallest nonzero magnitude in column c at or below `top`
            let piv = (top..rows.len())
                .filter(|&r| !rows[r][c].is_zero())
                .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()));
            let Some(p) = piv else { break };
            rows.swap(top, p);
            let mut done = true;
            for r in top + 1..rows.len() {
                if rows[r][c].is_zero() {
                    continue;
                }
                let q = rows[r][c].div_floor(&rows[top][c]);
                let (head, tail) = rows.split_at_mut(r);
                for (x, y) in tail[0].iter_mut().zip(&head[top]).skip(c) {
                    *x -= &q * y;
                }
                if !rows[r][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[top][c].is_zero() {
            continue;
        }
        if rows[top][c].is_negative() {
            for x in &mut rows[top] {
                *x = -&*x;
            }
        }
        for r in 0..top {
            let q = rows[r][c].div_floor(&rows[top][c]);
            if q.is_zero() {
                continue;
            }
            let (head, tail) = rows.split_at_mut(top);
            for (x, y) in head[r].iter_mut().zip(&tail[0]).skip(c) {
                *x -= &q * y;
            }
        }
        top += 1;
    }
    rows.truncate(top);
    rows
}

fn pivot(row: &[BigInt]) -> usize {
    row.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero")
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice { dim, basis: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        Self::from_generators(dim, (0..dim).map(|k| unit(dim, k)))
    }

    pub fn from_generators(dim: usize, gens: impl IntoIterator<Item = Vec<BigInt>>) -> Self {
        let rows: Vec<Vec<BigInt>> = gens
            .into_iter()
            .inspect(|g| assert_eq!(g.len(), dim, "generator of wrong length"))
            .filter(|g| g.iter().any(|x| !x.is_zero()))
            .collect();
        Lattice { dim, basis: hnf(rows, dim) }
    }

    /// Column span of `m`.
    pub fn image(m: &IntegerMatrix) -> Self {
        Self::image_of(m, &Self::full(m.cols()))
    }

    /// Image of `l` under `m`.
    pub fn image_of(m: &IntegerMatrix, l: &Lattice) -> Self {
        assert_eq!(m.cols(), l.dim);
        Self::from_generators(m.rows(), l.basis.iter().map(|v| apply(m, v)))
    }

    /// {x : m x = 0}.
    pub fn kernel(m: &IntegerMatrix) -> Self {
        Self::preimage(m, &Self::zero(m.rows()))
    }

    /// {x : m x ∈ target}.
    pub fn preimage(m: &IntegerMatrix, target: &Lattice) -> Self {
        assert_eq!(m.rows(), target.dim);
        let (r, n) = (m.rows(), m.cols());
        let mut rows: Vec<Vec<BigInt>> = (0..n)
            .map(|k| {
                let mut row = apply(m, &unit(n, k));
                row.extend(unit(n, k));
                row
            })
            .collect();
        for b in &target.basis {
            let mut row = b.clone();
            row.extend(std::iter::repeat_n(BigInt::zero(), n));
            rows.push(row);
        }
        let reduced = hnf(rows, r + n);
        let gens = reduced.into_iter().filter(|row| row[..r].iter().all(Zero::is_zero)).map(|row| row[r..].to_vec());
        Self::from_generators(n, gens)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.dim, other.dim);
        Self::from_generators(self.dim, self.basis.iter().chain(&other.basis).cloned())
    }

    pub fn intersection(&self, other: &Lattice) -> Lattice {
        // x ∈ self ∩ other iff x = a·B = b·C, i.e. (a, b) in the kernel of [Bᵀ | −Cᵀ]
        let (p, q) = (self.rank(), other.rank());
        let mut entries = Vec::new();
        for (k, row) in self.basis.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                entries.push((c, k, v.clone()));
            }
        }
        for (k, row) in other.basis.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                entries.push((c, p + k, -v));
            }
        }
        let mut dense = vec![vec![BigInt::zero(); p + q]; self.dim];
        for (r, c, v) in entries {
            dense[r][c] = v;
        }
        let mut rows: Vec<Vec<BigInt>> = (0..p + q)
            .map(|k| {
                let mut row: Vec<BigInt> = dense.iter().map(|r| r[k].clone()).collect();
                row.extend(unit(p + q, k));
                row
            })
            .collect();
        rows = hnf(rows, self.dim + p + q);
        let gens: Vec<Vec<BigInt>> = rows
            .into_iter()
            .filter(|row| row[..self.dim].iter().all(Zero::is_zero))
            .map(|row| {
                let coeffs = &row[self.dim..self.dim + p];
                let mut x = vec![BigInt::zero(); self.dim];
                for (a, b) in coeffs.iter().zip(&self.basis) {
                    for (xi, bi) in x.iter_mut().zip(b) {
                        *xi += a * bi;
                    }
                }
                x
            })
            .collect();
        Self::from_generators(self.dim, gens)
    }

    /// Coordinates of `v` in the basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.dim);
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for b in &self.basis {
            let p = pivot(b);
            if rest[..p].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, r) = rest[p].div_rem(&b[p]);
            if !r.is_zero() {
                return None;
            }
            for (x, y) in rest.iter_mut().zip(b).skip(p) {
                *x -= &q * y;
            }
            coords.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains_vector(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|v| self.contains_vector(v))
    }

    /// self / sub as an abelian group; `None` unless sub ⊆ self.
    pub fn quotient(&self, sub: &Lattice) -> Option<AbelianGroup> {
        let coords: Vec<Vec<BigInt>> = sub.basis.iter().map(|v| self.coordinates(v)).collect::<Option<_>>()?;
        let factors = if coords.is_empty() { Vec::new() } else { dense_smith_big(coords) };
        let free = self.rank() - factors.len();
        Some(AbelianGroup::new(free, factors))
    }
}

fn unit(n: usize, k: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[k] = BigInt::from(1);
    v
}

pub(crate) fn apply(m: &IntegerMatrix, v: &[BigInt]) -> Vec<BigInt> {
    assert_eq!(m.cols(), v.len());
    (0..m.rows()).map(|r| m.row(r).iter().map(|&(c, x)| &v[c] * x).sum()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vecs(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn hnf_is_canonical() {
        let a = Lattice::from_generators(2, vecs(&[&[2, 0], &[0, 3]]));
        let b = Lattice::from_generators(2, vecs(&[&[2, 3], &[4, 3], &[6, 6]]));
        assert_eq!(a, b);
        assert_eq!(a.rank(), 2);
        assert_eq!(Lattice::full(2).quotient(&a), Some(AbelianGroup::new(0, [6u32])));
    }

    #[test]
    fn kernel_and_image() {
        let m = IntegerMatrix::from_dense(&[vec![1, 1, 0], vec![0, 2, 2]]);
        let k = Lattice::kernel(&m);
        assert_eq!(k.basis(), vecs(&[&[1, -1, 1]]).as_slice());
        let im = Lattice::image(&m);
        assert_eq!(Lattice::full(2).quotient(&im), Some(AbelianGroup::new(0, [2u32])));
        let pre = Lattice::preimage(&m, &Lattice::from_generators(2, vecs(&[&[0, 2]])));
        assert!(pre.contains_vector(&vecs(&[&[1, -1, 2]])[0]));
        assert!(!pre.contains_vector(&vecs(&[&[1, 0, 0]])[0]));
    }

    #[test]
    fn intersections_and_membership() {
        let a = Lattice::from_generators(2, vecs(&[&[2, 0], &[0, 1]]));
        let b = Lattice::from_generators(2, vecs(&[&[1, 1]]));
        assert_eq!(a.intersection(&b), Lattice::from_generators(2, vecs(&[&[2, 2]])));
        assert!(a.contains(&Lattice::from_generators(2, vecs(&[&[4, 7]]))));
        assert!(!a.contains(&b));
        assert_eq!(b.quotient(&a), None);
        assert_eq!(a.quotient(&Lattice::zero(2)), Some(AbelianGroup::free(2)));
    }
}
