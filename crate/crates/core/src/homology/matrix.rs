use num_bigint::BigInt;

/// Sparse integer matrix stored by rows, entries sorted by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, i64)>>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.data[k].push((k, 1));
        }
        m
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            m.data[r] = row.iter().enumerate().filter(|(_, v)| **v != 0).map(|(c, v)| (c, *v)).collect();
        }
        m
    }

    /// Accumulates duplicate positions.
    pub fn from_triplets(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, i64)>) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "entry out of range");
            m.data[r].push((c, v));
        }
        for row in &mut m.data {
            row.sort_unstable_by_key(|e| e.0);
            let mut merged: Vec<(usize, i64)> = Vec::with_capacity(row.len());
            for &(c, v) in row.iter() {
                match merged.last_mut() {
                    Some(last) if last.0 == c => last.1 += v,
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|e| e.1 != 0);
            *row = merged;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, i64)] {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r].binary_search_by_key(&c, |e| e.0).map_or(0, |k| self.data[r][k].1)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for (r, row) in self.data.iter().enumerate() {
            for &(c, v) in row {
                out[r][c] = v;
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for &(c, v) in row {
                t.data[c].push((r, v));
            }
        }
        t
    }

    /// Product `self · other`; panics on dimension mismatch or overflow.
    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        let mut acc = vec![0i64; other.cols];
        let mut touched = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            for &(k, a) in row {
                for &(c, b) in &other.data[k] {
                    if acc[c] == 0 {
                        touched.push(c);
                    }
                    acc[c] = acc[c].checked_add(a.checked_mul(b).expect("overflow")).expect("overflow");
                }
            }
            touched.sort_unstable();
            touched.dedup();
            for &c in &touched {
                if acc[c] != 0 {
                    out.data[r].push((c, acc[c]));
                }
                acc[c] = 0;
            }
            touched.clear();
        }
        out
    }

    pub fn to_bigint_dense(&self) -> Vec<Vec<BigInt>> {
        self.to_dense().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect()
    }

    pub(crate) fn into_rows(self) -> Vec<Vec<(usize, i64)>> {
        self.data
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products() {
        let a = IntegerMatrix::from_dense(&[vec![1, 1, 0], vec![0, 1, 1]]);
        let b = IntegerMatrix::from_dense(&[vec![1, -1], vec![-1, 1], vec![1, -1]]);
        assert!(a.mul(&b).is_zero());
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(IntegerMatrix::identity(3).mul(&b), b);
        let t = IntegerMatrix::from_triplets(2, 2, [(0, 0, 1), (0, 0, -1), (1, 1, 2)]);
        assert_eq!(t.to_dense(), vec![vec![0, 0], vec![0, 2]]);
    }
}
