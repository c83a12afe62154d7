//! Sparse binary matrices with row and column adjacency.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseBinaryMatrix {
    n_rows: usize,
    n_cols: usize,
    rows: Vec<Vec<usize>>,
    cols: Vec<Vec<usize>>,
}

impl SparseBinaryMatrix {
    /// Each row lists its column indices; they are sorted and deduplicated-checked.
    pub fn from_rows(n_cols: usize, mut rows: Vec<Vec<usize>>) -> Result<Self> {
        let mut cols = vec![Vec::new(); n_cols];
        for (i, r) in rows.iter_mut().enumerate() {
            r.sort_unstable();
            if r.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Dimension(format!("row {i} repeats a column index")));
            }
            for &j in r.iter() {
                if j >= n_cols {
                    return Err(Error::Dimension(format!("column {j} out of range in row {i}")));
                }
                cols[j].push(i);
            }
        }
        Ok(Self { n_rows: rows.len(), n_cols, rows, cols })
    }

    pub fn from_dense(dense: &[Vec<u8>]) -> Result<Self> {
        let n_cols = dense.first().map_or(0, |r| r.len());
        let rows = dense
            .iter()
            .map(|r| {
                if r.len() != n_cols {
                    return Err(Error::Dimension("ragged dense matrix".into()));
                }
                Ok(r.iter().enumerate().filter(|(_, &v)| v != 0).map(|(j, _)| j).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(n_cols, rows)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_rows(n, (0..n).map(|i| vec![i]).collect()).unwrap()
    }

    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self::from_rows(n_cols, vec![Vec::new(); n_rows]).unwrap()
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.rows[i]
    }

    pub fn col(&self, j: usize) -> &[usize] {
        &self.cols[j]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn cols(&self) -> &[Vec<usize>] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].binary_search(&j).is_ok()
    }

    pub fn ones(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        let mut d = vec![vec![0u8; self.n_cols]; self.n_rows];
        for (i, r) in self.rows.iter().enumerate() {
            for &j in r {
                d[i][j] = 1;
            }
        }
        d
    }

    pub fn transpose(&self) -> Self {
        Self::from_rows(self.n_rows, self.cols.clone()).unwrap()
    }

    /// H x over GF(2); true entries are unsatisfied checks.
    pub fn syndrome(&self, x: &[u8]) -> Vec<u8> {
        self.rows.iter().map(|r| r.iter().fold(0u8, |acc, &j| acc ^ (x[j] & 1))).collect()
    }

    pub fn row_col_weight_profile(&self) -> (Vec<usize>, Vec<usize>) {
        (self.rows.iter().map(Vec::len).collect(), self.cols.iter().map(Vec::len).collect())
    }

    /// Some((column weight, row weight)) when the matrix is regular.
    pub fn regularity(&self) -> Option<(usize, usize)> {
        let (rw, cw) = self.row_col_weight_profile();
        let r = *rw.first()?;
        let c = *cw.first()?;
        (rw.iter().all(|&x| x == r) && cw.iter().all(|&x| x == c)).then_some((c, r))
    }
}

/// Rank over GF(2) by Gaussian elimination on bit-packed rows.
pub fn gf2_rank(mat: &SparseBinaryMatrix) -> usize {
    let words = mat.n_cols().div_ceil(64);
    let mut rows: Vec<Vec<u64>> = mat
        .rows()
        .iter()
        .map(|r| {
            let mut v = vec![0u64; words];
            for &j in r {
                v[j / 64] |= 1 << (j % 64);
            }
            v
        })
        .collect();
    let mut rank = 0;
    for col in 0..mat.n_cols() {
        let (w, bit) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][w] & bit != 0) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[w] & bit != 0 {
                for (a, b) in row[w..].iter_mut().zip(&pivot[w..]) {
                    *a ^= b;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_basics() {
        assert_eq!(gf2_rank(&SparseBinaryMatrix::identity(70)), 70);
        assert_eq!(gf2_rank(&SparseBinaryMatrix::zeros(5, 9)), 0);
        let m = SparseBinaryMatrix::from_dense(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]).unwrap();
        assert_eq!(gf2_rank(&m), 2);
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(SparseBinaryMatrix::from_rows(3, vec![vec![0, 3]]).is_err());
        assert!(SparseBinaryMatrix::from_rows(3, vec![vec![1, 1]]).is_err());
    }

    #[test]
    fn identity_profile() {
        let (r, c) = SparseBinaryMatrix::identity(4).row_col_weight_profile();
        assert_eq!(r, vec![1; 4]);
        assert_eq!(c, vec![1; 4]);
    }
}
