use serde::{Deserialize, Serialize};

use super::{LinalgError, Modulus};

/// Dense row-major matrix used inside the elimination routines.
pub(crate) type Dense = Vec<Vec<u64>>;

/// A matrix over Z/m stored as canonical (row-major) triplets without zeros.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    modulus: Modulus,
    entries: Vec<(usize, usize, u64)>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize, modulus: Modulus) -> Self {
        SparseMatrix {
            rows,
            cols,
            modulus,
            entries: Vec::new(),
        }
    }

    pub fn identity(n: usize, modulus: Modulus) -> Self {
        SparseMatrix {
            rows: n,
            cols: n,
            modulus,
            entries: (0..n).map(|i| (i, i, 1)).collect(),
        }
    }

    /// Builds a matrix from unordered triplets; duplicates are summed.
    pub fn from_triplets<I>(rows: usize, cols: usize, modulus: Modulus, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, i64)>,
    {
        let mut raw: Vec<(usize, usize, u64)> = triplets
            .into_iter()
            .map(|(r, c, v)| {
                assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
                (r, c, modulus.from_i64(v))
            })
            .collect();
        raw.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut entries: Vec<(usize, usize, u64)> = Vec::with_capacity(raw.len());
        for (r, c, v) in raw {
            match entries.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 = modulus.add(last.2, v),
                _ => entries.push((r, c, v)),
            }
        }
        entries.retain(|e| e.2 != 0);
        SparseMatrix {
            rows,
            cols,
            modulus,
            entries,
        }
    }

    pub fn from_dense(rows: &[Vec<i64>], modulus: Modulus) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        Self::from_triplets(
            nrows,
            ncols,
            modulus,
            rows.iter()
                .enumerate()
                .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, &v)| (i, j, v))),
        )
    }

    pub(crate) fn from_dense_residues(dense: &Dense, cols: usize, modulus: Modulus) -> Self {
        let mut entries = Vec::new();
        for (i, row) in dense.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                let v = v % modulus.value();
                if v != 0 {
                    entries.push((i, j, v));
                }
            }
        }
        SparseMatrix {
            rows: dense.len(),
            cols,
            modulus,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn entries(&self) -> &[(usize, usize, u64)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries
            .binary_search_by_key(&(r, c), |&(i, j, _)| (i, j))
            .map_or(0, |idx| self.entries[idx].2)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub(crate) fn to_dense(&self) -> Dense {
        let mut d = vec![vec![0u64; self.cols]; self.rows];
        for &(r, c, v) in &self.entries {
            d[r][c] = v;
        }
        d
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        self.to_dense()
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut entries: Vec<_> = self.entries.iter().map(|&(r, c, v)| (c, r, v)).collect();
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            modulus: self.modulus,
            entries,
        }
    }

    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        self.modulus.ensure_same(&other.modulus)?;
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let md = self.modulus;
        let mut row_starts = vec![0usize; other.rows + 1];
        for &(r, _, _) in &other.entries {
            row_starts[r + 1] += 1;
        }
        for i in 0..other.rows {
            row_starts[i + 1] += row_starts[i];
        }
        let mut acc = vec![0u64; other.cols];
        let mut out = Vec::new();
        let mut idx = 0;
        while idx < self.entries.len() {
            let r = self.entries[idx].0;
            let mut touched = Vec::new();
            while idx < self.entries.len() && self.entries[idx].0 == r {
                let (_, k, a) = self.entries[idx];
                for &(_, c, b) in &other.entries[row_starts[k]..row_starts[k + 1]] {
                    if acc[c] == 0 {
                        touched.push(c);
                    }
                    acc[c] = md.add(acc[c], md.mul(a, b));
                }
                idx += 1;
            }
            touched.sort_unstable();
            touched.dedup();
            for c in touched {
                if acc[c] != 0 {
                    out.push((r, c, acc[c]));
                }
                acc[c] = 0;
            }
        }
        Ok(SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            modulus: md,
            entries: out,
        })
    }

    pub fn mul_vec(&self, x: &[u64]) -> Result<Vec<u64>, LinalgError> {
        if x.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        let md = self.modulus;
        let mut y = vec![0; self.rows];
        for &(r, c, v) in &self.entries {
            y[r] = md.add(y[r], md.mul(v, x[c]));
        }
        Ok(y)
    }

    /// Whether the matrix is diagonal (all entries on i == j).
    pub fn is_diagonal(&self) -> bool {
        self.entries.iter().all(|&(r, c, _)| r == c)
    }
}

pub(crate) fn vec_add_scaled(md: Modulus, target: &mut [u64], src: &[u64], scale: u64) {
    if scale == 0 {
        return;
    }
    for (t, &s) in target.iter_mut().zip(src) {
        if s != 0 {
            *t = md.add(*t, md.mul(s, scale));
        }
    }
}

pub(crate) fn vec_scale(md: Modulus, v: &mut [u64], scale: u64) {
    for x in v.iter_mut() {
        *x = md.mul(*x, scale);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triplets_are_canonical() {
        let md = Modulus::new(4).unwrap();
        let m = SparseMatrix::from_triplets(2, 2, md, [(1, 0, 3), (0, 1, 1), (1, 0, 1), (0, 0, 4)]);
        assert_eq!(m.entries(), &[(0, 1, 1)]);
        assert_eq!(m.get(1, 0), 0);
    }

    #[test]
    fn product_matches_dense() {
        let md = Modulus::new(5).unwrap();
        let a = SparseMatrix::from_dense(&[vec![1, 2, 0], vec![0, 3, 4]], md);
        let b = SparseMatrix::from_dense(&[vec![1, 0], vec![2, 1], vec![0, 4]], md);
        let c = a.mul(&b).unwrap();
        assert_eq!(c.to_rows(), vec![vec![0, 2], vec![1, 4]]);
        assert_eq!(a.mul_vec(&[1, 1, 1]).unwrap(), vec![3, 2]);
    }
}
