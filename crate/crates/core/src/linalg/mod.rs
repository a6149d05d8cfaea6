//! Exact integer linear algebra: sparse matrices, Smith normal form,
//! integer kernels and homology of a pair of composable maps.

mod coeff;
mod homology;
mod kernel;
mod smith;

pub use homology::{homology_at, homology_via_kernel, Homology};
pub use kernel::integer_kernel;
pub use smith::{smith_normal_form, smith_normal_form_with, SmithForm, Strategy, DENSE_LIMIT};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::SCHEMA;

/// Sparse integer matrix in compressed-column form. Entries within a column
/// are sorted by row, never zero and never duplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    col_ptr: Vec<usize>,
    row_idx: Vec<u32>,
    vals: Vec<i64>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { rows, cols, col_ptr: vec![0; cols + 1], row_idx: vec![], vals: vec![] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_columns(n, (0..n).map(|i| vec![(i as u32, 1)]).collect()).expect("identity is well formed")
    }

    /// Builds a matrix from `(row, col, value)` triples, summing duplicates
    /// and dropping zeros.
    pub fn from_triplets(rows: usize, cols: usize, triplets: &[(usize, usize, i64)]) -> Result<Self> {
        let mut columns: Vec<Vec<(u32, i64)>> = vec![Vec::new(); cols];
        for &(r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::IndexOutOfRange { index: r.max(c), order: rows.max(cols) });
            }
            columns[c].push((r as u32, v));
        }
        Self::from_columns(rows, columns)
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut triplets = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged dense matrix");
            for (j, &v) in row.iter().enumerate() {
                triplets.push((i, j, v));
            }
        }
        Self::from_triplets(nrows, ncols, &triplets).expect("indices in range")
    }

    /// Builds a matrix from per-column entry lists (any order, duplicates summed).
    pub fn from_columns(rows: usize, columns: Vec<Vec<(u32, i64)>>) -> Result<Self> {
        let cols = columns.len();
        let mut col_ptr = Vec::with_capacity(cols + 1);
        let mut row_idx = Vec::new();
        let mut vals = Vec::new();
        col_ptr.push(0);
        for mut col in columns {
            col.sort_unstable_by_key(|e| e.0);
            let mut i = 0;
            while i < col.len() {
                let r = col[i].0;
                if r as usize >= rows {
                    return Err(Error::IndexOutOfRange { index: r as usize, order: rows });
                }
                let mut v: i64 = 0;
                while i < col.len() && col[i].0 == r {
                    v = v
                        .checked_add(col[i].1)
                        .ok_or_else(|| Error::Overflow(format!("entry ({r}, {})", col_ptr.len() - 1)))?;
                    i += 1;
                }
                if v != 0 {
                    row_idx.push(r);
                    vals.push(v);
                }
            }
            col_ptr.push(row_idx.len());
        }
        Ok(SparseIntMatrix { rows, cols, col_ptr, row_idx, vals })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// Entries of column `j` as parallel (rows, values) slices.
    pub fn column(&self, j: usize) -> (&[u32], &[i64]) {
        let range = self.col_ptr[j]..self.col_ptr[j + 1];
        (&self.row_idx[range.clone()], &self.vals[range])
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        let (r, v) = self.column(j);
        match r.binary_search(&(i as u32)) {
            Ok(k) => v[k],
            Err(_) => 0,
        }
    }

    /// Entries in row-major order.
    pub fn triplets(&self) -> Vec<(usize, usize, i64)> {
        let mut out: Vec<(usize, usize, i64)> = (0..self.cols)
            .flat_map(|j| {
                let (r, v) = self.column(j);
                r.iter().zip(v).map(move |(&i, &x)| (i as usize, j, x))
            })
            .collect();
        out.sort_unstable_by_key(|&(i, j, _)| (i, j));
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.cols]; self.rows];
        for (i, j, v) in self.triplets() {
            d[i][j] = v;
        }
        d
    }

    pub fn transpose(&self) -> Self {
        let t: Vec<(usize, usize, i64)> = self.triplets().into_iter().map(|(i, j, v)| (j, i, v)).collect();
        Self::from_triplets(self.cols, self.rows, &t).expect("transpose indices in range")
    }

    /// Permutes rows and columns: entry `(i, j)` moves to `(row_perm[i], col_perm[j])`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        let t: Vec<(usize, usize, i64)> =
            self.triplets().into_iter().map(|(i, j, v)| (row_perm[i], col_perm[j], v)).collect();
        Self::from_triplets(self.rows, self.cols, &t).expect("permutation in range")
    }

    /// Whether `self · other` is the zero matrix, computed exactly.
    pub fn composes_to_zero(&self, other: &SparseIntMatrix) -> Result<bool> {
        if self.cols != other.rows {
            return Err(Error::PreconditionViolated(format!(
                "cannot compose {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut acc = vec![0i128; self.rows];
        let mut touched = Vec::new();
        for j in 0..other.cols {
            let (rows, vals) = other.column(j);
            for (&k, &v) in rows.iter().zip(vals) {
                let (ri, rv) = self.column(k as usize);
                for (&i, &w) in ri.iter().zip(rv) {
                    if acc[i as usize] == 0 {
                        touched.push(i as usize);
                    }
                    acc[i as usize] += v as i128 * w as i128;
                }
            }
            let nonzero = touched.iter().any(|&i| acc[i] != 0);
            for &i in &touched {
                acc[i] = 0;
            }
            touched.clear();
            if nonzero {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `self · v` for a dense vector.
    pub fn mul_vec(&self, v: &[i64]) -> Vec<i128> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![0i128; self.rows];
        for (j, &x) in v.iter().enumerate() {
            let (r, vals) = self.column(j);
            for (&i, &a) in r.iter().zip(vals) {
                out[i as usize] += a as i128 * x as i128;
            }
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&MatrixDocument::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: MatrixDocument = serde_json::from_str(text)?;
        if doc.schema != SCHEMA {
            return Err(Error::Serialization(format!("unsupported schema {:?}", doc.schema)));
        }
        let t: Vec<(usize, usize, i64)> =
            doc.entries.into_iter().map(|[i, j, v]| (i as usize, j as usize, v)).collect();
        Self::from_triplets(doc.rows, doc.cols, &t)
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct MatrixDocument {
    schema: String,
    rows: usize,
    cols: usize,
    entries: Vec<[i64; 3]>,
}

impl From<&SparseIntMatrix> for MatrixDocument {
    fn from(m: &SparseIntMatrix) -> Self {
        MatrixDocument {
            schema: SCHEMA.to_string(),
            rows: m.rows,
            cols: m.cols,
            entries: m.triplets().into_iter().map(|(i, j, v)| [i as i64, j as i64, v]).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_sum_and_zeros_vanish() {
        let m = SparseIntMatrix::from_triplets(2, 2, &[(0, 0, 2), (0, 0, -2), (1, 1, 3), (1, 1, 1)]).unwrap();
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 1), 4);
        assert!(SparseIntMatrix::from_triplets(2, 2, &[(2, 0, 1)]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let m = SparseIntMatrix::from_dense(&[vec![1, 0, -3], vec![0, 7, 0]]);
        let back = SparseIntMatrix::from_json(&m.to_json().unwrap()).unwrap();
        assert_eq!(m, back);
        assert!(m.to_json().unwrap().contains("\"entries\":[[0,0,1],[0,2,-3],[1,1,7]]"));
    }

    #[test]
    fn composition_check() {
        let a = SparseIntMatrix::from_dense(&[vec![1, 1]]);
        let b = SparseIntMatrix::from_dense(&[vec![1], vec![-1]]);
        assert!(a.composes_to_zero(&b).unwrap());
        assert!(!b.composes_to_zero(&a).unwrap());
        assert!(a.composes_to_zero(&a).is_err());
    }
}
