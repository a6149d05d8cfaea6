//! Smith normal form over the integers.
//!
//! Two engines share the same pivot rule (smallest magnitude first): a dense
//! one for small matrices and a sparse one that keeps each column as a sorted
//! entry list and prefers unit pivots in short columns. Both run first in
//! checked `i64` arithmetic and restart in `BigInt` on overflow. The diagonal
//! they produce is then normalised to a divisibility chain.

use log::debug;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::coeff::Coeff;
use super::SparseIntMatrix;

/// Matrices with both dimensions below this use the dense engine.
pub const DENSE_LIMIT: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero invariant factors `d1 | d2 | … | dr`, all positive.
    pub factors: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    /// Factors greater than one (the torsion of the cokernel).
    pub fn torsion(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().filter(|d| !d.is_one())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Auto,
    Dense,
    Sparse,
}

pub fn smith_normal_form(m: &SparseIntMatrix) -> SmithForm {
    smith_normal_form_with(m, Strategy::Auto)
}

pub fn smith_normal_form_with(m: &SparseIntMatrix, strategy: Strategy) -> SmithForm {
    let dense = match strategy {
        Strategy::Auto => m.rows() < DENSE_LIMIT && m.cols() < DENSE_LIMIT,
        Strategy::Dense => true,
        Strategy::Sparse => false,
    };
    let diag = if dense {
        dense_diagonal::<i64>(m).unwrap_or_else(|| {
            debug!("dense elimination overflowed i64, retrying with BigInt");
            dense_diagonal::<BigInt>(m).expect("bigint arithmetic cannot overflow")
        })
    } else {
        sparse_diagonal::<i64>(m).unwrap_or_else(|| {
            debug!("sparse elimination overflowed i64, retrying with BigInt");
            sparse_diagonal::<BigInt>(m).expect("bigint arithmetic cannot overflow")
        })
    };
    let rank = diag.len();
    SmithForm { factors: normalize_diagonal(diag), rank }
}

/// Turns the diagonal of an equivalent diagonal matrix into invariant factors.
fn normalize_diagonal(diag: Vec<BigInt>) -> Vec<BigInt> {
    let units = diag.iter().filter(|d| d.abs().is_one()).count();
    let mut rest: Vec<BigInt> = diag.into_iter().map(|d| d.abs()).filter(|d| !d.is_one()).collect();
    rest.sort();
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            let g = rest[i].gcd(&rest[j]);
            if g != rest[i] {
                let l = &rest[i] / &g * &rest[j];
                rest[i] = g;
                rest[j] = l;
            }
        }
    }
    let mut out = vec![BigInt::one(); units];
    out.extend(rest);
    out
}

// Row and column operations read one line of `a` while writing another.
#[allow(clippy::needless_range_loop)]
fn dense_diagonal<T: Coeff>(m: &SparseIntMatrix) -> Option<Vec<BigInt>> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<T>> = vec![vec![T::zero(); cols]; rows];
    for (i, j, v) in m.triplets() {
        a[i][j] = T::from_i64(v);
    }
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        // Smallest nonzero in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].magnitude_lt(&a[bi][bj])) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        move_to(&mut a, t, bi, bj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let (q, _) = a[i][t].div_rem(&a[t][t])?;
                for j in t..cols {
                    let v = a[i][j].sub_mul(&q, &a[t][j])?;
                    a[i][j] = v;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let (q, _) = a[t][j].div_rem(&a[t][t])?;
                for i in t..rows {
                    let v = a[i][j].sub_mul(&q, &a[i][t])?;
                    a[i][j] = v;
                }
                clean &= a[t][j].is_zero();
            }
            if clean {
                break;
            }
            // A remainder smaller than the pivot remains in row or column t.
            let mut best = (t, t);
            for i in t + 1..rows {
                if !a[i][t].is_zero() && a[i][t].magnitude_lt(&a[best.0][best.1]) {
                    best = (i, t);
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() && a[t][j].magnitude_lt(&a[best.0][best.1]) {
                    best = (t, j);
                }
            }
            move_to(&mut a, t, best.0, best.1);
        }
        diag.push(a[t][t].to_big());
    }
    Some(diag)
}

fn move_to<T>(a: &mut [Vec<T>], t: usize, i: usize, j: usize) {
    a.swap(t, i);
    for row in a.iter_mut() {
        row.swap(t, j);
    }
}

const BUCKETS: usize = 64;

/// Sparse elimination state. A column is live iff its entry list is nonempty.
struct Sparse<T> {
    cols: Vec<Vec<(u32, T)>>,
    /// Superset of the live columns with an entry in each row.
    row_cols: Vec<Vec<u32>>,
    row_nnz: Vec<u32>,
    /// Lazy priority queue: unit-bearing columns by length, then the rest.
    buckets: Vec<Vec<u32>>,
}

impl<T: Coeff> Sparse<T> {
    fn new(m: &SparseIntMatrix) -> Self {
        let mut cols = Vec::with_capacity(m.cols());
        let mut row_cols = vec![Vec::new(); m.rows()];
        let mut row_nnz = vec![0u32; m.rows()];
        for j in 0..m.cols() {
            let (r, v) = m.column(j);
            let col: Vec<(u32, T)> = r.iter().zip(v).map(|(&i, &x)| (i, T::from_i64(x))).collect();
            for &(i, _) in &col {
                row_cols[i as usize].push(j as u32);
                row_nnz[i as usize] += 1;
            }
            cols.push(col);
        }
        let mut s = Sparse { cols, row_cols, row_nnz, buckets: vec![Vec::new(); 2 * BUCKETS] };
        for j in (0..s.cols.len()).rev() {
            s.enqueue(j);
        }
        s
    }

    fn key(&self, c: usize) -> Option<usize> {
        let col = &self.cols[c];
        if col.is_empty() {
            return None;
        }
        let len = col.len().min(BUCKETS - 1);
        if col.iter().any(|(_, v)| v.is_unit()) {
            Some(len)
        } else {
            Some(BUCKETS + len)
        }
    }

    fn enqueue(&mut self, c: usize) {
        if let Some(k) = self.key(c) {
            self.buckets[k].push(c as u32);
        }
    }

    fn next_column(&mut self) -> Option<usize> {
        for k in 0..self.buckets.len() {
            while let Some(c) = self.buckets[k].pop() {
                if self.key(c as usize) == Some(k) {
                    return Some(c as usize);
                }
            }
        }
        None
    }

    /// Entry of column `c` minimising (|value|, row count).
    fn choose_row(&self, c: usize) -> (u32, T) {
        let mut best: Option<&(u32, T)> = None;
        for e in &self.cols[c] {
            best = match best {
                None => Some(e),
                Some(b) => {
                    let better = e.1.magnitude_lt(&b.1)
                        || (!b.1.magnitude_lt(&e.1) && self.row_nnz[e.0 as usize] < self.row_nnz[b.0 as usize]);
                    Some(if better { e } else { b })
                }
            };
        }
        best.cloned().expect("live column")
    }

    /// Live columns other than `skip` with an entry in row `r`, in index order.
    fn columns_in_row(&mut self, r: u32, skip: usize) -> Vec<u32> {
        let mut list = std::mem::take(&mut self.row_cols[r as usize]);
        list.sort_unstable();
        list.dedup();
        let cols = &self.cols;
        list.retain(|&c| cols[c as usize].binary_search_by_key(&r, |e| e.0).is_ok());
        let out = list.iter().copied().filter(|&c| c as usize != skip).collect();
        self.row_cols[r as usize] = list;
        out
    }

    /// `col[c] -= q · pivot_col`, maintaining the row bookkeeping.
    fn axpy(&mut self, c: usize, q: &T, pivot_col: &[(u32, T)]) -> Option<()> {
        let target = std::mem::take(&mut self.cols[c]);
        let mut out = Vec::with_capacity(target.len() + pivot_col.len());
        let (mut i, mut j) = (0, 0);
        while i < target.len() || j < pivot_col.len() {
            let ti = target.get(i).map_or(u32::MAX, |e| e.0);
            let pj = pivot_col.get(j).map_or(u32::MAX, |e| e.0);
            if ti < pj {
                out.push(target[i].clone());
                i += 1;
            } else if pj < ti {
                let v = T::zero().sub_mul(q, &pivot_col[j].1)?;
                self.row_nnz[pj as usize] += 1;
                self.row_cols[pj as usize].push(c as u32);
                out.push((pj, v));
                j += 1;
            } else {
                let v = target[i].1.sub_mul(q, &pivot_col[j].1)?;
                if v.is_zero() {
                    self.row_nnz[ti as usize] -= 1;
                } else {
                    out.push((ti, v));
                }
                i += 1;
                j += 1;
            }
        }
        self.cols[c] = out;
        Some(())
    }

    fn clear_column(&mut self, c: usize) {
        for (r, _) in std::mem::take(&mut self.cols[c]) {
            self.row_nnz[r as usize] -= 1;
        }
    }

    /// Eliminates one pivot starting from column `p`; returns the diagonal entry.
    fn eliminate_from(&mut self, mut p: usize) -> Option<T> {
        loop {
            let (r, a) = self.choose_row(p);
            // Clear row r with column operations.
            let others = self.columns_in_row(r, p);
            let pivot_col = std::mem::take(&mut self.cols[p]);
            let mut smaller: Option<(usize, T)> = None;
            for c in others {
                let c = c as usize;
                let k = self.cols[c].binary_search_by_key(&r, |e| e.0).expect("row index is exact");
                let b = self.cols[c][k].1.clone();
                let (q, rem) = b.div_rem(&a)?;
                if !q.is_zero() {
                    self.axpy(c, &q, &pivot_col)?;
                }
                if !rem.is_zero() && smaller.as_ref().is_none_or(|(_, s)| rem.magnitude_lt(s)) {
                    smaller = Some((c, rem));
                }
                self.enqueue(c);
            }
            self.cols[p] = pivot_col;
            if let Some((c, _)) = smaller {
                self.enqueue(p);
                p = c;
                continue;
            }
            // Row r is now zero outside column p; clear column p with row operations,
            // which touch no other column.
            let mut remainder = false;
            let mut col = std::mem::take(&mut self.cols[p]);
            for e in col.iter_mut() {
                if e.0 != r {
                    let (_, rem) = e.1.div_rem(&a)?;
                    if rem.is_zero() {
                        self.row_nnz[e.0 as usize] -= 1;
                    } else {
                        remainder = true;
                    }
                    e.1 = rem;
                }
            }
            col.retain(|e| !e.1.is_zero());
            self.cols[p] = col;
            if remainder {
                continue;
            }
            self.clear_column(p);
            self.row_cols[r as usize] = Vec::new();
            return Some(a);
        }
    }
}

fn sparse_diagonal<T: Coeff>(m: &SparseIntMatrix) -> Option<Vec<BigInt>> {
    let mut s = Sparse::<T>::new(m);
    let mut diag = Vec::new();
    while let Some(p) = s.next_column() {
        let d = s.eliminate_from(p)?;
        diag.push(d.to_big());
    }
    Some(diag)
}
