use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::SparseIntMatrix;
use crate::error::{Error, Result};

/// Column echelon reduction `A·U = [H | 0]` with `U` unimodular, tracking
/// `V = U⁻¹` as well.
pub(crate) struct ColumnEchelon {
    /// Number of nonzero columns of `H` (the rank of `A`).
    pub rank: usize,
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
}

pub(crate) fn column_echelon(m: &SparseIntMatrix) -> ColumnEchelon {
    let (rows, n) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; rows];
    for (i, j, x) in m.triplets() {
        a[i][j] = BigInt::from(x);
    }
    let identity = |n: usize| -> Vec<Vec<BigInt>> {
        (0..n).map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect()).collect()
    };
    let mut u = identity(n);
    let mut v = identity(n);

    // col_j -= q·col_k on A and U; row_k += q·row_j on V keeps V = U⁻¹.
    let col_op = |a: &mut Vec<Vec<BigInt>>,
                  u: &mut Vec<Vec<BigInt>>,
                  v: &mut Vec<Vec<BigInt>>,
                  j: usize,
                  k: usize,
                  q: &BigInt| {
        for row in a.iter_mut() {
            let t = &row[k] * q;
            row[j] -= t;
        }
        for row in u.iter_mut() {
            let t = &row[k] * q;
            row[j] -= t;
        }
        let (rj, rk) = if j < k {
            let (lo, hi) = v.split_at_mut(k);
            (&lo[j], &mut hi[0])
        } else {
            let (lo, hi) = v.split_at_mut(j);
            (&hi[0], &mut lo[k])
        };
        for (x, y) in rk.iter_mut().zip(rj) {
            *x += y * q;
        }
    };
    let swap = |a: &mut Vec<Vec<BigInt>>, u: &mut Vec<Vec<BigInt>>, v: &mut Vec<Vec<BigInt>>, j: usize, k: usize| {
        for row in a.iter_mut() {
            row.swap(j, k);
        }
        for row in u.iter_mut() {
            row.swap(j, k);
        }
        v.swap(j, k);
    };

    let mut rank = 0;
    for i in 0..rows {
        if rank == n {
            break;
        }
        loop {
            // Smallest nonzero entry of row i among the unreduced columns.
            let pivot = (rank..n)
                .filter(|&j| !a[i][j].is_zero())
                .min_by(|&x, &y| a[i][x].magnitude().cmp(a[i][y].magnitude()).then(x.cmp(&y)));
            let Some(k) = pivot else { break };
            let mut done = true;
            for j in rank..n {
                if j != k && !a[i][j].is_zero() {
                    let q = a[i][j].div_floor(&a[i][k]);
                    col_op(&mut a, &mut u, &mut v, j, k, &q);
                    done &= a[i][j].is_zero();
                }
            }
            if done {
                swap(&mut a, &mut u, &mut v, rank, k);
                rank += 1;
                break;
            }
        }
    }
    ColumnEchelon { rank, u, v }
}

/// A Z-basis of `{x : m·x = 0}`, returned as the columns of a matrix.
pub fn integer_kernel(m: &SparseIntMatrix) -> Result<SparseIntMatrix> {
    let ech = column_echelon(m);
    let n = m.cols();
    let mut columns = Vec::with_capacity(n - ech.rank);
    for j in ech.rank..n {
        let mut col = Vec::new();
        for (i, row) in ech.u.iter().enumerate() {
            if !row[j].is_zero() {
                let x = row[j].to_i64().ok_or_else(|| Error::Overflow(format!("kernel entry {}", row[j])))?;
                col.push((i as u32, x));
            }
        }
        columns.push(col);
    }
    let basis = SparseIntMatrix::from_columns(n, columns)?;
    debug_assert!(m.composes_to_zero(&basis).unwrap());
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verify(m: &SparseIntMatrix, k: &SparseIntMatrix) {
        for j in 0..k.cols() {
            let mut v = vec![0i64; k.rows()];
            let (r, vals) = k.column(j);
            for (&i, &x) in r.iter().zip(vals) {
                v[i as usize] = x;
            }
            assert!(m.mul_vec(&v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn identity_has_trivial_kernel() {
        assert_eq!(integer_kernel(&SparseIntMatrix::identity(4)).unwrap().cols(), 0);
    }

    #[test]
    fn zero_map_kernel_is_everything() {
        let k = integer_kernel(&SparseIntMatrix::zeros(2, 3)).unwrap();
        assert_eq!(k.cols(), 3);
    }

    #[test]
    fn one_one_zero() {
        let m = SparseIntMatrix::from_dense(&[vec![1, 1, 0]]);
        let k = integer_kernel(&m).unwrap();
        assert_eq!(k.cols(), 2);
        verify(&m, &k);
    }

    #[test]
    fn kernel_is_saturated() {
        // ker [2 4] over Z is spanned by (-2, 1), not (-4, 2).
        let m = SparseIntMatrix::from_dense(&[vec![2, 4]]);
        let k = integer_kernel(&m).unwrap();
        assert_eq!(k.cols(), 1);
        let (_, vals) = k.column(0);
        let mut v: Vec<i64> = vals.iter().map(|x| x.abs()).collect();
        v.sort();
        assert_eq!(v, vec![1, 2]);
    }

    #[test]
    fn inverse_is_tracked() {
        let m = SparseIntMatrix::from_dense(&[vec![3, 5, 7], vec![2, -1, 4]]);
        let e = column_echelon(&m);
        let n = 3;
        for i in 0..n {
            for j in 0..n {
                let s: BigInt = (0..n).map(|k| &e.u[i][k] * &e.v[k][j]).sum();
                assert_eq!(s, BigInt::from((i == j) as i64));
            }
        }
    }
}
