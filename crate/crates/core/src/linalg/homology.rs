use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::kernel::column_echelon;
use super::smith::{smith_normal_form, SmithForm};
use super::SparseIntMatrix;
use crate::error::{Error, Result};
use crate::group::AbelianInvariants;

/// `ker(d_out) / im(d_in)` as torsion invariants plus free rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homology {
    pub torsion: AbelianInvariants,
    pub free_rank: usize,
}

fn torsion_of(snf: &SmithForm) -> Result<AbelianInvariants> {
    let factors = snf
        .torsion()
        .map(|d| d.to_u64().ok_or_else(|| Error::Overflow(d.to_string())))
        .collect::<Result<Vec<u64>>>()?;
    AbelianInvariants::new(factors)
}

/// Homology at the middle of `· --d_in--> C --d_out--> ·`.
///
/// `C / im(d_in)` is `H ⊕ Z^r` because `C / ker(d_out)` embeds in a free
/// group, so the torsion of `H` is read off the Smith form of `d_in` and the
/// free rank from the two ranks.
pub fn homology_at(d_in: &SparseIntMatrix, d_out: &SparseIntMatrix) -> Result<Homology> {
    if !d_out.composes_to_zero(d_in)? {
        return Err(Error::ComplexNotExact);
    }
    let snf_in = smith_normal_form(d_in);
    let rank_out = smith_normal_form(d_out).rank;
    let free_rank = d_out.cols() - rank_out - snf_in.rank;
    Ok(Homology { torsion: torsion_of(&snf_in)?, free_rank })
}

/// Same quantity by the textbook route: take a basis `K` of `ker(d_out)`,
/// write the columns of `d_in` in `K`-coordinates and take the Smith form of
/// that coordinate matrix. Dense, for small complexes.
pub fn homology_via_kernel(d_in: &SparseIntMatrix, d_out: &SparseIntMatrix) -> Result<Homology> {
    if !d_out.composes_to_zero(d_in)? {
        return Err(Error::ComplexNotExact);
    }
    let ech = column_echelon(d_out);
    let n = d_out.cols();
    let kernel_dim = n - ech.rank;
    // Coordinates of x ∈ ker(d_out) are the last kernel_dim entries of U⁻¹·x.
    let mut dense = vec![vec![BigInt::zero(); d_in.cols()]; kernel_dim];
    for j in 0..d_in.cols() {
        let (rows, vals) = d_in.column(j);
        for (t, out_row) in dense.iter_mut().enumerate() {
            let vrow = &ech.v[ech.rank + t];
            let mut s = BigInt::zero();
            for (&i, &x) in rows.iter().zip(vals) {
                s += &vrow[i as usize] * x;
            }
            out_row[j] = s;
        }
    }
    let mut triplets = Vec::new();
    for (i, row) in dense.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if !x.is_zero() {
                let x = x.to_i64().ok_or_else(|| Error::Overflow(x.to_string()))?;
                triplets.push((i, j, x));
            }
        }
    }
    let coords = SparseIntMatrix::from_triplets(kernel_dim, d_in.cols(), &triplets)?;
    let snf = smith_normal_form(&coords);
    Ok(Homology { torsion: torsion_of(&snf)?, free_rank: kernel_dim - snf.rank })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_in_identity_out() {
        let h = homology_at(&SparseIntMatrix::zeros(2, 1), &SparseIntMatrix::identity(2)).unwrap();
        assert!(h.torsion.is_trivial());
        assert_eq!(h.free_rank, 0);
    }

    #[test]
    fn z_mod_two() {
        let d_in = SparseIntMatrix::from_dense(&[vec![2]]);
        let d_out = SparseIntMatrix::zeros(1, 1);
        for h in [homology_at(&d_in, &d_out).unwrap(), homology_via_kernel(&d_in, &d_out).unwrap()] {
            assert_eq!(h.torsion.factors(), &[2]);
            assert_eq!(h.free_rank, 0);
        }
    }

    #[test]
    fn free_part_is_counted() {
        // Z^2 with d_out = 0, d_in = (3, 0)^T : H = Z/3 ⊕ Z.
        let d_in = SparseIntMatrix::from_dense(&[vec![3], vec![0]]);
        let d_out = SparseIntMatrix::zeros(1, 2);
        for h in [homology_at(&d_in, &d_out).unwrap(), homology_via_kernel(&d_in, &d_out).unwrap()] {
            assert_eq!(h.torsion.factors(), &[3]);
            assert_eq!(h.free_rank, 1);
        }
    }

    #[test]
    fn non_complex_is_rejected() {
        let d = SparseIntMatrix::identity(2);
        assert_eq!(homology_at(&d, &d), Err(Error::ComplexNotExact));
        assert_eq!(homology_via_kernel(&d, &d), Err(Error::ComplexNotExact));
    }
}
