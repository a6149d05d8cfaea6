//! Fixtures shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pgcl_core::group::{central_product_canonical, cyclic, direct_product, extraspecial, Group, Sign};
use pgcl_core::linalg::SparseIntMatrix;

/// A diagonal matrix with entries drawn from `1, 2, 4, 12, 0` scrambled by
/// `2·n` random unimodular row and column additions. The Smith form is known
/// in advance and entries stay small. Same seed, same matrix.
pub fn scrambled_diagonal(n: usize, seed: u64) -> (SparseIntMatrix, Vec<i64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let diag: Vec<i64> = (0..n).map(|_| [1, 1, 1, 2, 4, 12, 0][rng.gen_range(0..7)]).collect();
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| if i == j { diag[i] } else { 0 }).collect()).collect();
    for _ in 0..2 * n {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a == b {
            continue;
        }
        let k = if rng.gen_bool(0.5) { 1 } else { -1 };
        if rng.gen_bool(0.5) {
            let src = m[b].clone();
            for (x, y) in m[a].iter_mut().zip(src) {
                *x += k * y;
            }
        } else {
            for row in m.iter_mut() {
                row[a] += k * row[b];
            }
        }
    }
    (SparseIntMatrix::from_dense(&m), diag)
}

/// Groups of increasing order used by the homology benchmarks.
pub fn homology_fixtures() -> Vec<(&'static str, Group)> {
    let es = |p, m, s| extraspecial(p, m, s).expect("valid parameters");
    vec![
        ("D8", es(2, 1, Sign::Plus)),
        ("ES(3,1,+)", es(3, 1, Sign::Plus)),
        ("D8 x Cyc(2)", direct_product(&es(2, 1, Sign::Plus), &cyclic(2).unwrap()).unwrap()),
        ("ES(2,2,+)", es(2, 2, Sign::Plus)),
        ("ES(3,1,-) . Cyc(9)", central_product_canonical(&es(3, 1, Sign::Minus), &cyclic(9).unwrap()).unwrap()),
    ]
}

/// Pairs of groups of equal order for the isomorphism benchmark.
pub fn iso_pairs() -> Vec<(&'static str, Group, Group)> {
    let c4 = cyclic(4).unwrap();
    let d8 = extraspecial(2, 1, Sign::Plus).unwrap();
    let q8 = extraspecial(2, 1, Sign::Minus).unwrap();
    vec![
        ("D8 vs Q8", d8.clone(), q8.clone()),
        (
            "D8 . Cyc(4) vs Q8 . Cyc(4)",
            central_product_canonical(&d8, &c4).unwrap(),
            central_product_canonical(&q8, &c4).unwrap(),
        ),
        ("ES(2,2,+) vs ES(2,2,-)", extraspecial(2, 2, Sign::Plus).unwrap(), extraspecial(2, 2, Sign::Minus).unwrap()),
    ]
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use pgcl_core::linalg::smith_normal_form;

    use super::*;

    #[test]
    fn scrambling_keeps_the_smith_form() {
        let (m, diag) = scrambled_diagonal(40, 3);
        let mut want: Vec<i64> = diag.into_iter().filter(|&d| d != 0).collect();
        want.sort();
        // 1, 2, 4, 12 already form a divisibility chain once sorted.
        let want: Vec<BigInt> = want.into_iter().map(BigInt::from).collect();
        assert_eq!(smith_normal_form(&m).factors, want);
    }

    #[test]
    fn fixtures_are_deterministic() {
        assert_eq!(scrambled_diagonal(20, 7).0, scrambled_diagonal(20, 7).0);
        for (_, a, b) in iso_pairs() {
            assert_eq!(a.order(), b.order());
        }
    }
}
