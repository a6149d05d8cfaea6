//! Brute-force multipliers against closed formulas, and the two homology
//! routes against each other.

use proptest::prelude::*;

use pgcl_core::group::{cyclic, dihedral8, direct_product, quaternion8, AbelianInvariants, Group};
use pgcl_core::linalg::{homology_at, homology_via_kernel, integer_kernel, SparseIntMatrix};
use pgcl_core::multiplier::{bar_boundaries, multiplier_abelian, multiplier_ganea, schur_multiplier_brute};

fn abelian(d: &[u64]) -> Group {
    d.iter()
        .map(|&q| cyclic(q as usize).unwrap())
        .reduce(|a, b| direct_product(&a, &b).unwrap())
        .unwrap_or_else(Group::trivial)
}

/// Divisibility chains with product at most `max`.
fn chain(max: u64) -> impl Strategy<Value = Vec<u64>> {
    proptest::collection::vec(1u64..=6, 0..4).prop_map(move |steps| {
        let mut out: Vec<u64> = Vec::new();
        let mut product = 1;
        for s in steps {
            let d = out.last().map_or(s + 1, |&l| l * s);
            if d >= 2 && product * d <= max {
                out.push(d);
                product *= d;
            }
        }
        out
    })
}

fn invariants(d: &[u64]) -> AbelianInvariants {
    AbelianInvariants::from_cyclic_orders(d.iter().copied())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn brute_force_matches_abelian_formula(d in chain(32)) {
        let g = abelian(&d);
        let brute = schur_multiplier_brute(&g, 64).unwrap();
        prop_assert_eq!(brute.invariants, multiplier_abelian(&invariants(&d)).invariants);
    }

    #[test]
    fn brute_force_matches_product_formula(a in chain(8), b in chain(4), nonabelian in 0usize..3) {
        let left = match nonabelian {
            1 => dihedral8(),
            2 => quaternion8(),
            _ => abelian(&a),
        };
        let m_left = schur_multiplier_brute(&left, 64).unwrap().invariants;
        let right = abelian(&b);
        let g = direct_product(&left, &right).unwrap();
        let formula = multiplier_ganea(&left, &right, &m_left, &multiplier_abelian(&invariants(&b)).invariants).unwrap();
        prop_assert_eq!(schur_multiplier_brute(&g, 64).unwrap().invariants, formula.invariants);
    }

    #[test]
    fn homology_routes_agree_on_random_complexes(
        rows in 1usize..6,
        cols in 1usize..6,
        entries in proptest::collection::vec(-4i64..=4, 36),
    ) {
        let dense: Vec<Vec<i64>> = (0..rows).map(|i| entries[i * 6..i * 6 + cols].to_vec()).collect();
        let d_in = SparseIntMatrix::from_dense(&dense);
        // Rows of d_out span the left kernel of d_in, so d_out · d_in = 0.
        let d_out = integer_kernel(&d_in.transpose()).unwrap().transpose();
        prop_assert!(d_out.composes_to_zero(&d_in).unwrap());
        prop_assert_eq!(homology_at(&d_in, &d_out).unwrap(), homology_via_kernel(&d_in, &d_out).unwrap());
    }
}

#[test]
fn homology_routes_agree_on_bar_complexes() {
    for g in [cyclic(2).unwrap(), cyclic(4).unwrap(), abelian(&[2, 2]), cyclic(6).unwrap(), dihedral8(), quaternion8()]
    {
        let (d2, d3) = bar_boundaries(&g);
        assert!(d2.composes_to_zero(&d3).unwrap());
        let a = homology_at(&d3, &d2).unwrap();
        assert_eq!(a, homology_via_kernel(&d3, &d2).unwrap(), "{}", g.construction());
        assert_eq!(a.free_rank, 0);
    }
}

#[test]
fn quaternion_and_dihedral_multipliers() {
    assert!(schur_multiplier_brute(&quaternion8(), 64).unwrap().invariants.is_trivial());
    assert_eq!(schur_multiplier_brute(&dihedral8(), 64).unwrap().invariants, invariants(&[2]));
}
