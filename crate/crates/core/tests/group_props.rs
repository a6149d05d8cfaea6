use proptest::prelude::*;

use pgcl_core::group::{
    center, central_product_canonical, cyclic, derived_subgroup, dihedral8, direct_product, elementary_abelian,
    extraspecial, is_isomorphic, quaternion8, Group, GroupExpr, Sign, MAX_ORDER,
};

fn small_group() -> impl Strategy<Value = Group> {
    prop_oneof![
        (1usize..30).prop_map(|n| cyclic(n).unwrap()),
        (1u32..4).prop_map(|k| elementary_abelian(2, k).unwrap()),
        Just(dihedral8()),
        Just(quaternion8()),
        Just(extraspecial(3, 1, Sign::Minus).unwrap()),
    ]
}

fn check_axioms(g: &Group) {
    let n = g.order();
    let e = g.identity();
    for a in 0..n {
        assert_eq!(g.mul(a, e), a);
        assert_eq!(g.mul(e, a), a);
        assert_eq!(g.mul(a, g.inv(a)), e);
        for b in 0..n {
            for c in (0..n).step_by(1 + n / 7) {
                assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn products_satisfy_the_axioms(a in small_group(), b in small_group()) {
        prop_assume!(a.order() * b.order() <= 128);
        let g = direct_product(&a, &b).unwrap();
        prop_assert_eq!(g.order(), a.order() * b.order());
        check_axioms(&g);
        prop_assert_eq!(center(&g).order(), center(&a).order() * center(&b).order());
        prop_assert_eq!(derived_subgroup(&g).order(), derived_subgroup(&a).order() * derived_subgroup(&b).order());
    }

    #[test]
    fn json_round_trip(g in small_group()) {
        let back = Group::from_json(&g.to_json().unwrap()).unwrap();
        prop_assert_eq!(back.table(), g.table());
    }
}

#[test]
fn pauli_group_has_two_descriptions() {
    let c4 = cyclic(4).unwrap();
    let a = central_product_canonical(&dihedral8(), &c4).unwrap();
    let b = central_product_canonical(&quaternion8(), &c4).unwrap();
    check_axioms(&a);
    assert!(is_isomorphic(&a, &b).unwrap().is_some());
    assert!(is_isomorphic(&dihedral8(), &quaternion8()).unwrap().is_none());
}

#[test]
fn expressions_build_with_predicted_orders() {
    let exprs = [
        GroupExpr::dir(GroupExpr::D8, GroupExpr::Cyc(2)),
        GroupExpr::cprod(GroupExpr::Es(3, 1, Sign::Plus), GroupExpr::Cyc(9)),
        GroupExpr::dir(GroupExpr::cprod(GroupExpr::Q8, GroupExpr::Cyc(4)), GroupExpr::ElemAb(2, 2)),
    ];
    for e in exprs {
        let g = e.build(MAX_ORDER).unwrap();
        assert_eq!(Some(g.order() as u128), e.predicted_order(), "{e}");
        check_axioms(&g);
    }
}
