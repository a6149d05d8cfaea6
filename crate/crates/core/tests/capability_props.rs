use pgcl_core::capability::{epicenter, epicenter_contains, is_capable};
use pgcl_core::group::{
    center, central_product_canonical, cyclic, dihedral8, direct_product, extraspecial, quaternion8,
    subgroup_generated, Group, Sign,
};
use pgcl_core::multiplier::MultiplierOracle;

fn corpus() -> Vec<Group> {
    let c2 = cyclic(2).unwrap();
    let c3 = cyclic(3).unwrap();
    vec![
        c2.clone(),
        cyclic(4).unwrap(),
        direct_product(&c2, &c2).unwrap(),
        dihedral8(),
        quaternion8(),
        direct_product(&dihedral8(), &c2).unwrap(),
        direct_product(&quaternion8(), &c2).unwrap(),
        central_product_canonical(&dihedral8(), &cyclic(4).unwrap()).unwrap(),
        extraspecial(3, 1, Sign::Plus).unwrap(),
        extraspecial(3, 1, Sign::Minus).unwrap(),
        direct_product(&extraspecial(3, 1, Sign::Minus).unwrap(), &c3).unwrap(),
        extraspecial(2, 2, Sign::Plus).unwrap(),
    ]
}

#[test]
fn epicenter_is_a_central_subgroup() {
    let oracle = MultiplierOracle::new(81).unwrap();
    for g in corpus() {
        let z_star = epicenter(&g, &oracle).unwrap();
        assert!(z_star.is_subset_of(&center(&g)), "{}", g.construction());
        let closure = subgroup_generated(&g, z_star.elements()).unwrap();
        assert_eq!(closure.order(), z_star.order(), "{}", g.construction());
        assert_eq!(is_capable(&g, &oracle).unwrap().capable, z_star.is_trivial());
    }
}

#[test]
fn membership_depends_only_on_the_generated_subgroup() {
    let oracle = MultiplierOracle::new(81).unwrap();
    for g in corpus() {
        for &x in center(&g).elements() {
            let order = g.element_order(x).unwrap() as u64;
            let (inside, _) = epicenter_contains(&g, x, &oracle).unwrap();
            for k in (2..order).filter(|k| num_integer::gcd(*k, order) == 1) {
                let (other, _) = epicenter_contains(&g, g.pow(x, k), &oracle).unwrap();
                assert_eq!(inside, other, "{}: x = {x}, k = {k}", g.construction());
            }
        }
    }
}

#[test]
fn known_verdicts() {
    let oracle = MultiplierOracle::new(81).unwrap();
    let cases = [
        (dihedral8(), true),
        (quaternion8(), false),
        (cyclic(4).unwrap(), false),
        (direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap(), true),
        (extraspecial(3, 1, Sign::Minus).unwrap(), false),
    ];
    for (g, want) in cases {
        assert_eq!(is_capable(&g, &oracle).unwrap().capable, want, "{}", g.construction());
    }
}
