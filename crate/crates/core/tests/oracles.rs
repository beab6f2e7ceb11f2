mod common;

use std::sync::Arc;

use common::*;
use hurwitz_orbits::groups::{isomorphism_from_generators, Group};
use hurwitz_orbits::hurwitz::{
    orbit, orbit_size, same_orbit, Factorization, Membership, OrbitSize,
};
use hurwitz_orbits::presentations::Builtin;
use hurwitz_orbits::toddcoxeter::ElementId;
use proptest::prelude::*;

fn realize(b: Builtin) -> Group {
    Group::from_builtin(&b, 100_000).unwrap()
}

#[test]
fn matrix_groups_satisfy_the_presentations() {
    let (a, b) = g4_matrices();
    assert_eq!(mat_pow(&a, 3), IDENTITY);
    assert_eq!(mat_pow(&b, 3), IDENTITY);
    assert_ne!(a, IDENTITY);
    assert_eq!(mat_alternating(&a, &b, 3), mat_alternating(&b, &a, 3));

    let (a, b) = g6_matrices();
    assert_eq!(mat_pow(&a, 3), IDENTITY);
    assert_eq!(mat_pow(&b, 2), IDENTITY);
    assert_eq!(mat_alternating(&a, &b, 6), mat_alternating(&b, &a, 6));
}

#[test]
fn g4_and_g6_orders_match_matrix_closure() {
    // The matrices satisfy the relators, so each presented group maps onto
    // its matrix group; equal orders make the map an isomorphism.
    let (a, b) = g4_matrices();
    let g4 = mat_closure(&[a, b], 10_000).unwrap();
    assert_eq!(g4.len(), 24);
    assert_eq!(realize(Builtin::G4).order(), g4.len());

    let (a, b) = g6_matrices();
    let g6 = mat_closure(&[a, b], 10_000).unwrap();
    assert_eq!(g6.len(), 48);
    assert_eq!(realize(Builtin::G6).order(), g6.len());
}

#[test]
fn dihedral_orders_match_polygon_symmetries() {
    for n in 1..=12usize {
        let (rot, flip) = dihedral_generators(n);
        let oracle: Vec<Perm> = perm_closure(&[rot.clone(), flip.clone()])
            .into_iter()
            .collect();
        assert_eq!(oracle.len(), 2 * n);
        let realized = realize(Builtin::DihedralRs(n as u32));
        assert_eq!(realized.order(), oracle.len(), "n = {n}");
        assert_eq!(
            realized.element_order_multiset(),
            order_multiset(&oracle, perm_order),
            "n = {n}"
        );
        let inv = realize(Builtin::DihedralInv(n as u32));
        assert_eq!(
            inv.element_order_multiset(),
            order_multiset(&oracle, perm_order)
        );
    }
}

#[test]
fn dihedral_realization_is_isomorphic_to_direct_table() {
    for n in 1..=12u32 {
        let realized = realize(Builtin::DihedralRs(n));
        let direct = Group::dihedral(n).unwrap();
        let images = [
            direct.generator("r").unwrap(),
            direct.generator("s").unwrap(),
        ];
        assert!(
            isomorphism_from_generators(&realized, &direct, &images).is_some(),
            "n = {n}"
        );
    }
}

#[test]
fn quaternion_presentations_match_unit_quaternions() {
    let units = quaternion_units();
    assert_eq!(units.len(), 8);
    let oracle = order_multiset(&units, quat_order);
    for b in [Builtin::Q8Ab, Builtin::Q8Ijk] {
        let g = realize(b.clone());
        assert_eq!(g.order(), 8, "{b:?}");
        assert_eq!(g.element_order_multiset(), oracle, "{b:?}");
    }
    let direct = Group::quaternion();
    assert_eq!(direct.element_order_multiset(), oracle);
}

#[test]
fn s3_orbits_match_brute_force() {
    let components = s3_pair_components();
    let sizes: Vec<usize> = components.iter().map(|c| c.len()).collect();
    // (t, t) pairs are fixed; the six others split into two 3-cycles.
    assert_eq!(sizes.iter().filter(|&&s| s == 1).count(), 3);
    assert_eq!(sizes.iter().filter(|&&s| s == 3).count(), 2);

    let s3 = Arc::new(Group::symmetric_group(3).unwrap());
    let lit = |c: &[usize]| {
        let p = perm_from_cycle(3, c);
        let text = format!(
            "({})",
            c.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        );
        (p, s3.permutation_element(&text).unwrap())
    };
    let t12 = lit(&[1, 2]);
    let t23 = lit(&[2, 3]);
    let t13 = lit(&[1, 3]);
    let fact = |x: &(Perm, ElementId), y: &(Perm, ElementId)| {
        Factorization::new(Arc::clone(&s3), vec![x.1, y.1]).unwrap()
    };
    let component_of = |x: &Perm, y: &Perm| {
        components
            .iter()
            .find(|c| c.contains(&(x.clone(), y.clone())))
            .unwrap()
            .clone()
    };

    let f = fact(&t12, &t23);
    assert_eq!(orbit_size(&f, 100).unwrap(), OrbitSize::Finite(3));
    assert_eq!(component_of(&t12.0, &t23.0).len(), 3);

    let u = fact(&t12, &t13);
    let v = fact(&t13, &t12);
    assert_eq!(orbit_size(&u, 100).unwrap(), OrbitSize::Finite(3));
    assert_eq!(orbit_size(&v, 100).unwrap(), OrbitSize::Finite(3));
    assert_eq!(same_orbit(&u, &v, 100).unwrap(), Membership::No);
    assert_ne!(component_of(&t12.0, &t13.0), component_of(&t13.0, &t12.0));

    // Every library orbit equals the brute-force component, member by member.
    for c in &components {
        let (x, y) = c.iter().next().unwrap();
        let key = |p: &Perm| {
            let cycles: Vec<String> = (1..=3)
                .filter_map(|i| {
                    let j = p[i - 1] as usize + 1;
                    (j != i && i < j).then(|| format!("({i} {j})"))
                })
                .collect();
            s3.permutation_element(&cycles.concat()).unwrap()
        };
        let o = orbit(
            &Factorization::new(Arc::clone(&s3), vec![key(x), key(y)]).unwrap(),
            100,
        )
        .unwrap();
        assert_eq!(o.size(), c.len());
        for (p, q) in c {
            assert!(o.contains(&[key(p), key(q)]));
        }
    }
}

fn group_ops(g: &Group) -> (impl Fn(u32, u32) -> u32 + '_, impl Fn(u32) -> u32 + '_) {
    (
        move |x, y| g.multiply(ElementId(x), ElementId(y)).0,
        move |x| g.inverse(ElementId(x)).0,
    )
}

#[test]
fn g6_pair_orbit_matches_dfs() {
    let g6 = Arc::new(realize(Builtin::G6));
    let (a, b) = (g6.generator("a").unwrap(), g6.generator("b").unwrap());
    let (mul, inv) = group_ops(&g6);
    let oracle = dfs_orbit(&[a.0, b.0], &mul, &inv);
    let f = Factorization::new(Arc::clone(&g6), vec![a, b]).unwrap();
    assert_eq!(
        orbit_size(&f, 10_000).unwrap(),
        OrbitSize::Finite(oracle.len())
    );
}

#[test]
fn g4_sizes_match_dfs() {
    let g4 = Arc::new(realize(Builtin::G4));
    let (a, b) = (g4.generator("a").unwrap(), g4.generator("b").unwrap());
    let (mul, inv) = group_ops(&g4);
    assert_eq!(dfs_orbit(&[a.0, a.0, b.0, b.0], &mul, &inv).len(), 36);
    assert_eq!(dfs_orbit(&[a.0, b.0, a.0, b.0], &mul, &inv).len(), 27);
}

#[test]
fn g4_orbit_sizes_agree_with_matrix_model() {
    // Same counts computed without the coset enumerator at all.
    let (a, b) = g4_matrices();
    let elements: Vec<Mat> = mat_closure(&[a, b], 100).unwrap().into_iter().collect();
    let id = |m: &Mat| elements.iter().position(|e| e == m).unwrap() as u32;
    let mul = |x: u32, y: u32| id(&mat_mul(&elements[x as usize], &elements[y as usize]));
    let inv = |x: u32| {
        let m = &elements[x as usize];
        id(&mat_pow(m, 23)) // every element order divides 24
    };
    assert_eq!(
        dfs_orbit(&[id(&a), id(&a), id(&b), id(&b)], &mul, &inv).len(),
        36
    );
    assert_eq!(
        dfs_orbit(&[id(&a), id(&b), id(&a), id(&b)], &mul, &inv).len(),
        27
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bfs_and_dfs_agree(
        which in 0usize..4,
        raw in prop::collection::vec(0u32..48, 1..=4),
    ) {
        let g = match which {
            0 => Group::symmetric_group(4).unwrap(),
            1 => realize(Builtin::G4),
            2 => realize(Builtin::G6),
            _ => realize(Builtin::DihedralRs(6)),
        };
        let g = Arc::new(g);
        let factors: Vec<ElementId> = raw.iter().map(|&x| ElementId(x % g.order() as u32)).collect();
        let keys: Vec<u32> = factors.iter().map(|f| f.0).collect();
        let (mul, inv) = group_ops(&g);
        let oracle = dfs_orbit(&keys, &mul, &inv);
        let o = orbit(&Factorization::new(Arc::clone(&g), factors).unwrap(), 1_000_000).unwrap();
        prop_assert!(!o.is_capped());
        let members: Vec<Vec<u32>> = o.members().iter().map(|m| m.iter().map(|e| e.0).collect()).collect();
        let oracle: Vec<Vec<u32>> = oracle.into_iter().collect();
        prop_assert_eq!(members, oracle);
    }
}
