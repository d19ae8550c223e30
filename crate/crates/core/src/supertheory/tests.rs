use super::*;
use crate::algebra::ut3;

fn borel_gl2_3() -> ExtensionGroup {
    let p = 3;
    let mut elems = Vec::new();
    for a in 1..3 {
        for b in 1..3 {
            elems.push(Matrix::from_rows(&[vec![a, 0], vec![0, b]], 2, p));
        }
    }
    let gens = vec![
        Matrix::from_rows(&[vec![2, 0], vec![0, 1]], 2, p),
        Matrix::from_rows(&[vec![1, 0], vec![0, 2]], 2, p),
    ];
    let l = LGroup::from_matrices(p, 2, vec![(0, 1)], elems, &gens).unwrap();
    ExtensionGroup::new(NilpotentAlgebra::zero_product(p, 1).unwrap(), l, &Budget::default()).unwrap()
}

fn int_degrees(t: &SupercharacterTheory) -> Vec<i64> {
    let mut d: Vec<i64> = t
        .degrees()
        .iter()
        .map(|c| c.to_rational().unwrap().to_integer().try_into().unwrap())
        .collect();
    d.sort();
    d
}

#[test]
fn di_ut3_2() {
    let t = build_di(&ut3(2), &BuildOptions::default()).unwrap();
    assert_eq!(t.parameters.len(), 5);
    assert_eq!(t.superclasses.len(), 5);
    let mut sizes: Vec<usize> = t.superclasses.iter().map(|k| k.members.len()).collect();
    sizes.sort();
    assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
    assert_eq!(int_degrees(&t), vec![1, 1, 1, 1, 2]);
    let g = ExtensionGroup::new(ut3(2), LGroup::trivial(2, 3), &Budget::default()).unwrap();
    let r = verify_theory(&t, &g, true).unwrap();
    assert!(r.passed(), "{r:?}");
}

#[test]
fn trivial_l_flavors_match_di() {
    for p in [2, 3] {
        let g = ExtensionGroup::new(ut3(p), LGroup::trivial(p, 3), &Budget::default()).unwrap();
        let di = build_di(&ut3(p), &BuildOptions::default()).unwrap();
        for flavor in [Flavor::GG, Flavor::GU, Flavor::UU] {
            let t = build_theory(&g, flavor, &BuildOptions::default()).unwrap();
            assert_eq!(canonical_partition(&t.superclasses), canonical_partition(&di.superclasses));
            let mut a = t.element_values.clone();
            let mut b = di.element_values.clone();
            a.sort_by(|x, y| super::compare_values(x, y));
            b.sort_by(|x, y| super::compare_values(x, y));
            assert_eq!(a, b, "{flavor} at p={p}");
        }
    }
}

#[test]
fn borel_all_flavors_verify_and_match_oracle() {
    let g = borel_gl2_3();
    let opts = BuildOptions::default();
    for flavor in [Flavor::GG, Flavor::GU, Flavor::UU] {
        let t = build_theory(&g, flavor, &opts).unwrap();
        let r = verify_theory(&t, &g, true).unwrap();
        assert!(r.passed(), "{flavor}: {r:?}");
        assert_eq!(oracle_mismatches(&g, &t, &opts).unwrap(), Vec::<String>::new(), "{flavor}");
    }
    let gg = build_theory(&g, Flavor::GG, &opts).unwrap();
    assert_eq!(gg_specialization_mismatches(&g, &gg, &opts).unwrap(), Vec::<String>::new());
    let (a, b) = gg_counting_identity(&g, &opts).unwrap();
    assert_eq!(a, b);
}

#[test]
fn corrupted_superclass_fails_constancy() {
    let g = ExtensionGroup::new(ut3(2), LGroup::trivial(2, 3), &Budget::default()).unwrap();
    let mut t = build_theory(&g, Flavor::GG, &BuildOptions::default()).unwrap();
    // merge two superclasses of size 2
    let idx: Vec<usize> = (0..t.superclasses.len()).filter(|&i| t.superclasses[i].members.len() == 2).collect();
    let moved = t.superclasses[idx[1]].members.clone();
    t.superclasses[idx[0]].members.extend(moved);
    t.superclasses[idx[0]].members.sort_unstable();
    t.superclasses.remove(idx[1]);
    let r = verify_theory(&t, &g, false).unwrap();
    let b = r.get("b").unwrap();
    assert_eq!(b.status, CheckStatus::Fail);
    assert!(b.witness.is_some());
}

#[test]
fn epsilon_power_keeps_partition() {
    let g = ExtensionGroup::new(ut3(3), LGroup::trivial(3, 3), &Budget::default()).unwrap();
    let a = build_theory(&g, Flavor::UU, &BuildOptions::default()).unwrap();
    let b = build_theory(&g, Flavor::UU, &BuildOptions { epsilon_power: 2, ..Default::default() }).unwrap();
    assert_eq!(canonical_partition(&a.superclasses), canonical_partition(&b.superclasses));
    assert!(verify_theory(&b, &g, false).unwrap().passed());
}

#[test]
fn di_ut3_3_counts() {
    let t = build_di(&ut3(3), &BuildOptions::default()).unwrap();
    assert_eq!((t.parameters.len(), t.superclasses.len()), (11, 11));
    let g = ExtensionGroup::new(ut3(3), LGroup::trivial(3, 3), &Budget::default()).unwrap();
    assert!(verify_theory(&t, &g, true).unwrap().passed());
}

#[test]
fn borel_partitions_refine() {
    let g = borel_gl2_3();
    let opts = BuildOptions::default();
    let [uu, gu, gg] = [Flavor::UU, Flavor::GU, Flavor::GG].map(|f| build_theory(&g, f, &opts).unwrap());
    let n = g.order() as usize;
    assert!(refines(&uu.superclasses, &gu.superclasses, n));
    assert!(refines(&gu.superclasses, &gg.superclasses, n));
}

#[test]
fn stabilizers_of_one_and_two_sided_orbits_agree() {
    let g = borel_gl2_3();
    assert!(stabilizer_coincidences(&g, &Budget::default()).unwrap().is_empty());
}

#[test]
fn parabolic_partitions_refine() {
    let opts = BuildOptions::default();
    for (blocks, p) in [("2,1", 2), ("1,1,1", 2), ("1,1,1", 3), ("2,2", 2), ("1,2", 3)] {
        let c: crate::parabolic::Composition = blocks.parse().unwrap();
        let g = crate::parabolic::build_parabolic(&c, p, &opts.budget).unwrap();
        let [uu, gu, gg] = [Flavor::UU, Flavor::GU, Flavor::GG].map(|f| build_theory(&g, f, &opts).unwrap());
        let n = g.order() as usize;
        assert!(refines(&uu.superclasses, &gu.superclasses, n), "UU -> GU for ({blocks}) p={p}");
        assert!(refines(&gu.superclasses, &gg.superclasses, n), "GU -> GG for ({blocks}) p={p}");
    }
}
