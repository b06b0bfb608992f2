use proptest::prelude::*;
use rpcoh_core::zcl::{expand, FactorList};
use rpcoh_core::{
    connected_sum, family_power, is_zero_divisor, kernel_basis, parse_presentation, ring_from_table, to_presentation,
    ClassVector, ProductRing, RingTable,
};

fn homogeneous_class(ring: &RingTable, degree: usize, picks: &[bool]) -> ClassVector {
    let comp = ring.component(degree);
    let labels: Vec<&str> =
        comp.iter().zip(picks.iter().cycle()).filter(|(_, &p)| p).map(|(&i, _)| ring.label(i)).collect();
    ring.class(&labels).unwrap()
}

fn product_class(pr: &ProductRing, degree: usize, picks: &[bool]) -> ClassVector {
    let tuples = pr.degree_basis(degree).unwrap();
    pr.class_from_codes(tuples.iter().zip(picks.iter().cycle()).filter(|(_, &p)| p).map(|(&t, _)| t)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn family_relations(g in 1usize..=4, m in 2usize..=6) {
        let r = RingTable::connected_sum_family(g, m).unwrap();
        prop_assert!(r.check_laws().is_ok());
        prop_assert_eq!(r.len(), g * (m - 1) + 2);
        let mut want = vec![g; m + 1];
        want[0] = 1;
        want[m] = 1;
        prop_assert_eq!(r.poincare(), want);
        let top = r.top_class().unwrap();
        for u in 1..=g {
            let xu = r.element(r.generator_power(u, 1).unwrap()).unwrap();
            let xu_m1 = r.element(r.generator_power(u, m - 1).unwrap()).unwrap();
            prop_assert_eq!(&r.mul(&xu_m1, &xu).unwrap(), &top);
            for v in (1..=g).filter(|&v| v != u) {
                for j in 1..m {
                    for k in 1..m {
                        let a = r.generator_power(u, j).unwrap();
                        let b = r.generator_power(v, k).unwrap();
                        prop_assert!(r.mul_basis(a, b).unwrap().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn degrees_add(g in 1usize..=3, m in 2usize..=5, d1 in 0usize..=5, d2 in 0usize..=5,
                   p in prop::collection::vec(any::<bool>(), 1..6), q in prop::collection::vec(any::<bool>(), 1..6)) {
        let r = RingTable::connected_sum_family(g, m).unwrap();
        let (d1, d2) = (d1 % (m + 1), d2 % (m + 1));
        let a = homogeneous_class(&r, d1, &p);
        let b = homogeneous_class(&r, d2, &q);
        let c = r.mul(&a, &b).unwrap();
        match r.homogeneous_degree(&c).unwrap() {
            None => {}
            Some(d) => prop_assert_eq!(d, d1 + d2),
        }
    }

    #[test]
    fn iterated_connected_sums(g in 2usize..=4, m in 2usize..=6) {
        let base = RingTable::connected_sum_family(1, m).unwrap();
        let rest = RingTable::connected_sum_family(g - 1, m).unwrap();
        let sum = connected_sum(&base, &rest).unwrap();
        prop_assert_eq!(sum, RingTable::connected_sum_family(g, m).unwrap());
    }

    #[test]
    fn presentations_round_trip(g in 1usize..=3, m in 2usize..=5) {
        let r = RingTable::connected_sum_family(g, m).unwrap();
        let back = ring_from_table(&parse_presentation(&to_presentation(&r)).unwrap()).unwrap();
        prop_assert_eq!(back, r);
    }

    #[test]
    fn injection_is_a_ring_map(g in 1usize..=3, m in 2usize..=4, s in 2usize..=3, j in 1usize..=3,
                               d1 in 0usize..=4, d2 in 0usize..=4,
                               p in prop::collection::vec(any::<bool>(), 1..5), q in prop::collection::vec(any::<bool>(), 1..5)) {
        let pr = family_power(g, m, s).unwrap();
        let f = pr.factor();
        let j = 1 + (j - 1) % s;
        let a = homogeneous_class(f, d1 % (m + 1), &p);
        let b = homogeneous_class(f, d2 % (m + 1), &q);
        let lhs = pr.inject(j, &f.mul(&a, &b).unwrap()).unwrap();
        let rhs = pr.mul(&pr.inject(j, &a).unwrap(), &pr.inject(j, &b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn distinct_slots_do_not_interact(g in 1usize..=3, m in 2usize..=4, a in 0usize..20, b in 0usize..20) {
        let pr = family_power(g, m, 3).unwrap();
        let f = pr.factor();
        let (a, b) = (a % f.len(), b % f.len());
        let prod = pr
            .mul(&pr.inject(1, &f.element(a).unwrap()).unwrap(), &pr.inject(3, &f.element(b).unwrap()).unwrap())
            .unwrap();
        prop_assert_eq!(prod.terms(), &[pr.encode(&[a, 0, b]).unwrap()]);
    }

    #[test]
    fn slot_differences_are_zero_divisors(g in 1usize..=3, m in 2usize..=4, s in 2usize..=4,
                                          d in 1usize..=4, p in prop::collection::vec(any::<bool>(), 1..5),
                                          i in 1usize..=4, j in 1usize..=4) {
        let pr = family_power(g, m, s).unwrap();
        let (i, j) = (1 + (i - 1) % s, 1 + (j - 1) % s);
        prop_assume!(i != j);
        let c = homogeneous_class(pr.factor(), 1 + (d - 1) % m, &p);
        let diff = pr.add(&pr.inject(i, &c).unwrap(), &pr.inject(j, &c).unwrap()).unwrap();
        prop_assert!(is_zero_divisor(&pr, &diff).unwrap());
    }

    #[test]
    fn kernel_is_an_ideal(g in 1usize..=2, m in 2usize..=3, s in 2usize..=3, d in 1usize..=3, e in 0usize..=3,
                          which in 0usize..64, p in prop::collection::vec(any::<bool>(), 1..12)) {
        let pr = family_power(g, m, s).unwrap();
        let d = 1 + (d - 1) % pr.top_degree();
        let k = kernel_basis(&pr, d).unwrap();
        prop_assume!(k.dim() > 0);
        let z = &k.vectors[which % k.dim()];
        let e = e % (pr.top_degree() + 1);
        let c = product_class(&pr, e, &p);
        let prod = pr.mul(z, &c).unwrap();
        prop_assert!(prod.is_zero() || is_zero_divisor(&pr, &prod).unwrap());
    }

    #[test]
    fn products_are_order_independent(g in 2usize..=3, m in 2usize..=3, s in 2usize..=3,
                                      picks in prop::collection::vec((0usize..64, 1usize..3), 1..5),
                                      rotate in 0usize..5) {
        let pr = family_power(g, m, s).unwrap();
        let k = kernel_basis(&pr, 1).unwrap();
        let mut list = FactorList::new();
        let mut rev = Vec::new();
        for &(i, mult) in &picks {
            list.push(k.vectors[i % k.dim()].clone(), mult).unwrap();
            rev.push((k.vectors[i % k.dim()].clone(), mult));
        }
        let n = rev.len();
        rev.rotate_left(rotate % n);
        rev.reverse();
        let mut other = FactorList::new();
        for (c, mult) in rev {
            other.push(c, mult).unwrap();
        }
        prop_assert_eq!(expand(&pr, &list).unwrap(), expand(&pr, &other).unwrap());
    }

    #[test]
    fn zero_products_stay_zero(g in 2usize..=3, m in 2usize..=3, s in 2usize..=3,
                               picks in prop::collection::vec(0usize..64, 1..8), extra in 0usize..64) {
        let pr = family_power(g, m, s).unwrap();
        let k = kernel_basis(&pr, 1).unwrap();
        let mut list = FactorList::new();
        for &i in &picks {
            list.push(k.vectors[i % k.dim()].clone(), 1).unwrap();
        }
        if expand(&pr, &list).unwrap().is_zero() {
            list.push(k.vectors[extra % k.dim()].clone(), 1).unwrap();
            prop_assert!(expand(&pr, &list).unwrap().is_zero());
        }
    }
}

#[test]
fn rank_nullity_in_every_degree() {
    for (g, m, s) in [(2, 2, 2), (2, 2, 3), (2, 3, 3), (1, 4, 2), (3, 2, 2)] {
        let pr = family_power(g, m, s).unwrap();
        let dims = pr.poincare();
        for (d, &dim) in dims.iter().enumerate() {
            let k = kernel_basis(&pr, d).unwrap();
            assert_eq!(k.rank + k.dim(), dim, "g={g} m={m} s={s} d={d}");
            assert_eq!(pr.degree_basis(d).unwrap().len(), dim);
            for v in &k.vectors {
                assert!(is_zero_divisor(&pr, v).unwrap());
            }
        }
        assert_eq!(dims.iter().sum::<usize>() as u64, pr.len());
    }
}

#[test]
fn degree_one_kernel_dimension() {
    for g in 1..=4 {
        for m in 2..=4 {
            for s in 2..=5 {
                let pr = family_power(g, m, s).unwrap();
                assert_eq!(kernel_basis(&pr, 1).unwrap().dim(), g * (s - 1));
            }
        }
    }
}
