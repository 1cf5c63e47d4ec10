use cone_detect::exact::cone::{conv_union, intersect, ConeH, ConeV, ProperCone};
use cone_detect::exact::random::{random_proper_cone, rng};
use proptest::prelude::*;

/// Dual computed from scratch: the generators of `K` read as inequalities,
/// converted back to extreme rays.
fn dual_from_scratch(k: &ProperCone) -> ProperCone {
    let h = ConeH::new(k.space_dim, k.generators.clone()).unwrap();
    ProperCone::from_v(&h.to_v_rep().unwrap()).unwrap()
}

fn two_cones(seed: u64, n: usize) -> (ProperCone, ProperCone) {
    let mut r = rng(seed);
    (random_proper_cone(&mut r, n), random_proper_cone(&mut r, n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dual_generators_are_facets(seed in any::<u64>(), n in 2usize..=4) {
        let k = random_proper_cone(&mut rng(seed), n);
        let d = dual_from_scratch(&k);
        prop_assert_eq!(&d.generators, &k.facets);
        prop_assert_eq!(&d.facets, &k.generators);
    }

    #[test]
    fn double_dual_is_identity(seed in any::<u64>(), n in 2usize..=4) {
        let k = random_proper_cone(&mut rng(seed), n);
        let dd = dual_from_scratch(&dual_from_scratch(&k));
        prop_assert_eq!(dd, k);
    }

    #[test]
    fn dual_of_intersection(seed in any::<u64>(), n in 2usize..=4) {
        let (k, l) = two_cones(seed, n);
        let meet = intersect(&k.h(), &l.h()).unwrap();
        prop_assume!(meet.report().is_full);
        let lhs = ProperCone::from_h(&meet).unwrap().dual().generators;
        let rhs = conv_union(&k.dual().v(), &l.dual().v()).unwrap().generators;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dual_of_convex_hull(seed in any::<u64>(), n in 2usize..=4) {
        let (k, l) = two_cones(seed, n);
        let hull = conv_union(&k.v(), &l.v()).unwrap();
        prop_assume!(hull.report().is_pointed);
        let lhs = ProperCone::from_v(&hull).unwrap().dual().generators;
        let meet = intersect(&k.dual().h(), &l.dual().h()).unwrap();
        let rhs = ProperCone::from_h(&meet).unwrap().generators;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn v_and_h_round_trip(seed in any::<u64>(), n in 2usize..=4) {
        let k = random_proper_cone(&mut rng(seed), n);
        let from_h = ProperCone::from_h(&k.h()).unwrap();
        prop_assert_eq!(&from_h, &k);
        let redundant = ConeV::new(n, k.generators.iter().chain(&k.generators).cloned().collect()).unwrap();
        prop_assert_eq!(ProperCone::from_v(&redundant).unwrap(), k);
    }
}
