use lattidyn::cover::{
    components, equivalent, finest_cover, is_cover, minimal_subcover, order, refines, square, wedge,
};
use lattidyn::sample::{random_cover, random_poset, rng};
use lattidyn::{Cover, Poset};
use proptest::prelude::*;

fn setup(seed: u64, n: usize, density: f64) -> (Poset, Cover, Cover) {
    let mut r = rng(seed);
    let p = random_poset(&mut r, n, density);
    let u = random_cover(&mut r, &p, 6);
    let v = random_cover(&mut r, &p, 6);
    (p, u, v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn wedge_is_greatest_lower_bound(seed in any::<u64>(), n in 1usize..=7, density in 0.0f64..0.6) {
        let (p, u, v) = setup(seed, n, density);
        let w = wedge(&u, &v).unwrap();
        prop_assert!(is_cover(&p, &w.members()).unwrap());
        prop_assert!(w.refines(&u).unwrap() && w.refines(&v).unwrap());
        let j = finest_cover(&p);
        prop_assert!(j.refines(&w).unwrap());
        prop_assert!(equivalent(&wedge(&u, &v).unwrap(), &wedge(&v, &u).unwrap()).unwrap());
    }

    #[test]
    fn canonical_form_is_equivalent_antichain(seed in any::<u64>(), n in 1usize..=7, density in 0.0f64..0.6) {
        let (_, u, _) = setup(seed, n, density);
        let c = u.canonical();
        prop_assert!(equivalent(&u, &c).unwrap());
        prop_assert!(c.is_canonical());
        let m = c.members();
        for a in &m {
            for b in &m {
                prop_assert!(a == b || !a.leq(*b).unwrap());
            }
        }
    }

    #[test]
    fn square_is_coarser_and_order_counts_point_overlaps(seed in any::<u64>(), n in 1usize..=7, density in 0.0f64..0.6) {
        let (p, u, _) = setup(seed, n, density);
        let s = square(&u);
        prop_assert!(is_cover(&p, &s.members()).unwrap());
        prop_assert!(u.refines(&s).unwrap());
        let members = u.members();
        let by_points = (0..p.len())
            .map(|q| members.iter().filter(|d| d.contains_point(q)).count())
            .max()
            .unwrap();
        prop_assert_eq!(order(&u), by_points);
    }

    #[test]
    fn minimal_subcover_is_a_subcover(seed in any::<u64>(), n in 1usize..=7, density in 0.0f64..0.6) {
        let (p, u, _) = setup(seed, n, density);
        let s = minimal_subcover(&u);
        prop_assert!(is_cover(&p, &s.cover.members()).unwrap());
        prop_assert_eq!(s.count, s.cover.len());
        prop_assert!(s.cover.members().iter().all(|d| u.contains(*d)));
        // Dropping any member breaks it.
        let m = s.cover.members();
        for i in 0..m.len() {
            let rest: Vec<_> = m.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, d)| *d).collect();
            prop_assert!(!is_cover(&p, &rest).unwrap());
        }
    }

    #[test]
    fn components_are_disjoint_and_coarser(seed in any::<u64>(), n in 1usize..=7, density in 0.0f64..0.6) {
        let (p, u, _) = setup(seed, n, density);
        let c = components(&u.members()).unwrap();
        prop_assert!(refines(&u.members(), &c).unwrap());
        prop_assert_eq!(p.join_all(c.iter().copied()).unwrap(), p.one());
        for (i, a) in c.iter().enumerate() {
            for b in &c[i + 1..] {
                prop_assert!(a.meet(*b).unwrap().is_zero());
            }
        }
    }
}
