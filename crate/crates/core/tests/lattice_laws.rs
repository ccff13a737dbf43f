use lattidyn::sample::{random_downset, random_poset, rng};
use lattidyn::Poset;
use proptest::prelude::*;

fn poset_from(seed: u64, n: usize, density: f64) -> Poset {
    random_poset(&mut rng(seed), n, density)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1200))]

    #[test]
    fn distributive_lattice_laws(seed in any::<u64>(), n in 1usize..=10, density in 0.0f64..0.7) {
        let p = poset_from(seed, n, density);
        let mut r = rng(seed ^ 0x9e37);
        let (x, y, z) = (random_downset(&mut r, &p), random_downset(&mut r, &p), random_downset(&mut r, &p));
        let j = |a, b| lattidyn::Downset::join(a, b).unwrap();
        let m = |a, b| lattidyn::Downset::meet(a, b).unwrap();

        prop_assert_eq!(j(x, y), j(y, x));
        prop_assert_eq!(m(x, y), m(y, x));
        prop_assert_eq!(j(j(x, y), z), j(x, j(y, z)));
        prop_assert_eq!(m(m(x, y), z), m(x, m(y, z)));
        prop_assert_eq!(j(x, m(x, y)), x);
        prop_assert_eq!(m(x, j(x, y)), x);
        prop_assert_eq!(m(x, j(y, z)), j(m(x, y), m(x, z)));
        prop_assert_eq!(j(x, m(y, z)), m(j(x, y), j(x, z)));
        prop_assert_eq!(j(x, p.zero()), x);
        prop_assert_eq!(m(x, p.one()), x);
        prop_assert_eq!(x.leq(y).unwrap(), m(x, y) == x);
        prop_assert!(p.is_downset_mask(j(x, y).bits()) && p.is_downset_mask(m(x, y).bits()));
    }

    #[test]
    fn downsets_are_down_closed(seed in any::<u64>(), n in 1usize..=8, density in 0.0f64..0.7) {
        let p = poset_from(seed, n, density);
        let d = random_downset(&mut rng(!seed), &p);
        for q in d.points() {
            for r in 0..p.len() {
                if p.leq(r, q) {
                    prop_assert!(d.contains_point(r));
                }
            }
        }
        prop_assert_eq!(p.down_closure(d.bits()), d);
    }

    #[test]
    fn join_irreducibles_are_principal(seed in any::<u64>(), n in 1usize..=6, density in 0.0f64..0.7) {
        let p = poset_from(seed, n, density);
        let all = p.downsets(1 << 10).unwrap();
        for d in &all {
            let below: Vec<_> = all.iter().filter(|e| e.leq(*d).unwrap() && *e != d).copied().collect();
            let irreducible = !d.is_zero() && p.join_all(below.iter().copied()).unwrap() != *d;
            prop_assert_eq!(irreducible, p.join_irreducibles().contains(d));
        }
        prop_assert_eq!(all.len(), p.count_downsets(1 << 10).unwrap());
    }
}
