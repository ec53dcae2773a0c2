mod common;

use common::{random_complex, random_poset_named, rng};
use proptest::prelude::*;
use zipper_core::ops::*;
use zipper_core::recognize::is_cubical;
use zipper_core::{find_isomorphism, Poset};

fn iso(a: &Poset, b: &Poset) -> bool {
    a.len() == b.len() && find_isomorphism(a, b).is_some()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn prejoin_is_associative(seed in any::<u64>(), a in 0usize..4, b in 0usize..4, c in 0usize..4) {
        let mut r = rng(seed);
        let (p, q, s) = (random_poset_named(&mut r, a, 0.4, "p"), random_poset_named(&mut r, b, 0.4, "q"), random_poset_named(&mut r, c, 0.4, "s"));
        prop_assert!(iso(&prejoin(&prejoin(&p, &q), &s), &prejoin(&p, &prejoin(&q, &s))));
        prop_assert!(iso(&cone(&dual_cone(&p)), &dual_cone(&cone(&p))));
    }

    #[test]
    fn join_laws(seed in any::<u64>(), a in 0usize..4, b in 0usize..4) {
        let mut r = rng(seed);
        let (p, q) = (random_poset_named(&mut r, a, 0.4, "p"), random_poset_named(&mut r, b, 0.4, "q"));
        prop_assert!(iso(&join(&p, &q), &join(&q, &p)));
        prop_assert!(iso(&dual_cone(&join(&p, &q)), &product(&dual_cone(&p), &dual_cone(&q))));
        prop_assert!(iso(&product(&cone(&p), &cone(&q)), &cone(&cojoin(&p, &q))));
        prop_assert!(iso(&cojoin(&p, &q), &join(&p.dual(), &q.dual()).dual()));
        if p.is_conditionally_complete() && q.is_conditionally_complete() {
            prop_assert!(join(&p, &q).is_conditionally_complete());
        }
    }

    #[test]
    fn subdivision_laws(seed in any::<u64>(), a in 0usize..4, b in 0usize..4) {
        let mut r = rng(seed);
        let (p, q) = (random_poset_named(&mut r, a, 0.4, "p"), random_poset_named(&mut r, b, 0.4, "q"));
        prop_assert!(iso(&barycentric(&prejoin(&p, &q)), &join(&barycentric(&p), &barycentric(&q))));
        prop_assert!(iso(&canonical(&product(&p, &q)), &product(&canonical(&p), &canonical(&q))));
        prop_assert!(iso(&canonical(&p.dual()), &canonical(&p)));
    }

    #[test]
    fn links_in_products(seed in any::<u64>(), a in 1usize..4, b in 1usize..4) {
        let mut r = rng(seed);
        let (p, q) = (random_poset_named(&mut r, a, 0.4, "p"), random_poset_named(&mut r, b, 0.4, "q"));
        let pq = product(&p, &q);
        for x in 0..a {
            for y in 0..b {
                let lhs = pq.sub(&link(&pq, x * b + y));
                let rhs = join(&p.sub(&link(&p, x)), &q.sub(&link(&q, y)));
                prop_assert!(iso(&lhs, &rhs));
            }
        }
    }

    #[test]
    fn dual_cone_of_a_complex_subdivides_to_cubes(seed in any::<u64>(), n in 1usize..5) {
        let k = random_complex(&mut rng(seed), n).face_poset();
        prop_assert!(is_cubical(&canonical(&dual_cone(&k))).is_yes());
    }

    #[test]
    fn mirror_links_reproduce_the_complex(seed in any::<u64>(), n in 1usize..4) {
        let k = random_complex(&mut rng(seed), n);
        let m = mirror(&k);
        let fk = k.face_poset();
        let vertices: Vec<usize> = (0..m.len()).filter(|&x| m.below(x).is_empty()).collect();
        prop_assert_eq!(vertices.len(), 1 << k.vertices().len());
        for v in vertices {
            prop_assert!(iso(&m.sub(&link(&m, v)), &fk));
        }
    }
}
