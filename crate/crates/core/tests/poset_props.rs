mod common;

use common::{random_complex, random_poset, rng};
use proptest::prelude::*;
use zipper_core::{find_isomorphism, Poset};

/// Reachability by depth-first search over the cover graph.
fn reach(p: &Poset, a: usize, b: usize) -> bool {
    let mut stack = vec![a];
    let mut seen = vec![false; p.len()];
    while let Some(x) = stack.pop() {
        for &y in p.upper_covers(x) {
            if y == b {
                return true;
            }
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    false
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn covers_reduce_the_order(seed in any::<u64>(), n in 0usize..9) {
        let p = random_poset(&mut rng(seed), n, 0.35);
        for a in 0..n {
            prop_assert!(!p.lt(a, a));
            for b in 0..n {
                prop_assert_eq!(p.lt(a, b), reach(&p, a, b));
                prop_assert!(!(p.lt(a, b) && p.lt(b, a)));
                let between = (0..n).any(|c| p.lt(a, c) && p.lt(c, b));
                prop_assert_eq!(p.covers(a, b), p.lt(a, b) && !between);
            }
        }
    }

    #[test]
    fn dual_is_an_involution(seed in any::<u64>(), n in 0usize..9) {
        let p = random_poset(&mut rng(seed), n, 0.35);
        prop_assert!(p.dual().dual().same_as(&p));
        for a in 0..n {
            for b in 0..n {
                prop_assert_eq!(p.lt(a, b), p.dual().lt(b, a));
            }
        }
    }

    #[test]
    fn cones_are_closed_and_open(seed in any::<u64>(), n in 1usize..9) {
        let p = random_poset(&mut rng(seed), n, 0.35);
        for x in 0..n {
            prop_assert!(p.is_closed(&p.down_set(x)));
            prop_assert!(p.is_open(&p.up_set(x)));
            prop_assert!(p.is_full(&p.up_set(x)));
        }
    }

    #[test]
    fn completeness_criteria_agree(seed in any::<u64>(), n in 0usize..8) {
        let p = random_poset(&mut rng(seed), n, 0.4);
        let ex = p.is_conditionally_complete_exhaustive();
        prop_assert_eq!(p.is_conditionally_complete(), ex);
        prop_assert_eq!(p.is_conditionally_complete_by_meets(), ex);
    }

    #[test]
    fn isomorphism_is_reflexive_and_symmetric(seed in any::<u64>(), n in 0usize..8) {
        let mut r = rng(seed);
        let p = random_poset(&mut r, n, 0.4);
        let mut order: Vec<usize> = (0..n).collect();
        use rand::seq::SliceRandom;
        order.shuffle(&mut r);
        let q = p.permuted(&order);
        let f = find_isomorphism(&p, &q).expect("permuted copy");
        prop_assert!(f.is_isomorphism());
        let g = find_isomorphism(&q, &p).expect("symmetric");
        prop_assert!(g.is_isomorphism());
        prop_assert!(find_isomorphism(&p, &p).unwrap().is_isomorphism());
    }

    #[test]
    fn atom_embedding_is_an_order_embedding(seed in any::<u64>(), n in 1usize..6) {
        let p = random_complex(&mut rng(seed), n).face_poset();
        let f = p.atom_embedding().expect("face posets are atomic");
        for a in 0..p.len() {
            for b in 0..p.len() {
                prop_assert_eq!(p.le(a, b), f.target().le(f.apply(a), f.apply(b)));
            }
        }
    }
}
