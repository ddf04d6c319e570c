//! Randomized invariants over small instances.

use proptest::prelude::*;

use apoly_core::catalog::{polygon, simplex, toroid_44_presentation};
use apoly_core::constructions::medial;
use apoly_core::flag::{posets_isomorphic, FlagGraph};
use apoly_core::io::{read_poset_string, write_poset_string};
use apoly_core::presentation::{build_polytope, coset_enumerate, enantiomorph};
use apoly_core::symmetry::{classify_orbits, AutomorphismGroup, Verdict};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn polygon_is_regular_and_self_dual(m in 3usize..24) {
        let p = polygon(m).unwrap().validated().unwrap();
        let fg = FlagGraph::of_poset(&p).unwrap();
        prop_assert_eq!(fg.flag_count(), 2 * m);
        let aut = AutomorphismGroup::compute(&fg);
        prop_assert_eq!(aut.order(), 2 * m);
        prop_assert!(posets_isomorphic(&p, &p.dual()).unwrap());
    }

    #[test]
    fn simplex_counts_are_binomials(n in 2usize..6) {
        let p = simplex(n).unwrap().validated().unwrap();
        let mut binom = n + 1;
        for k in 0..n {
            prop_assert_eq!(p.count(k), binom);
            binom = binom * (n - k) / (k + 2);
        }
        let fg = FlagGraph::of_poset(&p).unwrap();
        let aut = AutomorphismGroup::compute(&fg);
        prop_assert_eq!(aut.order(), fg.flag_count());
    }

    #[test]
    fn toroid_order_and_verdict(b in 1usize..5, c in 0usize..5) {
        prop_assume!(b * b + c * c > 1);
        let pres = toroid_44_presentation(b, c);
        let order = 4 * (b * b + c * c);
        let table = coset_enumerate(&pres, &[], 8 * order).unwrap();
        prop_assert_eq!(table.coset_count(), order);
        let fg = build_polytope(&pres, 8 * order).unwrap();
        let aut = AutomorphismGroup::compute(&fg);
        let cls = classify_orbits(&fg, &aut).unwrap();
        let regular = c == 0 || b == c;
        prop_assert_eq!(cls.verdict == Verdict::Regular, regular);
        if !regular {
            prop_assert_eq!(cls.verdict, Verdict::Chiral);
            // the mirror image is the (c,b) toroid
            let mirror = build_polytope(&enantiomorph(&pres).unwrap(), 8 * order).unwrap();
            let other = build_polytope(&toroid_44_presentation(c, b), 8 * order).unwrap();
            prop_assert!(posets_isomorphic(
                &mirror.to_poset().unwrap(),
                &other.to_poset().unwrap()
            ).unwrap());
        }
    }

    #[test]
    fn medial_flag_and_group_arithmetic(b in 1usize..4, c in 0usize..4) {
        // (1,1) is too small: its faces meet a vertex in four edges
        prop_assume!(b * b + c * c > 2);
        let pres = toroid_44_presentation(b, c);
        let fg = build_polytope(&pres, 1000).unwrap();
        let p = fg.to_poset().unwrap();
        let aut = AutomorphismGroup::compute(&fg);
        let m = medial(&p).unwrap();
        let mfg = FlagGraph::of_poset(&m).unwrap();
        prop_assert_eq!(mfg.flag_count(), 2 * fg.flag_count());
        let maut = AutomorphismGroup::compute(&mfg);
        let self_dual = posets_isomorphic(&p, &p.dual()).unwrap();
        let expect = if self_dual { 2 * aut.order() } else { aut.order() };
        prop_assert_eq!(maut.order(), expect);
    }

    #[test]
    fn apoly_round_trip(m in 3usize..12) {
        let p = polygon(m).unwrap();
        let text = write_poset_string(&p);
        let q = read_poset_string(&text, "mem").unwrap();
        prop_assert_eq!(write_poset_string(&q), text);
    }
}
