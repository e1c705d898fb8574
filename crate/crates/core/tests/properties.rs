use std::collections::BTreeSet;

use minsep_core::enumerate::{run_task, SearchTask};
use minsep_core::io::{hypermap_from_json, hypermap_to_json};
use minsep_core::map::{hypermap_from_map, map_from_hypermap};
use minsep_core::perm::is_transitive;
use minsep_core::rules::{all_type_triples, minsep_genus};
use minsep_core::{Hypermap, MultiGraph, Partition, Permutation, TypeTriple};
use proptest::prelude::*;
use proptest::sample::Index;

fn perm_of(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(&images).unwrap())
}

fn perms(count: usize) -> impl Strategy<Value = (usize, Vec<Permutation>)> {
    (1usize..=8).prop_flat_map(move |n| (Just(n), prop::collection::vec(perm_of(n), count)))
}

fn hypermap() -> impl Strategy<Value = Hypermap> {
    perms(2).prop_filter_map("transitive pair", |(_, ps)| Hypermap::new(ps[0].clone(), ps[1].clone()).ok())
}

proptest! {
    #[test]
    fn composition_is_associative((_, ps) in perms(3)) {
        let left = ps[0].compose(&ps[1]).unwrap().compose(&ps[2]).unwrap();
        let right = ps[0].compose(&ps[1].compose(&ps[2]).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_cancels((n, ps) in perms(1)) {
        prop_assert_eq!(ps[0].compose(&ps[0].inverse()).unwrap(), Permutation::identity(n));
        prop_assert_eq!(ps[0].inverse().inverse(), ps[0].clone());
    }

    #[test]
    fn conjugation_keeps_cycle_type((_, ps) in perms(2)) {
        let (p, r) = (&ps[0], &ps[1]);
        let c = p.conjugate(r).unwrap();
        prop_assert_eq!(c.cycle_type(), p.cycle_type());
        prop_assert_eq!(&c, &r.inverse().compose(p).unwrap().compose(r).unwrap());
    }

    #[test]
    fn cycle_text_round_trips((n, ps) in perms(1)) {
        let p = &ps[0];
        prop_assert_eq!(&Permutation::parse_cycles(n, &p.to_string()).unwrap(), p);
        prop_assert_eq!(p.cycle_type().total(), n);
    }

    #[test]
    fn walsh_round_trip_and_face_doubling(h in hypermap()) {
        let (m, coloring) = map_from_hypermap(&h);
        prop_assert_eq!(hypermap_from_map(&m, &coloring).unwrap(), h.clone());
        prop_assert_eq!(m.genus(), h.genus());
        let doubled: Vec<u32> = h.phi().cycle_type().parts().iter().map(|p| 2 * p).collect();
        prop_assert_eq!(m.phi().cycle_type().parts().to_vec(), doubled);
    }

    #[test]
    fn minsep_genus_bounds_ribbon_genus(h in hypermap()) {
        if let Some(g) = minsep_genus(&h) {
            prop_assert!(g >= h.genus());
            let faces = h.sigma().cycle_count() + h.alpha().cycle_count();
            prop_assert_eq!(g == h.genus(), faces == 2);
        } else {
            prop_assert!(h.phi().has_fixed_point());
        }
    }

    #[test]
    fn transitivity_needs_only_two_generators((n, ps) in perms(2)) {
        let phi = ps[0].compose(&ps[1]).unwrap().inverse();
        prop_assert_eq!(
            is_transitive(&[&ps[0], &ps[1]], n),
            is_transitive(&[&ps[0], &ps[1], &phi], n)
        );
    }

    #[test]
    fn hypermap_json_round_trips(h in hypermap()) {
        prop_assert_eq!(hypermap_from_json(&hypermap_to_json(&h)).unwrap(), h);
    }

    #[test]
    fn partition_keys_round_trip(mut parts in prop::collection::vec(1u32..9, 1..8)) {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let p = Partition::new(parts).unwrap();
        prop_assert_eq!(Partition::parse_key(&p.key()).unwrap(), p);
    }

    #[test]
    fn canonical_graph_ignores_labels(
        n in 1usize..7,
        raw in prop::collection::vec((0u32..64, 0u32..64), 1..10),
        shuffle in Just((1..=6u32).collect::<Vec<u32>>()).prop_shuffle(),
    ) {
        let edges: Vec<(u32, u32)> = raw.iter().map(|&(u, v)| (u % n as u32 + 1, v % n as u32 + 1)).collect();
        // Restrict the shuffle to a bijection of 1..=n.
        let order: Vec<u32> = shuffle.into_iter().filter(|&v| v as usize <= n).collect();
        let moved: Vec<(u32, u32)> = edges.iter().map(|&(u, v)| (order[u as usize - 1], order[v as usize - 1])).collect();
        let a = MultiGraph::new(n, edges).unwrap();
        let b = MultiGraph::new(n, moved).unwrap();
        prop_assert_eq!(a.canonical_form(), b.canonical_form());
        prop_assert_eq!(a.canonical_form().degrees().iter().sum::<usize>(), 2 * a.edges().len());
    }
}

fn genus_two_triples() -> Vec<TypeTriple> {
    all_type_triples(2).unwrap().into_iter().filter(|t| t.edges() <= 6).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn chunking_does_not_change_output(pick in any::<Index>(), chunk in 1u128..200) {
        let triples = genus_two_triples();
        let t = pick.get(&triples);
        let collect = |size: u128| -> (BTreeSet<(Permutation, Permutation)>, u64) {
            let mut set = BTreeSet::new();
            let mut candidates = 0;
            for task in SearchTask::plan(t, size) {
                let out = run_task(&task).unwrap();
                candidates += out.candidates;
                set.extend(out.hypermaps.into_iter().map(|h| (h.sigma().clone(), h.alpha().clone())));
            }
            (set, candidates)
        };
        prop_assert_eq!(collect(chunk), collect(u128::MAX));
    }
}
