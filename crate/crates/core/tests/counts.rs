use std::collections::BTreeSet;
use std::sync::OnceLock;

use minsep_core::character::{candidates_per_sigma, CharacterTable};
use minsep_core::enumerate::{enumerate_rg, run_task, EnumerateConfig, RgEntry, SearchTask};
use minsep_core::graph::{graph_of_entry, reduce_to_cg};
use minsep_core::rules::{all_type_triples, check_map_in_rg};
use minsep_core::map::map_from_hypermap;
use minsep_core::{GenusTable, MultiGraph};
use num_bigint::BigInt;

fn rg_lists() -> &'static Vec<Vec<RgEntry>> {
    static LISTS: OnceLock<Vec<Vec<RgEntry>>> = OnceLock::new();
    LISTS.get_or_init(|| {
        let cfg = EnumerateConfig {
            workers: 4,
            ..EnumerateConfig::default()
        };
        let mut lists = vec![vec![RgEntry::circle()]];
        for g in 1..=3 {
            lists.push(enumerate_rg(g, &cfg).unwrap().entries);
        }
        lists
    })
}

fn classes() -> &'static Vec<Vec<MultiGraph>> {
    static C: OnceLock<Vec<Vec<MultiGraph>>> = OnceLock::new();
    C.get_or_init(|| reduce_to_cg(rg_lists()).unwrap())
}

#[test]
fn rg_sizes_through_genus_three() {
    let sizes: Vec<usize> = rg_lists().iter().map(Vec::len).collect();
    assert_eq!(sizes, vec![1, 3, 31, 1831]);
}

#[test]
fn entries_are_minimal_separating_in_their_genus() {
    for (g, list) in rg_lists().iter().enumerate().skip(1) {
        for e in list {
            assert_eq!(e.genus, g as u32);
            let (m, _) = map_from_hypermap(&e.hypermap);
            assert!(check_map_in_rg(&m.dual(), g as u32), "{}", e.key);
            assert!(e.ribbon_genus <= e.genus);
        }
    }
}

#[test]
fn class_counts_and_table() {
    let c: Vec<u64> = classes().iter().map(|v| v.len() as u64).collect();
    assert_eq!(c, vec![1, 3, 17, 164]);
    let r: Vec<u64> = rg_lists().iter().map(|v| v.len() as u64).collect();
    let table = GenusTable::build(&r, &c).unwrap();
    let rows: Vec<(u64, u64, u128, u128)> = table.rows.iter().map(|row| (row.r, row.c, row.l, row.m)).collect();
    assert_eq!(rows, vec![(1, 1, 1, 1), (3, 3, 4, 5), (31, 17, 21, 26), (1831, 164, 191, 217)]);
}

#[test]
fn emitted_graphs_have_even_degree_at_least_four() {
    for list in rg_lists().iter().skip(1) {
        for e in list {
            let graph = graph_of_entry(e);
            for d in graph.degrees() {
                assert!(d >= 4 && d % 2 == 0, "{} has degree {d}", e.key);
            }
        }
    }
}

#[test]
fn every_class_has_a_preimage() {
    for (g, list) in rg_lists().iter().enumerate().skip(1) {
        let forms: Vec<MultiGraph> = list.iter().map(|e| graph_of_entry(e).canonical_form()).collect();
        for class in &classes()[g] {
            assert!(forms.contains(class));
        }
        // Entries whose graph is not new in genus g fall in a lower class.
        let (fresh, older): (Vec<&MultiGraph>, Vec<&MultiGraph>) =
            forms.iter().partition(|f| classes()[g].binary_search(f).is_ok());
        for f in &older {
            assert!((0..g).any(|h| classes()[h].binary_search(f).is_ok()), "g={g}");
        }
        assert_eq!(fresh.len() + older.len(), list.len());
    }
}

#[test]
fn genus_two_reuses_lower_graphs() {
    let forms: BTreeSet<MultiGraph> = rg_lists()[2].iter().map(|e| graph_of_entry(e).canonical_form()).collect();
    assert_eq!(forms.len(), 19);
    let bouquet = MultiGraph::new(1, vec![(1, 1); 3]).unwrap().canonical_form();
    let dipole = MultiGraph::new(2, vec![(1, 2); 4]).unwrap().canonical_form();
    for f in [&bouquet, &dipole] {
        assert!(forms.contains(f));
        assert!(classes()[1].contains(f));
        assert!(!classes()[2].contains(f));
    }
}

#[test]
fn table_is_monotone() {
    let c: Vec<u64> = classes().iter().map(|v| v.len() as u64).collect();
    let r: Vec<u64> = rg_lists().iter().map(|v| v.len() as u64).collect();
    let table = GenusTable::build(&r, &c).unwrap();
    for w in table.rows.windows(2) {
        assert!(w[1].m > w[0].m);
        assert!(w[1].l >= w[1].c as u128);
    }
}

#[test]
fn storage_estimates_hold_within_one_growth_step() {
    for g in 1..=3 {
        let run = enumerate_rg(g, &EnumerateConfig::default()).unwrap();
        for t in &run.triples {
            assert!(
                u128::from(t.count) <= 2 * t.estimate.max(1),
                "{}: {} stored, estimate {}",
                t.key,
                t.count,
                t.estimate
            );
            assert!(t.growth_steps <= 1, "{}", t.key);
        }
    }
}

#[test]
fn genus_one_classes_include_figure_eight() {
    let eight = MultiGraph::new(1, vec![(1, 1), (1, 1)]).unwrap();
    assert!(classes()[1].contains(&eight.canonical_form()));
}

#[test]
fn streamed_candidates_match_frobenius_up_to_seven_edges() {
    let table = CharacterTable::new();
    let mut checked = 0;
    for g in 1..=6 {
        for t in all_type_triples(g).unwrap().into_iter().filter(|t| t.edges() <= 7) {
            let streamed: u64 = SearchTask::plan(&t, u128::MAX)
                .iter()
                .map(|task| run_task(task).unwrap().candidates)
                .sum();
            let expected = candidates_per_sigma(&table, &t).unwrap();
            assert_eq!(BigInt::from(streamed), expected, "{}", t.key());
            checked += 1;
        }
    }
    assert!(checked > 0);
}
