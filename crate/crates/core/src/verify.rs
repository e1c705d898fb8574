//! Property suites that tie the fast paths to their slow oracles. Each suite
//! reports how many cases it checked and the first counterexample it found.

use std::collections::HashMap;

use itertools::Itertools;
use num_bigint::BigInt;

use crate::character::{candidates_per_sigma, frobenius_count, CharacterTable};
use crate::enumerate::{
    brute_force_canonical_pair, brute_force_rg, enumerate_rg, run_task_with, EnumerateConfig,
    FaultInjection, SearchTask, BRUTE_FORCE_LIMIT,
};
use crate::graph::graph_of_entry;
use crate::io::{entry_to_line, hypermap_to_json, map_to_json};
use crate::map::{hypermap_from_map, map_from_hypermap, CombinatorialMap, Hypermap};
use crate::oracle::direct_product_count;
use crate::partition::Partition;
use crate::perm::Permutation;
use crate::rules::{all_type_triples, check_map_in_rg, edge_bounds, minsep_genus};

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Largest brin count for the brute-force suites.
    pub max_brins: usize,
    pub workers: usize,
    pub faults: FaultInjection,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            max_brins: BRUTE_FORCE_LIMIT,
            workers: 1,
            faults: FaultInjection::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checked: u64,
    pub counterexample: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Accumulates checks until the first failure.
struct Tally {
    name: &'static str,
    checked: u64,
    failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checked: 0,
            failure: None,
        }
    }

    /// Records one check; returns false once a failure has been seen.
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) -> bool {
        if self.failure.is_some() {
            return false;
        }
        self.checked += 1;
        if !ok {
            self.failure = Some(describe());
        }
        ok
    }

    fn fail(&mut self, describe: String) {
        if self.failure.is_none() {
            self.failure = Some(describe);
        }
    }

    fn done(&self) -> bool {
        self.failure.is_some()
    }

    fn report(self) -> SuiteReport {
        SuiteReport {
            name: self.name,
            checked: self.checked,
            counterexample: self.failure,
        }
    }
}

pub const SUITE_NAMES: [&str; 7] = [
    "composition",
    "walsh",
    "face-doubling",
    "dual",
    "frobenius",
    "dedup",
    "entries",
];

/// Runs every suite in order.
pub fn run_all(cfg: &VerifyConfig) -> Vec<SuiteReport> {
    vec![
        composition_suite(),
        walsh_suite(cfg),
        face_doubling_suite(cfg),
        dual_suite(cfg),
        frobenius_suite(cfg),
        dedup_suite(cfg),
        entries_suite(cfg),
    ]
}

fn perm(n: usize, text: &str) -> Permutation {
    Permutation::parse_cycles(n, text).expect("literal permutation")
}

fn all_perms(n: usize) -> impl Iterator<Item = Permutation> {
    (1..=n)
        .permutations(n)
        .map(|images| Permutation::from_images(&images).expect("itertools yields bijections"))
}

/// Every transitive hypermap on exactly `n` brins, as labeled pairs.
fn labeled_hypermaps(n: usize) -> Vec<Hypermap> {
    let sn: Vec<Permutation> = all_perms(n).collect();
    sn.iter()
        .flat_map(|s| sn.iter().filter_map(move |a| Hypermap::new(s.clone(), a.clone()).ok()))
        .collect()
}

/// The worked map and hypermap examples, checked verbatim.
pub fn composition_suite() -> SuiteReport {
    let mut t = Tally::new("composition");
    let sigma = perm(10, "(1,3,5)(4,8,6)(2,7,10,9)");
    let alpha = perm(10, "(1,2)(3,4)(5,6)(7,8)(9,10)");
    let phi = perm(10, "(1,6,7)(2,10,8,3)(4,5)(9)");
    let derived = sigma.compose_unchecked(&alpha).inverse();
    t.check(derived == phi, || format!("derived face permutation {derived}"));
    t.check(sigma.compose_unchecked(&alpha).apply(7) == 6 && phi.apply(6) == 7, || {
        "σ∘α sends 7 to 6 but φ does not send 6 back".into()
    });
    match CombinatorialMap::from_triple(sigma, alpha, phi) {
        Ok(m) => {
            t.check(
                (m.vertex_count(), m.edge_count(), m.face_count(), m.genus()) == (3, 5, 4, 0),
                || format!("unexpected counts for {}", map_to_json(&m)),
            );
            let g = m.underlying_multigraph();
            t.check(g.loop_count() == 1, || format!("expected one loop in {}", g.to_json()));
        }
        Err(e) => t.fail(format!("worked map rejected: {e}")),
    }

    let hs = perm(4, "(1,2,3,4)");
    let ha = perm(4, "(2,3)");
    let hf = perm(4, "(1,4,2)");
    let derived = hs.compose_unchecked(&ha).inverse();
    t.check(derived == hf, || format!("derived hyperface permutation {derived}"));
    let bipartite = CombinatorialMap::from_triple(
        perm(8, "(1,2,3,4)(6,7)"),
        perm(8, "(1,5)(2,6)(3,7)(4,8)"),
        perm(8, "(1,8,4,7,2,5)(3,6)"),
    );
    match (Hypermap::from_triple(hs, ha, hf), bipartite) {
        (Ok(h), Ok(m)) => {
            t.check(h.genus() == 0, || format!("{} is not planar", hypermap_to_json(&h)));
            let Some(coloring) = m.vertex_bipartition() else {
                t.fail("worked bipartite map has no vertex 2-coloring".into());
                return t.report();
            };
            t.check(coloring.vertex_counts(&m) == (1, 3), || "expected 1 black and 3 white vertices".into());
            match hypermap_from_map(&m, &coloring) {
                Ok(back) => {
                    t.check(back == h, || format!("recovered {}", hypermap_to_json(&back)));
                }
                Err(e) => t.fail(format!("worked bipartite map: {e}")),
            }
            let (walsh, _) = map_from_hypermap(&h);
            t.check(walsh.is_isomorphic(&m), || format!("{} is not isomorphic to the worked map", map_to_json(&walsh)));
        }
        (Err(e), _) | (_, Err(e)) => t.fail(format!("worked example rejected: {e}")),
    }
    t.report()
}

/// Hypermap → bipartite map → hypermap is the identity, and map → hypermap
/// → map stays within the isomorphism class, for every hypermap on at most
/// four brins.
pub fn walsh_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut t = Tally::new("walsh");
    for n in 1..=cfg.max_brins.min(4) {
        // A fixed relabeling of the 2n ends so the reverse direction sees
        // maps not already in the output labeling.
        let shuffle = Permutation::from_images(&(1..=2 * n).rev().collect::<Vec<_>>()).expect("reversal");
        for h in labeled_hypermaps(n) {
            let (m, coloring) = map_from_hypermap(&h);
            let valid = CombinatorialMap::from_triple(m.sigma().clone(), m.alpha().clone(), m.phi().clone()).is_ok();
            if !t.check(valid, || format!("invalid map for {}", hypermap_to_json(&h))) {
                break;
            }
            let back = hypermap_from_map(&m, &coloring);
            if !t.check(back.as_ref() == Ok(&h), || format!("round trip changed {}", hypermap_to_json(&h))) {
                break;
            }
            if !t.check(m.genus() == h.genus(), || format!("genus changed for {}", hypermap_to_json(&h))) {
                break;
            }
            let counts = coloring.vertex_counts(&m);
            let expected = (h.sigma().cycle_count(), h.alpha().cycle_count());
            if !t.check(counts == expected, || format!("vertex classes {counts:?} for {}", hypermap_to_json(&h))) {
                break;
            }
            let relabeled = CombinatorialMap::new(
                m.sigma().conjugate_unchecked(&shuffle),
                m.alpha().conjugate_unchecked(&shuffle),
            )
            .expect("conjugate of a map");
            let ok = relabeled
                .vertex_bipartition()
                .and_then(|c| hypermap_from_map(&relabeled, &c).ok())
                .is_some_and(|h2| map_from_hypermap(&h2).0.is_isomorphic(&relabeled));
            if !t.check(ok, || format!("reverse round trip failed for {}", map_to_json(&relabeled))) {
                break;
            }
        }
        if t.done() {
            break;
        }
    }
    t.report()
}

/// Faces of the bipartite map are exactly twice as long as the hyperfaces.
pub fn face_doubling_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut t = Tally::new("face-doubling");
    for n in 1..=cfg.max_brins.min(4) {
        for h in labeled_hypermaps(n) {
            let (m, _) = map_from_hypermap(&h);
            let doubled = Partition::new(h.phi().cycle_type().parts().iter().map(|p| 2 * p).collect())
                .expect("doubling keeps order");
            if !t.check(m.phi().cycle_type() == doubled, || {
                format!("faces {} vs hyperfaces {} for {}", m.phi(), h.phi(), hypermap_to_json(&h))
            }) {
                return t.report();
            }
        }
    }
    t.report()
}

/// Duality is an involution that keeps the genus and swaps vertices with
/// faces, for every connected map with at most five edges. The edge
/// involution is fixed to `(1,2)(3,4)...`; every map is isomorphic to one
/// of this form.
pub fn dual_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut t = Tally::new("dual");
    for edges in 1..=cfg.max_brins.min(5) {
        let ends = 2 * edges;
        let alpha = Permutation::from_cycles(ends, &(1..=edges).map(|i| vec![2 * i - 1, 2 * i]).collect::<Vec<_>>())
            .expect("pairing");
        for sigma in all_perms(ends) {
            let Ok(m) = CombinatorialMap::new(sigma, alpha.clone()) else {
                continue;
            };
            let d = m.dual();
            let ok = d.dual() == m
                && d.genus() == m.genus()
                && d.vertex_count() == m.face_count()
                && d.face_count() == m.vertex_count()
                && d.edge_count() == m.edge_count();
            if !t.check(ok, || map_to_json(&m)) {
                return t.report();
            }
        }
    }
    t.report()
}

fn part(v: &[u32]) -> Partition {
    Partition::new(v.to_vec()).expect("literal partition")
}

/// Character sums against direct enumeration on small groups, and against
/// the streamed candidate counts for every triple with at most seven edges.
pub fn frobenius_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut t = Tally::new("frobenius");
    let hand_picked = [
        vec![part(&[2, 1]), part(&[2, 1]), part(&[3])],
        vec![part(&[3]), part(&[3]), part(&[1, 1, 1])],
        vec![part(&[3]), part(&[3]), part(&[3])],
        vec![part(&[2, 1]), part(&[2, 1]), part(&[2, 1])],
        vec![part(&[4]), part(&[4]), part(&[2, 2])],
        vec![part(&[4]), part(&[2, 1, 1]), part(&[3, 1])],
        vec![part(&[2, 2]), part(&[2, 2]), part(&[2, 2])],
        vec![part(&[3, 1]), part(&[3, 1]), part(&[3, 1])],
        vec![part(&[4]), part(&[4]), part(&[4])],
        vec![part(&[4]), part(&[3, 1]), part(&[2, 1, 1])],
    ];
    for case in &hand_picked {
        let direct = direct_product_count(case);
        let formula = frobenius_count(case);
        if !t.check(formula.as_ref() == Ok(&BigInt::from(direct)), || {
            format!("{case:?}: formula {formula:?}, direct {direct}")
        }) {
            return t.report();
        }
    }
    let table = CharacterTable::new();
    for g in 1..=6 {
        for triple in all_type_triples(g).expect("g >= 1").into_iter().filter(|x| x.edges() <= 7) {
            let streamed: u64 = SearchTask::plan(&triple, u128::MAX)
                .iter()
                .map(|task| run_task_with(task, cfg.faults).map_or(0, |o| o.candidates))
                .sum();
            let expected = candidates_per_sigma(&table, &triple);
            if !t.check(expected.as_ref() == Ok(&BigInt::from(streamed)), || {
                format!("{}: streamed {streamed}, formula {expected:?}", triple.key())
            }) {
                return t.report();
            }
        }
    }
    t.report()
}

/// Accepted hypermaps are pairwise non-isomorphic and form the same set of
/// classes as the exhaustive search, for `g = 1, 2` and edge counts up to
/// `max_brins`.
pub fn dedup_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut t = Tally::new("dedup");
    let max_e = cfg.max_brins.min(BRUTE_FORCE_LIMIT);
    for g in 1..=2 {
        let (lo, hi) = edge_bounds(g).expect("g >= 1");
        let mut entries = Vec::new();
        for e in lo..=hi.min(max_e) {
            let run_cfg = EnumerateConfig {
                workers: cfg.workers,
                edges: Some(e),
                faults: cfg.faults,
                ..EnumerateConfig::default()
            };
            match enumerate_rg(g, &run_cfg) {
                Ok(run) => entries.extend(run.entries),
                Err(err) => {
                    t.fail(format!("enumeration of g={g} E={e} failed: {err}"));
                    return t.report();
                }
            }
        }
        let mut first_of: HashMap<(Permutation, Permutation), usize> = HashMap::new();
        for (i, e) in entries.iter().enumerate() {
            let class = brute_force_canonical_pair(&e.hypermap);
            if let Some(&j) = first_of.get(&class) {
                t.fail(format!(
                    "duplicate class in {}:\n{}\n{}",
                    e.key,
                    entry_to_line(&entries[j]),
                    entry_to_line(e)
                ));
                return t.report();
            }
            first_of.insert(class, i);
            t.checked += 1;
        }
        let reps = match brute_force_rg(g, max_e) {
            Ok(r) => r,
            Err(err) => {
                t.fail(err.to_string());
                return t.report();
            }
        };
        for h in &reps {
            let class = (h.sigma().clone(), h.alpha().clone());
            if !t.check(first_of.contains_key(&class), || {
                format!("class missed by the search at g={g}: {}", hypermap_to_json(h))
            }) {
                return t.report();
            }
        }
        t.check(reps.len() == entries.len(), || {
            format!("g={g}: search found {} classes, exhaustive search {}", entries.len(), reps.len())
        });
    }
    t.report()
}

/// Every entry of `R_1` and `R_2` lies in its genus, has minimal separating
/// genus at least its ribbon genus, and yields a graph with all degrees even
/// and at least four.
pub fn entries_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut t = Tally::new("entries");
    for g in 1..=2 {
        let run_cfg = EnumerateConfig {
            workers: cfg.workers,
            faults: cfg.faults,
            ..EnumerateConfig::default()
        };
        let run = match enumerate_rg(g, &run_cfg) {
            Ok(run) => run,
            Err(err) => {
                t.fail(format!("enumeration of g={g} failed: {err}"));
                return t.report();
            }
        };
        for e in &run.entries {
            let (m, _) = map_from_hypermap(&e.hypermap);
            let ok = minsep_genus(&e.hypermap) == Some(g)
                && e.hypermap.genus() <= g
                && check_map_in_rg(&m.dual(), g);
            if !t.check(ok, || entry_to_line(e)) {
                return t.report();
            }
            let degrees = graph_of_entry(e).degrees();
            if !t.check(degrees.iter().all(|d| d % 2 == 0 && *d >= 4), || {
                format!("degrees {degrees:?} for {}", entry_to_line(e))
            }) {
                return t.report();
            }
        }
    }
    t.report()
}
