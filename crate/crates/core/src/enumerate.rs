//! Enumeration of hypermaps dual to minimal separating ribbon graphs.
//!
//! For each admissible cycle-type triple `(S, A, F)` the hypervertex
//! permutation `σ` is fixed to the block representative of `S`. The smaller
//! of the classes `A` and `F` is streamed by rank; the remaining permutation
//! is derived from `σ ∘ α ∘ φ = id`. A candidate is kept when the derived
//! permutation has the expected cycle type, `⟨σ, α⟩` is transitive, and `α`
//! is the lexicographically least conjugate of itself under the centralizer
//! of `σ`. When `S = A` the color-swapped encoding competes as well.

use std::collections::HashSet;
use std::ops::Range;

use rayon::prelude::*;

use crate::character::{capacity_estimate, CharacterTable};
use crate::class::{centralizer_stream, ConjugacyClass};
use crate::error::{Error, Result};
use crate::map::Hypermap;
use crate::oracle::symmetric_group;
use crate::perm::{cycle_lengths_raw, is_transitive, Permutation};
use crate::rules::{all_type_triples, minsep_genus, TypeTriple};

pub const DEFAULT_CHUNK_SIZE: u128 = 1_000_000;

/// Largest brin count the brute-force oracle accepts.
pub const BRUTE_FORCE_LIMIT: usize = 6;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StreamedClass {
    Alpha,
    Phi,
}

#[derive(Clone, Debug)]
pub struct SearchTask {
    pub triple: TypeTriple,
    pub sigma: Permutation,
    pub iterate_over: StreamedClass,
    pub chunk: Range<u128>,
}

impl SearchTask {
    /// Splits the streamed class of `triple` into chunks of `chunk_size` ranks.
    pub fn plan(triple: &TypeTriple, chunk_size: u128) -> Vec<SearchTask> {
        let (iterate_over, size) = streamed_class(triple);
        let sigma = triple.sigma.canonical_permutation();
        let chunk_size = chunk_size.max(1);
        (0..size.div_ceil(chunk_size))
            .map(|i| SearchTask {
                triple: triple.clone(),
                sigma: sigma.clone(),
                iterate_over,
                chunk: i * chunk_size..((i + 1) * chunk_size).min(size),
            })
            .collect()
    }
}

/// Picks the smaller of the `A` and `F` classes; ties go to `A`.
fn streamed_class(t: &TypeTriple) -> (StreamedClass, u128) {
    let (a, f) = (t.alpha.class_size(), t.phi.class_size());
    if f < a {
        (StreamedClass::Phi, f)
    } else {
        (StreamedClass::Alpha, a)
    }
}

/// Knobs that only exist to let the oracles catch a broken search.
#[derive(Clone, Copy, Default, Debug)]
pub struct FaultInjection {
    /// Skip the color-swap comparison when `S = A`.
    pub skip_color_swap: bool,
}

#[derive(Clone, Debug, Default)]
pub struct TaskOutput {
    pub hypermaps: Vec<Hypermap>,
    /// Candidates passing the cycle-type filter, before transitivity and
    /// deduplication.
    pub candidates: u64,
}

/// Lexicographic minimality test against the centralizer of a fixed `σ`.
pub struct CanonicalChecker {
    sigma: Permutation,
    // (ρ, ρ⁻¹) pairs, 0-based
    centralizer: Vec<(Vec<u32>, Vec<u32>)>,
    swap_allowed: bool,
}

impl CanonicalChecker {
    pub fn new(sigma: &Permutation, swap_allowed: bool) -> Self {
        let centralizer = centralizer_stream(sigma)
            .filter(|r| !r.is_identity())
            .map(|r| {
                let inv = r.inverse();
                (r.raw().to_vec(), inv.raw().to_vec())
            })
            .collect();
        Self {
            sigma: sigma.clone(),
            centralizer,
            swap_allowed,
        }
    }

    /// True iff some centralizer element conjugates `x` strictly below `bound`.
    fn some_conjugate_below(&self, x: &[u32], bound: &[u32]) -> bool {
        self.centralizer.iter().any(|(rho, rho_inv)| {
            for i in 0..x.len() {
                let c = rho_inv[x[rho[i] as usize] as usize];
                if c != bound[i] {
                    return c < bound[i];
                }
            }
            false
        })
    }

    pub fn is_canonical(&self, alpha: &Permutation) -> bool {
        let a = alpha.raw();
        if self.some_conjugate_below(a, a) {
            return false;
        }
        if self.swap_allowed {
            let tau = self.swapped_sigma(alpha);
            let t = tau.raw();
            if t < a || self.some_conjugate_below(t, a) {
                return false;
            }
        }
        true
    }

    /// Conjugates the swapped pair `(α, σ)` so its first entry becomes `σ`
    /// and returns the image of `σ`. Requires `α` and `σ` of equal type.
    fn swapped_sigma(&self, alpha: &Permutation) -> Permutation {
        let n = alpha.degree();
        let mut cycles: Vec<Vec<usize>> = alpha.cycles();
        cycles.sort_by_key(|c| std::cmp::Reverse(c.len()));
        // σ is the block representative, so its blocks follow the same length order.
        let mut rho0 = vec![0u32; n];
        let mut start = 0usize;
        for c in &cycles {
            for (j, &x) in c.iter().enumerate() {
                rho0[start + j] = x as u32 - 1;
            }
            start += c.len();
        }
        let rho0 = Permutation::from_raw(rho0);
        debug_assert_eq!(alpha.conjugate_unchecked(&rho0), self.sigma);
        self.sigma.conjugate_unchecked(&rho0)
    }
}

/// Standalone form of the canonical-form predicate.
pub fn is_canonical(sigma: &Permutation, alpha: &Permutation, swap_allowed: bool) -> bool {
    CanonicalChecker::new(sigma, swap_allowed).is_canonical(alpha)
}

/// Per-triple search state shared across chunks.
struct TripleSearch {
    sigma: Permutation,
    sigma_inv: Permutation,
    streamed: StreamedClass,
    class: ConjugacyClass,
    checker: CanonicalChecker,
    expected_other: Vec<u32>,
}

impl TripleSearch {
    fn new(triple: &TypeTriple, faults: FaultInjection) -> Self {
        let (streamed, _) = streamed_class(triple);
        let sigma = triple.sigma.canonical_permutation();
        let (streamed_type, other_type) = match streamed {
            StreamedClass::Alpha => (&triple.alpha, &triple.phi),
            StreamedClass::Phi => (&triple.phi, &triple.alpha),
        };
        let swap_allowed = triple.sigma == triple.alpha && !faults.skip_color_swap;
        Self {
            sigma_inv: sigma.inverse(),
            checker: CanonicalChecker::new(&sigma, swap_allowed),
            sigma,
            streamed,
            class: ConjugacyClass::new(streamed_type.clone()),
            expected_other: other_type.parts().to_vec(),
        }
    }

    fn run(&self, chunk: Range<u128>) -> Result<TaskOutput> {
        let mut out = TaskOutput::default();
        let n = self.sigma.degree();
        for x in self.class.iter_range(chunk)? {
            // Derive the third permutation from σ ∘ α ∘ φ = id.
            let (alpha, phi) = match self.streamed {
                StreamedClass::Alpha => {
                    let phi = self.sigma.compose_unchecked(&x).inverse();
                    (x, phi)
                }
                StreamedClass::Phi => {
                    let alpha = self.sigma_inv.compose_unchecked(&x.inverse());
                    (alpha, x)
                }
            };
            let other = match self.streamed {
                StreamedClass::Alpha => &phi,
                StreamedClass::Phi => &alpha,
            };
            let mut lengths = cycle_lengths_raw(other.raw());
            lengths.sort_unstable_by(|a, b| b.cmp(a));
            if lengths != self.expected_other {
                continue;
            }
            out.candidates += 1;
            if !is_transitive(&[&self.sigma, &alpha], n) {
                continue;
            }
            if !self.checker.is_canonical(&alpha) {
                continue;
            }
            out.hypermaps
                .push(Hypermap::from_parts_unchecked(self.sigma.clone(), alpha, phi));
        }
        Ok(out)
    }
}

/// Runs one chunk of one triple.
pub fn run_task(task: &SearchTask) -> Result<TaskOutput> {
    run_task_with(task, FaultInjection::default())
}

pub fn run_task_with(task: &SearchTask, faults: FaultInjection) -> Result<TaskOutput> {
    TripleSearch::new(&task.triple, faults).run(task.chunk.clone())
}

/// One element of `R_g`, stored as the hypermap of its dual.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RgEntry {
    pub hypermap: Hypermap,
    pub genus: u32,
    pub ribbon_genus: u32,
    pub key: String,
}

impl RgEntry {
    pub fn new(hypermap: Hypermap, key: String) -> Option<Self> {
        let genus = minsep_genus(&hypermap)?;
        Some(Self {
            ribbon_genus: hypermap.genus(),
            genus,
            hypermap,
            key,
        })
    }

    /// The circle, the only element of `R_0`.
    pub fn circle() -> Self {
        let id = Permutation::identity(1);
        Self {
            hypermap: Hypermap::from_parts_unchecked(id.clone(), id.clone(), id),
            genus: 0,
            ribbon_genus: 0,
            key: CIRCLE_KEY.to_string(),
        }
    }
}

/// Shard key used for the genus-0 base case.
pub const CIRCLE_KEY: &str = "E1_S1_A1_F1";

#[derive(Clone, Debug)]
pub struct EnumerateConfig {
    pub workers: usize,
    pub chunk_size: u128,
    /// Restrict to a single edge count.
    pub edges: Option<usize>,
    /// Number of times a triple's preallocated storage may grow before the
    /// run is aborted. `None` lets it grow freely.
    pub growth_limit: Option<u32>,
    pub faults: FaultInjection,
}

impl Default for EnumerateConfig {
    fn default() -> Self {
        Self {
            workers: 1,
            chunk_size: DEFAULT_CHUNK_SIZE,
            edges: None,
            growth_limit: None,
            faults: FaultInjection::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleSummary {
    pub key: String,
    pub count: u64,
    pub candidates: u64,
    pub estimate: u128,
    pub growth_steps: u32,
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub genus: u32,
    pub entries: Vec<RgEntry>,
    pub triples: Vec<TripleSummary>,
}

/// Enumerates `R_g` for `g >= 1`, one representative per isomorphism class.
/// Output order is independent of the worker count.
pub fn enumerate_rg(g: u32, config: &EnumerateConfig) -> Result<Enumeration> {
    let mut triples = all_type_triples(g)?;
    if let Some(e) = config.edges {
        let (lo, hi) = crate::rules::edge_bounds(g)?;
        if e < lo || e > hi {
            return Err(Error::EdgesOutOfRange {
                genus: g,
                edges: e,
                lo,
                hi,
            });
        }
        triples.retain(|t| t.edges() == e);
    }
    triples.sort_by(|a, b| a.order_key().cmp(&b.order_key()));

    let searches: Vec<TripleSearch> = triples
        .iter()
        .map(|t| TripleSearch::new(t, config.faults))
        .collect();
    let chunk_size = config.chunk_size.max(1);
    let work: Vec<(usize, Range<u128>)> = searches
        .iter()
        .enumerate()
        .flat_map(|(i, s)| {
            let size = s.class.size();
            (0..size.div_ceil(chunk_size))
                .map(move |c| (i, c * chunk_size..((c + 1) * chunk_size).min(size)))
        })
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.max(1))
        .build()
        .map_err(|e| Error::Capacity {
            key: "worker pool".into(),
            reason: e.to_string(),
        })?;
    let outputs: Vec<Result<TaskOutput>> = pool.install(|| {
        work.par_iter()
            .map(|(i, range)| searches[*i].run(range.clone()))
            .collect()
    });

    let table = CharacterTable::new();
    let mut per_triple: Vec<(Vec<Hypermap>, u64, u32)> = Vec::with_capacity(triples.len());
    let mut estimates = Vec::with_capacity(triples.len());
    for t in &triples {
        let estimate = capacity_estimate(&table, t)?;
        let mut store = Vec::new();
        reserve(&mut store, estimate.min(usize::MAX as u128) as usize, t)?;
        per_triple.push((store, 0, 0));
        estimates.push(estimate);
    }
    for ((i, _), out) in work.iter().zip(outputs) {
        let out = out?;
        let (store, candidates, growth) = &mut per_triple[*i];
        *candidates += out.candidates;
        if store.len() + out.hypermaps.len() > store.capacity() {
            *growth += 1;
            if config.growth_limit.is_some_and(|limit| *growth > limit) {
                return Err(Error::Capacity {
                    key: triples[*i].key(),
                    reason: format!("storage grew more than {} times", *growth - 1),
                });
            }
            let wanted = (store.capacity() * 2).max(store.len() + out.hypermaps.len());
            reserve(store, wanted - store.len(), &triples[*i])?;
        }
        store.extend(out.hypermaps);
    }

    let mut entries = Vec::new();
    let mut summaries = Vec::with_capacity(triples.len());
    for ((t, (store, candidates, growth_steps)), estimate) in
        triples.iter().zip(per_triple).zip(estimates)
    {
        let key = t.key();
        let mut rows: Vec<(String, String, RgEntry)> = store
            .into_iter()
            .map(|h| {
                let sort = (h.sigma().to_string(), h.alpha().to_string());
                let e = RgEntry::new(h, key.clone()).expect("accepted hypermaps have no face fixed points");
                debug_assert_eq!(e.genus, g);
                (sort.0, sort.1, e)
            })
            .collect();
        rows.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
        summaries.push(TripleSummary {
            key,
            count: rows.len() as u64,
            candidates,
            estimate,
            growth_steps,
        });
        entries.extend(rows.into_iter().map(|(_, _, e)| e));
    }
    Ok(Enumeration {
        genus: g,
        entries,
        triples: summaries,
    })
}

fn reserve(store: &mut Vec<Hypermap>, additional: usize, t: &TypeTriple) -> Result<()> {
    store.try_reserve(additional).map_err(|e| Error::Capacity {
        key: t.key(),
        reason: e.to_string(),
    })
}

/// Lexicographically least `(σ, α)` among all relabelings of `h` and of its
/// color swap, found by trying every permutation of the brins.
pub fn brute_force_canonical_pair(h: &Hypermap) -> (Permutation, Permutation) {
    let n = h.brin_count();
    let swapped = h.color_swapped();
    symmetric_group(n)
        .iter()
        .flat_map(|g| {
            [
                (h.sigma().conjugate_unchecked(g), h.alpha().conjugate_unchecked(g)),
                (swapped.sigma().conjugate_unchecked(g), swapped.alpha().conjugate_unchecked(g)),
            ]
        })
        .min()
        .expect("symmetric group is nonempty")
}

/// Reference enumeration over all of `S_E × S_E` for `g+1 <= E <= max_edges`.
/// Returns the lexicographically least pair of each class, classes formed
/// by conjugation and color swap.
pub fn brute_force_rg(g: u32, max_edges: usize) -> Result<Vec<Hypermap>> {
    let (lo, hi) = crate::rules::edge_bounds(g)?;
    if max_edges > BRUTE_FORCE_LIMIT {
        let f = crate::partition::factorial(max_edges);
        return Err(Error::BruteForceTooLarge {
            max_edges,
            pairs: f * f,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut reps = Vec::new();
    for e in lo..=hi.min(max_edges) {
        let sn = symmetric_group(e);
        let mut visited: HashSet<(Permutation, Permutation)> = HashSet::new();
        for s in &sn {
            for a in &sn {
                if visited.contains(&(s.clone(), a.clone())) {
                    continue;
                }
                let Ok(h) = Hypermap::new(s.clone(), a.clone()) else {
                    continue;
                };
                if minsep_genus(&h) != Some(g) {
                    continue;
                }
                let swapped = h.color_swapped();
                let mut best: Option<(Permutation, Permutation)> = None;
                for gamma in &sn {
                    for (x, y) in [(h.sigma(), h.alpha()), (swapped.sigma(), swapped.alpha())] {
                        let pair = (x.conjugate_unchecked(gamma), y.conjugate_unchecked(gamma));
                        if best.as_ref().is_none_or(|b| pair < *b) {
                            best = Some(pair.clone());
                        }
                        visited.insert(pair);
                    }
                }
                let (s_min, a_min) = best.expect("orbit is nonempty");
                reps.push(Hypermap::new(s_min, a_min).expect("conjugate of a hypermap"));
            }
        }
    }
    reps.sort_by(|a, b| (a.brin_count(), a.sigma(), a.alpha()).cmp(&(b.brin_count(), b.sigma(), b.alpha())));
    Ok(reps)
}

/// Number of candidates the search would inspect for a triple: the size of
/// the smaller of the `A` and `F` classes.
pub fn streamed_class_size(t: &TypeTriple) -> u128 {
    streamed_class(t).1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Partition;
    use crate::rules::admissible_type_triples;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    fn run_whole(t: &TypeTriple) -> TaskOutput {
        let mut all = TaskOutput::default();
        for task in SearchTask::plan(t, u128::MAX) {
            let out = run_task(&task).unwrap();
            all.candidates += out.candidates;
            all.hypermaps.extend(out.hypermaps);
        }
        all
    }

    #[test]
    fn genus_one_tasks() {
        let t = TypeTriple::new(part(&[1, 1]), part(&[2]), part(&[2])).unwrap();
        let out = run_whole(&t);
        assert_eq!(out.hypermaps.len(), 1);
        let h = &out.hypermaps[0];
        assert!(h.sigma().is_identity());
        assert_eq!((h.alpha(), h.phi()), (&p(2, "(1,2)"), &p(2, "(1,2)")));
        assert_eq!(minsep_genus(h), Some(1));

        let t = TypeTriple::new(part(&[3]), part(&[3]), part(&[3])).unwrap();
        let out = run_whole(&t);
        assert_eq!(out.hypermaps.len(), 1);
        let c3 = p(3, "(1,2,3)");
        assert_eq!(out.hypermaps[0], Hypermap::new(c3.clone(), c3).unwrap());

        let t = TypeTriple::new(part(&[4]), part(&[4]), part(&[2, 2])).unwrap();
        let out = run_whole(&t);
        assert_eq!(out.hypermaps.len(), 1);
        let h = &out.hypermaps[0];
        assert_eq!(h.alpha(), &p(4, "(1,2,3,4)"));
        assert_eq!(h.phi(), &p(4, "(1,3)(2,4)"));
    }

    #[test]
    fn canonical_predicate_examples() {
        let c3 = p(3, "(1,2,3)");
        assert!(is_canonical(&c3, &c3, true));
        let c4 = p(4, "(1,2,3,4)");
        assert!(is_canonical(&c4, &c4, true));
        // (1,3,2,4) and its σ-conjugates form one orbit; only the least survives.
        let sigma = c4.clone();
        let orbit: Vec<Permutation> = centralizer_stream(&sigma)
            .map(|r| p(4, "(1,3,2,4)").conjugate(&r).unwrap())
            .collect();
        let min = orbit.iter().min().unwrap();
        for a in &orbit {
            assert_eq!(is_canonical(&sigma, a, false), a == min);
        }
    }

    #[test]
    fn streamed_class_prefers_smaller() {
        let t = TypeTriple::new(part(&[12]), part(&[12]), part(&[2, 2, 2, 2, 2, 2])).unwrap();
        assert_eq!(streamed_class(&t).0, StreamedClass::Phi);
        let t = TypeTriple::new(part(&[3]), part(&[3]), part(&[3])).unwrap();
        assert_eq!(streamed_class(&t).0, StreamedClass::Alpha);
    }

    #[test]
    fn chunking_does_not_change_results() {
        for t in admissible_type_triples(2, 6).unwrap() {
            let whole: HashSet<_> = run_whole(&t).hypermaps.into_iter().collect();
            let mut pieces = HashSet::new();
            for task in SearchTask::plan(&t, 7) {
                pieces.extend(run_task(&task).unwrap().hypermaps);
            }
            assert_eq!(whole, pieces, "{t}");
        }
    }

    #[test]
    fn genus_one_and_two_totals() {
        let cfg = EnumerateConfig::default();
        assert_eq!(enumerate_rg(1, &cfg).unwrap().entries.len(), 3);
        assert_eq!(enumerate_rg(2, &cfg).unwrap().entries.len(), 31);
    }

    #[test]
    fn brute_force_small() {
        assert_eq!(brute_force_rg(1, 2).unwrap().len(), 1);
        assert_eq!(brute_force_rg(1, 4).unwrap().len(), 3);
        assert!(matches!(brute_force_rg(1, 7), Err(Error::BruteForceTooLarge { .. })));
    }

    #[test]
    fn accepted_sets_match_orbit_representatives_up_to_five_brins() {
        for g in 1..=4 {
            let (lo, hi) = crate::rules::edge_bounds(g).unwrap();
            let mut entries = Vec::new();
            for e in lo..=hi.min(5) {
                let cfg = EnumerateConfig {
                    edges: Some(e),
                    ..EnumerateConfig::default()
                };
                entries.extend(enumerate_rg(g, &cfg).unwrap().entries);
            }
            let fast: HashSet<(Permutation, Permutation)> = entries
                .iter()
                .map(|e| brute_force_canonical_pair(&e.hypermap))
                .collect();
            assert_eq!(fast.len(), entries.len(), "duplicate classes at g={g}");
            let slow: HashSet<(Permutation, Permutation)> = brute_force_rg(g, 5)
                .unwrap()
                .into_iter()
                .map(|h| (h.sigma().clone(), h.alpha().clone()))
                .collect();
            assert_eq!(fast, slow, "g={g}");
        }
    }

    #[test]
    fn skipping_color_swap_creates_duplicates() {
        let cfg = EnumerateConfig {
            faults: FaultInjection { skip_color_swap: true },
            ..EnumerateConfig::default()
        };
        let entries = enumerate_rg(2, &cfg).unwrap().entries;
        assert!(entries.len() > 31);
        let classes: HashSet<_> = entries
            .iter()
            .map(|e| brute_force_canonical_pair(&e.hypermap))
            .collect();
        assert_eq!(classes.len(), 31);
    }
}
