//! Underlying multigraphs, their canonical labeling, and the reduction from
//! ribbon graphs to homeomorphism classes of graphs.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::class::binomial;
use crate::enumerate::RgEntry;
use crate::error::{Error, Result};

/// A multigraph on vertices `1..=vertex_count`; loops and parallel edges allowed.
/// Edges are stored as `(u, v)` with `u <= v`, sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct MultiGraph {
    #[serde(rename = "vertices")]
    vertex_count: usize,
    edges: Vec<(u32, u32)>,
}

impl MultiGraph {
    pub fn new(vertex_count: usize, edges: Vec<(u32, u32)>) -> Result<Self> {
        if vertex_count > crate::perm::MAX_DEGREE {
            return Err(Error::Parse(format!("{vertex_count} vertices is too many")));
        }
        let mut edges: Vec<(u32, u32)> = edges
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        if let Some(&(u, v)) = edges
            .iter()
            .find(|&&(u, v)| u == 0 || v as usize > vertex_count)
        {
            return Err(Error::Parse(format!(
                "edge ({u},{v}) outside vertices 1..={vertex_count}"
            )));
        }
        edges.sort_unstable();
        Ok(Self {
            vertex_count,
            edges,
        })
    }

    /// The circle: one vertex with one loop.
    pub fn circle() -> Self {
        Self {
            vertex_count: 1,
            edges: vec![(1, 1)],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|(u, v)| u == v).count()
    }

    /// Degrees with loops counted twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &(u, v) in &self.edges {
            deg[u as usize - 1] += 1;
            deg[v as usize - 1] += 1;
        }
        deg
    }

    fn adjacency(&self) -> Vec<Vec<u32>> {
        let n = self.vertex_count;
        let mut adj = vec![vec![0u32; n]; n];
        for &(u, v) in &self.edges {
            let (u, v) = (u as usize - 1, v as usize - 1);
            adj[u][v] += 1;
            if u != v {
                adj[v][u] += 1;
            }
        }
        adj
    }

    /// Relabels vertices so that `order[k]` becomes vertex `k + 1`.
    fn relabel(&self, order: &[usize]) -> Self {
        let mut new_of = vec![0u32; self.vertex_count];
        for (k, &v) in order.iter().enumerate() {
            new_of[v] = k as u32 + 1;
        }
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| (new_of[u as usize - 1], new_of[v as usize - 1]))
            .collect();
        Self::new(self.vertex_count, edges).expect("relabeling keeps endpoints valid")
    }

    /// A relabeled copy that is identical for all isomorphic inputs.
    pub fn canonical_form(&self) -> Self {
        let n = self.vertex_count;
        if n == 0 {
            return self.clone();
        }
        let adj = self.adjacency();
        let initial: Vec<u32> = {
            let keys: Vec<(u32, u32)> = (0..n)
                .map(|v| (adj[v].iter().sum::<u32>() + adj[v][v], adj[v][v]))
                .collect();
            rank_keys(&keys)
        };
        let mut best: Option<(Vec<u32>, Vec<usize>)> = None;
        search(&adj, refine(&adj, initial), &mut best);
        let (_, order) = best.expect("search reaches at least one leaf");
        self.relabel(&order)
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count
            && self.edges.len() == other.edges.len()
            && self.canonical_form() == other.canonical_form()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }

    pub fn from_json(line: &str) -> Result<Self> {
        let raw: MultiGraph = serde_json::from_str(line).map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(raw.vertex_count, raw.edges)
    }
}

pub fn graph_isomorphic(a: &MultiGraph, b: &MultiGraph) -> bool {
    a.is_isomorphic(b)
}

/// Dense ranks of `keys`, ordered by key value.
fn rank_keys<K: Ord + Clone>(keys: &[K]) -> Vec<u32> {
    let distinct: BTreeSet<K> = keys.iter().cloned().collect();
    let index: Vec<K> = distinct.into_iter().collect();
    keys.iter()
        .map(|k| index.binary_search(k).expect("key present") as u32)
        .collect()
}

/// Color refinement: split classes by the multiset of (neighbor class,
/// multiplicity) until stable. Class order is preserved.
fn refine(adj: &[Vec<u32>], mut colors: Vec<u32>) -> Vec<u32> {
    let n = adj.len();
    loop {
        let count = colors.iter().collect::<BTreeSet<_>>().len();
        let keys: Vec<(u32, Vec<(u32, u32)>)> = (0..n)
            .map(|v| {
                let mut sig: Vec<(u32, u32)> = (0..n)
                    .filter(|&u| u != v && adj[v][u] > 0)
                    .map(|u| (colors[u], adj[v][u]))
                    .collect();
                sig.sort_unstable();
                (colors[v], sig)
            })
            .collect();
        let next = rank_keys(&keys);
        if next.iter().collect::<BTreeSet<_>>().len() == count {
            return next;
        }
        colors = next;
    }
}

fn search(adj: &[Vec<u32>], colors: Vec<u32>, best: &mut Option<(Vec<u32>, Vec<usize>)>) {
    let n = adj.len();
    let mut cell_sizes = HashMap::new();
    for &c in &colors {
        *cell_sizes.entry(c).or_insert(0usize) += 1;
    }
    let target = (0..n as u32).find(|c| cell_sizes.get(c).copied().unwrap_or(0) > 1);
    match target {
        None => {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&v| colors[v]);
            let code: Vec<u32> = (0..n)
                .flat_map(|i| (i..n).map(move |j| (i, j)))
                .map(|(i, j)| adj[order[i]][order[j]])
                .collect();
            if best.as_ref().is_none_or(|(b, _)| code < *b) {
                *best = Some((code, order));
            }
        }
        Some(cell) => {
            for v in (0..n).filter(|&v| colors[v] == cell) {
                let individualized: Vec<u32> = (0..n)
                    .map(|u| {
                        let c = colors[u];
                        if c > cell || (c == cell && u != v) {
                            c + 1
                        } else {
                            c
                        }
                    })
                    .collect();
                search(adj, refine(adj, individualized), best);
            }
        }
    }
}

/// The underlying graph of the ribbon graph whose dual bipartite map
/// corresponds to the entry's hypermap: vertices are hyperfaces, edges are
/// brins.
pub fn graph_of_entry(e: &RgEntry) -> MultiGraph {
    let (bipartite, _) = e.hypermap.to_bipartite_map();
    bipartite.dual().underlying_multigraph()
}

/// Canonical representatives of `C_0..=C_G`, given `R_1..=R_G` at indices
/// `1..`. Index 0 of `r_lists` is ignored; `C_0` is the circle.
pub fn reduce_to_cg(r_lists: &[Vec<RgEntry>]) -> Result<Vec<Vec<MultiGraph>>> {
    if r_lists.is_empty() {
        return Err(Error::MissingGenus(0));
    }
    let mut seen: BTreeSet<MultiGraph> = BTreeSet::new();
    let circle = MultiGraph::circle();
    seen.insert(circle.clone());
    let mut out = vec![vec![circle]];
    for entries in &r_lists[1..] {
        let forms: BTreeSet<MultiGraph> = entries
            .par_iter()
            .map(|e| graph_of_entry(e).canonical_form())
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        let fresh: Vec<MultiGraph> = forms.into_iter().filter(|g| !seen.contains(g)).collect();
        seen.extend(fresh.iter().cloned());
        out.push(fresh);
    }
    Ok(out)
}

/// Number of multisets of size `k` drawn from `n` kinds.
pub fn multichoose(n: u128, k: u128) -> u128 {
    if k == 0 {
        return 1;
    }
    if n == 0 {
        return 0;
    }
    binomial((n + k - 1) as usize, k as usize)
}

/// `|L_g|` from `|C_0|..=|C_g|`: sum over `(k_0..k_g)` with
/// `Σ (i+1)·k_i = g+1` of `∏ multichoose(|C_i|, k_i)`.
pub fn count_lg(c_sizes: &[u64]) -> u128 {
    fn rec(c_sizes: &[u64], i: usize, weight_left: usize) -> u128 {
        if weight_left == 0 {
            return 1;
        }
        if i == 0 {
            // components of C_0 carry weight 1, so k_0 is forced
            return multichoose(c_sizes[0] as u128, weight_left as u128);
        }
        let w = i + 1;
        (0..=weight_left / w)
            .map(|k| multichoose(c_sizes[i] as u128, k as u128) * rec(c_sizes, i - 1, weight_left - k * w))
            .sum()
    }
    if c_sizes.is_empty() {
        return 0;
    }
    let g = c_sizes.len() - 1;
    rec(c_sizes, g, g + 1)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GenusRow {
    pub genus: u32,
    #[serde(rename = "R")]
    pub r: u64,
    #[serde(rename = "C")]
    pub c: u64,
    #[serde(rename = "L")]
    pub l: u128,
    #[serde(rename = "M")]
    pub m: u128,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GenusTable {
    pub rows: Vec<GenusRow>,
}

impl GenusTable {
    /// `r_sizes` and `c_sizes` are indexed by genus from 0.
    pub fn build(r_sizes: &[u64], c_sizes: &[u64]) -> Result<Self> {
        if r_sizes.len() != c_sizes.len() {
            return Err(Error::MissingGenus(r_sizes.len().min(c_sizes.len()) as u32));
        }
        let mut rows: Vec<GenusRow> = Vec::with_capacity(r_sizes.len());
        for g in 0..r_sizes.len() {
            let l = count_lg(&c_sizes[..=g]);
            let m = rows.last().map_or(1, |prev| prev.m + l);
            rows.push(GenusRow {
                genus: g as u32,
                r: r_sizes[g],
                c: c_sizes[g],
                l,
                m,
            });
        }
        Ok(Self { rows })
    }

    /// `genus,R,C,L,M` with one row per genus.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        if self.rows.is_empty() {
            w.write_record(["genus", "R", "C", "L", "M"]).expect("in-memory write");
        }
        for r in &self.rows {
            w.serialize(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is UTF-8")
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let header = r.headers().map_err(|e| Error::Parse(e.to_string()))?;
        if header != vec!["genus", "R", "C", "L", "M"] {
            return Err(Error::Parse(format!("unexpected table header {header:?}")));
        }
        let rows = r
            .deserialize()
            .collect::<std::result::Result<Vec<GenusRow>, _>>()
            .map_err(|e| Error::Parse(e.to_string()))?;
        Ok(Self { rows })
    }
}
