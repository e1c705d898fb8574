//! Which hypermaps are duals of minimal separating ribbon graphs, and the
//! cycle-type triples the search has to visit.

use std::fmt;

use crate::error::{Error, Result};
use crate::map::{CombinatorialMap, Hypermap};
use crate::partition::{partitions, Partition};

/// Closed range of edge counts of ribbon graphs that are minimal separating
/// in genus `g` but not below.
pub fn edge_bounds(g: u32) -> Result<(usize, usize)> {
    if g < 1 {
        return Err(Error::GenusZero);
    }
    Ok((g as usize + 1, 4 * g as usize))
}

/// Least genus in which the ribbon graph dual to `h` is minimal separating,
/// or `None` when `φ` has a fixed point (a degree-2 vertex).
pub fn minsep_genus(h: &Hypermap) -> Option<u32> {
    if h.phi().has_fixed_point() {
        return None;
    }
    let twice = h.brin_count() + h.sigma().cycle_count() + h.alpha().cycle_count() - h.phi().cycle_count();
    debug_assert!(twice.is_multiple_of(2) && twice >= 4);
    Some((twice / 2 - 1) as u32)
}

/// Whether the ribbon graph encoded by `m` belongs to `R_g`.
pub fn check_map_in_rg(m: &CombinatorialMap, g: u32) -> bool {
    if m.dual().vertex_bipartition().is_none() {
        return false;
    }
    if m.sigma().cycle_lengths().contains(&2) {
        return false;
    }
    let rhs = m.edge_count() as i64 + m.face_count() as i64 - m.vertex_count() as i64;
    rhs == 2 * (g as i64 + 1)
}

/// Cycle types `(S, A, F)` of `(σ, α, φ)` on `E` brins.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TypeTriple {
    pub sigma: Partition,
    pub alpha: Partition,
    pub phi: Partition,
}

impl TypeTriple {
    pub fn new(sigma: Partition, alpha: Partition, phi: Partition) -> Result<Self> {
        let e = sigma.total();
        if alpha.total() != e || phi.total() != e {
            return Err(Error::InvalidPartition(format!(
                "totals differ: {sigma} {alpha} {phi}"
            )));
        }
        if phi.has_part(1) {
            return Err(Error::InvalidPartition(format!("{phi} has a part equal to 1")));
        }
        if sigma > alpha {
            return Err(Error::InvalidPartition(format!("{sigma} comes after {alpha}")));
        }
        Ok(Self { sigma, alpha, phi })
    }

    pub fn edges(&self) -> usize {
        self.sigma.total()
    }

    /// Genus forced by the three cycle counts.
    pub fn genus(&self) -> u32 {
        let twice = self.edges() + self.sigma.len() + self.alpha.len() - self.phi.len();
        (twice / 2 - 1) as u32
    }

    /// `E<edges>_S<parts>_A<parts>_F<parts>`, e.g. `E4_S4_A4_F2-2`.
    pub fn key(&self) -> String {
        format!(
            "E{}_S{}_A{}_F{}",
            self.edges(),
            self.sigma.key(),
            self.alpha.key(),
            self.phi.key()
        )
    }

    pub fn parse_key(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad triple key {text:?}"));
        let mut fields = text.split('_');
        let mut field = |prefix: char| -> Result<&str> {
            fields.next().and_then(|f| f.strip_prefix(prefix)).ok_or_else(bad)
        };
        let edges: usize = field('E')?.parse().map_err(|_| bad())?;
        let sigma = Partition::parse_key(field('S')?)?;
        let alpha = Partition::parse_key(field('A')?)?;
        let phi = Partition::parse_key(field('F')?)?;
        if fields.next().is_some() || sigma.total() != edges {
            return Err(bad());
        }
        Self::new(sigma, alpha, phi)
    }

    /// Sort key: edges ascending, then each partition descending.
    pub(crate) fn order_key(&self) -> (usize, std::cmp::Reverse<(&Partition, &Partition, &Partition)>) {
        (self.edges(), std::cmp::Reverse((&self.sigma, &self.alpha, &self.phi)))
    }
}

impl fmt::Display for TypeTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

/// All cycle-type triples on `edges` brins that can realize a hypermap of
/// minimal-separating genus `g`.
pub fn admissible_type_triples(g: u32, edges: usize) -> Result<Vec<TypeTriple>> {
    let (lo, hi) = edge_bounds(g)?;
    if edges < lo || edges > hi {
        return Err(Error::EdgesOutOfRange {
            genus: g,
            edges,
            lo,
            hi,
        });
    }
    let all = partitions(edges, 1);
    let faces = partitions(edges, 2);
    let target = 2 * g as usize + 2;
    let mut out = Vec::new();
    for s in &all {
        for a in all.iter().filter(|a| s <= *a) {
            for f in &faces {
                let counts = s.len() + a.len();
                if counts + edges != target + f.len() {
                    continue;
                }
                if counts + f.len() > edges + 2 {
                    continue;
                }
                out.push(TypeTriple {
                    sigma: s.clone(),
                    alpha: a.clone(),
                    phi: f.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// Admissible triples for every edge count in range, in search order.
pub fn all_type_triples(g: u32) -> Result<Vec<TypeTriple>> {
    let (lo, hi) = edge_bounds(g)?;
    let mut out = Vec::new();
    for e in lo..=hi {
        out.extend(admissible_type_triples(g, e)?);
    }
    Ok(out)
}
