//! Combinatorial maps, hypermaps, and the correspondence between hypermaps
//! and vertex-2-colored bipartite maps.
//!
//! Every triple `(σ, α, φ)` here satisfies `σ ∘ α ∘ φ = id` with composition
//! applying the rightmost factor first, i.e. `φ = (σ ∘ α)⁻¹`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::perm::{is_transitive, Permutation};

fn face_of(sigma: &Permutation, alpha: &Permutation) -> Permutation {
    sigma.compose_unchecked(alpha).inverse()
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CombinatorialMap {
    sigma: Permutation,
    alpha: Permutation,
    phi: Permutation,
}

impl CombinatorialMap {
    /// Builds the map with vertex rotation `sigma` and edge involution
    /// `alpha`; the face permutation is derived.
    pub fn new(sigma: Permutation, alpha: Permutation) -> Result<Self> {
        if sigma.degree() != alpha.degree() {
            return Err(Error::DegreeMismatch(sigma.degree(), alpha.degree()));
        }
        let phi = face_of(&sigma, &alpha);
        Self::from_triple(sigma, alpha, phi)
    }

    pub fn from_triple(sigma: Permutation, alpha: Permutation, phi: Permutation) -> Result<Self> {
        let n = sigma.degree();
        if alpha.degree() != n || phi.degree() != n {
            return Err(Error::DegreeMismatch(n, alpha.degree().max(phi.degree())));
        }
        if !alpha.is_fixed_point_free_involution() {
            return Err(Error::InvalidMap("alpha is not a fixed-point-free involution".into()));
        }
        if !sigma.compose_unchecked(&alpha.compose_unchecked(&phi)).is_identity() {
            return Err(Error::InvalidMap("sigma∘alpha∘phi is not the identity".into()));
        }
        if !is_transitive(&[&sigma, &alpha], n) {
            return Err(Error::InvalidMap("<sigma, alpha> is not transitive".into()));
        }
        Ok(Self { sigma, alpha, phi })
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn alpha(&self) -> &Permutation {
        &self.alpha
    }

    pub fn phi(&self) -> &Permutation {
        &self.phi
    }

    /// Number of edges (half the number of edge ends).
    pub fn edge_count(&self) -> usize {
        self.sigma.degree() / 2
    }

    pub fn vertex_count(&self) -> usize {
        self.sigma.cycle_count()
    }

    pub fn face_count(&self) -> usize {
        self.phi.cycle_count()
    }

    /// Genus of the surface the map is cellularly embedded in:
    /// `2 - 2g = V - E + F`.
    pub fn genus(&self) -> u32 {
        let chi = self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64;
        debug_assert!(chi % 2 == 0 && chi <= 2);
        ((2 - chi) / 2) as u32
    }

    /// The dual map `(φ, α, σ)`.
    pub fn dual(&self) -> Self {
        Self {
            sigma: self.phi.clone(),
            alpha: self.alpha.clone(),
            phi: self.sigma.clone(),
        }
    }

    /// Two-colors the vertices so every edge joins opposite colors, if
    /// possible. The vertex containing edge end 1 is black.
    pub fn vertex_bipartition(&self) -> Option<VertexColoring> {
        let n = self.sigma.degree();
        let mut vertex_of = vec![usize::MAX; n];
        let mut members: Vec<Vec<usize>> = Vec::new();
        for (v, cycle) in self.sigma.cycles().into_iter().enumerate() {
            for &x in &cycle {
                vertex_of[x - 1] = v;
            }
            members.push(cycle);
        }
        let mut color: Vec<Option<Color>> = vec![None; members.len()];
        let mut queue = VecDeque::new();
        color[0] = Some(Color::Black);
        queue.push_back(0usize);
        while let Some(v) = queue.pop_front() {
            let c = color[v].expect("queued vertices are colored");
            for &x in &members[v] {
                let w = vertex_of[self.alpha.apply(x) - 1];
                match color[w] {
                    None => {
                        color[w] = Some(c.other());
                        queue.push_back(w);
                    }
                    Some(cw) if cw == c => return None,
                    Some(_) => {}
                }
            }
        }
        let per_point = (0..n)
            .map(|i| color[vertex_of[i]].expect("connected map"))
            .collect();
        Some(VertexColoring { per_point })
    }

    /// Whether the faces can be two-colored so every edge separates colors.
    pub fn face_two_colorable(&self) -> bool {
        self.dual().vertex_bipartition().is_some()
    }

    /// Vertices are σ-cycles (numbered by their smallest edge end), one edge
    /// per α-pair.
    pub fn underlying_multigraph(&self) -> MultiGraph {
        let n = self.sigma.degree();
        let mut vertex_of = vec![0u32; n];
        let cycles = self.sigma.cycles();
        for (v, cycle) in cycles.iter().enumerate() {
            for &x in cycle {
                vertex_of[x - 1] = v as u32 + 1;
            }
        }
        let edges = (1..=n)
            .filter(|&x| x < self.alpha.apply(x))
            .map(|x| (vertex_of[x - 1], vertex_of[self.alpha.apply(x) - 1]))
            .collect();
        MultiGraph::new(cycles.len(), edges).expect("endpoints are valid vertices")
    }

    /// Whether some relabeling `ρ` carries `self` onto `other`.
    ///
    /// Transitivity means `ρ` is fixed by the image of point 1, so each of
    /// the `2n` candidates is propagated and checked.
    pub fn is_isomorphic(&self, other: &Self) -> bool {
        is_isomorphic_pair((&self.sigma, &self.alpha), (&other.sigma, &other.alpha))
    }
}

/// Isomorphism of transitive permutation pairs by propagation from point 1.
pub(crate) fn is_isomorphic_pair(a: (&Permutation, &Permutation), b: (&Permutation, &Permutation)) -> bool {
    let n = a.0.degree();
    if b.0.degree() != n || a.0.cycle_type() != b.0.cycle_type() || a.1.cycle_type() != b.1.cycle_type() {
        return false;
    }
    let gens_a = [a.0.raw(), a.1.raw()];
    let gens_b = [b.0.raw(), b.1.raw()];
    'target: for target in 0..n as u32 {
        let mut map = vec![u32::MAX; n];
        map[0] = target;
        let mut stack = vec![0u32];
        while let Some(x) = stack.pop() {
            let y = map[x as usize];
            for (ga, gb) in gens_a.iter().zip(&gens_b) {
                let (xa, yb) = (ga[x as usize], gb[y as usize]);
                match map[xa as usize] {
                    u32::MAX => {
                        map[xa as usize] = yb;
                        stack.push(xa);
                    }
                    z if z != yb => continue 'target,
                    _ => {}
                }
            }
        }
        let mut hit = vec![false; n];
        if map.iter().all(|&y| y != u32::MAX && !std::mem::replace(&mut hit[y as usize], true)) {
            return true;
        }
    }
    false
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn other(self) -> Self {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

/// Vertex colors of a map, stored per edge end (an end takes its vertex's color).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexColoring {
    per_point: Vec<Color>,
}

impl VertexColoring {
    pub fn from_points(per_point: Vec<Color>) -> Self {
        Self { per_point }
    }

    /// Color of the vertex containing the 1-based end `x`.
    pub fn color(&self, x: usize) -> Color {
        self.per_point[x - 1]
    }

    pub fn swapped(&self) -> Self {
        Self {
            per_point: self.per_point.iter().map(|c| c.other()).collect(),
        }
    }

    /// Number of vertices (σ-cycles) of each color.
    pub fn vertex_counts(&self, m: &CombinatorialMap) -> (usize, usize) {
        m.sigma()
            .cycles()
            .iter()
            .fold((0, 0), |(b, w), c| match self.color(c[0]) {
                Color::Black => (b + 1, w),
                Color::White => (b, w + 1),
            })
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Hypermap {
    sigma: Permutation,
    alpha: Permutation,
    phi: Permutation,
}

impl Hypermap {
    /// Builds the hypermap with hypervertices `sigma` and hyperedges `alpha`.
    pub fn new(sigma: Permutation, alpha: Permutation) -> Result<Self> {
        if sigma.degree() != alpha.degree() {
            return Err(Error::DegreeMismatch(sigma.degree(), alpha.degree()));
        }
        let phi = face_of(&sigma, &alpha);
        Self::from_triple(sigma, alpha, phi)
    }

    pub fn from_triple(sigma: Permutation, alpha: Permutation, phi: Permutation) -> Result<Self> {
        let n = sigma.degree();
        if alpha.degree() != n || phi.degree() != n {
            return Err(Error::DegreeMismatch(n, alpha.degree().max(phi.degree())));
        }
        if !sigma.compose_unchecked(&alpha.compose_unchecked(&phi)).is_identity() {
            return Err(Error::InvalidHypermap("sigma∘alpha∘phi is not the identity".into()));
        }
        if !is_transitive(&[&sigma, &alpha, &phi], n) {
            return Err(Error::InvalidHypermap("not transitive".into()));
        }
        Ok(Self { sigma, alpha, phi })
    }

    pub(crate) fn from_parts_unchecked(sigma: Permutation, alpha: Permutation, phi: Permutation) -> Self {
        Self { sigma, alpha, phi }
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn alpha(&self) -> &Permutation {
        &self.alpha
    }

    pub fn phi(&self) -> &Permutation {
        &self.phi
    }

    pub fn brin_count(&self) -> usize {
        self.sigma.degree()
    }

    /// `2 - 2g = c(σ) + c(α) - n + c(φ)`.
    pub fn genus(&self) -> u32 {
        let chi = self.sigma.cycle_count() as i64 + self.alpha.cycle_count() as i64
            - self.brin_count() as i64
            + self.phi.cycle_count() as i64;
        debug_assert!(chi % 2 == 0 && chi <= 2);
        ((2 - chi) / 2) as u32
    }

    /// The same bipartite map with the vertex colors exchanged.
    pub fn color_swapped(&self) -> Self {
        Self {
            sigma: self.alpha.clone(),
            alpha: self.sigma.clone(),
            phi: face_of(&self.alpha, &self.sigma),
        }
    }

    /// The bipartite map on `2n` ends: brin `i` becomes the edge with black
    /// end `2i-1` and white end `2i`. Black vertices are the cycles of σ,
    /// white vertices the cycles of α.
    pub fn to_bipartite_map(&self) -> (CombinatorialMap, VertexColoring) {
        let n = self.brin_count();
        let mut sigma = vec![0u32; 2 * n];
        let mut alpha = vec![0u32; 2 * n];
        let mut colors = Vec::with_capacity(2 * n);
        for i in 0..n {
            let (black, white) = (2 * i, 2 * i + 1);
            sigma[black] = 2 * self.sigma.raw()[i];
            sigma[white] = 2 * self.alpha.raw()[i] + 1;
            alpha[black] = white as u32;
            alpha[white] = black as u32;
            colors.push(Color::Black);
            colors.push(Color::White);
        }
        let sigma = Permutation::from_raw(sigma);
        let alpha = Permutation::from_raw(alpha);
        let phi = face_of(&sigma, &alpha);
        (
            CombinatorialMap { sigma, alpha, phi },
            VertexColoring { per_point: colors },
        )
    }

    /// Recovers the hypermap of a vertex-2-colored bipartite map. Edge `i`
    /// is the α-pair with the `i`-th smallest minimum end.
    pub fn from_bipartite_map(m: &CombinatorialMap, coloring: &VertexColoring) -> Result<Self> {
        let ends = m.sigma().degree();
        if coloring.per_point.len() != ends {
            return Err(Error::DegreeMismatch(ends, coloring.per_point.len()));
        }
        let mut edge_of = vec![usize::MAX; ends];
        let mut black_end = Vec::with_capacity(ends / 2);
        let mut white_end = Vec::with_capacity(ends / 2);
        for x in 1..=ends {
            let y = m.alpha().apply(x);
            if x < y {
                let (b, w) = match (coloring.color(x), coloring.color(y)) {
                    (Color::Black, Color::White) => (x, y),
                    (Color::White, Color::Black) => (y, x),
                    _ => return Err(Error::NotBipartite),
                };
                edge_of[x - 1] = black_end.len();
                edge_of[y - 1] = black_end.len();
                black_end.push(b);
                white_end.push(w);
            }
        }
        // σ must keep every end inside its own vertex's color class.
        if (1..=ends).any(|x| coloring.color(x) != coloring.color(m.sigma().apply(x))) {
            return Err(Error::NotBipartite);
        }
        let induced = |ends_of: &[usize]| -> Vec<u32> {
            ends_of
                .iter()
                .map(|&e| edge_of[m.sigma().apply(e) - 1] as u32)
                .collect()
        };
        let sigma = Permutation::from_raw(induced(&black_end));
        let alpha = Permutation::from_raw(induced(&white_end));
        let phi = face_of(&sigma, &alpha);
        Ok(Self { sigma, alpha, phi })
    }
}

/// Free-function forms mirroring the operations list.
pub fn map_from_hypermap(h: &Hypermap) -> (CombinatorialMap, VertexColoring) {
    h.to_bipartite_map()
}

pub fn hypermap_from_map(m: &CombinatorialMap, coloring: &VertexColoring) -> Result<Hypermap> {
    Hypermap::from_bipartite_map(m, coloring)
}
