//! Permutations of `{1..n}` in one-line form.
//!
//! Points are 1-based at the API boundary and 0-based in storage. Composition
//! applies the right operand first: `p.compose(&q)` maps `x` to `p(q(x))`.

use std::fmt;

use crate::error::{Error, Result};
use crate::partition::Partition;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // 0-based images; derived Ord is the one-line lexicographic order.
    images: Vec<u32>,
}

/// Largest degree accepted from text or JSON input.
pub const MAX_DEGREE: usize = 1 << 20;

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n as u32).collect(),
        }
    }

    /// Builds a permutation from 1-based one-line images.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("degree must be at least 1".into()));
        }
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n {
                return Err(Error::InvalidPermutation(format!("image {x} outside 1..={n}")));
            }
            if std::mem::replace(&mut seen[x - 1], true) {
                return Err(Error::InvalidPermutation(format!("image {x} repeated")));
            }
            out.push((x - 1) as u32);
        }
        Ok(Self { images: out })
    }

    /// Builds a permutation from 0-based images without validation.
    pub(crate) fn from_raw(images: Vec<u32>) -> Self {
        debug_assert!(is_bijection(&images));
        Self { images }
    }

    /// Builds a permutation of degree `n` from disjoint 1-based cycles.
    /// Points not mentioned are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::InvalidPermutation(format!("degree {n} outside 1..={MAX_DEGREE}")));
        }
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut seen = vec![false; n];
        for &x in cycles.iter().flatten() {
            if x == 0 || x > n {
                return Err(Error::InvalidPermutation(format!("point {x} outside 1..={n}")));
            }
            if std::mem::replace(&mut seen[x - 1], true) {
                return Err(Error::InvalidPermutation(format!("point {x} appears twice")));
            }
        }
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let next = cycle[(i + 1) % cycle.len()];
                images[x - 1] = (next - 1) as u32;
            }
        }
        Ok(Self { images })
    }

    /// Parses cycle notation such as `(1,3,5)(2,7,10,9)`. `()` and the empty
    /// string denote the identity.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body_start = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
            let close = body_start
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?;
            let body = body_start[..close].trim();
            if !body.is_empty() {
                let cycle = body
                    .split(',')
                    .map(|tok| {
                        tok.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad point {tok:?} in {text:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                cycles.push(cycle);
            }
            rest = body_start[close + 1..].trim_start();
        }
        Self::from_cycles(n, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `x`.
    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] as usize + 1
    }

    /// 1-based one-line form.
    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    #[inline]
    pub(crate) fn raw(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `x -> self(other(x))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        Self {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Self { images: inv }
    }

    /// `r⁻¹ ∘ self ∘ r`.
    pub fn conjugate(&self, r: &Self) -> Result<Self> {
        if self.degree() != r.degree() {
            return Err(Error::DegreeMismatch(self.degree(), r.degree()));
        }
        Ok(self.conjugate_unchecked(r))
    }

    pub(crate) fn conjugate_unchecked(&self, r: &Self) -> Self {
        let r_inv = r.inverse();
        Self {
            images: r
                .images
                .iter()
                .map(|&x| r_inv.images[self.images[x as usize] as usize])
                .collect(),
        }
    }

    /// Disjoint cycles (1-based), each rotated to start at its minimum,
    /// ordered by minimum. Fixed points are included as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths, unsorted, without allocation beyond the result.
    pub(crate) fn cycle_lengths(&self) -> Vec<u32> {
        cycle_lengths_raw(&self.images)
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::from_unsorted(self.cycle_lengths())
    }

    /// Number of cycles, counting fixed points.
    pub fn cycle_count(&self) -> usize {
        cycle_count_raw(&self.images)
    }

    pub fn is_fixed_point_free_involution(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| x as usize != i && self.images[x as usize] as usize == i)
    }

    pub fn has_fixed_point(&self) -> bool {
        self.images.iter().enumerate().any(|(i, &x)| x as usize == i)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            write!(f, "(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self, self.degree())
    }
}

fn is_bijection(images: &[u32]) -> bool {
    let mut seen = vec![false; images.len()];
    images
        .iter()
        .all(|&x| (x as usize) < images.len() && !std::mem::replace(&mut seen[x as usize], true))
}

pub(crate) fn cycle_count_raw(images: &[u32]) -> usize {
    let mut seen = [0u64; 4];
    let mut big = Vec::new();
    let n = images.len();
    let seen: &mut [u64] = if n <= 256 {
        &mut seen
    } else {
        big.resize(n.div_ceil(64), 0u64);
        &mut big
    };
    let mut count = 0;
    for start in 0..n {
        if seen[start / 64] >> (start % 64) & 1 == 1 {
            continue;
        }
        count += 1;
        let mut x = start;
        while seen[x / 64] >> (x % 64) & 1 == 0 {
            seen[x / 64] |= 1 << (x % 64);
            x = images[x] as usize;
        }
    }
    count
}

pub(crate) fn cycle_lengths_raw(images: &[u32]) -> Vec<u32> {
    let n = images.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            len += 1;
            x = images[x] as usize;
        }
        out.push(len);
    }
    out
}

/// True iff the group generated by `gens` acts transitively on `{1..n}`.
pub fn is_transitive(gens: &[&Permutation], n: usize) -> bool {
    if n == 0 {
        return false;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = n;
    for g in gens {
        debug_assert_eq!(g.degree(), n);
        for (i, &x) in g.raw().iter().enumerate() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, x as usize));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
    }
    components == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn involution_squared_is_identity() {
        let t = p(2, "(1,2)");
        assert!(t.compose(&t).unwrap().is_identity());
    }

    #[test]
    fn compose_applies_right_operand_first() {
        let a = p(3, "(1,2)");
        let b = p(3, "(2,3)");
        let ab = a.compose(&b).unwrap();
        // b sends 2 to 3, a fixes 3.
        assert_eq!(ab.apply(2), 3);
        assert_eq!(ab.apply(3), 1);
    }

    #[test]
    fn compose_degree_mismatch() {
        let err = p(2, "(1,2)").compose(&p(3, "(1,2)")).unwrap_err();
        assert!(err.to_string().contains("degree mismatch"));
    }

    #[test]
    fn figure_map_face_permutation() {
        let sigma = p(10, "(1,3,5)(4,8,6)(2,7,10,9)");
        let alpha = p(10, "(1,2)(3,4)(5,6)(7,8)(9,10)");
        let phi = sigma.compose(&alpha).unwrap().inverse();
        assert_eq!(phi, p(10, "(1,6,7)(2,10,8,3)(4,5)(9)"));
        assert_eq!(sigma.compose(&alpha).unwrap().apply(7), 6);
        assert_eq!(phi.apply(6), 7);
        assert_eq!(phi.cycle_type().parts(), &[4, 3, 2, 1]);
        assert_eq!(phi.cycle_count(), 4);
    }

    #[test]
    fn figure_hypermap_face_permutation() {
        let sigma = p(4, "(1,2,3,4)");
        let alpha = p(4, "(2,3)");
        let phi = sigma.compose(&alpha).unwrap().inverse();
        assert_eq!(phi, p(4, "(1,4,2)"));
    }

    #[test]
    fn inverses() {
        assert!(Permutation::identity(5).inverse().is_identity());
        assert_eq!(p(3, "(1,2,3)").inverse(), p(3, "(1,3,2)"));
        assert_eq!(p(4, "(1,3)(2,4)").inverse(), p(4, "(1,3)(2,4)"));
    }

    #[test]
    fn cycle_types() {
        assert_eq!(p(5, "(1,2,3)(4,5)").cycle_type().parts(), &[3, 2]);
        assert_eq!(Permutation::identity(4).cycle_type().parts(), &[1, 1, 1, 1]);
    }

    #[test]
    fn bad_point_late_in_cycle() {
        assert!(Permutation::parse_cycles(9, "(1,4,8,0,9)").is_err());
        assert!(Permutation::parse_cycles(9, "(1,4,8,10)").is_err());
    }

    #[test]
    fn conjugation() {
        let x = p(3, "(1,2)");
        assert_eq!(x.conjugate(&Permutation::identity(3)).unwrap(), x);
        assert_eq!(x.conjugate(&p(3, "(1,3)")).unwrap(), p(3, "(2,3)"));
        assert!(x.conjugate(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn display_normalizes_rotation_and_order() {
        assert_eq!(
            p(10, "(4,8,6)(2,7,10,9)(1,3,5)").to_string(),
            "(1,3,5)(2,7,10,9)(4,8,6)"
        );
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert_eq!(p(3, "()"), Permutation::identity(3));
        assert_eq!(p(3, ""), Permutation::identity(3));
        assert_eq!(p(3, "(2)"), Permutation::identity(3));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Permutation::parse_cycles(3, "(1,2").is_err());
        assert!(Permutation::parse_cycles(3, "(1,4)").is_err());
        assert!(Permutation::parse_cycles(3, "(1,2)(2,3)").is_err());
        assert!(Permutation::parse_cycles(3, "(1,x)").is_err());
        assert!(Permutation::parse_cycles(3, "1,2").is_err());
        assert!(Permutation::parse_cycles(0, "").is_err());
        assert!(Permutation::from_images(&[1, 1]).is_err());
    }

    #[test]
    fn transitivity() {
        assert!(!is_transitive(&[&p(4, "(1,2)(3,4)")], 4));
        assert!(is_transitive(&[&p(4, "(1,2,3,4)")], 4));
        let sigma = p(10, "(1,3,5)(4,8,6)(2,7,10,9)");
        let alpha = p(10, "(1,2)(3,4)(5,6)(7,8)(9,10)");
        assert!(is_transitive(&[&sigma, &alpha], 10));
    }
}
