//! Integer partitions as cycle types.

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A non-increasing sequence of positive parts.
///
/// The derived order compares part sequences left to right, so `[2] > [1,1]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Accepts parts in non-increasing order only.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("empty partition".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("zero part".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not non-increasing")));
        }
        Ok(Self { parts })
    }

    pub(crate) fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn ones(n: usize) -> Self {
        Self {
            parts: vec![1; n],
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// Number of parts, `c(·)` of any permutation of this type.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn has_part(&self, part: u32) -> bool {
        self.parts.contains(&part)
    }

    /// `(length, multiplicity)` pairs in descending length order.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((l, m)) if *l == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `∏ l^m · m!`, the order of the centralizer of any permutation of this type.
    pub fn centralizer_order(&self) -> u128 {
        self.multiplicities()
            .into_iter()
            .map(|(l, m)| (l as u128).pow(m) * factorial(m as usize))
            .product()
    }

    /// Number of permutations of degree `total()` with this cycle type.
    pub fn class_size(&self) -> u128 {
        factorial(self.total()) / self.centralizer_order()
    }

    /// Cycles on consecutive blocks of points in part order:
    /// `[3,2]` gives `(1,2,3)(4,5)`.
    pub fn canonical_permutation(&self) -> Permutation {
        let n = self.total();
        let mut images = vec![0u32; n];
        let mut start = 0usize;
        for &len in &self.parts {
            let len = len as usize;
            for j in 0..len {
                images[start + j] = (start + (j + 1) % len) as u32;
            }
            start += len;
        }
        Permutation::from_raw(images)
    }

    /// Dash-separated parts, e.g. `2-2`.
    pub fn key(&self) -> String {
        self.parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join("-")
    }

    pub fn parse_key(text: &str) -> Result<Self> {
        let parts = text
            .split('-')
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad part {t:?} in {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// All partitions of `n` with every part at least `min_part`, in descending
/// lexicographic order.
pub fn partitions(n: usize, min_part: usize) -> Vec<Partition> {
    let min_part = min_part.max(1);
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(rest: usize, max: usize, min: usize, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition {
                parts: current.clone(),
            });
            return;
        }
        for part in (min..=max.min(rest)).rev() {
            current.push(part as u32);
            rec(rest - part, part, min, current, out);
            current.pop();
        }
    }
    if n > 0 {
        rec(n, n, min_part, &mut current, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn small_partition_lists() {
        assert_eq!(partitions(4, 2), vec![part(&[4]), part(&[2, 2])]);
        assert_eq!(
            partitions(3, 1),
            vec![part(&[3]), part(&[2, 1]), part(&[1, 1, 1])]
        );
    }

    /// Counts partitions by the standard coin-change recurrence.
    fn partition_count(n: usize) -> u64 {
        let mut ways = vec![0u64; n + 1];
        ways[0] = 1;
        for part in 1..=n {
            for total in part..=n {
                ways[total] += ways[total - part];
            }
        }
        ways[n]
    }

    #[test]
    fn partition_counts_match_recurrence() {
        assert_eq!(partitions(10, 1).len(), 42);
        for n in 1..=15 {
            assert_eq!(partitions(n, 1).len() as u64, partition_count(n));
        }
    }

    #[test]
    fn partitions_are_descending_lex() {
        let all = partitions(9, 1);
        assert!(all.windows(2).all(|w| w[0] > w[1]));
        assert!(partitions(8, 2).iter().all(|p| !p.has_part(1)));
    }

    #[test]
    fn ordering_puts_longer_first_part_later() {
        assert!(part(&[2]) > part(&[1, 1]));
        assert!(part(&[3, 1]) > part(&[2, 2]));
    }

    #[test]
    fn canonical_representatives() {
        assert_eq!(part(&[3, 2]).canonical_permutation().to_string(), "(1,2,3)(4,5)");
        assert!(part(&[1, 1]).canonical_permutation().is_identity());
        assert_eq!(part(&[4]).canonical_permutation().to_string(), "(1,2,3,4)");
        for t in partitions(7, 1) {
            assert_eq!(t.canonical_permutation().cycle_type(), t);
        }
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for n in 1..=10 {
            let sum: u128 = partitions(n, 1).iter().map(|t| t.class_size()).sum();
            assert_eq!(sum, factorial(n));
        }
        assert_eq!(part(&[2, 1]).class_size(), 3);
        assert_eq!(Partition::ones(6).class_size(), 1);
        for n in 1..=7u32 {
            assert_eq!(part(&[n]).class_size(), factorial(n as usize - 1));
        }
    }

    #[test]
    fn key_round_trip() {
        let t = part(&[4, 2, 2]);
        assert_eq!(t.key(), "4-2-2");
        assert_eq!(Partition::parse_key("4-2-2").unwrap(), t);
        assert!(Partition::parse_key("2-4").is_err());
        assert!(Partition::parse_key("").is_err());
        assert!(Partition::parse_key("0").is_err());
    }
}
