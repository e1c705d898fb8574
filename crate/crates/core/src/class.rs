//! Ranked iteration over a conjugacy class of `S_n` and over the centralizer
//! of a single permutation.
//!
//! A class member is encoded by a mixed-radix rank. For each distinct cycle
//! length `l` with multiplicity `m`, taken in descending order of `l`, the
//! rank carries one digit choosing the `l·m` supporting points among those
//! still free (lexicographic combination order), followed, for each of the
//! `m` cycles, by `l - 1` digits picking the cycle's successors in order from
//! the group's pool. Each cycle starts at the smallest point left in the
//! pool, which makes every permutation of the class appear exactly once.
//! Rank ranges can therefore be split freely between workers.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::perm::Permutation;

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    cycle_type: Partition,
    groups: Vec<(usize, usize)>,
    radices: Vec<u128>,
    size: u128,
}

impl ConjugacyClass {
    pub fn new(cycle_type: Partition) -> Self {
        let n = cycle_type.total();
        let groups: Vec<(usize, usize)> = cycle_type
            .multiplicities()
            .into_iter()
            .map(|(l, m)| (l as usize, m as usize))
            .collect();
        let mut radices = Vec::new();
        let mut free = n;
        for &(l, m) in &groups {
            radices.push(binomial(free, l * m));
            free -= l * m;
            let mut pool = l * m;
            for _ in 0..m {
                pool -= 1;
                for _ in 1..l {
                    radices.push(pool as u128);
                    pool -= 1;
                }
            }
        }
        let size = radices.iter().product();
        debug_assert_eq!(size, cycle_type.class_size());
        Self {
            cycle_type,
            groups,
            radices,
            size,
        }
    }

    pub fn cycle_type(&self) -> &Partition {
        &self.cycle_type
    }

    pub fn size(&self) -> u128 {
        self.size
    }

    fn digits_of(&self, mut rank: u128) -> Vec<u128> {
        let mut digits = vec![0u128; self.radices.len()];
        for (d, &r) in digits.iter_mut().zip(&self.radices).rev() {
            *d = rank % r;
            rank /= r;
        }
        digits
    }

    fn decode(&self, digits: &[u128]) -> Permutation {
        let n = self.cycle_type.total();
        let mut images = vec![0u32; n];
        let mut free: Vec<u32> = (0..n as u32).collect();
        let mut digit = digits.iter().copied();
        for &(l, m) in &self.groups {
            let mut pool = take_combination(&mut free, l * m, digit.next().unwrap_or(0));
            for _ in 0..m {
                let head = pool.remove(0);
                let mut prev = head;
                for _ in 1..l {
                    let idx = digit.next().unwrap_or(0) as usize;
                    let next = pool.remove(idx);
                    images[prev as usize] = next;
                    prev = next;
                }
                images[prev as usize] = head;
            }
        }
        Permutation::from_raw(images)
    }

    pub fn unrank(&self, rank: u128) -> Result<Permutation> {
        if rank >= self.size {
            return Err(Error::RangeOutOfBounds {
                start: rank,
                end: rank + 1,
                size: self.size,
            });
        }
        Ok(self.decode(&self.digits_of(rank)))
    }

    /// Streams the class members whose ranks fall in `range`.
    pub fn iter_range(&self, range: Range<u128>) -> Result<ClassIter<'_>> {
        if range.start > range.end || range.end > self.size {
            return Err(Error::RangeOutOfBounds {
                start: range.start,
                end: range.end,
                size: self.size,
            });
        }
        Ok(ClassIter {
            class: self,
            digits: self.digits_of(range.start.min(self.size.saturating_sub(1))),
            remaining: range.end - range.start,
        })
    }

    pub fn iter(&self) -> ClassIter<'_> {
        self.iter_range(0..self.size).expect("full range is in bounds")
    }
}

/// Removes and returns the `rank`-th `k`-subset of `free` in lexicographic
/// order of positions.
fn take_combination(free: &mut Vec<u32>, k: usize, mut rank: u128) -> Vec<u32> {
    let n = free.len();
    let mut picked = Vec::with_capacity(k);
    let mut pos = 0usize;
    for j in 0..k {
        loop {
            let count = binomial(n - pos - 1, k - j - 1);
            if rank < count {
                break;
            }
            rank -= count;
            pos += 1;
        }
        picked.push(pos);
        pos += 1;
    }
    let chosen: Vec<u32> = picked.iter().map(|&i| free[i]).collect();
    for &i in picked.iter().rev() {
        free.remove(i);
    }
    chosen
}

pub struct ClassIter<'a> {
    class: &'a ConjugacyClass,
    digits: Vec<u128>,
    remaining: u128,
}

impl Iterator for ClassIter<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.remaining == 0 {
            return None;
        }
        let out = self.class.decode(&self.digits);
        self.remaining -= 1;
        for (d, &r) in self.digits.iter_mut().zip(&self.class.radices).rev() {
            *d += 1;
            if *d < r {
                break;
            }
            *d = 0;
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (n, usize::try_from(self.remaining).ok())
    }
}

/// All permutations commuting with a fixed permutation.
///
/// An element maps each cycle onto a cycle of equal length with some
/// rotation; elements are ordered by a mixed-radix index over the cycle
/// matching (Lehmer code per length class) and the rotations.
pub struct Centralizer {
    n: usize,
    // per length class: the cycles (0-based points in cycle order)
    groups: Vec<Vec<Vec<u32>>>,
    radices: Vec<u128>,
    digits: Vec<u128>,
    remaining: u128,
}

impl Centralizer {
    pub fn new(p: &Permutation) -> Self {
        let mut cycles: Vec<Vec<u32>> = p
            .cycles()
            .into_iter()
            .map(|c| c.into_iter().map(|x| x as u32 - 1).collect())
            .collect();
        cycles.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        let mut groups: Vec<Vec<Vec<u32>>> = Vec::new();
        for c in cycles {
            match groups.last_mut() {
                Some(g) if g[0].len() == c.len() => g.push(c),
                _ => groups.push(vec![c]),
            }
        }
        let mut radices = Vec::new();
        for g in &groups {
            let m = g.len();
            radices.extend((1..=m).rev().map(|r| r as u128));
            radices.extend(std::iter::repeat_n(g[0].len() as u128, m));
        }
        let size = radices.iter().product();
        Self {
            n: p.degree(),
            groups,
            digits: vec![0; radices.len()],
            radices,
            remaining: size,
        }
    }

    pub fn size(&self) -> u128 {
        self.radices.iter().product()
    }

    fn decode(&self) -> Permutation {
        let mut images = vec![0u32; self.n];
        let mut digit = self.digits.iter().copied();
        for g in &self.groups {
            let m = g.len();
            let mut targets: Vec<usize> = (0..m).collect();
            let matching: Vec<usize> = (0..m)
                .map(|_| targets.remove(digit.next().unwrap_or(0) as usize))
                .collect();
            for (src, &dst) in matching.iter().enumerate() {
                let shift = digit.next().unwrap_or(0) as usize;
                let (from, to) = (&g[src], &g[dst]);
                let l = from.len();
                for j in 0..l {
                    images[from[j] as usize] = to[(j + shift) % l];
                }
            }
        }
        Permutation::from_raw(images)
    }
}

impl Iterator for Centralizer {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.remaining == 0 {
            return None;
        }
        let out = self.decode();
        self.remaining -= 1;
        for (d, &r) in self.digits.iter_mut().zip(&self.radices).rev() {
            *d += 1;
            if *d < r {
                break;
            }
            *d = 0;
        }
        Some(out)
    }
}

/// Convenience wrapper: streams every `r` with `r ∘ p = p ∘ r`.
pub fn centralizer_stream(p: &Permutation) -> Centralizer {
    Centralizer::new(p)
}
