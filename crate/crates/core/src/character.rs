//! Irreducible characters of `S_n` and Frobenius' count of class tuples
//! multiplying to the identity.

use std::collections::HashMap;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::partition::{factorial, partitions, Partition};
use crate::rules::TypeTriple;

type CharacterKey = (Vec<u32>, Vec<u32>);

/// Memoized Murnaghan–Nakayama evaluation. Safe to share between threads.
#[derive(Default)]
pub struct CharacterTable {
    memo: RwLock<HashMap<CharacterKey, i128>>,
}

impl CharacterTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// `χ^λ(μ)`. Panics if the totals differ.
    pub fn value(&self, lambda: &Partition, mu: &Partition) -> i128 {
        assert_eq!(lambda.total(), mu.total(), "character arguments of different degree");
        self.eval(lambda.parts(), mu.parts())
    }

    fn eval(&self, lambda: &[u32], mu: &[u32]) -> i128 {
        if mu.is_empty() {
            return 1;
        }
        let key = (lambda.to_vec(), mu.to_vec());
        if let Some(&v) = self.memo.read().expect("memo lock").get(&key) {
            return v;
        }
        let hook = mu[0];
        let rest = &mu[1..];
        let value = rim_hook_removals(lambda, hook)
            .into_iter()
            .map(|(sign, smaller)| sign * self.eval(&smaller, rest))
            .sum();
        self.memo.write().expect("memo lock").insert(key, value);
        value
    }
}

/// Every way to strip a rim hook of length `len` from `lambda`, with the
/// sign `(-1)^(height)`. Works on the beta-set: a hook removal moves one bead
/// from `b` down to an empty `b - len`.
fn rim_hook_removals(lambda: &[u32], len: u32) -> Vec<(i128, Vec<u32>)> {
    let k = lambda.len();
    let beta: Vec<i64> = lambda
        .iter()
        .enumerate()
        .map(|(i, &p)| p as i64 + (k - 1 - i) as i64)
        .collect();
    let mut out = Vec::new();
    for (i, &b) in beta.iter().enumerate() {
        let target = b - len as i64;
        if target < 0 || beta.contains(&target) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut moved = beta.clone();
        moved[i] = target;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<u32> = moved
            .iter()
            .enumerate()
            .map(|(j, &x)| (x - (k - 1 - j) as i64) as u32)
            .filter(|&p| p > 0)
            .collect();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        out.push((sign, parts));
    }
    out
}

/// `χ^λ(μ)` using a throwaway table.
pub fn character(lambda: &Partition, mu: &Partition) -> i128 {
    CharacterTable::new().value(lambda, mu)
}

/// Number of tuples `(g_1, ..., g_k)`, `g_i` in the class of cycle type
/// `classes[i]`, with `g_1 g_2 ... g_k = id`.
pub fn frobenius_count(classes: &[Partition]) -> Result<BigInt> {
    frobenius_count_with(&CharacterTable::new(), classes)
}

pub fn frobenius_count_with(table: &CharacterTable, classes: &[Partition]) -> Result<BigInt> {
    let label = || {
        classes
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    if classes.len() < 2 {
        return Err(Error::InvalidPartition(format!("need at least two classes: {}", label())));
    }
    let n = classes[0].total();
    if classes.iter().any(|c| c.total() != n) {
        return Err(Error::InvalidPartition(format!("classes of different degree: {}", label())));
    }
    let k = classes.len() as i32;
    let identity = Partition::ones(n);
    let mut sum = BigRational::zero();
    for lambda in partitions(n, 1) {
        let dim = BigInt::from(table.value(&lambda, &identity));
        let numerator: BigInt = classes
            .iter()
            .map(|c| BigInt::from(table.value(&lambda, c)))
            .product();
        if numerator.is_zero() {
            continue;
        }
        let denominator = num_traits::pow(dim, (k - 2) as usize);
        sum += BigRational::new(numerator, denominator);
    }
    let sizes: BigInt = classes.iter().map(|c| BigInt::from(c.class_size())).product();
    let total = sum * BigRational::new(sizes, BigInt::from(factorial(n)));
    if !total.is_integer() {
        return Err(Error::NonIntegralCount(label()));
    }
    Ok(total.to_integer())
}

/// Expected number of stored hypermaps for a triple:
/// `ceil(N(S, A, F) / (|S| · E))`.
pub fn capacity_estimate(table: &CharacterTable, t: &TypeTriple) -> Result<u128> {
    let n = frobenius_count_with(table, &[t.sigma.clone(), t.alpha.clone(), t.phi.clone()])?;
    let divisor = BigInt::from(t.sigma.class_size()) * BigInt::from(t.edges() as u64);
    let est = BigRational::new(n, divisor).ceil().to_integer();
    Ok(est.to_u128().unwrap_or(u128::MAX))
}

/// `N(S, A, F) / |S|`: number of `(α, φ)` with a fixed `σ` of type `S`.
pub fn candidates_per_sigma(table: &CharacterTable, t: &TypeTriple) -> Result<BigInt> {
    let n = frobenius_count_with(table, &[t.sigma.clone(), t.alpha.clone(), t.phi.clone()])?;
    let size = BigInt::from(t.sigma.class_size());
    if !(&n % &size).is_zero() {
        return Err(Error::NonIntegralCount(t.key()));
    }
    Ok(n / size)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::direct_product_count;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn trivial_and_sign_characters() {
        for n in 1..=7 {
            for mu in partitions(n, 1) {
                assert_eq!(character(&part(&[n as u32]), &mu), 1);
                let sign = if (n - mu.len()) % 2 == 0 { 1 } else { -1 };
                assert_eq!(character(&Partition::ones(n), &mu), sign);
            }
        }
    }

    #[test]
    fn s3_values_at_three_cycle() {
        // Standard representation of S_3 as 2x2 rotation by 120 degrees:
        // trace 2cos(2π/3) = -1.
        assert_eq!(character(&part(&[1, 1, 1]), &part(&[3])), 1);
        assert_eq!(character(&part(&[2, 1]), &part(&[3])), -1);
        assert_eq!(character(&part(&[2, 1]), &part(&[1, 1, 1])), 2);
    }

    #[test]
    fn orthogonality_relations() {
        let table = CharacterTable::new();
        for n in 1..=8 {
            let all = partitions(n, 1);
            let dims: i128 = all
                .iter()
                .map(|l| table.value(l, &Partition::ones(n)).pow(2))
                .sum();
            assert_eq!(dims as u128, factorial(n));
            for mu in &all {
                let col: i128 = all.iter().map(|l| table.value(l, mu).pow(2)).sum();
                assert_eq!(col as u128, factorial(n) / mu.class_size(), "column {mu}");
                for l in &all {
                    if mu == &Partition::ones(n) {
                        assert!(table.value(l, mu) > 0);
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_small_cases() {
        let t = part(&[2, 1]);
        assert_eq!(frobenius_count(&[t.clone(), t.clone(), t]).unwrap(), BigInt::from(0));
        let c = part(&[3]);
        assert_eq!(frobenius_count(&[c.clone(), c.clone(), c]).unwrap(), BigInt::from(2));
        let id = Partition::ones(4);
        assert_eq!(frobenius_count(&[id.clone(), id.clone(), id]).unwrap(), BigInt::from(1));
        assert!(frobenius_count(&[part(&[3])]).is_err());
        assert!(frobenius_count(&[part(&[3]), part(&[2])]).is_err());
    }

    #[test]
    fn frobenius_matches_direct_enumeration() {
        let cases: Vec<Vec<Partition>> = vec![
            vec![part(&[2, 1]), part(&[2, 1]), part(&[3])],
            vec![part(&[3]), part(&[3]), part(&[1, 1, 1])],
            vec![part(&[2, 1]), part(&[3]), part(&[2, 1])],
            vec![part(&[4]), part(&[4]), part(&[2, 2])],
            vec![part(&[4]), part(&[2, 1, 1]), part(&[3, 1])],
            vec![part(&[2, 2]), part(&[2, 2]), part(&[2, 2])],
            vec![part(&[3, 1]), part(&[3, 1]), part(&[3, 1])],
            vec![part(&[4]), part(&[4]), part(&[4])],
            vec![part(&[2, 1, 1]), part(&[2, 1, 1]), part(&[2, 1, 1]), part(&[2, 1, 1])],
            vec![part(&[4]), part(&[3, 1]), part(&[2, 1, 1])],
        ];
        for case in cases {
            let expected = direct_product_count(&case);
            assert_eq!(frobenius_count(&case).unwrap(), BigInt::from(expected), "{case:?}");
        }
    }

    #[test]
    fn capacity_estimates() {
        let table = CharacterTable::new();
        let t = TypeTriple::new(part(&[3]), part(&[3]), part(&[3])).unwrap();
        assert_eq!(capacity_estimate(&table, &t).unwrap(), 1);
        let t = TypeTriple::new(part(&[1, 1]), part(&[2]), part(&[2])).unwrap();
        assert_eq!(frobenius_count(&[t.sigma.clone(), t.alpha.clone(), t.phi.clone()]).unwrap(), BigInt::from(1));
        assert_eq!(capacity_estimate(&table, &t).unwrap(), 1);
    }
}
