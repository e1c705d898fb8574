//! Slow reference implementations used to cross-check the fast paths.
//!
//! Nothing here shares code with the ranked class iteration, the centralizer
//! streams, the character tables or the canonical graph labeling.

use crate::perm::Permutation;

/// Every permutation of degree `n`, generated by Heap's algorithm.
pub fn symmetric_group(n: usize) -> Vec<Permutation> {
    let mut a: Vec<usize> = (1..=n).collect();
    let mut out = vec![Permutation::from_images(&a).expect("identity")];
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(Permutation::from_images(&a).expect("swap keeps a bijection"));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Counts tuples `(g_1, ..., g_k)`, `g_i` of the given cycle types, whose
/// product `g_1 ∘ g_2 ∘ ... ∘ g_k` is the identity, by direct enumeration.
pub fn direct_product_count(types: &[crate::partition::Partition]) -> u64 {
    let n = types[0].total();
    let sn = symmetric_group(n);
    let classes: Vec<Vec<&Permutation>> = types
        .iter()
        .map(|t| sn.iter().filter(|p| &p.cycle_type() == t).collect())
        .collect();
    // Fix all but the last factor; the last is forced to be the inverse of
    // the running product.
    fn rec(
        classes: &[Vec<&Permutation>],
        depth: usize,
        acc: &Permutation,
        last: &crate::partition::Partition,
    ) -> u64 {
        if depth == classes.len() - 1 {
            return u64::from(&acc.inverse().cycle_type() == last);
        }
        classes[depth]
            .iter()
            .map(|g| rec(classes, depth + 1, &acc.compose(g).expect("same degree"), last))
            .sum()
    }
    rec(&classes, 0, &Permutation::identity(n), &types[types.len() - 1])
}
