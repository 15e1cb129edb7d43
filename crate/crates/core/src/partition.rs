//! Set partitions of `[n] = {1, ..., n}` and the counting functions that go
//! with them.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{domain, Result};

/// An unordered partition of `[n]` into nonempty blocks.
///
/// Blocks are stored sorted internally and ordered by their minimum element,
/// so two partitions are equal exactly when their fields are.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 || n > 63 {
            return Err(domain!("partition of [{n}] is out of range"));
        }
        let mut seen = vec![false; n + 1];
        let mut blocks = blocks;
        for block in &mut blocks {
            if block.is_empty() {
                return Err(domain!("empty block"));
            }
            block.sort_unstable();
            for &x in block.iter() {
                if x == 0 || x > n || seen[x] {
                    return Err(domain!("element {x} is repeated or outside [{n}]"));
                }
                seen[x] = true;
            }
        }
        if seen[1..].iter().any(|s| !s) {
            return Err(domain!("blocks do not cover [{n}]"));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Partition { n, blocks })
    }

    /// The one-block partition `{[n]}`.
    pub fn whole(n: usize) -> Self {
        Partition { n, blocks: vec![(1..=n).collect()] }
    }

    pub fn singletons(n: usize) -> Self {
        Partition { n, blocks: (1..=n).map(|i| vec![i]).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Number of blocks of size one.
    pub fn singleton_count(&self) -> usize {
        self.blocks.iter().filter(|b| b.len() == 1).count()
    }

    /// Bit `i - 1` is set for each element `i` of block `index`.
    pub fn block_mask(&self, index: usize) -> u64 {
        mask_of(&self.blocks[index])
    }

    pub fn block_of(&self, element: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&element).is_ok())
    }

    /// Relabels element `i` as `perm[i - 1]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(domain!("permutation has length {} but n = {}", perm.len(), self.n));
        }
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&x| perm[x - 1]).collect())
            .collect();
        Partition::new(self.n, blocks)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("{")?;
            for (j, x) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("}")?;
        }
        f.write_str("}")
    }
}

pub fn mask_of(elements: &[usize]) -> u64 {
    elements.iter().fold(0, |m, &x| m | (1u64 << (x - 1)))
}

pub fn elements_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

/// All partitions of `[n]` into exactly `k` blocks, in canonical order.
pub fn partitions(n: usize, k: usize) -> Result<Vec<Partition>> {
    if k < 1 || k > n {
        return Err(domain!("cannot split [{n}] into {k} blocks"));
    }
    let elements: Vec<usize> = (1..=n).collect();
    let mut out: Vec<Partition> = set_partitions(&elements, k)
        .into_iter()
        .map(|blocks| Partition { n, blocks })
        .collect();
    out.sort();
    Ok(out)
}

/// All ways to split `elements` into exactly `k` nonempty blocks.
///
/// Blocks come out in order of their first element (relative to the input
/// order), each block in input order.
pub fn set_partitions(elements: &[usize], k: usize) -> Vec<Vec<Vec<usize>>> {
    let m = elements.len();
    let mut out = Vec::new();
    if k == 0 || k > m {
        return out;
    }
    // restricted growth strings: label[i] <= 1 + max(label[..i])
    let mut labels = vec![0usize; m];
    fn rec(
        i: usize,
        used: usize,
        k: usize,
        labels: &mut [usize],
        elements: &[usize],
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        let m = labels.len();
        if m - i < k - used {
            return;
        }
        if i == m {
            let mut blocks = vec![Vec::new(); k];
            for (x, &l) in elements.iter().zip(labels.iter()) {
                blocks[l].push(*x);
            }
            out.push(blocks);
            return;
        }
        for l in 0..used {
            labels[i] = l;
            rec(i + 1, used, k, labels, elements, out);
        }
        if used < k {
            labels[i] = used;
            rec(i + 1, used + 1, k, labels, elements, out);
        }
    }
    rec(0, 0, k, &mut labels, elements, &mut out);
    out
}

/// Stirling number of the second kind `S(n, k)`.
pub fn stirling2(n: usize, k: usize) -> BigUint {
    let mut row = vec![BigUint::zero(); k + 1];
    row[0] = BigUint::one();
    for i in 1..=n {
        for j in (1..=k.min(i)).rev() {
            row[j] = &row[j] * BigUint::from(j) + &row[j - 1];
        }
        row[0] = BigUint::zero();
    }
    row[k].clone()
}

pub fn bell(n: usize) -> BigUint {
    (0..=n).map(|k| stirling2(n, k)).sum()
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `n! / (parts[0]! parts[1]! ...)`, or zero when the parts do not sum to `n`.
pub fn multinomial(n: usize, parts: &[usize]) -> BigUint {
    if parts.iter().sum::<usize>() != n {
        return BigUint::zero();
    }
    parts.iter().fold(factorial(n), |acc, &p| acc / factorial(p))
}

/// Ordered tuples of `k` positive integers summing to `n`.
pub fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(left: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            if left == 0 {
                out.push(current.clone());
            }
            return;
        }
        let remaining = k - current.len();
        if left < remaining {
            return;
        }
        for part in 1..=left - (remaining - 1) {
            current.push(part);
            rec(left - part, k, current, out);
            current.pop();
        }
    }
    if k > 0 {
        rec(n, k, &mut current, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let two = partitions(2, 2).unwrap();
        assert_eq!(two, vec![Partition::singletons(2)]);
        assert_eq!(partitions(4, 2).unwrap().len(), 7);
        assert_eq!(partitions(4, 3).unwrap().len(), 6);
        assert_eq!(partitions(3, 1).unwrap(), vec![Partition::whole(3)]);
    }

    #[test]
    fn bad_block_counts() {
        assert!(matches!(partitions(3, 4), Err(crate::Error::Domain(_))));
        assert!(matches!(partitions(3, 0), Err(crate::Error::Domain(_))));
    }

    #[test]
    fn canonical_form() {
        let p = Partition::new(4, vec![vec![4, 2], vec![3, 1]]).unwrap();
        assert_eq!(p.blocks(), &[vec![1, 3], vec![2, 4]]);
        assert_eq!(alloc::format!("{p}"), "{{1,3},{2,4}}");
        assert!(Partition::new(3, vec![vec![1, 2]]).is_err());
        assert!(Partition::new(3, vec![vec![1, 2], vec![2, 3]]).is_err());
        assert!(Partition::new(3, vec![vec![1, 2, 3], vec![]]).is_err());
    }

    #[test]
    fn counting() {
        assert_eq!(stirling2(5, 3), BigUint::from(25u32));
        assert_eq!(bell(8), BigUint::from(4140u32));
        assert_eq!(multinomial(4, &[1, 3]), BigUint::from(4u32));
        assert_eq!(compositions(4, 2), vec![vec![1, 3], vec![2, 2], vec![3, 1]]);
        assert_eq!(binomial(6, 2), BigUint::from(15u32));
    }
}
