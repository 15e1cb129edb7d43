//! Betti numbers of the genus-zero moduli spaces `M̄_{0,m}`.
//!
//! Over a finite field with `q` elements, `M̄_{0,n}` is stratified by stable
//! trees, and the open stratum of a tree is a product over its vertices of
//! `M_{0,val}`, which has `(q-2)(q-3)...(q-val+2)` points. Since the
//! cohomology is pure and even, the resulting polynomial in `q` carries the
//! Betti numbers. Two routes compute it: summing over explicitly enumerated
//! trees, and a recursion over the blocks hanging off a root vertex that
//! never materializes the trees.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::error::{domain, unsupported, Result};
use crate::partition::{binomial, elements_of, factorial, set_partitions};
use crate::poly::Poly;
use crate::rational::Rational;
use crate::series::TruncatedSeries;

/// Largest number of legs handled (legs live in a `u64` mask).
pub const MAX_LEGS: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreeVertex {
    pub legs: Vec<usize>,
    /// Indices into [`StableTree::edges`].
    pub edges: Vec<usize>,
}

impl TreeVertex {
    pub fn valence(&self) -> usize {
        self.legs.len() + self.edges.len()
    }
}

/// A stable tree with `n` labelled legs.
///
/// The identity of a tree is its set of edge splits, each recorded as the
/// side not containing leg `n`. Vertices and edges are derived from that set
/// in a fixed order: vertex 0 carries leg `n`, and the remaining vertices
/// follow the sorted splits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StableTree {
    n: usize,
    splits: Vec<u64>,
    vertices: Vec<TreeVertex>,
    edges: Vec<(usize, usize)>,
}

impl StableTree {
    /// Builds a tree from its edge splits; either side of a split may be
    /// given.
    pub fn from_splits(n: usize, splits: &[u64]) -> Result<Self> {
        if !(3..=MAX_LEGS).contains(&n) {
            return Err(domain!("stable trees need 3..={MAX_LEGS} legs, got {n}"));
        }
        let full = (1u64 << n) - 1;
        let root_bit = 1u64 << (n - 1);
        let mut clades: Vec<u64> = splits
            .iter()
            .map(|&s| if s & root_bit != 0 { full & !s } else { s })
            .collect();
        clades.sort_unstable();
        for (i, &c) in clades.iter().enumerate() {
            let size = c.count_ones() as usize;
            if c & !full != 0 || size < 2 || size > n - 2 {
                return Err(domain!("split {c:#b} does not separate two stable sides"));
            }
            if i > 0 && clades[i - 1] == c {
                return Err(domain!("repeated split {c:#b}"));
            }
            for &d in &clades[..i] {
                if !compatible(c, d) {
                    return Err(domain!("splits {c:#b} and {d:#b} cross"));
                }
            }
        }

        // vertex 0 is the root (all legs but n); vertex i + 1 is clades[i]
        let parent_of = |c: u64| -> usize {
            clades
                .iter()
                .enumerate()
                .filter(|&(_, &d)| d != c && d & c == c)
                .min_by_key(|&(_, &d)| d.count_ones())
                .map_or(0, |(j, _)| j + 1)
        };
        let mut vertices: Vec<TreeVertex> = (0..=clades.len())
            .map(|_| TreeVertex { legs: Vec::new(), edges: Vec::new() })
            .collect();
        let mut edges = Vec::with_capacity(clades.len());
        let mut covered = vec![0u64; clades.len() + 1];
        for (i, &c) in clades.iter().enumerate() {
            let p = parent_of(c);
            edges.push((p, i + 1));
            vertices[p].edges.push(i);
            vertices[i + 1].edges.push(i);
            covered[p] |= c;
        }
        let own = |v: usize| if v == 0 { full & !root_bit } else { clades[v - 1] };
        for (v, vertex) in vertices.iter_mut().enumerate() {
            vertex.legs = elements_of(own(v) & !covered[v]);
            if v == 0 {
                vertex.legs.push(n);
            }
        }
        Ok(StableTree { n, splits: clades, vertices, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn splits(&self) -> &[u64] {
        &self.splits
    }

    pub fn vertices(&self) -> &[TreeVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Connected, acyclic, legs partition `[n]`, every valence at least 3.
    pub fn is_valid(&self) -> bool {
        if self.edges.len() + 1 != self.vertices.len() {
            return false;
        }
        let mut seen = vec![false; self.n + 1];
        for v in &self.vertices {
            if v.valence() < 3 {
                return false;
            }
            for &leg in &v.legs {
                if leg == 0 || leg > self.n || seen[leg] {
                    return false;
                }
                seen[leg] = true;
            }
        }
        if seen[1..].iter().any(|s| !s) {
            return false;
        }
        // connectivity by union-find over the edges
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }

    pub fn valences(&self) -> Vec<usize> {
        self.vertices.iter().map(TreeVertex::valence).collect()
    }
}

fn compatible(a: u64, b: u64) -> bool {
    a & b == 0 || a & b == a || a & b == b
}

fn check_legs(n: usize) -> Result<()> {
    if n < 3 {
        return Err(domain!("M̄_0,n needs n >= 3, got {n}"));
    }
    if n > MAX_LEGS {
        return Err(unsupported!("n = {n} exceeds {MAX_LEGS} legs"));
    }
    Ok(())
}

/// Every stable tree with `n` labelled legs, found by growing pairwise
/// compatible sets of edge splits.
pub fn enumerate_stable_trees(n: usize) -> Result<Vec<StableTree>> {
    check_legs(n)?;
    let sets = compatible_split_sets(n);
    sets.iter().map(|s| StableTree::from_splits(n, s)).collect()
}

/// Candidate splits are the subsets of `[n-1]` with between 2 and `n-2`
/// elements. Each pairwise compatible family of them is one tree.
fn compatible_split_sets(n: usize) -> Vec<Vec<u64>> {
    let candidates: Vec<u64> = (1u64..1 << (n - 1))
        .filter(|c| (2..=n - 2).contains(&(c.count_ones() as usize)))
        .collect();
    let words = candidates.len().div_ceil(64);
    let compat: Vec<Vec<u64>> = candidates
        .iter()
        .map(|&a| {
            let mut row = vec![0u64; words];
            for (j, &b) in candidates.iter().enumerate() {
                if a != b && compatible(a, b) {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
            row
        })
        .collect();

    struct Search<'a> {
        candidates: &'a [u64],
        compat: &'a [Vec<u64>],
        chosen: Vec<u64>,
        out: Vec<Vec<u64>>,
    }
    impl Search<'_> {
        fn run(&mut self, start: usize, allowed: &[u64]) {
            self.out.push(self.chosen.clone());
            for j in start..self.candidates.len() {
                if allowed[j / 64] >> (j % 64) & 1 == 0 {
                    continue;
                }
                let next: Vec<u64> =
                    allowed.iter().zip(&self.compat[j]).map(|(a, b)| a & b).collect();
                self.chosen.push(self.candidates[j]);
                self.run(j + 1, &next);
                self.chosen.pop();
            }
        }
    }

    let mut all = vec![!0u64; words];
    if candidates.len() % 64 != 0 {
        all[words - 1] = (1u64 << (candidates.len() % 64)) - 1;
    }
    let mut search = Search { candidates: &candidates, compat: &compat, chosen: Vec::new(), out: Vec::new() };
    search.run(0, &all);
    search.out
}

/// Every stable tree with `n` labelled legs, built recursively: the vertex
/// carrying leg 1 sees the other legs split into at least two blocks, and
/// each block of two or more legs hangs off an edge as a smaller tree.
pub fn enumerate_stable_trees_by_blocks(n: usize) -> Result<Vec<StableTree>> {
    check_legs(n)?;
    let rest: Vec<usize> = (2..=n).collect();
    let mut trees = Vec::new();
    for splits in hanging_forests(&rest) {
        trees.push(StableTree::from_splits(n, &splits)?);
    }
    trees.sort_by(|a, b| a.splits.cmp(&b.splits));
    Ok(trees)
}

/// Split sets for a vertex whose children are a partition of `legs` into at
/// least two blocks.
fn hanging_forests(legs: &[usize]) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for k in 2..=legs.len() {
        for blocks in set_partitions(legs, k) {
            let mut partial: Vec<Vec<u64>> = vec![Vec::new()];
            for block in &blocks {
                if block.len() == 1 {
                    continue;
                }
                let mask = crate::partition::mask_of(block);
                let below = hanging_forests(block);
                let mut next = Vec::with_capacity(partial.len() * below.len());
                for p in &partial {
                    for b in &below {
                        let mut splits = p.clone();
                        splits.push(mask);
                        splits.extend_from_slice(b);
                        next.push(splits);
                    }
                }
                partial = next;
            }
            out.extend(partial);
        }
    }
    out
}

/// `|M_{0,m}(F_q)| = (q-2)(q-3)...(q-m+2)` as integer coefficients.
fn open_count(m: usize) -> Vec<i128> {
    let mut p = vec![1i128];
    for j in 2..=m.saturating_sub(2) {
        let mut next = vec![0i128; p.len() + 1];
        for (k, &c) in p.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * j as i128;
        }
        p = next;
    }
    p
}

fn int_poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Point count of `M̄_{0,n}` summed over explicitly enumerated stable trees.
pub fn point_count_enumerated(n: usize) -> Result<Poly> {
    let trees = enumerate_stable_trees(n)?;
    let mut by_valences: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    for tree in &trees {
        let mut v = tree.valences();
        v.sort_unstable();
        *by_valences.entry(v).or_default() += 1;
    }
    let mut total = vec![0i128; n - 2];
    for (valences, count) in by_valences {
        let product = valences
            .iter()
            .fold(vec![1i128], |acc, &v| int_poly_mul(&acc, &open_count(v)));
        for (k, c) in product.iter().enumerate() {
            total[k] += c * count as i128;
        }
    }
    Ok(Poly::new(total.into_iter().map(|c| Rational::from_integer(BigInt::from(c))).collect()))
}

/// Point count of `M̄_{0,n}` by the recursion over hanging blocks.
pub fn point_count_poly(n: usize) -> Result<Poly> {
    check_legs(n)?;
    Ok(hanging_counts(n - 1).swap_remove(n - 1))
}

/// `R[m]` is the point count of all trees hanging below one edge above a set
/// of `m` legs (`R[1] = 1` for a bare leg). A tree with `n` legs is the same
/// thing as one hanging below leg `n`, so `|M̄_{0,n}| = R[n-1]`.
fn hanging_counts(max_m: usize) -> Vec<Poly> {
    let opens: Vec<Poly> = (0..=max_m + 1)
        .map(|m| Poly::new(open_count(m).into_iter().map(|c| Rational::from_integer(c.into())).collect()))
        .collect();
    let mut r = vec![Poly::zero(); max_m + 1];
    if max_m >= 1 {
        r[1] = Poly::one();
    }
    for m in 2..=max_m {
        // f[j][x]: sum over partitions of an x-set into j blocks of the
        // product of R over the blocks (blocks smaller than m only)
        let mut f = vec![vec![Poly::zero(); m + 1]; m + 1];
        f[0][0] = Poly::one();
        for j in 1..=m {
            for x in 1..=m {
                let mut acc = Poly::zero();
                // size of the block holding the first element
                for s in 1..=x.min(m - 1) {
                    if f[j - 1][x - s].is_zero() {
                        continue;
                    }
                    let ways = Rational::from_integer(BigInt::from(binomial(x - 1, s - 1)));
                    acc = &acc + &(&r[s] * &f[j - 1][x - s]).scale(&ways);
                }
                f[j][x] = acc;
            }
        }
        let mut total = Poly::zero();
        for j in 2..=m {
            total = &total + &(&opens[j + 1] * &f[j][m]);
        }
        r[m] = total;
    }
    r
}

/// Betti numbers `b_0, b_2, ..., b_{2(n-3)}` of `M̄_{0,n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BettiRow {
    pub n: usize,
    pub betti: Vec<u64>,
}

impl BettiRow {
    pub fn total(&self) -> u64 {
        self.betti.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        self.betti.iter().eq(self.betti.iter().rev())
    }
}

pub fn betti_genus0(n: usize) -> Result<BettiRow> {
    let p = point_count_poly(n)?;
    let betti = p
        .coeffs()
        .iter()
        .map(|c| c.to_integer().to_u64().ok_or_else(|| unsupported!("Betti number of M̄_0,{n} overflows u64")))
        .collect::<Result<Vec<u64>>>()?;
    Ok(BettiRow { n, betti })
}

/// Poincaré polynomials in `t` (one power of `t` per complex degree) of
/// `M̄_{0,m}` for `m <= max_m`. Entry 2 is the polynomial 1, standing for
/// the point attached to a single leg; entries 0 and 1 are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Genus0Rows {
    rows: Vec<Poly>,
}

impl Genus0Rows {
    pub fn up_to(max_m: usize) -> Result<Self> {
        if max_m > MAX_LEGS {
            return Err(unsupported!("m = {max_m} exceeds {MAX_LEGS} legs"));
        }
        let max_m = max_m.max(2);
        let r = hanging_counts(max_m - 1);
        let mut rows = vec![Poly::zero(); max_m + 1];
        rows[2] = Poly::one();
        for m in 3..=max_m {
            rows[m] = r[m - 1].clone();
        }
        Ok(Genus0Rows { rows })
    }

    pub fn max_m(&self) -> usize {
        self.rows.len() - 1
    }

    /// Panics if `m` is beyond the precomputed range.
    pub fn row(&self, m: usize) -> &Poly {
        &self.rows[m]
    }

    /// Poincaré polynomial of the genus-zero factor attached to a block of
    /// `size` legs, i.e. of `M̄_{0,size+1}`.
    pub fn block_factor(&self, size: usize) -> &Poly {
        &self.rows[size + 1]
    }

    /// `h(n) = dim H*(M̄_{0,n+1})`, with `h(1) = 1` and `h(0) = 0`.
    pub fn h(&self, n: usize) -> BigUint {
        if n == 0 {
            return BigUint::zero();
        }
        self.rows[n + 1].sum_of_coeffs().to_integer().to_biguint().expect("nonnegative")
    }
}

pub fn h(n: usize) -> Result<BigUint> {
    Ok(Genus0Rows::up_to(n + 1)?.h(n))
}

/// `P0 = Σ_n Q0(n, m) s^n t^m / n!` with `Q0(n, ·)` the Betti row of
/// `M̄_{0,n+1}` for `n >= 2`, `Q0(1, m) = δ_{m,0}` and `Q0(0, ·) = 0`.
/// With `bivariate = false`, `t` is set to 1.
pub fn p0(order: usize, bivariate: bool) -> Result<TruncatedSeries> {
    let rows = Genus0Rows::up_to(order + 1)?;
    let mut coeffs = vec![Poly::zero(); order + 1];
    for (k, slot) in coeffs.iter_mut().enumerate().skip(1) {
        let inv = Rational::new(1.into(), BigInt::from(factorial(k)));
        let row = rows.block_factor(k).scale(&inv);
        *slot = if bivariate { row } else { Poly::constant(row.sum_of_coeffs()) };
    }
    Ok(TruncatedSeries::from_coeffs(order, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn small_trees() {
        assert_eq!(enumerate_stable_trees(3).unwrap().len(), 1);
        assert_eq!(enumerate_stable_trees(4).unwrap().len(), 4);
        assert_eq!(enumerate_stable_trees(5).unwrap().len(), 26);
        assert!(enumerate_stable_trees(2).is_err());
        assert!(point_count_poly(2).is_err());
    }

    #[test]
    fn tree_shape() {
        // split {1,2} | {3,4}
        let t = StableTree::from_splits(4, &[0b0011]).unwrap();
        assert_eq!(t.vertices().len(), 2);
        assert_eq!(t.vertices()[0].legs, vec![3, 4]);
        assert_eq!(t.vertices()[1].legs, vec![1, 2]);
        assert!(t.is_valid());
        // the other side gives the same tree
        assert_eq!(StableTree::from_splits(4, &[0b1100]).unwrap(), t);
        assert!(StableTree::from_splits(4, &[0b0001]).is_err());
        assert!(StableTree::from_splits(5, &[0b0011, 0b0110]).is_err());
    }

    #[test]
    fn point_counts() {
        assert_eq!(point_count_poly(3).unwrap(), Poly::one());
        assert_eq!(point_count_poly(4).unwrap(), Poly::from_ints(&[1, 1]));
        assert_eq!(point_count_poly(5).unwrap(), Poly::from_ints(&[1, 5, 1]));
        assert_eq!(betti_genus0(6).unwrap().betti, vec![1, 16, 16, 1]);
    }

    #[test]
    fn h_conventions() {
        assert_eq!(h(0).unwrap(), BigUint::zero());
        assert_eq!(h(1).unwrap(), BigUint::from(1u32));
        assert_eq!(h(3).unwrap(), BigUint::from(2u32));
        assert_eq!(h(4).unwrap(), BigUint::from(7u32));
    }

    #[test]
    fn p0_coefficients() {
        let p = p0(4, true).unwrap();
        assert!(p.coeff(0).is_zero());
        assert_eq!(p.coeff(1), &Poly::one());
        assert_eq!(p.coeff(3), &Poly::new(vec![rat(1, 6), rat(1, 6)]));
        let flat = p0(4, false).unwrap();
        assert_eq!(flat.coeff(3), &Poly::constant(rat(1, 3)));
    }
}
