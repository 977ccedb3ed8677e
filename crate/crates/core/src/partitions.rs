//! Odd partitions and even pseudopartitions.
//!
//! Both are stored as non-decreasing part sequences. Enumeration order is
//! `(size, parts lexicographically)`, which is also the `Ord` impl, so basis
//! indexing is reproducible.

use std::cmp::Ordering;
use std::fmt;

use crate::error::Error;

/// A non-decreasing sequence of positive odd integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OddPartition {
    parts: Vec<u32>,
}

/// A non-decreasing sequence of non-negative even integers; zero parts allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct EvenPseudoPartition {
    parts: Vec<u32>,
}

impl OddPartition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Sorts the parts; rejects even or zero parts.
    pub fn new(mut parts: Vec<u32>) -> Result<Self, Error> {
        if let Some(&bad) = parts.iter().find(|&&p| p % 2 == 0) {
            return Err(Error::InvalidPartition(format!("{bad} is not a positive odd part")));
        }
        parts.sort_unstable();
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn count(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of parts equal to `part`.
    pub fn multiplicity(&self, part: u32) -> usize {
        self.parts.iter().filter(|&&p| p == part).count()
    }

    pub(crate) fn insert(&mut self, part: u32) {
        debug_assert!(part % 2 == 1);
        let at = self.parts.partition_point(|&p| p <= part);
        self.parts.insert(at, part);
    }

    pub(crate) fn without_index(&self, i: usize) -> Self {
        let mut parts = self.parts.clone();
        parts.remove(i);
        Self { parts }
    }
}

impl EvenPseudoPartition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Sorts the parts; rejects odd parts.
    pub fn new(mut parts: Vec<u32>) -> Result<Self, Error> {
        if let Some(&bad) = parts.iter().find(|&&p| p % 2 == 1) {
            return Err(Error::InvalidPartition(format!("{bad} is not an even part")));
        }
        parts.sort_unstable();
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn count(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `μ(0)`: the number of zero parts.
    pub fn zero_count(&self) -> usize {
        self.parts.iter().take_while(|&&p| p == 0).count()
    }

    pub fn multiplicity(&self, part: u32) -> usize {
        self.parts.iter().filter(|&&p| p == part).count()
    }

    pub(crate) fn insert(&mut self, part: u32) {
        debug_assert!(part.is_multiple_of(2));
        let at = self.parts.partition_point(|&p| p <= part);
        self.parts.insert(at, part);
    }

    pub(crate) fn without_index(&self, i: usize) -> Self {
        let mut parts = self.parts.clone();
        parts.remove(i);
        Self { parts }
    }
}

fn size_then_lex(a: &[u32], b: &[u32]) -> Ordering {
    let sa: u32 = a.iter().sum();
    let sb: u32 = b.iter().sum();
    sa.cmp(&sb).then_with(|| a.cmp(b))
}

impl Ord for OddPartition {
    fn cmp(&self, other: &Self) -> Ordering {
        size_then_lex(&self.parts, &other.parts)
    }
}

impl PartialOrd for OddPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EvenPseudoPartition {
    fn cmp(&self, other: &Self) -> Ordering {
        size_then_lex(&self.parts, &other.parts)
    }
}

impl PartialOrd for EvenPseudoPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn write_parts(f: &mut fmt::Formatter<'_>, parts: &[u32]) -> fmt::Result {
    f.write_str("[")?;
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{p}")?;
    }
    f.write_str("]")
}

impl fmt::Display for OddPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.parts)
    }
}

impl fmt::Display for EvenPseudoPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.parts)
    }
}

/// Parses `[1,1,3]` (or `[]`) into a sorted part list.
pub fn parse_parts(text: &str) -> Result<Vec<u32>, Error> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::InvalidPartition(format!("expected [..], got {text:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidPartition(format!("bad part {p:?}")))
        })
        .collect()
}

/// Pushes every non-decreasing sequence drawn from `allowed` (ascending) with
/// sum exactly `target` and first part ≥ `min`, in lexicographic order.
fn compositions_sorted(allowed: &[u32], target: u32, min: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if target == 0 {
        out.push(prefix.clone());
        return;
    }
    for &p in allowed.iter().filter(|&&p| p >= min && p <= target) {
        prefix.push(p);
        compositions_sorted(allowed, target - p, p, prefix, out);
        prefix.pop();
    }
}

fn partitions_of(allowed: &[u32], n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    compositions_sorted(allowed, n, 0, &mut Vec::new(), &mut out);
    out
}

/// Every odd partition of size ≤ `max_size`, in `(size, lex)` order.
pub fn enumerate_odd_partitions(max_size: u32) -> Vec<OddPartition> {
    let odd: Vec<u32> = (1..=max_size).step_by(2).collect();
    (0..=max_size)
        .flat_map(|n| partitions_of(&odd, n))
        .map(|parts| OddPartition { parts })
        .collect()
}

/// Every even pseudopartition of size ≤ `max_size` with at most `zero_cap`
/// zero parts, in `(size, lex)` order.
pub fn enumerate_even_pseudopartitions(max_size: u32, zero_cap: usize) -> Vec<EvenPseudoPartition> {
    let even: Vec<u32> = (2..=max_size).step_by(2).collect();
    let mut out: Vec<EvenPseudoPartition> = (0..=max_size)
        .flat_map(|n| partitions_of(&even, n))
        .flat_map(|positive| {
            (0..=zero_cap).map(move |z| {
                let mut parts = vec![0; z];
                parts.extend_from_slice(&positive);
                EvenPseudoPartition { parts }
            })
        })
        .collect();
    out.sort();
    out
}

/// Number of partitions of `n` into odd parts, by the coin-change recurrence.
pub fn count_odd_partitions(n: u32) -> u64 {
    let n = n as usize;
    let mut ways = vec![0u64; n + 1];
    ways[0] = 1;
    for part in (1..=n).step_by(2) {
        for total in part..=n {
            ways[total] += ways[total - part];
        }
    }
    ways[n]
}

/// Number of partitions of `n` into even parts ≥ 2 (zero for odd `n`).
pub fn count_even_partitions(n: u32) -> u64 {
    if n % 2 == 1 {
        return 0;
    }
    let n = n as usize;
    let mut ways = vec![0u64; n + 1];
    ways[0] = 1;
    for part in (2..=n).step_by(2) {
        for total in part..=n {
            ways[total] += ways[total - part];
        }
    }
    ways[n]
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn odd(parts: &[u32]) -> OddPartition {
        OddPartition::new(parts.to_vec()).unwrap()
    }

    fn even(parts: &[u32]) -> EvenPseudoPartition {
        EvenPseudoPartition::new(parts.to_vec()).unwrap()
    }

    /// All sorted tuples with entries from `allowed` and sum ≤ `max`, by
    /// exhaustive product search over bounded lengths.
    fn brute_sorted_tuples(allowed: &[u32], max: u32, max_len: usize) -> BTreeSet<Vec<u32>> {
        let mut out = BTreeSet::new();
        let mut frontier: Vec<Vec<u32>> = vec![vec![]];
        for _ in 0..=max_len {
            let mut next = Vec::new();
            for t in &frontier {
                if t.iter().sum::<u32>() <= max {
                    let mut s = t.clone();
                    s.sort_unstable();
                    out.insert(s);
                }
                for &a in allowed {
                    let mut u = t.clone();
                    u.push(a);
                    if u.iter().sum::<u32>() <= max {
                        next.push(u);
                    }
                }
            }
            frontier = next;
        }
        out
    }

    #[test]
    fn odd_enumeration_examples() {
        assert_eq!(enumerate_odd_partitions(0), vec![OddPartition::empty()]);
        let three: BTreeSet<_> = enumerate_odd_partitions(3).into_iter().collect();
        let expected: BTreeSet<_> = [&[][..], &[1], &[1, 1], &[3], &[1, 1, 1]].iter().map(|p| odd(p)).collect();
        assert_eq!(three, expected);
        let size5: Vec<_> = enumerate_odd_partitions(5).into_iter().filter(|p| p.size() == 5).collect();
        assert_eq!(size5.len(), 3);
        for p in [odd(&[5]), odd(&[1, 1, 3]), odd(&[1, 1, 1, 1, 1])] {
            assert!(size5.contains(&p));
        }
    }

    #[test]
    fn odd_counts() {
        assert_eq!(count_odd_partitions(0), 1);
        assert_eq!(count_odd_partitions(5), 3);
        assert_eq!(count_odd_partitions(8), 6);
    }

    #[test]
    fn even_enumeration_examples() {
        let set = |v: Vec<EvenPseudoPartition>| v.into_iter().collect::<BTreeSet<_>>();
        assert_eq!(set(enumerate_even_pseudopartitions(0, 1)), set(vec![even(&[]), even(&[0])]));
        assert_eq!(set(enumerate_even_pseudopartitions(2, 0)), set(vec![even(&[]), even(&[2])]));
        let four = enumerate_even_pseudopartitions(4, 1);
        let expected = [&[][..], &[0], &[2], &[0, 2], &[4], &[0, 4], &[2, 2], &[0, 2, 2]];
        assert_eq!(set(four), expected.iter().map(|p| even(p)).collect());
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for n in 0..=12 {
            let odd_parts: Vec<u32> = (1..=n).step_by(2).collect();
            let brute = brute_sorted_tuples(&odd_parts, n, n as usize);
            let listed = enumerate_odd_partitions(n);
            let as_set: BTreeSet<Vec<u32>> = listed.iter().map(|p| p.parts().to_vec()).collect();
            assert_eq!(as_set.len(), listed.len(), "duplicates at n={n}");
            assert_eq!(as_set, brute, "odd n={n}");

            for cap in 0..=2usize {
                let mut even_parts: Vec<u32> = vec![0];
                even_parts.extend((2..=n).step_by(2));
                let brute: BTreeSet<Vec<u32>> = brute_sorted_tuples(&even_parts, n, n as usize / 2 + cap)
                    .into_iter()
                    .filter(|t| t.iter().filter(|&&p| p == 0).count() <= cap)
                    .collect();
                let listed = enumerate_even_pseudopartitions(n, cap);
                let as_set: BTreeSet<Vec<u32>> = listed.iter().map(|p| p.parts().to_vec()).collect();
                assert_eq!(as_set.len(), listed.len());
                assert_eq!(as_set, brute, "even n={n} cap={cap}");
            }
        }
    }

    #[test]
    fn enumeration_order_is_size_then_lex() {
        let listed = enumerate_odd_partitions(9);
        assert!(listed.windows(2).all(|w| w[0] < w[1]));
        let listed = enumerate_even_pseudopartitions(8, 2);
        assert!(listed.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn counts_agree_with_enumeration() {
        let listed = enumerate_odd_partitions(20);
        for n in 0..=20 {
            let exact = listed.iter().filter(|p| p.size() == n).count() as u64;
            assert_eq!(exact, count_odd_partitions(n), "n={n}");
        }
    }

    /// Odd-part partitions are equinumerous with distinct-part partitions.
    #[test]
    fn odd_parts_match_distinct_parts() {
        for n in 0..=20usize {
            // 0/1 knapsack over distinct parts
            let mut ways = vec![0u64; n + 1];
            ways[0] = 1;
            for part in 1..=n {
                for total in (part..=n).rev() {
                    ways[total] += ways[total - part];
                }
            }
            assert_eq!(ways[n], count_odd_partitions(n as u32), "n={n}");
        }
    }

    #[test]
    fn rejects_bad_parts_and_reports_views() {
        assert!(OddPartition::new(vec![2]).is_err());
        assert!(OddPartition::new(vec![0]).is_err());
        assert!(EvenPseudoPartition::new(vec![3]).is_err());
        let p = even(&[2, 0, 0, 4]);
        assert_eq!(p.parts(), &[0, 0, 2, 4]);
        assert_eq!(p.zero_count(), 2);
        assert_eq!(p.size(), 6);
        assert_eq!(p.count(), 4);
        let q = odd(&[3, 1, 1]);
        assert_eq!(q.multiplicity(1), 2);
        assert_eq!(q.to_string(), "[1,1,3]");
        assert_eq!(OddPartition::empty().to_string(), "[]");
        assert_eq!(parse_parts("[1, 1,3]").unwrap(), vec![1, 1, 3]);
        assert_eq!(parse_parts("[]").unwrap(), Vec::<u32>::new());
        assert!(parse_parts("1,2").is_err());
    }
}
