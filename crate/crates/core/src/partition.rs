//! Integer partitions and the two one-box-per-row arrow relations.
//!
//! A [`Partition`] stores only its positive rows. Every predicate here reads
//! rows past the stored length as zero, so `(3)` and `(3, 0, 0)` are the same
//! object.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest `n` accepted by [`partitions_of`] unless a caller passes its own bound.
pub const DEFAULT_PARTITION_BOUND: u32 = 60;

/// A weakly decreasing finite sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    rows: Vec<u32>,
}

impl Partition {
    /// The empty partition `()`.
    pub const fn empty() -> Self {
        Partition { rows: Vec::new() }
    }

    /// Builds a partition, dropping trailing zeros. Fails if the rows are not
    /// weakly decreasing.
    pub fn new(mut rows: Vec<u32>) -> Result<Self> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.windows(2).any(|w| w[0] < w[1]) || rows.contains(&0) {
            return Err(Error::Parse(format!("rows {rows:?} are not weakly decreasing")));
        }
        Ok(Partition { rows })
    }

    /// A single row `(n)`; empty for `n = 0`.
    pub fn row(n: u32) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { rows: vec![n] }
        }
    }

    /// A single column `(1^k)`.
    pub fn column(k: usize) -> Self {
        Partition { rows: vec![1; k] }
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<u32>) -> Self {
        debug_assert!(rows.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(!rows.contains(&0));
        Partition { rows }
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// Number of nonzero rows.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Row `i` (0-based), zero past the end.
    pub fn get(&self, i: usize) -> u32 {
        self.rows.get(i).copied().unwrap_or(0)
    }

    /// First row, zero for the empty partition.
    pub fn first(&self) -> u32 {
        self.get(0)
    }

    pub fn size(&self) -> u32 {
        self.rows.iter().sum()
    }

    /// The conjugate partition.
    pub fn transpose(&self) -> Partition {
        let cols = self.first() as usize;
        let rows = (0..cols)
            .map(|j| self.rows.iter().filter(|&&r| r as usize > j).count() as u32)
            .collect();
        Partition { rows }
    }

    /// Hook lengths of all boxes, row by row.
    pub fn hooks(&self) -> Vec<u32> {
        let conj = self.transpose();
        let mut out = Vec::with_capacity(self.size() as usize);
        for (i, &r) in self.rows.iter().enumerate() {
            for j in 0..r as usize {
                let arm = r - 1 - j as u32;
                let leg = conj.get(j) - 1 - i as u32;
                out.push(arm + leg + 1);
            }
        }
        out
    }

    /// `n(λ) = Σ (i−1)·λ_i` with 1-based row index `i`.
    pub fn n_stat(&self) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, &r)| i as u64 * r as u64)
            .sum()
    }

    /// Adds one box to the first row.
    pub fn bump_first_row(&self) -> Partition {
        let mut rows = self.rows.clone();
        match rows.first_mut() {
            Some(r) => *r += 1,
            None => rows.push(1),
        }
        Partition { rows }
    }

    /// The partition with its first row removed.
    pub fn tail(&self) -> Partition {
        Partition {
            rows: self.rows.iter().skip(1).copied().collect(),
        }
    }

    /// Prepends a row; fails if that breaks weak decrease.
    pub fn with_first_row(&self, first: u32) -> Result<Partition> {
        let mut rows = Vec::with_capacity(self.rows.len() + 1);
        rows.push(first);
        rows.extend_from_slice(&self.rows);
        Partition::new(rows)
    }

    /// Parses `(3,2,1)`, `[3,2,1]`, `3,2,1`, or `()`.
    pub fn parse(s: &str) -> Result<Partition> {
        let t = s.trim();
        let inner = match (t.chars().next(), t.chars().last()) {
            (Some('('), Some(')')) | (Some('['), Some(']')) if t.len() >= 2 => &t[1..t.len() - 1],
            _ => t,
        };
        let inner = inner.trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let rows = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("bad row {p:?} in {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if rows.iter().any(|&r| r > 1 << 20) {
            return Err(Error::Parse(format!("row too large in {s:?}")));
        }
        Partition::new(rows)
    }

    /// JSON array form.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.rows.iter().map(|&r| r.into()).collect())
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Partition> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("partition must be a JSON array".into()))?;
        let rows = arr
            .iter()
            .map(|x| {
                x.as_u64()
                    .filter(|&r| r <= 1 << 20)
                    .map(|r| r as u32)
                    .ok_or_else(|| Error::Parse(format!("bad partition row {x}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(rows)
    }
}

impl Ord for Partition {
    /// Size first, then lexicographic on rows.
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.rows.cmp(&other.rows))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Partition::parse(s)
    }
}

/// `λ +→ µ`: `λ_i ≤ µ_i ≤ λ_i + 1` for every row.
pub fn arrow_up(lambda: &Partition, mu: &Partition) -> bool {
    let rows = lambda.len().max(mu.len());
    (0..rows).all(|i| {
        let (l, m) = (lambda.get(i), mu.get(i));
        l <= m && m <= l + 1
    })
}

/// `µ −→ λ`: `µ_i − 1 ≤ λ_i ≤ µ_i` for every row.
pub fn arrow_down(mu: &Partition, lambda: &Partition) -> bool {
    let rows = lambda.len().max(mu.len());
    (0..rows).all(|i| {
        let (m, l) = (mu.get(i), lambda.get(i));
        l <= m && m <= l + 1
    })
}

/// All `λ` with `µ −→ λ`.
pub fn down_set(mu: &Partition) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(mu.len());
    down_rec(mu.rows(), 0, &mut cur, &mut out);
    out
}

fn down_rec(mu: &[u32], i: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if i == mu.len() {
        let mut rows = cur.clone();
        while rows.last() == Some(&0) {
            rows.pop();
        }
        out.push(Partition::from_rows_unchecked(rows));
        return;
    }
    let prev = if i == 0 { u32::MAX } else { cur[i - 1] };
    for v in [mu[i], mu[i] - 1] {
        if v <= prev {
            cur.push(v);
            down_rec(mu, i + 1, cur, out);
            cur.pop();
        }
    }
}

/// All `µ ⊢ target_size` with `λ +→ µ`. Empty when unreachable.
pub fn up_set(lambda: &Partition, target_size: u32) -> Vec<Partition> {
    let base = lambda.size();
    if target_size < base {
        return Vec::new();
    }
    let extra = (target_size - base) as usize;
    // Existing rows can gain at most one box each; the rest must be new rows of length 1.
    let max_rows = lambda.len() + extra;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(max_rows);
    up_rec(lambda, 0, max_rows, extra, &mut cur, &mut out);
    out
}

fn up_rec(
    lambda: &Partition,
    i: usize,
    max_rows: usize,
    remaining: usize,
    cur: &mut Vec<u32>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        let mut rows = cur.clone();
        rows.extend_from_slice(&lambda.rows()[i.min(lambda.len())..]);
        while rows.last() == Some(&0) {
            rows.pop();
        }
        out.push(Partition::from_rows_unchecked(rows));
        return;
    }
    if i == max_rows || max_rows - i < remaining {
        return;
    }
    let prev = if i == 0 { u32::MAX } else { cur[i - 1] };
    let base = lambda.get(i);
    // Grow this row.
    if base < prev {
        cur.push(base + 1);
        up_rec(lambda, i + 1, max_rows, remaining - 1, cur, out);
        cur.pop();
    }
    // Leave it; once past λ's rows, an untouched row stays 0 and ends the diagram.
    if i < lambda.len() {
        cur.push(base);
        up_rec(lambda, i + 1, max_rows, remaining, cur, out);
        cur.pop();
    }
}

/// All partitions of `n`, in reverse lexicographic order, with the default bound.
pub fn partitions_of(n: u32) -> Result<Vec<Partition>> {
    partitions_of_bounded(n, DEFAULT_PARTITION_BOUND)
}

pub fn partitions_of_bounded(n: u32, bound: u32) -> Result<Vec<Partition>> {
    if n > bound {
        return Err(Error::BoundExceeded(format!(
            "partitions_of({n}) exceeds bound {bound}"
        )));
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    parts_rec(n, n, &mut cur, &mut out);
    Ok(out)
}

fn parts_rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rem == 0 {
        out.push(Partition::from_rows_unchecked(cur.clone()));
        return;
    }
    for p in (1..=max.min(rem)).rev() {
        cur.push(p);
        parts_rec(rem - p, p, cur, out);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn p(rows: &[u32]) -> Partition {
        Partition::new(rows.to_vec()).unwrap()
    }

    fn all_up_to(n: u32) -> Vec<Partition> {
        (0..=n).flat_map(|k| partitions_of(k).unwrap()).collect()
    }

    #[test]
    fn size_examples() {
        assert_eq!(p(&[]).size(), 0);
        assert_eq!(p(&[2, 1]).size(), 3);
        assert_eq!(p(&[5, 5, 1]).size(), 11);
    }

    #[test]
    fn trailing_zeros_are_dropped() {
        assert_eq!(p(&[3, 0, 0]), p(&[3]));
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn arrow_examples() {
        assert!(arrow_up(&p(&[2, 1]), &p(&[3, 2])));
        assert!(!arrow_up(&p(&[1, 1]), &p(&[3, 1])));
        assert!(arrow_up(&p(&[3]), &p(&[4, 1, 1])));
        assert!(arrow_down(&p(&[2, 2]), &p(&[1, 1])));
        assert!(!arrow_down(&p(&[3, 1]), &p(&[1, 1])));
        assert!(arrow_down(&p(&[4, 1, 1]), &p(&[3])));
    }

    #[test]
    fn down_set_examples() {
        let s = |v: Vec<Partition>| v.into_iter().collect::<BTreeSet<_>>();
        assert_eq!(s(down_set(&p(&[1]))), s(vec![p(&[1]), p(&[])]));
        assert_eq!(
            s(down_set(&p(&[2, 1]))),
            s(vec![p(&[2, 1]), p(&[1, 1]), p(&[2]), p(&[1])])
        );
        assert_eq!(down_set(&p(&[])), vec![p(&[])]);
    }

    #[test]
    fn up_set_examples() {
        let s = |v: Vec<Partition>| v.into_iter().collect::<BTreeSet<_>>();
        assert_eq!(s(up_set(&p(&[1]), 2)), s(vec![p(&[2]), p(&[1, 1])]));
        assert_eq!(up_set(&p(&[]), 2), vec![p(&[1, 1])]);
        assert_eq!(up_set(&p(&[2]), 2), vec![p(&[2])]);
        assert!(up_set(&p(&[2]), 1).is_empty());
    }

    #[test]
    fn hooks_and_n_stat() {
        let mut h = p(&[2, 1]).hooks();
        h.sort();
        assert_eq!(h, vec![1, 1, 3]);
        let mut h = p(&[4]).hooks();
        h.sort();
        assert_eq!(h, vec![1, 2, 3, 4]);
        assert!(p(&[]).hooks().is_empty());
        assert_eq!(p(&[7]).n_stat(), 0);
        assert_eq!(p(&[1, 1, 1]).n_stat(), 3);
        assert_eq!(p(&[2, 1]).n_stat(), 1);
    }

    #[test]
    fn partitions_of_examples() {
        assert_eq!(partitions_of(0).unwrap(), vec![p(&[])]);
        assert_eq!(
            partitions_of(3).unwrap(),
            vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]
        );
        assert_eq!(partitions_of(5).unwrap().len(), 7);
        assert!(partitions_of(61).is_err());
        assert_eq!(partitions_of_bounded(5, 4).unwrap_err().exit_code(), 2);
    }

    /// Brute-force partition count by trying every weakly decreasing tuple.
    fn brute_partition_count(n: u32) -> usize {
        fn go(rem: u32, max: u32) -> usize {
            if rem == 0 {
                return 1;
            }
            (1..=max.min(rem)).map(|k| go(rem - k, k)).sum()
        }
        go(n, n)
    }

    #[test]
    fn partition_counts_match_brute_force() {
        for n in 0..=12 {
            assert_eq!(partitions_of(n).unwrap().len(), brute_partition_count(n));
        }
    }

    #[test]
    fn arrows_agree_exhaustively() {
        let all = all_up_to(8);
        for a in &all {
            for b in &all {
                assert_eq!(arrow_up(a, b), arrow_down(b, a), "{a} {b}");
            }
        }
    }

    #[test]
    fn down_and_up_sets_match_brute_force() {
        let all = all_up_to(8);
        for mu in &all {
            let fast: BTreeSet<_> = down_set(mu).into_iter().collect();
            let brute: BTreeSet<_> = all
                .iter()
                .filter(|l| l.size() <= mu.size() && arrow_down(mu, l))
                .cloned()
                .collect();
            assert_eq!(fast.len(), down_set(mu).len(), "duplicates in down_set({mu})");
            assert_eq!(fast, brute, "down_set({mu})");
            assert!(fast.contains(mu));
        }
        for lam in all.iter().filter(|l| l.size() <= 6) {
            for s in 0..=8 {
                let fast = up_set(lam, s);
                let set: BTreeSet<_> = fast.iter().cloned().collect();
                assert_eq!(set.len(), fast.len(), "duplicates in up_set({lam},{s})");
                let brute: BTreeSet<_> = partitions_of(s)
                    .unwrap()
                    .into_iter()
                    .filter(|m| arrow_up(lam, m))
                    .collect();
                assert_eq!(set, brute, "up_set({lam},{s})");
            }
            assert!(up_set(lam, lam.size()).contains(lam));
        }
    }

    #[test]
    fn hooks_are_transpose_invariant() {
        for lam in all_up_to(9) {
            let mut a = lam.hooks();
            let mut b = lam.transpose().hooks();
            a.sort();
            b.sort();
            assert_eq!(a.len() as u32, lam.size());
            assert_eq!(a, b, "{lam}");
            assert_eq!(lam.transpose().transpose(), lam);
        }
    }

    #[test]
    fn parse_forms() {
        assert_eq!(Partition::parse("(3,2,1)").unwrap(), p(&[3, 2, 1]));
        assert_eq!(Partition::parse("[3, 2]").unwrap(), p(&[3, 2]));
        assert_eq!(Partition::parse("()").unwrap(), p(&[]));
        assert_eq!(Partition::parse(" 4 ").unwrap(), p(&[4]));
        assert!(Partition::parse("(1,2)").is_err());
        assert!(Partition::parse("(a)").is_err());
        assert_eq!(p(&[3, 2, 1]).to_string(), "(3,2,1)");
        let j = p(&[2, 2]).to_json();
        assert_eq!(Partition::from_json(&j).unwrap(), p(&[2, 2]));
    }
}
