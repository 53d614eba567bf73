//! Suffix arrays under the distinct-separator order.
//!
//! Suffixes are compared by the key sequence of [`rank_key`]: `#` is smallest,
//! then the separators in document order, then body bytes. Because every
//! separator gets its own key, no two suffixes compare equal.

use crate::exec::Exec;
use crate::text::{ConcatText, SENT_DOLLAR, SENT_HASH};
use crate::{Error, Index, Result, Width};

/// Default size cap for [`naive_suffix_sort`].
pub const DEFAULT_ORACLE_CAP: usize = 100_000;

/// Environment variable overriding [`DEFAULT_ORACLE_CAP`].
pub const ORACLE_CAP_ENV: &str = "DAK_ORACLE_CAP";

/// Cap read from `DAK_ORACLE_CAP`, falling back to the default.
pub fn oracle_cap() -> usize {
    std::env::var(ORACLE_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ORACLE_CAP)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixArray<I> {
    entries: Vec<I>,
}

impl<I: Index> SuffixArray<I> {
    /// Wraps `entries` after checking that they form a permutation.
    pub fn from_vec(entries: Vec<I>) -> Result<Self> {
        check_permutation(&entries)?;
        Ok(SuffixArray { entries })
    }

    /// Wraps `entries` without validation.
    pub fn from_vec_unchecked(entries: Vec<I>) -> Self {
        SuffixArray { entries }
    }

    pub fn as_slice(&self) -> &[I] {
        &self.entries
    }

    pub fn into_vec(self) -> Vec<I> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn width(&self) -> Width {
        I::WIDTH
    }

    #[inline]
    pub fn get(&self, i: usize) -> usize {
        self.entries[i].to_usize()
    }

    /// Checks that the `#` suffix comes first, followed by the separators in
    /// document order.
    pub fn head_matches(&self, ct: &ConcatText) -> bool {
        let d = ct.num_docs();
        self.len() == ct.len()
            && self.get(0) == ct.len() - 1
            && (1..=d).all(|j| self.get(j) == ct.separator_pos(j))
    }
}

/// `ISA[SA[i]] = i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InversePermutation<I> {
    entries: Vec<I>,
}

impl<I: Index> InversePermutation<I> {
    pub fn as_slice(&self) -> &[I] {
        &self.entries
    }

    pub fn into_vec(self) -> Vec<I> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    #[inline]
    pub fn get(&self, p: usize) -> usize {
        self.entries[p].to_usize()
    }
}

fn check_permutation<I: Index>(entries: &[I]) -> Result<()> {
    let n = entries.len();
    let mut seen = vec![false; n];
    for &v in entries {
        let v = v.to_usize();
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(Error::NotAPermutation { len: n });
        }
    }
    Ok(())
}

/// Inverse of `sa`; fails if `sa` is not a permutation.
pub fn inverse<I: Index>(sa: &SuffixArray<I>) -> Result<InversePermutation<I>> {
    let n = sa.len();
    let mut entries = vec![I::default(); n];
    let mut seen = vec![false; n];
    for (i, &p) in sa.as_slice().iter().enumerate() {
        let p = p.to_usize();
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::NotAPermutation { len: n });
        }
        entries[p] = I::from_usize(i);
    }
    Ok(InversePermutation { entries })
}

/// Sort key of the symbol at 0-based position `p`: 0 for `#`, `j` for the
/// separator of document `j`, and `d + code - 1` for a body byte.
pub fn rank_key(ct: &ConcatText, p: usize) -> u64 {
    match ct.as_bytes()[p] {
        SENT_HASH => 0,
        SENT_DOLLAR => ct.doc_of(p) as u64,
        c => ct.num_docs() as u64 + c as u64 - 1,
    }
}

fn all_rank_keys(ct: &ConcatText) -> Vec<u64> {
    let d = ct.num_docs() as u64;
    let mut doc = 0u64;
    ct.as_bytes()
        .iter()
        .map(|&c| match c {
            SENT_HASH => 0,
            SENT_DOLLAR => {
                doc += 1;
                doc
            }
            c => d + c as u64 - 1,
        })
        .collect()
}

/// Suffix array by direct comparison of key sequences. Verification only.
pub fn naive_suffix_sort<I: Index>(ct: &ConcatText, cap: usize) -> Result<SuffixArray<I>> {
    let n = ct.len();
    if n > cap {
        return Err(Error::OracleCapExceeded { len: n, cap });
    }
    if !I::fits(n) {
        return Err(Error::WidthTooNarrow { width: I::WIDTH.bits(), len: n });
    }
    let keys = all_rank_keys(ct);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| keys[a..].cmp(&keys[b..]));
    Ok(SuffixArray {
        entries: order.into_iter().map(I::from_usize).collect(),
    })
}

/// Suffix array by prefix doubling, using the default [`Exec`].
pub fn suffix_sort<I: Index>(ct: &ConcatText) -> Result<SuffixArray<I>> {
    suffix_sort_with(ct, Exec::default())
}

pub fn suffix_sort_with<I: Index>(ct: &ConcatText, exec: Exec) -> Result<SuffixArray<I>> {
    let n = ct.len();
    if !I::fits(n) {
        return Err(Error::WidthTooNarrow { width: I::WIDTH.bits(), len: n });
    }
    #[cfg(feature = "parallel")]
    if exec.is_parallel() && (n as u64) < u32::MAX as u64 {
        return Ok(SuffixArray { entries: doubling_par(ct) });
    }
    let _ = exec;
    Ok(SuffixArray { entries: doubling_seq(ct) })
}

// Classic O(N log N) doubling: each round orders suffixes by the pair
// (rank of first h symbols, rank of the next h symbols) with two counting
// sorts. Stops once all ranks are distinct.
fn doubling_seq<I: Index>(ct: &ConcatText) -> Vec<I> {
    let n = ct.len();
    let keys = all_rank_keys(ct);
    let key_range = ct.num_docs() + 256;

    let mut sa = vec![I::default(); n];
    let mut cnt = vec![0usize; key_range.max(n) + 1];
    for &k in &keys {
        cnt[k as usize + 1] += 1;
    }
    for c in 1..cnt.len() {
        cnt[c] += cnt[c - 1];
    }
    for (p, &k) in keys.iter().enumerate() {
        let slot = &mut cnt[k as usize];
        sa[*slot] = I::from_usize(p);
        *slot += 1;
    }

    let mut rank = vec![I::default(); n];
    let mut classes = 1;
    for j in 1..n {
        if keys[sa[j].to_usize()] != keys[sa[j - 1].to_usize()] {
            classes += 1;
        }
        rank[sa[j].to_usize()] = I::from_usize(classes - 1);
    }
    drop(keys);

    let mut tmp = vec![I::default(); n];
    let mut h = 1;
    while classes < n {
        // order by second half: suffixes shorter than h first
        let mut w = 0;
        for p in n.saturating_sub(h)..n {
            tmp[w] = I::from_usize(p);
            w += 1;
        }
        for &p in sa.iter() {
            let p = p.to_usize();
            if p >= h {
                tmp[w] = I::from_usize(p - h);
                w += 1;
            }
        }
        // stable counting sort by first half
        cnt[..=classes].fill(0);
        for p in 0..n {
            cnt[rank[p].to_usize() + 1] += 1;
        }
        for c in 1..=classes {
            cnt[c] += cnt[c - 1];
        }
        for &p in tmp.iter() {
            let slot = &mut cnt[rank[p.to_usize()].to_usize()];
            sa[*slot] = p;
            *slot += 1;
        }

        let second = |p: usize, rank: &[I]| if p + h < n { rank[p + h].to_usize() + 1 } else { 0 };
        let mut next = 0usize;
        tmp[sa[0].to_usize()] = I::from_usize(0);
        for j in 1..n {
            let (a, b) = (sa[j - 1].to_usize(), sa[j].to_usize());
            if rank[a] != rank[b] || second(a, &rank) != second(b, &rank) {
                next += 1;
            }
            tmp[b] = I::from_usize(next);
        }
        std::mem::swap(&mut rank, &mut tmp);
        classes = next + 1;
        h *= 2;
    }
    sa
}

// Same rounds as `doubling_seq`, with each round's pair sort done by a
// parallel sort of packed 64-bit keys. Requires N < 2^32.
#[cfg(feature = "parallel")]
fn doubling_par<I: Index>(ct: &ConcatText) -> Vec<I> {
    use rayon::prelude::*;

    let n = ct.len();
    let keys = all_rank_keys(ct);
    let mut pairs: Vec<(u64, u32)> = keys
        .par_iter()
        .enumerate()
        .map(|(p, &k)| (k, p as u32))
        .collect();
    drop(keys);
    pairs.par_sort_unstable();

    let mut rank = vec![0u32; n];
    let mut classes = assign_ranks(&pairs, &mut rank);
    let mut h = 1;
    while classes < n {
        pairs.par_iter_mut().enumerate().for_each(|(p, slot)| {
            let second = if p + h < n { rank[p + h] as u64 + 1 } else { 0 };
            *slot = (((rank[p] as u64) << 32) | second, p as u32);
        });
        pairs.par_sort_unstable();
        classes = assign_ranks(&pairs, &mut rank);
        h *= 2;
    }
    pairs.into_par_iter().map(|(_, p)| I::from_usize(p as usize)).collect()
}

#[cfg(feature = "parallel")]
fn assign_ranks(sorted: &[(u64, u32)], rank: &mut [u32]) -> usize {
    let mut next = 0u32;
    rank[sorted[0].1 as usize] = 0;
    for w in sorted.windows(2) {
        if w[0].0 != w[1].0 {
            next += 1;
        }
        rank[w[1].1 as usize] = next;
    }
    next as usize + 1
}
