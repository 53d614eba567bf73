//! Document array construction and verification.

use crate::bwt::{self, Phase, WorkArray};
use crate::exec::{self, Exec};
use crate::meter::ScratchVec;
use crate::rank::RankBitvector;
use crate::sa::SuffixArray;
use crate::text::{ConcatText, CountTable};
use crate::{Error, Index, Result};

/// `DA[i]`: the 1-based document in which suffix `SA[i]` starts, with `d + 1`
/// for the suffix at the final `#`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocumentArray {
    entries: Vec<u32>,
}

impl DocumentArray {
    pub fn from_vec(entries: Vec<u32>) -> Self {
        DocumentArray { entries }
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.entries
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn check_doc_width(ct: &ConcatText) -> Result<()> {
    if ct.num_docs() >= u32::MAX as usize {
        return Err(Error::WidthTooNarrow { width: 32, len: ct.num_docs() + 1 });
    }
    Ok(())
}

/// Computes `DA` in the space of the suffix array and hands the suffix array
/// back restored.
///
/// The cells of `work` are first rewritten as BWT codes, then as LF values by a
/// counting sweep over a copy of `counts`. The text is then walked right to
/// left from the `#` row: each visited row gets its suffix position written
/// back and the current document id stored in `DA`. A row whose provisional
/// LF value is at most `d` is preceded by a `$` (or by `#` on the last step);
/// its true LF target is the row of that separator, which is row `doc - 1`
/// because separators sort in document order and are met last-to-first.
pub fn da_inplace<I: Index>(
    work: WorkArray<I>,
    ct: &ConcatText,
    counts: &CountTable,
) -> Result<(DocumentArray, WorkArray<I>)> {
    da_inplace_with(work, ct, counts, Exec::default())
}

/// [`da_inplace`] with an explicit executor for the BWT rewrite. The LF sweep
/// and the traversal are sequential regardless.
pub fn da_inplace_with<I: Index>(
    mut work: WorkArray<I>,
    ct: &ConcatText,
    counts: &CountTable,
    exec: Exec,
) -> Result<(DocumentArray, WorkArray<I>)> {
    work.expect_phase(Phase::Sa)?;
    check_doc_width(ct)?;
    bwt::bwt_in_place(&mut work, ct, exec)?;
    bwt::lf_counting_in_place(&mut work, counts)?;

    let n = ct.len();
    let d = ct.num_docs();
    let mut da = vec![0u32; n];
    let cells = work.cells_mut();
    let mut pos = 0usize;
    let mut doc = d + 1;
    for i in (0..n).rev() {
        // 0 is never a valid id, so a filled DA cell marks a revisit
        if da[pos] != 0 {
            return Err(Error::MalformedSa { cell: pos, step: n - 1 - i });
        }
        let mut next = cells[pos].to_usize();
        cells[pos] = I::from_usize(i);
        da[pos] = doc as u32;
        if next <= d {
            if doc == 0 {
                return Err(Error::MalformedSa { cell: pos, step: n - 1 - i });
            }
            next = doc - 1;
            doc -= 1;
        }
        pos = next;
    }
    if doc != 0 {
        return Err(Error::MalformedSa { cell: pos, step: n });
    }
    work.set_phase(Phase::SaRestored);
    Ok((DocumentArray { entries: da }, work))
}

/// Baseline through the inverse suffix array: `DA[ISA[p]] = doc(p)`.
/// Uses `N` cells of metered workspace for the inverse.
pub fn da_via_isa<I: Index>(sa: &SuffixArray<I>, ct: &ConcatText) -> Result<DocumentArray> {
    let n = ct.len();
    if sa.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: sa.len() });
    }
    check_doc_width(ct)?;
    let mut isa = ScratchVec::filled(n, I::default());
    for (i, &p) in sa.as_slice().iter().enumerate() {
        let p = p.to_usize();
        if p >= n {
            return Err(Error::NotAPermutation { len: n });
        }
        isa[p] = I::from_usize(i);
    }
    let mut da = vec![0u32; n];
    let ends = ct.boundaries();
    for j in 1..ends.len() {
        for p in ends[j - 1]..ends[j] {
            da[isa[p].to_usize()] = j as u32;
        }
    }
    da[isa[n - 1].to_usize()] = ends.len() as u32;
    Ok(DocumentArray { entries: da })
}

/// Baseline through separator ranks: `DA[i] = rank1(SA[i]) + 1`, counting
/// separators strictly before the suffix start.
pub fn da_via_rank<I: Index>(sa: &SuffixArray<I>, bv: &RankBitvector) -> Result<DocumentArray> {
    da_via_rank_with(sa, bv, Exec::default())
}

pub fn da_via_rank_with<I: Index>(sa: &SuffixArray<I>, bv: &RankBitvector, exec: Exec) -> Result<DocumentArray> {
    let n = sa.len();
    if bv.universe() != n {
        return Err(Error::UniverseMismatch { universe: bv.universe(), len: n });
    }
    if bv.ones() >= u32::MAX as usize {
        return Err(Error::WidthTooNarrow { width: 32, len: bv.ones() + 1 });
    }
    if let Some(i) = exec::find_first(exec, n, |i| sa.get(i) >= n) {
        return Err(Error::PositionOutOfRange { pos: sa.get(i), len: n });
    }
    let mut da = vec![0u32; n];
    exec::fill_indexed(exec, &mut da, |i| bv.rank1_unchecked(sa.get(i)) as u32 + 1);
    Ok(DocumentArray { entries: da })
}

/// Definitional document array: the document of each suffix start.
pub fn da_oracle<I: Index>(sa: &SuffixArray<I>, ct: &ConcatText, exec: Exec) -> Result<DocumentArray> {
    let n = ct.len();
    if sa.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: sa.len() });
    }
    if let Some(i) = exec::find_first(exec, n, |i| sa.get(i) >= n) {
        return Err(Error::PositionOutOfRange { pos: sa.get(i), len: n });
    }
    let mut da = vec![0u32; n];
    exec::fill_indexed(exec, &mut da, |i| ct.doc_of(sa.get(i)) as u32);
    Ok(DocumentArray { entries: da })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mismatch {
    pub index: usize,
    pub expected: u32,
    pub found: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub first_mismatch: Option<Mismatch>,
    /// `histogram[j]` counts entries equal to `j`; index 0 counts invalid ids.
    pub histogram: Vec<usize>,
}

impl VerifyReport {
    pub fn is_ok(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Compares `da` against the definitional oracle. Mismatches are reported,
/// not raised; only inconsistent lengths are errors.
pub fn verify_da<I: Index>(
    da: &DocumentArray,
    sa: &SuffixArray<I>,
    ct: &ConcatText,
    exec: Exec,
) -> Result<VerifyReport> {
    let n = ct.len();
    if sa.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: sa.len() });
    }
    if da.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: da.len() });
    }
    let expected = |i: usize| {
        let p = sa.get(i);
        if p < n {
            ct.doc_of(p) as u32
        } else {
            0
        }
    };
    let first_mismatch = exec::find_first(exec, n, |i| da.entries[i] != expected(i)).map(|index| Mismatch {
        index,
        expected: expected(index),
        found: da.entries[index],
    });
    let ids = ct.num_docs() + 2;
    let mut histogram = vec![0usize; ids];
    for &v in &da.entries {
        let v = v as usize;
        histogram[if v < ids { v } else { 0 }] += 1;
    }
    Ok(VerifyReport { first_mismatch, histogram })
}
