//! BWT and LF arrays derived from a suffix array.
//!
//! [`WorkArray`] is a single buffer of text-length cells that is reinterpreted
//! phase by phase: suffix array, then BWT codes, then LF values, and finally
//! the suffix array again once the in-place document array pass has run.

use crate::exec::{self, Exec};
use crate::meter::ScratchVec;
use crate::sa::{InversePermutation, SuffixArray};
use crate::text::{ConcatText, CountTable, SENT_HASH};
use crate::{Error, Index, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Sa,
    Bwt,
    Lf,
    SaRestored,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkArray<I> {
    cells: Vec<I>,
    phase: Phase,
}

impl<I: Index> WorkArray<I> {
    pub fn from_sa(sa: SuffixArray<I>) -> Self {
        WorkArray {
            cells: sa.into_vec(),
            phase: Phase::Sa,
        }
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn cells(&self) -> &[I] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Gives the buffer back as a suffix array. Only valid in the two suffix
    /// array phases.
    pub fn into_sa(self) -> Result<SuffixArray<I>> {
        match self.phase {
            Phase::Sa | Phase::SaRestored => Ok(SuffixArray::from_vec_unchecked(self.cells)),
            found => Err(Error::WrongPhase {
                expected: Phase::SaRestored,
                found,
            }),
        }
    }

    pub(crate) fn expect_phase(&self, expected: Phase) -> Result<()> {
        if self.phase == expected {
            Ok(())
        } else {
            Err(Error::WrongPhase {
                expected,
                found: self.phase,
            })
        }
    }

    pub(crate) fn cells_mut(&mut self) -> &mut [I] {
        &mut self.cells
    }

    pub(crate) fn set_phase(&mut self, phase: Phase) {
        self.phase = phase;
    }
}

/// Overwrites each suffix array cell with the code of the symbol preceding
/// that suffix (cyclically, so suffix 0 is preceded by `#`).
pub fn bwt_in_place<I: Index>(work: &mut WorkArray<I>, ct: &ConcatText, exec: Exec) -> Result<()> {
    work.expect_phase(Phase::Sa)?;
    let n = ct.len();
    if work.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: work.len(),
        });
    }
    let text = ct.as_bytes();
    exec::map_in_place(exec, work.cells_mut(), |p| {
        let p = p.to_usize();
        let prev = if p == 0 { n - 1 } else { p - 1 };
        I::from_usize(text[prev] as usize)
    });
    work.set_phase(Phase::Bwt);
    Ok(())
}

/// Replaces BWT codes with LF values from one counting sweep: cell `i` with
/// symbol `c` receives `C[c] + (occurrences of c in BWT[0..i])`.
///
/// Exact for every symbol except `$`, whose cells receive provisional values
/// in `1..=d`. The `#` cell always receives 0. The count table is copied into
/// metered scratch and consumed; `counts` is left untouched.
pub fn lf_counting_in_place<I: Index>(work: &mut WorkArray<I>, counts: &CountTable) -> Result<()> {
    work.expect_phase(Phase::Bwt)?;
    let mut next = ScratchVec::filled(256, I::default());
    for (slot, &c) in next.iter_mut().zip(counts.as_array()) {
        *slot = I::from_usize(c as usize);
    }
    for cell in work.cells_mut() {
        let slot = &mut next[cell.to_usize()];
        *cell = *slot;
        *slot = I::from_usize(slot.to_usize() + 1);
    }
    work.set_phase(Phase::Lf);
    Ok(())
}

/// `LF[i] = ISA[SA[i] - 1]`, cyclically. Exact at every cell, separators
/// included.
pub fn lf_exact<I: Index>(sa: &SuffixArray<I>, isa: &InversePermutation<I>, exec: Exec) -> Result<Vec<I>> {
    let n = sa.len();
    if isa.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: isa.len(),
        });
    }
    let mut lf = vec![I::default(); n];
    exec::fill_indexed(exec, &mut lf, |i| {
        let p = sa.get(i);
        let prev = if p == 0 { n - 1 } else { p - 1 };
        isa.as_slice()[prev]
    });
    Ok(lf)
}

/// BWT symbol codes as bytes, read off a work array in phase [`Phase::Bwt`].
pub fn bwt_bytes<I: Index>(work: &WorkArray<I>) -> Result<Vec<u8>> {
    work.expect_phase(Phase::Bwt)?;
    Ok(work.cells().iter().map(|c| c.to_usize() as u8).collect())
}

/// Rebuilds the text by walking `lf` backwards from `start`, the row of the
/// `#` suffix.
pub fn invert_bwt<I: Index>(bwt: &[u8], lf: &[I], start: usize) -> Result<Vec<u8>> {
    let n = bwt.len();
    if lf.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: lf.len(),
        });
    }
    if start >= n {
        return Err(Error::PositionOutOfRange { pos: start, len: n });
    }
    let mut text = vec![0u8; n];
    text[n - 1] = SENT_HASH;
    let mut pos = start;
    for (steps, k) in (0..n - 1).rev().enumerate() {
        text[k] = bwt[pos];
        pos = lf[pos].to_usize();
        if pos >= n {
            return Err(Error::PositionOutOfRange { pos, len: n });
        }
        if pos == start {
            return Err(Error::CycleTooShort { steps: steps + 1, len: n });
        }
    }
    // the row reached last holds suffix 0; one more step must close the cycle
    if lf[pos].to_usize() != start {
        return Err(Error::CycleTooShort { steps: n, len: n });
    }
    Ok(text)
}
