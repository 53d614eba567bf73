//! Bitvectors with constant-time `rank1`, used to map suffix positions to
//! documents by counting the separators before them.
//!
//! Two backends: [`PlainBitvector`] stores every bit plus a two-level count
//! directory; [`EliasFano`] stores only the set positions and wins when ones
//! are rare. Both keep their payload in metered scratch buffers.

mod plain;
mod sparse;

pub use plain::PlainBitvector;
pub use sparse::{EliasFano, SPARSE_OVERHEAD_CONST_BITS, SPARSE_OVERHEAD_PER_ONE_BITS};

use crate::text::ConcatText;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Plain,
    Sparse,
}

#[derive(Debug, Clone)]
pub enum RankBitvector {
    Plain(PlainBitvector),
    Sparse(EliasFano),
}

impl RankBitvector {
    /// Builds from strictly increasing 0-based positions below `universe`.
    pub fn from_sorted<It>(universe: usize, positions: It, backend: Backend) -> Result<Self>
    where
        It: IntoIterator<Item = usize>,
        It::IntoIter: ExactSizeIterator,
    {
        let positions = positions.into_iter();
        Ok(match backend {
            Backend::Plain => RankBitvector::Plain(PlainBitvector::from_sorted(universe, positions)?),
            Backend::Sparse => RankBitvector::Sparse(EliasFano::from_sorted(universe, positions)?),
        })
    }

    pub fn backend(&self) -> Backend {
        match self {
            RankBitvector::Plain(_) => Backend::Plain,
            RankBitvector::Sparse(_) => Backend::Sparse,
        }
    }

    pub fn universe(&self) -> usize {
        match self {
            RankBitvector::Plain(b) => b.universe(),
            RankBitvector::Sparse(b) => b.universe(),
        }
    }

    pub fn ones(&self) -> usize {
        match self {
            RankBitvector::Plain(b) => b.ones(),
            RankBitvector::Sparse(b) => b.ones(),
        }
    }

    /// Number of set bits among the first `prefix` positions.
    pub fn rank1(&self, prefix: usize) -> Result<usize> {
        if prefix > self.universe() {
            return Err(Error::PrefixOutOfRange {
                prefix,
                universe: self.universe(),
            });
        }
        Ok(self.rank1_unchecked(prefix))
    }

    #[inline]
    pub fn rank1_unchecked(&self, prefix: usize) -> usize {
        match self {
            RankBitvector::Plain(b) => b.rank1(prefix),
            RankBitvector::Sparse(b) => b.rank1(prefix),
        }
    }

    /// Total payload size in bits.
    pub fn size_in_bits(&self) -> usize {
        match self {
            RankBitvector::Plain(b) => b.size_in_bits(),
            RankBitvector::Sparse(b) => b.size_in_bits(),
        }
    }
}

/// Bit `p` set iff the text holds a `$` at `p`. The final `#` is not set.
pub fn separator_bitvector(ct: &ConcatText, backend: Backend) -> Result<RankBitvector> {
    let seps = ct.boundaries()[1..].iter().map(|&e| e - 1);
    RankBitvector::from_sorted(ct.len(), seps, backend)
}

pub(crate) fn check_position(p: usize, prev: Option<usize>, universe: usize) -> Result<()> {
    if p >= universe {
        return Err(Error::PositionOutOfRange { pos: p, len: universe });
    }
    if prev.is_some_and(|q| q >= p) {
        return Err(Error::Format(format!("bit positions not strictly increasing at {p}")));
    }
    Ok(())
}
